use criterion::{criterion_group, criterion_main, Criterion};
use syntomic_core::linalg::{snf, PModMatrix};
use syntomic_core::syntomic::{zp_i, ZpiOptions};
use syntomic_core::witt::WittRing;

fn witt_ops(c: &mut Criterion) {
    let ring = WittRing::new(3, 8, 2).unwrap();
    let a = ring.teichmuller(&[1, 2]);
    let b = ring.from_int(7);
    c.bench_function("witt_mul_w8_f9", |bench| {
        bench.iter(|| std::hint::black_box(ring.mul(&a, &b)))
    });
    c.bench_function("witt_frobenius_w8_f9", |bench| {
        bench.iter(|| std::hint::black_box(ring.frobenius(&a)))
    });
}

fn smith_reduction(c: &mut Criterion) {
    let n = 24usize;
    let mut m = PModMatrix::zero(3, 6, n, n);
    let mut seed = 0x9e3779b97f4a7c15u64;
    for r in 0..n {
        for col in 0..n {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            m.set(r, col, seed >> 40);
        }
    }
    c.bench_function("snf_24x24_mod_3e6", |bench| {
        bench.iter(|| std::hint::black_box(snf(&m)))
    });
}

fn cohomology(c: &mut Criterion) {
    c.bench_function("zpi_p3_e2_i6", |bench| {
        bench.iter(|| std::hint::black_box(zp_i(3, 2, 6, 1, &ZpiOptions::default()).unwrap()))
    });
    c.bench_function("zpi_p7_e2_i12", |bench| {
        bench.iter(|| std::hint::black_box(zp_i(7, 2, 12, 1, &ZpiOptions::default()).unwrap()))
    });
}

criterion_group!(benches, witt_ops, smith_reduction, cohomology);
criterion_main!(benches);
