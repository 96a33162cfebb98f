//! Acceptance suite: one criterion per test, one PASS line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syntomic_core::basecase::PerfectBaseData;
use syntomic_core::syntomic::{closed_form_h1, relative_k_group, zp_i, zp_i_naive, ZpiOptions};
use syntomic_core::witt::WittRing;
use syntomic_core::{dpcomplex, nygaard};
use syntomic_core::{Degree, DpBasisElem};

fn sample_elem(ring: &WittRing, rng: &mut ChaCha8Rng) -> syntomic_core::WittElem {
    let coords: Vec<u64> = (0..ring.f)
        .map(|_| rng.gen_range(0..ring.p_pow_n()))
        .collect();
    ring.elem_from_coords(coords)
}

#[test]
fn criterion_1_closed_form_h1_for_dual_numbers() {
    for p in [3u64, 5, 7] {
        for f in [1usize, 2] {
            for i in 1..=12u64 {
                let r = zp_i(p, 2, i, f, &ZpiOptions::default()).unwrap();
                let expected = closed_form_h1(p, i).unwrap();
                let actual: Vec<(u64, u32)> = r.h[1]
                    .iter()
                    .flat_map(|t| t.witt_lengths.iter().map(move |&n| (t.d, n)))
                    .collect();
                assert_eq!(actual, expected, "p = {p}, f = {f}, i = {i}");
                assert!(
                    r.h[0].is_empty() && r.h[2].is_empty(),
                    "p = {p}, f = {f}, i = {i}"
                );
            }
        }
    }
    println!(
        "criterion 1 PASS: H^1 matches the closed form for p in {{3,5,7}}, f in {{1,2}}, i <= 12"
    );
}

#[test]
fn criterion_2_relative_k1_is_z_mod_p() {
    for p in [3u64, 5, 7] {
        let k = relative_k_group(p, 2, 1, 1, &ZpiOptions::default()).unwrap();
        assert_eq!(k.factors, vec![(1, 1)], "p = {p}");
        assert_eq!(k.order_exponent, 1, "p = {p}");
    }
    println!("criterion 2 PASS: K_1(k[x]/x^2, (x); Z_p) = Z/p");
}

#[test]
fn criterion_3_tower_and_dense_evaluations_agree() {
    for p in [3u64, 5] {
        for e in [2u64, 3] {
            for i in 1..=6u64 {
                let r = zp_i(p, e, i, 1, &ZpiOptions::default()).unwrap();
                let naive = zp_i_naive(p, e, i, 1, r.precision, e * i * p).unwrap();
                for deg in 0..3 {
                    assert_eq!(
                        r.flattened_exponents(deg),
                        naive.h[deg].factors,
                        "p = {p}, e = {e}, i = {i}, degree {deg}"
                    );
                }
            }
        }
    }
    println!("criterion 3 PASS: tower decomposition agrees with the dense oracle on {{3,5}} x {{2,3}} x {{1..6}}");
}

#[test]
fn criterion_4_results_are_stable_under_resizing() {
    for (p, e, i, f) in [
        (3u64, 2u64, 5u64, 1usize),
        (5, 2, 4, 1),
        (3, 3, 4, 1),
        (3, 2, 3, 2),
    ] {
        let base = zp_i(p, e, i, f, &ZpiOptions::default()).unwrap();
        let deeper = zp_i(
            p,
            e,
            i,
            f,
            &ZpiOptions {
                precision: Some(base.precision + 2),
                ..ZpiOptions::default()
            },
        )
        .unwrap();
        assert_eq!(
            base.h, deeper.h,
            "precision +2 at p = {p}, e = {e}, i = {i}"
        );
        let wider = zp_i(
            p,
            e,
            i,
            f,
            &ZpiOptions {
                wmax: Some(base.wmax * 2),
                ..ZpiOptions::default()
            },
        )
        .unwrap();
        assert_eq!(base.h, wider.h, "window x2 at p = {p}, e = {e}, i = {i}");
        let longer = zp_i(
            p,
            e,
            i,
            f,
            &ZpiOptions {
                a_extra: 2,
                ..ZpiOptions::default()
            },
        )
        .unwrap();
        assert_eq!(
            base.h, longer.h,
            "two extra positions at p = {p}, e = {e}, i = {i}"
        );
        assert_eq!(base.point, deeper.point);
        assert_eq!(base.point, wider.point);
        assert_eq!(base.point, longer.point);
    }
    println!("criterion 4 PASS: factors invariant under precision +2, window x2, and extra tower positions");
}

#[test]
fn criterion_5_divided_frobenius_integrality_and_graded_match() {
    for p in [3u64, 5] {
        for i in 0..=6u64 {
            let bound = 2 * (i + 1) + 4;
            let ring = WittRing::new(p, 4, 1).unwrap();
            let dp = dpcomplex::build(2, ring, p * bound).unwrap();
            let ny = nygaard::build(&dp, i).unwrap();
            for m in 0..=p * bound {
                let (_, c0) = ny.div_frob0_at(&dp, m).unwrap();
                let s0 = ny.scaling(DpBasisElem {
                    m,
                    deg: Degree::Zero,
                });
                let (_, raw0) = dp.phi0_at(m).unwrap();
                assert_eq!(
                    c0.valuation().unwrap() + i,
                    raw0.valuation().unwrap() + s0,
                    "integrality bookkeeping at p = {p}, i = {i}, m = {m}"
                );
                ny.div_frob1_at(&dp, m).unwrap();
            }
            let report = nygaard::gr_nygaard_check(&dp, &ny, bound).unwrap();
            assert!(
                report.pass,
                "p = {p}, i = {i}: offender {:?}",
                report.first_offending_weight
            );
        }
    }
    println!("criterion 5 PASS: divided Frobenius is integral and matches the conjugate indexing on graded pieces");
}

#[test]
fn criterion_6_witt_arithmetic_property_suite() {
    let cases = 1000usize;
    for (p, n, f) in [(3u64, 4u32, 2usize), (5, 3, 1), (2, 6, 1), (7, 3, 3)] {
        let ring = WittRing::new(p, n, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + p);
        for _ in 0..cases {
            let a = sample_elem(&ring, &mut rng);
            let b = sample_elem(&ring, &mut rng);
            let c = sample_elem(&ring, &mut rng);
            let ab_c = ring.mul(&ring.mul(&a, &b), &c);
            let a_bc = ring.mul(&a, &ring.mul(&b, &c));
            assert_eq!(ab_c, a_bc, "associativity at q = {p}^{f}");
            assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a), "commutativity");
            let left = ring.mul(&a, &ring.add(&b, &c));
            let right = ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c));
            assert_eq!(left, right, "distributivity");
            let fr = ring.frobenius(&ring.mul(&a, &b));
            assert_eq!(
                fr,
                ring.mul(&ring.frobenius(&a), &ring.frobenius(&b)),
                "F multiplicative"
            );
            let mut it = a.clone();
            for _ in 0..f {
                it = ring.frobenius(&it);
            }
            assert_eq!(it, a, "F^f = id");
            let fv = ring.frobenius(&ring.verschiebung(&a));
            assert_eq!(fv, ring.scalar_mul(p, &a), "FV = p");
            let vf = ring.verschiebung(&ring.frobenius(&a));
            assert_eq!(vf, ring.scalar_mul(p, &a), "VF = p");
            let coords = ring.to_witt_coords(&a);
            assert_eq!(
                ring.from_witt_coords(&coords),
                a,
                "ghost coordinate roundtrip"
            );
        }
        let mut rng2 = ChaCha8Rng::seed_from_u64(0x7E1C + p);
        for _ in 0..cases {
            let r1: Vec<u64> = (0..f).map(|_| rng2.gen_range(0..p)).collect();
            let r2: Vec<u64> = (0..f).map(|_| rng2.gen_range(0..p)).collect();
            let t1 = ring.teichmuller(&r1);
            let t2 = ring.teichmuller(&r2);
            let prod_res = ring.residue(&ring.mul(&t1, &t2));
            assert_eq!(
                ring.mul(&t1, &t2),
                ring.teichmuller(&prod_res),
                "Teichmuller multiplicative"
            );
        }
    }
    println!("criterion 6 PASS: Witt ring laws hold on 1000 random cases per ring");
}

#[test]
fn criterion_7_base_field_invariants() {
    for (p, f) in [(3u64, 1usize), (3, 2), (5, 1)] {
        let data = PerfectBaseData::new(WittRing::new(p, 6, f).unwrap());
        assert!(data.check_presentation(), "presentation at q = {p}^{f}");
        for j in -6i64..=12 {
            let (even, odd) = data.tc_homotopy(j).unwrap();
            if j == 0 {
                assert_eq!(even.factors, vec![6]);
                assert_eq!(odd.factors, vec![6]);
                assert!(even.saturated && odd.saturated);
            } else {
                assert!(
                    even.is_trivial() && odd.is_trivial(),
                    "degree pair at j = {j}"
                );
            }
        }
        let ring = WittRing::new(p, 6, f).unwrap();
        let (h0, h1) = syntomic_core::basecase::zp_i_point(&ring, 0).unwrap();
        assert_eq!((h0.factors.len(), h1.factors.len()), (1, 1));
        for i in 1..=6u64 {
            let (h0, h1) = syntomic_core::basecase::zp_i_point(&ring, i).unwrap();
            assert!(h0.is_trivial() && h1.is_trivial(), "i = {i}");
        }
    }
    println!("criterion 7 PASS: base-field invariants concentrate in degrees 0 and -1 as Z_p");
}

#[test]
fn criterion_8_conjugate_graded_dimension_law() {
    for p in [3u64, 5] {
        for e in [2u64, 3, 4] {
            let ring = WittRing::new(p, 4, 1).unwrap();
            let dp = dpcomplex::build(e, ring, e * p * 5).unwrap();
            for level in 0..=3u64 {
                assert_eq!(
                    dp.conj_graded_dimension(level).unwrap(),
                    e * p,
                    "p = {p}, e = {e}, level = {level}"
                );
            }
        }
    }
    println!("criterion 8 PASS: every conjugate graded piece has dimension e*p");
}
