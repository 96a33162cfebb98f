//! Weight-graded syntomic cohomology of `k[x]/x^e`.
//!
//! The level-`i` syntomic complex is the fiber of `phi/p^i - iota` from the
//! Nygaard-filtered divided-power complex to the ambient one:
//!
//! ```text
//! C0 = N^{>=i} Omega^0   C1 = N^{>=i} Omega^1 (+) Omega^0   C2 = Omega^1
//! D0(n0) = (d n0, (phi/p^i - iota) n0)
//! D1(n1, f0) = (phi/p^i - iota) n1 - d f0
//! ```
//!
//! Everything splits by weight.  Weight 0 is the base-field block
//! `F - p^i` on `W(k)`.  The positive weights group into towers
//! `T_d = {d, dp, dp^2, ..}` for `d` prime to p, since `phi` multiplies
//! weights by p while `d` and `iota` preserve them.  Beyond the position
//! where `d p^a >= e i` both `iota` components are units, so the tail of
//! each tower is an acyclic subcomplex; quotienting by it is exact, leaving
//! the finite matrices assembled here.  Each truncation is certified: the
//! defining inequality is rechecked, and a probe piece of the dropped tail
//! is built by the formula routes and verified acyclic.
//!
//! Homology is read through the local Smith reduction of `linalg`, with
//! precision escalated until no tower factor saturates.  For `e = 2` and
//! odd p the first cohomology is compared against the closed form
//! `H^1 = (+)_{d odd, gcd(d, 2p) = 1, d <= 2i-1} W_{n(i,d)}(k)` with
//! `n(i, d)` determined by `p^{n-1} d <= 2i - 1 < p^n d`; that group is
//! also `K_{2i-1}(k[x]/x^2, (x); Z_p)`.

use crate::basecase::{self, PerfectBaseData};
use crate::dpcomplex::{self, Degree, DpBasisElem, DpComplex};
use crate::linalg::{homology_at, HomologyGroup, PModMatrix};
use crate::nygaard::{self, NygaardComplex};
use crate::witt::{max_precision, ValScalar, WittRing};
use crate::{Error, Result};
use serde_json::{json, Value};
use std::time::Instant;

/// Environment variable that caps precision escalation.
pub const PRECISION_CEILING_ENV: &str = "SYNTOMIC_PRECISION_CEILING";

#[derive(Debug, Clone)]
pub struct ZpiOptions {
    /// Working precision override; must be at least the automatic choice.
    pub precision: Option<u32>,
    /// Weight table window override for the divided-power tables.
    pub wmax: Option<u64>,
    /// Extra tower positions to keep beyond the proven truncation point.
    pub a_extra: u64,
    /// Number of dropped tail positions to rebuild when certifying.
    pub tail_check: u64,
    /// Worker threads for the tower sweep; 0 picks automatically.
    pub jobs: usize,
    /// Hard cap for precision escalation; defaults from the environment
    /// variable or the representable maximum.
    pub precision_ceiling: Option<u32>,
}

impl Default for ZpiOptions {
    fn default() -> ZpiOptions {
        ZpiOptions {
            precision: None,
            wmax: None,
            a_extra: 0,
            tail_check: 2,
            jobs: 0,
            precision_ceiling: None,
        }
    }
}

/// How the result was cross-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validated {
    /// Matched the closed form for `e = 2`, odd p.
    ClosedForm,
    /// Internal invariants only (certificates, composition checks).
    InvariantsOnly,
}

impl Validated {
    pub fn as_str(&self) -> &'static str {
        match self {
            Validated::ClosedForm => "closed_form",
            Validated::InvariantsOnly => "invariants_only",
        }
    }
}

/// Factors contributed by one tower in one cohomological degree: each Witt
/// length n stands for `W_n(k)`, that is `(Z/p^n)^f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerFactors {
    pub d: u64,
    pub witt_lengths: Vec<u32>,
}

/// Record of where a tower was cut and how the cut was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerTruncation {
    pub d: u64,
    /// Last kept position; -1 means the whole tower is acyclic.
    pub a_max: i64,
    /// Dropped positions rebuilt and verified acyclic.
    pub tail_positions_checked: u64,
}

#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub p: u64,
    pub e: u64,
    pub i: u64,
    pub f: usize,
    pub precision: u32,
    pub wmax: u64,
    /// Tower factors in degrees 0, 1, 2; towers with no factors are omitted.
    pub h: [Vec<TowerFactors>; 3],
    /// Free `Z_p` ranks of the weight-zero block in degrees 0 and 1.
    pub point: (u64, u64),
    pub saturated: bool,
    pub validated: Validated,
    pub truncations: Vec<TowerTruncation>,
    pub escalations: u32,
    pub elapsed_ms: u128,
}

impl CohomologyResult {
    /// JSON document with a fixed key order.
    pub fn to_document(&self) -> Value {
        let towers = |list: &[TowerFactors]| {
            list.iter()
                .map(|t| json!({ "d": t.d, "witt_lengths": t.witt_lengths }))
                .collect::<Vec<_>>()
        };
        let mut doc = json!({
            "p": self.p,
            "e": self.e,
            "i": self.i,
            "f": self.f,
            "precision": self.precision,
            "h": [towers(&self.h[0]), towers(&self.h[1]), towers(&self.h[2])],
            "saturated": self.saturated,
            "validated": self.validated.as_str(),
        });
        if self.point != (0, 0) {
            doc["point"] = json!({
                "h0_free_rank": self.point.0,
                "h1_free_rank": self.point.1,
            });
        }
        doc
    }

    /// Exponent E with `|H^deg| = p^E`, torsion part only.
    pub fn order_exponent(&self, degree: usize) -> u64 {
        self.h[degree]
            .iter()
            .flat_map(|t| t.witt_lengths.iter())
            .map(|&n| n as u64 * self.f as u64)
            .sum()
    }

    /// Multiset of elementary `Z/p^a` exponents in one degree, towers
    /// expanded by f, point ranks reported at the working precision.
    pub fn flattened_exponents(&self, degree: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self.h[degree]
            .iter()
            .flat_map(|t| t.witt_lengths.iter())
            .flat_map(|&n| std::iter::repeat_n(n, self.f))
            .collect();
        let point_rank = match degree {
            0 => self.point.0,
            1 => self.point.1,
            _ => 0,
        };
        out.extend(std::iter::repeat_n(self.precision, point_rank as usize));
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Dense single-window evaluation used as an independent oracle.
#[derive(Debug, Clone)]
pub struct NaiveResult {
    pub p: u64,
    pub e: u64,
    pub i: u64,
    pub f: usize,
    pub precision: u32,
    pub weight_cutoff: u64,
    pub h: [HomologyGroup; 3],
}

/// Closed form for `H^1` at `e = 2`, odd p: pairs `(d, n(i, d))` over
/// `d` odd, prime to p, `d <= 2i - 1`.
pub fn closed_form_h1(p: u64, i: u64) -> Result<Vec<(u64, u32)>> {
    if p == 2 {
        return Err(Error::Unsupported {
            what: "closed form requires odd p".into(),
        });
    }
    let mut out = Vec::new();
    if i == 0 {
        return Ok(out);
    }
    let top = 2 * i - 1;
    let mut d = 1u64;
    while d <= top {
        if !d.is_multiple_of(p) {
            let mut n = 1u32;
            let mut bound = d
                .checked_mul(p)
                .ok_or(Error::WeightOverflow { weight: d })?;
            while bound <= top {
                n += 1;
                bound = bound
                    .checked_mul(p)
                    .ok_or(Error::WeightOverflow { weight: bound })?;
            }
            out.push((d, n));
        }
        d += 2;
    }
    Ok(out)
}

/// `K_{2i-1}(k[x]/x^e, (x); Z_p)` read from the degree-1 syntomic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGroupSummary {
    pub p: u64,
    pub e: u64,
    pub i: u64,
    pub f: usize,
    pub degree: u64,
    /// `(d, n)` pairs, one `W_n(k)` summand each.
    pub factors: Vec<(u64, u32)>,
    /// `|K| = p^order_exponent`.
    pub order_exponent: u64,
}

pub fn relative_k_group(
    p: u64,
    e: u64,
    i: u64,
    f: usize,
    opts: &ZpiOptions,
) -> Result<KGroupSummary> {
    if p == 2 {
        return Err(Error::Unsupported {
            what: "the cyclotomic trace comparison used here requires odd p".into(),
        });
    }
    if i == 0 {
        return Err(Error::Unsupported {
            what: "relative K-groups start at i = 1".into(),
        });
    }
    let r = zp_i(p, e, i, f, opts)?;
    let mut factors = Vec::new();
    for t in &r.h[1] {
        for &n in &t.witt_lengths {
            factors.push((t.d, n));
        }
    }
    let order_exponent = r.order_exponent(1);
    Ok(KGroupSummary {
        p,
        e,
        i,
        f,
        degree: 2 * i - 1,
        factors,
        order_exponent,
    })
}

fn auto_precision(p: u64, e: u64, i: u64) -> u32 {
    let target = e * i;
    let mut t = 0u32;
    let mut pw = 1u64;
    while pw < target {
        pw = pw.saturating_mul(p);
        t += 1;
    }
    (t + 3).max(4)
}

fn auto_wmax(p: u64, e: u64, i: u64) -> u64 {
    (e * i).saturating_mul(p * p).max(e * p)
}

/// Last tower position that may carry cohomology: the least `A >= -1` with
/// `d p^{A+1} >= e i`.
pub fn truncation_position(p: u64, e: u64, i: u64, d: u64) -> Result<i64> {
    let target = e * i;
    let mut a = -1i64;
    let mut w = d;
    while w < target {
        a += 1;
        w = w
            .checked_mul(p)
            .ok_or(Error::WeightOverflow { weight: w })?;
    }
    Ok(a)
}

struct BlockBuilder<'a> {
    ring: &'a WittRing,
    frob: &'a PModMatrix,
    mat: PModMatrix,
}

impl<'a> BlockBuilder<'a> {
    fn new(
        ring: &'a WittRing,
        frob: &'a PModMatrix,
        row_slots: usize,
        col_slots: usize,
    ) -> BlockBuilder<'a> {
        let f = ring.f;
        BlockBuilder {
            ring,
            frob,
            mat: PModMatrix::zero(ring.p, ring.precision, row_slots * f, col_slots * f),
        }
    }

    /// Add `coeff` at block `(row_slot, col_slot)`, expanded over the Witt
    /// coordinates: semilinear entries carry the Frobenius matrix, linear
    /// ones the identity.
    fn add(
        &mut self,
        row_slot: usize,
        col_slot: usize,
        coeff: &ValScalar,
        semilinear: bool,
        negate: bool,
    ) {
        let pn = self.ring.p_pow_n();
        let mut res = coeff.to_residue(self.ring);
        if negate {
            res = (pn - res) % pn;
        }
        if res == 0 {
            return;
        }
        let f = self.ring.f;
        for b in 0..f {
            for a in 0..f {
                let cell = if semilinear {
                    self.frob.get(a, b)
                } else {
                    u64::from(a == b)
                };
                if cell != 0 {
                    let val = ((res as u128 * cell as u128) % pn as u128) as u64;
                    self.mat.add_to(row_slot * f + a, col_slot * f + b, val);
                }
            }
        }
    }
}

/// Assemble the two fiber-complex differentials for tower positions
/// `a_lo ..= a_hi` of `T_d` (weights `d p^a`).  Frobenius entries whose
/// target position exceeds `a_hi` are dropped, which is the exact
/// truncation by the tail subcomplex.
fn tower_block(
    dp: &DpComplex,
    ny: &NygaardComplex,
    frob: &PModMatrix,
    d: u64,
    a_lo: i64,
    a_hi: i64,
) -> Result<(PModMatrix, PModMatrix)> {
    let ring = &dp.ring;
    let cnt = (a_hi - a_lo + 1).max(0) as usize;
    let mut d0 = BlockBuilder::new(ring, frob, 2 * cnt, cnt);
    let mut d1 = BlockBuilder::new(ring, frob, cnt, 2 * cnt);
    let mut w = d;
    for _ in 0..a_lo {
        w = w
            .checked_mul(dp.p())
            .ok_or(Error::WeightOverflow { weight: w })?;
    }
    for idx in 0..cnt {
        let n_slot = idx;
        let f_slot = cnt + idx;
        let g_slot = idx;
        d0.add(n_slot, idx, &ny.scaled_d_at(dp, w)?, false, false);
        d0.add(
            f_slot,
            idx,
            &ny.iota_coef(DpBasisElem {
                m: w,
                deg: Degree::Zero,
            }),
            false,
            true,
        );
        d1.add(
            g_slot,
            n_slot,
            &ny.iota_coef(DpBasisElem {
                m: w - 1,
                deg: Degree::One,
            }),
            false,
            true,
        );
        d1.add(g_slot, f_slot, &dp.d_coef_at(w), false, true);
        if idx + 1 < cnt {
            d0.add(cnt + idx + 1, idx, &ny.div_frob0_at(dp, w)?.1, true, false);
            d1.add(
                g_slot + 1,
                n_slot,
                &ny.div_frob1_at(dp, w - 1)?.1,
                true,
                false,
            );
        }
        w = w
            .checked_mul(dp.p())
            .ok_or(Error::WeightOverflow { weight: w })?;
    }
    Ok((d0.mat, d1.mat))
}

/// Verify that the dropped tail of `T_d` starting at position `a_start` is
/// acyclic: recheck the unit-iota inequality and rebuild `k` positions of
/// the tail, requiring trivial homology throughout.
fn certify_tail(
    dp: &DpComplex,
    ny: &NygaardComplex,
    frob: &PModMatrix,
    d: u64,
    a_start: i64,
    k: u64,
) -> Result<u64> {
    let p = dp.p();
    let mut w = d;
    for _ in 0..a_start {
        w = w
            .checked_mul(p)
            .ok_or(Error::WeightOverflow { weight: w })?;
    }
    if w < dp.e * ny.i {
        return Err(Error::CertificateFailure {
            d,
            detail: format!("first dropped weight {w} is below e*i = {}", dp.e * ny.i),
        });
    }
    if ny.scaling(DpBasisElem {
        m: w,
        deg: Degree::Zero,
    }) != 0
        || ny.scaling(DpBasisElem {
            m: w - 1,
            deg: Degree::One,
        }) != 0
    {
        return Err(Error::CertificateFailure {
            d,
            detail: format!("inclusion is not a unit at dropped weight {w}"),
        });
    }
    if k == 0 {
        return Ok(0);
    }
    let a_end = a_start + k as i64 - 1;
    let (d0, d1) = tower_block(dp, ny, frob, d, a_start, a_end)?;
    let ring = &dp.ring;
    let lead_in = PModMatrix::zero(ring.p, ring.precision, d0.cols, 0);
    let lead_out = PModMatrix::zero(ring.p, ring.precision, 0, d1.rows);
    let h0 = homology_at(&lead_in, &d0)?;
    let h1 = homology_at(&d0, &d1)?;
    let h2 = homology_at(&d1, &lead_out)?;
    if !(h0.is_trivial() && h1.is_trivial() && h2.is_trivial()) {
        return Err(Error::CertificateFailure {
            d,
            detail: format!(
                "tail probe at positions {a_start}..={a_end} is not acyclic: {:?} {:?} {:?}",
                h0.factors, h1.factors, h2.factors
            ),
        });
    }
    Ok(k)
}

struct TowerOutcome {
    d: u64,
    h: [HomologyGroup; 3],
    truncation: TowerTruncation,
}

fn tower_homology(
    dp: &DpComplex,
    ny: &NygaardComplex,
    frob: &PModMatrix,
    d: u64,
    opts: &ZpiOptions,
) -> Result<TowerOutcome> {
    let ring = &dp.ring;
    let a_max = truncation_position(dp.p(), dp.e, ny.i, d)?;
    let a_top = a_max + opts.a_extra as i64;
    let h = if a_top < 0 {
        [
            HomologyGroup::trivial(),
            HomologyGroup::trivial(),
            HomologyGroup::trivial(),
        ]
    } else {
        let (d0, d1) = tower_block(dp, ny, frob, d, 0, a_top)?;
        let lead_in = PModMatrix::zero(ring.p, ring.precision, d0.cols, 0);
        let lead_out = PModMatrix::zero(ring.p, ring.precision, 0, d1.rows);
        [
            homology_at(&lead_in, &d0)?,
            homology_at(&d0, &d1)?,
            homology_at(&d1, &lead_out)?,
        ]
    };
    let checked = certify_tail(dp, ny, frob, d, a_top + 1, opts.tail_check)?;
    Ok(TowerOutcome {
        d,
        h,
        truncation: TowerTruncation {
            d,
            a_max,
            tail_positions_checked: checked,
        },
    })
}

fn run_towers(
    dp: &DpComplex,
    ny: &NygaardComplex,
    frob: &PModMatrix,
    towers: &[u64],
    opts: &ZpiOptions,
) -> Result<Vec<TowerOutcome>> {
    let jobs = if opts.jobs == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        opts.jobs
    }
    .min(towers.len().max(1));
    if jobs <= 1 {
        return towers
            .iter()
            .map(|&d| tower_homology(dp, ny, frob, d, opts))
            .collect();
    }
    let chunk_size = towers.len().div_ceil(jobs);
    let mut collected: Vec<Result<TowerOutcome>> = Vec::with_capacity(towers.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = towers
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&d| tower_homology(dp, ny, frob, d, opts))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            collected.extend(handle.join().expect("tower worker panicked"));
        }
    });
    collected.into_iter().collect()
}

/// Collapse elementary factors into Witt lengths: over `F_{p^f}` every
/// tower factor `W_n(k)` contributes f equal elementary exponents.
fn collapse_factors(group: &HomologyGroup, f: usize, d: u64) -> Vec<u32> {
    let mut lengths = Vec::new();
    let mut run = 0usize;
    let mut prev = 0u32;
    for &a in group.factors.iter().chain(std::iter::once(&0u32)) {
        if a == prev && a != 0 {
            run += 1;
            continue;
        }
        if prev != 0 {
            assert!(
                run.is_multiple_of(f),
                "tower {d}: multiplicity {run} of exponent {prev} not divisible by f = {f}"
            );
            lengths.extend(std::iter::repeat_n(prev, run / f));
        }
        prev = a;
        run = 1;
    }
    lengths
}

fn resolve_ceiling(p: u64, opts: &ZpiOptions, floor: u32) -> u32 {
    let hard = max_precision(p);
    let from_env = std::env::var(PRECISION_CEILING_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok());
    opts.precision_ceiling
        .or(from_env)
        .unwrap_or_else(|| (floor + 24).min(hard))
        .min(hard)
}

/// Compute `H^*(Z_p(i))` of `k[x]/x^e` over `k = F_{p^f}`.
pub fn zp_i(p: u64, e: u64, i: u64, f: usize, opts: &ZpiOptions) -> Result<CohomologyResult> {
    let start = Instant::now();
    if f == 0 {
        return Err(Error::Unsupported {
            what: "residue degree f must be positive".into(),
        });
    }
    let min_n = auto_precision(p, e, i);
    let mut n = match opts.precision {
        Some(x) if x < min_n => {
            return Err(Error::Unsupported {
                what: format!("precision {x} below the required minimum {min_n}"),
            })
        }
        Some(x) => x,
        None => min_n,
    };
    let wmax = opts.wmax.unwrap_or_else(|| auto_wmax(p, e, i)).max(1);
    let ceiling = resolve_ceiling(p, opts, min_n);
    if n > ceiling {
        return Err(Error::NonTermination {
            precision: n,
            ceiling,
        });
    }
    let towers: Vec<u64> = (1..e * i).filter(|d| d % p != 0).collect();
    let mut escalations = 0u32;
    loop {
        let ring = WittRing::new(p, n, f)?;
        let dp = dpcomplex::build(e, ring.clone(), wmax)?;
        let ny = nygaard::build(&dp, i)?;
        let frob = PerfectBaseData::new(ring.clone()).frobenius_matrix();
        let outcomes = run_towers(&dp, &ny, &frob, &towers, opts)?;
        if outcomes.iter().any(|o| o.h.iter().any(|g| g.saturated)) {
            if n + 2 > ceiling {
                return Err(Error::NonTermination {
                    precision: n,
                    ceiling,
                });
            }
            n += 2;
            escalations += 1;
            continue;
        }
        let (point0, point1) = basecase::zp_i_point(&ring, i)?;
        for g in [&point0, &point1] {
            assert!(
                g.factors.iter().all(|&a| a == n) && (g.factors.is_empty() || g.saturated),
                "weight-zero block must be free: {:?}",
                g.factors
            );
        }
        let mut h: [Vec<TowerFactors>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut truncations = Vec::new();
        for o in &outcomes {
            for (deg, bucket) in h.iter_mut().enumerate() {
                let lengths = collapse_factors(&o.h[deg], f, o.d);
                if !lengths.is_empty() {
                    bucket.push(TowerFactors {
                        d: o.d,
                        witt_lengths: lengths,
                    });
                }
            }
            truncations.push(o.truncation.clone());
        }
        let point = (point0.factors.len() as u64, point1.factors.len() as u64);
        let validated = if p > 2 && e == 2 && i >= 1 {
            let expected = closed_form_h1(p, i)?;
            let actual: Vec<(u64, u32)> = h[1]
                .iter()
                .flat_map(|t| t.witt_lengths.iter().map(move |&m| (t.d, m)))
                .collect();
            if actual != expected {
                return Err(Error::ValidationMismatch {
                    detail: format!(
                        "p = {p}, i = {i}: computed H^1 {actual:?} differs from closed form {expected:?}"
                    ),
                });
            }
            Validated::ClosedForm
        } else {
            Validated::InvariantsOnly
        };
        return Ok(CohomologyResult {
            p,
            e,
            i,
            f,
            precision: n,
            wmax,
            h,
            point,
            saturated: false,
            validated,
            truncations,
            escalations,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
}

/// Dense oracle: one complex over all weights `0 ..= weight_cutoff`, no
/// tower decomposition, weight 0 included inline, no escalation.
pub fn zp_i_naive(
    p: u64,
    e: u64,
    i: u64,
    f: usize,
    precision: u32,
    weight_cutoff: u64,
) -> Result<NaiveResult> {
    if f == 0 {
        return Err(Error::Unsupported {
            what: "residue degree f must be positive".into(),
        });
    }
    if weight_cutoff < e * i {
        return Err(Error::WindowTooSmall {
            needed: e * i,
            available: weight_cutoff,
        });
    }
    let w_top = weight_cutoff;
    let ring = WittRing::new(p, precision, f)?;
    let dp = dpcomplex::build(e, ring.clone(), w_top.max(1))?;
    let ny = nygaard::build(&dp, i)?;
    let frob = PerfectBaseData::new(ring.clone()).frobenius_matrix();
    let deg0 = (w_top + 1) as usize;
    let deg1 = w_top as usize;
    let mut d0 = BlockBuilder::new(&ring, &frob, deg1 + deg0, deg0);
    let mut d1 = BlockBuilder::new(&ring, &frob, deg1, deg1 + deg0);
    // C1 layout: Nygaard degree-1 slots for weights 1..=W, then ambient
    // degree-0 slots for weights 0..=W.
    for w in 0..=w_top {
        let n_col = w as usize;
        if w >= 1 {
            d0.add(w as usize - 1, n_col, &ny.scaled_d(w), false, false);
        }
        d0.add(
            deg1 + w as usize,
            n_col,
            &ny.iota_coef(DpBasisElem {
                m: w,
                deg: Degree::Zero,
            }),
            false,
            true,
        );
        if let Some((target, c)) = ny.div_frob0(w) {
            if target <= w_top {
                d0.add(deg1 + target as usize, n_col, &c, true, false);
            }
        }
    }
    for w in 1..=w_top {
        let n1_col = w as usize - 1;
        d1.add(
            w as usize - 1,
            n1_col,
            &ny.iota_coef(DpBasisElem {
                m: w - 1,
                deg: Degree::One,
            }),
            false,
            true,
        );
        if let Some((target, c)) = ny.div_frob1(w - 1) {
            if target < w_top {
                d1.add(target as usize, n1_col, &c, true, false);
            }
        }
        d1.add(
            w as usize - 1,
            deg1 + w as usize,
            &dp.d_coef(w),
            false,
            true,
        );
    }
    let lead_in = PModMatrix::zero(p, precision, d0.mat.cols, 0);
    let lead_out = PModMatrix::zero(p, precision, 0, d1.mat.rows);
    let h0 = homology_at(&lead_in, &d0.mat)?;
    let h1 = homology_at(&d0.mat, &d1.mat)?;
    let h2 = homology_at(&d1.mat, &lead_out)?;
    Ok(NaiveResult {
        p,
        e,
        i,
        f,
        precision,
        weight_cutoff,
        h: [h0, h1, h2],
    })
}
