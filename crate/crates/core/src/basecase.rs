//! Invariants of the perfect base field itself.
//!
//! Negative cyclic and periodic invariants of a perfect field k concentrate
//! in even degrees, with `pi_0 = W(k)` and a presentation on a generator
//! `sigma` in degree 2 and `x` in degree -2 subject to `x sigma = xi`, where
//! the canonical map sends `sigma` to `sigma`, `x` to `p sigma^{-1}` (so
//! `xi` to p), and the cyclotomic map sends `sigma` to `p sigma`, `x` to
//! `sigma^{-1}`, acting on `pi_0` as the Witt Frobenius.  The fixed-point
//! invariants in degrees `2j` and `2j - 1` are then kernel and cokernel of
//! the twisted Frobenius `p^j F - 1` for `j >= 0` and `F - p^{|j|}` for
//! `j < 0`, all of which are invertible except at `j = 0`, where both groups
//! are `Z_p`.
//!
//! The weight-zero part of the level-`i` syntomic complex of any truncated
//! polynomial ring is the map `F - p^i` on `W(k)`, the same family read at
//! twist `-i`.

use crate::linalg::{homology_at, HomologyGroup, PModMatrix};
use crate::witt::{WittElem, WittRing};
use crate::Result;

/// A perfect field `F_q` together with its Witt ring at working precision.
#[derive(Debug, Clone)]
pub struct PerfectBaseData {
    pub ring: WittRing,
}

impl PerfectBaseData {
    pub fn new(ring: WittRing) -> PerfectBaseData {
        PerfectBaseData { ring }
    }

    /// Matrix of the Witt Frobenius on the basis `1, t, .., t^{f-1}`.
    pub fn frobenius_matrix(&self) -> PModMatrix {
        let f = self.ring.f;
        let mut m = PModMatrix::zero(self.ring.p, self.ring.precision, f, f);
        for a in 0..f {
            let mut coords = vec![0u64; f];
            coords[a] = 1;
            let image = self.ring.frobenius(&self.ring.elem_from_coords(coords));
            for (r, &c) in image.coords().iter().enumerate() {
                m.set(r, a, c);
            }
        }
        m
    }

    /// Matrix of `p^{max(twist, 0)} F - p^{max(-twist, 0)}` on `W(k)`.
    pub fn twisted_map(&self, twist: i64) -> PModMatrix {
        let f = self.ring.f;
        let pn = self.ring.p_pow_n();
        let frob_scale = pow_clipped(self.ring.p, twist.max(0) as u32, pn);
        let id_scale = pow_clipped(self.ring.p, (-twist).max(0) as u32, pn);
        let mut m = self.frobenius_matrix();
        for r in 0..f {
            for c in 0..f {
                m.set(r, c, mulmod_u64(m.get(r, c), frob_scale, pn));
            }
        }
        for a in 0..f {
            m.add_to(a, a, pn - id_scale % pn);
        }
        m
    }

    /// Kernel and cokernel of `twisted_map(j)`: the fixed-point invariants
    /// in degrees `2j` and `2j - 1`.
    pub fn tc_homotopy(&self, j: i64) -> Result<(HomologyGroup, HomologyGroup)> {
        let f = self.ring.f;
        let m = self.twisted_map(j);
        let none_in = PModMatrix::zero(self.ring.p, self.ring.precision, f, 0);
        let none_out = PModMatrix::zero(self.ring.p, self.ring.precision, 0, f);
        let kernel = homology_at(&none_in, &m)?;
        let cokernel = homology_at(&m, &none_out)?;
        Ok((kernel, cokernel))
    }

    /// Consistency of the sign and p-power conventions against the graded
    /// presentation: `can(x) can(sigma) = p = can(xi)`, multiplicativity of
    /// the cyclotomic map on monomials, `sigma^j x^j = xi^j`, and a
    /// generator surviving in every even degree.
    pub fn check_presentation(&self) -> bool {
        let ring = &self.ring;
        let p_elem = ring.from_int(ring.p as i64);
        let range = 4i64;
        let can_x = TpElem {
            coef: p_elem.clone(),
            deg: -1,
        };
        let can_sigma = TpElem {
            coef: ring.one(),
            deg: 1,
        };
        let prod = can_x.mul(ring, &can_sigma);
        if prod.deg != 0 || prod.coef != p_elem {
            return false;
        }
        for a in -range..=range {
            for b in -range..=range {
                let (deg, coef) = monomial_product(ring, a, b);
                // coef is a p-power, fixed by Frobenius, so phi of the
                // product is coef times phi of the surviving monomial.
                let lhs = phi_monomial(ring, deg).scale(ring, &coef);
                let rhs = phi_monomial(ring, a).mul(ring, &phi_monomial(ring, b));
                if lhs.deg != rhs.deg || lhs.coef != rhs.coef {
                    return false;
                }
            }
        }
        for j in 1..=range {
            let (deg, coef) = monomial_product(ring, j, -j);
            if deg != 0 || coef != ring.pow(&p_elem, j as u64) {
                return false;
            }
        }
        for j in -range..=range {
            let img = can_monomial(ring, j);
            let expect = if j < 0 { (-j) as u32 } else { 0 };
            if ring.valuation(&img.coef) != Some(expect) {
                return false;
            }
        }
        true
    }
}

/// Graded invariants of the weight-zero block of the level-`i` syntomic
/// complex: kernel and cokernel of `F - p^i` on `W(k)`.
pub fn zp_i_point(ring: &WittRing, i: u64) -> Result<(HomologyGroup, HomologyGroup)> {
    PerfectBaseData::new(ring.clone()).tc_homotopy(-(i as i64))
}

/// A monomial `c * sigma^deg` in the periodic invariant ring (deg may be
/// negative).
#[derive(Debug, Clone)]
struct TpElem {
    coef: WittElem,
    deg: i64,
}

impl TpElem {
    fn mul(&self, ring: &WittRing, other: &TpElem) -> TpElem {
        TpElem {
            coef: ring.mul(&self.coef, &other.coef),
            deg: self.deg + other.deg,
        }
    }

    fn scale(&self, ring: &WittRing, by: &WittElem) -> TpElem {
        TpElem {
            coef: ring.mul(&self.coef, by),
            deg: self.deg,
        }
    }
}

/// Product of the fixed-point monomials `g_a g_b = xi^t g_{a+b}`: when the
/// signs differ, `t = min(|a|, |b|)` pairs of `x sigma` collapse to `xi`.
fn monomial_product(ring: &WittRing, a: i64, b: i64) -> (i64, WittElem) {
    let t = if a.signum() * b.signum() < 0 {
        a.abs().min(b.abs())
    } else {
        0
    };
    (a + b, ring.pow(&ring.from_int(ring.p as i64), t as u64))
}

/// Canonical image of `g_j`: `sigma^j` for `j >= 0`, `p^{|j|} sigma^j` for
/// `j < 0` (from `x -> p sigma^{-1}`).
fn can_monomial(ring: &WittRing, j: i64) -> TpElem {
    let v = if j < 0 { (-j) as u64 } else { 0 };
    TpElem {
        coef: ring.pow(&ring.from_int(ring.p as i64), v),
        deg: j,
    }
}

/// Cyclotomic image of `g_j`: `p^j sigma^j` for `j >= 0` (from
/// `sigma -> p sigma`), `sigma^j` for `j < 0` (from `x -> sigma^{-1}`).
fn phi_monomial(ring: &WittRing, j: i64) -> TpElem {
    let v = if j >= 0 { j as u64 } else { 0 };
    TpElem {
        coef: ring.pow(&ring.from_int(ring.p as i64), v),
        deg: j,
    }
}

fn pow_clipped(p: u64, e: u32, pn: u64) -> u64 {
    let mut acc = 1u64 % pn;
    for _ in 0..e {
        acc = mulmod_u64(acc, p % pn, pn);
    }
    acc
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}
