//! The divided-power de Rham complex of `W(k)[x] -> k[x]/x^e`.
//!
//! The pd-envelope of `(x^e)` inside `W(k)[x]` (with the delta-structure
//! `phi(x) = x^p`) is free on the divided powers `b_m = x^m / j(m)!` where
//! `j(m) = floor(m/e)`; its de Rham complex has degree-1 part free on
//! `b_m dx`.  Everything is weight-graded: `b_m` has weight m, `b_m dx` has
//! weight m+1.  The two structure maps are
//!
//! * `d(b_m) = m * (j(m-1)!/j(m)!) * b_{m-1} dx` (so `e * b_{m-1} dx` when
//!   `e | m`, else `m * b_{m-1} dx`),
//! * `phi(b_m) = (j(pm)!/j(m)!) * b_{pm}` in degree 0 and
//!   `phi(b_m dx) = p * (j(pm+p-1)!/j(m)!) * b_{pm+p-1} dx` in degree 1,
//!
//! with every coefficient carried as an exact [`ValScalar`].  Weights are
//! preserved by d and multiplied by p by phi.  The Hodge filtration level of
//! `b_m` is `j(m)`, of `b_m dx` is `j(m) + 1` (Griffiths transversality);
//! the conjugate filtration level of `b_m` mod p is `floor(j(m) / p)`, in
//! particular each conjugate graded piece has k-dimension `e * p`.
//!
//! Tables are stored for weights up to `wmax`; Frobenius images that leave
//! the window are recorded in an out-of-window ledger and are also available
//! through the `*_at` formula routes at any weight.

use crate::witt::{ValScalar, WittRing};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    One,
}

/// Basis element `b_m` (degree 0) or `b_m dx` (degree 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpBasisElem {
    pub m: u64,
    pub deg: Degree,
}

impl DpBasisElem {
    pub fn weight(&self) -> u64 {
        match self.deg {
            Degree::Zero => self.m,
            Degree::One => self.m + 1,
        }
    }
}

/// The divided-power de Rham complex with coefficient tables for all basis
/// elements of weight at most `wmax`.
#[derive(Debug, Clone)]
pub struct DpComplex {
    pub e: u64,
    pub wmax: u64,
    pub ring: WittRing,
    d_coef: Vec<ValScalar>,
    phi0: Vec<Option<(u64, ValScalar)>>,
    phi1: Vec<Option<(u64, ValScalar)>>,
    pub out_of_window: Vec<DpBasisElem>,
}

/// Build the complex over the given Witt ring.
pub fn build(e: u64, ring: WittRing, wmax: u64) -> Result<DpComplex> {
    if e < 2 {
        return Err(Error::Unsupported {
            what: format!("truncation exponent e = {e}; e = 1 is the perfect point"),
        });
    }
    if wmax < 1 {
        return Err(Error::WindowTooSmall {
            needed: 1,
            available: wmax,
        });
    }
    let mut dp = DpComplex {
        e,
        wmax,
        ring,
        d_coef: Vec::new(),
        phi0: Vec::new(),
        phi1: Vec::new(),
        out_of_window: Vec::new(),
    };
    for m in 0..=wmax {
        dp.d_coef.push(dp.d_coef_at(m));
        match dp.phi0_at(m)? {
            (target, c) if target <= wmax => dp.phi0.push(Some((target, c))),
            _ => {
                dp.phi0.push(None);
                dp.out_of_window.push(DpBasisElem {
                    m,
                    deg: Degree::Zero,
                });
            }
        }
    }
    for m in 0..wmax {
        // Degree-1 targets must stay degree-1 basis elements: index <= wmax-1.
        match dp.phi1_at(m)? {
            (target, c) if target < wmax => dp.phi1.push(Some((target, c))),
            _ => {
                dp.phi1.push(None);
                dp.out_of_window.push(DpBasisElem {
                    m,
                    deg: Degree::One,
                });
            }
        }
    }
    Ok(dp)
}

impl DpComplex {
    pub fn p(&self) -> u64 {
        self.ring.p
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision
    }

    /// Divided-power level `j(m) = floor(m / e)`.
    pub fn divided_level(&self, m: u64) -> u64 {
        m / self.e
    }

    /// Stored differential coefficient: `d(b_m) = d_coef(m) * b_{m-1} dx`.
    pub fn d_coef(&self, m: u64) -> ValScalar {
        self.d_coef[m as usize]
    }

    /// Stored Frobenius image of `b_m`; `None` if it leaves the window.
    pub fn phi0(&self, m: u64) -> Option<(u64, ValScalar)> {
        self.phi0[m as usize]
    }

    /// Stored Frobenius image of `b_m dx`; `None` if it leaves the window.
    pub fn phi1(&self, m: u64) -> Option<(u64, ValScalar)> {
        self.phi1[m as usize]
    }

    /// Differential coefficient by formula, valid at any weight.
    pub fn d_coef_at(&self, m: u64) -> ValScalar {
        if m == 0 {
            return ValScalar::Zero;
        }
        let j_hi = self.divided_level(m);
        let j_lo = self.divided_level(m - 1);
        let ratio = self.ring.factorial_ratio(j_hi, j_lo);
        ValScalar::from_int(&self.ring, m)
            .div_exact(&self.ring, &ratio)
            .expect("v_p(m) >= v_p(j(m)) because m = e * j(m) when e divides m")
    }

    /// Frobenius on degree 0 by formula: `(target, coefficient)` with target
    /// `p * m`.
    pub fn phi0_at(&self, m: u64) -> Result<(u64, ValScalar)> {
        let target = self
            .p()
            .checked_mul(m)
            .ok_or(Error::WeightOverflow { weight: m })?;
        let c = self
            .ring
            .factorial_ratio(self.divided_level(target), self.divided_level(m));
        Ok((target, c))
    }

    /// Frobenius on degree 1 by formula: `(target, coefficient)` with target
    /// `p * m + p - 1` and an extra factor p from `d(x^p)`.
    pub fn phi1_at(&self, m: u64) -> Result<(u64, ValScalar)> {
        let p = self.p();
        let target = p
            .checked_mul(m)
            .and_then(|t| t.checked_add(p - 1))
            .ok_or(Error::WeightOverflow { weight: m })?;
        let ratio = self
            .ring
            .factorial_ratio(self.divided_level(target), self.divided_level(m));
        let c = ValScalar::from_int(&self.ring, p).mul(&self.ring, &ratio);
        Ok((target, c))
    }

    /// Hodge filtration level (largest r with the element in Fil^{>=r}).
    pub fn hodge_level(&self, elem: DpBasisElem) -> u64 {
        match elem.deg {
            Degree::Zero => self.divided_level(elem.m),
            Degree::One => self.divided_level(elem.m) + 1,
        }
    }

    /// Conjugate filtration level of `b_m` mod p: `floor(j(m) / p)`.
    /// Defined in degree 0 only.
    pub fn conj_level(&self, elem: DpBasisElem) -> Result<u64> {
        match elem.deg {
            Degree::Zero => Ok(self.divided_level(elem.m) / self.p()),
            Degree::One => Err(Error::DegreeError { op: "conj_level" }),
        }
    }

    /// k-dimension of the conjugate graded piece at the given level, counted
    /// inside the weight window (must contain the whole piece).
    pub fn conj_graded_dimension(&self, level: u64) -> Result<u64> {
        let top = self
            .e
            .checked_mul(self.p())
            .and_then(|x| x.checked_mul(level + 1))
            .ok_or(Error::WeightOverflow { weight: level })?;
        if top - 1 > self.wmax {
            return Err(Error::WindowTooSmall {
                needed: top - 1,
                available: self.wmax,
            });
        }
        let mut count = 0;
        for m in 0..=self.wmax {
            if self.conj_level(DpBasisElem {
                m,
                deg: Degree::Zero,
            })? == level
            {
                count += 1;
            }
        }
        Ok(count)
    }
}
