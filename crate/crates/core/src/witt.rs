//! Truncated Witt vectors of finite fields.
//!
//! `W_N(F_q)` with `q = p^f` is modelled as the unramified extension
//! `Z_q/p^N = (Z/p^N)[t]/(m)` for a monic degree-f lift `m` of an irreducible
//! polynomial over `F_p`.  The Witt-vector Frobenius is the ring automorphism
//! obtained by Hensel-lifting the root of `m` congruent to `t^p mod p`;
//! Verschiebung is `V = p * F^{-1}` in this fixed-precision model, so
//! `FV = VF = p` holds on the nose.  Elements never compare across rings
//! with different moduli.
//!
//! The module also owns the exact scalar type [`ValScalar`] (a p-adic
//! valuation together with a unit mod `p^N`) and the factorial bookkeeping
//! (Legendre valuations, factorial-ratio units via the prime-power Wilson
//! recursion) used by the divided-power complex.

use crate::{Error, Result};

/// Largest precision N with p^N representable with headroom in u64.
pub fn max_precision(p: u64) -> u32 {
    let bound: u64 = 1 << 62;
    let mut n = 0;
    let mut pw: u64 = 1;
    while pw <= bound / p {
        pw *= p;
        n += 1;
    }
    n
}

/// v_p(j!) by Legendre's formula, `(j - s_p(j)) / (p - 1)` computed as the
/// convergent sum of `floor(j / p^k)`.
pub fn legendre_valuation(p: u64, j: u64) -> u64 {
    let mut v = 0;
    let mut q = j / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via extended Euclid; `None` if not coprime.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

// ---------------------------------------------------------------------------
// ValScalar: exact carrier `p^v * unit` with the unit kept mod p^N.
// ---------------------------------------------------------------------------

/// An exact scalar `p^v * u` with `u` a unit mod `p^N`, or zero.  Division by
/// a power of p is exact valuation arithmetic, which is what lets the divided
/// Frobenius `phi / p^i` be formed without precision loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValScalar {
    Zero,
    Finite { v: u64, unit: u64 },
}

impl ValScalar {
    pub fn from_int(ring: &WittRing, x: u64) -> ValScalar {
        if x == 0 {
            return ValScalar::Zero;
        }
        let mut v = 0;
        let mut u = x;
        while u.is_multiple_of(ring.p) {
            u /= ring.p;
            v += 1;
        }
        ValScalar::Finite {
            v,
            unit: u % ring.pn,
        }
    }

    pub fn valuation(&self) -> Option<u64> {
        match self {
            ValScalar::Zero => None,
            ValScalar::Finite { v, .. } => Some(*v),
        }
    }

    pub fn mul(&self, ring: &WittRing, other: &ValScalar) -> ValScalar {
        match (self, other) {
            (ValScalar::Finite { v: v1, unit: u1 }, ValScalar::Finite { v: v2, unit: u2 }) => {
                ValScalar::Finite {
                    v: v1 + v2,
                    unit: mulmod(*u1, *u2, ring.pn),
                }
            }
            _ => ValScalar::Zero,
        }
    }

    /// Exact quotient; requires `other` nonzero and valuation(self) >= valuation(other).
    pub fn div_exact(&self, ring: &WittRing, other: &ValScalar) -> Result<ValScalar> {
        let ValScalar::Finite { v: v2, unit: u2 } = other else {
            return Err(Error::Unsupported {
                what: "division by zero ValScalar".into(),
            });
        };
        match self {
            ValScalar::Zero => Ok(ValScalar::Zero),
            ValScalar::Finite { v: v1, unit: u1 } => {
                if v1 < v2 {
                    return Err(Error::NegativeScaling {
                        m: 0,
                        delta: *v1 as i64 - *v2 as i64,
                    });
                }
                let inv = inv_mod(*u2, ring.pn).expect("unit part is invertible");
                Ok(ValScalar::Finite {
                    v: v1 - v2,
                    unit: mulmod(*u1, inv, ring.pn),
                })
            }
        }
    }

    /// Multiply by `p^delta`; `delta` may be negative only down to `-v`.
    pub fn shift(&self, delta: i64) -> Result<ValScalar> {
        match self {
            ValScalar::Zero => Ok(ValScalar::Zero),
            ValScalar::Finite { v, unit } => {
                let nv = *v as i64 + delta;
                if nv < 0 {
                    return Err(Error::NegativeScaling { m: 0, delta: nv });
                }
                Ok(ValScalar::Finite {
                    v: nv as u64,
                    unit: *unit,
                })
            }
        }
    }

    /// Collapse to a residue mod `p^N`; valuations >= N become 0.
    pub fn to_residue(&self, ring: &WittRing) -> u64 {
        match self {
            ValScalar::Zero => 0,
            ValScalar::Finite { v, unit } => {
                if *v >= ring.precision as u64 {
                    0
                } else {
                    mulmod(powmod(ring.p, *v, ring.pn), *unit, ring.pn)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomial helpers over F_p, used only for modulus selection.
// ---------------------------------------------------------------------------

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `t^f + low` over `F_p`.
fn poly_rem(p: u64, low: &[u64], a: &[u64]) -> Vec<u64> {
    let f = low.len();
    let mut r = a.to_vec();
    while r.len() > f {
        let lead = *r.last().unwrap();
        let deg = r.len() - 1;
        r.pop();
        if lead != 0 {
            for (k, &c) in low.iter().enumerate() {
                let idx = deg - f + k;
                r[idx] = (r[idx] + (p - lead % p) * c) % p;
            }
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_mulrem(p: u64, low: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    poly_rem(p, low, &c)
}

/// `x^(p^k)` modulo `t^f + low` over `F_p`.
fn frobenius_power_mod_p(p: u64, low: &[u64], k: u32) -> Vec<u64> {
    let mut cur = vec![0, 1];
    cur = poly_rem(p, low, &cur);
    for _ in 0..k {
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulrem(p, low, &acc, &base);
            }
            base = poly_mulrem(p, low, &base, &base);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

fn poly_gcd_is_const(p: u64, a: &[u64], b: &[u64]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // Reduce a mod b (b made monic on the fly).
        let lead_inv = powmod(*b.last().unwrap(), p - 2, p);
        let bm: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        let f = bm.len() - 1;
        if f == 0 {
            return true;
        }
        let r = poly_rem(p, &bm[..f], &a);
        a = b;
        b = r;
    }
    a.len() <= 1
}

/// Rabin irreducibility test for the monic polynomial `t^f + low` over `F_p`.
fn poly_is_irreducible(p: u64, low: &[u64]) -> bool {
    let f = low.len();
    if f == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let xq = frobenius_power_mod_p(p, low, f as u32);
    if xq != poly_rem(p, low, &x) {
        return false;
    }
    let mut rem = f;
    let mut l = 2;
    let mut modulus_full = low.to_vec();
    modulus_full.push(1);
    while l * l <= rem {
        if rem.is_multiple_of(l) {
            let xk = frobenius_power_mod_p(p, low, (f / l) as u32);
            let mut diff = xk;
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            if !poly_gcd_is_const(p, &diff, &modulus_full) {
                return false;
            }
            while rem.is_multiple_of(l) {
                rem /= l;
            }
        }
        l += 1;
    }
    if rem > 1 {
        let xk = frobenius_power_mod_p(p, low, (f / rem) as u32);
        let mut diff = xk;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_gcd_is_const(p, &diff, &modulus_full) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// WittElem and WittRing.
// ---------------------------------------------------------------------------

/// An element of `W_N(F_q)` in the basis `1, t, ..., t^{f-1}`, coordinates
/// reduced mod `p^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittElem {
    coords: Vec<u64>,
}

impl WittElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// The ring `W_N(F_{p^f})` together with its precomputed Frobenius data.
#[derive(Debug, Clone)]
pub struct WittRing {
    pub p: u64,
    pub precision: u32,
    pub f: usize,
    pn: u64,
    q: u64,
    /// Low coefficients of the monic modulus `t^f + modulus` (length f).
    modulus: Vec<u64>,
    /// `t^{f+k}` in the basis, for `k = 0..f-1`.
    red: Vec<Vec<u64>>,
    /// Powers `r^0..r^{f-1}` of the Frobenius image of t.
    frob_pows: Vec<WittElem>,
    /// Powers of the inverse-Frobenius image of t.
    frob_inv_pows: Vec<WittElem>,
}

impl WittRing {
    /// Ring with the first irreducible modulus in base-p enumeration order.
    pub fn new(p: u64, precision: u32, f: usize) -> Result<WittRing> {
        let modulus = Self::default_modulus(p, f)?;
        Self::with_modulus(p, precision, modulus)
    }

    /// Low coefficients of the default degree-f modulus.
    pub fn default_modulus(p: u64, f: usize) -> Result<Vec<u64>> {
        if f == 0 || f > 8 {
            return Err(Error::Unsupported {
                what: format!("residue degree f = {f}"),
            });
        }
        let count = p
            .checked_pow(f as u32)
            .ok_or(Error::WeightOverflow { weight: u64::MAX })?;
        for value in 0..count {
            let mut low = Vec::with_capacity(f);
            let mut v = value;
            for _ in 0..f {
                low.push(v % p);
                v /= p;
            }
            if poly_is_irreducible(p, &low) {
                return Ok(low);
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    /// Ring with an explicit monic modulus lift (low coefficients, length f).
    pub fn with_modulus(p: u64, precision: u32, modulus: Vec<u64>) -> Result<WittRing> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Unsupported {
                what: format!("p = {p} is not prime"),
            });
        }
        if precision == 0 || precision > max_precision(p) {
            return Err(Error::PrecisionOverflow { p, precision });
        }
        let f = modulus.len();
        if f == 0 {
            return Err(Error::Unsupported {
                what: "empty modulus".into(),
            });
        }
        let low_mod_p: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !poly_is_irreducible(p, &low_mod_p) {
            return Err(Error::Unsupported {
                what: "modulus reducible mod p".into(),
            });
        }
        let pn = p.pow(precision);
        let q = p.checked_pow(f as u32).ok_or(Error::Unsupported {
            what: format!("q = p^{f} overflows"),
        })?;
        let modulus: Vec<u64> = modulus.iter().map(|c| c % pn).collect();

        // t^f = -modulus, then t^{f+k+1} = t * t^{f+k}.
        let mut red: Vec<Vec<u64>> = Vec::with_capacity(f);
        let row0: Vec<u64> = modulus.iter().map(|&c| (pn - c % pn) % pn).collect();
        red.push(row0);
        for k in 1..f.saturating_sub(1) {
            let prev = red[k - 1].clone();
            let mut row = vec![0u64; f];
            let carry = prev[f - 1];
            row[1..f].copy_from_slice(&prev[..f - 1]);
            for j in 0..f {
                row[j] = (row[j] + mulmod(carry, red[0][j], pn)) % pn;
            }
            red.push(row);
        }

        let mut ring = WittRing {
            p,
            precision,
            f,
            pn,
            q,
            modulus,
            red,
            frob_pows: Vec::new(),
            frob_inv_pows: Vec::new(),
        };
        let r = ring.lift_frobenius_root();
        ring.frob_pows = ring.power_table(&r);
        let mut s = ring.elem_t();
        for _ in 0..f.saturating_sub(1) {
            s = ring.apply_table(&ring.frob_pows.clone(), &s);
        }
        ring.frob_inv_pows = ring.power_table(&s);
        Ok(ring)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn residue_count(&self) -> u64 {
        self.q
    }

    pub fn p_pow_n(&self) -> u64 {
        self.pn
    }

    fn power_table(&self, r: &WittElem) -> Vec<WittElem> {
        let mut pows = Vec::with_capacity(self.f);
        let mut cur = self.one();
        for _ in 0..self.f {
            pows.push(cur.clone());
            cur = self.mul(&cur, r);
        }
        pows
    }

    fn apply_table(&self, pows: &[WittElem], x: &WittElem) -> WittElem {
        let mut acc = self.zero();
        for (i, pw) in pows.iter().enumerate() {
            acc = self.add(&acc, &self.scalar_mul(x.coords[i], pw));
        }
        acc
    }

    /// Hensel-lift the root of the modulus congruent to `t^p` mod p.
    fn lift_frobenius_root(&self) -> WittElem {
        let mut r = self.pow(&self.elem_t(), self.p);
        for _ in 0..64 {
            let val = self.eval_modulus(&r);
            if val == self.zero() {
                return r;
            }
            let der = self.eval_modulus_derivative(&r);
            let der_inv = self.inv(&der).expect("modulus is separable mod p");
            r = self.sub(&r, &self.mul(&val, &der_inv));
        }
        panic!("Hensel iteration for the Frobenius root did not converge");
    }

    fn eval_modulus(&self, r: &WittElem) -> WittElem {
        // r^f + sum c_i r^i, Horner on the monic polynomial.
        let mut acc = self.one();
        for i in (0..self.f).rev() {
            acc = self.mul(&acc, r);
            acc = self.add(&acc, &self.from_int_u(self.modulus[i]));
        }
        acc
    }

    fn eval_modulus_derivative(&self, r: &WittElem) -> WittElem {
        let mut acc = self.from_int_u(self.f as u64);
        for i in (1..self.f).rev() {
            acc = self.mul(&acc, r);
            let c = mulmod(i as u64 % self.pn, self.modulus[i], self.pn);
            acc = self.add(&acc, &self.from_int_u(c));
        }
        acc
    }

    // -- basic arithmetic ---------------------------------------------------

    pub fn zero(&self) -> WittElem {
        WittElem {
            coords: vec![0; self.f],
        }
    }

    pub fn one(&self) -> WittElem {
        let mut coords = vec![0; self.f];
        coords[0] = 1 % self.pn;
        WittElem { coords }
    }

    fn elem_t(&self) -> WittElem {
        let mut coords = vec![0; self.f];
        if self.f > 1 {
            coords[1] = 1;
        }
        WittElem { coords }
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int_u(&self, x: u64) -> WittElem {
        let mut coords = vec![0; self.f];
        coords[0] = x % self.pn;
        WittElem { coords }
    }

    pub fn from_int(&self, x: i64) -> WittElem {
        let r = x.rem_euclid(self.pn as i64) as u64;
        self.from_int_u(r)
    }

    /// Canonicalize raw coordinates into an element.
    pub fn elem_from_coords(&self, coords: Vec<u64>) -> WittElem {
        assert_eq!(coords.len(), self.f, "coordinate vector must have length f");
        WittElem {
            coords: coords.into_iter().map(|c| c % self.pn).collect(),
        }
    }

    pub fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.pn {
                    s - self.pn
                } else {
                    s
                }
            })
            .collect();
        WittElem { coords }
    }

    pub fn neg(&self, a: &WittElem) -> WittElem {
        let coords = a
            .coords
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.pn - x })
            .collect();
        WittElem { coords }
    }

    pub fn sub(&self, a: &WittElem, b: &WittElem) -> WittElem {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: u64, a: &WittElem) -> WittElem {
        let c = c % self.pn;
        let coords = a.coords.iter().map(|&x| mulmod(c, x, self.pn)).collect();
        WittElem { coords }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let f = self.f;
        let mut conv = vec![0u64; 2 * f - 1];
        for i in 0..f {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..f {
                conv[i + j] = (conv[i + j] + mulmod(a.coords[i], b.coords[j], self.pn)) % self.pn;
            }
        }
        let mut coords = vec![0u64; f];
        coords[..f].copy_from_slice(&conv[..f]);
        for k in f..(2 * f - 1) {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            for j in 0..f {
                coords[j] = (coords[j] + mulmod(c, self.red[k - f][j], self.pn)) % self.pn;
            }
        }
        WittElem { coords }
    }

    pub fn pow(&self, a: &WittElem, mut e: u64) -> WittElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &WittElem) -> bool {
        a.coords.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self, a: &WittElem) -> bool {
        a.coords.iter().any(|&c| c % self.p != 0)
    }

    /// p-adic valuation: minimum coordinate valuation; `None` for zero.
    pub fn valuation(&self, a: &WittElem) -> Option<u32> {
        let mut best: Option<u32> = None;
        for &c in &a.coords {
            if c == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut x = c;
            while x % self.p == 0 {
                x /= self.p;
                v += 1;
            }
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best
    }

    /// Inverse by solving the multiplication matrix against 1; `None` for
    /// non-units.
    #[allow(clippy::needless_range_loop)]
    pub fn inv(&self, a: &WittElem) -> Option<WittElem> {
        if !self.is_unit(a) {
            return None;
        }
        let f = self.f;
        // Columns of the multiplication-by-a matrix are a * t^j.
        let mut cols = Vec::with_capacity(f);
        let mut cur = a.clone();
        for _ in 0..f {
            cols.push(cur.clone());
            cur = self.mul(&cur, &self.elem_t());
        }
        // Augmented system [M | e0], Gaussian elimination with unit pivots.
        let mut m = vec![vec![0u64; f + 1]; f];
        for r in 0..f {
            for c in 0..f {
                m[r][c] = cols[c].coords[r];
            }
        }
        m[0][f] = 1;
        for col in 0..f {
            let pivot = (col..f).find(|&r| !m[r][col].is_multiple_of(self.p))?;
            m.swap(col, pivot);
            let inv = inv_mod(m[col][col], self.pn).unwrap();
            for c in 0..=f {
                m[col][c] = mulmod(m[col][c], inv, self.pn);
            }
            for r in 0..f {
                if r != col && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..=f {
                        let sub = mulmod(factor, m[col][c], self.pn);
                        m[r][c] = (m[r][c] + self.pn - sub) % self.pn;
                    }
                }
            }
        }
        let coords = (0..f).map(|r| m[r][f]).collect();
        Some(WittElem { coords })
    }

    // -- residue field and special maps --------------------------------------

    /// Reduction mod p as coordinates over `F_p`.
    pub fn residue(&self, a: &WittElem) -> Vec<u64> {
        a.coords.iter().map(|&c| c % self.p).collect()
    }

    /// Teichmueller lift: the unique `x` with `x^q = x` reducing to the given
    /// residue-field element.  Iterating `x -> x^q` gains one p-adic digit per
    /// round.
    pub fn teichmuller(&self, residue: &[u64]) -> WittElem {
        assert!(residue.len() <= self.f, "residue coordinates exceed f");
        let mut coords = vec![0u64; self.f];
        for (i, &c) in residue.iter().enumerate() {
            coords[i] = c % self.p;
        }
        let mut x = WittElem { coords };
        for _ in 0..=self.precision {
            let next = self.pow(&x, self.q);
            if next == x {
                break;
            }
            x = next;
        }
        x
    }

    /// The Witt-vector Frobenius (lifts the p-power map of the residue field).
    pub fn frobenius(&self, a: &WittElem) -> WittElem {
        self.apply_table(&self.frob_pows, a)
    }

    /// Inverse Frobenius (`frobenius` applied f-1 times).
    pub fn frobenius_inv(&self, a: &WittElem) -> WittElem {
        self.apply_table(&self.frob_inv_pows, a)
    }

    /// Verschiebung `V = p * F^{-1}`, so that `FV = VF = p`.
    pub fn verschiebung(&self, a: &WittElem) -> WittElem {
        self.scalar_mul(self.p, &self.frobenius_inv(a))
    }

    // -- Witt coordinate codec ------------------------------------------------

    /// Decompose `x = sum_{n<N} V^n [a_n]` and return the residue coordinates
    /// `a_n`.  Peels the Teichmueller lift of the residue and applies the
    /// inverse of Verschiebung (`y -> F(y/p)`).
    pub fn to_witt_coords(&self, x: &WittElem) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.precision as usize);
        let mut cur = x.clone();
        for _ in 0..self.precision {
            let a = self.residue(&cur);
            let teich = self.teichmuller(&a);
            let diff = self.sub(&cur, &teich);
            let coords: Vec<u64> = diff
                .coords
                .iter()
                .map(|&c| {
                    debug_assert_eq!(c % self.p, 0, "difference must be divisible by p");
                    c / self.p
                })
                .collect();
            cur = self.frobenius(&WittElem { coords });
            out.push(a);
        }
        out
    }

    /// Rebuild `sum V^n [a_n]` from residue coordinates.
    pub fn from_witt_coords(&self, coords: &[Vec<u64>]) -> WittElem {
        let mut acc = self.zero();
        for a in coords.iter().rev() {
            acc = self.verschiebung(&acc);
            acc = self.add(&acc, &self.teichmuller(a));
        }
        acc
    }

    pub fn format(&self, a: &WittElem) -> String {
        if self.f == 1 {
            return a.coords[0].to_string();
        }
        let terms: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    // -- factorial bookkeeping -------------------------------------------------

    /// Unit part of `n!` mod `p^N` (the factorial with all powers of p
    /// stripped), via the prime-power Wilson recursion
    /// `u(n) = sign^{n div p^N} * prod_{k <= n mod p^N, p∤k} k * u(n div p)`.
    pub fn factorial_unit(&self, n: u64) -> u64 {
        // Product over a full reduced residue system mod p^N is -1, except
        // +1 for p = 2, N >= 3.
        let sign_is_minus = !(self.p == 2 && self.precision >= 3);
        let mut acc: u64 = 1 % self.pn;
        let mut m = n;
        while m > 0 {
            let periods = m / self.pn;
            if sign_is_minus && periods % 2 == 1 {
                acc = self.pn - acc;
            }
            let r = m % self.pn;
            for k in 1..=r {
                if k % self.p != 0 {
                    acc = mulmod(acc, k, self.pn);
                }
            }
            m /= self.p;
        }
        acc
    }

    /// `j_hi! / j_lo!` as an exact scalar (requires `j_hi >= j_lo`).
    pub fn factorial_ratio(&self, j_hi: u64, j_lo: u64) -> ValScalar {
        assert!(j_hi >= j_lo, "factorial_ratio requires j_hi >= j_lo");
        let v = legendre_valuation(self.p, j_hi) - legendre_valuation(self.p, j_lo);
        let u_hi = self.factorial_unit(j_hi);
        let u_lo_inv = inv_mod(self.factorial_unit(j_lo), self.pn).unwrap();
        ValScalar::Finite {
            v,
            unit: mulmod(u_hi, u_lo_inv, self.pn),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample(ring: &WittRing, rng: &mut ChaCha8Rng) -> WittElem {
        let coords = (0..ring.f)
            .map(|_| rng.gen_range(0..ring.p_pow_n()))
            .collect();
        ring.elem_from_coords(coords)
    }

    #[test]
    fn teichmuller_matches_brute_force_over_z125() {
        // Oracle: the unique x in Z/125 with x = 2 mod 5 and x^5 = x.
        let mut expected = None;
        for x in 0u64..125 {
            if x % 5 == 2 && x.pow(5) % 125 == x {
                assert!(expected.is_none(), "fixed point must be unique");
                expected = Some(x);
            }
        }
        let ring = WittRing::new(5, 3, 1).unwrap();
        let t = ring.teichmuller(&[2]);
        assert_eq!(t.coords()[0], expected.unwrap());
        assert_eq!(t.coords()[0], 57);
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        for f in [1usize, 2] {
            let ring = WittRing::new(3, 5, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..50 {
                let a: Vec<u64> = (0..f).map(|_| rng.gen_range(0..3)).collect();
                let b: Vec<u64> = (0..f).map(|_| rng.gen_range(0..3)).collect();
                let ta = ring.teichmuller(&a);
                let tb = ring.teichmuller(&b);
                let prod = ring.mul(&ta, &tb);
                let ab = ring.residue(&prod);
                assert_eq!(prod, ring.teichmuller(&ab));
            }
        }
    }

    #[test]
    fn teichmuller_is_fixed_by_q_power() {
        let ring = WittRing::new(3, 4, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let t = ring.teichmuller(&[a, b]);
                assert_eq!(ring.pow(&t, 9), t);
                assert_eq!(ring.residue(&t), vec![a, b]);
            }
        }
    }

    #[test]
    fn default_moduli_are_the_expected_ones() {
        assert_eq!(WittRing::default_modulus(3, 2).unwrap(), vec![1, 0]); // t^2 + 1
        assert_eq!(WittRing::default_modulus(5, 2).unwrap(), vec![2, 0]); // t^2 + 2
        assert_eq!(WittRing::default_modulus(7, 1).unwrap(), vec![0]); // t
    }

    #[test]
    fn frobenius_reduces_to_p_power_map() {
        for (p, f) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2)] {
            let ring = WittRing::new(p, 4, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..40 {
                let x = sample(&ring, &mut rng);
                let frob = ring.frobenius(&x);
                let p_power = ring.pow(&x, p);
                assert_eq!(ring.residue(&frob), ring.residue(&p_power));
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism_of_order_f() {
        let ring = WittRing::new(5, 4, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let a = sample(&ring, &mut rng);
            let b = sample(&ring, &mut rng);
            assert_eq!(
                ring.frobenius(&ring.add(&a, &b)),
                ring.add(&ring.frobenius(&a), &ring.frobenius(&b))
            );
            assert_eq!(
                ring.frobenius(&ring.mul(&a, &b)),
                ring.mul(&ring.frobenius(&a), &ring.frobenius(&b))
            );
            let mut x = a.clone();
            for _ in 0..3 {
                x = ring.frobenius(&x);
            }
            assert_eq!(x, a, "F^f fixes every element");
            assert_eq!(ring.frobenius(&ring.frobenius_inv(&a)), a);
        }
        // Scalars are fixed by Frobenius.
        assert_eq!(ring.frobenius(&ring.from_int(17)), ring.from_int(17));
    }

    #[test]
    fn fv_and_vf_are_multiplication_by_p() {
        for f in [1usize, 2, 3] {
            let ring = WittRing::new(3, 5, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..30 {
                let x = sample(&ring, &mut rng);
                let px = ring.scalar_mul(3, &x);
                assert_eq!(ring.frobenius(&ring.verschiebung(&x)), px);
                assert_eq!(ring.verschiebung(&ring.frobenius(&x)), px);
            }
        }
    }

    #[test]
    fn verschiebung_for_trivial_residue_degree_is_times_p() {
        let ring = WittRing::new(7, 3, 1).unwrap();
        let x = ring.from_int(25);
        assert_eq!(ring.verschiebung(&x), ring.scalar_mul(7, &x));
    }

    #[test]
    fn witt_coords_roundtrip() {
        for (p, n, f) in [
            (3u64, 2u32, 1usize),
            (3, 5, 2),
            (5, 4, 1),
            (5, 3, 2),
            (2, 6, 1),
        ] {
            let ring = WittRing::new(p, n, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..40 {
                let x = sample(&ring, &mut rng);
                let coords = ring.to_witt_coords(&x);
                assert_eq!(coords.len(), n as usize);
                assert_eq!(ring.from_witt_coords(&coords), x);
            }
        }
    }

    #[test]
    fn three_is_v_of_one_in_w2_f3() {
        let ring = WittRing::new(3, 2, 1).unwrap();
        let coords = ring.to_witt_coords(&ring.from_int(3));
        assert_eq!(coords, vec![vec![0], vec![1]]);
    }

    #[test]
    fn legendre_valuation_matches_direct_factorization() {
        // v_3(9!) = 4 and v_5(26!) = 6, plus a brute-force sweep.
        assert_eq!(legendre_valuation(3, 9), 4);
        assert_eq!(legendre_valuation(5, 26), 6);
        for p in [2u64, 3, 5, 7] {
            for j in 0..60u64 {
                let mut v = 0;
                for k in 1..=j {
                    let mut x = k;
                    while x % p == 0 {
                        x /= p;
                        v += 1;
                    }
                }
                assert_eq!(legendre_valuation(p, j), v, "p = {p}, j = {j}");
            }
        }
    }

    #[test]
    fn factorial_unit_matches_naive_product() {
        for (p, n) in [(3u64, 4u32), (5, 3), (2, 4), (7, 2)] {
            let ring = WittRing::new(p, n, 1).unwrap();
            let pn = ring.p_pow_n();
            let mut acc: u64 = 1;
            for k in 1..=300u64 {
                let mut x = k;
                while x % p == 0 {
                    x /= p;
                }
                acc = (acc as u128 * x as u128 % pn as u128) as u64;
                assert_eq!(ring.factorial_unit(k), acc, "p = {p}, N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn factorial_ratio_9_over_3_at_p3() {
        // 9!/3! = 60480 = 3^3 * 2240.
        let ring = WittRing::new(3, 4, 1).unwrap();
        let r = ring.factorial_ratio(9, 3);
        assert_eq!(
            r,
            ValScalar::Finite {
                v: 3,
                unit: 2240 % 81
            }
        );
    }

    #[test]
    fn factorial_ratio_matches_stripped_range_product() {
        let ring = WittRing::new(3, 5, 1).unwrap();
        let pn = ring.p_pow_n();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let j_lo = rng.gen_range(0..400u64);
            let j_hi = j_lo + rng.gen_range(0..400u64);
            let mut v = 0u64;
            let mut unit: u64 = 1;
            for k in (j_lo + 1)..=j_hi {
                let mut x = k;
                while x % 3 == 0 {
                    x /= 3;
                    v += 1;
                }
                unit = (unit as u128 * x as u128 % pn as u128) as u64;
            }
            let got = ring.factorial_ratio(j_hi, j_lo);
            if j_hi == j_lo {
                assert_eq!(got, ValScalar::Finite { v: 0, unit: 1 });
            } else {
                assert_eq!(got, ValScalar::Finite { v, unit });
            }
        }
    }

    #[test]
    fn factorial_ratio_valuation_lower_bound() {
        // v(j'!/j!) >= j whenever j' >= p*j, exhaustively for j <= 200.
        for p in [3u64, 5] {
            for j in 0..=200u64 {
                let v = legendre_valuation(p, p * j) - legendre_valuation(p, j);
                assert!(v >= j, "p = {p}, j = {j}: v = {v}");
                assert_eq!(v, j, "the bound is exact at j' = p*j");
            }
        }
    }

    #[test]
    fn val_scalar_ops() {
        let ring = WittRing::new(3, 4, 1).unwrap();
        let s = ValScalar::from_int(&ring, 18);
        assert_eq!(s, ValScalar::Finite { v: 2, unit: 2 });
        assert_eq!(s.to_residue(&ring), 18);
        let t = ValScalar::from_int(&ring, 6);
        assert_eq!(s.mul(&ring, &t), ValScalar::Finite { v: 3, unit: 4 });
        assert_eq!(
            s.div_exact(&ring, &t).unwrap(),
            ValScalar::Finite { v: 1, unit: 1 }
        );
        assert!(t.div_exact(&ring, &s).is_err());
        assert!(s.shift(-3).is_err());
        assert_eq!(s.shift(-2).unwrap().to_residue(&ring), 2);
        // Valuations at or above N collapse to zero residues.
        assert_eq!(ValScalar::Finite { v: 4, unit: 1 }.to_residue(&ring), 0);
        assert_eq!(ValScalar::from_int(&ring, 0), ValScalar::Zero);
    }

    #[test]
    fn ring_axioms_on_random_elements() {
        let ring = WittRing::new(3, 4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let a = sample(&ring, &mut rng);
            let b = sample(&ring, &mut rng);
            let c = sample(&ring, &mut rng);
            assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
            assert_eq!(
                ring.mul(&ring.mul(&a, &b), &c),
                ring.mul(&a, &ring.mul(&b, &c))
            );
            assert_eq!(
                ring.mul(&a, &ring.add(&b, &c)),
                ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            );
            assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
            assert_eq!(ring.mul(&a, &ring.one()), a);
        }
    }

    #[test]
    fn inverse_of_units() {
        for f in [1usize, 2, 3] {
            let ring = WittRing::new(5, 3, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(37);
            let mut found = 0;
            while found < 25 {
                let a = sample(&ring, &mut rng);
                if !ring.is_unit(&a) {
                    assert!(ring.inv(&a).is_none());
                    continue;
                }
                found += 1;
                let inv = ring.inv(&a).unwrap();
                assert_eq!(ring.mul(&a, &inv), ring.one());
            }
        }
    }

    #[test]
    fn valuation_reads_p_power() {
        let ring = WittRing::new(3, 5, 2).unwrap();
        let u = ring.add(&ring.one(), &ring.elem_from_coords(vec![0, 1]));
        assert_eq!(ring.valuation(&u), Some(0));
        let x = ring.scalar_mul(27, &u);
        assert_eq!(ring.valuation(&x), Some(3));
        assert_eq!(ring.valuation(&ring.zero()), None);
        assert!(ring.is_unit(&u));
        assert!(!ring.is_unit(&x));
    }

    #[test]
    fn precision_bounds_are_enforced() {
        assert!(WittRing::new(3, 0, 1).is_err());
        assert!(WittRing::new(3, 100, 1).is_err());
        assert!(WittRing::new(4, 3, 1).is_err());
        assert!(max_precision(3) >= 39);
        assert!(WittRing::new(3, 39, 1).is_ok());
    }
}
