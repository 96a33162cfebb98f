//! Dense linear algebra over `Z/p^N`.
//!
//! `Z/p^N` is local, so Smith normal form only needs valuation pivoting:
//! the pivot is the first entry of minimal p-adic valuation in row-major
//! order, which makes the reduction deterministic.  Diagonal entries are
//! normalized to exact powers `p^e` with non-decreasing exponents; an
//! exponent equal to N means the entry vanished at working precision.
//!
//! `homology_at` computes `ker(d_out) / im(d_in)` for a complex of free
//! modules whose matrices are reductions of an exact integral complex: the
//! kernel basis is read off from the SNF of `d_out` (columns whose diagonal
//! exponent reaches N), the image is re-expressed in that basis, and a second
//! SNF yields the cyclic factors.  Factors that reach exponent N are flagged
//! as saturated so the caller can escalate precision.

use crate::witt::inv_mod;
use crate::{Error, Result};

/// Dense matrix over `Z/p^N`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PModMatrix {
    pub p: u64,
    pub precision: u32,
    pub pn: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl PModMatrix {
    pub fn zero(p: u64, precision: u32, rows: usize, cols: usize) -> PModMatrix {
        let pn = p.pow(precision);
        PModMatrix {
            p,
            precision,
            pn,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, precision: u32, n: usize) -> PModMatrix {
        let mut m = Self::zero(p, precision, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, precision: u32, rows: Vec<Vec<u64>>) -> PModMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(p, precision, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = x % self.pn;
    }

    /// Accumulate into an entry (matrix assembly adds contributions).
    pub fn add_to(&mut self, r: usize, c: usize, x: u64) {
        let cur = self.get(r, c);
        self.set(
            r,
            c,
            (cur as u128 + x as u128 % self.pn as u128) as u64 % self.pn,
        );
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.pn as u128) as u64
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn matmul(&self, other: &PModMatrix) -> PModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.pn, other.pn, "modulus mismatch");
        let mut out = Self::zero(self.p, self.precision, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    let add = self.mul_mod(a, other.get(k, j));
                    out.set(i, j, (cur + add) % self.pn);
                }
            }
        }
        out
    }

    /// p-adic valuation of an entry, clipped at N for zero entries.
    pub fn entry_valuation(&self, r: usize, c: usize) -> u32 {
        let x = self.get(r, c);
        if x == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(self.p) {
            y /= self.p;
            v += 1;
        }
        v
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: u64) {
        if q == 0 {
            return;
        }
        for c in 0..self.cols {
            let add = self.mul_mod(q, self.get(b, c));
            let cur = self.get(a, c);
            self.set(a, c, (cur + add) % self.pn);
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: u64) {
        if q == 0 {
            return;
        }
        for r in 0..self.rows {
            let add = self.mul_mod(q, self.get(r, b));
            let cur = self.get(r, a);
            self.set(r, a, (cur + add) % self.pn);
        }
    }

    fn scale_row(&mut self, a: usize, u: u64) {
        for c in 0..self.cols {
            let x = self.mul_mod(self.get(a, c), u);
            self.set(a, c, x);
        }
    }
}

/// Smith normal form data: `left * m * right = diag(p^e)` with all four
/// transforms invertible over `Z/p^N`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Diagonal exponents, non-decreasing, clipped at N.
    pub diag: Vec<u32>,
    pub left: PModMatrix,
    pub left_inv: PModMatrix,
    pub right: PModMatrix,
    pub right_inv: PModMatrix,
}

/// Smith normal form over `Z/p^N` with deterministic minimal-valuation
/// pivoting (first minimal entry in row-major order).
pub fn snf(m: &PModMatrix) -> SnfResult {
    let p = m.p;
    let n = m.precision;
    let pn = m.pn;
    let mut a = m.clone();
    let mut left = PModMatrix::identity(p, n, m.rows);
    let mut left_inv = PModMatrix::identity(p, n, m.rows);
    let mut right = PModMatrix::identity(p, n, m.cols);
    let mut right_inv = PModMatrix::identity(p, n, m.cols);
    let neg = |x: u64| if x == 0 { 0 } else { pn - x };

    let steps = m.rows.min(m.cols);
    for k in 0..steps {
        // First minimal-valuation entry of the trailing submatrix.
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for r in k..m.rows {
            for c in k..m.cols {
                let v = a.entry_valuation(r, c);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let (v, pr, pc) = best.unwrap();
        if v >= n {
            break;
        }
        // Move pivot to (k, k).  Row swap is left-multiplication by a
        // transposition (self-inverse), same for columns on the right.
        a.swap_rows(k, pr);
        left.swap_rows(k, pr);
        left_inv.swap_cols(k, pr);
        a.swap_cols(k, pc);
        right.swap_cols(k, pc);
        right_inv.swap_rows(k, pc);

        // Normalize the pivot to exactly p^v.
        let pivot = a.get(k, k);
        let unit = pivot / p.pow(v);
        let unit_inv = inv_mod(unit, pn).expect("pivot unit is invertible");
        a.scale_row(k, unit_inv);
        left.scale_row(k, unit_inv);
        // Inverse operation: scale column k of left_inv by the unit.
        for r in 0..m.rows {
            let x = left_inv.mul_mod(left_inv.get(r, k), unit);
            left_inv.set(r, k, x);
        }

        let pv = p.pow(v);
        // Clear the rest of column k.  Every remaining entry has valuation
        // >= v, so the canonical representative divides exactly by p^v.
        for r in (k + 1)..m.rows {
            let x = a.get(r, k);
            if x == 0 {
                continue;
            }
            let q = x / pv;
            a.add_row_multiple(r, k, neg(q));
            left.add_row_multiple(r, k, neg(q));
            left_inv.add_col_multiple(k, r, q);
        }
        // Clear the rest of row k.
        for c in (k + 1)..m.cols {
            let x = a.get(k, c);
            if x == 0 {
                continue;
            }
            let q = x / pv;
            a.add_col_multiple(c, k, neg(q));
            right.add_col_multiple(c, k, neg(q));
            right_inv.add_row_multiple(k, c, q);
        }
    }

    let diag: Vec<u32> = (0..steps).map(|k| a.entry_valuation(k, k)).collect();
    debug_assert!(
        diag.windows(2).all(|w| w[0] <= w[1]),
        "exponents must be sorted"
    );
    SnfResult {
        diag,
        left,
        left_inv,
        right,
        right_inv,
    }
}

/// A finite abelian p-group at working precision: a multiset of cyclic
/// factors `Z/p^a` recorded by exponent, sorted descending.  `saturated`
/// means some factor reached the precision ceiling and may be understated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub factors: Vec<u32>,
    pub saturated: bool,
}

impl HomologyGroup {
    pub fn trivial() -> HomologyGroup {
        HomologyGroup {
            factors: Vec::new(),
            saturated: false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// log_p of the group order (sum of factor exponents).
    pub fn order_exponent(&self) -> u64 {
        self.factors.iter().map(|&a| a as u64).sum()
    }
}

/// `ker(d_out) / im(d_in)` for consecutive maps `A --d_in--> B --d_out--> C`
/// of free `Z/p^N`-modules coming from an integral complex.
pub fn homology_at(d_in: &PModMatrix, d_out: &PModMatrix) -> Result<HomologyGroup> {
    assert_eq!(d_in.rows, d_out.cols, "middle dimensions must agree");
    let n = d_out.precision;
    let composite = d_out.matmul(d_in);
    for r in 0..composite.rows {
        for c in 0..composite.cols {
            if composite.get(r, c) != 0 {
                return Err(Error::CompositionNonzero { row: r, col: c });
            }
        }
    }

    let out_snf = snf(d_out);
    // Kernel columns: diagonal exponent N (vanishing at precision) plus all
    // columns beyond the diagonal range.
    let dim_b = d_out.cols;
    let first_kernel = (0..out_snf.diag.len())
        .find(|&k| out_snf.diag[k] >= n)
        .unwrap_or(out_snf.diag.len());
    let kernel_rank = dim_b - first_kernel;

    // Express d_in in the SNF basis of B; rows first_kernel.. are the
    // coordinates on the kernel, earlier rows vanish for an exact integral
    // complex (they are killed by the composition check up to precision).
    let y = out_snf.right_inv.matmul(d_in);
    let mut z = PModMatrix::zero(d_out.p, n, kernel_rank, d_in.cols);
    for r in 0..kernel_rank {
        for c in 0..d_in.cols {
            z.set(r, c, y.get(first_kernel + r, c));
        }
    }

    let z_snf = snf(&z);
    let mut factors = Vec::new();
    let mut saturated = false;
    for k in 0..kernel_rank {
        let e = if k < z_snf.diag.len() {
            z_snf.diag[k]
        } else {
            n
        };
        if e == 0 {
            continue;
        }
        if e >= n {
            saturated = true;
        }
        factors.push(e.min(n));
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(HomologyGroup { factors, saturated })
}
