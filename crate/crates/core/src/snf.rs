//! Smith normal form with unimodular transforms.
//!
//! Pivoting always takes the nonzero entry of least absolute value in the
//! active block, ties broken by lowest row and then lowest column, so the
//! output is a deterministic function of the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `u · a · v = s` with `u`, `v` unimodular and `s` diagonal in divisor-chain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub s: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// The full diagonal of `s`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    /// Checks the defining identity and the shape of `s`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.s {
            return false;
        }
        if self.u.mul(&self.u_inv) != IntMatrix::identity(a.rows())
            || self.v.mul(&self.v_inv) != IntMatrix::identity(a.cols())
        {
            return false;
        }
        let (m, n) = self.s.shape();
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.s[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        let r = self.rank();
        if diag[r..].iter().any(|d| !d.is_zero()) || diag.iter().any(|d| d.is_negative()) {
            return false;
        }
        diag[..r].windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

/// Elimination over a generic entry type, so machine integers can be tried first.
mod reducer {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    use super::SnfResult;
    use crate::matrix::IntMatrix;

    /// Ring operations the reducer needs. Fallible operations return `None` on overflow.
    pub(super) trait Entry: Clone + PartialEq + Sized {
        fn zero() -> Self;
        fn one() -> Self;
        fn from_big(x: &BigInt) -> Option<Self>;
        fn to_big(&self) -> BigInt;
        fn is_zero(&self) -> bool;
        fn is_negative(&self) -> bool;
        /// `|self| < |other|`.
        fn abs_lt(&self, other: &Self) -> bool;
        fn is_unit(&self) -> bool;
        fn neg(&self) -> Option<Self>;
        /// `self + k·x`.
        fn add_mul(&self, k: &Self, x: &Self) -> Option<Self>;
        fn div_floor(&self, d: &Self) -> Option<Self>;
        fn divides(&self, x: &Self) -> bool;
    }

    impl Entry for i64 {
        fn zero() -> Self {
            0
        }
        fn one() -> Self {
            1
        }
        fn from_big(x: &BigInt) -> Option<Self> {
            i64::try_from(x).ok()
        }
        fn to_big(&self) -> BigInt {
            BigInt::from(*self)
        }
        fn is_zero(&self) -> bool {
            *self == 0
        }
        fn is_negative(&self) -> bool {
            *self < 0
        }
        fn abs_lt(&self, other: &Self) -> bool {
            self.unsigned_abs() < other.unsigned_abs()
        }
        fn is_unit(&self) -> bool {
            self.unsigned_abs() == 1
        }
        fn neg(&self) -> Option<Self> {
            self.checked_neg()
        }
        fn add_mul(&self, k: &Self, x: &Self) -> Option<Self> {
            self.checked_add(k.checked_mul(*x)?)
        }
        fn div_floor(&self, d: &Self) -> Option<Self> {
            if *d == 0 || (*self == i64::MIN && *d == -1) {
                return None;
            }
            Some(Integer::div_floor(self, d))
        }
        fn divides(&self, x: &Self) -> bool {
            x.checked_rem(*self) == Some(0)
        }
    }

    impl Entry for BigInt {
        fn zero() -> Self {
            Zero::zero()
        }
        fn one() -> Self {
            BigInt::from(1)
        }
        fn from_big(x: &BigInt) -> Option<Self> {
            Some(x.clone())
        }
        fn to_big(&self) -> BigInt {
            self.clone()
        }
        fn is_zero(&self) -> bool {
            Zero::is_zero(self)
        }
        fn is_negative(&self) -> bool {
            Signed::is_negative(self)
        }
        fn abs_lt(&self, other: &Self) -> bool {
            self.magnitude() < other.magnitude()
        }
        fn is_unit(&self) -> bool {
            self.magnitude().bits() == 1
        }
        fn neg(&self) -> Option<Self> {
            Some(-self)
        }
        fn add_mul(&self, k: &Self, x: &Self) -> Option<Self> {
            Some(self + k * x)
        }
        fn div_floor(&self, d: &Self) -> Option<Self> {
            Some(Integer::div_floor(self, d))
        }
        fn divides(&self, x: &Self) -> bool {
            Zero::is_zero(&(x % self))
        }
    }

    struct Overflow;

    /// Row-major working matrix.
    #[derive(Clone)]
    struct Dense<T> {
        rows: usize,
        cols: usize,
        data: Vec<T>,
    }

    impl<T: Entry> Dense<T> {
        fn identity(n: usize) -> Self {
            let mut data = vec![T::zero(); n * n];
            for i in 0..n {
                data[i * n + i] = T::one();
            }
            Dense { rows: n, cols: n, data }
        }

        fn from_matrix(a: &IntMatrix) -> Option<Self> {
            let (rows, cols) = a.shape();
            let mut data = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                for j in 0..cols {
                    data.push(T::from_big(&a[(i, j)])?);
                }
            }
            Some(Dense { rows, cols, data })
        }

        fn to_matrix(&self) -> IntMatrix {
            IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).to_big())
        }

        fn at(&self, i: usize, j: usize) -> &T {
            &self.data[i * self.cols + j]
        }

        fn swap_rows(&mut self, a: usize, b: usize) {
            if a != b {
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            if a != b {
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }
        }

        fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
            for j in 0..self.cols {
                let x = self.at(src, j);
                if !x.is_zero() {
                    let v = self.at(dst, j).add_mul(k, x).ok_or(Overflow)?;
                    self.data[dst * self.cols + j] = v;
                }
            }
            Ok(())
        }

        fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
            for i in 0..self.rows {
                let x = self.at(i, src);
                if !x.is_zero() {
                    let v = self.at(i, dst).add_mul(k, x).ok_or(Overflow)?;
                    self.data[i * self.cols + dst] = v;
                }
            }
            Ok(())
        }

        fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
            for j in 0..self.cols {
                self.data[i * self.cols + j] = self.at(i, j).neg().ok_or(Overflow)?;
            }
            Ok(())
        }

        fn negate_col(&mut self, j: usize) -> Result<(), Overflow> {
            for i in 0..self.rows {
                self.data[i * self.cols + j] = self.at(i, j).neg().ok_or(Overflow)?;
            }
            Ok(())
        }
    }

    struct Reducer<T> {
        s: Dense<T>,
        u: Dense<T>,
        u_inv: Dense<T>,
        v: Dense<T>,
        v_inv: Dense<T>,
    }

    impl<T: Entry> Reducer<T> {
        fn new(s: Dense<T>) -> Self {
            let (m, n) = (s.rows, s.cols);
            Reducer {
                s,
                u: Dense::identity(m),
                u_inv: Dense::identity(m),
                v: Dense::identity(n),
                v_inv: Dense::identity(n),
            }
        }

        fn swap_rows(&mut self, a: usize, b: usize) {
            self.s.swap_rows(a, b);
            self.u.swap_rows(a, b);
            self.u_inv.swap_cols(a, b);
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            self.s.swap_cols(a, b);
            self.v.swap_cols(a, b);
            self.v_inv.swap_rows(a, b);
        }

        /// `row[dst] += k * row[src]` on `s`, tracked in `u` and `u⁻¹`.
        fn add_row(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
            let minus_k = k.neg().ok_or(Overflow)?;
            self.s.add_row_multiple(dst, src, k)?;
            self.u.add_row_multiple(dst, src, k)?;
            self.u_inv.add_col_multiple(src, dst, &minus_k)
        }

        /// `col[dst] += k * col[src]` on `s`, tracked in `v` and `v⁻¹`.
        fn add_col(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
            let minus_k = k.neg().ok_or(Overflow)?;
            self.s.add_col_multiple(dst, src, k)?;
            self.v.add_col_multiple(dst, src, k)?;
            self.v_inv.add_row_multiple(src, dst, &minus_k)
        }

        fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
            self.s.negate_row(i)?;
            self.u.negate_row(i)?;
            self.u_inv.negate_col(i)
        }

        fn pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.s.rows {
                for j in t..self.s.cols {
                    let x = self.s.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if x.is_unit() {
                        // Nothing is smaller, and later entries lose ties.
                        return Some((i, j));
                    }
                    if best.is_none_or(|(bi, bj)| x.abs_lt(self.s.at(bi, bj))) {
                        best = Some((i, j));
                    }
                }
            }
            best
        }

        /// Clears row and column `t` outside the pivot. Returns false if a
        /// nonzero remainder was left behind.
        fn clear_cross(&mut self, t: usize) -> Result<bool, Overflow> {
            let mut clean = true;
            for i in t + 1..self.s.rows {
                if self.s.at(i, t).is_zero() {
                    continue;
                }
                let q = self.s.at(i, t).div_floor(self.s.at(t, t)).ok_or(Overflow)?;
                self.add_row(i, t, &q.neg().ok_or(Overflow)?)?;
                if !self.s.at(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.s.cols {
                if self.s.at(t, j).is_zero() {
                    continue;
                }
                let q = self.s.at(t, j).div_floor(self.s.at(t, t)).ok_or(Overflow)?;
                self.add_col(j, t, &q.neg().ok_or(Overflow)?)?;
                if !self.s.at(t, j).is_zero() {
                    clean = false;
                }
            }
            Ok(clean)
        }

        fn first_non_multiple(&self, t: usize) -> Option<usize> {
            let p = self.s.at(t, t);
            (t + 1..self.s.rows).find(|&i| (t + 1..self.s.cols).any(|j| !p.divides(self.s.at(i, j))))
        }

        fn run(&mut self) -> Result<(), Overflow> {
            for t in 0..self.s.rows.min(self.s.cols) {
                loop {
                    let Some((pi, pj)) = self.pivot_in_block(t) else {
                        return Ok(());
                    };
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    if !self.clear_cross(t)? {
                        continue;
                    }
                    match self.first_non_multiple(t) {
                        Some(i) => self.add_row(t, i, &T::one())?,
                        None => break,
                    }
                }
                if self.s.at(t, t).is_negative() {
                    self.negate_row(t)?;
                }
            }
            Ok(())
        }

        fn finish(self) -> SnfResult {
            SnfResult {
                u: self.u.to_matrix(),
                u_inv: self.u_inv.to_matrix(),
                v: self.v.to_matrix(),
                v_inv: self.v_inv.to_matrix(),
                s: self.s.to_matrix(),
            }
        }
    }

    pub(super) fn reduce<T: Entry>(a: &IntMatrix) -> Option<SnfResult> {
        let mut r = Reducer::new(Dense::<T>::from_matrix(a)?);
        r.run().ok()?;
        Some(r.finish())
    }
}

use reducer::reduce;

/// Largest matrix whose result is re-verified in debug builds; the check is cubic.
const DEBUG_VERIFY_LIMIT: usize = 48;

/// Smith normal form of an arbitrary integer matrix.
///
/// Runs in checked machine integers and restarts in arbitrary precision on
/// overflow; both paths make identical pivot choices, so the result does not
/// depend on which one finished.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let out = reduce::<i64>(a).unwrap_or_else(|| reduce::<BigInt>(a).expect("arbitrary precision cannot overflow"));
    debug_assert!(a.rows().max(a.cols()) > DEBUG_VERIFY_LIMIT || out.verify(a), "SNF postcondition violated");
    out
}
