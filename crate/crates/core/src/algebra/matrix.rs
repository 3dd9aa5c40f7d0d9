//! Dense matrices over ℚ(ζ_p).

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::cyclo::{CycloNumber, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMatrix {
    prime: u32,
    rows: usize,
    cols: usize,
    entries: Vec<CycloNumber>,
}

impl CMatrix {
    pub fn new(prime: u32, rows: usize, cols: usize, entries: Vec<CycloNumber>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.prime() != prime) {
            return Err(Error::PrimeMismatch(prime, bad.prime()));
        }
        Ok(CMatrix {
            prime,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        prime: u32,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloNumber,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMatrix::new(prime, rows, cols, entries).expect("from_fn produced a consistent matrix")
    }

    /// Builds a matrix from rational entries given row by row.
    pub fn from_rationals(prime: u32, rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|x| CycloNumber::from_rational(prime, x.clone()))
            .collect();
        CMatrix::new(prime, r, c, entries)
    }

    pub fn zeros(prime: u32, rows: usize, cols: usize) -> Self {
        Self::from_fn(prime, rows, cols, |_, _| CycloNumber::zero(prime))
    }

    pub fn identity(prime: u32, n: usize) -> Self {
        Self::from_fn(prime, n, n, |i, j| {
            if i == j {
                CycloNumber::one(prime)
            } else {
                CycloNumber::zero(prime)
            }
        })
    }

    pub fn diag(prime: u32, d: &[CycloNumber]) -> Self {
        Self::from_fn(prime, d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                CycloNumber::zero(prime)
            }
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNumber) {
        assert_eq!(v.prime(), self.prime, "mismatched cyclotomic primes");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.prime, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose using `ζ ↦ ζ^{p-1}`.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.prime, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        Self::from_fn(self.prime, self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.prime, self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.prime, self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.prime, self.rows, other.cols);
        // Zero entries are skipped: most operators in this crate are monomial.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.prime, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<CycloNumber> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("trace of a non-square matrix".into()));
        }
        let mut t = CycloNumber::zero(self.prime);
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<CycloNumber> {
        if self.rows != other.cols || self.cols != other.rows {
            return Err(Error::ShapeMismatch("trace of product: incompatible shapes".into()));
        }
        let mut t = CycloNumber::zero(self.prime);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, i);
                if !b.is_zero() {
                    t += &(a * b);
                }
            }
        }
        Ok(t)
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        let (r2, c2) = (other.rows, other.cols);
        Ok(Self::from_fn(
            self.prime,
            self.rows * r2,
            self.cols * c2,
            |i, j| self.get(i / r2, j / c2) * other.get(i % r2, j % c2),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Row-reduces a working copy; returns the echelon form, pivot columns and
    /// the number of row swaps. Pivots are the first nonzero entry found
    /// scanning downward.
    fn echelon(&self) -> (Self, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                m.swap_rows(pr, r);
                swaps += 1;
            }
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let factor = f * &inv;
                for j in c..m.cols {
                    let delta = &factor * m.get(r, j);
                    let idx = i * m.cols + j;
                    m.entries[idx] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, swaps)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn determinant(&self) -> Result<CycloNumber> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let (m, pivots, swaps) = self.echelon();
        if pivots.len() < self.rows {
            return Ok(CycloNumber::zero(self.prime));
        }
        let mut det = CycloNumber::one(self.prime);
        for i in 0..m.rows {
            det = &det * m.get(i, i);
        }
        Ok(if swaps % 2 == 1 { -det } else { det })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(self.prime, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                CycloNumber::one(self.prime)
            } else {
                CycloNumber::zero(self.prime)
            }
        });
        for c in 0..n {
            let pr = (c..n)
                .find(|&i| !aug.get(i, c).is_zero())
                .ok_or(Error::Singular)?;
            aug.swap_rows(pr, c);
            let inv = aug.get(c, c).inverse()?;
            for j in 0..2 * n {
                let v = aug.get(c, j) * &inv;
                aug.set(c, j, v);
            }
            for i in 0..n {
                if i == c || aug.get(i, c).is_zero() {
                    continue;
                }
                let factor = aug.get(i, c).clone();
                for j in 0..2 * n {
                    let delta = &factor * aug.get(c, j);
                    let idx = i * aug.cols + j;
                    aug.entries[idx] -= &delta;
                }
            }
        }
        Ok(Self::from_fn(self.prime, n, n, |i, j| aug.get(i, j + n).clone()))
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
