//! The nice error basis `E_n = {X_a Z_b}` on `(C^q)^{⊗n}`.
//!
//! `X_a|x⟩ = |x+a⟩` and `Z_b|x⟩ = ζ_p^{Tr(b·x)}|x⟩`. Basis states of the
//! n-fold tensor product are indexed big-endian in the canonical element
//! index, the first factor being most significant.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{CMatrix, CycloNumber};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqElem};

/// Default cap on `q^{2n}` for enumeration and on dense operator entries.
pub const DEFAULT_BUDGET: u64 = 4096;

/// Symplectic label `(a|b)` of the operator `X_a Z_b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ErrorLabel {
    a: Vec<FqElem>,
    b: Vec<FqElem>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Weights {
    pub swt: u32,
    pub wt_x: u32,
    pub wt_z: u32,
}

impl ErrorLabel {
    pub fn new(a: Vec<FqElem>, b: Vec<FqElem>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidLabel(format!(
                "X part has length {}, Z part has length {}",
                a.len(),
                b.len()
            )));
        }
        Ok(ErrorLabel { a, b })
    }

    /// Builds a label from canonical indices, validating them against `spec`.
    pub fn from_indices(spec: &FieldSpec, a: &[u32], b: &[u32]) -> Result<Self> {
        let conv = |v: &[u32]| v.iter().map(|&i| spec.element(i)).collect::<Result<Vec<_>>>();
        Self::new(conv(a)?, conv(b)?)
    }

    pub fn identity(n: usize) -> Self {
        ErrorLabel {
            a: vec![FqElem::ZERO; n],
            b: vec![FqElem::ZERO; n],
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[FqElem] {
        &self.a
    }

    pub fn b(&self) -> &[FqElem] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().chain(&self.b).all(|e| e.is_zero())
    }

    pub fn swt(&self) -> u32 {
        self.a
            .iter()
            .zip(&self.b)
            .filter(|(x, z)| !x.is_zero() || !z.is_zero())
            .count() as u32
    }

    pub fn wt_x(&self) -> u32 {
        self.a.iter().filter(|x| !x.is_zero()).count() as u32
    }

    pub fn wt_z(&self) -> u32 {
        self.b.iter().filter(|z| !z.is_zero()).count() as u32
    }

    pub fn weights(&self) -> Weights {
        Weights {
            swt: self.swt(),
            wt_x: self.wt_x(),
            wt_z: self.wt_z(),
        }
    }

    /// `J_{λμ} = #{i : (a_i, b_i) = (a_λ, a_μ)}`.
    pub fn index_matrix(&self, q: u32) -> IndexMatrix {
        let mut counts = vec![0u32; (q * q) as usize];
        for (x, z) in self.a.iter().zip(&self.b) {
            counts[(x.index() * q + z.index()) as usize] += 1;
        }
        IndexMatrix { q, counts }
    }

    /// Label of the product `X_a Z_b · X_a' Z_b'` (up to phase).
    pub fn add(&self, other: &Self, spec: &FieldSpec) -> Self {
        let sum = |u: &[FqElem], v: &[FqElem]| u.iter().zip(v).map(|(&x, &y)| spec.add(x, y)).collect();
        ErrorLabel {
            a: sum(&self.a, &other.a),
            b: sum(&self.b, &other.b),
        }
    }

    /// `Tr(a·b' − a'·b)` as a residue mod p; the operators commute iff it is 0.
    pub fn symplectic(&self, other: &Self, spec: &FieldSpec) -> u32 {
        let form = spec.sub(spec.dot(&self.a, &other.b), spec.dot(&other.a, &self.b));
        spec.trace(form)
    }

    /// Exponent `k` with `(X_a Z_b)(X_a' Z_b') = ζ_p^k · X_{a+a'} Z_{b+b'}`,
    /// namely `k = Tr(b·a')`.
    pub fn product_phase(&self, other: &Self, spec: &FieldSpec) -> u32 {
        spec.trace(spec.dot(&self.b, &other.a))
    }

    /// Sparse form of the operator: basis state `x` maps to
    /// `ζ^{phase[x]}·|perm[x]⟩`.
    pub fn monomial(&self, spec: &FieldSpec) -> MonomialOperator {
        let q = spec.q() as usize;
        let n = self.n();
        let dim = q.pow(n as u32);
        let mut perm = vec![0usize; dim];
        let mut phase = vec![0u32; dim];
        let mut digits = vec![0usize; n];
        for x in 0..dim {
            let mut r = x;
            for i in (0..n).rev() {
                digits[i] = r % q;
                r /= q;
            }
            let mut target = 0;
            let mut ph = 0;
            for (i, &d) in digits.iter().enumerate() {
                let xi = FqElem::from_raw(d as u32);
                ph += spec.trace(spec.mul(self.b[i], xi));
                target = target * q + spec.add(xi, self.a[i]).index() as usize;
            }
            perm[x] = target;
            phase[x] = ph % spec.p();
        }
        MonomialOperator {
            prime: spec.p(),
            perm,
            phase,
        }
    }

    /// Dense `q^n × q^n` matrix of `X_a Z_b`, built as a Kronecker product.
    pub fn operator_matrix(&self, spec: &FieldSpec, budget: u64) -> Result<CMatrix> {
        let needed = (spec.q() as u64).saturating_pow(2 * self.n() as u32);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let p = spec.p();
        let mut acc = CMatrix::identity(p, 1);
        for i in 0..self.n() {
            let (a, b) = (self.a[i], self.b[i]);
            let single = CMatrix::from_fn(p, spec.q() as usize, spec.q() as usize, |row, col| {
                let x = FqElem::from_raw(col as u32);
                if spec.add(x, a).index() as usize == row {
                    CycloNumber::zeta_pow(p, spec.trace(spec.mul(b, x)))
                } else {
                    CycloNumber::zero(p)
                }
            });
            acc = acc.kron(&single)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ErrorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[FqElem], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", e.index())?;
            }
            Ok(())
        };
        join(&self.a, f)?;
        f.write_str(" | ")?;
        join(&self.b, f)
    }
}

/// A monomial unitary: `|x⟩ ↦ ζ^{phase[x]}|perm[x]⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    pub prime: u32,
    pub perm: Vec<usize>,
    pub phase: Vec<u32>,
}

impl MonomialOperator {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(self.prime, n, n);
        for x in 0..n {
            m.set(self.perm[x], x, CycloNumber::zeta_pow(self.prime, self.phase[x]));
        }
        m
    }
}

/// The `q × q` table `J` of an error; its entries sum to `n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexMatrix {
    q: u32,
    counts: Vec<u32>,
}

impl IndexMatrix {
    pub fn new(q: u32, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != (q * q) as usize {
            return Err(Error::ShapeMismatch(format!(
                "index matrix for q = {q} needs {} entries",
                q * q
            )));
        }
        Ok(IndexMatrix { q, counts })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn get(&self, lambda: u32, mu: u32) -> u32 {
        self.counts[(lambda * self.q + mu) as usize]
    }

    /// Row-major counts, matching the variable order `M_0_0, M_0_1, …`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn wt(&self) -> u32 {
        self.n() - self.counts[0]
    }
}

/// All labels of `E_n`, in order of the big-endian mixed-radix counter over
/// `(a_1 … a_n, b_1 … b_n)`.
#[derive(Clone, Debug)]
pub struct ErrorSpace<'a> {
    spec: &'a FieldSpec,
    n: usize,
}

impl<'a> ErrorSpace<'a> {
    pub fn new(spec: &'a FieldSpec, n: usize, budget: u64) -> Result<Self> {
        let needed = (spec.q() as u64).saturating_pow(2 * n as u32);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(ErrorSpace { spec, n })
    }

    pub fn len(&self) -> u64 {
        (self.spec.q() as u64).pow(2 * self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, mut index: u64) -> ErrorLabel {
        let q = self.spec.q() as u64;
        let mut digits = vec![FqElem::ZERO; 2 * self.n];
        for d in digits.iter_mut().rev() {
            *d = FqElem::from_raw((index % q) as u32);
            index /= q;
        }
        let b = digits.split_off(self.n);
        ErrorLabel { a: digits, b }
    }

    pub fn iter(&self) -> impl Iterator<Item = ErrorLabel> + '_ {
        (0..self.len()).map(move |i| self.label(i))
    }

    /// `E[i]`: errors of symplectic weight `i`.
    pub fn by_wt(&self, i: u32) -> impl Iterator<Item = ErrorLabel> + '_ {
        self.iter().filter(move |e| e.swt() == i)
    }

    /// `E[i, j]`: errors with `wt_X = i` and `wt_Z = j`.
    pub fn by_xz(&self, i: u32, j: u32) -> impl Iterator<Item = ErrorLabel> + '_ {
        self.iter().filter(move |e| e.wt_x() == i && e.wt_z() == j)
    }

    /// `E[J]`: errors with index matrix `J`.
    pub fn by_index<'b>(&'b self, j: &'b IndexMatrix) -> impl Iterator<Item = ErrorLabel> + 'b {
        let q = self.spec.q();
        self.iter().filter(move |e| &e.index_matrix(q) == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use proptest::prelude::*;

    fn label(spec: &FieldSpec, a: &[u32], b: &[u32]) -> ErrorLabel {
        ErrorLabel::from_indices(spec, a, b).unwrap()
    }

    #[test]
    fn weight_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let w = |a: &[u32], b: &[u32]| label(&f2, a, b).weights();
        assert_eq!(w(&[0, 0], &[0, 0]), Weights { swt: 0, wt_x: 0, wt_z: 0 });
        assert_eq!(w(&[1, 0], &[0, 1]), Weights { swt: 2, wt_x: 1, wt_z: 1 });
        assert_eq!(w(&[1, 1], &[1, 0]), Weights { swt: 2, wt_x: 2, wt_z: 1 });
    }

    #[test]
    fn index_matrix_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let j = ErrorLabel::identity(3).index_matrix(2);
        assert_eq!(j.counts(), &[3, 0, 0, 0]);
        let j = label(&f2, &[1, 1], &[0, 1]).index_matrix(2);
        assert_eq!((j.get(1, 0), j.get(1, 1), j.get(0, 0), j.get(0, 1)), (1, 1, 0, 0));
        assert_eq!(j.n(), 2);
    }

    #[test]
    fn single_qubit_operators() {
        let f2 = FieldSpec::new(2).unwrap();
        let x = label(&f2, &[1], &[0]).operator_matrix(&f2, DEFAULT_BUDGET).unwrap();
        let expect = CMatrix::from_fn(2, 2, 2, |i, j| CycloNumber::from_int(2, (i != j) as i64));
        assert_eq!(x, expect);
        let z = label(&f2, &[0], &[1]).operator_matrix(&f2, DEFAULT_BUDGET).unwrap();
        assert_eq!(z, CMatrix::diag(2, &[CycloNumber::one(2), CycloNumber::from_int(2, -1)]));
        let id = ErrorLabel::identity(2).operator_matrix(&f2, DEFAULT_BUDGET).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn monomial_matches_dense() {
        for q in [2, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            let n = if q == 4 { 1 } else { 2 };
            let space = ErrorSpace::new(&f, n, DEFAULT_BUDGET).unwrap();
            for e in space.iter() {
                let dense = e.operator_matrix(&f, DEFAULT_BUDGET).unwrap();
                assert_eq!(e.monomial(&f).to_matrix(), dense, "{e}");
            }
        }
    }

    #[test]
    fn orthogonality() {
        for (q, n) in [(2, 2), (3, 1), (4, 1)] {
            let f = FieldSpec::new(q).unwrap();
            let space = ErrorSpace::new(&f, n, DEFAULT_BUDGET).unwrap();
            let mats: Vec<CMatrix> = space
                .iter()
                .map(|e| e.operator_matrix(&f, DEFAULT_BUDGET).unwrap())
                .collect();
            let dim = (q as i64).pow(n as u32);
            for (i, m) in mats.iter().enumerate() {
                for (j, m2) in mats.iter().enumerate() {
                    let t = m.dagger().trace_of_product(m2).unwrap();
                    let want = if i == j { dim } else { 0 };
                    assert_eq!(t, CycloNumber::from_int(f.p(), want));
                }
            }
        }
    }

    #[test]
    fn closure_up_to_phase() {
        for q in [2, 3] {
            let f = FieldSpec::new(q).unwrap();
            let space = ErrorSpace::new(&f, 1, DEFAULT_BUDGET).unwrap();
            for e in space.iter() {
                for e2 in space.iter() {
                    let prod = e
                        .operator_matrix(&f, DEFAULT_BUDGET)
                        .unwrap()
                        .mul(&e2.operator_matrix(&f, DEFAULT_BUDGET).unwrap())
                        .unwrap();
                    let phase = CycloNumber::zeta_pow(f.p(), e.product_phase(&e2, &f));
                    let third = e.add(&e2, &f).operator_matrix(&f, DEFAULT_BUDGET).unwrap();
                    assert_eq!(prod, third.scale(&phase));
                }
            }
        }
    }

    #[test]
    fn commutation_matches_symplectic_form() {
        let f = FieldSpec::new(3).unwrap();
        let space = ErrorSpace::new(&f, 1, DEFAULT_BUDGET).unwrap();
        for e in space.iter() {
            for e2 in space.iter() {
                let m = e.operator_matrix(&f, DEFAULT_BUDGET).unwrap();
                let m2 = e2.operator_matrix(&f, DEFAULT_BUDGET).unwrap();
                let commute = m.mul(&m2).unwrap() == m2.mul(&m).unwrap();
                assert_eq!(commute, e.symplectic(&e2, &f) == 0);
            }
        }
    }

    #[test]
    fn enumeration_counts_and_partitions() {
        let f2 = FieldSpec::new(2).unwrap();
        let space = ErrorSpace::new(&f2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(space.iter().count(), 16);
        assert_eq!(space.by_wt(0).count(), 1);
        assert_eq!(space.by_wt(1).count(), 6);

        for (q, n) in [(2, 3), (3, 2), (4, 2)] {
            let f = FieldSpec::new(q).unwrap();
            let space = ErrorSpace::new(&f, n, DEFAULT_BUDGET).unwrap();
            let total = space.len() as usize;
            let by_wt: usize = (0..=n as u32).map(|i| space.by_wt(i).count()).sum();
            let by_xz: usize = (0..=n as u32)
                .flat_map(|i| (0..=n as u32).map(move |j| (i, j)))
                .map(|(i, j)| space.by_xz(i, j).count())
                .sum();
            let mut classes = BTreeMap::new();
            for e in space.iter() {
                *classes.entry(e.index_matrix(q)).or_insert(0usize) += 1;
            }
            let by_index: usize = classes.keys().map(|j| space.by_index(j).count()).sum();
            assert_eq!((by_wt, by_xz, by_index), (total, total, total));
            assert!(classes.keys().all(|j| j.n() == n as u32));
            // |E[1]| = n(q²−1)
            assert_eq!(space.by_wt(1).count(), n * (q as usize * q as usize - 1));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(
            ErrorSpace::new(&f2, 7, DEFAULT_BUDGET).err(),
            Some(Error::BudgetExceeded { needed: 16384, budget: 4096 })
        );
        assert!(ErrorLabel::identity(7).operator_matrix(&f2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn mismatched_lengths_rejected() {
        assert!(ErrorLabel::new(vec![FqElem::ZERO], vec![]).is_err());
    }

    proptest! {
        #[test]
        fn weights_agree_with_index_matrix(
            q in prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(9)],
            raw in proptest::collection::vec((0u32..9, 0u32..9), 1..8),
        ) {
            let f = FieldSpec::new(q).unwrap();
            let a: Vec<u32> = raw.iter().map(|&(x, _)| x % q).collect();
            let b: Vec<u32> = raw.iter().map(|&(_, z)| z % q).collect();
            let e = ErrorLabel::from_indices(&f, &a, &b).unwrap();
            let j = e.index_matrix(q);
            let mut wx = 0;
            let mut wz = 0;
            for l in 0..q {
                for m in 0..q {
                    if l != 0 { wx += j.get(l, m); }
                    if m != 0 { wz += j.get(l, m); }
                }
            }
            prop_assert_eq!(wx, e.wt_x());
            prop_assert_eq!(wz, e.wt_z());
            prop_assert_eq!(j.wt(), e.swt());
            prop_assert_eq!(j.n() as usize, a.len());
        }
    }
}
