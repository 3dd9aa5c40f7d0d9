//! Weight, double-weight and complete-weight distributions of a stabilizer
//! code and their generating polynomials.
//!
//! Two independent paths compute the same [`EnumeratorSet`]:
//! [`distributions_oracle`] evaluates the trace formulas over every error
//! against the dense projector, and [`distributions_symplectic`] counts
//! labels of the stabilizer and of its symplectic dual over F_p.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{int, CycloNumber, MultiPoly};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::error_basis::{ErrorLabel, ErrorSpace, IndexMatrix};
use crate::field::{FieldSpec, FqElem};

/// All six distributions of a code. Every value is exact; `d` and `d_perp`
/// store only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorSet {
    pub prime: u32,
    pub q: u32,
    pub n: usize,
    pub b: Vec<CycloNumber>,
    pub b_perp: Vec<CycloNumber>,
    pub c: Vec<Vec<CycloNumber>>,
    pub c_perp: Vec<Vec<CycloNumber>>,
    pub d: BTreeMap<IndexMatrix, CycloNumber>,
    pub d_perp: BTreeMap<IndexMatrix, CycloNumber>,
}

/// Selects one of the six enumerators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    B,
    BPerp,
    C,
    CPerp,
    D,
    DPerp,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::B, Kind::BPerp, Kind::C, Kind::CPerp, Kind::D, Kind::DPerp];

    pub fn name(self) -> &'static str {
        match self {
            Kind::B => "B",
            Kind::BPerp => "Bperp",
            Kind::C => "C",
            Kind::CPerp => "Cperp",
            Kind::D => "D",
            Kind::DPerp => "Dperp",
        }
    }
}

impl EnumeratorSet {
    fn empty(prime: u32, q: u32, n: usize) -> Self {
        let zeros = vec![CycloNumber::zero(prime); n + 1];
        EnumeratorSet {
            prime,
            q,
            n,
            b: zeros.clone(),
            b_perp: zeros.clone(),
            c: vec![zeros.clone(); n + 1],
            c_perp: vec![zeros; n + 1],
            d: BTreeMap::new(),
            d_perp: BTreeMap::new(),
        }
    }

    /// Adds `value` to the unprimed (or, with `perp`, the primed) tables at
    /// the slots of `e`.
    fn accumulate(&mut self, e: &ErrorLabel, value: &CycloNumber, perp: bool) {
        if value.is_zero() {
            return;
        }
        let (b, c, d) = if perp {
            (&mut self.b_perp, &mut self.c_perp, &mut self.d_perp)
        } else {
            (&mut self.b, &mut self.c, &mut self.d)
        };
        b[e.swt() as usize] += value;
        c[e.wt_x() as usize][e.wt_z() as usize] += value;
        let slot = d
            .entry(e.index_matrix(self.q))
            .or_insert_with(|| CycloNumber::zero(self.prime));
        *slot += value;
        if slot.is_zero() {
            d.remove(&e.index_matrix(self.q));
        }
    }

    pub fn is_rational(&self) -> bool {
        let flat = self.b.iter().chain(&self.b_perp).chain(self.c.iter().flatten());
        flat.chain(self.c_perp.iter().flatten())
            .chain(self.d.values())
            .chain(self.d_perp.values())
            .all(CycloNumber::is_rational)
    }

    /// True when every value is a nonnegative rational.
    pub fn is_nonnegative(&self) -> bool {
        let zero = int(0);
        let flat = self.b.iter().chain(&self.b_perp).chain(self.c.iter().flatten());
        flat.chain(self.c_perp.iter().flatten())
            .chain(self.d.values())
            .chain(self.d_perp.values())
            .all(|v| v.to_rational().is_some_and(|r| r >= zero))
    }

    pub fn poly(&self, kind: Kind) -> MultiPoly {
        let n = self.n as u32;
        let p = self.prime;
        match kind {
            Kind::B | Kind::BPerp => {
                let v = if kind == Kind::B { &self.b } else { &self.b_perp };
                let terms = v
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (vec![n - i as u32, i as u32], c.clone()));
                MultiPoly::from_terms(p, b_vars(), terms).expect("well-formed terms")
            }
            Kind::C | Kind::CPerp => {
                let t = if kind == Kind::C { &self.c } else { &self.c_perp };
                let terms = t.iter().enumerate().flat_map(|(i, row)| {
                    row.iter().enumerate().map(move |(j, c)| {
                        let (i, j) = (i as u32, j as u32);
                        (vec![n - i, i, n - j, j], c.clone())
                    })
                });
                MultiPoly::from_terms(p, c_vars(), terms).expect("well-formed terms")
            }
            Kind::D | Kind::DPerp => {
                let m = if kind == Kind::D { &self.d } else { &self.d_perp };
                let terms = m.iter().map(|(j, c)| (j.counts().to_vec(), c.clone()));
                MultiPoly::from_terms(p, d_vars(self.q), terms).expect("well-formed terms")
            }
        }
    }
}

pub fn b_vars() -> Vec<String> {
    crate::algebra::var_names(&["x", "y"])
}

pub fn c_vars() -> Vec<String> {
    crate::algebra::var_names(&["x", "y", "z", "w"])
}

/// `M_0_0, M_0_1, …, M_{q-1}_{q-1}`, row-major in the canonical element index.
pub fn d_vars(q: u32) -> Vec<String> {
    (0..q)
        .flat_map(|l| (0..q).map(move |m| format!("M_{l}_{m}")))
        .collect()
}

/// Dense-trace oracle:
/// `B_i = 1/(pK²)·Σ_{E[i]} Tr(e†P)Tr(eP)` and `B⊥_i = 1/(pK)·Σ_{E[i]} Tr(e†PeP)`,
/// and likewise for `C` and `D`.
pub fn distributions_oracle(code: &StabilizerCode, budget: u64) -> Result<EnumeratorSet> {
    let spec = code.spec();
    let p = code.prime();
    let n = code.n();
    let space = ErrorSpace::new(spec, n, budget)?;
    let proj = code.projector(budget)?;
    let k = CycloNumber::from_rational(p, code.dimension());
    let pc = CycloNumber::from_int(p, p as i64);
    let unprimed_norm = (&pc * &(&k * &k)).inverse()?;
    let perp_norm = (&pc * &k).inverse()?;

    let dim = proj.rows();
    let nonzero: Vec<(usize, usize)> = (0..dim)
        .flat_map(|y| (0..dim).map(move |x| (y, x)))
        .filter(|&(y, x)| !proj.get(y, x).is_zero())
        .collect();

    let mut out = EnumeratorSet::empty(p, code.q(), n);
    for e in space.iter() {
        let op = e.monomial(spec);
        let zeta = |k: u32| CycloNumber::zeta_pow(p, k % p);
        // Tr(eP) = Σ_x ζ^{φ(x)} P[x][π(x)],  Tr(e†P) = Σ_x ζ^{-φ(x)} P[π(x)][x]
        let mut tr_e = CycloNumber::zero(p);
        let mut tr_edag = CycloNumber::zero(p);
        for x in 0..dim {
            let px = op.perm[x];
            tr_e += &(&zeta(op.phase[x]) * proj.get(x, px));
            tr_edag += &(&zeta(p - op.phase[x]) * proj.get(px, x));
        }
        // Tr(e†PeP) = Σ_{x,y} ζ^{φ(y)-φ(x)} P[π(x)][π(y)] P[y][x]
        let mut tr_perp = CycloNumber::zero(p);
        for &(y, x) in &nonzero {
            let inner = proj.get(op.perm[x], op.perm[y]);
            if inner.is_zero() {
                continue;
            }
            let ph = zeta(op.phase[y] + p - op.phase[x]);
            tr_perp += &(&(&ph * inner) * proj.get(y, x));
        }
        out.accumulate(&e, &(&(&tr_edag * &tr_e) * &unprimed_norm), false);
        out.accumulate(&e, &(&tr_perp * &perp_norm), true);
    }
    Ok(out)
}

/// Fast path. For a stabilizer code `Tr(eP)` vanishes unless `e` is a
/// stabilizer label and `Tr(e†PeP)` vanishes unless `e` lies in the
/// symplectic dual; the surviving terms contribute exactly `1/p` each.
pub fn distributions_symplectic(code: &StabilizerCode) -> Result<EnumeratorSet> {
    let spec = code.spec();
    let p = code.prime();
    let n = code.n();
    let coords = Coordinates::new(spec, n);

    let gen_vecs: Vec<Vec<u32>> = code.generators().iter().map(|g| coords.encode(g)).collect();
    let stab_basis = row_basis(gen_vecs, p);

    // functional of generator g evaluated on the k-th coordinate unit vector
    let functionals: Vec<Vec<u32>> = code
        .generators()
        .iter()
        .map(|g| {
            (0..coords.len())
                .map(|k| g.symplectic(&coords.decode(&coords.unit(k)), spec))
                .collect()
        })
        .collect();
    let dual_basis = kernel_basis(functionals, coords.len(), p);

    let share = CycloNumber::from_ratio(p, 1, p as i64);
    let mut out = EnumeratorSet::empty(p, code.q(), n);
    for v in span(&stab_basis, coords.len(), p) {
        out.accumulate(&coords.decode(&v), &share, false);
    }
    for v in span(&dual_basis, coords.len(), p) {
        out.accumulate(&coords.decode(&v), &share, true);
    }
    Ok(out)
}

/// Identification of `F_q^{2n}` with `F_p^{2ns}`.
struct Coordinates<'a> {
    spec: &'a FieldSpec,
    n: usize,
}

impl<'a> Coordinates<'a> {
    fn new(spec: &'a FieldSpec, n: usize) -> Self {
        Coordinates { spec, n }
    }

    fn len(&self) -> usize {
        2 * self.n * self.spec.s() as usize
    }

    fn unit(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; self.len()];
        v[k] = 1;
        v
    }

    fn encode(&self, e: &ErrorLabel) -> Vec<u32> {
        e.a().iter()
            .chain(e.b())
            .flat_map(|&x| self.spec.coeffs(x))
            .collect()
    }

    fn decode(&self, v: &[u32]) -> ErrorLabel {
        let s = self.spec.s() as usize;
        let elems: Vec<FqElem> = v
            .chunks(s)
            .map(|c| self.spec.from_coeffs(c).expect("coordinates in range"))
            .collect();
        let (a, b) = elems.split_at(self.n);
        ErrorLabel::new(a.to_vec(), b.to_vec()).expect("equal halves")
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue")
}

/// Reduced row echelon form over F_p; returns the nonzero rows and pivot
/// columns.
fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot).take(cols) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn row_basis(rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    rref(rows, p).0
}

fn kernel_basis(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let (red, pivots) = rref(rows, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// Every F_p-combination of `basis`, each exactly once.
fn span(basis: &[Vec<u32>], len: usize, p: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total = (p as u64).pow(basis.len() as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for b in basis {
            let c = (idx % p as u64) as u32;
            idx /= p as u64;
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % p;
            }
        }
        v
    })
}

/// `M_00 ↦ x`, every other `M_λμ ↦ y`.
pub fn specialize_d_to_b(d: &MultiPoly, q: u32) -> Result<MultiPoly> {
    check_d_vars(d, q)?;
    let p = d.prime();
    let x = MultiPoly::var(p, b_vars(), 0);
    let y = MultiPoly::var(p, b_vars(), 1);
    let images: Vec<MultiPoly> = (0..q * q)
        .map(|k| if k == 0 { x.clone() } else { y.clone() })
        .collect();
    d.substitute(&images)
}

/// `M_λμ ↦ (x if λ = 0 else y)·(z if μ = 0 else w)`.
pub fn specialize_d_to_c(d: &MultiPoly, q: u32) -> Result<MultiPoly> {
    check_d_vars(d, q)?;
    let p = d.prime();
    let v = |i| MultiPoly::var(p, c_vars(), i);
    let images = (0..q)
        .flat_map(|l| (0..q).map(move |m| (l, m)))
        .map(|(l, m)| {
            let left = if l == 0 { v(0) } else { v(1) };
            let right = if m == 0 { v(2) } else { v(3) };
            left.try_mul(&right)
        })
        .collect::<Result<Vec<_>>>()?;
    d.substitute(&images)
}

fn check_d_vars(d: &MultiPoly, q: u32) -> Result<()> {
    if d.vars() != d_vars(q).as_slice() {
        return Err(Error::VariableMismatch(format!(
            "expected the {} variables M_l_m for q = {q}",
            q * q
        )));
    }
    Ok(())
}

/// Dense-matrix realization of `Tr(A)` helpers, used only by tests to
/// cross-check the sparse trace formulas above.
#[cfg(test)]
fn dense_traces(code: &StabilizerCode, e: &ErrorLabel, proj: &crate::algebra::CMatrix) -> (CycloNumber, CycloNumber, CycloNumber) {
    let m = e.operator_matrix(code.spec(), u64::MAX).unwrap();
    let md = m.dagger();
    let tr_e = m.trace_of_product(proj).unwrap();
    let tr_ed = md.trace_of_product(proj).unwrap();
    let perp = md.mul(proj).unwrap().mul(&m).unwrap().trace_of_product(proj).unwrap();
    (tr_ed, tr_e, perp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::error_basis::DEFAULT_BUDGET;

    fn code(q: u32, n: usize, gens: &[(&[u32], &[u32])]) -> StabilizerCode {
        let spec = FieldSpec::new(q).unwrap();
        let g = gens
            .iter()
            .map(|(a, b)| ErrorLabel::from_indices(&spec, a, b).unwrap())
            .collect();
        StabilizerCode::new(spec, n, g).unwrap()
    }

    fn bell2() -> StabilizerCode {
        code(2, 2, &[(&[1, 1], &[0, 0]), (&[0, 0], &[1, 1])])
    }

    fn bell3() -> StabilizerCode {
        code(3, 2, &[(&[1, 1], &[0, 0]), (&[0, 0], &[1, 2])])
    }

    fn corpus() -> Vec<StabilizerCode> {
        vec![
            bell2(),
            bell3(),
            code(2, 1, &[]),
            code(3, 1, &[]),
            code(2, 2, &[]),
            code(2, 3, &[(&[0, 0, 0], &[1, 1, 0]), (&[0, 0, 0], &[0, 1, 1])]),
            code(2, 3, &[(&[1, 1, 1], &[0, 0, 0])]),
            code(2, 3, &[(&[1, 1, 0], &[0, 0, 1]), (&[0, 1, 1], &[1, 0, 0])]),
            code(3, 2, &[(&[1, 2], &[1, 1])]),
            code(3, 2, &[(&[1, 0], &[0, 0])]),
            code(4, 1, &[(&[1], &[1])]),
            code(4, 1, &[]),
        ]
    }

    #[test]
    fn bell_pair_enumerators() {
        let es = distributions_oracle(&bell2(), DEFAULT_BUDGET).unwrap();
        assert_eq!(es.poly(Kind::B).to_string(), "1/2*x^2 + 3/2*y^2");
        assert_eq!(es.poly(Kind::BPerp).to_string(), "1/2*x^2 + 3/2*y^2");
        assert_eq!(
            es.poly(Kind::D).to_string(),
            "1/2*M_0_0^2 + 1/2*M_0_1^2 + 1/2*M_1_0^2 + 1/2*M_1_1^2"
        );
    }

    #[test]
    fn trivial_code_enumerators() {
        let es = distributions_oracle(&code(2, 1, &[]), DEFAULT_BUDGET).unwrap();
        assert_eq!(es.poly(Kind::B).to_string(), "1/2*x");
        assert_eq!(es.poly(Kind::BPerp).to_string(), "1/2*x + 3/2*y");
    }

    #[test]
    fn identity_coefficient_is_one_over_p() {
        for c in corpus() {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            assert_eq!(es.b[0], CycloNumber::from_rational(c.prime(), rat(1, c.prime() as i64)));
        }
    }

    #[test]
    fn oracle_equals_symplectic_path() {
        for c in corpus() {
            let oracle = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            let fast = distributions_symplectic(&c).unwrap();
            assert_eq!(oracle, fast, "q = {}, n = {}", c.q(), c.n());
        }
    }

    #[test]
    fn values_are_nonnegative_rationals() {
        for c in corpus() {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            assert!(es.is_rational());
            assert!(es.is_nonnegative());
        }
    }

    #[test]
    fn specializations_of_d() {
        for c in corpus() {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            for (d, b, cc) in [
                (Kind::D, Kind::B, Kind::C),
                (Kind::DPerp, Kind::BPerp, Kind::CPerp),
            ] {
                let dp = es.poly(d);
                assert_eq!(specialize_d_to_b(&dp, c.q()).unwrap(), es.poly(b));
                assert_eq!(specialize_d_to_c(&dp, c.q()).unwrap(), es.poly(cc));
            }
        }
    }

    #[test]
    fn sparse_traces_match_dense_products() {
        for c in [bell2(), bell3(), code(2, 2, &[(&[1, 0], &[0, 0])])] {
            let proj = c.projector(DEFAULT_BUDGET).unwrap();
            let p = c.prime();
            let k = CycloNumber::from_rational(p, c.dimension());
            let pc = CycloNumber::from_int(p, p as i64);
            let mut dense = EnumeratorSet::empty(p, c.q(), c.n());
            for e in ErrorSpace::new(c.spec(), c.n(), DEFAULT_BUDGET).unwrap().iter() {
                let (ed, ee, perp) = dense_traces(&c, &e, &proj);
                let un = (&ed * &ee).try_div(&(&pc * &(&k * &k))).unwrap();
                dense.accumulate(&e, &un, false);
                dense.accumulate(&e, &perp.try_div(&(&pc * &k)).unwrap(), true);
            }
            assert_eq!(dense, distributions_oracle(&c, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn zero_distributions_give_zero_polynomials() {
        let es = EnumeratorSet::empty(2, 2, 2);
        for kind in Kind::ALL {
            assert!(es.poly(kind).is_zero());
        }
    }

    #[test]
    fn bidegrees() {
        let es = distributions_oracle(&bell3(), DEFAULT_BUDGET).unwrap();
        assert_eq!(es.poly(Kind::B).homogeneous_degree(), Some(2));
        assert!(es.poly(Kind::C).is_homogeneous_in(&[0, 1], 2));
        assert!(es.poly(Kind::C).is_homogeneous_in(&[2, 3], 2));
        assert_eq!(es.poly(Kind::DPerp).homogeneous_degree(), Some(2));
    }

    #[test]
    fn kernel_of_f_p_system() {
        // x + 2y = 0 over F_3 has the solution (1, 1)
        let k = kernel_basis(vec![vec![1, 2]], 2, 3);
        assert_eq!(k, vec![vec![1, 1]]);
        assert_eq!(span(&k, 2, 3).count(), 3);
    }

    #[test]
    fn wrong_variables_rejected() {
        let f = MultiPoly::var(2, b_vars(), 0);
        assert!(specialize_d_to_b(&f, 2).is_err());
    }
}
