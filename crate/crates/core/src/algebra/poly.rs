//! Sparse multivariate polynomials over ℚ(ζ_p) with named variables.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients.
//! Printing walks the terms in graded-lexicographic order (higher total
//! degree first, ties broken lexicographically in the declared variable
//! order), which makes the text form canonical.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed};

use super::cyclo::{CycloNumber, Rational};
use super::matrix::CMatrix;
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    prime: u32,
    vars: Vec<String>,
    terms: BTreeMap<Exponents, CycloNumber>,
}

pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Graded-lex comparison: `Less` means `a` is printed before `b`.
pub fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(prime: u32, vars: Vec<String>) -> Self {
        MultiPoly {
            prime,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(prime: u32, vars: Vec<String>, c: CycloNumber) -> Self {
        let n = vars.len();
        Self::monomial(prime, vars, vec![0; n], c)
    }

    pub fn one(prime: u32, vars: Vec<String>) -> Self {
        Self::constant(prime, vars, CycloNumber::one(prime))
    }

    pub fn monomial(prime: u32, vars: Vec<String>, exps: Exponents, c: CycloNumber) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        assert_eq!(c.prime(), prime, "mismatched cyclotomic primes");
        let mut p = Self::zero(prime, vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(prime: u32, vars: Vec<String>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::monomial(prime, vars, exps, CycloNumber::one(prime))
    }

    pub fn var_named(prime: u32, vars: Vec<String>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name}")))?;
        Ok(Self::var(prime, vars, idx))
    }

    /// `Σ_i coeffs[i] · vars[i]`.
    pub fn linear_form(prime: u32, vars: Vec<String>, coeffs: &[CycloNumber]) -> Self {
        assert_eq!(coeffs.len(), vars.len(), "linear form length");
        let mut p = Self::zero(prime, vars);
        let n = coeffs.len();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms(
        prime: u32,
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Exponents, CycloNumber)>,
    ) -> Result<Self> {
        let mut p = Self::zero(prime, vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::VariableMismatch(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                )));
            }
            if c.prime() != prime {
                return Err(Error::PrimeMismatch(prime, c.prime()));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> CycloNumber {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(self.prime))
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> Vec<(&Exponents, &CycloNumber)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex(a.0, b.0));
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, or `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// True when every term has degree `d` in the variables listed in `idx`.
    pub fn is_homogeneous_in(&self, idx: &[usize], d: u32) -> bool {
        self.terms
            .keys()
            .all(|e| idx.iter().map(|&i| e[i]).sum::<u32>() == d)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(CycloNumber::is_rational)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.prime, self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            prime: self.prime,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &CycloNumber) -> Self {
        assert_eq!(s.prime(), self.prime, "mismatched cyclotomic primes");
        if s.is_zero() {
            return Self::zero(self.prime, self.vars.clone());
        }
        MultiPoly {
            prime: self.prime,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&CycloNumber::from_rational(self.prime, r.clone()))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.prime, self.vars.clone());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&base).expect("same ring");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.try_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Replaces variable `i` by `images[i]` everywhere. The images must all live
    /// in one polynomial ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::VariableMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let Some(first) = images.first() else {
            return Err(Error::VariableMismatch("no variables to substitute".into()));
        };
        for img in images {
            first.check_compatible(img)?;
        }
        if first.prime != self.prime {
            return Err(Error::PrimeMismatch(self.prime, first.prime));
        }
        let target_vars = first.vars.clone();
        // powers[i][k] = images[i]^k, filled on demand
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|_| vec![Self::one(self.prime, target_vars.clone())])
            .collect();
        let mut out = Self::zero(self.prime, target_vars.clone());
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.prime, target_vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.try_mul(&powers[i][k as usize])?;
            }
            for (te, tc) in term.terms {
                out.add_term(te, &tc);
            }
        }
        Ok(out)
    }

    /// Column substitution `x_j ↦ Σ_i g[i][j]·x_i`.
    pub fn substitute_columns(&self, g: &CMatrix) -> Result<Self> {
        self.check_square(g)?;
        let n = self.vars.len();
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let col: Vec<CycloNumber> = (0..n).map(|i| g.get(i, j).clone()).collect();
                Self::linear_form(self.prime, self.vars.clone(), &col)
            })
            .collect();
        self.substitute(&images)
    }

    /// Row substitution `x_j ↦ Σ_k m[j][k]·x_k`.
    pub fn substitute_rows(&self, m: &CMatrix) -> Result<Self> {
        self.check_square(m)?;
        let images: Vec<MultiPoly> = (0..self.vars.len())
            .map(|j| Self::linear_form(self.prime, self.vars.clone(), m.row(j)))
            .collect();
        self.substitute(&images)
    }

    /// The linear group action `(g·f)(v) = f(g⁻¹·v)`: variable `x_j` goes to
    /// `Σ_k (g⁻¹)[j][k]·x_k`. This is a left action, so
    /// `h·(g·f) = (h·g)·f`, and it is degree preserving.
    pub fn act(&self, g: &CMatrix) -> Result<Self> {
        self.check_square(g)?;
        self.substitute_rows(&g.inverse()?)
    }

    fn check_square(&self, g: &CMatrix) -> Result<()> {
        let n = self.vars.len();
        if !g.is_square() || g.rows() != n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix acting on {} variables",
                g.rows(),
                g.cols(),
                n
            )));
        }
        if g.prime() != self.prime {
            return Err(Error::PrimeMismatch(self.prime, g.prime()));
        }
        Ok(())
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.prime, self.vars.clone());
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, &c.scale(&Rational::from_integer(e[var].into())));
        }
        out
    }

    /// Same terms, renamed variables (arity must match).
    pub fn with_vars(&self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::VariableMismatch(format!(
                "cannot rename {} variables to {}",
                self.vars.len(),
                vars.len()
            )));
        }
        Ok(MultiPoly {
            prime: self.prime,
            vars,
            terms: self.terms.clone(),
        })
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, &k) in vars.iter().zip(e) {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().into_iter().enumerate() {
            let constant = e.iter().all(|&k| k == 0);
            match c.to_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    match (idx, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let mag = r.abs();
                    if constant {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        write_monomial(f, &self.vars, e)?;
                    }
                }
                None => {
                    if idx > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{c}")?;
                    if !constant {
                        f.write_str("*")?;
                        write_monomial(f, &self.vars, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclo::{int, rat};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn lin(a: Rational, b: Rational) -> MultiPoly {
        MultiPoly::linear_form(
            2,
            xy(),
            &[CycloNumber::from_rational(2, a), CycloNumber::from_rational(2, b)],
        )
    }

    fn weight_sigma(q: i64) -> CMatrix {
        CMatrix::from_rationals(
            2,
            &[
                vec![rat(1, q), rat(q * q - 1, q)],
                vec![rat(1, q), rat(-1, q)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_printing() {
        let p = MultiPoly::from_terms(
            2,
            xy(),
            [
                (vec![0, 2], CycloNumber::from_ratio(2, 3, 2)),
                (vec![2, 0], CycloNumber::from_ratio(2, 1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 + 3/2*y^2");
        assert_eq!(MultiPoly::zero(2, xy()).to_string(), "0");
        let q = lin(int(1), int(-3)).pow(2);
        assert_eq!(q.to_string(), "x^2 - 6*x*y + 9*y^2");
        let c = MultiPoly::constant(2, xy(), CycloNumber::from_int(2, -2));
        assert_eq!(c.to_string(), "-2");
    }

    #[test]
    fn cyclotomic_coefficients_print_in_parentheses() {
        let w = CycloNumber::zeta_pow(3, 1);
        let p = MultiPoly::from_terms(
            3,
            xy(),
            [(vec![1, 0], w.clone()), (vec![0, 1], CycloNumber::from_int(3, -1))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "(w)*x - y");
    }

    #[test]
    fn weight_sigma_action_on_x() {
        for q in 2..6i64 {
            let x = MultiPoly::var(2, xy(), 0);
            let img = x.act(&weight_sigma(q)).unwrap();
            assert_eq!(img, lin(rat(1, q), rat(q * q - 1, q)));
        }
    }

    #[test]
    fn identity_action_is_trivial() {
        let f = lin(int(2), rat(1, 3)).pow(3);
        assert_eq!(f.act(&CMatrix::identity(2, 2)).unwrap(), f);
        assert_eq!(f.substitute_columns(&CMatrix::identity(2, 2)).unwrap(), f);
    }

    #[test]
    fn action_preserves_degree() {
        let f = lin(int(1), int(4)).pow(3);
        let g = f.act(&weight_sigma(3)).unwrap();
        assert_eq!(g.homogeneous_degree(), Some(3));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let f = lin(int(1), int(1));
        assert!(matches!(
            f.act(&CMatrix::identity(2, 3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn derivative_of_square() {
        let f = lin(int(1), int(-3)).pow(2);
        assert_eq!(f.derivative(0), lin(int(2), int(-6)));
    }

    fn arb_poly_xy(deg: u32) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((-5i64..6, 1i64..4), (deg + 1) as usize).prop_map(move |cs| {
            MultiPoly::from_terms(
                2,
                var_names(&["x", "y"]),
                cs.into_iter()
                    .enumerate()
                    .map(|(i, (a, b))| (vec![deg - i as u32, i as u32], CycloNumber::from_ratio(2, a, b))),
            )
            .unwrap()
        })
    }

    fn arb_matrix2() -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec((-4i64..5, 1i64..4), 4).prop_map(|v| {
            let e: Vec<CycloNumber> = v.into_iter().map(|(a, b)| CycloNumber::from_ratio(2, a, b)).collect();
            CMatrix::new(2, 2, 2, e).unwrap()
        })
    }

    proptest! {
        #[test]
        fn double_sigma_action_is_identity(f in arb_poly_xy(3)) {
            let s = weight_sigma(2);
            prop_assert_eq!(f.act(&s).unwrap().act(&s).unwrap(), f);
        }

        #[test]
        fn action_composes((f, g, h) in (arb_poly_xy(3), arb_matrix2(), arb_matrix2())) {
            if let (Ok(lhs), Ok(rhs)) = (
                f.act(&g).and_then(|p| p.act(&h)),
                h.mul(&g).and_then(|hg| f.act(&hg)),
            ) {
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn column_substitution_composes((f, g, h) in (arb_poly_xy(3), arb_matrix2(), arb_matrix2())) {
            let lhs = f.substitute_columns(&g).unwrap().substitute_columns(&h).unwrap();
            let rhs = f.substitute_columns(&h.mul(&g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
