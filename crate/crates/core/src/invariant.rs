//! Invariant rings of the MacWilliams symmetry groups, their generators via
//! transfer through a diagonalizing conjugator, and expressions of invariant
//! polynomials in those generators.
//!
//! Every case carries a group generator `sigma` acting on polynomials by
//! `(g·f)(v) = f(g⁻¹v)`, a diagonal `tau` and a conjugator `t`. The rows of
//! `t` are linear forms `ℓ_i` with `ℓ_i ∘ S = τ_i·ℓ_i` for the substitution
//! matrix `S` of the generator, so monomials in the `ℓ_i` fixed by `τ` are
//! invariants. This is how the generator lists are produced.
//!
//! For the double-weight case the transfer happens on the four quadratic
//! monomials `u1 = xz`, `u2 = yw`, `v1 = xw`, `v2 = yz`, which span the
//! invariants of `σ²`; the results are then rewritten in `x, y, z, w`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{int, rat, var_names, CMatrix, CycloNumber, MultiPoly, Rational};
use crate::distributions::{b_vars, c_vars, d_vars};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::macwilliams::dual_variable_matrix;

/// Default cap on the target degree accepted by [`express_in_generators`].
pub const DEFAULT_DEGREE_CAP: u32 = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum CaseId {
    Weight(u32),
    Double(u32),
    CompleteQ2,
    CompleteQ3,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::Weight(q) => write!(f, "WEIGHT(q={q})"),
            CaseId::Double(q) => write!(f, "DOUBLE(q={q})"),
            CaseId::CompleteQ2 => f.write_str("COMPLETE_Q2"),
            CaseId::CompleteQ3 => f.write_str("COMPLETE_Q3"),
        }
    }
}

/// A τ-invariant monomial in the transfer coordinates, with the scalar the
/// transferred polynomial is divided by.
#[derive(Clone, Debug)]
pub struct TauInvariant {
    pub exponents: Vec<u32>,
    pub divisor: Rational,
}

#[derive(Clone, Debug)]
pub struct InvariantCase {
    pub id: CaseId,
    pub prime: u32,
    /// Variables of the enumerator ring.
    pub vars: Vec<String>,
    /// Group generator, acting through [`MultiPoly::act`].
    pub sigma: CMatrix,
    /// Matrix claimed to equal `T⁻¹·τ·T`, in the transfer coordinates.
    pub conjugated: CMatrix,
    pub t: CMatrix,
    pub tau: CMatrix,
    /// Transfer coordinates; equal to `vars` except in the double case.
    pub transfer_vars: Vec<String>,
    /// Images of the transfer coordinates in `vars`, when they differ.
    pub lift: Option<Vec<MultiPoly>>,
    pub tau_invariants: Vec<TauInvariant>,
    pub names: Vec<String>,
    pub generators: Vec<MultiPoly>,
    /// Degrees of the generators in `vars`.
    pub degrees: Vec<u32>,
    /// Generators typed from their explicit printed displays, aligned with
    /// `generators` (`None` where no independent display exists).
    pub printed: Vec<Option<MultiPoly>>,
    /// Polynomials in `names` that vanish on the generators.
    pub relations: Vec<MultiPoly>,
}

fn q_prime(q: u32) -> Result<u32> {
    if q < 2 {
        return Err(Error::UnsupportedCase(format!("q = {q}")));
    }
    Ok(FieldSpec::new(q)?.p())
}

fn rmat(p: u32, rows: &[&[Rational]]) -> CMatrix {
    let owned: Vec<Vec<Rational>> = rows.iter().map(|r| r.to_vec()).collect();
    CMatrix::from_rationals(p, &owned).expect("rectangular literal")
}

fn diag_signs(p: u32, signs: &[i64]) -> CMatrix {
    let d: Vec<CycloNumber> = signs.iter().map(|&s| CycloNumber::from_int(p, s)).collect();
    CMatrix::diag(p, &d)
}

fn linear(p: u32, vars: &[String], coeffs: &[Rational]) -> MultiPoly {
    let c: Vec<CycloNumber> = coeffs
        .iter()
        .map(|r| CycloNumber::from_rational(p, r.clone()))
        .collect();
    MultiPoly::linear_form(p, vars.to_vec(), &c)
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn unit_exps(len: usize, entries: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; len];
    for &(i, k) in entries {
        e[i] = k;
    }
    e
}

fn tau_inv(len: usize, entries: &[(usize, u32)], divisor: Rational) -> TauInvariant {
    TauInvariant {
        exponents: unit_exps(len, entries),
        divisor,
    }
}

/// Relation polynomial `Π a − Π b` in the generator names.
fn binomial(p: u32, gen_names: &[String], lhs: &[(usize, u32)], rhs: &[(usize, u32)]) -> MultiPoly {
    let len = gen_names.len();
    MultiPoly::from_terms(
        p,
        gen_names.to_vec(),
        [
            (unit_exps(len, lhs), CycloNumber::one(p)),
            (unit_exps(len, rhs), CycloNumber::from_int(p, -1)),
        ],
    )
    .expect("well-formed relation")
}

pub fn build_case(id: CaseId) -> Result<InvariantCase> {
    let mut case = match id {
        CaseId::Weight(q) => weight_case(q)?,
        CaseId::Double(q) => double_case(q)?,
        CaseId::CompleteQ2 => complete_q2_case(),
        CaseId::CompleteQ3 => complete_q3_case(),
    };
    case.generators = transfer_generators(&case)?;
    Ok(case)
}

fn weight_case(q: u32) -> Result<InvariantCase> {
    let p = q_prime(q)?;
    let qi = q as i64;
    let r = |a: i64| rat(a, qi);
    let vars = b_vars();
    let sigma = rmat(p, &[&[r(1), r(qi * qi - 1)], &[r(1), r(-1)]]);
    let t = rmat(p, &[&[r(qi + 1), r(qi * qi - 1)], &[r(1 - qi), r(qi * qi - 1)]]);
    let one_minus = r(1 - qi);
    let tau_invariants = vec![
        tau_inv(2, &[(0, 1)], r(qi + 1)),
        tau_inv(2, &[(1, 2)], &one_minus * &one_minus),
    ];
    let printed = vec![
        Some(linear(p, &vars, &[int(1), int(qi - 1)])),
        Some(linear(p, &vars, &[int(1), int(-(qi + 1))]).pow(2)),
    ];
    Ok(InvariantCase {
        id: CaseId::Weight(q),
        prime: p,
        vars: vars.clone(),
        conjugated: sigma.clone(),
        sigma,
        t,
        tau: diag_signs(p, &[1, -1]),
        transfer_vars: vars,
        lift: None,
        tau_invariants,
        names: names("f", 2),
        generators: Vec::new(),
        degrees: vec![1, 2],
        printed,
        relations: Vec::new(),
    })
}

/// The double-weight group generator on `x, y, z, w`.
pub fn double_sigma(q: u32) -> Result<CMatrix> {
    let p = q_prime(q)?;
    let qi = q as i64;
    let r = |a: i64| rat(a, qi);
    let z = int(0);
    Ok(rmat(
        p,
        &[
            &[r(1), r(qi - 1), z.clone(), z.clone()],
            &[r(1), r(-1), z.clone(), z.clone()],
            &[z.clone(), z.clone(), int(1), int(qi - 1)],
            &[z.clone(), z.clone(), int(1), int(-1)],
        ],
    ))
}

/// `[σ]` as displayed: its columns are the images of `u1, u2, v1, v2`.
pub fn double_bracket_sigma(q: u32) -> Result<CMatrix> {
    let p = q_prime(q)?;
    let qi = q as i64;
    let r = |a: i64| rat(a, qi);
    let sq = (qi - 1) * (qi - 1);
    Ok(rmat(
        p,
        &[
            &[r(1), r(1), r(1), r(1)],
            &[r(sq), r(1), r(1 - qi), r(1 - qi)],
            &[r(qi - 1), r(-1), r(-1), r(qi - 1)],
            &[r(qi - 1), r(-1), r(qi - 1), r(-1)],
        ],
    ))
}

fn double_case(q: u32) -> Result<InvariantCase> {
    let p = q_prime(q)?;
    let qi = q as i64;
    let r = |a: i64| rat(a, qi);
    let sq = (qi - 1) * (qi - 1);
    let vars = c_vars();
    let uvars = var_names(&["u1", "u2", "v1", "v2"]);
    let t = rmat(
        p,
        &[
            &[r(qi + 1), r(sq), r(qi - 1), r(qi - 1)],
            &[int(1), int(1 - qi), int(qi - 1), int(qi - 1)],
            &[r(1 - qi), r(sq), r(qi - 1), r(qi - 1)],
            &[int(1), int(1 - qi), int(-qi - 1), int(qi - 1)],
        ],
    );
    // u1 = xz, u2 = yw, v1 = xw, v2 = yz
    let var = |i| MultiPoly::var(p, vars.clone(), i);
    let lift = vec![
        var(0).try_mul(&var(2))?,
        var(1).try_mul(&var(3))?,
        var(0).try_mul(&var(3))?,
        var(1).try_mul(&var(2))?,
    ];
    let one = || int(1);
    let tau_invariants = vec![
        tau_inv(4, &[(0, 1)], one()),
        tau_inv(4, &[(1, 1)], one()),
        tau_inv(4, &[(2, 2)], one()),
        tau_inv(4, &[(3, 2)], one()),
        tau_inv(4, &[(2, 1), (3, 1)], one()),
    ];

    // Explicit displays in x, y, z, w.
    let mono = |e: [u32; 4]| MultiPoly::monomial(p, vars.clone(), e.to_vec(), CycloNumber::one(p));
    let (xz, yw, xw, yz) = (mono([1, 0, 1, 0]), mono([0, 1, 0, 1]), mono([1, 0, 0, 1]), mono([0, 1, 1, 0]));
    let combo = |c: [Rational; 4]| -> Result<MultiPoly> {
        let parts = [&xz, &yw, &xw, &yz];
        let mut acc = MultiPoly::zero(p, vars.clone());
        for (k, m) in c.iter().zip(parts) {
            acc = acc.try_add(&m.scale_rational(k))?;
        }
        Ok(acc)
    };
    let a = combo([r(1 - qi), r(sq), r(qi - 1), r(qi - 1)])?;
    let b = combo([int(1), int(1 - qi), int(-(qi + 1)), int(qi - 1)])?;
    let printed = vec![
        Some(combo([r(qi + 1), r(sq), r(qi - 1), r(qi - 1)])?),
        Some(combo([int(1), int(1 - qi), int(qi - 1), int(qi - 1)])?),
        Some(a.pow(2)),
        Some(b.pow(2)),
        Some(a.try_mul(&b)?),
    ];
    let gnames = names("g", 5);
    let relations = vec![binomial(p, &gnames, &[(4, 2)], &[(2, 1), (3, 1)])];
    Ok(InvariantCase {
        id: CaseId::Double(q),
        prime: p,
        vars,
        sigma: double_sigma(q)?,
        conjugated: double_bracket_sigma(q)?.inverse()?.transpose(),
        t,
        tau: diag_signs(p, &[1, 1, -1, -1]),
        transfer_vars: uvars,
        lift: Some(lift),
        tau_invariants,
        names: gnames,
        generators: Vec::new(),
        degrees: vec![2, 2, 4, 4, 4],
        printed,
        relations,
    })
}

/// The printed complete-weight matrix for qubits.
pub fn complete_q2_sigma() -> CMatrix {
    let h = rat(1, 2);
    let m = -h.clone();
    rmat(
        2,
        &[
            &[h.clone(), h.clone(), h.clone(), h.clone()],
            &[h.clone(), h.clone(), m.clone(), m.clone()],
            &[h.clone(), m.clone(), h.clone(), m.clone()],
            &[h.clone(), m.clone(), m.clone(), h.clone()],
        ],
    )
}

fn complete_q2_case() -> InvariantCase {
    let p = 2;
    let vars = d_vars(2);
    let h = rat(1, 2);
    let t = rmat(
        p,
        &[
            &[rat(3, 2), h.clone(), h.clone(), h.clone()],
            &[int(1), int(-1), int(3), int(-1)],
            &[int(1), int(-1), int(-1), int(3)],
            &[int(1), int(-1), int(-1), int(-1)],
        ],
    );
    let tau_invariants = vec![
        tau_inv(4, &[(0, 1)], h.clone()),
        tau_inv(4, &[(1, 1)], int(1)),
        tau_inv(4, &[(2, 1)], int(1)),
        tau_inv(4, &[(3, 2)], int(1)),
    ];
    let lin = |c: [i64; 4]| linear(p, &vars, &c.map(int));
    let printed = vec![
        Some(lin([3, 1, 1, 1])),
        Some(lin([1, -1, 3, -1])),
        Some(lin([1, -1, -1, 3])),
        // displayed unsquared; only its square is invariant
        Some(lin([1, -1, -1, -1]).pow(2)),
    ];
    let sigma = complete_q2_sigma();
    InvariantCase {
        id: CaseId::CompleteQ2,
        prime: p,
        vars: vars.clone(),
        conjugated: sigma.clone(),
        sigma,
        t,
        tau: diag_signs(p, &[1, 1, 1, -1]),
        transfer_vars: vars,
        lift: None,
        tau_invariants,
        names: names("f", 4),
        generators: Vec::new(),
        degrees: vec![1, 1, 1, 2],
        printed,
        relations: Vec::new(),
    }
}

/// The printed 9×9 matrix `σ` for qutrits, over `Q(ω)`.
pub fn complete_q3_sigma() -> CMatrix {
    // exponent of ω in each entry
    const E: [[u32; 9]; 9] = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 2, 2, 2],
        [0, 0, 0, 2, 2, 2, 1, 1, 1],
        [0, 2, 1, 0, 2, 1, 0, 2, 1],
        [0, 2, 1, 1, 0, 2, 2, 1, 0],
        [0, 2, 1, 2, 1, 0, 1, 0, 2],
        [0, 1, 2, 0, 1, 2, 0, 1, 2],
        [0, 1, 2, 1, 2, 0, 2, 0, 1],
        [0, 1, 2, 2, 0, 1, 1, 2, 0],
    ];
    let third = rat(1, 3);
    CMatrix::from_fn(3, 9, 9, |i, j| CycloNumber::zeta_pow(3, E[i][j]).scale(&third))
}

fn complete_q3_t() -> CMatrix {
    #[derive(Clone, Copy)]
    enum E {
        R(i64, i64),
        O,
        M,
    }
    use E::{M, O, R};
    let one = R(1, 1);
    let four = R(4, 1);
    let tw = R(-2, 1);
    let th = R(1, 3);
    let rows: [[E; 9]; 9] = [
        [one, M, O, one, M, O, four, M, O],
        [one, O, M, M, four, O, O, M, one],
        [one, one, four, O, O, O, M, M, M],
        [R(4, 3), th, th, th, th, th, th, th, th],
        [one, M, O, M, O, one, O, four, M],
        [one, M, O, O, one, M, M, O, four],
        [one, one, tw, O, O, O, M, M, M],
        [R(-2, 3), th, th, th, th, th, th, th, th],
        [one, O, M, M, tw, O, O, M, one],
    ];
    let omega = CycloNumber::zeta_pow(3, 1);
    // −ω − 1
    let m = &(-&omega) - &CycloNumber::one(3);
    CMatrix::from_fn(3, 9, 9, |i, j| match rows[i][j] {
        R(a, b) => CycloNumber::from_ratio(3, a, b),
        O => omega.clone(),
        M => m.clone(),
    })
}

fn complete_q3_case() -> InvariantCase {
    let p = 3;
    let vars = d_vars(3);
    let sigma = complete_q3_sigma();
    let delta = sigma
        .inverse()
        .expect("printed sigma is invertible")
        .transpose();
    let one = || int(1);
    let mut tau_invariants: Vec<TauInvariant> = (0..6).map(|i| tau_inv(9, &[(i, 1)], one())).collect();
    for i in 6..9 {
        tau_invariants.push(tau_inv(9, &[(i, 2)], one()));
    }
    for (a, b) in [(6, 7), (6, 8), (7, 8)] {
        tau_invariants.push(tau_inv(9, &[(a, 1), (b, 1)], one()));
    }
    let gnames = names("f", 12);
    // f10 = ℓ7ℓ8, f11 = ℓ7ℓ9, f12 = ℓ8ℓ9 with f7..f9 = ℓ7²..ℓ9²
    let relations = vec![
        binomial(p, &gnames, &[(9, 2)], &[(6, 1), (7, 1)]),
        binomial(p, &gnames, &[(10, 2)], &[(6, 1), (8, 1)]),
        binomial(p, &gnames, &[(11, 2)], &[(7, 1), (8, 1)]),
        binomial(p, &gnames, &[(9, 1), (10, 1)], &[(6, 1), (11, 1)]),
        binomial(p, &gnames, &[(9, 1), (11, 1)], &[(7, 1), (10, 1)]),
        binomial(p, &gnames, &[(10, 1), (11, 1)], &[(8, 1), (9, 1)]),
    ];
    InvariantCase {
        id: CaseId::CompleteQ3,
        prime: p,
        vars: vars.clone(),
        conjugated: delta.clone(),
        sigma: delta,
        t: complete_q3_t(),
        tau: diag_signs(p, &[1, 1, 1, 1, 1, 1, -1, -1, -1]),
        transfer_vars: vars,
        lift: None,
        tau_invariants,
        names: gnames,
        generators: Vec::new(),
        degrees: vec![1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2],
        printed: vec![None; 12],
        relations,
    }
}

/// Substitutes each transfer coordinate of every τ-invariant monomial by the
/// matching row of `T`, divides by the recorded scalar, and rewrites the
/// result in the enumerator variables.
pub fn transfer_generators(case: &InvariantCase) -> Result<Vec<MultiPoly>> {
    let p = case.prime;
    let tv = &case.transfer_vars;
    if case.t.rows() != tv.len() || case.t.cols() != tv.len() {
        return Err(Error::ShapeMismatch("conjugator does not match the transfer space".into()));
    }
    let rows: Vec<MultiPoly> = (0..tv.len())
        .map(|i| MultiPoly::linear_form(p, tv.clone(), case.t.row(i)))
        .collect();
    // a τ-invariant monomial must have even degree in every τ = −1 slot
    for ti in &case.tau_invariants {
        let sign_ok = ti.exponents.iter().enumerate().fold(true, |ok, (i, &e)| {
            let neg = case.tau.get(i, i) != &CycloNumber::one(p);
            let odd = e % 2 == 1;
            ok ^ (neg && odd)
        });
        if !sign_ok {
            return Err(Error::UnsupportedCase(format!(
                "{} lists a monomial that tau does not fix",
                case.id
            )));
        }
    }
    case.tau_invariants
        .iter()
        .map(|ti| {
            let mono = MultiPoly::monomial(p, tv.clone(), ti.exponents.clone(), CycloNumber::one(p));
            let g = mono.substitute(&rows)?.scale_rational(&ti.divisor.recip());
            match &case.lift {
                Some(images) => g.substitute(images),
                None => Ok(g),
            }
        })
        .collect()
}

/// True iff `f` is fixed by the case's generator.
pub fn check_invariance(f: &MultiPoly, case: &InvariantCase) -> Result<bool> {
    if f.vars() != case.vars.as_slice() {
        return Err(Error::VariableMismatch(format!(
            "{} expects variables {:?}",
            case.id, case.vars
        )));
    }
    Ok(&f.act(&case.sigma)? == f)
}

/// One pass/fail line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub label: String,
    pub pass: bool,
}

impl ReportLine {
    pub fn new(label: impl Into<String>, pass: bool) -> Self {
        ReportLine {
            label: label.into(),
            pass,
        }
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.pass { "PASS" } else { "FAIL" }, self.label)
    }
}

/// Determinant of the Jacobian of `{f1, f2}` in the weight case.
pub fn weight_jacobian(case: &InvariantCase) -> Result<MultiPoly> {
    let [f1, f2] = [&case.generators[0], &case.generators[1]];
    let a = f1.derivative(0).try_mul(&f2.derivative(1))?;
    let b = f1.derivative(1).try_mul(&f2.derivative(0))?;
    a.try_sub(&b)
}

/// Evaluates a polynomial in the generator names on the generators.
pub fn evaluate_in_generators(expr: &MultiPoly, case: &InvariantCase) -> Result<MultiPoly> {
    if expr.vars() != case.names.as_slice() {
        return Err(Error::VariableMismatch(format!(
            "{} expressions use {:?}",
            case.id, case.names
        )));
    }
    expr.substitute(&case.generators)
}

pub fn verify_case(case: &InvariantCase) -> Result<Vec<ReportLine>> {
    let id = case.id;
    let p = case.prime;
    let mut out = Vec::new();
    let sq = case.sigma.mul(&case.sigma)?;
    let conj = case.t.inverse()?.mul(&case.tau)?.mul(&case.t)?;

    match id {
        CaseId::Weight(_) => {
            out.push(ReportLine::new(format!("{id}: sigma^2 = I_2"), sq.is_identity()));
            out.push(ReportLine::new(
                format!("{id}: sigma = T^-1 tau T"),
                conj == case.conjugated,
            ));
        }
        CaseId::Double(q) => {
            let qc = CycloNumber::from_int(p, q as i64);
            let inv_q = qc.inverse()?;
            let want = CMatrix::diag(p, &[inv_q.clone(), inv_q, qc.clone(), qc]);
            out.push(ReportLine::new(
                format!("{id}: sigma^2 = diag(1/q, 1/q, q, q)"),
                sq == want,
            ));
            let bracket = double_bracket_sigma(q)?;
            out.push(ReportLine::new(
                format!("{id}: [sigma]^2 = I_4"),
                bracket.mul(&bracket)?.is_identity(),
            ));
            out.push(ReportLine::new(
                format!("{id}: ([sigma]^-1)^t = T^-1 tau T"),
                conj == case.conjugated,
            ));
            if q == 2 {
                out.push(ReportLine::new(format!("{id}: [sigma] = T^-1 tau T"), conj == bracket));
            }
            let sq_fixed = case.lift.as_ref().expect("double case lifts").iter().try_fold(true, |ok, m| {
                Ok::<bool, Error>(ok && &m.act(&sq)? == m)
            })?;
            out.push(ReportLine::new(format!("{id}: xz, yw, xw, yz fixed by sigma^2"), sq_fixed));
            let gens_sq = case.generators.iter().try_fold(true, |ok, g| {
                Ok::<bool, Error>(ok && &g.act(&sq)? == g)
            })?;
            out.push(ReportLine::new(format!("{id}: generators fixed by sigma^2"), gens_sq));
            // the u-space generators are invariant under substitution by [σ]ᵗ
            let rows: Vec<MultiPoly> = (0..4)
                .map(|i| MultiPoly::linear_form(p, case.transfer_vars.clone(), case.t.row(i)))
                .collect();
            let u_action = bracket.transpose();
            let u_fixed = case.tau_invariants.iter().try_fold(true, |ok, ti| {
                let mono = MultiPoly::monomial(p, case.transfer_vars.clone(), ti.exponents.clone(), CycloNumber::one(p));
                let f = mono.substitute(&rows)?;
                Ok::<bool, Error>(ok && f.substitute_rows(&u_action)? == f)
            })?;
            out.push(ReportLine::new(format!("{id}: f1..f5 fixed by [sigma] on u1, u2, v1, v2"), u_fixed));
        }
        CaseId::CompleteQ2 => {
            let l = dual_variable_matrix(&FieldSpec::new(2)?);
            out.push(ReportLine::new(format!("{id}: sigma^2 = I_4"), sq.is_identity()));
            out.push(ReportLine::new(
                format!("{id}: sigma^t = sigma"),
                case.sigma.transpose() == case.sigma,
            ));
            out.push(ReportLine::new(format!("{id}: sigma = T^-1 tau T"), conj == case.conjugated));
            out.push(ReportLine::new(
                format!("{id}: sigma equals the trace-character matrix"),
                l == case.sigma,
            ));
        }
        CaseId::CompleteQ3 => {
            let printed = complete_q3_sigma();
            let l = dual_variable_matrix(&FieldSpec::new(3)?);
            out.push(ReportLine::new(format!("{id}: delta^2 = I_9"), sq.is_identity()));
            out.push(ReportLine::new(
                format!("{id}: sigma^2 = I_9"),
                printed.mul(&printed)?.is_identity(),
            ));
            out.push(ReportLine::new(format!("{id}: delta = T^-1 tau T"), conj == case.conjugated));
            out.push(ReportLine::new(
                format!("{id}: delta equals the trace-character matrix"),
                l == case.sigma,
            ));
        }
    }

    for (name, g) in case.names.iter().zip(&case.generators) {
        out.push(ReportLine::new(
            format!("{id}: {name} is invariant"),
            check_invariance(g, case)?,
        ));
    }
    for (i, (name, pr)) in case.names.iter().zip(&case.printed).enumerate() {
        if let Some(pr) = pr {
            out.push(ReportLine::new(
                format!("{id}: transferred {name} matches its display"),
                pr == &case.generators[i],
            ));
        }
    }
    for rel in &case.relations {
        let value = evaluate_in_generators(rel, case)?;
        out.push(ReportLine::new(format!("{id}: {rel} = 0"), value.is_zero()));
    }
    if let CaseId::Weight(_) = id {
        let jac = weight_jacobian(case)?;
        out.push(ReportLine::new(
            format!("{id}: Jacobian of f1, f2 is {jac}, nonzero"),
            !jac.is_zero(),
        ));
    }
    Ok(out)
}

/// Dimensions `(span of {f1^a f2^b : a + 2b = d}, degree-d invariants)` for
/// the weight case; equality is the degree-d content of the generation
/// claim. The invariant dimension is computed from the action matrix on the
/// monomial basis, independently of the generators.
pub fn weight_completeness(case: &InvariantCase, d: u32) -> Result<(usize, usize)> {
    let p = case.prime;
    let basis: Vec<Vec<u32>> = (0..=d).map(|i| vec![d - i, i]).collect();
    let coords = |f: &MultiPoly| -> Vec<CycloNumber> { basis.iter().map(|e| f.coeff(e)).collect() };

    let mut action = Vec::new();
    for e in &basis {
        let m = MultiPoly::monomial(p, case.vars.clone(), e.clone(), CycloNumber::one(p));
        let img = m.act(&case.sigma)?;
        let mut col = coords(&img);
        let idx = basis.iter().position(|b| b == e).expect("basis member");
        col[idx] -= &CycloNumber::one(p);
        action.push(col);
    }
    let n = basis.len();
    let a_minus_i = CMatrix::from_fn(p, n, n, |i, j| action[j][i].clone());
    let invariant_dim = n - a_minus_i.rank();

    let products: Vec<Vec<CycloNumber>> = (0..=d / 2)
        .map(|b| {
            let a = d - 2 * b;
            let f = case.generators[0].pow(a).try_mul(&case.generators[1].pow(b))?;
            Ok(coords(&f))
        })
        .collect::<Result<_>>()?;
    let span = CMatrix::from_fn(p, n, products.len(), |i, j| products[j][i].clone());
    Ok((span.rank(), invariant_dim))
}

/// Generator exponent vectors of weighted degree `d`, restricted to the
/// normal forms chosen modulo the relations.
fn normal_monomials(case: &InvariantCase, d: u32) -> Vec<Vec<u32>> {
    fn rec(degs: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left / degs[i] {
            cur.push(k);
            rec(degs, i + 1, left - k * degs[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&case.degrees, 0, d, &mut Vec::new(), &mut out);
    out.retain(|e| match case.id {
        CaseId::Double(_) => e[4] <= 1,
        CaseId::CompleteQ3 => e[9] + e[10] + e[11] <= 1,
        _ => true,
    });
    out
}

/// Writes the invariant polynomial `f` as a polynomial in the case's
/// generator names, certified by re-expansion.
pub fn express_in_generators(f: &MultiPoly, case: &InvariantCase, degree_cap: u32) -> Result<MultiPoly> {
    let p = case.prime;
    if !check_invariance(f, case)? {
        return Err(Error::NotInvariant);
    }
    if f.is_zero() {
        return Ok(MultiPoly::zero(p, case.names.clone()));
    }
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous(f.to_string()))?;
    if d > degree_cap {
        return Err(Error::DegreeCap { degree: d, cap: degree_cap });
    }
    let candidates = normal_monomials(case, d);
    if candidates.is_empty() {
        return Err(Error::NoExpression(format!("no generator monomial has degree {d}")));
    }

    let mut powers: Vec<Vec<MultiPoly>> = case
        .generators
        .iter()
        .map(|_| vec![MultiPoly::one(p, case.vars.clone())])
        .collect();
    let mut columns = Vec::with_capacity(candidates.len());
    for e in &candidates {
        let mut acc = MultiPoly::one(p, case.vars.clone());
        for (i, &k) in e.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().expect("seeded").try_mul(&case.generators[i])?;
                powers[i].push(next);
            }
            if k > 0 {
                acc = acc.try_mul(&powers[i][k as usize])?;
            }
        }
        columns.push(acc);
    }

    let mut monos: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for poly in columns.iter().chain(core::iter::once(f)) {
        for (e, _) in poly.terms() {
            let next = monos.len();
            monos.entry(e.clone()).or_insert(next);
        }
    }
    let rows = monos.len();
    let mut a = CMatrix::zeros(p, rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (e, c) in col.terms() {
            a.set(monos[e], j, c.clone());
        }
    }
    let mut b = vec![CycloNumber::zero(p); rows];
    for (e, c) in f.terms() {
        b[monos[e]] = c.clone();
    }
    let x = crate::algebra::solve_linear_exact(&a, &b)?
        .ok_or_else(|| Error::NoExpression(format!("{f} is outside the span of {} generator monomials", candidates.len())))?;

    let expr = MultiPoly::from_terms(p, case.names.clone(), candidates.into_iter().zip(x))?;
    if &evaluate_in_generators(&expr, case)? != f {
        return Err(Error::NoExpression("re-expansion check failed".into()));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn all_cases() -> Vec<CaseId> {
        let mut v = Vec::new();
        for q in [2, 3, 4, 5] {
            v.push(CaseId::Weight(q));
            v.push(CaseId::Double(q));
        }
        v.push(CaseId::CompleteQ2);
        v.push(CaseId::CompleteQ3);
        v
    }

    #[test]
    fn every_report_line_passes() {
        for id in all_cases() {
            let case = build_case(id).unwrap();
            for line in verify_case(&case).unwrap() {
                assert!(line.pass, "{line}");
            }
        }
    }

    #[test]
    fn weight_generators_for_qubits() {
        let case = build_case(CaseId::Weight(2)).unwrap();
        assert_eq!(case.generators[0].to_string(), "x + y");
        assert_eq!(case.generators[1].to_string(), "x^2 - 6*x*y + 9*y^2");
    }

    #[test]
    fn complete_q2_scaled_first_generator() {
        let case = build_case(CaseId::CompleteQ2).unwrap();
        assert_eq!(case.generators[0].to_string(), "3*M_0_0 + M_0_1 + M_1_0 + M_1_1");
    }

    #[test]
    fn printed_unsquared_f4_is_anti_invariant() {
        let case = build_case(CaseId::CompleteQ2).unwrap();
        let f4 = linear(2, &case.vars, &[int(1), int(-1), int(-1), int(-1)]);
        assert_eq!(f4.act(&case.sigma).unwrap(), f4.neg());
    }

    #[test]
    fn double_relation_is_listed() {
        let case = build_case(CaseId::Double(3)).unwrap();
        assert_eq!(case.relations.len(), 1);
        assert_eq!(case.relations[0].to_string(), "-g3*g4 + g5^2");
    }

    #[test]
    fn untransposed_bracket_sigma_differs_beyond_qubits() {
        for q in [3, 4, 5] {
            let case = build_case(CaseId::Double(q)).unwrap();
            let conj = case.t.inverse().unwrap().mul(&case.tau).unwrap().mul(&case.t).unwrap();
            assert_ne!(conj, double_bracket_sigma(q).unwrap());
        }
    }

    #[test]
    fn invariance_examples() {
        let w3 = build_case(CaseId::Weight(3)).unwrap();
        assert!(check_invariance(&w3.generators[0], &w3).unwrap());
        let w2 = build_case(CaseId::Weight(2)).unwrap();
        assert!(!check_invariance(&MultiPoly::var(2, b_vars(), 0), &w2).unwrap());
        for id in all_cases() {
            let case = build_case(id).unwrap();
            assert!(check_invariance(&MultiPoly::one(case.prime, case.vars.clone()), &case).unwrap());
        }
        assert!(matches!(
            check_invariance(&MultiPoly::var(2, c_vars(), 0), &w2),
            Err(Error::VariableMismatch(_))
        ));
    }

    #[test]
    fn weight_completeness_low_degree() {
        for q in [2, 3] {
            let case = build_case(CaseId::Weight(q)).unwrap();
            for d in 0..=4 {
                let (span, inv) = weight_completeness(&case, d).unwrap();
                assert_eq!(span, inv, "q = {q}, d = {d}");
            }
        }
    }

    #[test]
    fn bell_weight_expression() {
        let case = build_case(CaseId::Weight(2)).unwrap();
        let x = MultiPoly::var(2, b_vars(), 0);
        let y = MultiPoly::var(2, b_vars(), 1);
        let b = x.pow(2).scale_rational(&rat(1, 2)).try_add(&y.pow(2).scale_rational(&rat(3, 2))).unwrap();
        let e = express_in_generators(&b, &case, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(e.to_string(), "3/8*f1^2 + 1/8*f2");
    }

    #[test]
    fn generator_round_trip() {
        for q in [2, 3, 5] {
            let case = build_case(CaseId::Weight(q)).unwrap();
            let e = express_in_generators(&case.generators[0], &case, DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(e.to_string(), "f1");
        }
    }

    #[test]
    fn double_product_uses_normal_form() {
        let case = build_case(CaseId::Double(2)).unwrap();
        let target = case.generators[2].try_mul(&case.generators[3]).unwrap();
        let e = express_in_generators(&target, &case, DEFAULT_DEGREE_CAP).unwrap();
        assert!(e.terms().iter().all(|(ex, _)| ex[4] <= 1));
        assert_eq!(evaluate_in_generators(&e, &case).unwrap(), target);
    }

    #[test]
    fn express_rejects_bad_input() {
        let case = build_case(CaseId::Weight(2)).unwrap();
        let x = MultiPoly::var(2, b_vars(), 0);
        assert_eq!(express_in_generators(&x, &case, 8), Err(Error::NotInvariant));
        let big = case.generators[0].pow(9);
        assert_eq!(
            express_in_generators(&big, &case, 8),
            Err(Error::DegreeCap { degree: 9, cap: 8 })
        );
        let zero = MultiPoly::zero(2, b_vars());
        assert!(express_in_generators(&zero, &case, 8).unwrap().is_zero());
    }

    #[test]
    fn q3_normal_monomials_are_a_transversal() {
        let case = build_case(CaseId::CompleteQ3).unwrap();
        let m = normal_monomials(&case, 2);
        // 21 quadratic products of f1..f6 plus f7..f12
        assert_eq!(m.len(), 27);
    }

    #[test]
    fn unsupported_q() {
        assert!(build_case(CaseId::Weight(6)).is_err());
        assert!(build_case(CaseId::Double(1)).is_err());
    }
}
