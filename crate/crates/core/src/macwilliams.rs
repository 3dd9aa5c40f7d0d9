//! MacWilliams transforms between enumerators and their dual partners, and
//! the formal self-duality test.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::{int, CMatrix, CycloNumber, MultiPoly, Rational};
use crate::code::StabilizerCode;
use crate::distributions::{b_vars, c_vars, d_vars, EnumeratorSet, Kind};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqElem};

/// Field, length and code dimension `K` feeding the transform prefactors.
#[derive(Clone, Debug)]
pub struct TransformContext {
    spec: FieldSpec,
    n: usize,
    k: Rational,
}

impl TransformContext {
    pub fn new(spec: FieldSpec, n: usize, k: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLabel("length must be positive".into()));
        }
        if k <= int(0) {
            return Err(Error::InvalidLabel(format!("dimension K = {k} must be positive")));
        }
        Ok(TransformContext { spec, n, k })
    }

    pub fn for_code(code: &StabilizerCode) -> Self {
        TransformContext {
            spec: code.spec().clone(),
            n: code.n(),
            k: code.dimension(),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    fn prime(&self) -> u32 {
        self.spec.p()
    }

    fn q(&self) -> i64 {
        self.spec.q() as i64
    }

    fn lin(&self, vars: &[&str], coeffs: &[Rational]) -> MultiPoly {
        let p = self.prime();
        let c: Vec<CycloNumber> = coeffs
            .iter()
            .map(|r| CycloNumber::from_rational(p, r.clone()))
            .collect();
        MultiPoly::linear_form(p, crate::algebra::var_names(vars), &c)
    }

    fn check(&self, f: &MultiPoly, vars: &[alloc::string::String], groups: &[&[usize]]) -> Result<()> {
        if f.vars() != vars {
            return Err(Error::VariableMismatch(format!(
                "expected variables {:?}, got {:?}",
                vars,
                f.vars()
            )));
        }
        if f.prime() != self.prime() {
            return Err(Error::PrimeMismatch(self.prime(), f.prime()));
        }
        let n = self.n as u32;
        if let Some(g) = groups.iter().find(|g| !f.is_homogeneous_in(g, n)) {
            return Err(Error::NotHomogeneous(format!(
                "expected degree {n} in variables {:?}",
                g.iter().map(|&i| &vars[i]).collect::<Vec<_>>()
            )));
        }
        Ok(())
    }

    fn inv_k(&self) -> Rational {
        self.k.recip()
    }
}

/// `(1/(q^n K))·f(x + (q²−1)y, x − y)`.
pub fn mac_b(f: &MultiPoly, ctx: &TransformContext) -> Result<MultiPoly> {
    let vars = b_vars();
    ctx.check(f, &vars, &[&[0, 1]])?;
    let q = ctx.q();
    let xy = ["x", "y"];
    let images = [
        ctx.lin(&xy, &[int(1), int(q * q - 1)]),
        ctx.lin(&xy, &[int(1), int(-1)]),
    ];
    let qn = BigInt::from(q).pow(ctx.n as u32);
    let scale = ctx.inv_k() / Rational::from_integer(qn);
    Ok(f.substitute(&images)?.scale_rational(&scale))
}

fn xyzw_images(ctx: &TransformContext, outer_first: bool) -> [MultiPoly; 4] {
    let q = ctx.q();
    let v = ["x", "y", "z", "w"];
    let qr = |a: i64| Rational::new(a.into(), q.into());
    // (plain pair, scaled pair) acting on the two variable pairs of the result
    let (x0, y0) = if outer_first { (0, 1) } else { (2, 3) };
    let (z0, w0) = if outer_first { (2, 3) } else { (0, 1) };
    let mut plain_a = [int(0), int(0), int(0), int(0)];
    let mut plain_b = plain_a.clone();
    let mut scaled_a = plain_a.clone();
    let mut scaled_b = plain_a.clone();
    plain_a[x0] = int(1);
    plain_a[y0] = int(q - 1);
    plain_b[x0] = int(1);
    plain_b[y0] = int(-1);
    scaled_a[z0] = qr(1);
    scaled_a[w0] = qr(q - 1);
    scaled_b[z0] = qr(1);
    scaled_b[w0] = qr(-1);
    [
        ctx.lin(&v, &plain_a),
        ctx.lin(&v, &plain_b),
        ctx.lin(&v, &scaled_a),
        ctx.lin(&v, &scaled_b),
    ]
}

/// Double-weight transform as printed:
/// `(1/K)·f(x+(q−1)y, x−y, (z+(q−1)w)/q, (z−w)/q)`.
pub fn mac_c(f: &MultiPoly, ctx: &TransformContext) -> Result<MultiPoly> {
    ctx.check(f, &c_vars(), &[&[0, 1], &[2, 3]])?;
    let images = xyzw_images(ctx, true);
    Ok(f.substitute(&images)?.scale_rational(&ctx.inv_k()))
}

/// Double-weight transform with the X and Z pairs exchanged:
/// `(1/K)·f(z+(q−1)w, z−w, (x+(q−1)y)/q, (x−y)/q)`.
///
/// The symplectic form pairs the X part of one label with the Z part of the
/// other, so the X-weights of the dual govern the Z-weights of the code.
/// This form holds for every stabilizer code; the printed form agrees with
/// it only when the enumerator is symmetric under swapping the pairs.
pub fn mac_c_exchanged(f: &MultiPoly, ctx: &TransformContext) -> Result<MultiPoly> {
    ctx.check(f, &c_vars(), &[&[0, 1], &[2, 3]])?;
    let images = xyzw_images(ctx, false);
    Ok(f.substitute(&images)?.scale_rational(&ctx.inv_k()))
}

/// `L[(λ',μ')][(λ,μ)] = (1/q)·ζ_p^{Tr(a_λ'·a_μ − a_λ·a_μ')}`, rows and
/// columns ordered like [`d_vars`].
pub fn dual_variable_matrix(spec: &FieldSpec) -> CMatrix {
    let q = spec.q() as usize;
    let p = spec.p();
    let inv_q = Rational::new(1.into(), (q as i64).into());
    let el = |i: usize| spec.element(i as u32).expect("index below q");
    CMatrix::from_fn(p, q * q, q * q, |r, c| {
        let (lp, mp): (FqElem, FqElem) = (el(r / q), el(r % q));
        let (l, m) = (el(c / q), el(c % q));
        let t = spec.trace(spec.sub(spec.mul(lp, m), spec.mul(l, mp)));
        CycloNumber::zeta_pow(p, t).scale(&inv_q)
    })
}

/// `(1/K)·f(M^⊥)` where `M^⊥_{λ'μ'} = Σ L[(λ'μ')][(λμ)]·M_{λμ}`.
pub fn mac_d(f: &MultiPoly, ctx: &TransformContext) -> Result<MultiPoly> {
    let q = ctx.spec.q();
    let vars = d_vars(q);
    let all: Vec<usize> = (0..vars.len()).collect();
    ctx.check(f, &vars, &[&all])?;
    let l = dual_variable_matrix(&ctx.spec);
    Ok(f.substitute_columns(&l.transpose())?.scale_rational(&ctx.inv_k()))
}

/// Outcome of the self-duality test. `formally_self_dual` is the defining
/// D-level identity; the B and C fields record the implied identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDuality {
    pub formally_self_dual: bool,
    pub b_identity: bool,
    pub c_identity: bool,
}

impl SelfDuality {
    /// True unless a code passes the D-level test but fails an implied one.
    pub fn consistent(&self) -> bool {
        !self.formally_self_dual || (self.b_identity && self.c_identity)
    }
}

/// Compares `X` with `(1/K)·X^⊥` for `X = D, B, C`.
pub fn check_formally_self_dual(es: &EnumeratorSet, k: &Rational) -> SelfDuality {
    let inv_k = k.recip();
    let holds = |u: Kind, v: Kind| es.poly(u) == es.poly(v).scale_rational(&inv_k);
    SelfDuality {
        formally_self_dual: holds(Kind::D, Kind::DPerp),
        b_identity: holds(Kind::B, Kind::BPerp),
        c_identity: holds(Kind::C, Kind::CPerp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::distributions::distributions_oracle;
    use crate::error_basis::{ErrorLabel, DEFAULT_BUDGET};

    fn code(q: u32, n: usize, gens: &[(&[u32], &[u32])]) -> StabilizerCode {
        let spec = FieldSpec::new(q).unwrap();
        let g = gens
            .iter()
            .map(|(a, b)| ErrorLabel::from_indices(&spec, a, b).unwrap())
            .collect();
        StabilizerCode::new(spec, n, g).unwrap()
    }

    fn corpus() -> Vec<StabilizerCode> {
        vec![
            code(2, 2, &[(&[1, 1], &[0, 0]), (&[0, 0], &[1, 1])]),
            code(3, 2, &[(&[1, 1], &[0, 0]), (&[0, 0], &[1, 2])]),
            code(2, 1, &[]),
            code(3, 1, &[]),
            code(2, 3, &[(&[0, 0, 0], &[1, 1, 0]), (&[0, 0, 0], &[0, 1, 1])]),
            code(2, 3, &[(&[1, 1, 0], &[0, 0, 1]), (&[0, 1, 1], &[1, 0, 0])]),
            code(3, 2, &[(&[1, 2], &[0, 0])]),
            code(3, 2, &[(&[1, 2], &[1, 1])]),
            code(4, 1, &[(&[1], &[1])]),
        ]
    }

    #[test]
    fn weight_transform_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let ctx = TransformContext::new(f2.clone(), 1, int(2)).unwrap();
        let x = MultiPoly::var(2, b_vars(), 0);
        let y = MultiPoly::var(2, b_vars(), 1);
        let bp = x.scale_rational(&rat(1, 2)).try_add(&y.scale_rational(&rat(3, 2))).unwrap();
        assert_eq!(mac_b(&bp, &ctx).unwrap(), x.scale_rational(&rat(1, 2)));
        assert!(mac_b(&MultiPoly::zero(2, b_vars()), &ctx).unwrap().is_zero());
    }

    #[test]
    fn mac1_and_mac3_hold_on_corpus() {
        for c in corpus() {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            let ctx = TransformContext::for_code(&c);
            assert_eq!(mac_b(&es.poly(Kind::BPerp), &ctx).unwrap(), es.poly(Kind::B));
            assert_eq!(mac_d(&es.poly(Kind::DPerp), &ctx).unwrap(), es.poly(Kind::D));
        }
    }

    #[test]
    fn exchanged_mac2_holds_on_corpus() {
        for c in corpus() {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            let ctx = TransformContext::for_code(&c);
            assert_eq!(mac_c_exchanged(&es.poly(Kind::CPerp), &ctx).unwrap(), es.poly(Kind::C));
        }
    }

    #[test]
    fn standard_double_transform_holds_on_symmetric_codes() {
        for c in [corpus().remove(0), corpus().remove(1), corpus().remove(2)] {
            let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
            let ctx = TransformContext::for_code(&c);
            assert_eq!(mac_c(&es.poly(Kind::CPerp), &ctx).unwrap(), es.poly(Kind::C));
        }
    }

    #[test]
    fn standard_double_transform_fails_on_z_type_repetition_code() {
        let c = code(2, 3, &[(&[0, 0, 0], &[1, 1, 0]), (&[0, 0, 0], &[0, 1, 1])]);
        let es = distributions_oracle(&c, DEFAULT_BUDGET).unwrap();
        let ctx = TransformContext::for_code(&c);
        let printed = mac_c(&es.poly(Kind::CPerp), &ctx).unwrap();
        assert_eq!(es.poly(Kind::C).to_string(), "1/2*x^3*z^3 + 3/2*x^3*z*w^2");
        assert_eq!(printed.to_string(), "1/2*x^3*z^3 + 3/2*x*y^2*z^3");
    }

    #[test]
    fn dual_matrix_for_qubits() {
        let l = dual_variable_matrix(&FieldSpec::new(2).unwrap());
        let s = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let expect = CMatrix::from_fn(2, 4, 4, |i, j| CycloNumber::from_ratio(2, s[i][j], 2));
        assert_eq!(l, expect);
        assert!(l.mul(&l).unwrap().is_identity());
        assert_eq!(l.transpose(), l);
    }

    #[test]
    fn dual_matrix_for_qutrits() {
        let l = dual_variable_matrix(&FieldSpec::new(3).unwrap());
        for j in 0..9 {
            assert_eq!(l.get(0, j), &CycloNumber::from_ratio(3, 1, 3));
        }
        assert!(l.mul(&l).unwrap().is_identity());
        let delta = l.inverse().unwrap().transpose();
        assert!(delta.mul(&delta).unwrap().is_identity());
    }

    #[test]
    fn dual_matrix_is_an_involution_over_extension_fields() {
        for q in [4, 5, 9] {
            let l = dual_variable_matrix(&FieldSpec::new(q).unwrap());
            assert!(l.mul(&l).unwrap().is_identity(), "q = {q}");
        }
    }

    #[test]
    fn self_duality() {
        let cs = corpus();
        let check = |c: &StabilizerCode| {
            let es = distributions_oracle(c, DEFAULT_BUDGET).unwrap();
            check_formally_self_dual(&es, &c.dimension())
        };
        let bell2 = check(&cs[0]);
        assert!(bell2.formally_self_dual && bell2.consistent());
        let bell3 = check(&cs[1]);
        assert!(bell3.formally_self_dual && bell3.consistent());
        assert!(!check(&cs[2]).formally_self_dual);
        assert!(cs.iter().all(|c| check(c).consistent()));
    }

    #[test]
    fn wrong_inputs_rejected() {
        let ctx = TransformContext::new(FieldSpec::new(2).unwrap(), 2, int(1)).unwrap();
        let x = MultiPoly::var(2, b_vars(), 0);
        assert!(matches!(mac_b(&x, &ctx), Err(Error::NotHomogeneous(_))));
        assert!(matches!(mac_c(&x, &ctx), Err(Error::VariableMismatch(_))));
        assert!(matches!(mac_d(&x, &ctx), Err(Error::VariableMismatch(_))));
        assert!(TransformContext::new(FieldSpec::new(2).unwrap(), 1, int(0)).is_err());
    }
}
