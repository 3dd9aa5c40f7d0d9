//! The verification report run by `verify-paper`.

use qenum_core::algebra::MultiPoly;
use qenum_core::distributions::{distributions_oracle, distributions_symplectic, EnumeratorSet, Kind};
use qenum_core::error_basis::DEFAULT_BUDGET;
use qenum_core::invariant::{
    build_case, express_in_generators, verify_case, weight_completeness, CaseId, ReportLine,
    DEFAULT_DEGREE_CAP,
};
use qenum_core::macwilliams::{
    check_formally_self_dual, mac_b, mac_c, mac_c_exchanged, mac_d, TransformContext,
};
use qenum_core::Result;

use crate::corpus::{BuiltinCode, BUILTINS};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Field orders for the weight and double-weight cases.
    pub qs: Vec<u32>,
    /// Largest code length taken from the built-in corpus.
    pub max_n: usize,
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            qs: vec![2, 3, 4, 5],
            max_n: 3,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Maximal degree of the brute-force completeness comparison.
pub const COMPLETENESS_DEGREE: u32 = 4;

pub fn verify_paper(cfg: &SuiteConfig) -> Result<Vec<ReportLine>> {
    let mut out = Vec::new();
    let mut cases = Vec::new();
    for &q in &cfg.qs {
        cases.push(CaseId::Weight(q));
        cases.push(CaseId::Double(q));
    }
    cases.push(CaseId::CompleteQ2);
    cases.push(CaseId::CompleteQ3);
    for id in cases {
        out.extend(verify_case(&build_case(id)?)?);
    }
    for &q in cfg.qs.iter().filter(|&&q| q == 2 || q == 3) {
        out.extend(completeness_lines(q)?);
    }
    for b in BUILTINS {
        if b.code().n() <= cfg.max_n {
            out.extend(code_lines(b, cfg.budget)?);
        }
    }
    Ok(out)
}

pub fn completeness_lines(q: u32) -> Result<Vec<ReportLine>> {
    let case = build_case(CaseId::Weight(q))?;
    (0..=COMPLETENESS_DEGREE)
        .map(|d| {
            let (span, inv) = weight_completeness(&case, d)?;
            Ok(ReportLine::new(
                format!("{}: degree {d}: products of f1, f2 span {span} of {inv} invariant dimensions", case.id),
                span == inv,
            ))
        })
        .collect()
}

fn same_enumerators(a: &EnumeratorSet, b: &EnumeratorSet) -> bool {
    Kind::ALL.iter().all(|&k| a.poly(k) == b.poly(k))
}

/// Invariant case holding an enumerator kind of a q-ary code.
pub fn case_for(kind: Kind, q: u32) -> Option<CaseId> {
    match (kind, q) {
        (Kind::B, _) => Some(CaseId::Weight(q)),
        (Kind::C, _) => Some(CaseId::Double(q)),
        (Kind::D, 2) => Some(CaseId::CompleteQ2),
        (Kind::D, 3) => Some(CaseId::CompleteQ3),
        _ => None,
    }
}

pub fn code_lines(b: &BuiltinCode, budget: u64) -> Result<Vec<ReportLine>> {
    let code = b.code();
    let name = b.name;
    let oracle = distributions_oracle(&code, budget)?;
    let symplectic = distributions_symplectic(&code)?;
    let ctx = TransformContext::for_code(&code);
    let mut out = vec![ReportLine::new(
        format!("{name}: oracle and symplectic distributions agree"),
        same_enumerators(&oracle, &symplectic),
    )];
    let es = &oracle;
    type Transform = fn(&MultiPoly, &TransformContext) -> Result<MultiPoly>;
    let macs: [(&str, Kind, Kind, Transform); 4] = [
        ("B from Bperp", Kind::B, Kind::BPerp, mac_b),
        ("C from Cperp", Kind::C, Kind::CPerp, mac_c),
        ("C from Cperp, X and Z pairs exchanged", Kind::C, Kind::CPerp, mac_c_exchanged),
        ("D from Dperp", Kind::D, Kind::DPerp, mac_d),
    ];
    for (what, lhs, rhs, f) in macs {
        out.push(ReportLine::new(
            format!("{name}: MacWilliams {what}"),
            f(&es.poly(rhs), &ctx)? == es.poly(lhs),
        ));
    }
    let sd = check_formally_self_dual(es, ctx.k());
    out.push(ReportLine::new(
        format!("{name}: formally self-dual = {}", sd.formally_self_dual),
        sd.formally_self_dual == b.self_dual && sd.consistent(),
    ));
    if sd.formally_self_dual {
        for kind in [Kind::B, Kind::C, Kind::D] {
            let Some(id) = case_for(kind, code.q()) else { continue };
            let case = build_case(id)?;
            let line = match express_in_generators(&es.poly(kind), &case, DEFAULT_DEGREE_CAP) {
                Ok(e) => ReportLine::new(format!("{name}: {} = {e} in {id}", kind.name()), true),
                Err(e) => ReportLine::new(format!("{name}: {} in {id}: {e}", kind.name()), false),
            };
            out.push(line);
        }
    }
    Ok(out)
}
