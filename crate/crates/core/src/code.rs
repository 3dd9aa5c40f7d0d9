//! Stabilizer codes: validation, phased group closure and the projector.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::{CMatrix, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::error_basis::ErrorLabel;
use crate::field::FieldSpec;

/// Element `ζ_p^phase · X_a Z_b` of a stabilizer group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhasedLabel {
    pub label: ErrorLabel,
    pub phase: u32,
}

/// The joint +1 eigenspace of the group generated by `X_a Z_b` operators,
/// each generator taken with phase +1.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    spec: FieldSpec,
    n: usize,
    generators: Vec<ErrorLabel>,
    group: Vec<PhasedLabel>,
}

impl StabilizerCode {
    pub fn new(spec: FieldSpec, n: usize, generators: Vec<ErrorLabel>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLabel("code length must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidLabel(alloc::format!(
                "generator of length {} in a code of length {n}",
                g.n()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if g.symplectic(h, &spec) != 0 {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        let group = close(&spec, n, &generators)?;
        Ok(StabilizerCode {
            spec,
            n,
            generators,
            group,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    /// Prime of the cyclotomic field the code's operators live over.
    pub fn prime(&self) -> u32 {
        self.spec.p()
    }

    pub fn generators(&self) -> &[ErrorLabel] {
        &self.generators
    }

    /// Group elements with their phases, identity first.
    pub fn group(&self) -> &[PhasedLabel] {
        &self.group
    }

    /// `K = q^n / |S|`.
    pub fn dimension(&self) -> Rational {
        let qn = BigInt::from(self.q()).pow(self.n as u32);
        Rational::new(qn, BigInt::from(self.group.len()))
    }

    /// `P = (1/|S|)·Σ_{s∈S} s` as a dense matrix.
    pub fn projector(&self, budget: u64) -> Result<CMatrix> {
        let p = self.prime();
        let dim = (self.q() as usize).pow(self.n as u32);
        let mut acc = CMatrix::zeros(p, dim, dim);
        for s in &self.group {
            let m = s.label.operator_matrix(&self.spec, budget)?;
            acc = acc.add(&m.scale(&CycloNumber::zeta_pow(p, s.phase)))?;
        }
        let norm = CycloNumber::from_ratio(p, 1, self.group.len() as i64);
        Ok(acc.scale(&norm))
    }
}

/// Breadth-first closure under right multiplication by generators.
fn close(spec: &FieldSpec, n: usize, generators: &[ErrorLabel]) -> Result<Vec<PhasedLabel>> {
    let p = spec.p();
    let identity = ErrorLabel::identity(n);
    let mut seen: BTreeMap<ErrorLabel, u32> = BTreeMap::new();
    seen.insert(identity.clone(), 0);
    let mut order = alloc::vec![PhasedLabel {
        label: identity,
        phase: 0
    }];
    let mut head = 0;
    while head < order.len() {
        let cur = order[head].clone();
        head += 1;
        for g in generators {
            let label = cur.label.add(g, spec);
            let phase = (cur.phase + cur.label.product_phase(g, spec)) % p;
            match seen.get(&label) {
                Some(&old) if old != phase => return Err(Error::InconsistentPhase),
                Some(_) => {}
                None => {
                    seen.insert(label.clone(), phase);
                    order.push(PhasedLabel { label, phase });
                }
            }
        }
    }
    Ok(order)
}
