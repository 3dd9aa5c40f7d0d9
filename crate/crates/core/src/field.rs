//! Arithmetic in F_q, q = p^s, with a fixed element ordering and the trace
//! map to F_p.
//!
//! An element is stored as its canonical index `λ = c_0 + c_1·p + … +
//! c_{s-1}·p^{s-1}`, where `c_k` are its coordinates in the polynomial basis
//! `1, t, …, t^{s-1}`. The constant coordinate varies fastest, so `a_0 = 0`
//! and `a_1 = 1` for every field, and F_4 is ordered `0, 1, t, t+1`.
//! For prime fields `a_λ = λ`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Element of F_q, identified by its canonical index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// Canonical index λ with `self = a_λ`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Callers guarantee `i < q`.
    pub(crate) fn from_raw(i: u32) -> Self {
        FqElem(i)
    }
}

/// Largest prime field order accepted; keeps the operation tables small.
pub const MAX_PRIME_Q: u32 = 251;

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Default moduli for the supported extension fields, low coefficient first.
fn default_modulus(q: u32) -> Option<(u32, u32, Vec<u32>)> {
    match q {
        4 => Some((2, 2, vec![1, 1, 1])),    // t² + t + 1
        8 => Some((2, 3, vec![1, 1, 0, 1])), // t³ + t + 1
        9 => Some((3, 2, vec![1, 0, 1])),    // t² + 1
        _ => None,
    }
}

impl FieldSpec {
    /// F_q for a prime `q ≤ MAX_PRIME_Q`, or q ∈ {4, 8, 9} with the default
    /// moduli t²+t+1, t³+t+1 and t²+1.
    pub fn new(q: u32) -> Result<Self> {
        if is_prime(q) {
            if q > MAX_PRIME_Q {
                return Err(Error::UnsupportedField(q));
            }
            return Self::build(q, 1, Vec::new());
        }
        let (p, s, m) = default_modulus(q).ok_or(Error::UnsupportedField(q))?;
        Self::build(p, s, m)
    }

    /// F_q with an explicit modulus `c_0 + c_1 t + … + c_s t^s` (monic,
    /// irreducible, degree s). For prime `q` only the empty modulus or the
    /// trivial `t` shape is meaningless, so a modulus is rejected there.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self> {
        let (p, s, _) = default_modulus(q).ok_or_else(|| {
            if is_prime(q) {
                Error::InvalidModulus(format!("q = {q} is prime and takes no modulus"))
            } else {
                Error::UnsupportedField(q)
            }
        })?;
        if modulus.len() != s as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                s + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficient out of range".into()));
        }
        if modulus[s as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        // Degree 2 and 3 polynomials are irreducible iff they have no root.
        let has_root = (0..p).any(|x| {
            modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| (acc * x + c) % p)
                == 0
        });
        if has_root {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        Self::build(p, s, modulus.to_vec())
    }

    fn build(p: u32, s: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(s);
        let qu = q as usize;
        let to_coeffs = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(s as usize);
            let mut r = x;
            for _ in 0..s {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let from_coeffs = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mul_poly = |a: &[u32], b: &[u32]| -> Vec<u32> {
            if s == 1 {
                return vec![(a[0] * b[0]) % p];
            }
            let su = s as usize;
            let mut prod = vec![0u32; 2 * su - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // reduce t^k for k >= s using the monic modulus
            for k in (su..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &m) in modulus[..su].iter().enumerate() {
                    let idx = k - su + i;
                    prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
                }
            }
            prod.truncate(su);
            prod
        };

        let mut add = vec![0; qu * qu];
        let mut mul = vec![0; qu * qu];
        for a in 0..q {
            let ca = to_coeffs(a);
            for b in 0..q {
                let cb = to_coeffs(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_coeffs(&sum);
                mul[(a * q + b) as usize] = from_coeffs(&mul_poly(&ca, &cb));
            }
        }
        let neg: Vec<u32> = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
            .collect();
        let mut inv = vec![0; qu];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .ok_or_else(|| Error::InvalidModulus("ring is not a field".into()))?;
        }
        // Tr(a) = a + a^p + … + a^{p^{s-1}}
        let trace = (0..q)
            .map(|a| {
                let mut acc = 0;
                let mut power = a;
                for _ in 0..s {
                    acc = add[(acc * q + power) as usize];
                    let mut next = 1;
                    for _ in 0..p {
                        next = mul[(next * q + power) as usize];
                    }
                    power = next;
                }
                acc
            })
            .collect::<Vec<u32>>();
        if trace.iter().any(|&t| t >= p) {
            return Err(Error::InvalidModulus("trace left the prime field".into()));
        }
        Ok(FieldSpec {
            p,
            s,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `a_λ`, the element with canonical index `λ`.
    pub fn element(&self, index: u32) -> Result<FqElem> {
        if index < self.q {
            Ok(FqElem(index))
        } else {
            Err(Error::ElementOutOfRange {
                value: index,
                q: self.q,
            })
        }
    }

    /// All elements in canonical order `a_0, …, a_{q-1}`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    /// Polynomial-basis coordinates of `a`, constant first.
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.s as usize);
        let mut r = a.0;
        for _ in 0..self.s {
            v.push(r % self.p);
            r /= self.p;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() != self.s as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidLabel(format!(
                "coordinates {coeffs:?} do not describe an element of F_{}",
                self.q
            )));
        }
        Ok(FqElem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// Embeds a residue of F_p.
    pub fn from_residue(&self, r: u32) -> FqElem {
        FqElem(r % self.p)
    }

    fn idx(&self, a: FqElem, b: FqElem) -> usize {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        (a.0 * self.q + b.0) as usize
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[self.idx(a, b)])
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[self.idx(a, b)])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FqElem(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u32) -> FqElem {
        (0..e).fold(FqElem::ONE, |acc, _| self.mul(acc, a))
    }

    /// `Tr(a) = Σ_{i<s} a^{p^i}`, returned as a residue in `0..p`.
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize]
    }

    /// Euclidean inner product `Σ x_i y_i` in F_q.
    pub fn dot(&self, x: &[FqElem], y: &[FqElem]) -> FqElem {
        x.iter()
            .zip(y)
            .fold(FqElem::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}
