//! Exact arithmetic in the cyclotomic field ℚ(ζ_p) for a prime `p`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p-2}` modulo the
//! cyclotomic polynomial `Φ_p = 1 + ζ + … + ζ^{p-1}`. For `p = 2` the basis
//! is just `{1}` and `ζ_2 = -1`, so the field degenerates to ℚ.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloNumber {
    prime: u32,
    coeffs: Vec<Rational>,
}

fn check_prime(p: u32) {
    assert!(p >= 2, "cyclotomic prime must be at least 2, got {p}");
}

impl CycloNumber {
    pub fn zero(p: u32) -> Self {
        check_prime(p);
        CycloNumber {
            prime: p,
            coeffs: vec![Rational::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: u32, value: Rational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = value;
        z
    }

    pub fn from_int(p: u32, value: i64) -> Self {
        Self::from_rational(p, int(value))
    }

    pub fn from_ratio(p: u32, num: i64, den: i64) -> Self {
        Self::from_rational(p, rat(num, den))
    }

    /// Builds `Σ c_k ζ^k` from coefficients of arbitrary length, reducing with
    /// `ζ^p = 1` and then `Φ_p(ζ) = 0`.
    pub fn from_power_coeffs(p: u32, coeffs: &[Rational]) -> Self {
        check_prime(p);
        let mut full = vec![Rational::zero(); p as usize];
        for (k, c) in coeffs.iter().enumerate() {
            full[k % p as usize] += c;
        }
        Self::reduce_full(p, full)
    }

    /// `ζ_p^k`, with `k` taken modulo `p`.
    pub fn zeta_pow(p: u32, k: u32) -> Self {
        check_prime(p);
        let mut full = vec![Rational::zero(); p as usize];
        full[(k % p) as usize] = Rational::one();
        Self::reduce_full(p, full)
    }

    // `full` holds coefficients of 1..ζ^{p-1}; eliminate ζ^{p-1}.
    fn reduce_full(p: u32, mut full: Vec<Rational>) -> Self {
        let top = full.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        CycloNumber {
            prime: p,
            coeffs: full,
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{p-2}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the value lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNumber {
            prime: self.prime,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNumber {
            prime: self.prime,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.prime as usize;
        if p == 2 {
            return Ok(CycloNumber {
                prime: 2,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut full = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Ok(Self::reduce_full(self.prime, full))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.try_mul(&other.inverse()?)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to `p`).
    pub fn galois(&self, k: u32) -> Self {
        let p = self.prime;
        let mut full = vec![Rational::zero(); p as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            full[((j as u64 * k as u64) % p as u64) as usize] += c;
        }
        Self::reduce_full(p, full)
    }

    /// Complex conjugation restricted to ℚ(ζ_p), i.e. `ζ ↦ ζ^{p-1}`.
    pub fn conj(&self) -> Self {
        if self.prime == 2 {
            return self.clone();
        }
        self.galois(self.prime - 1)
    }

    /// Multiplicative inverse via the field norm: `a⁻¹ = (Π_{k≠1} σ_k(a)) / N(a)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prime;
        let mut cofactor = Self::one(p);
        for k in 2..p {
            cofactor = &cofactor * &self.galois(k);
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("field norm is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prime);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        assert_eq!(self.prime, rhs.prime, "mismatched cyclotomic primes");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        assert_eq!(self.prime, rhs.prime, "mismatched cyclotomic primes");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Rational values print as `a` or `a/b`; anything else prints as a
/// parenthesized power-basis sum such as `(1/2 - w + 3*w^2)`, with `w`
/// standing for `ζ_p`.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        f.write_str("(")?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("w")?;
                    } else {
                        write!(f, "w^{k}")?;
                    }
                }
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn omega() -> CycloNumber {
        CycloNumber::zeta_pow(3, 1)
    }

    #[test]
    fn omega_satisfies_minimal_polynomial() {
        let w = omega();
        let v = &(&w * &w) + &w;
        let v = &v + &CycloNumber::one(3);
        assert!(v.is_zero());
    }

    #[test]
    fn zeta_two_is_minus_one() {
        assert_eq!(CycloNumber::zeta_pow(2, 1), CycloNumber::from_int(2, -1));
    }

    #[test]
    fn rational_inverse() {
        let half = CycloNumber::from_ratio(2, 1, 2);
        assert_eq!(half.inverse().unwrap(), CycloNumber::from_int(2, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = CycloNumber::zero(3);
        assert_eq!(
            CycloNumber::one(3).try_div(&z),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_primes_are_an_error() {
        let a = CycloNumber::one(2);
        let b = CycloNumber::one(3);
        assert_eq!(a.try_add(&b), Err(Error::PrimeMismatch(2, 3)));
        assert_eq!(a.try_mul(&b), Err(Error::PrimeMismatch(2, 3)));
    }

    #[test]
    fn conj_of_omega_is_omega_squared() {
        let w = omega();
        assert_eq!(w.conj(), &w * &w);
        // |ω|² = 1
        assert!((&w * &w.conj()).is_one());
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let a = CycloNumber::from_power_coeffs(5, &[int(1), int(1)]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloNumber::from_ratio(3, -3, 2).to_string(), "-3/2");
        let v = CycloNumber::from_power_coeffs(3, &[rat(1, 2), int(-1)]);
        assert_eq!(v.to_string(), "(1/2 - w)");
        let v = CycloNumber::from_power_coeffs(5, &[int(0), int(2), int(0), int(-1)]);
        assert_eq!(v.to_string(), "(2*w - w^3)");
        // ω² reduces to -1 - ω
        assert_eq!(CycloNumber::zeta_pow(3, 2).to_string(), "(-1 - w)");
    }

    fn arb_cyclo(p: u32) -> impl Strategy<Value = CycloNumber> {
        proptest::collection::vec((-20i64..20, 1i64..6), (p - 1) as usize).prop_map(
            move |v| {
                let cs: Vec<Rational> = v.into_iter().map(|(a, b)| rat(a, b)).collect();
                CycloNumber::from_power_coeffs(p, &cs)
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms_p3((a, b, c) in (arb_cyclo(3), arb_cyclo(3), arb_cyclo(3))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn field_axioms_p5((a, b, c) in (arb_cyclo(5), arb_cyclo(5), arb_cyclo(5))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b - &c), &(&a * &b) - &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
