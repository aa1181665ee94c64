//! Exact field arithmetic and dense exact linear algebra.
//!
//! Three working fields are supported, selected at runtime by a
//! [`FieldDescriptor`]:
//!
//! * the rationals, with arbitrary-precision integers kept in lowest terms;
//! * prime fields `F_p` for primes `5 ≤ p < 2³¹`;
//! * quadratic extensions `F_p² = F_p(√r)` for a fixed nonresidue `r`.
//!
//! All algebra is generic over the [`Field`] trait, so every downstream
//! algorithm (row reduction, kernels, characteristic polynomials, resultants)
//! is written once and monomorphized per scalar type. Arithmetic is exact;
//! pivot selection is deterministic (first nonzero entry, no magnitude
//! heuristics) so identical inputs always produce identical reductions.

mod binary;
mod fp;
mod fp2;
mod matrix;
mod poly;
mod rational;

pub use binary::{BinaryForm, P1Point};
pub use fp::{is_prime_u64, Fp};
pub use fp2::Fp2;
pub use matrix::{LinearError, Matrix, RrefOutput};
pub use poly::Poly;

use num_traits::{One, Zero};
use rand::RngCore;

/// Errors raised by scalar construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// The modulus is not a prime, or is smaller than 5 (characteristics 2
    /// and 3 break the conic and cubic formulas used downstream).
    #[error("modulus {0} is not a prime >= 5")]
    BadModulus(u64),
    /// Moduli are capped so products fit in 64-bit arithmetic.
    #[error("modulus {0} exceeds the 2^31 overflow-safety bound")]
    ModulusTooLarge(u64),
    /// The requested extension-defining element is a square mod p.
    #[error("{0} is a quadratic residue mod {1}, cannot define F_p^2")]
    NotANonresidue(u64, u64),
    /// Division by zero in a field.
    #[error("division by zero")]
    DivisionByZero,
    /// Two operands belong to different fields.
    #[error("mixed-field operands: {0} vs {1}")]
    MixedFields(String, String),
    /// A scalar of the wrong kind was requested from a descriptor.
    #[error("field kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: String,
    },
    /// Unparseable field descriptor string.
    #[error("cannot parse field descriptor {0:?} (expected rational | fp:<p> | fp2:<p>)")]
    BadDescriptor(String),
}

/// Runtime description of the working field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// The field of rational numbers.
    Rationals,
    /// The prime field `F_p`.
    Prime { p: u64 },
    /// The quadratic extension `F_p(√r)`, `r` a fixed quadratic nonresidue.
    Quadratic { p: u64, r: u64 },
}

impl FieldDescriptor {
    /// Descriptor for the rationals.
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    /// Descriptor for `F_p`. Validates primality, the `p ≥ 5` bound, and the
    /// overflow-safety cap.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        validate_modulus(p)?;
        Ok(FieldDescriptor::Prime { p })
    }

    /// Descriptor for `F_p²` with the smallest quadratic nonresidue as `√`-base.
    pub fn quadratic(p: u64) -> Result<Self, ScalarError> {
        validate_modulus(p)?;
        let r = smallest_nonresidue(p);
        Ok(FieldDescriptor::Quadratic { p, r })
    }

    /// Descriptor for `F_p(√r)` with an explicit nonresidue.
    pub fn quadratic_with(p: u64, r: u64) -> Result<Self, ScalarError> {
        validate_modulus(p)?;
        let r = r % p;
        if legendre(r, p) != p - 1 {
            return Err(ScalarError::NotANonresidue(r, p));
        }
        Ok(FieldDescriptor::Quadratic { p, r })
    }

    /// Parses the CLI syntax `rational` / `fp:<p>` / `fp2:<p>`.
    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        if s == "rational" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp2:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| ScalarError::BadDescriptor(s.to_string()))?;
            return FieldDescriptor::quadratic(p);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| ScalarError::BadDescriptor(s.to_string()))?;
            return FieldDescriptor::prime(p);
        }
        Err(ScalarError::BadDescriptor(s.to_string()))
    }

    /// Residue characteristic (`None` for the rationals).
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime { p } | FieldDescriptor::Quadratic { p, .. } => Some(*p),
        }
    }

    /// Number of elements (`None` for the rationals).
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime { p } => Some(*p as u128),
            FieldDescriptor::Quadratic { p, .. } => Some((*p as u128) * (*p as u128)),
        }
    }

    /// True when the two descriptors denote the same field (for error checks).
    pub fn same_field(&self, other: &FieldDescriptor) -> bool {
        self == other
    }
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "rational"),
            FieldDescriptor::Prime { p } => write!(f, "fp:{p}"),
            FieldDescriptor::Quadratic { p, .. } => write!(f, "fp2:{p}"),
        }
    }
}

fn validate_modulus(p: u64) -> Result<(), ScalarError> {
    if p >= 1 << 31 {
        return Err(ScalarError::ModulusTooLarge(p));
    }
    if p < 5 || !is_prime_u64(p) {
        return Err(ScalarError::BadModulus(p));
    }
    Ok(())
}

/// Legendre symbol via Euler's criterion: returns `1` (residue), `p-1`
/// (nonresidue), or `0`.
pub(crate) fn legendre(a: u64, p: u64) -> u64 {
    fp::pow_mod(a % p, (p - 1) / 2, p)
}

pub(crate) fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&r| legendre(r, p) == p - 1).expect("p >= 5 has a nonresidue")
}

/// An exact field scalar.
///
/// Implementors carry their own field context (modulus, nonresidue) so values
/// from different fields can be detected and rejected. The [`Zero`] and
/// [`One`] constants are *unbound* — they acquire a concrete field the first
/// time they meet a bound value. Library code always constructs scalars from a
/// [`FieldDescriptor`], so unbound constants never escape into results.
pub trait Field:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
{
    /// The descriptor of the field this value is bound to, if any.
    fn descriptor(&self) -> Option<FieldDescriptor>;

    /// Builds the image of the integer `n` in the field described by `fd`.
    fn from_descriptor(fd: &FieldDescriptor, n: i64) -> Result<Self, ScalarError>;

    /// Multiplicative inverse.
    fn inv(&self) -> Result<Self, ScalarError>;

    /// Exact square root within the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// The field involution: identity on the rationals and on `F_p`,
    /// conjugation `a + b√r ↦ a − b√r` on `F_p²`.
    fn frobenius(&self) -> Self;

    /// Uniform random element of the same field as `self` (small integers over
    /// the rationals, where no uniform distribution exists).
    fn random_like(&self, rng: &mut dyn RngCore) -> Self;

    /// Embeds the integer `n` into the field of `self`.
    fn embed(&self, n: i64) -> Self;

    /// Division helper: `self / rhs`.
    fn div_by(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.inv()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_parsing_accepts_the_three_kinds() {
        assert_eq!(FieldDescriptor::parse("rational").unwrap(), FieldDescriptor::Rationals);
        assert_eq!(
            FieldDescriptor::parse("fp:97").unwrap(),
            FieldDescriptor::Prime { p: 97 }
        );
        match FieldDescriptor::parse("fp2:97").unwrap() {
            FieldDescriptor::Quadratic { p: 97, r } => {
                assert_eq!(legendre(r, 97), 96, "extension base must be a nonresidue");
            }
            other => panic!("unexpected descriptor {other:?}"),
        }
    }

    #[test]
    fn descriptor_rejects_bad_moduli() {
        assert!(matches!(FieldDescriptor::prime(91), Err(ScalarError::BadModulus(91))));
        assert!(matches!(FieldDescriptor::prime(3), Err(ScalarError::BadModulus(3))));
        assert!(matches!(
            FieldDescriptor::prime(1 << 32),
            Err(ScalarError::ModulusTooLarge(_))
        ));
        assert!(FieldDescriptor::prime(5).is_ok());
    }

    #[test]
    fn nonresidue_choice_is_validated() {
        // 2 is a residue mod 97 (14^2 = 196 = 2 mod 97), 5 is not.
        assert!(matches!(
            FieldDescriptor::quadratic_with(97, 2),
            Err(ScalarError::NotANonresidue(2, 97))
        ));
        assert!(FieldDescriptor::quadratic_with(97, 5).is_ok());
    }
}
