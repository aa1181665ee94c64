//! The rationals as a working field: `num_rational::BigRational` already
//! provides exact lowest-terms arithmetic, so the [`Field`] impl only adds the
//! descriptor plumbing, exact square roots, and small-integer sampling.

use super::{Field, FieldDescriptor, ScalarError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};

impl Field for BigRational {
    fn descriptor(&self) -> Option<FieldDescriptor> {
        Some(FieldDescriptor::Rationals)
    }

    fn from_descriptor(fd: &FieldDescriptor, n: i64) -> Result<Self, ScalarError> {
        match fd {
            FieldDescriptor::Rationals => Ok(BigRational::from_integer(BigInt::from(n))),
            other => Err(ScalarError::KindMismatch {
                expected: "rational",
                got: other.to_string(),
            }),
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &(&num * &num) == self.numer() && &(&den * &den) == self.denom() {
            Some(BigRational::new(num, den))
        } else {
            None
        }
    }

    fn frobenius(&self) -> Self {
        self.clone()
    }

    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        // No uniform measure exists; small integers keep coefficient growth in
        // check while staying generic for rank/position arguments.
        BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))
    }

    fn embed(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn exact_square_roots() {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-4, 1).sqrt(), None);
        assert_eq!(q(0, 1).sqrt(), Some(q(0, 1)));
    }

    #[test]
    fn descriptor_round_trip() {
        let one = <BigRational as Field>::from_descriptor(&FieldDescriptor::Rationals, 1).unwrap();
        assert!(one.is_one());
        assert!(<BigRational as Field>::from_descriptor(
            &FieldDescriptor::Prime { p: 7 },
            1
        )
        .is_err());
    }
}
