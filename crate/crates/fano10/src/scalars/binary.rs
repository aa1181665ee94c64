//! Homogeneous binary forms on the projective line: evaluation, arithmetic,
//! gcd, and root counting with multiplicity including the point at infinity.

use super::{Field, FieldDescriptor, Poly};
use num_traits::Zero;

/// Homogeneous form of degree `d` in two variables `(λ, μ)`.
///
/// Coefficient `i` multiplies `λ^(d−i) μ^i`, so the evaluation at `(1, t)`
/// is the ordinary polynomial with the same coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm<F: Field> {
    degree: usize,
    field: FieldDescriptor,
    coeffs: Vec<F>,
}

/// A point of the projective line: `Some(t)` is `[1 : t]`, `None` is `[0 : 1]`.
pub type P1Point<F> = Option<F>;

impl<F: Field> BinaryForm<F> {
    /// Builds from the coefficient list (length `degree + 1`).
    pub fn new(field: &FieldDescriptor, degree: usize, coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), degree + 1, "binary form needs degree+1 coefficients");
        BinaryForm { degree, field: field.clone(), coeffs }
    }

    /// The zero form of a given degree.
    pub fn zero(field: &FieldDescriptor, degree: usize) -> Self {
        let z = F::from_descriptor(field, 0).unwrap();
        BinaryForm { degree, field: field.clone(), coeffs: vec![z; degree + 1] }
    }

    /// Reads a form of known degree off an inhomogeneous polynomial in
    /// `t = μ/λ` (its degree must not exceed `degree`).
    pub fn from_poly(field: &FieldDescriptor, degree: usize, p: &Poly<F>) -> Self {
        let z = F::from_descriptor(field, 0).unwrap();
        let mut coeffs = vec![z; degree + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            assert!(i <= degree, "polynomial degree exceeds form degree");
            coeffs[i] = c.clone();
        }
        BinaryForm { degree, field: field.clone(), coeffs }
    }

    /// Homogeneous degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient list.
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// The field descriptor.
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// True when identically zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Evaluation at `(λ, μ)`: `Σ c_i λ^(d−i) μ^i`.
    pub fn eval(&self, lambda: &F, mu: &F) -> F {
        let mut lam_pows = Vec::with_capacity(self.degree + 1);
        let mut lp = F::from_descriptor(&self.field, 1).unwrap();
        for _ in 0..=self.degree {
            lam_pows.push(lp.clone());
            lp = lp * lambda.clone();
        }
        let mut acc = F::from_descriptor(&self.field, 0).unwrap();
        let mut mu_pow = F::from_descriptor(&self.field, 1).unwrap();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c.clone() * lam_pows[self.degree - i].clone() * mu_pow.clone();
            }
            mu_pow = mu_pow * mu.clone();
        }
        acc
    }

    /// Evaluation at a projective point.
    pub fn eval_p1(&self, pt: &P1Point<F>) -> F {
        match pt {
            Some(t) => self.dehomogenized().eval(t),
            None => self.coeffs.last().cloned().unwrap(),
        }
    }

    /// The polynomial `F(1, t)`.
    pub fn dehomogenized(&self) -> Poly<F> {
        Poly::from_coeffs(&self.field, self.coeffs.clone())
    }

    /// Sum (same degree required).
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in binary-form sum");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        BinaryForm { degree: self.degree, field: self.field.clone(), coeffs }
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in binary-form difference");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        BinaryForm { degree: self.degree, field: self.field.clone(), coeffs }
    }

    /// Product (degrees add).
    pub fn mul(&self, rhs: &Self) -> Self {
        let z = F::from_descriptor(&self.field, 0).unwrap();
        let d = self.degree + rhs.degree;
        let mut coeffs = vec![z; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { degree: d, field: self.field.clone(), coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &F) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        BinaryForm { degree: self.degree, field: self.field.clone(), coeffs }
    }

    /// Multiplicity of the root `[0 : 1]` (the power of λ dividing the form).
    pub fn infinity_multiplicity(&self) -> usize {
        if self.is_zero() {
            return self.degree;
        }
        self.degree - self.dehomogenized().degree().unwrap()
    }

    /// Greatest common divisor as binary forms (monic dehomogenization
    /// convention plus the shared power of λ).
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.dehomogenized().gcd(&rhs.dehomogenized());
        let inf = self.infinity_multiplicity().min(rhs.infinity_multiplicity());
        let gd = g.degree().unwrap_or(0);
        BinaryForm::from_poly(&self.field, gd + inf, &g)
    }

    /// Roots on the projective line with multiplicities. Finite roots come
    /// from the dehomogenization; `[0:1]` carries the degree drop.
    pub fn p1_roots_with_multiplicity(&self) -> Vec<(P1Point<F>, usize)> {
        assert!(!self.is_zero(), "root locus of the zero form is all of P^1");
        let mut out: Vec<(P1Point<F>, usize)> = self
            .dehomogenized()
            .roots_with_multiplicity()
            .into_iter()
            .map(|(r, m)| (Some(r), m))
            .collect();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            out.push((None, inf));
        }
        out
    }

    /// Total number of roots on the projective line counted with
    /// multiplicity (between 0 and the degree; equals the degree exactly
    /// when the form splits over the coefficient field).
    pub fn p1_root_count_with_multiplicity(&self) -> usize {
        self.p1_roots_with_multiplicity().iter().map(|(_, m)| m).sum()
    }

    /// Degrees of the distinct irreducible factors over the coefficient
    /// field, sorted increasing; the `[0:1]` root contributes a linear
    /// factor. Requires a finite field for degrees above 2.
    pub fn p1_factor_profile(&self) -> Vec<usize> {
        assert!(!self.is_zero(), "factor profile of the zero form");
        let mut profile = self.dehomogenized().factor_degree_profile();
        if self.infinity_multiplicity() > 0 {
            profile.push(1);
        }
        profile.sort_unstable();
        profile
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    fn bf(coeffs: &[i64]) -> BinaryForm<Fp> {
        let fd = fd97();
        BinaryForm::new(
            &fd,
            coeffs.len() - 1,
            coeffs.iter().map(|&n| Fp::new(n, 97)).collect(),
        )
    }

    #[test]
    fn evaluation_on_p1_matches_charts() {
        // F = λ² − μ², roots [1:1], [1:-1].
        let f = bf(&[1, 0, -1]);
        assert!(f.eval_p1(&Some(Fp::new(1, 97))).is_zero());
        assert!(f.eval_p1(&Some(Fp::new(-1, 97))).is_zero());
        assert!(!f.eval_p1(&None).is_zero());
        let mut roots = f.p1_roots_with_multiplicity();
        roots.sort_by_key(|(p, _)| p.map_or(u64::MAX, |t| t.residue()));
        assert_eq!(roots.len(), 2);
        assert_eq!(f.p1_root_count_with_multiplicity(), 2);
    }

    #[test]
    fn infinity_root_is_counted() {
        // F = λ·μ³: triple root at [1:0]... coefficient view: λμ³ has
        // coefficient 1 at i=3 (λ^1 μ^3): finite root t=0 with mult 3,
        // infinity root [0:1] with mult 1.
        let f = bf(&[0, 0, 0, 1, 0]);
        let roots = f.p1_roots_with_multiplicity();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&(Some(Fp::new(0, 97)), 3)));
        assert!(roots.contains(&(None, 1)));
        assert_eq!(f.p1_root_count_with_multiplicity(), 4);
    }

    #[test]
    fn gcd_keeps_shared_infinity_and_finite_parts() {
        // F1 = λ·(μ − 2λ)² = λ (μ² − 4λμ + 4λ²): shares λ and (μ−2λ) with F2.
        let lam = bf(&[1, 0]);
        let mu_minus_2 = bf(&[-2, 1]);
        let f1 = lam.mul(&mu_minus_2).mul(&mu_minus_2);
        let f2 = lam.mul(&lam).mul(&mu_minus_2).mul(&bf(&[5, 1]));
        let g = f1.gcd(&f2);
        assert_eq!(g.degree(), 2);
        assert_eq!(g.infinity_multiplicity(), 1);
        assert!(g.eval_p1(&Some(Fp::new(2, 97))).is_zero());
    }

    #[test]
    fn product_degree_and_profile() {
        // (μ² − 5λ²) is irreducible over F_97 (5 is a non-residue).
        let quad = bf(&[-5, 0, 1]);
        let lin = bf(&[3, 1]);
        let f = quad.mul(&lin);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.p1_factor_profile(), vec![1, 2]);
        assert_eq!(f.p1_root_count_with_multiplicity(), 1);
    }
}
