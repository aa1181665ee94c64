//! Univariate polynomials over exact fields: division, gcd, modular powers,
//! distinct-degree factorization, and resultants.

use super::{Field, FieldDescriptor, Matrix};
use num_traits::Zero;

/// Univariate polynomial, little-endian coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: FieldDescriptor,
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    /// Builds from little-endian coefficients.
    pub fn from_coeffs(field: &FieldDescriptor, coeffs: Vec<F>) -> Self {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Constant polynomial from an integer.
    pub fn constant(field: &FieldDescriptor, n: i64) -> Self {
        let c = F::from_descriptor(field, n).expect("descriptor/type mismatch");
        Poly::from_coeffs(field, vec![c])
    }

    /// Constant polynomial from a field element.
    pub fn from_coeff(field: &FieldDescriptor, c: F) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    /// `coeff * x^degree`.
    pub fn monomial(field: &FieldDescriptor, coeff: i64, degree: usize) -> Self {
        let zero = F::from_descriptor(field, 0).expect("descriptor/type mismatch");
        let c = F::from_descriptor(field, coeff).expect("descriptor/type mismatch");
        let mut v = vec![zero; degree + 1];
        v[degree] = c;
        Poly::from_coeffs(field, v)
    }

    /// `Π (x - r)` over the supplied roots.
    pub fn from_roots(field: &FieldDescriptor, roots: &[F]) -> Self {
        let mut acc = Poly::constant(field, 1);
        for r in roots {
            let lin = Poly::from_coeffs(field, vec![-r.clone(), F::from_descriptor(field, 1).unwrap()]);
            acc = acc.mul(&lin);
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// The field descriptor.
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Little-endian coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::from_descriptor(&self.field, 0).unwrap())
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient (`None` when zero).
    pub fn leading(&self) -> Option<F> {
        self.coeffs.last().cloned()
    }

    /// Evaluation at a point.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::from_descriptor(&self.field, 0).unwrap();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::constant(&self.field, 0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let k = F::from_descriptor(&self.field, i as i64).unwrap();
                k * c.clone()
            })
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Product (borrowing form).
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::constant(&self.field, 0);
        }
        let zero = F::from_descriptor(&self.field, 0).unwrap();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(&self.field, out)
    }

    /// Scales by a field element.
    pub fn scale(&self, c: &F) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Small non-negative power.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::constant(&self.field, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics if `rhs` is zero.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let lead_inv = rhs.leading().unwrap().inv().expect("unit leading coefficient");
        let zero = F::from_descriptor(&self.field, 0).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::constant(&self.field, 0), self.clone());
        }
        let mut quot = vec![zero.clone(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].clone() * lead_inv.clone();
            quot[i - d] = q.clone();
            for j in 0..=d {
                rem[i - d + j] = rem[i - d + j].clone() - q.clone() * rhs.coeffs[j].clone();
            }
        }
        (
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        )
    }

    /// Remainder only.
    pub fn rem(&self, rhs: &Self) -> Self {
        self.divrem(rhs).1
    }

    /// Makes the polynomial monic (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Poly::constant(&self.field, 1).rem(modulus);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Substitutes `x ↦ g(x)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::constant(&self.field, 0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g) + Poly::from_coeff(&self.field, c.clone());
        }
        acc
    }

    /// Squarefree part (radical). Valid in any characteristic: a vanishing
    /// derivative signals a perfect p-th power, which is deflated; factors
    /// whose multiplicity is divisible by p are split off and recursed on.
    pub fn radical(&self) -> Self {
        let f = self.monic();
        match f.degree() {
            None | Some(0) => return f,
            _ => {}
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = g(x^p) = (coefficient-wise p-th root of g)(x)^p over F_q;
            // the inverse of Frobenius c ↦ c^p is `frobenius` iterated to
            // close the cycle, which for F_p and F_p^2 is `frobenius` itself.
            let p = self
                .field
                .characteristic()
                .expect("vanishing derivative needs positive characteristic")
                as usize;
            let mut g = Vec::new();
            for (i, c) in f.coeffs.iter().enumerate() {
                if i % p == 0 {
                    g.push(c.frobenius());
                } else {
                    assert!(c.is_zero(), "derivative zero forces p-divisible support");
                }
            }
            return Poly::from_coeffs(&self.field, g).radical();
        }
        let g = f.gcd(&d);
        if g.degree() == Some(0) {
            return f;
        }
        // w carries each irreducible factor with multiplicity not divisible
        // by the characteristic, exactly once.
        let w = f.divrem(&g).0.monic();
        // Strip those factors from g; what survives is the product of the
        // p-divisible-multiplicity factors, itself a perfect p-th power.
        let mut c = g;
        loop {
            let shared = c.gcd(&w);
            if shared.degree().map_or(true, |ds| ds == 0) {
                break;
            }
            c = c.divrem(&shared).0.monic();
        }
        if c.degree().map_or(true, |dc| dc == 0) {
            return w;
        }
        w.mul(&c.radical()).monic()
    }

    /// Distinct-degree factorization of the squarefree part, over a finite
    /// field of order `q`. Returns pairs `(d, product of irreducible factors
    /// of degree d)` with `d` increasing.
    pub fn distinct_degree_factorization(&self) -> Vec<(usize, Poly<F>)> {
        let q_big = self
            .field
            .order()
            .expect("distinct-degree factorization needs a finite field");
        let q = u64::try_from(q_big).expect("field order fits u64");
        let mut f = self.radical();
        let mut out = Vec::new();
        let x = Poly::monomial(&self.field, 1, 1);
        let mut h = x.rem(&f);
        let mut d = 0usize;
        while f.degree().map_or(false, |df| df > 0) {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                out.push((f.degree().unwrap(), f.clone()));
                break;
            }
            h = h.pow_mod(q, &f);
            let g = (h.clone() - x.rem(&f)).gcd(&f);
            if g.degree().map_or(false, |dg| dg > 0) {
                out.push((d, g.clone()));
                f = f.divrem(&g).0.monic();
                h = h.rem(&f);
            }
        }
        out
    }

    /// Multiset of degrees of the irreducible factors of the squarefree part,
    /// sorted increasing.
    pub fn factor_degree_profile(&self) -> Vec<usize> {
        let mut profile = Vec::new();
        for (d, g) in self.distinct_degree_factorization() {
            let k = g.degree().unwrap() / d;
            profile.extend(std::iter::repeat(d).take(k));
        }
        profile.sort_unstable();
        profile
    }

    /// Roots in the coefficient field with multiplicities, found by dividing
    /// out linear factors of `gcd(f, x^q − x)`-free search: valid for any
    /// degree when the field is finite of small order, and for degree ≤ 2
    /// in general via the quadratic formula.
    pub fn roots_with_multiplicity(&self) -> Vec<(F, usize)> {
        match self.degree() {
            None | Some(0) => return Vec::new(),
            _ => {}
        }
        let candidates = self.root_candidates();
        let mut out = Vec::new();
        let one = F::from_descriptor(&self.field, 1).unwrap();
        for r in candidates {
            let lin = Poly::from_coeffs(&self.field, vec![-r.clone(), one.clone()]);
            let mut mult = 0usize;
            let mut f = self.clone();
            loop {
                let (q, rem) = f.divrem(&lin);
                if rem.is_zero() {
                    mult += 1;
                    f = q;
                } else {
                    break;
                }
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out
    }

    /// Distinct roots in the coefficient field.
    fn root_candidates(&self) -> Vec<F> {
        let deg = self.degree().unwrap_or(0);
        if deg == 1 {
            let a = self.coeff(1);
            let b = self.coeff(0);
            return vec![-(b.div_by(&a).unwrap())];
        }
        if deg == 2 {
            let a = self.coeff(2);
            let b = self.coeff(1);
            let c = self.coeff(0);
            let four = F::from_descriptor(&self.field, 4).unwrap();
            let two_a = a.clone() + a.clone();
            let disc = b.clone() * b.clone() - four * a.clone() * c;
            return match disc.sqrt() {
                None => Vec::new(),
                Some(s) => {
                    let r1 = (-b.clone() + s.clone()).div_by(&two_a).unwrap();
                    let r2 = (-b - s).div_by(&two_a).unwrap();
                    if r1 == r2 {
                        vec![r1]
                    } else {
                        vec![r1, r2]
                    }
                }
            };
        }
        // Higher degree: exhaustive scan over a small finite field.
        let q = self
            .field
            .order()
            .expect("root scan needs a finite field for degree > 2");
        assert!(q <= 1 << 22, "root scan field too large (order {q})");
        let p = self.field.characteristic().unwrap();
        let mut elements = Vec::with_capacity(q as usize);
        match &self.field {
            FieldDescriptor::Prime { .. } => {
                for n in 0..p {
                    elements.push(F::from_descriptor(&self.field, n as i64).unwrap());
                }
            }
            FieldDescriptor::Quadratic { r, .. } => {
                // Sweep a + b·s where s is the adjoined square root of the
                // nonresidue r; it is recovered as sqrt(embed(r)).
                let rv = F::from_descriptor(&self.field, *r as i64).unwrap();
                let s = rv.sqrt().expect("r has a root in its own quadratic extension");
                for a in 0..p {
                    for b in 0..p {
                        let av = F::from_descriptor(&self.field, a as i64).unwrap();
                        let bv = F::from_descriptor(&self.field, b as i64).unwrap();
                        elements.push(av + bv * s.clone());
                    }
                }
            }
            FieldDescriptor::Rationals => unreachable!("finite order"),
        }
        elements.into_iter().filter(|x| self.eval(x).is_zero()).collect()
    }

    /// Resultant of two polynomials via the Sylvester matrix.
    pub fn resultant(&self, rhs: &Self) -> F {
        let zero = F::from_descriptor(&self.field, 0).unwrap();
        let (m, n) = match (self.degree(), rhs.degree()) {
            (None, _) | (_, None) => return zero,
            (Some(0), Some(n)) => {
                // res(c, g) = c^deg g
                let mut acc = F::from_descriptor(&self.field, 1).unwrap();
                for _ in 0..n {
                    acc = acc * self.coeff(0).clone();
                }
                return acc;
            }
            (Some(m), Some(0)) => {
                let mut acc = F::from_descriptor(&self.field, 1).unwrap();
                for _ in 0..m {
                    acc = acc * rhs.coeff(0).clone();
                }
                return acc;
            }
            (Some(m), Some(n)) => (m, n),
        };
        let size = m + n;
        let mut rows: Vec<Vec<F>> = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![zero.clone(); size];
            for j in 0..=m {
                row[i + j] = self.coeff(m - j);
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![zero.clone(); size];
            for j in 0..=n {
                row[i + j] = rhs.coeff(n - j);
            }
            rows.push(row);
        }
        let mat = Matrix::from_rows(self.field.clone(), rows).expect("square Sylvester matrix");
        mat.det().expect("square")
    }
}

impl<F: Field> std::ops::Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = F::from_descriptor(&self.field, 0).unwrap();
        let mut out = vec![zero; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        Poly::from_coeffs(&self.field, out)
    }
}

impl<F: Field> std::ops::Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        self + (-rhs)
    }
}

impl<F: Field> std::ops::Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl<F: Field> std::fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;
    use num_rational::BigRational;

    fn fp97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let fd = fp97();
        let f = Poly::<Fp>::from_coeffs(&fd, vec![Fp::new(3, 97), Fp::new(0, 97), Fp::new(1, 97), Fp::new(5, 97)]);
        let g = Poly::from_coeffs(&fd, vec![Fp::new(1, 97), Fp::new(2, 97)]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g) + r, f);
        assert!(f.divrem(&g).1.degree().map_or(true, |d| d < 1));
    }

    #[test]
    fn gcd_of_products_with_common_factor() {
        let fd = fp97();
        let common = Poly::<Fp>::from_coeffs(&fd, vec![Fp::new(5, 97), Fp::new(1, 97)]); // x+5
        let a = common.mul(&Poly::from_coeffs(&fd, vec![Fp::new(1, 97), Fp::new(1, 97)]));
        let b = common.mul(&Poly::from_coeffs(&fd, vec![Fp::new(2, 97), Fp::new(1, 97)]));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn radical_strips_multiplicities() {
        let fd = fp97();
        let one = Fp::new(1, 97);
        let lin1 = Poly::from_coeffs(&fd, vec![Fp::new(3, 97), one]);
        let lin2 = Poly::from_coeffs(&fd, vec![Fp::new(10, 97), one]);
        let f = lin1.pow(3).mul(&lin2.pow(2));
        assert_eq!(f.radical(), lin1.mul(&lin2).monic());
    }

    #[test]
    fn radical_of_pth_power_in_char_5() {
        let fd = FieldDescriptor::prime(5).unwrap();
        // (x - 2)^5 = x^5 - 2^5 = x^5 - 2 over F_5.
        let f = Poly::from_coeffs(
            &fd,
            vec![Fp::new(-2, 5), Fp::new(0, 5), Fp::new(0, 5), Fp::new(0, 5), Fp::new(0, 5), Fp::new(1, 5)],
        );
        let expected = Poly::from_coeffs(&fd, vec![Fp::new(-2, 5), Fp::new(1, 5)]);
        assert_eq!(f.radical(), expected);
    }

    #[test]
    fn ddf_profile_of_known_factorization() {
        let fd = fp97();
        // x^2 + 1 over F_97: -1 is a QR mod 97 (97 ≡ 1 mod 4) so it splits.
        let f = Poly::from_coeffs(&fd, vec![Fp::new(1, 97), Fp::new(0, 97), Fp::new(1, 97)]);
        assert_eq!(f.factor_degree_profile(), vec![1, 1]);
        // x^2 - 5: 5 is a non-residue mod 97, so irreducible.
        let g = Poly::from_coeffs(&fd, vec![Fp::new(-5, 97), Fp::new(0, 97), Fp::new(1, 97)]);
        assert_eq!(g.factor_degree_profile(), vec![2]);
        // Product of a linear, the same linear, and the irreducible quadratic:
        let lin = Poly::from_coeffs(&fd, vec![Fp::new(7, 97), Fp::new(1, 97)]);
        let h = lin.pow(2).mul(&g);
        assert_eq!(h.factor_degree_profile(), vec![1, 2]);
    }

    #[test]
    fn ddf_total_degree_is_preserved() {
        use rand::SeedableRng;
        let fd = fp97();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let donor = Fp::new(0, 97);
        for _ in 0..10 {
            let coeffs: Vec<Fp> = (0..7)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let f = Poly::from_coeffs(&fd, coeffs);
            if f.degree().map_or(true, |d| d < 1) {
                continue;
            }
            let rad = f.radical();
            let total: usize = f.factor_degree_profile().iter().sum();
            assert_eq!(Some(total), rad.degree());
        }
    }

    #[test]
    fn quadratic_roots_match_factorization() {
        let fd = fp97();
        let one = Fp::new(1, 97);
        // (x-4)(x-9)
        let f = Poly::from_roots(&fd, &[Fp::new(4, 97), Fp::new(9, 97)]);
        let mut roots = f.roots_with_multiplicity();
        roots.sort_by_key(|(r, _)| r.residue());
        assert_eq!(roots, vec![(Fp::new(4, 97), 1), (Fp::new(9, 97), 1)]);
        // (x-4)^2
        let g = Poly::from_roots(&fd, &[Fp::new(4, 97), Fp::new(4, 97)]);
        assert_eq!(g.roots_with_multiplicity(), vec![(Fp::new(4, 97), 2)]);
        // irreducible
        let h = Poly::from_coeffs(&fd, vec![Fp::new(-5, 97), Fp::new(0, 97), one]);
        assert!(h.roots_with_multiplicity().is_empty());
    }

    #[test]
    fn rational_quadratic_roots() {
        let fd = FieldDescriptor::Rationals;
        let f: Poly<BigRational> = Poly::from_coeffs(
            &fd,
            vec![
                BigRational::from_integer(6.into()),
                BigRational::from_integer((-5).into()),
                BigRational::from_integer(1.into()),
            ],
        );
        let mut roots: Vec<i64> = f
            .roots_with_multiplicity()
            .iter()
            .map(|(r, _)| {
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn resultant_detects_common_roots() {
        let fd = fp97();
        let f = Poly::from_roots(&fd, &[Fp::new(2, 97), Fp::new(3, 97)]);
        let g = Poly::from_roots(&fd, &[Fp::new(3, 97), Fp::new(11, 97)]);
        assert!(f.resultant(&g).is_zero());
        let h = Poly::from_roots(&fd, &[Fp::new(12, 97), Fp::new(13, 97)]);
        assert!(!f.resultant(&h).is_zero());
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        let fd = fp97();
        let roots_f = [Fp::new(1, 97), Fp::new(5, 97)];
        let roots_g = [Fp::new(2, 97), Fp::new(8, 97), Fp::new(20, 97)];
        let f = Poly::from_roots(&fd, &roots_f);
        let g = Poly::from_roots(&fd, &roots_g);
        let mut expect = Fp::new(1, 97);
        for a in &roots_f {
            for b in &roots_g {
                expect = expect * (*a - *b);
            }
        }
        assert_eq!(f.resultant(&g), expect);
    }

    #[test]
    fn pow_mod_agrees_with_direct_power() {
        let fd = fp97();
        let x = Poly::<Fp>::monomial(&fd, 1, 1);
        let modulus = Poly::from_coeffs(&fd, vec![Fp::new(3, 97), Fp::new(1, 97), Fp::new(1, 97)]);
        let direct = x.pow(20).rem(&modulus);
        assert_eq!(x.pow_mod(20, &modulus), direct);
    }

    #[test]
    fn frobenius_power_splits_linears() {
        // gcd(x^q - x, f) collects exactly the roots in F_q.
        let fd = fp97();
        let f = Poly::from_roots(&fd, &[Fp::new(1, 97), Fp::new(2, 97)])
            .mul(&Poly::from_coeffs(&fd, vec![Fp::new(-5, 97), Fp::new(0, 97), Fp::new(1, 97)]));
        let x = Poly::monomial(&fd, 1, 1);
        let frob = x.pow_mod(97, &f);
        let linear_part = (frob - x.rem(&f)).gcd(&f);
        assert_eq!(linear_part.degree(), Some(2));
    }
}
