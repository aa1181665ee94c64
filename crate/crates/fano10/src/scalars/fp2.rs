//! Quadratic-extension scalars `F_p² = F_p(√r)`.

use super::fp::{pow_mod, sqrt_mod};
use super::{Field, FieldDescriptor, ScalarError};
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

/// Element `a + b√r` of `F_p²`, with `r` a fixed quadratic nonresidue mod `p`.
/// As with [`super::Fp`], `p = 0` marks unbound constants from `zero()`/`one()`.
#[derive(Debug, Clone, Copy)]
pub struct Fp2 {
    a: u64,
    b: u64,
    p: u64,
    r: u64,
}

impl Fp2 {
    /// Constructs `a + b√r` in the field described by a validated quadratic
    /// descriptor.
    pub fn new(a: i64, b: i64, fd: &FieldDescriptor) -> Result<Self, ScalarError> {
        match fd {
            FieldDescriptor::Quadratic { p, r } => Ok(Fp2 {
                a: a.rem_euclid(*p as i64) as u64,
                b: b.rem_euclid(*p as i64) as u64,
                p: *p,
                r: *r,
            }),
            other => Err(ScalarError::KindMismatch {
                expected: "fp2:<p>",
                got: other.to_string(),
            }),
        }
    }

    /// The base-field component pair `(a, b)` with `self = a + b√r`.
    pub fn components(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// The modulus (0 for unbound constants).
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// True when the value lies in the prime subfield `F_p`.
    pub fn in_base_field(&self) -> bool {
        self.b == 0
    }

    /// Field norm `N(a + b√r) = a² − r·b² ∈ F_p`.
    pub fn norm(&self) -> u64 {
        assert!(self.p > 0, "norm of an unbound constant");
        let p = self.p as u128;
        let a2 = (self.a as u128 * self.a as u128) % p;
        let rb2 = (self.r as u128 * self.b as u128 % p * self.b as u128) % p;
        ((a2 + p - rb2) % p) as u64
    }

    fn ctx(&self, other: &Fp2) -> (u64, u64) {
        match (self.p, other.p) {
            (0, _) => (other.p, other.r),
            (_, 0) => (self.p, self.r),
            (p, q) if p == q => (p, self.r),
            (p, q) => panic!("mixed quadratic extensions of F_{p} and F_{q}"),
        }
    }

    fn reduced(a: u64, b: u64, p: u64, r: u64) -> Fp2 {
        if p == 0 {
            Fp2 { a, b, p: 0, r: 0 }
        } else {
            Fp2 { a: a % p, b: b % p, p, r }
        }
    }

    /// `self^e` by square-and-multiply.
    pub fn pow(&self, e: u64) -> Fp2 {
        let mut acc = if self.p == 0 {
            Fp2 { a: 1, b: 0, p: 0, r: 0 }
        } else {
            Fp2 { a: 1, b: 0, p: self.p, r: self.r }
        };
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Fp2 {
    fn eq(&self, other: &Self) -> bool {
        match (self.p, other.p) {
            (0, 0) => self.a == other.a && self.b == other.b,
            (0, q) => self.a % q == other.a && self.b % q == other.b,
            (p, 0) => self.a == other.a % p && self.b == other.b % p,
            (p, q) => p == q && self.a == other.a && self.b == other.b,
        }
    }
}

impl Eq for Fp2 {}

impl std::fmt::Display for Fp2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}s", self.a, self.b)
        }
    }
}

impl std::ops::Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        let (p, r) = self.ctx(&rhs);
        if p == 0 {
            return Fp2 { a: self.a + rhs.a, b: self.b + rhs.b, p: 0, r: 0 };
        }
        Fp2::reduced(self.a % p + rhs.a % p, self.b % p + rhs.b % p, p, r)
    }
}

impl std::ops::Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self + (-rhs)
    }
}

impl std::ops::Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        if self.p == 0 {
            if self.a == 0 && self.b == 0 {
                return self;
            }
            panic!("cannot negate an unbound F_p^2 constant; bind it to a field first");
        }
        Fp2 {
            a: if self.a == 0 { 0 } else { self.p - self.a },
            b: if self.b == 0 { 0 } else { self.p - self.b },
            p: self.p,
            r: self.r,
        }
    }
}

impl std::ops::Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        let (p, r) = self.ctx(&rhs);
        if p == 0 {
            return Fp2 { a: self.a * rhs.a, b: self.a * rhs.b + self.b * rhs.a, p: 0, r: 0 };
        }
        let pp = p as u128;
        let (a1, b1) = (self.a as u128 % pp, self.b as u128 % pp);
        let (a2, b2) = (rhs.a as u128 % pp, rhs.b as u128 % pp);
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + r b1 b2 + (a1 b2 + b1 a2) s
        let a = (a1 * a2 % pp + (r as u128) * b1 % pp * b2 % pp) % pp;
        let b = (a1 * b2 % pp + b1 * a2 % pp) % pp;
        Fp2 { a: a as u64, b: b as u64, p, r }
    }
}

impl Zero for Fp2 {
    fn zero() -> Self {
        Fp2 { a: 0, b: 0, p: 0, r: 0 }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl One for Fp2 {
    fn one() -> Self {
        Fp2 { a: 1, b: 0, p: 0, r: 0 }
    }
    fn is_one(&self) -> bool {
        self.b == 0 && if self.p == 0 { self.a == 1 } else { self.a % self.p == 1 }
    }
}

impl Field for Fp2 {
    fn descriptor(&self) -> Option<FieldDescriptor> {
        if self.p == 0 {
            None
        } else {
            Some(FieldDescriptor::Quadratic { p: self.p, r: self.r })
        }
    }

    fn from_descriptor(fd: &FieldDescriptor, n: i64) -> Result<Self, ScalarError> {
        Fp2::new(n, 0, fd)
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.p == 0 {
            return Ok(*self); // unbound one
        }
        // (a + b s)^{-1} = (a - b s) / N where N = a² − r b².
        let n = self.norm();
        let ninv = pow_mod(n, self.p - 2, self.p);
        let conj = self.frobenius();
        let pp = self.p as u128;
        Ok(Fp2 {
            a: ((conj.a as u128 * ninv as u128) % pp) as u64,
            b: ((conj.b as u128 * ninv as u128) % pp) as u64,
            p: self.p,
            r: self.r,
        })
    }

    fn sqrt(&self) -> Option<Self> {
        if self.p == 0 {
            return if self.b == 0 && (self.a == 0 || self.a == 1) { Some(*self) } else { None };
        }
        let (p, r) = (self.p, self.r);
        if self.is_zero() {
            return Some(*self);
        }
        if self.b == 0 {
            // sqrt of a base-field element: either in F_p, or b·√r form.
            if let Some(s) = sqrt_mod(self.a, p) {
                return Some(Fp2 { a: s, b: 0, p, r });
            }
            // a = r·(a/r), and a/r is then a residue; sqrt = sqrt(a/r)·√r.
            let rinv = pow_mod(r, p - 2, p);
            let q = ((self.a as u128 * rinv as u128) % p as u128) as u64;
            let s = sqrt_mod(q, p)?;
            return Some(Fp2 { a: 0, b: s, p, r });
        }
        // General case: (x + y s)² = a + b s needs x² + r y² = a, 2xy = b.
        // x² is a root of T(a − T) = r(b/2)², i.e. T² − aT + r(b/2)² = 0.
        let pp = p as u128;
        let inv2 = pow_mod(2, p - 2, p);
        let bh = (self.b as u128 * inv2 as u128 % pp) as u64; // b/2
        let n = self.norm();
        let s = sqrt_mod(n, p)?; // sqrt of the norm must exist for squares
        for t in [
            ((self.a as u128 + s as u128) % pp * inv2 as u128 % pp) as u64,
            ((self.a as u128 + pp - s as u128 % pp) % pp * inv2 as u128 % pp) as u64,
        ] {
            if let Some(x) = sqrt_mod(t, p) {
                if x != 0 {
                    let xinv = pow_mod(x, p - 2, p);
                    let y = (bh as u128 * xinv as u128 % pp) as u64;
                    let cand = Fp2 { a: x, b: y, p, r };
                    if cand * cand == *self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    fn frobenius(&self) -> Self {
        if self.p == 0 || self.b == 0 {
            return *self;
        }
        Fp2 { a: self.a, b: self.p - self.b, p: self.p, r: self.r }
    }

    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        assert!(self.p > 0, "cannot sample from an unbound F_p^2 constant");
        Fp2 {
            a: rng.gen_range(0..self.p),
            b: rng.gen_range(0..self.p),
            p: self.p,
            r: self.r,
        }
    }

    fn embed(&self, n: i64) -> Self {
        assert!(self.p > 0, "cannot embed into an unbound F_p^2 constant");
        Fp2 {
            a: n.rem_euclid(self.p as i64) as u64,
            b: 0,
            p: self.p,
            r: self.r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd() -> FieldDescriptor {
        FieldDescriptor::quadratic(97).unwrap()
    }

    #[test]
    fn field_axioms_smoke() {
        let d = fd();
        let x = Fp2::new(3, 5, &d).unwrap();
        let y = Fp2::new(40, 96, &d).unwrap();
        assert_eq!(x * y, y * x);
        assert_eq!((x + y) - y, x);
        let xi = x.inv().unwrap();
        assert!((x * xi).is_one());
        assert_eq!(x.frobenius().frobenius(), x);
        // Norm is multiplicative.
        assert_eq!((x * y).norm(), ((x.norm() as u128 * y.norm() as u128) % 97) as u64);
    }

    #[test]
    fn every_element_has_a_square_or_is_a_nonsquare_with_square_product() {
        // In F_p², exactly (p²+1)/2 + ... structure check on a sample: z² must
        // always have a sqrt, and sqrt must square back.
        let d = fd();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        use rand::SeedableRng;
        for _ in 0..200 {
            let donor = Fp2::new(0, 0, &d).unwrap();
            let z = donor.random_like(&mut rng);
            let sq = z * z;
            let s = sq.sqrt().expect("a square must have a root");
            assert_eq!(s * s, sq);
        }
    }

    #[test]
    fn base_field_roots_split_correctly() {
        let d = fd();
        // 5 is the chosen nonresidue mod 97, so √5 = 0 + 1·s.
        let five = Fp2::new(5, 0, &d).unwrap();
        let s = five.sqrt().unwrap();
        assert_eq!(s * s, five);
        assert!(!s.in_base_field());
        // 2 is a residue mod 97: root stays in the base field.
        let two = Fp2::new(2, 0, &d).unwrap();
        let t = two.sqrt().unwrap();
        assert!(t.in_base_field());
    }
}
