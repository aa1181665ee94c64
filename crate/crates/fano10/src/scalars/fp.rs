//! Prime-field scalars with runtime modulus.

use super::{legendre, Field, FieldDescriptor, ScalarError};
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

/// Element of `F_p`. The modulus travels with the value; `p = 0` marks the
/// unbound additive/multiplicative constants produced by [`Zero`]/[`One`],
/// which bind to a concrete field on first contact with a bound value.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    /// Constructs `v mod p`. The modulus must come from a validated
    /// [`FieldDescriptor`].
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(p > 0);
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    /// Constructs from an already-reduced residue.
    pub fn from_residue(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    /// Canonical representative in `0..p`.
    pub fn residue(&self) -> u64 {
        self.v
    }

    /// The modulus (0 for unbound constants).
    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn unify(&self, other: &Fp) -> u64 {
        match (self.p, other.p) {
            (0, q) => q,
            (p, 0) => p,
            (p, q) if p == q => p,
            (p, q) => panic!("mixed prime fields F_{p} and F_{q}"),
        }
    }

    /// `self^e` by square-and-multiply.
    pub fn pow(&self, e: u64) -> Fp {
        if self.p == 0 {
            // Unbound 0 or 1.
            return if e == 0 { Fp { v: 1, p: 0 } } else { *self };
        }
        Fp {
            v: pow_mod(self.v, e, self.p),
            p: self.p,
        }
    }
}

/// `b^e mod m` with 128-bit intermediates.
pub(crate) fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base: u128 = (b % m) as u128;
    let m128 = m as u128;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks square root mod p; `None` for nonresidues.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Write p-1 = q·2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = super::smallest_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
            i += 1;
            if i == m {
                return None; // unreachable for residues
            }
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = ((b as u128 * b as u128) % p as u128) as u64;
        }
        m = i;
        c = ((b as u128 * b as u128) % p as u128) as u64;
        t = ((t as u128 * c as u128) % p as u128) as u64;
        r = ((r as u128 * b as u128) % p as u128) as u64;
    }
    Some(r)
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.p, other.p) {
            (0, 0) => self.v == other.v,
            (0, q) => self.v % q == other.v,
            (p, 0) => self.v == other.v % p,
            (p, q) => p == q && self.v == other.v,
        }
    }
}

impl Eq for Fp {}

impl std::fmt::Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = self.unify(&rhs);
        if p == 0 {
            return Fp { v: self.v + rhs.v, p: 0 };
        }
        let mut v = self.v % p + rhs.v % p;
        if v >= p {
            v -= p;
        }
        Fp { v, p }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            if self.v == 0 {
                return self;
            }
            panic!("cannot negate an unbound F_p constant; bind it to a field first");
        }
        if self.v == 0 {
            self
        } else {
            Fp { v: self.p - self.v, p: self.p }
        }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = self.unify(&rhs);
        if p == 0 {
            return Fp { v: self.v * rhs.v, p: 0 };
        }
        let v = ((self.v % p) as u128 * (rhs.v % p) as u128 % p as u128) as u64;
        Fp { v, p }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        if self.p == 0 {
            self.v == 1
        } else {
            self.v % self.p == 1 % self.p
        }
    }
}

impl Field for Fp {
    fn descriptor(&self) -> Option<FieldDescriptor> {
        if self.p == 0 {
            None
        } else {
            Some(FieldDescriptor::Prime { p: self.p })
        }
    }

    fn from_descriptor(fd: &FieldDescriptor, n: i64) -> Result<Self, ScalarError> {
        match fd {
            FieldDescriptor::Prime { p } => Ok(Fp::new(n, *p)),
            other => Err(ScalarError::KindMismatch {
                expected: "fp:<p>",
                got: other.to_string(),
            }),
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.v == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        if self.p == 0 {
            // Unbound one.
            return Ok(*self);
        }
        Ok(Fp {
            v: pow_mod(self.v, self.p - 2, self.p),
            p: self.p,
        })
    }

    fn sqrt(&self) -> Option<Self> {
        if self.p == 0 {
            return if self.v == 0 || self.v == 1 { Some(*self) } else { None };
        }
        sqrt_mod(self.v, self.p).map(|r| Fp { v: r, p: self.p })
    }

    fn frobenius(&self) -> Self {
        *self
    }

    fn random_like(&self, rng: &mut dyn RngCore) -> Self {
        assert!(self.p > 0, "cannot sample from an unbound F_p constant");
        Fp {
            v: rng.gen_range(0..self.p),
            p: self.p,
        }
    }

    fn embed(&self, n: i64) -> Self {
        assert!(self.p > 0, "cannot embed into an unbound F_p constant");
        Fp::new(n, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_inverse_in_f97() {
        let a = Fp::new(41, 97);
        let b = Fp::new(73, 97);
        assert_eq!((a + b).residue(), (41 + 73) % 97);
        assert_eq!((a * b).residue(), 41 * 73 % 97);
        assert_eq!((a - b).residue(), (41 + 97 - 73) % 97);
        let inv = a.inv().unwrap();
        assert!((a * inv).is_one());
        assert_eq!(Fp::new(0, 97).inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn unbound_constants_bind_on_contact() {
        let one: Fp = One::one();
        let a = Fp::new(40, 97);
        assert_eq!((one + a).residue(), 41);
        assert_eq!(one * a, a);
        let zero: Fp = Zero::zero();
        assert_eq!(zero + a, a);
        assert_eq!(zero, Fp::new(0, 97));
    }

    #[test]
    #[should_panic(expected = "mixed prime fields")]
    fn mixed_moduli_panic() {
        let _ = Fp::new(1, 7) + Fp::new(1, 11);
    }

    #[test]
    fn tonelli_shanks_square_roots() {
        for p in [5u64, 13, 17, 97, 101, 65537] {
            let mut squares = 0;
            for a in 0..p.min(200) {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(r as u128 * r as u128 % p as u128, a as u128 % p as u128);
                    squares += 1;
                }
            }
            assert!(squares > 0);
        }
    }

    #[test]
    fn primality_test_agrees_with_trial_division() {
        for n in 0..2000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "disagreement at {n}");
        }
        assert!(is_prime_u64((1 << 31) - 1)); // Mersenne prime 2^31 - 1
    }
}
