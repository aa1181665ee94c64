//! Exact-arithmetic verification engine for the geometry of degree-10 prime
//! Fano threefolds.
//!
//! The library reconstructs, at desk scale, the finite computations underlying
//! this family of varieties: the pencil of skew forms on a 5-space and its
//! kernel conic, the fourfold `W = G(2,V_5) ∩ P(V_8)` and its quadric sections
//! `X = W ∩ Ω`, cohomology of homogeneous bundles on the Grassmannian via the
//! Borel–Weil–Bott rule, exact-sequence dimension chases, automorphism and
//! eigenvalue counts, Riemann–Roch Euler characteristics, divisor-class
//! ledgers for elementary transformations, and the conic involution `ι` over
//! finite fields.
//!
//! # Organization
//!
//! * [`scalars`] — exact fields (arbitrary-precision rationals, prime fields
//!   `F_p`, quadratic extensions `F_p²`) and dense exact linear algebra.
//! * [`multilinear`] — functorial multilinear algebra: wedge/symmetric/tensor
//!   powers, induced maps, Plücker coordinates, eigen-multiplicity calculus.
//! * [`pencils`] — the standard skew-form pencil, its kernel conic, the
//!   isotropic space `U_3`, the spaces `V_8` and `L`, and the two rank facts
//!   feeding the cohomology chase.
//! * [`bbw`] — Borel–Weil–Bott oracle on `G(2,5)`, Cauchy decomposition of
//!   cotangent powers, and the exact-sequence ledger solver.
//! * [`chow`] — Riemann–Roch evaluators, divisor-class rewrite ledgers, del
//!   Pezzo lattice arithmetic, dimension-count identities.
//! * [`wx`] — concrete geometry of `W` and `X`: planes, the `κ` projection,
//!   conic classification, finite-field sampling, the involution `ι`,
//!   automorphisms, and the twisted-cubic parametrization.
//! * [`claims`] — the registry of verification claims C01–C21 with a
//!   deterministic runner and JSON reporting.
//!
//! The core is generic over an exact [`scalars::Field`]; every algorithm is
//! instantiated at the three concrete scalar types. Floating-point scalars are
//! deliberately unsupported: all results here are exact ranks, dimensions, and
//! integers.

pub mod bbw;
pub mod chow;
pub mod claims;
pub mod multilinear;
pub mod pencils;
pub mod scalars;
pub mod wx;

/// Arbitrary-precision rational scalar (the `rational` working field).
pub type Q = num_rational::BigRational;
/// Prime-field scalar with runtime modulus (the `fp:<p>` working field).
pub type Fp = scalars::Fp;
/// Quadratic-extension scalar `a + b√r` over `F_p` (the `fp2:<p>` working field).
pub type Fp2 = scalars::Fp2;

/// Dense exact matrix over the rationals.
pub type QMat = scalars::Matrix<Q>;
/// Dense exact matrix over a prime field.
pub type FpMat = scalars::Matrix<Fp>;
/// Dense exact matrix over a quadratic extension field.
pub type Fp2Mat = scalars::Matrix<Fp2>;

/// Univariate polynomial over the rationals.
pub type QPoly = scalars::Poly<Q>;
/// Univariate polynomial over a prime field.
pub type FpPoly = scalars::Poly<Fp>;

pub use scalars::{Field, FieldDescriptor};
