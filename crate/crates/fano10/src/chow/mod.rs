//! Exact Riemann–Roch and intersection-theoretic bookkeeping.
//!
//! Euler characteristics on the degree-10 threefold, its K3 hyperplane
//! sections, the quintic del Pezzo surfaces cut by 5-planes, and the
//! projective line are computed from Chern data by exact integer
//! arithmetic. A small rewrite ledger tracks divisor classes through the
//! elementary transformations along conics and lines, and the dimension
//! counts for the moduli argument are assembled from independently
//! computed inputs.

mod delpezzo;
mod transform;

pub use delpezzo::{
    delpezzo_checks, delpezzo_residuals, dp5_conic_pencils, dp5_lines, is_nef, Dp5Class,
    ResidualCase, DP5_CONIC_CLASSES,
};
pub use transform::{
    normal_form, normal_form_with, pairing_checks, rules, sigma_system_degree,
    transform_ledger, DivisorClass, RuleSet, Sym, TransformKind, TransformLedger,
};

/// Errors from Chow-level computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChowError {
    /// Chern data that cannot come from a coherent sheaf on the model.
    #[error("non-integral Euler characteristic: {context}")]
    NonIntegral {
        /// Description of the offending data.
        context: String,
    },
    /// Malformed input.
    #[error("bad input: {0}")]
    BadInput(String),
}

/// A labelled integer identity, used by the frozen suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueCheck {
    /// What is being computed.
    pub label: String,
    /// The frozen expected value.
    pub expected: i128,
    /// The freshly computed value.
    pub computed: i128,
}

impl ValueCheck {
    /// Whether the identity holds.
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// Chern data of a sheaf on the degree-10 threefold: `c₁ = a·H`, and the
/// degrees `c₂·H` and `c₃` as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreefoldData {
    /// Rank.
    pub rank: i64,
    /// Coefficient of `H` in `c₁`.
    pub a: i64,
    /// Degree `c₂·H` (negative for torsion sheaves supported on curves).
    pub c2_h: i64,
    /// Degree of `c₃`.
    pub c3: i64,
}

/// Degree of the anticanonically polarized threefold: `H³`.
pub const X10_DEGREE: i64 = 10;

/// `c₂(T_X)·H`, derived from `χ(O_X) = 1` via `χ(O) = c₁c₂/24`:
/// with `c₁(X) = H` this forces `c₂(T)·H = 24`.
pub fn x10_c2t_h() -> i64 {
    24
}

/// Euler characteristic on the threefold by Riemann–Roch:
/// `χ(F) = ∫ ch(F)·td(X)` expanded in the degrees above. The result is an
/// integer exactly when `c₃ ≡ c₂·H·(a+1) (mod 2)`; data violating that
/// parity cannot come from a sheaf and is rejected.
pub fn x10_euler(f: &ThreefoldData) -> Result<i128, ChowError> {
    let (r, a, d, e) = (f.rank as i128, f.a as i128, f.c2_h as i128, f.c3 as i128);
    let deg = X10_DEGREE as i128;
    let c2t = x10_c2t_h() as i128;
    // χ = deg(ch₃) + deg(ch₂·H)/2 + a·(deg + c2t)/12 + r, assembled over
    // the common denominator 6.
    let six_chi = (deg * a * a * a - 3 * a * d + 3 * e)
        + 3 * (deg / 2 * a * a - d)
        + (deg + c2t) / 2 * a
        + 6 * r;
    if six_chi % 6 != 0 {
        return Err(ChowError::NonIntegral {
            context: format!(
                "rank {r}, c1 = {a}H, c2·H = {d}, c3 = {e}: 6χ = {six_chi}"
            ),
        });
    }
    Ok(six_chi / 6)
}

/// Whether threefold Chern data satisfies the integrality parity.
pub fn x10_parity_ok(f: &ThreefoldData) -> bool {
    (f.c3 - f.c2_h * (f.a + 1)).rem_euclid(2) == 0
}

/// Euler characteristic on the degree-10 K3 section: `χ(F) = 2r + 5a² − c₂`
/// for `c₁ = a·H`, `H² = 10`, `χ(O) = 2`.
pub fn k3_euler(rank: i64, a: i64, c2: i64) -> i128 {
    2 * rank as i128 + 5 * (a as i128) * (a as i128) - c2 as i128
}

/// Euler characteristic of `O(d)` on the projective line.
pub fn p1_euler(d: i64) -> i128 {
    d as i128 + 1
}

/// Euler characteristic of the twist `T(k)` for `T` the structure sheaf of
/// a line twisted by `O(−1)`, pushed forward to the threefold: the Chern
/// data is rank 0, `c₂·H = −1`, `c₃ = 2k − 1`, and the result is `k`.
pub fn torsion_euler(k: i64) -> Result<i128, ChowError> {
    let on_x = x10_euler(&ThreefoldData { rank: 0, a: 0, c2_h: -1, c3: 2 * k - 1 })?;
    let on_line = p1_euler(k - 1);
    if on_x != on_line {
        return Err(ChowError::BadInput(format!(
            "pushforward mismatch: {on_x} on the threefold, {on_line} on the line"
        )));
    }
    Ok(on_x)
}

/// The frozen Riemann–Roch suite: structure sheaves, the two rank-2
/// bundles, endomorphisms, the K3 restriction, and torsion twists.
pub fn hrr_suite() -> Vec<ValueCheck> {
    let mut out = Vec::new();
    let mut push = |label: &str, expected: i128, computed: Result<i128, ChowError>| {
        // A computation error is recorded as a sentinel that can never
        // match, so the suite reports it as a failure rather than panicking.
        let computed = computed.unwrap_or(i128::MIN);
        out.push(ValueCheck { label: label.to_string(), expected, computed });
    };
    push(
        "chi(O_X)",
        1,
        x10_euler(&ThreefoldData { rank: 1, a: 0, c2_h: 0, c3: 0 }),
    );
    push(
        "chi(O_X(1))",
        8,
        x10_euler(&ThreefoldData { rank: 1, a: 1, c2_h: 0, c3: 0 }),
    );
    push(
        "chi(O_X(2))",
        30,
        x10_euler(&ThreefoldData { rank: 1, a: 2, c2_h: 0, c3: 0 }),
    );
    push(
        "chi(embedding bundle), rank 2 c1=1 c2=4",
        5,
        x10_euler(&ThreefoldData { rank: 2, a: 1, c2_h: 4, c3: 0 }),
    );
    push(
        "chi(moduli sheaf), rank 2 c1=1 c2=5",
        4,
        x10_euler(&ThreefoldData { rank: 2, a: 1, c2_h: 5, c3: 0 }),
    );
    push(
        "chi(endomorphisms), rank 4 c2=10",
        -1,
        x10_euler(&ThreefoldData { rank: 4, a: 0, c2_h: 10, c3: 0 }),
    );
    push("chi(K3 restriction), rank 4 c2=6", 2, Ok(k3_euler(4, 0, 6)));
    push("chi(O_K3)", 2, Ok(k3_euler(1, 0, 0)));
    for k in [-3i64, 0, 1, 5] {
        push(&format!("chi(T({k}))"), k as i128, torsion_euler(k));
    }
    out
}

/// Inputs to the moduli-dimension chain that are computed elsewhere in the
/// crate and wired in by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionInputs {
    /// Dimension of the space of quadrics through the fourfold.
    pub quadrics_through_w: i64,
    /// Dimension of the automorphism group of the fourfold.
    pub aut_w: i64,
    /// Largest eigenspace multiplicity over nontrivial finite-order actions.
    pub max_eigen_multiplicity: i64,
    /// Rank of the unipotent comparison endomorphism minus the identity.
    pub unipotent_rank: i64,
}

/// The standard values of the wired inputs.
pub fn standard_dimension_inputs() -> DimensionInputs {
    DimensionInputs {
        quadrics_through_w: 5,
        aut_w: 8,
        max_eigen_multiplicity: 20,
        unipotent_rank: 18,
    }
}

/// The moduli-dimension chain as a frozen list of identities and
/// inequalities (an inequality check records 1 for true).
pub fn dimension_counts(inputs: &DimensionInputs) -> Vec<ValueCheck> {
    let sym2 = 8 * (8 + 1) / 2; // dim Sym² of the 8-dimensional space
    let linear_system = sym2 - inputs.quadrics_through_w - 1;
    let moduli = linear_system - inputs.aut_w;
    let period_fiber = 2; // the two surfaces of elementary transforms
    let jacobian_family = moduli - period_fiber;
    let eigen_parameters = inputs.max_eigen_multiplicity + inputs.quadrics_through_w;
    let unipotent_conditions = inputs.unipotent_rank - inputs.quadrics_through_w;
    vec![
        ValueCheck {
            label: "dim of the quadric linear system".into(),
            expected: 30,
            computed: linear_system as i128,
        },
        ValueCheck {
            label: "moduli dimension".into(),
            expected: 22,
            computed: moduli as i128,
        },
        ValueCheck {
            label: "dimension of the family of intermediate Jacobians".into(),
            expected: 20,
            computed: jacobian_family as i128,
        },
        ValueCheck {
            label: "semisimple eigen parameters".into(),
            expected: 25,
            computed: eigen_parameters as i128,
        },
        ValueCheck {
            label: "semisimple bound holds (25 < 36 - 7)".into(),
            expected: 1,
            computed: i128::from(eigen_parameters < sym2 - 7),
        },
        ValueCheck {
            label: "unipotent conditions".into(),
            expected: 13,
            computed: unipotent_conditions as i128,
        },
        ValueCheck {
            label: "unipotent bound holds (13 > 7)".into(),
            expected: 1,
            computed: i128::from(unipotent_conditions > 7),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_sheaf_twists() {
        // χ(O(t)) for small t; degree-10 threefold with K = −H.
        let chi = |t: i64| {
            x10_euler(&ThreefoldData { rank: 1, a: t, c2_h: 0, c3: 0 }).unwrap()
        };
        assert_eq!(chi(0), 1);
        assert_eq!(chi(1), 8); // the space of linear forms on the ambient P⁷
        assert_eq!(chi(2), 30);
        assert_eq!(chi(-1), -1);
        // Serre duality: χ(O(t)) = −χ(O(−1−t)).
        for t in -6..=6 {
            assert_eq!(chi(t), -chi(-1 - t), "t = {t}");
        }
    }

    #[test]
    fn hrr_suite_passes() {
        for check in hrr_suite() {
            assert!(check.passed(), "{}: {} vs {}", check.label, check.expected, check.computed);
        }
    }

    #[test]
    fn torsion_twists_count_points() {
        for k in -5..=5 {
            assert_eq!(torsion_euler(k).unwrap(), k as i128);
        }
    }

    #[test]
    fn parity_violations_are_rejected() {
        // c₃ must have the parity of c₂·H·(a+1).
        let bad = ThreefoldData { rank: 1, a: 0, c2_h: 1, c3: 0 };
        assert!(!x10_parity_ok(&bad));
        assert!(matches!(x10_euler(&bad), Err(ChowError::NonIntegral { .. })));
        let good = ThreefoldData { rank: 1, a: 0, c2_h: 1, c3: 1 };
        assert!(x10_parity_ok(&good));
        assert!(x10_euler(&good).is_ok());
    }

    #[test]
    fn integrality_sweep_matches_parity() {
        // Over a grid of Chern data, the engine returns an integer exactly
        // when the parity condition holds.
        let mut conforming = 0usize;
        for r in 0..3i64 {
            for a in -2..=2i64 {
                for d in -3..=3i64 {
                    for e in -3..=3i64 {
                        let data = ThreefoldData { rank: r, a, c2_h: d, c3: e };
                        let ok = x10_euler(&data).is_ok();
                        assert_eq!(ok, x10_parity_ok(&data), "{data:?}");
                        conforming += usize::from(ok);
                    }
                }
            }
        }
        // Per rank: 12 pairs (a, d) force odd c₃ (4 choices in −3..=3) and
        // the other 23 force even c₃ (3 choices).
        assert_eq!(conforming, 3 * (12 * 4 + 23 * 3));
    }

    #[test]
    fn k3_values() {
        assert_eq!(k3_euler(1, 0, 0), 2);
        assert_eq!(k3_euler(1, 1, 0), 7); // χ(O_S(1)) = 2 + 5
        assert_eq!(k3_euler(2, 1, 5), 4); // restriction of the moduli sheaf
        assert_eq!(k3_euler(2, 1, 4), 5); // restriction of the embedding bundle
    }

    #[test]
    fn dimension_chain_passes() {
        for check in dimension_counts(&standard_dimension_inputs()) {
            assert!(check.passed(), "{}: {} vs {}", check.label, check.expected, check.computed);
        }
    }
}
