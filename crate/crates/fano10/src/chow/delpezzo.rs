//! The quintic del Pezzo surface cut out by the span of a conic and its
//! involutive partner.
//!
//! The surface is the blowup of the plane in four general points,
//! anticanonically embedded in the 5-plane spanned by the two conics.
//! Its Picard lattice is `Z⟨h, e₁, …, e₄⟩` with `h² = 1`, `eᵢ² = −1`, and
//! everything here is computed from that lattice: the five pencils of
//! conics, the residual curves of degree 6, and the genus of the full
//! hyperplane section.

use super::ValueCheck;

/// A divisor class by its coefficients in the basis `(h, e₁, …, e₄)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dp5Class(pub [i64; 5]);

impl Dp5Class {
    /// Intersection pairing on the lattice `diag(1, −1, −1, −1, −1)`.
    pub fn dot(&self, other: &Dp5Class) -> i64 {
        self.0[0] * other.0[0]
            - self.0[1] * other.0[1]
            - self.0[2] * other.0[2]
            - self.0[3] * other.0[3]
            - self.0[4] * other.0[4]
    }

    /// The canonical class `−3h + Σ eᵢ`.
    pub fn canonical() -> Dp5Class {
        Dp5Class([-3, 1, 1, 1, 1])
    }

    /// Degree in the anticanonical embedding.
    pub fn degree(&self) -> i64 {
        -self.dot(&Dp5Class::canonical())
    }

    /// Arithmetic genus by adjunction.
    pub fn arith_genus(&self) -> i64 {
        1 + (self.dot(self) + self.dot(&Dp5Class::canonical())) / 2
    }

    /// Euler characteristic by Riemann–Roch on the rational surface.
    pub fn euler(&self) -> i64 {
        1 + (self.dot(self) - self.dot(&Dp5Class::canonical())) / 2
    }

    /// Scale by an integer.
    pub fn scaled(&self, k: i64) -> Dp5Class {
        let mut out = self.0;
        for c in &mut out {
            *c *= k;
        }
        Dp5Class(out)
    }

    /// Difference of classes.
    pub fn minus(&self, other: &Dp5Class) -> Dp5Class {
        let mut out = self.0;
        for (c, o) in out.iter_mut().zip(other.0) {
            *c -= o;
        }
        Dp5Class(out)
    }
}

/// The ten lines: four exceptional curves and six strict transforms of
/// lines through two of the blown-up points.
pub fn dp5_lines() -> Vec<Dp5Class> {
    let mut out = Vec::new();
    for i in 1..=4 {
        let mut c = [0i64; 5];
        c[i] = 1;
        out.push(Dp5Class(c));
    }
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            let mut c = [0i64; 5];
            c[0] = 1;
            c[i] = -1;
            c[j] = -1;
            out.push(Dp5Class(c));
        }
    }
    out
}

/// Whether a class meets every line non-negatively.
pub fn is_nef(class: &Dp5Class) -> bool {
    dp5_lines().iter().all(|line| class.dot(line) >= 0)
}

/// The five pencils of conics: `h − eᵢ` and `2h − Σ eᵢ`.
pub const DP5_CONIC_CLASSES: usize = 5;

/// The conic pencil classes.
pub fn dp5_conic_pencils() -> Vec<Dp5Class> {
    let mut out = Vec::new();
    for i in 1..=4 {
        let mut c = [0i64; 5];
        c[0] = 1;
        c[i] = -1;
        out.push(Dp5Class(c));
    }
    out.push(Dp5Class([2, -1, -1, -1, -1]));
    out
}

/// One resolved residual case: a conic pencil and the sextic residual to
/// twice a member inside the double anticanonical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualCase {
    /// The conic pencil class.
    pub pencil: Dp5Class,
    /// The residual class `−2K − 2·pencil`.
    pub residual: Dp5Class,
    /// Degree of the residual.
    pub degree: i64,
    /// Arithmetic genus of the residual.
    pub genus: i64,
    /// Whether the residual class is nef.
    pub nef: bool,
    /// Intersection number of the residual with a pencil member.
    pub meets_conic: i64,
    /// Projective dimension of the residual's linear system.
    pub system_dim: i64,
}

/// Resolve every conic pencil on the surface.
pub fn delpezzo_residuals() -> Vec<ResidualCase> {
    let minus_2k = Dp5Class::canonical().scaled(-2);
    dp5_conic_pencils()
        .into_iter()
        .map(|pencil| {
            let residual = minus_2k.minus(&pencil.scaled(2));
            // h⁰ = χ for a nef class on the del Pezzo surface (no higher
            // cohomology), so the projective dimension is χ − 1.
            let system_dim = residual.euler() - 1;
            ResidualCase {
                degree: residual.degree(),
                genus: residual.arith_genus(),
                nef: is_nef(&residual),
                meets_conic: residual.dot(&pencil),
                pencil,
                residual,
                system_dim,
            }
        })
        .collect()
}

/// The frozen checks for the surface: pencil census, residual invariants,
/// and the full hyperplane-section curve.
pub fn delpezzo_checks() -> Vec<ValueCheck> {
    let mut out = Vec::new();
    let pencils = dp5_conic_pencils();
    out.push(ValueCheck {
        label: "number of conic pencils".into(),
        expected: DP5_CONIC_CLASSES as i128,
        computed: pencils.len() as i128,
    });
    for (i, p) in pencils.iter().enumerate() {
        out.push(ValueCheck {
            label: format!("pencil {i}: degree 2, genus 0, self-intersection 0"),
            expected: 1,
            computed: i128::from(
                p.degree() == 2 && p.arith_genus() == 0 && p.dot(p) == 0,
            ),
        });
    }
    for (i, case) in delpezzo_residuals().iter().enumerate() {
        out.push(ValueCheck {
            label: format!("residual {i}: smooth rational sextic class"),
            expected: 1,
            computed: i128::from(case.degree == 6 && case.genus == 0 && case.nef),
        });
        out.push(ValueCheck {
            label: format!("residual {i}: meets each conic of the pencil in 4 points"),
            expected: 4,
            computed: case.meets_conic.into(),
        });
    }
    // The two conics plus the residual make up a double anticanonical
    // curve: degree 10, arithmetic genus 6, the canonical-genus-6 section.
    let span_curve = Dp5Class::canonical().scaled(-2);
    out.push(ValueCheck {
        label: "span curve degree".into(),
        expected: 10,
        computed: span_curve.degree().into(),
    });
    out.push(ValueCheck {
        label: "span curve genus".into(),
        expected: 6,
        computed: span_curve.arith_genus().into(),
    });
    // The surface itself.
    let minus_k = Dp5Class::canonical().scaled(-1);
    out.push(ValueCheck {
        label: "anticanonical degree of the surface".into(),
        expected: 5,
        computed: minus_k.dot(&minus_k).into(),
    });
    out.push(ValueCheck {
        label: "number of lines".into(),
        expected: 10,
        computed: dp5_lines().len() as i128,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_basics() {
        let k = Dp5Class::canonical();
        assert_eq!(k.dot(&k), 5);
        // Anticanonical sections are elliptic curves of degree 5.
        let minus_k = k.scaled(-1);
        assert_eq!(minus_k.degree(), 5);
        assert_eq!(minus_k.arith_genus(), 1);
        // h⁰(−K) = 6: the surface spans a 5-plane.
        assert_eq!(minus_k.euler(), 6);
    }

    #[test]
    fn line_census() {
        let lines = dp5_lines();
        assert_eq!(lines.len(), 10);
        for line in &lines {
            assert_eq!(line.degree(), 1);
            assert_eq!(line.dot(line), -1);
            assert_eq!(line.arith_genus(), 0);
        }
    }

    #[test]
    fn conic_pencils_are_pencils() {
        for p in dp5_conic_pencils() {
            assert_eq!(p.degree(), 2);
            assert_eq!(p.dot(&p), 0);
            assert_eq!(p.arith_genus(), 0);
            // χ = 2: each class moves in a pencil.
            assert_eq!(p.euler(), 2);
        }
    }

    #[test]
    fn disjoint_conics_share_a_pencil() {
        // Two conic classes meet in 0 points only if equal; distinct
        // pencils always meet.
        let pencils = dp5_conic_pencils();
        for (i, p) in pencils.iter().enumerate() {
            for (j, q) in pencils.iter().enumerate() {
                let meets = p.dot(q);
                if i == j {
                    assert_eq!(meets, 0);
                } else {
                    assert!(meets > 0, "pencils {i} and {j} claim to be disjoint");
                }
            }
        }
    }

    #[test]
    fn residual_suite_passes() {
        for check in delpezzo_checks() {
            assert!(check.passed(), "{}: {} vs {}", check.label, check.expected, check.computed);
        }
    }

    #[test]
    fn residuals_move_in_large_systems() {
        // Both residual systems (quartics with three double points, and
        // plane conics) have projective dimension 5, so a general member
        // avoids any finite set of bad points.
        for case in delpezzo_residuals() {
            assert_eq!(case.system_dim, 5, "{case:?}");
        }
    }
}
