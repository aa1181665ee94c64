//! Automorphisms of the fourfold: the parabolic of maps fixing the
//! distinguished flag, computed as the kernel of a linear system that is
//! linear only because the contraction kills every quadratic term; the
//! unipotent part matched against binary cubics; the action of a
//! unipotent automorphism on the space of quadrics; and the dimension
//! count of the quadrics through the fourfold.

use super::{
    col_basis, lu_hyperplane, m_space, proportional, spans_equal, w_model, WModel, WxError,
};
use crate::multilinear::{induced_map, multisets_lex, FunctorExpr};
use crate::pencils::{columns_to_matrix, phi_from_gl2, preserves_span, sl_action};
use crate::scalars::{Field, FieldDescriptor, Matrix};
use crate::Q;

use rand::RngCore;

/// Flat layout of the unknowns: 6 entries of `φ₀ : U₂ → W₃` (index
/// `2r + c` for row `r`, column `c`), then 9 entries of `φ₃ : W₃ → W₃`
/// (index `6 + 3r + c`).
const UNKNOWNS: usize = 15;

fn unknowns_to_maps<F: Field>(fd: &FieldDescriptor, u: &[F]) -> (Matrix<F>, Matrix<F>) {
    let mut phi0 = Matrix::zeros(3, 2, fd);
    for r in 0..3 {
        for c in 0..2 {
            *phi0.at_mut(r, c) = u[2 * r + c].clone();
        }
    }
    let mut phi3 = Matrix::zeros(3, 3, fd);
    for r in 0..3 {
        for c in 0..3 {
            *phi3.at_mut(r, c) = u[6 + 3 * r + c].clone();
        }
    }
    (phi0, phi3)
}

/// The 5×5 map with `φ₂` on the distinguished 2-space, `φ₀` feeding it
/// into `W₃`, and `φ₃` on `W₃`.
fn assemble_phi<F: Field>(
    fd: &FieldDescriptor,
    phi2: &Matrix<F>,
    phi0: &Matrix<F>,
    phi3: &Matrix<F>,
) -> Matrix<F> {
    let mut phi = Matrix::zeros(5, 5, fd);
    for i in 0..2 {
        for j in 0..2 {
            *phi.at_mut(i, j) = phi2.at(i, j).clone();
        }
    }
    for i in 0..3 {
        for j in 0..2 {
            *phi.at_mut(2 + i, j) = phi0.at(i, j).clone();
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            *phi.at_mut(2 + i, 2 + j) = phi3.at(i, j).clone();
        }
    }
    phi
}

/// The obstruction `contraction ∘ ∧²φ ∘ v₈`, flattened with the two
/// contraction rows of each `V₈` column adjacent (index `2c + r`).
fn t_map<F: Field>(model: &WModel<F>, phi: &Matrix<F>) -> Vec<F> {
    let lambda = induced_map(phi, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)))
        .expect("wedge square");
    let t = model
        .standard
        .contraction
        .mul(&lambda)
        .unwrap()
        .mul(&model.standard.v8)
        .unwrap();
    let mut out = Vec::with_capacity(16);
    for c in 0..8 {
        for r in 0..2 {
            out.push(t.at(r, c).clone());
        }
    }
    out
}

/// The 16×15 system whose kernel is the space of `(φ₀, φ₃)` completing a
/// fixed `φ₂` to an automorphism of the model. Linearity holds because
/// the quadratic terms of `∧²φ` land in `∧²W₃ ⊕ ∧²U₂`, which the
/// contraction annihilates.
fn aut_system<F: Field>(model: &WModel<F>, phi2: &Matrix<F>) -> Matrix<F> {
    let fd = model.field();
    let mut cols = Vec::with_capacity(UNKNOWNS);
    for k in 0..UNKNOWNS {
        let mut u = vec![model.scalar(0); UNKNOWNS];
        u[k] = model.scalar(1);
        let (phi0, phi3) = unknowns_to_maps(fd, &u);
        let phi = assemble_phi(fd, phi2, &phi0, &phi3);
        cols.push(t_map(model, &phi));
    }
    columns_to_matrix(fd, 16, &cols)
}

/// The flat 6-vector for `φ₀` given by the coefficient triples of the
/// two columns.
fn phi0_flat<F: Field>(model: &WModel<F>, alpha: [i64; 3], beta: [i64; 3]) -> Vec<F> {
    let mut u = vec![model.scalar(0); 6];
    for r in 0..3 {
        u[2 * r] = model.scalar(alpha[r]);
        u[2 * r + 1] = model.scalar(beta[r]);
    }
    u
}

/// Report of the automorphism computation.
#[derive(Debug, Clone)]
pub struct AutReport {
    /// Kernel dimension of the full system at a fixed generic `φ₂` (5).
    pub kernel_dim: usize,
    /// Ranks of the `φ₀` block and the `φ₃` block (2 and 8).
    pub block_ranks: (usize, usize),
    /// The six rows from the `∧²W₃` columns of `V₈` vanish identically.
    pub trivial_rows_ok: bool,
    /// The map agrees with its assembled matrix on random inputs — the
    /// cancellation that makes the problem linear.
    pub linearity_ok: bool,
    /// Kernel dimension of the `φ₀` block at `φ₂ = id` (4).
    pub phi0_kernel_dim: usize,
    /// That kernel equals the explicit completely-symmetric basis.
    pub symmetric_basis_ok: bool,
    /// The `φ₃` kernel line is spanned by the symmetric square of the
    /// contragredient of `φ₂`.
    pub phi3_matches_contragredient: bool,
    /// Group dimension: 4 (choice of `φ₂`) + 5 (fiber) − 1 (scalars).
    pub lie_dim: usize,
    /// Kernel dimension of the infinitesimal action on the pencil (8).
    pub sl_kernel_dim: usize,
    /// A generic assembled automorphism preserves the model.
    pub generic_aut_ok: bool,
}

impl AutReport {
    /// The full expected shape.
    pub fn all_pass(&self) -> bool {
        self.kernel_dim == 5
            && self.block_ranks == (2, 8)
            && self.trivial_rows_ok
            && self.linearity_ok
            && self.phi0_kernel_dim == 4
            && self.symmetric_basis_ok
            && self.phi3_matches_contragredient
            && self.lie_dim == 8
            && self.sl_kernel_dim == 8
            && self.generic_aut_ok
    }
}

/// Runs the automorphism suite over the model's field.
pub fn aut_suite<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<AutReport, WxError> {
    let fd = model.field().clone();

    // (a) Full system at a fixed generic φ₂ (invertible away from
    // characteristic 2).
    let phi2 = Matrix::from_ints(2, 2, &fd, &[1, 2, 3, 4]).unwrap();
    if phi2.rank() != 2 {
        return Err(WxError::Unsupported(
            fd,
            "the reference φ₂ degenerates in this characteristic".into(),
        ));
    }
    let system = aut_system(model, &phi2);
    let kernel = system.kernel_basis();
    let kernel_dim = kernel.len();

    // Structure of the system: unknown blocks touch disjoint row blocks.
    // Rows 2·c + r for the ∧²W₃ columns c = 1, 2, 3 vanish identically.
    let trivial_rows_ok = (2..8).all(|row| (0..UNKNOWNS).all(|c| system.at(row, c).is_zero()))
        && (0..2).all(|row| (6..UNKNOWNS).all(|c| system.at(row, c).is_zero()))
        && (8..16).all(|row| (0..6).all(|c| system.at(row, c).is_zero()));

    let take_block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Matrix<F> {
        let vectors: Vec<Vec<F>> = rows
            .map(|r| cols.clone().map(|c| system.at(r, c).clone()).collect())
            .collect();
        Matrix::from_row_vectors(&fd, cols.len(), &vectors).unwrap()
    };
    let phi0_block = take_block(0..2, 0..6);
    let phi3_block = take_block(8..16, 6..15);
    let block_ranks = (phi0_block.rank(), phi3_block.rank());

    // Linearity certificate: the assembled matrix reproduces the map on
    // random joint inputs, although ∧²φ is quadratic in them.
    let donor = model.scalar(0);
    let mut linearity_ok = true;
    for _ in 0..3 {
        let u: Vec<F> = (0..UNKNOWNS).map(|_| donor.random_like(rng)).collect();
        let (phi0, phi3) = unknowns_to_maps(&fd, &u);
        let phi = assemble_phi(&fd, &phi2, &phi0, &phi3);
        let direct = t_map(model, &phi);
        let via_matrix = system.mul_vec(&u).unwrap();
        linearity_ok &= direct == via_matrix;
    }

    // (b) The φ₀ kernel at φ₂ = id is the completely-symmetric space,
    // the coefficient space of binary cubics.
    let id2 = Matrix::identity(2, &fd);
    let system_id = aut_system(model, &id2);
    let id_block = {
        let vectors: Vec<Vec<F>> = (0..2)
            .map(|r| (0..6).map(|c| system_id.at(r, c).clone()).collect())
            .collect();
        Matrix::from_row_vectors(&fd, 6, &vectors).unwrap()
    };
    let phi0_kernel = id_block.kernel_basis();
    let phi0_kernel_dim = phi0_kernel.len();
    let explicit = [
        phi0_flat(model, [1, 0, 0], [0, 0, 0]),
        phi0_flat(model, [0, 2, 0], [1, 0, 0]),
        phi0_flat(model, [0, 0, 1], [0, 2, 0]),
        phi0_flat(model, [0, 0, 0], [0, 0, 1]),
    ];
    let symmetric_basis_ok = spans_equal(
        &columns_to_matrix(&fd, 6, &phi0_kernel),
        &columns_to_matrix(&fd, 6, &explicit.to_vec()),
    );

    // The φ₃ kernel line carries the symmetric square of the
    // contragredient.
    let phi3_kernel = phi3_block.kernel_basis();
    let phi3_matches_contragredient = if phi3_kernel.len() == 1 {
        let reference = phi_from_gl2(&fd, &phi2).expect("invertible φ₂");
        let mut ref_flat = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                ref_flat.push(reference.at(2 + i, 2 + j).clone());
            }
        }
        proportional(&phi3_kernel[0], &ref_flat)
    } else {
        false
    };

    // Group dimension and the infinitesimal cross-check.
    let lie_dim = 4 + kernel_dim - 1;
    let sl_report = sl_action(&model.standard);
    let sl_kernel_dim = sl_report.kernel_dim;

    // (e) A generic assembled automorphism preserves everything in sight.
    let generic_aut_ok = generic_automorphism_check(model, rng)?;

    Ok(AutReport {
        kernel_dim,
        block_ranks,
        trivial_rows_ok,
        linearity_ok,
        phi0_kernel_dim,
        symmetric_basis_ok,
        phi3_matches_contragredient,
        lie_dim,
        sl_kernel_dim,
        generic_aut_ok,
    })
}

/// Assembles an automorphism from a random invertible `φ₂` and a random
/// kernel element, and checks that its wedge square preserves the
/// fourfold, the distinguished plane, and the σ-plane family.
fn generic_automorphism_check<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<bool, WxError> {
    let fd = model.field().clone();
    let donor = model.scalar(0);
    for _ in 0..20 {
        let phi2_data: Vec<F> = (0..4).map(|_| donor.random_like(rng)).collect();
        let phi2 = match Matrix::new(2, 2, fd.clone(), phi2_data) {
            Ok(m) if m.rank() == 2 => m,
            _ => continue,
        };
        let system = aut_system(model, &phi2);
        let kernel = system.kernel_basis();
        if kernel.len() != 5 {
            return Err(WxError::NonGeneric(format!(
                "automorphism system has kernel dimension {}",
                kernel.len()
            )));
        }
        let mut combo = vec![model.scalar(0); UNKNOWNS];
        for k in &kernel {
            let c = donor.random_like(rng);
            for (acc, v) in combo.iter_mut().zip(k.iter()) {
                *acc = acc.clone() + c.clone() * v.clone();
            }
        }
        let (phi0, phi3) = unknowns_to_maps(&fd, &combo);
        let phi = assemble_phi(&fd, &phi2, &phi0, &phi3);
        if phi.rank() != 5 {
            continue;
        }
        let lambda = induced_map(&phi, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)))
            .expect("wedge square");

        // Membership: the wedge square fixes V₈ and the quadric cone.
        let obstruction = model
            .standard
            .contraction
            .mul(&lambda)
            .unwrap()
            .mul(&model.standard.v8)
            .unwrap();
        if obstruction.rank() != 0 {
            return Ok(false);
        }
        for _ in 0..25 {
            let x = model.sample_w_point(rng);
            let image = lambda.mul_vec(&x).unwrap();
            if !model.on_w(&image) {
                return Ok(false);
            }
        }
        if !preserves_span(&lambda, &model.pi_plane) {
            return Ok(false);
        }

        // σ-planes transport along φ: the plane of V₄ maps to the plane
        // of φ(V₄).
        for (lam, mu) in [(1, 5), (1, 7), (0, 1)] {
            let v4 = lu_hyperplane(model, &model.scalar(lam), &model.scalar(mu));
            let v4_image = col_basis(&phi.mul(&v4).unwrap());
            let source = m_space(model, &v4, None)?;
            let target = m_space(model, &v4_image, None)?;
            let p_source = source
                .split
                .and_then(|s| s.other_plane().cloned())
                .ok_or_else(|| WxError::NonGeneric("σ-plane missing on the source".into()))?;
            let p_target = target
                .split
                .and_then(|s| s.other_plane().cloned())
                .ok_or_else(|| WxError::NonGeneric("σ-plane missing on the target".into()))?;
            if !spans_equal(&lambda.mul(&p_source).unwrap(), &p_target) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Err(WxError::NonGeneric(
        "no invertible generic automorphism assembled".into(),
    ))
}

/// Report of the unipotent quadric action, computed exactly over the
/// rationals.
#[derive(Debug, Clone)]
pub struct UnipotentReport {
    /// Rank of `Id − Φ` on the 36-dimensional space of quadrics (18).
    pub moved_rank: usize,
    /// Dimension of the fixed space (18).
    pub fixed_dim: usize,
    /// `(Φ − Id)⁵ = 0`.
    pub unipotency_ok: bool,
    /// `∧²φ` restricted to `V₈` commutes with the inclusion exactly.
    pub v8_stable: bool,
}

/// The unipotent automorphism with `φ₀` the cube of the first coordinate
/// (`e₁ ↦ e₁ + f₀`), acting on the 36 quadric monomials of `V₈`.
pub fn unipotent_action() -> Result<UnipotentReport, WxError> {
    let fd = FieldDescriptor::Rationals;
    let model = w_model::<Q>(&fd);
    let phi2 = Matrix::identity(2, &fd);
    let mut phi0 = Matrix::zeros(3, 2, &fd);
    *phi0.at_mut(0, 0) = model.scalar(1);
    let phi3 = Matrix::identity(3, &fd);
    let phi = assemble_phi(&fd, &phi2, &phi0, &phi3);

    let lambda = induced_map(&phi, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)))
        .expect("wedge square");
    // Restriction to V₈ through the chosen basis and its left inverse.
    let g = model
        .v8_left
        .mul(&lambda)
        .unwrap()
        .mul(&model.standard.v8)
        .unwrap();
    let v8_stable = model
        .standard
        .v8
        .mul(&g)
        .unwrap()
        .sub(&lambda.mul(&model.standard.v8).unwrap())
        .unwrap()
        .rank()
        == 0;

    // Action on quadrics: the symmetric square of the contragredient.
    let quad = FunctorExpr::Sym(
        2,
        Box::new(FunctorExpr::Dual(Box::new(FunctorExpr::Atom))),
    );
    let phi_quad = induced_map(&g, &quad).expect("quadric action");
    let n = phi_quad.rows();
    let id = Matrix::identity(n, &fd);
    let moved = id.sub(&phi_quad).unwrap();
    let moved_rank = moved.rank();
    let fixed_dim = n - moved_rank;

    // Unipotency: the fifth power of the displacement vanishes.
    let mut pow = moved.clone();
    for _ in 0..4 {
        pow = pow.mul(&moved).unwrap();
    }
    let unipotency_ok = pow.rank() == 0;

    Ok(UnipotentReport {
        moved_rank,
        fixed_dim,
        unipotency_ok,
        v8_stable,
    })
}

/// Report on the space of quadrics through the fourfold.
#[derive(Debug, Clone)]
pub struct QuadricSpaceReport {
    /// Evaluation rank of the 36 degree-2 monomials at the samples (31).
    pub eval_rank: usize,
    /// Dimension of the space of quadrics vanishing on the fourfold (5).
    pub vanishing_dim: usize,
    /// How many points were sampled.
    pub samples: usize,
}

/// Samples chart points and computes the rank of the quadric-monomial
/// evaluation matrix, bounding the quadrics through the fourfold.
pub fn quadric_space<F: Field>(
    model: &WModel<F>,
    samples: usize,
    rng: &mut dyn RngCore,
) -> Result<QuadricSpaceReport, WxError> {
    let monomials = multisets_lex(8, 2);
    let one = model.scalar(1);
    let mut rows = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = model.sample_w_point(rng);
        let y = model
            .to_v8_coords(&x)
            .ok_or_else(|| WxError::ModelCorruption("chart point outside V₈".into()))?;
        let row: Vec<F> = monomials
            .iter()
            .map(|ms| {
                let mut acc = one.clone();
                for &i in ms {
                    acc = acc * y[i].clone();
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    let eval = Matrix::from_row_vectors(model.field(), monomials.len(), &rows).unwrap();
    let eval_rank = eval.rank();
    Ok(QuadricSpaceReport {
        eval_rank,
        vanishing_dim: monomials.len() - eval_rank,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::super::w_model;
    use super::*;
    use crate::scalars::Fp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    #[test]
    fn automorphism_suite_over_a_prime_field() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = aut_suite(&model, &mut rng).unwrap();
        assert_eq!(rep.kernel_dim, 5);
        assert_eq!(rep.block_ranks, (2, 8));
        assert!(rep.trivial_rows_ok);
        assert!(rep.linearity_ok);
        assert_eq!(rep.phi0_kernel_dim, 4);
        assert!(rep.symmetric_basis_ok);
        assert!(rep.phi3_matches_contragredient);
        assert_eq!(rep.lie_dim, 8);
        assert_eq!(rep.sl_kernel_dim, 8);
        assert!(rep.generic_aut_ok);
        assert!(rep.all_pass());
    }

    #[test]
    fn automorphism_suite_over_the_rationals() {
        let model = w_model::<Q>(&FieldDescriptor::Rationals);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rep = aut_suite(&model, &mut rng).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn unipotent_quadric_action_has_half_dimensional_fixed_space() {
        let rep = unipotent_action().unwrap();
        assert!(rep.v8_stable);
        assert_eq!(rep.moved_rank, 18);
        assert_eq!(rep.fixed_dim, 18);
        assert!(rep.unipotency_ok);
    }

    #[test]
    fn five_quadrics_cut_the_fourfold() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rep = quadric_space(&model, 70, &mut rng).unwrap();
        assert_eq!(rep.eval_rank, 31);
        assert_eq!(rep.vanishing_dim, 5);
    }

    #[test]
    fn quadric_space_over_the_rationals() {
        let model = w_model::<Q>(&FieldDescriptor::Rationals);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let rep = quadric_space(&model, 60, &mut rng).unwrap();
        assert_eq!(rep.eval_rank, 31);
        assert_eq!(rep.vanishing_dim, 5);
    }
}
