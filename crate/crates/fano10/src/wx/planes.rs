//! Hyperplane spaces `M_{V₄}`, the quadric `Q_{V₄} = G ∩ P(M_{V₄})`, its
//! splitting into `Π ∪ Π_{V₄}` when `U₃ ⊂ V₄`, and the incidence geometry
//! of the resulting plane family.

use super::{
    col_basis, eval_gram, intersect_spans, polar_gram, proportional, restrict_gram,
    span_contains, spans_equal, support, wedge2, WModel, WxError,
};
use crate::multilinear::wedge_elements;
use crate::pencils::columns_to_matrix;
use crate::scalars::{BinaryForm, Field, Matrix, P1Point};

use rand::RngCore;

/// The two planes of a reducible `Q_{V₄}`.
#[derive(Debug, Clone)]
pub struct SplitPlanes<F: Field> {
    /// 10×3 bases of the two planes.
    pub planes: [Matrix<F>; 2],
    /// Index of the component equal to the distinguished plane `Π`,
    /// when one of them is.
    pub pi_index: Option<usize>,
}

impl<F: Field> SplitPlanes<F> {
    /// The component that is not `Π` (requires `pi_index`).
    pub fn other_plane(&self) -> Option<&Matrix<F>> {
        self.pi_index.map(|i| &self.planes[1 - i])
    }
}

/// The hyperplane space `M_{V₄} = ∧²V₄ ∩ V₈` with its quadratic data.
#[derive(Debug, Clone)]
pub struct MSpaceReport<F: Field> {
    /// 10×4 basis of `M`.
    pub basis: Matrix<F>,
    /// The same basis in the 8 coordinates of `V₈`.
    pub basis_v8: Matrix<F>,
    /// 4×4 Gram of the Grassmannian quadric restricted to `M`.
    pub q_w: Matrix<F>,
    /// 4×4 Gram of the section quadric restricted to `M`, when given.
    pub q_omega: Option<Matrix<F>>,
    /// Whether `Q_{V₄}` is reducible (rank at most 2).
    pub reducible: bool,
    /// The two planes in the reducible case.
    pub split: Option<SplitPlanes<F>>,
}

/// The binary quadratic `(s, t) ↦ q(s·u + t·v)` of a Gram matrix.
pub(super) fn binary_quadratic_on<F: Field>(
    g: &Matrix<F>,
    u: &[F],
    v: &[F],
) -> BinaryForm<F> {
    let a = eval_gram(g, u);
    let b = polar_gram(g, u, v);
    let c = eval_gram(g, v);
    let two = g.scalar(2);
    BinaryForm::new(g.field(), 2, vec![a, two * b, c])
}

/// The vector `u + t·v` (or `v` at infinity) for a point of `P¹`.
pub(super) fn p1_vector<F: Field>(u: &[F], v: &[F], pt: &P1Point<F>) -> Vec<F> {
    match pt {
        Some(t) => u
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.clone() + t.clone() * b.clone())
            .collect(),
        None => v.to_vec(),
    }
}

/// The hyperplane `V₄(λ:μ) = ker(λ·e₁^∨ + μ·e₂^∨)`, one of the family
/// containing the common isotropic space `U₃`.
pub fn lu_hyperplane<F: Field>(model: &WModel<F>, lam: &F, mu: &F) -> Matrix<F> {
    assert!(!(lam.is_zero() && mu.is_zero()), "parameters must not both vanish");
    let fd = model.field();
    let zero = model.scalar(0);
    let one = model.scalar(1);
    let mut first = vec![zero.clone(); 5];
    first[0] = zero.clone() - mu.clone();
    first[1] = lam.clone();
    let mut cols = vec![first];
    for k in 2..5 {
        let mut e = vec![zero.clone(); 5];
        e[k] = one.clone();
        cols.push(e);
    }
    columns_to_matrix(fd, 5, &cols)
}

/// Computes `M_{V₄}` together with both restricted quadrics and, when
/// `Q_{V₄}` is reducible, its two plane components.
pub fn m_space<F: Field>(
    model: &WModel<F>,
    v4: &Matrix<F>,
    omega8: Option<&Matrix<F>>,
) -> Result<MSpaceReport<F>, WxError> {
    if v4.rows() != 5 || v4.rank() != 4 {
        return Err(WxError::Precondition(format!(
            "expected a 4-dimensional subspace of the 5-space, got rank {} with {} rows",
            v4.rank(),
            v4.rows()
        )));
    }
    // ∧²V₄ inside ∧²V₅, spanned by the pairwise wedges of the basis.
    let mut wedges = Vec::with_capacity(6);
    for i in 0..4 {
        for j in (i + 1)..4 {
            wedges.push(wedge2(&v4.col(i), &v4.col(j)));
        }
    }
    let wedge_span = columns_to_matrix(model.field(), 10, &wedges);
    let m = intersect_spans(&wedge_span, &model.standard.v8);
    if m.cols() != 4 {
        return Err(WxError::ModelCorruption(format!(
            "hyperplane space has dimension {}, expected 4",
            m.cols()
        )));
    }

    // All five ambient quadrics restrict proportionally on M (they cut the
    // single quadric G ∩ P(M)); take the first nonzero restriction.
    let restricted: Vec<Matrix<F>> =
        model.plucker.iter().map(|g| restrict_gram(g, &m)).collect();
    let flat: Vec<Vec<F>> = restricted
        .iter()
        .map(|r| (0..4).flat_map(|i| (0..4).map(move |j| r.at(i, j).clone())).collect())
        .collect();
    let flat_rank =
        Matrix::from_row_vectors(model.field(), 16, &flat).unwrap().rank();
    if flat_rank != 1 {
        return Err(WxError::ModelCorruption(format!(
            "restricted quadrics span dimension {flat_rank}, expected a single quadric"
        )));
    }
    let q_w = restricted
        .into_iter()
        .find(|r| r.rank() > 0)
        .expect("some restriction is nonzero");

    // Coordinates of M inside V₈ and the second quadric, if present.
    let mut v8_cols = Vec::with_capacity(4);
    for j in 0..4 {
        let c = model.to_v8_coords(&m.col(j)).ok_or_else(|| {
            WxError::ModelCorruption("hyperplane space is not inside V₈".into())
        })?;
        v8_cols.push(c);
    }
    let basis_v8 = columns_to_matrix(model.field(), 8, &v8_cols);
    let q_omega = omega8.map(|om| restrict_gram(om, &basis_v8));

    let rank = q_w.rank();
    let reducible = rank <= 2;
    let split = if reducible {
        Some(split_planes(model, &m, &q_w, rank)?)
    } else {
        None
    };

    Ok(MSpaceReport { basis: m, basis_v8, q_w, q_omega, reducible, split })
}

/// Splits a rank-2 quadric on `P(M)` into its two planes.
fn split_planes<F: Field>(
    model: &WModel<F>,
    m: &Matrix<F>,
    q_w: &Matrix<F>,
    rank: usize,
) -> Result<SplitPlanes<F>, WxError> {
    if rank != 2 {
        return Err(WxError::NonGeneric(format!(
            "reducible quadric of rank {rank} is a double plane or worse"
        )));
    }
    let fd = model.field();
    let kernel = q_w.kernel_basis();
    debug_assert_eq!(kernel.len(), 2);
    let k_mat = columns_to_matrix(fd, 4, &kernel);

    // Complete the kernel with two coordinate vectors.
    let mut comp: Option<(Vec<F>, Vec<F>)> = None;
    'outer: for i in 0..4 {
        for j in (i + 1)..4 {
            let mut u = vec![model.scalar(0); 4];
            u[i] = model.scalar(1);
            let mut v = vec![model.scalar(0); 4];
            v[j] = model.scalar(1);
            let all = columns_to_matrix(fd, 4, &[
                kernel[0].clone(),
                kernel[1].clone(),
                u.clone(),
                v.clone(),
            ]);
            if all.rank() == 4 {
                comp = Some((u, v));
                break 'outer;
            }
        }
    }
    let (u, v) = comp.expect("a coordinate complement always exists");

    // Isotropic directions of the nondegenerate binary quadratic on M/K.
    let form = binary_quadratic_on(q_w, &u, &v);
    let roots = form.p1_roots_with_multiplicity();
    let simple: Vec<_> = roots.iter().filter(|(_, mult)| *mult == 1).collect();
    if simple.len() != 2 {
        return Err(WxError::NonGeneric(
            "split quadric has no pair of distinct rational planes".into(),
        ));
    }
    let mut planes = Vec::with_capacity(2);
    for (root, _) in simple {
        let w = p1_vector(&u, &v, root);
        let plane_m = columns_to_matrix(fd, 4, &[kernel[0].clone(), kernel[1].clone(), w]);
        debug_assert_eq!(
            col_basis(&plane_m.hstack(&k_mat).unwrap()).cols(),
            3,
            "plane contains the kernel"
        );
        let plane = m.mul(&plane_m).unwrap();
        // Sanity: the quadric vanishes identically on each component.
        debug_assert_eq!(restrict_gram(q_w, &plane_m).rank(), 0);
        planes.push(plane);
    }
    let planes: [Matrix<F>; 2] = [planes.remove(0), planes.remove(0)];
    let pi_index = (0..2).find(|&i| spans_equal(&planes[i], &model.pi_plane));
    Ok(SplitPlanes { planes, pi_index })
}

/// The common one-dimensional support of an α-plane: the vertex `V₁` with
/// `V₁ ⊂ supp(x)` for every point `x` of the plane.
pub fn plane_vertex<F: Field>(model: &WModel<F>, plane: &Matrix<F>) -> Result<Vec<F>, WxError> {
    let fd = model.field();
    let mut common: Option<Matrix<F>> = None;
    for j in 0..plane.cols() {
        let s = support(fd, &plane.col(j))?;
        common = Some(match common {
            None => s,
            Some(c) => intersect_spans(&c, &s),
        });
    }
    let common = common.expect("plane has columns");
    if common.cols() != 1 {
        return Err(WxError::NonGeneric(format!(
            "plane supports intersect in dimension {}, expected a vertex",
            common.cols()
        )));
    }
    Ok(common.col(0))
}

/// Incidence report for the family of planes `Π_{V₄}`, `U₃ ⊂ V₄`.
#[derive(Debug, Clone)]
pub struct PlaneIncidenceReport<F: Field> {
    /// The distinguished plane lies on the fourfold.
    pub pi_on_w: bool,
    /// Number of hyperplanes sampled.
    pub samples: usize,
    /// Every sampled `Q_{V₄}` is reducible with `Π` as a component.
    pub all_split_through_pi: bool,
    /// Every line `Π ∩ Π_{V₄}` is tangent to the dual conic.
    pub all_lines_tangent: bool,
    /// Every tangency point is the wedge-image of the vertex.
    pub all_tangency_points_match_vertex: bool,
    /// Every vertex lies on the kernel conic `c_U`.
    pub all_vertices_on_cu: bool,
    /// Every pair `Π_{V₄} ∩ Π_{V₄'}` is a single point on `Π` and on `W`.
    pub pair_points_on_pi: bool,
    /// Every such point is the wedge of the two vertices.
    pub pair_points_are_vertex_wedges: bool,
    /// The sampled vertices in the 5-space.
    pub vertices: Vec<Vec<F>>,
}

impl<F: Field> PlaneIncidenceReport<F> {
    /// All incidence checks hold.
    pub fn all_pass(&self) -> bool {
        self.pi_on_w
            && self.all_split_through_pi
            && self.all_lines_tangent
            && self.all_tangency_points_match_vertex
            && self.all_vertices_on_cu
            && self.pair_points_on_pi
            && self.pair_points_are_vertex_wedges
    }
}

/// Samples hyperplanes `V₄ ⊃ U₃` and verifies the plane incidences: each
/// `Q_{V₄}` splits as `Π ∪ Π_{V₄}`, the line `Π ∩ Π_{V₄}` is tangent to
/// the dual conic at the image of the vertex, and two planes of the family
/// meet in the single point given by the wedge of their vertices.
pub fn plane_incidences<F: Field>(
    model: &WModel<F>,
    samples: usize,
    rng: &mut dyn RngCore,
) -> Result<PlaneIncidenceReport<F>, WxError> {
    let fd = model.field();
    let pi_on_w = model
        .plucker
        .iter()
        .all(|g| restrict_gram(g, &model.pi_plane).rank() == 0)
        && (0..3).all(|j| model.to_v8_coords(&model.pi_plane.col(j)).is_some());

    // Sample distinct parameters (1 : μ), plus (0 : 1) first.
    let mut params: Vec<(F, F)> = vec![(model.scalar(0), model.scalar(1))];
    let donor = model.scalar(0);
    let mut guard = 0;
    while params.len() < samples {
        let mu = donor.random_like(rng);
        let cand = (model.scalar(1), mu);
        if !params.iter().any(|(a, b)| proportional(&[a.clone(), b.clone()], &[cand.0.clone(), cand.1.clone()])) {
            params.push(cand);
        }
        guard += 1;
        if guard > 40 * samples {
            return Err(WxError::EnlargeField(
                "not enough distinct hyperplane parameters".into(),
            ));
        }
    }

    let mut all_split_through_pi = true;
    let mut all_lines_tangent = true;
    let mut all_tangency_points_match_vertex = true;
    let mut all_vertices_on_cu = true;
    let mut planes = Vec::new();
    let mut vertices = Vec::new();

    for (lam, mu) in &params {
        let v4 = lu_hyperplane(model, lam, mu);
        let report = m_space(model, &v4, None)?;
        let split = match (report.reducible, report.split) {
            (true, Some(s)) if s.pi_index.is_some() => s,
            _ => {
                all_split_through_pi = false;
                continue;
            }
        };
        let other = split.other_plane().unwrap().clone();

        // The vertex lies on the kernel conic inside U₃.
        let vertex = plane_vertex(model, &other)?;
        let on_cu = vertex[0].is_zero()
            && vertex[1].is_zero()
            && eval_gram(&model.cu_gram, &vertex[2..]).is_zero();
        all_vertices_on_cu &= on_cu;

        // The line Π ∩ Π_{V₄} is tangent to the dual conic.
        let line = intersect_spans(&model.pi_plane, &other);
        if line.cols() != 2 {
            all_lines_tangent = false;
            continue;
        }
        let in_pi: Vec<Option<Vec<F>>> = (0..2)
            .map(|j| super::express_in_span(&model.pi_plane, &line.col(j)))
            .collect();
        let (c0, c1) = match (&in_pi[0], &in_pi[1]) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => {
                all_lines_tangent = false;
                continue;
            }
        };
        let form = binary_quadratic_on(&model.cu_dual, &c0, &c1);
        if form.is_zero() {
            all_lines_tangent = false;
            continue;
        }
        let roots = form.p1_roots_with_multiplicity();
        let tangent = roots.len() == 1 && roots[0].1 == 2;
        all_lines_tangent &= tangent;
        if tangent {
            // The double root is the wedge-image of the vertex.
            let touch_pi = p1_vector(&c0, &c1, &roots[0].0);
            let touch = model.pi_plane.mul_vec(&touch_pi).unwrap();
            let sup = support(fd, &touch)?;
            all_tangency_points_match_vertex &= span_contains(&sup, &vertex);
        }

        planes.push(other);
        vertices.push(vertex);
    }

    // Pairwise intersections.
    let mut pair_points_on_pi = true;
    let mut pair_points_are_vertex_wedges = true;
    for i in 0..planes.len() {
        let j = (i + 1) % planes.len();
        if i == j {
            continue;
        }
        let meet = intersect_spans(&planes[i], &planes[j]);
        if meet.cols() != 1 {
            pair_points_on_pi = false;
            continue;
        }
        let pt = meet.col(0);
        pair_points_on_pi &= span_contains(&model.pi_plane, &pt) && model.on_w(&pt);
        let expected = wedge_elements(5, 1, &vertices[i], 1, &vertices[j]).unwrap();
        pair_points_are_vertex_wedges &= proportional(&pt, &expected);
    }

    Ok(PlaneIncidenceReport {
        pi_on_w,
        samples: params.len(),
        all_split_through_pi,
        all_lines_tangent,
        all_tangency_points_match_vertex,
        all_vertices_on_cu,
        pair_points_on_pi,
        pair_points_are_vertex_wedges,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::super::w_model;
    use super::*;
    use crate::scalars::{FieldDescriptor, Fp};
    use crate::Q;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    #[test]
    fn standard_hyperplane_splits_as_computed_by_hand() {
        // V₄ = ker(e₂^∨) gives M = ⟨e1∧f2, f0∧f1, f0∧f2, f1∧f2⟩ and the
        // split quadric with Π_{V₄} = f2 ∧ ⟨e1, f0, f1⟩, vertex f2.
        let model = w_model::<Fp>(&fd97());
        let v4 = lu_hyperplane(&model, &Fp::new(0, 97), &Fp::new(1, 97));
        let rep = m_space(&model, &v4, None).unwrap();
        assert!(rep.reducible);
        assert_eq!(rep.q_w.rank(), 2);
        let split = rep.split.unwrap();
        assert!(split.pi_index.is_some());
        let other = split.other_plane().unwrap();
        // Expected plane: f2∧e1 (= −e1∧f2 up to sign), f2∧f0, f2∧f1.
        let f = |i: usize, j: usize| {
            let mut v = vec![Fp::new(0, 97); 5];
            v[i] = Fp::new(1, 97);
            let mut w = vec![Fp::new(0, 97); 5];
            w[j] = Fp::new(1, 97);
            wedge2(&v, &w)
        };
        let expected = columns_to_matrix(&fd97(), 10, &[f(0, 4), f(2, 4), f(3, 4)]);
        assert!(spans_equal(other, &expected));
        let vertex = plane_vertex(&model, other).unwrap();
        // Vertex is f2, the parameter-zero point of the kernel conic.
        assert!(proportional(&vertex, &[
            Fp::new(0, 97),
            Fp::new(0, 97),
            Fp::new(0, 97),
            Fp::new(0, 97),
            Fp::new(1, 97)
        ]));
    }

    #[test]
    fn generic_hyperplane_gives_irreducible_quadric() {
        let model = w_model::<Fp>(&fd97());
        // V₄ not containing U₃: span(e1, e2, f0, f1).
        let v4 = Matrix::from_ints(5, 4, &fd97(), &[
            1, 0, 0, 0,
            0, 1, 0, 0,
            0, 0, 1, 0,
            0, 0, 0, 1,
            0, 0, 0, 0,
        ])
        .unwrap();
        let rep = m_space(&model, &v4, None).unwrap();
        assert!(!rep.reducible);
        assert!(rep.split.is_none());
        // This particular hyperplane gives the cone 2ab + 4d² = 0:
        // irreducible of rank 3.
        assert_eq!(rep.q_w.rank(), 3);
    }

    #[test]
    fn incidence_suite_passes_over_f97() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rep = plane_incidences(&model, 10, &mut rng).unwrap();
        assert!(rep.pi_on_w);
        assert!(rep.all_split_through_pi);
        assert!(rep.all_lines_tangent);
        assert!(rep.all_tangency_points_match_vertex);
        assert!(rep.all_vertices_on_cu);
        assert!(rep.pair_points_on_pi);
        assert!(rep.pair_points_are_vertex_wedges);
        assert_eq!(rep.samples, 10);
    }

    #[test]
    fn incidence_suite_passes_over_the_rationals() {
        let model = w_model::<Q>(&FieldDescriptor::rationals());
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let rep = plane_incidences(&model, 6, &mut rng).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn m_space_dimension_is_stable_over_random_hyperplanes() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let donor = Fp::new(0, 97);
        let mut reducible_count = 0;
        let mut smooth_count = 0;
        for _ in 0..50 {
            // A random hyperplane: kernel of a random covector.
            let cov: Vec<Fp> = (0..5).map(|_| donor.random_like(&mut rng)).collect();
            if cov.iter().all(|v| v.is_zero()) {
                continue;
            }
            let cov_m = Matrix::from_row_vectors(&fd97(), 5, &[cov]).unwrap();
            let kernel = cov_m.kernel_basis();
            assert_eq!(kernel.len(), 4);
            let v4 = columns_to_matrix(&fd97(), 5, &kernel);
            let rep = m_space(&model, &v4, None).unwrap();
            assert_eq!(rep.basis.cols(), 4);
            if rep.reducible {
                reducible_count += 1;
            }
            if rep.q_w.rank() == 4 {
                smooth_count += 1;
            }
        }
        // A random hyperplane almost never contains U₃, and generically
        // cuts a smooth quadric surface (nonzero discriminant).
        assert!(reducible_count <= 2);
        assert!(smooth_count >= 40);
    }
}
