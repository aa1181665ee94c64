//! Conics on the fourfold: storage as (plane, quadratic form), point
//! finding over the working field, rational parametrization, and the
//! τ/σ/ρ classification by supports.

use super::{
    col_basis, eval_gram, intersect_spans, polar_gram, proportional, restrict_gram, support,
    sum_spans, WModel, WxError,
};
use super::planes::{binary_quadratic_on, p1_vector};
use crate::multilinear::wedge_with_matrix;
use crate::pencils::columns_to_matrix;
use crate::scalars::{Field, FieldDescriptor, Matrix};

use rand::RngCore;

/// A conic stored by its plane and the restricted quadratic form.
#[derive(Debug, Clone)]
pub struct ConicRecord<F: Field> {
    /// 10×3 basis of the plane `P(A)`, `A ⊂ ∧²V₅`.
    pub plane: Matrix<F>,
    /// 3×3 Gram of the form cutting the conic, in the plane basis.
    pub gram: Matrix<F>,
}

impl<F: Field> ConicRecord<F> {
    /// Validates shape, rank, and that the form is not identically zero.
    pub fn new(plane: Matrix<F>, gram: Matrix<F>) -> Result<Self, WxError> {
        if plane.rows() != 10 || plane.cols() != 3 || plane.rank() != 3 {
            return Err(WxError::Precondition(
                "conic plane must be a 3-dimensional subspace of the wedge space".into(),
            ));
        }
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(WxError::Precondition("conic form must be 3×3".into()));
        }
        if gram.rank() == 0 {
            return Err(WxError::Precondition(
                "conic form must not vanish identically".into(),
            ));
        }
        Ok(ConicRecord { plane, gram })
    }

    /// Whether a 10-vector is a point of the conic.
    pub fn contains(&self, x: &[F]) -> bool {
        match super::express_in_span(&self.plane, x) {
            Some(c) => eval_gram(&self.gram, &c).is_zero(),
            None => false,
        }
    }

    /// The 10-vector of a point given in plane coordinates.
    pub fn embed(&self, c: &[F]) -> Vec<F> {
        self.plane.mul_vec(&c.to_vec()).unwrap()
    }
}

/// The three conic classes, by the behavior of the plane of the conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicTag {
    /// Plane not contained in the cone: the generic class.
    Tau,
    /// Plane of the form `Π_{V₄}`: common vertex.
    Sigma,
    /// Plane of the form `P(∧²V₃)`: supports sweep a 3-space.
    Rho,
    /// Degenerate data that fits no class.
    Undetermined,
}

/// Classification output with the recovered linear data.
#[derive(Debug, Clone)]
pub struct ConicClass<F: Field> {
    /// The class.
    pub tag: ConicTag,
    /// The recovered hyperplane `V₄` (τ and σ).
    pub v4: Option<Matrix<F>>,
    /// The vertex (σ only).
    pub vertex: Option<Vec<F>>,
    /// The 3-space of supports (ρ only).
    pub v3: Option<Matrix<F>>,
}

/// Finds up to `want` distinct points of a conic by intersecting it with
/// random lines in its plane; errors if the field does not expose enough
/// points within the attempt budget.
pub fn conic_points<F: Field>(
    fd: &FieldDescriptor,
    record: &ConicRecord<F>,
    want: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<Vec<F>>, WxError> {
    let donor = F::from_descriptor(fd, 0).unwrap();
    let mut found: Vec<Vec<F>> = Vec::new();
    let attempts = 80 * want.max(1);
    for _ in 0..attempts {
        if found.len() >= want {
            break;
        }
        let u: Vec<F> = (0..3).map(|_| donor.random_like(rng)).collect();
        let v: Vec<F> = (0..3).map(|_| donor.random_like(rng)).collect();
        if u.iter().all(|t| t.is_zero()) || proportional(&u, &v) || v.iter().all(|t| t.is_zero())
        {
            continue;
        }
        let form = binary_quadratic_on(&record.gram, &u, &v);
        let candidates: Vec<Vec<F>> = if form.is_zero() {
            // The whole line lies on the conic.
            let sum: Vec<F> = u
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect();
            vec![u.clone(), v.clone(), sum]
        } else {
            form.p1_roots_with_multiplicity()
                .into_iter()
                .map(|(root, _)| p1_vector(&u, &v, &root))
                .collect()
        };
        for c in candidates {
            if found.len() >= want {
                break;
            }
            debug_assert!(eval_gram(&record.gram, &c).is_zero());
            if !found.iter().any(|p| proportional(p, &c)) {
                found.push(c);
            }
        }
    }
    if found.len() < want {
        return Err(WxError::EnlargeField(format!(
            "found only {} of {} requested conic points",
            found.len(),
            want
        )));
    }
    Ok(found)
}

/// A quadratic parametrization `s ↦ x₀ + s·x₁ + s²·x₂` of a conic with a
/// known rational point, sweeping every point exactly once.
#[derive(Debug, Clone)]
pub struct ConicParam<F: Field> {
    /// Coefficient vectors in plane coordinates.
    pub coeffs: [Vec<F>; 3],
}

impl<F: Field> ConicParam<F> {
    /// The plane-coordinate point at parameter `s` (`None` for infinity).
    pub fn eval(&self, s: Option<&F>) -> Vec<F> {
        match s {
            Some(s) => (0..3)
                .map(|i| {
                    self.coeffs[0][i].clone()
                        + s.clone() * self.coeffs[1][i].clone()
                        + s.clone() * s.clone() * self.coeffs[2][i].clone()
                })
                .collect(),
            None => self.coeffs[2].clone(),
        }
    }
}

/// Builds a rational parametrization of the conic by projecting from one
/// of its points; requires a nondegenerate form and a rational point.
pub fn parametrize_conic<F: Field>(
    fd: &FieldDescriptor,
    record: &ConicRecord<F>,
    rng: &mut dyn RngCore,
) -> Result<ConicParam<F>, WxError> {
    if record.gram.rank() != 3 {
        return Err(WxError::NonGeneric(
            "parametrization needs a nondegenerate conic".into(),
        ));
    }
    let base = conic_points(fd, record, 1, rng)?.remove(0);
    parametrize_conic_from(fd, record, &base, rng)
}

/// As [`parametrize_conic`], but projecting from a marked point supplied
/// by the caller — the route that works over fields where random point
/// search is hopeless.
pub fn parametrize_conic_from<F: Field>(
    fd: &FieldDescriptor,
    record: &ConicRecord<F>,
    base: &[F],
    rng: &mut dyn RngCore,
) -> Result<ConicParam<F>, WxError> {
    if record.gram.rank() != 3 {
        return Err(WxError::NonGeneric(
            "parametrization needs a nondegenerate conic".into(),
        ));
    }
    if base.len() != 3
        || base.iter().all(|t| t.is_zero())
        || !eval_gram(&record.gram, base).is_zero()
    {
        return Err(WxError::Precondition(
            "the marked point is not on the conic".into(),
        ));
    }
    let base = base.to_vec();
    let donor = F::from_descriptor(fd, 0).unwrap();
    for _ in 0..60 {
        let d1: Vec<F> = (0..3).map(|_| donor.random_like(rng)).collect();
        let d2: Vec<F> = (0..3).map(|_| donor.random_like(rng)).collect();
        let basis = columns_to_matrix(fd, 3, &[base.clone(), d1.clone(), d2.clone()]);
        if basis.rank() != 3 {
            continue;
        }
        let g = &record.gram;
        let two = g.scalar(2);
        let q1 = eval_gram(g, &d1);
        let q2 = eval_gram(g, &d2);
        let b12 = polar_gram(g, &d1, &d2);
        let bp1 = polar_gram(g, &base, &d1);
        let bp2 = polar_gram(g, &base, &d2);
        let comb = |pc: F, d1c: F, d2c: F| -> Vec<F> {
            (0..3)
                .map(|i| {
                    pc.clone() * base[i].clone()
                        + d1c.clone() * d1[i].clone()
                        + d2c.clone() * d2[i].clone()
                })
                .collect()
        };
        let zero = g.scalar(0);
        let c0 = comb(q1.clone(), zero.clone() - two.clone() * bp1.clone(), zero.clone());
        let c1 = comb(
            two.clone() * b12.clone(),
            zero.clone() - two.clone() * bp2.clone(),
            zero.clone() - two.clone() * bp1.clone(),
        );
        let c2 = comb(q2.clone(), zero.clone(), zero.clone() - two.clone() * bp2.clone());
        // The parametrization must avoid the zero vector everywhere:
        // the three coefficient vectors span the plane.
        let span = columns_to_matrix(fd, 3, &[c0.clone(), c1.clone(), c2.clone()]);
        if span.rank() != 3 {
            continue;
        }
        let param = ConicParam { coeffs: [c0, c1, c2] };
        debug_assert!({
            let test = param.eval(Some(&g.scalar(1)));
            eval_gram(g, &test).is_zero()
        });
        return Ok(param);
    }
    Err(WxError::NonGeneric("no usable projection basis found".into()))
}

/// Classifies a conic by the supports of its points: τ when the plane is
/// not contained in the cone (supports of three points span a `V₄`),
/// σ when all supports share a vertex, ρ when the supports sweep a `V₃`.
pub fn classify_conic<F: Field>(
    model: &WModel<F>,
    record: &ConicRecord<F>,
    rng: &mut dyn RngCore,
) -> Result<ConicClass<F>, WxError> {
    let fd = model.field();
    let in_cone = model
        .plucker
        .iter()
        .all(|g| restrict_gram(g, &record.plane).rank() == 0);

    if in_cone {
        // Supports of the three basis points.
        let supports: Vec<Matrix<F>> = (0..3)
            .map(|j| support(fd, &record.plane.col(j)))
            .collect::<Result<_, _>>()?;
        let mut inter = supports[0].clone();
        for s in &supports[1..] {
            inter = intersect_spans(&inter, s);
        }
        if inter.cols() == 1 {
            let vertex = inter.col(0);
            // V₄ = {w : vertex ∧ w ∈ A}.
            let m_v = wedge_with_matrix(5, 1, &vertex, fd)?;
            let stacked = record.plane.hstack(&m_v).unwrap();
            let kernel = stacked.kernel_basis();
            let w_parts: Vec<Vec<F>> = kernel
                .iter()
                .map(|k| k[3..].to_vec())
                .filter(|w| !w.iter().all(|v| v.is_zero()))
                .collect();
            let v4 = col_basis(&columns_to_matrix(fd, 5, &w_parts));
            if v4.cols() != 4 {
                return Ok(ConicClass {
                    tag: ConicTag::Undetermined,
                    v4: None,
                    vertex: None,
                    v3: None,
                });
            }
            return Ok(ConicClass {
                tag: ConicTag::Sigma,
                v4: Some(v4),
                vertex: Some(vertex),
                v3: None,
            });
        }
        let mut total = supports[0].clone();
        for s in &supports[1..] {
            total = sum_spans(&total, s);
        }
        if total.cols() == 3 {
            return Ok(ConicClass {
                tag: ConicTag::Rho,
                v4: None,
                vertex: None,
                v3: Some(total),
            });
        }
        return Ok(ConicClass { tag: ConicTag::Undetermined, v4: None, vertex: None, v3: None });
    }

    // τ: the plane meets the cone in the conic itself; supports of three
    // distinct points span the hyperplane.
    let points = conic_points(fd, record, 3, rng)?;
    let mut total: Option<Matrix<F>> = None;
    for p in &points {
        let x = record.embed(p);
        let s = support(fd, &x)?;
        total = Some(match total {
            None => s,
            Some(t) => sum_spans(&t, &s),
        });
    }
    let mut total = total.unwrap();
    if total.cols() < 4 {
        // Add more points before giving up.
        if let Ok(more) = conic_points(fd, record, 6, rng) {
            for p in &more {
                let x = record.embed(p);
                let s = support(fd, &x)?;
                total = sum_spans(&total, &s);
            }
        }
    }
    if total.cols() == 4 {
        Ok(ConicClass { tag: ConicTag::Tau, v4: Some(total), vertex: None, v3: None })
    } else {
        Ok(ConicClass { tag: ConicTag::Undetermined, v4: None, vertex: None, v3: None })
    }
}

#[cfg(test)]
mod tests {
    use super::super::planes::{lu_hyperplane, m_space};
    use super::super::{stable_symmetric_gram, w_model, wedge2};
    use super::*;
    use crate::scalars::{FieldDescriptor, Fp};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    fn fp(n: i64) -> Fp {
        Fp::new(n, 97)
    }

    #[test]
    fn sigma_plane_is_classified_with_vertex_and_hyperplane() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v4 = lu_hyperplane(&model, &fp(1), &fp(5));
        let rep = m_space(&model, &v4, None).unwrap();
        let other = rep.split.unwrap();
        let plane = other.other_plane().unwrap().clone();
        // Any nonzero form on a σ-plane classifies by the plane alone.
        let gram = stable_symmetric_gram(&fd97(), 3, &mut rng);
        let record = ConicRecord::new(plane, gram).unwrap();
        let class = classify_conic(&model, &record, &mut rng).unwrap();
        assert_eq!(class.tag, ConicTag::Sigma);
        // The recovered hyperplane is the one we started from.
        assert!(super::super::spans_equal(class.v4.as_ref().unwrap(), &v4));
        assert!(class.vertex.is_some());
    }

    #[test]
    fn pi_plane_is_classified_as_rho() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let gram = stable_symmetric_gram(&fd97(), 3, &mut rng);
        let record = ConicRecord::new(model.pi_plane.clone(), gram).unwrap();
        let class = classify_conic(&model, &record, &mut rng).unwrap();
        assert_eq!(class.tag, ConicTag::Rho);
        let v3 = class.v3.unwrap();
        // The supports sweep U₃ = ⟨f0, f1, f2⟩.
        let expect = Matrix::from_ints(5, 3, &fd97(), &[
            0, 0, 0,
            0, 0, 0,
            1, 0, 0,
            0, 1, 0,
            0, 0, 1,
        ])
        .unwrap();
        assert!(super::super::spans_equal(&v3, &expect));
    }

    #[test]
    fn tau_conic_recovers_its_hyperplane() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // A τ-conic: G(2, V₄) ∩ P(A) for a random 3-space A ⊂ ∧²V₄,
        // with V₄ = ⟨e1, e2, f0, f1⟩.
        let fd = fd97();
        let donor = fp(0);
        let cols = [0usize, 1, 2, 3];
        loop {
            let combos: Vec<Vec<Fp>> = (0..3)
                .map(|_| {
                    // Random element of ∧²V₄.
                    let mut acc = vec![fp(0); 10];
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            let c = donor.random_like(&mut rng);
                            let mut u = vec![fp(0); 5];
                            u[cols[i]] = fp(1);
                            let mut v = vec![fp(0); 5];
                            v[cols[j]] = fp(1);
                            let w = wedge2(&u, &v);
                            for (a, b) in acc.iter_mut().zip(w.iter()) {
                                *a = a.clone() + c.clone() * b.clone();
                            }
                        }
                    }
                    acc
                })
                .collect();
            let plane = columns_to_matrix(&fd, 10, &combos);
            if plane.rank() != 3 {
                continue;
            }
            // The restricted cone equation: all five quadrics restrict
            // proportionally on ∧²V₄; take the first nonzero one.
            let grams: Vec<Matrix<Fp>> = model
                .plucker
                .iter()
                .map(|g| restrict_gram(g, &plane))
                .collect();
            let gram = match grams.into_iter().find(|g| g.rank() == 3) {
                Some(g) => g,
                None => continue,
            };
            let record = ConicRecord::new(plane, gram).unwrap();
            let class = classify_conic(&model, &record, &mut rng).unwrap();
            assert_eq!(class.tag, ConicTag::Tau);
            let v4 = class.v4.unwrap();
            let expect = Matrix::from_ints(5, 4, &fd, &[
                1, 0, 0, 0,
                0, 1, 0, 0,
                0, 0, 1, 0,
                0, 0, 0, 1,
                0, 0, 0, 0,
            ])
            .unwrap();
            assert!(super::super::spans_equal(&v4, &expect));
            break;
        }
    }

    #[test]
    fn classification_is_stable_under_basis_change() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v4 = lu_hyperplane(&model, &fp(2), &fp(3));
        let rep = m_space(&model, &v4, None).unwrap();
        let plane = rep.split.unwrap().other_plane().unwrap().clone();
        let gram = stable_symmetric_gram(&fd97(), 3, &mut rng);
        let record = ConicRecord::new(plane.clone(), gram.clone()).unwrap();
        let before = classify_conic(&model, &record, &mut rng).unwrap();
        // Change the basis of the plane by a random invertible matrix.
        for _ in 0..5 {
            let donor = fp(0);
            let g3: Vec<Fp> = (0..9).map(|_| donor.random_like(&mut rng)).collect();
            let change = Matrix::new(3, 3, fd97(), g3).unwrap();
            if change.rank() != 3 {
                continue;
            }
            // A point with new coordinates c has old coordinates C·c, so
            // the form transports by CᵀGC.
            let new_plane = plane.mul(&change).unwrap();
            let new_gram = restrict_gram(&gram, &change);
            let rec2 = ConicRecord::new(new_plane, new_gram).unwrap();
            let after = classify_conic(&model, &rec2, &mut rng).unwrap();
            assert_eq!(before.tag, after.tag);
        }
    }

    #[test]
    fn conic_point_finding_respects_the_form() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let record = ConicRecord::new(
            model.pi_plane.clone(),
            model.cu_dual.clone(),
        )
        .unwrap();
        let pts = conic_points(&fd97(), &record, 5, &mut rng).unwrap();
        assert_eq!(pts.len(), 5);
        for p in &pts {
            assert!(eval_gram(&record.gram, p).is_zero());
            assert!(record.contains(&record.embed(p)));
        }
        let param = parametrize_conic(&fd97(), &record, &mut rng).unwrap();
        for s in 0..10 {
            let x = param.eval(Some(&fp(s)));
            assert!(eval_gram(&record.gram, &x).is_zero());
            assert!(!x.iter().all(|v| v.is_zero()));
        }
        let inf = param.eval(None);
        assert!(eval_gram(&record.gram, &inf).is_zero());
    }
}
