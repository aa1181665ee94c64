//! The projection `κ : W ⇢ P(U₁ ⊕ U₄)` away from the plane `Π`, its
//! quadratic inverse, and the cubic curve `Γ³₀` along which the inverse
//! is indeterminate.

use super::{proportional, WModel, WxError};
use crate::multilinear::{multisets_lex, wedge2_basis_index};
use crate::scalars::{Field, Matrix};

use rand::RngCore;

/// A point of the target `P(U₁ ⊕ U₄)` of the projection, in the chart
/// coordinates `(a, p₀, p₁, p₂, q₂)`.
#[derive(Debug, Clone)]
pub struct KappaImage<F: Field> {
    /// Coefficient on `e1∧e2`.
    pub a: F,
    /// The four coordinates of the `U₄` component.
    pub chart: [F; 4],
}

impl<F: Field> KappaImage<F> {
    /// The five projective coordinates.
    pub fn coords(&self) -> Vec<F> {
        let mut v = vec![self.a.clone()];
        v.extend(self.chart.iter().cloned());
        v
    }
}

/// Projects a point of `P(V₈)` away from `Π`; points of `Π` are refused.
pub fn kappa<F: Field>(model: &WModel<F>, x: &[F]) -> Result<KappaImage<F>, WxError> {
    if model.to_v8_coords(x).is_none() {
        return Err(WxError::Precondition("point is not in the 8-space".into()));
    }
    let w = |i: usize, j: usize| wedge2_basis_index(5, i, j);
    let a = x[w(0, 1)].clone();
    let p0 = model.scalar(0) - x[w(1, 2)].clone();
    let p1 = model.scalar(0) - x[w(1, 3)].clone();
    let p2 = model.scalar(0) - x[w(1, 4)].clone();
    let q2 = x[w(0, 4)].clone();
    if a.is_zero() && [&p0, &p1, &p2, &q2].iter().all(|v| v.is_zero()) {
        return Err(WxError::NonGeneric(
            "projection is indeterminate on the center plane".into(),
        ));
    }
    Ok(KappaImage { a, chart: [p0, p1, p2, q2] })
}

/// The quadratic inverse of the projection: sends `(a : m)` to
/// `a²·e1∧e2 + a·m + P∧Q`. Indeterminate exactly along the cubic where
/// the output vanishes.
pub fn kappa_inverse<F: Field>(
    model: &WModel<F>,
    img: &KappaImage<F>,
) -> Result<Vec<F>, WxError> {
    let f = |n: i64| model.scalar(n);
    let half = f(2).inv().unwrap();
    let a = &img.a;
    let [p0, p1, p2, q2] = &img.chart;
    let p = [p0.clone(), p1.clone(), p2.clone()];
    let q = [p1.clone() * half, f(2) * p2.clone(), q2.clone()];
    let w = |i: usize, j: usize| wedge2_basis_index(5, i, j);
    let mut x = vec![f(0); 10];
    x[w(0, 1)] = a.clone() * a.clone();
    for k in 0..3 {
        x[w(0, 2 + k)] = a.clone() * q[k].clone();
        x[w(1, 2 + k)] = f(-1) * a.clone() * p[k].clone();
    }
    x[w(2, 3)] = p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone();
    x[w(2, 4)] = p[0].clone() * q[2].clone() - p[2].clone() * q[0].clone();
    x[w(3, 4)] = p[1].clone() * q[2].clone() - p[2].clone() * q[1].clone();
    if x.iter().all(|v| v.is_zero()) {
        return Err(WxError::NonGeneric(
            "inverse is indeterminate on the cubic curve".into(),
        ));
    }
    Ok(x)
}

/// A parameter point of the cubic curve `Γ³₀ ⊂ P(U₁ ⊕ U₄)`: the locus
/// `(0 : 1 : 2c : c² : c³)`, with `None` for the point at infinity.
pub fn cubic_curve_point<F: Field>(model: &WModel<F>, c: Option<&F>) -> KappaImage<F> {
    let f = |n: i64| model.scalar(n);
    match c {
        Some(c) => KappaImage {
            a: f(0),
            chart: [
                f(1),
                f(2) * c.clone(),
                c.clone() * c.clone(),
                c.clone() * c.clone() * c.clone(),
            ],
        },
        None => KappaImage { a: f(0), chart: [f(0), f(0), f(0), f(1)] },
    }
}

/// Round-trip and indeterminacy report for the projection.
#[derive(Debug, Clone)]
pub struct KappaReport {
    /// Number of fourfold points sampled.
    pub samples: usize,
    /// How many satisfied `κ⁻¹(κ(x)) = x` projectively.
    pub roundtrips_ok: usize,
    /// The center plane is refused by the projection.
    pub pi_flagged: bool,
    /// The cubic curve is refused by the inverse.
    pub cubic_flagged: bool,
    /// Dimension of the space of quadrics through the cubic curve.
    pub cubic_quadric_dim: usize,
    /// The components of the inverse span exactly that space.
    pub components_span_cubic_quadrics: bool,
}

impl KappaReport {
    /// All checks hold.
    pub fn all_pass(&self) -> bool {
        self.samples > 0
            && self.roundtrips_ok == self.samples
            && self.pi_flagged
            && self.cubic_flagged
            && self.cubic_quadric_dim == 8
            && self.components_span_cubic_quadrics
    }
}

/// Evaluates the quadratic monomial `z_i z_j` pattern at a point.
fn eval_monomial<F: Field>(ms: &[usize], z: &[F]) -> F {
    let mut acc = z[ms[0]].clone();
    for &i in &ms[1..] {
        acc = acc * z[i].clone();
    }
    acc
}

/// Coefficient vectors (over the degree-2 multiset basis in 5 variables)
/// of the eight components of the quadratic inverse.
fn inverse_component_forms<F: Field>(model: &WModel<F>) -> Vec<Vec<F>> {
    let f = |n: i64| model.scalar(n);
    let half = f(2).inv().unwrap();
    let monomials = multisets_lex(5, 2);
    let idx = |i: usize, j: usize| {
        let key = if i <= j { vec![i, j] } else { vec![j, i] };
        monomials.iter().position(|m| *m == key).unwrap()
    };
    let mut forms = Vec::new();
    // a², a·p₀, a·p₁, a·p₂, a·q₂ in the coordinates z = (a, p₀, p₁, p₂, q₂).
    for j in 0..5 {
        let mut v = vec![f(0); monomials.len()];
        v[idx(0, j)] = f(1);
        forms.push(v);
    }
    // The three components of P∧Q.
    let mut v = vec![f(0); monomials.len()];
    v[idx(1, 3)] = f(2);
    v[idx(2, 2)] = f(0) - half.clone();
    forms.push(v);
    let mut v = vec![f(0); monomials.len()];
    v[idx(1, 4)] = f(1);
    v[idx(2, 3)] = f(0) - half;
    forms.push(v);
    let mut v = vec![f(0); monomials.len()];
    v[idx(2, 4)] = f(1);
    v[idx(3, 3)] = f(-2);
    forms.push(v);
    forms
}

/// Runs the round-trip suite: `n` sampled points of the fourfold chart
/// (with random projective scalings) return to themselves through
/// `κ⁻¹ ∘ κ`; the indeterminacy loci are flagged; and the components of
/// the inverse span exactly the quadrics through the cubic curve.
pub fn kappa_roundtrip<F: Field>(
    model: &WModel<F>,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<KappaReport, WxError> {
    let donor = model.scalar(0);
    let mut roundtrips_ok = 0;
    let mut samples = 0;
    while samples < n {
        let x = model.sample_w_point(rng);
        // Random nonzero projective rescaling.
        let mut lambda = donor.random_like(rng);
        if lambda.is_zero() {
            lambda = model.scalar(1);
        }
        let x: Vec<F> = x.iter().map(|v| lambda.clone() * v.clone()).collect();
        samples += 1;
        let img = kappa(model, &x)?;
        let back = kappa_inverse(model, &img)?;
        if proportional(&back, &x) && model.on_w(&back) {
            roundtrips_ok += 1;
        }
    }

    let pi_flagged = (0..3).all(|j| kappa(model, &model.pi_plane.col(j)).is_err());

    // Ten points of the cubic curve: nine parameter values and infinity.
    let params: Vec<F> = (0..9).map(|k| model.scalar(k)).collect();
    for i in 0..params.len() {
        for j in (i + 1)..params.len() {
            if params[i] == params[j] {
                return Err(WxError::EnlargeField(
                    "need nine distinct parameters to pin the cubic curve".into(),
                ));
            }
        }
    }
    let mut curve_points: Vec<KappaImage<F>> = params
        .iter()
        .map(|c| cubic_curve_point(model, Some(c)))
        .collect();
    curve_points.push(cubic_curve_point(model, None));
    let cubic_flagged = curve_points
        .iter()
        .all(|img| kappa_inverse(model, img).is_err());

    // Quadrics through the curve: kernel of evaluation on the samples.
    let monomials = multisets_lex(5, 2);
    let rows: Vec<Vec<F>> = curve_points
        .iter()
        .map(|img| {
            let z = img.coords();
            monomials.iter().map(|ms| eval_monomial(ms, &z)).collect()
        })
        .collect();
    let eval = Matrix::from_row_vectors(model.field(), monomials.len(), &rows).unwrap();
    let cubic_quadric_dim = monomials.len() - eval.rank();

    let comps = inverse_component_forms(model);
    let comp_matrix = Matrix::from_row_vectors(model.field(), monomials.len(), &comps).unwrap();
    let comp_rank = comp_matrix.rank();
    let vanish = comps.iter().all(|form| {
        curve_points.iter().all(|img| {
            let z = img.coords();
            let val = monomials
                .iter()
                .zip(form.iter())
                .fold(model.scalar(0), |acc, (ms, c)| {
                    acc + c.clone() * eval_monomial(ms, &z)
                });
            val.is_zero()
        })
    });
    let components_span_cubic_quadrics =
        vanish && comp_rank == 8 && cubic_quadric_dim == comp_rank;

    Ok(KappaReport {
        samples,
        roundtrips_ok,
        pi_flagged,
        cubic_flagged,
        cubic_quadric_dim,
        components_span_cubic_quadrics,
    })
}

#[cfg(test)]
mod tests {
    use super::super::w_model;
    use super::*;
    use crate::scalars::{FieldDescriptor, Fp};
    use crate::Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_suite_passes_over_f97() {
        let model = w_model::<Fp>(&FieldDescriptor::prime(97).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = kappa_roundtrip(&model, 100, &mut rng).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.samples, 100);
        assert_eq!(rep.cubic_quadric_dim, 8);
    }

    #[test]
    fn roundtrip_suite_passes_over_the_rationals() {
        let model = w_model::<Q>(&FieldDescriptor::rationals());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rep = kappa_roundtrip(&model, 25, &mut rng).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn inverse_lands_on_the_fourfold() {
        let model = w_model::<Fp>(&FieldDescriptor::prime(97).unwrap());
        let f = |n: i64| Fp::new(n, 97);
        // A generic target point pulls back to a fourfold point.
        let img = KappaImage { a: f(3), chart: [f(1), f(4), f(2), f(5)] };
        let x = kappa_inverse(&model, &img).unwrap();
        assert!(model.on_w(&x));
        // Its projection returns the same target point.
        let again = kappa(&model, &x).unwrap();
        assert!(proportional(&again.coords(), &img.coords()));
    }

    #[test]
    fn chart_constraints_are_read_back() {
        // For a fourfold point the omitted coordinates q₀, q₁ are the
        // functions p₁/2 and 2p₂ of the chart.
        let model = w_model::<Fp>(&FieldDescriptor::prime(97).unwrap());
        let f = |n: i64| Fp::new(n, 97);
        let x = model.chart_point(&f(7), &f(8), &f(9), &f(10));
        let img = kappa(&model, &x).unwrap();
        assert_eq!(img.a, f(1));
        assert_eq!(img.chart[0], f(7));
        assert_eq!(img.chart[1], f(8));
        assert_eq!(img.chart[2], f(9));
        assert_eq!(img.chart[3], f(10));
    }
}
