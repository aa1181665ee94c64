//! The threefold `X = W ∩ Ω`: construction with sampled smoothness,
//! degree certificates by Hilbert-function ranks, elliptic quartics
//! `Γ = Q_W ∩ Q_Ω` in hyperplane spaces, the conic involution `ι` by
//! exact residuation, and the incidence geometry of the σ-conic family.

use super::conics::{parametrize_conic, ConicRecord};
use super::planes::{binary_quadratic_on, lu_hyperplane, m_space, MSpaceReport};
use super::{
    col_basis, eval_gram, express_in_span, intersect_spans, polar_gram, proportional,
    restrict_gram, span_contains, spans_equal, stable_symmetric_gram, WModel, WxError,
};
use crate::multilinear::multisets_lex;
use crate::pencils::columns_to_matrix;
use crate::scalars::{BinaryForm, Field, FieldDescriptor, Matrix, Poly};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// The quadric section of the fourfold.
#[derive(Debug, Clone)]
pub struct XModel<F: Field> {
    /// The ambient fourfold model.
    pub w: WModel<F>,
    /// 8×8 symmetric Gram of the section quadric on the `V₈` coordinates.
    pub omega8: Matrix<F>,
    /// Seed that produced the section.
    pub seed: u64,
    /// How many section candidates were discarded before this one.
    pub resamples: usize,
    /// How many sampled points passed the Jacobian smoothness test
    /// (zero over the rationals, where only membership checks run).
    pub smooth_checked: usize,
}

impl<F: Field> XModel<F> {
    /// Whether a 10-vector lies on the affine cone of the threefold.
    pub fn on_x(&self, x: &[F]) -> bool {
        if !self.w.on_w(x) {
            return false;
        }
        match self.w.to_v8_coords(x) {
            Some(y) => eval_gram(&self.omega8, &y).is_zero(),
            None => false,
        }
    }

    /// Jacobian rank of the six defining quadrics at a point given in
    /// `V₈` coordinates (4 at a smooth point of the cone).
    pub fn jacobian_rank(&self, y: &[F]) -> usize {
        let mut rows = Vec::with_capacity(6);
        for g in &self.w.plucker_v8 {
            rows.push(g.mul_vec(&y.to_vec()).unwrap());
        }
        rows.push(self.omega8.mul_vec(&y.to_vec()).unwrap());
        Matrix::from_row_vectors(self.w.field(), 8, &rows).unwrap().rank()
    }

    /// Samples `n` points of the threefold through the fourfold chart:
    /// for random `(p₀,p₁,p₂)` the chart point is affine-linear in `q₂`,
    /// so the section restricts to a quadratic in `q₂`.
    pub fn sample_x_points(
        &self,
        n: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Vec<F>>, WxError> {
        sample_section_points(&self.w, &self.omega8, n, rng)
    }
}

fn sample_section_points<F: Field>(
    w: &WModel<F>,
    omega8: &Matrix<F>,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<Vec<F>>, WxError> {
    let donor = w.scalar(0);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 60 * n + 60 {
            return Err(WxError::NonGeneric(format!(
                "section sampler found only {} of {n} points",
                out.len()
            )));
        }
        let p0 = donor.random_like(rng);
        let p1 = donor.random_like(rng);
        let p2 = donor.random_like(rng);
        let base = w.chart_point(&p0, &p1, &p2, &w.scalar(0));
        let shifted = w.chart_point(&p0, &p1, &p2, &w.scalar(1));
        let dir: Vec<F> = shifted
            .iter()
            .zip(base.iter())
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let y0 = w.to_v8_coords(&base).expect("chart point lies in V₈");
        let y1 = w.to_v8_coords(&dir).expect("chart direction lies in V₈");
        let a = eval_gram(omega8, &y1);
        let b = w.scalar(2) * polar_gram(omega8, &y0, &y1);
        let c = eval_gram(omega8, &y0);
        let poly = Poly::from_coeffs(w.field(), vec![c, b, a]);
        if poly.is_zero() {
            continue;
        }
        for (root, _) in poly.roots_with_multiplicity() {
            if out.len() >= n {
                break;
            }
            let x = w.chart_point(&p0, &p1, &p2, &root);
            out.push(x);
        }
    }
    Ok(out)
}

/// Builds a quadric section with sampled smoothness certification: draws
/// integer-seeded symmetric matrices until `samples` chart points of the
/// section all have Jacobian rank 4, with a bounded number of redraws.
/// Over the rationals the section is seeded without point sampling and
/// only membership checks are available.
pub fn build_x<F: Field>(
    model: &WModel<F>,
    seed: u64,
    samples: usize,
) -> Result<XModel<F>, WxError> {
    let fd = model.field().clone();
    if let Some(p) = fd.characteristic() {
        if p < 31 {
            return Err(WxError::Unsupported(
                fd,
                "section construction needs characteristic at least 31".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EC7_104F);
    let max_attempts = 8;
    let mut resamples = 0;
    loop {
        let omega8: Matrix<F> = stable_symmetric_gram(&fd, 8, &mut rng);
        if omega8.rank() < 8 {
            resamples += 1;
            if resamples >= max_attempts {
                return Err(WxError::NonGeneric(
                    "no smooth section found within the attempt budget".into(),
                ));
            }
            continue;
        }
        let candidate = XModel {
            w: model.clone(),
            omega8,
            seed,
            resamples,
            smooth_checked: 0,
        };
        if fd.characteristic().is_none() {
            return Ok(candidate);
        }
        let points = sample_section_points(model, &candidate.omega8, samples, &mut rng)?;
        let mut ok = true;
        for x in &points {
            let y = model.to_v8_coords(x).expect("section point lies in V₈");
            if candidate.jacobian_rank(&y) != 4 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(XModel { smooth_checked: points.len(), ..candidate });
        }
        resamples += 1;
        if resamples >= max_attempts {
            return Err(WxError::NonGeneric(
                "no smooth section found within the attempt budget".into(),
            ));
        }
    }
}

// ---------------------------------------------------------------------------
// Degree certificates.

/// Incremental row-echelon rank accumulator.
struct RowEchelon<F: Field> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowEchelon<F> {
    fn new() -> Self {
        RowEchelon { rows: Vec::new() }
    }

    /// Reduces and inserts; returns whether the rank grew.
    fn insert(&mut self, mut row: Vec<F>) -> bool {
        for (pivot, basis_row) in &self.rows {
            let c = row[*pivot].clone();
            if !c.is_zero() {
                for (r, b) in row.iter_mut().zip(basis_row.iter()) {
                    *r = r.clone() - c.clone() * b.clone();
                }
            }
        }
        let pivot = match row.iter().position(|v| !v.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].clone().inv().expect("pivot is invertible");
        for r in row.iter_mut() {
            *r = r.clone() * inv.clone();
        }
        self.rows.push((pivot, row));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Values of all degree-`d` monomials at a point.
fn eval_monomials<F: Field>(monomials: &[Vec<usize>], y: &[F], one: &F) -> Vec<F> {
    monomials
        .iter()
        .map(|ms| {
            let mut acc = one.clone();
            for &i in ms {
                acc = acc * y[i].clone();
            }
            acc
        })
        .collect()
}

/// Degree report: the Hilbert function of the homogeneous coordinate
/// ring, its fourth difference (the degree), and the Hilbert function of
/// a zero-dimensional linear section (the degree again, as a length).
#[derive(Debug, Clone)]
pub struct WDegreeReport {
    /// Evaluation ranks of the degree-`d` monomials at sampled points,
    /// `d = 0, …, 6`.
    pub hilbert: Vec<usize>,
    /// Fourth differences at the top degrees.
    pub fourth_differences: Vec<i64>,
    /// The stabilized fourth difference.
    pub degree: i64,
    /// Hilbert function of the codimension-4 linear section in degrees
    /// 1 through 4.
    pub section_hilbert: [usize; 4],
    /// The stabilized section value (the length of the section scheme).
    pub length: usize,
}

impl WDegreeReport {
    /// The full expected shape: Hilbert values of a degree-5 fourfold.
    pub fn all_pass(&self) -> bool {
        self.hilbert == vec![1, 8, 31, 85, 190, 371, 658]
            && self.fourth_differences.iter().all(|&d| d == 5)
            && self.degree == 5
            && self.section_hilbert == [4, 5, 5, 5]
            && self.length == 5
    }
}

/// Computes the degree report over a finite field by sampling chart
/// points until the evaluation ranks stabilize.
pub fn w_degree_report<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<WDegreeReport, WxError> {
    let fd = model.field().clone();
    if fd.characteristic().is_none() {
        return Err(WxError::Unsupported(
            fd,
            "degree certificates sample over a finite field".into(),
        ));
    }
    let one = model.scalar(1);
    let mut hilbert = Vec::new();
    for d in 0..=6usize {
        let monomials = multisets_lex(8, d);
        let mut ech = RowEchelon::new();
        let mut stable = 0;
        let mut used = 0;
        let cap = monomials.len() + 400;
        while stable < 40 && used < cap {
            let x = model.sample_w_point(rng);
            let y = model.to_v8_coords(&x).expect("chart point lies in V₈");
            let row = eval_monomials(&monomials, &y, &one);
            if ech.insert(row) {
                stable = 0;
            } else {
                stable += 1;
            }
            used += 1;
        }
        hilbert.push(ech.rank());
    }
    let h: Vec<i64> = hilbert.iter().map(|&v| v as i64).collect();
    let diff = |v: &[i64]| -> Vec<i64> { v.windows(2).map(|w| w[1] - w[0]).collect() };
    let d4 = diff(&diff(&diff(&diff(&h))));
    let degree = *d4.last().unwrap_or(&0);

    let (section_hilbert, length) = section_hilbert(model, rng)?;

    Ok(WDegreeReport {
        hilbert,
        fourth_differences: d4,
        degree,
        section_hilbert,
        length,
    })
}

/// Gram of a quadratic form on 4 variables as a coefficient vector over
/// the degree-2 multiset basis.
fn gram_to_coeffs<F: Field>(g: &Matrix<F>, idx2: &HashMap<Vec<usize>, usize>) -> Vec<F> {
    let two = g.scalar(2);
    let mut out = vec![g.scalar(0); idx2.len()];
    for i in 0..4 {
        for j in i..4 {
            let c = if i == j {
                g.at(i, i).clone()
            } else {
                two.clone() * g.at(i, j).clone()
            };
            out[idx2[&vec![i, j]]] = c;
        }
    }
    out
}

fn index_map(monomials: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// Hilbert function (degrees 1..4) of the scheme cut on a general
/// codimension-4 linear section by the restricted quadrics.
fn section_hilbert<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<([usize; 4], usize), WxError> {
    let fd = model.field().clone();
    let donor = model.scalar(0);
    'outer: for _ in 0..8 {
        // A random codimension-4 subspace of V₈.
        let rows: Vec<Vec<F>> = (0..4)
            .map(|_| (0..8).map(|_| donor.random_like(rng)).collect())
            .collect();
        let lin = Matrix::from_row_vectors(&fd, 8, &rows).unwrap();
        if lin.rank() != 4 {
            continue;
        }
        let kernel = lin.kernel_basis();
        let c = columns_to_matrix(&fd, 8, &kernel);
        // The five quadrics restricted to the section.
        let grams: Vec<Matrix<F>> = model
            .plucker_v8
            .iter()
            .map(|g| restrict_gram(g, &c))
            .collect();

        let mon2 = multisets_lex(4, 2);
        let mon3 = multisets_lex(4, 3);
        let mon4 = multisets_lex(4, 4);
        let idx2 = index_map(&mon2);
        let idx3 = index_map(&mon3);
        let idx4 = index_map(&mon4);

        let coeffs: Vec<Vec<F>> = grams.iter().map(|g| gram_to_coeffs(g, &idx2)).collect();
        let i2 = Matrix::from_row_vectors(&fd, mon2.len(), &coeffs).unwrap();
        let h2 = mon2.len() - i2.rank();

        // Degree 3: products of the quadrics with the variables.
        let mut rows3 = Vec::new();
        for q in &coeffs {
            for var in 0..4 {
                let mut acc = vec![model.scalar(0); mon3.len()];
                for (ms, k) in idx2.iter() {
                    let mut m = ms.clone();
                    m.push(var);
                    m.sort_unstable();
                    acc[idx3[&m]] = acc[idx3[&m]].clone() + q[*k].clone();
                }
                rows3.push(acc);
            }
        }
        let i3 = Matrix::from_row_vectors(&fd, mon3.len(), &rows3).unwrap();
        let h3 = mon3.len() - i3.rank();

        // Degree 4: products with the degree-2 monomials.
        let mut rows4 = Vec::new();
        for q in &coeffs {
            for ms2 in &mon2 {
                let mut acc = vec![model.scalar(0); mon4.len()];
                for (ms, k) in idx2.iter() {
                    let mut m = ms.clone();
                    m.extend_from_slice(ms2);
                    m.sort_unstable();
                    acc[idx4[&m]] = acc[idx4[&m]].clone() + q[*k].clone();
                }
                rows4.push(acc);
            }
        }
        let i4 = Matrix::from_row_vectors(&fd, mon4.len(), &rows4).unwrap();
        let h4 = mon4.len() - i4.rank();

        // A degenerate section (positive-dimensional or shortened) shows
        // up as a non-stabilizing tail; retry on another section.
        if h3 != h2 || h4 != h3 {
            continue 'outer;
        }
        return Ok(([4, h2, h3, h4], h4));
    }
    Err(WxError::NonGeneric(
        "no transversal linear section found within the attempt budget".into(),
    ))
}

// ---------------------------------------------------------------------------
// Elliptic quartics.

/// Report on the curve `Γ = Q_W ∩ Q_Ω` inside a hyperplane space.
#[derive(Debug, Clone)]
pub struct QuarticReport<F: Field> {
    /// The hyperplane-space data.
    pub m_report: MSpaceReport<F>,
    /// All rational points in hyperplane-space coordinates.
    pub points: Vec<Vec<F>>,
    /// Every listed point lies on the threefold.
    pub all_on_x: bool,
    /// The point count satisfies the genus-1 bound `|N − (q+1)| ≤ 2√q`.
    pub hasse_ok: bool,
    /// For each seeded plane: rational section points and the total
    /// intersection multiplicity (always 4).
    pub plane_sections: Vec<(usize, usize)>,
    /// All plane sections have total multiplicity 4.
    pub sections_ok: bool,
}

/// Enumerates the points of the intersection of two quadric surfaces in
/// `P³` by sweeping the pencil of planes through a fixed line.
fn quartic_points<F: Field>(
    fd: &FieldDescriptor,
    qa: &Matrix<F>,
    qb: &Matrix<F>,
) -> Result<Vec<Vec<F>>, WxError> {
    if fd.order().is_none() {
        return Err(WxError::Unsupported(
            fd.clone(),
            "point enumeration needs a finite field".into(),
        ));
    }
    let one = F::from_descriptor(fd, 1).unwrap();
    let zero = F::from_descriptor(fd, 0).unwrap();
    let elements = enumerate_field::<F>(fd)?;

    let unit = |i: usize| -> Vec<F> {
        let mut v = vec![zero.clone(); 4];
        v[i] = one.clone();
        v
    };
    let mut found: Vec<Vec<F>> = Vec::new();
    let mut push = |pt: Vec<F>| {
        if pt.iter().all(|v| v.is_zero()) {
            return;
        }
        let norm = normalize_projective(pt);
        if !found.iter().any(|p| *p == norm) {
            found.push(norm);
        }
    };

    // The line L = ⟨u0, u1⟩ and its residual directions.
    let u0 = unit(0);
    let u1 = unit(1);
    let u2 = unit(2);
    let u3 = unit(3);

    // Points on L itself.
    let fa = binary_quadratic_on(qa, &u0, &u1);
    let fb = binary_quadratic_on(qb, &u0, &u1);
    if fa.is_zero() && fb.is_zero() {
        return Err(WxError::NonGeneric("the scan line lies on the curve".into()));
    }
    let gcd = if fa.is_zero() {
        fb.clone()
    } else if fb.is_zero() {
        fa.clone()
    } else {
        fa.gcd(&fb)
    };
    if gcd.degree() > 0 {
        for (root, _) in gcd.p1_roots_with_multiplicity() {
            let pt = match &root {
                Some(t) => vec![one.clone(), t.clone(), zero.clone(), zero.clone()],
                None => vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
            };
            if eval_gram(qa, &pt).is_zero() && eval_gram(qb, &pt).is_zero() {
                push(pt);
            }
        }
    }

    // Sweep the planes H_t = ⟨u0, u1, u2 + t·u3⟩ and H_∞ = ⟨u0, u1, u3⟩;
    // every point of P³ off L lies on exactly one of them.
    let mut dirs: Vec<Vec<F>> = elements
        .iter()
        .map(|t| {
            let mut d = u2.clone();
            d[3] = t.clone();
            d
        })
        .collect();
    dirs.push(u3.clone());

    for d in dirs {
        let h = columns_to_matrix(fd, 4, &[u0.clone(), u1.clone(), d.clone()]);
        let ra = restrict_gram(qa, &h);
        let rb = restrict_gram(qb, &h);
        let (pts, _) = conic_pencil_intersection(fd, &ra, &rb)?;
        for pt_h in pts {
            let pt = h.mul_vec(&pt_h).unwrap();
            debug_assert!(eval_gram(qa, &pt).is_zero() && eval_gram(qb, &pt).is_zero());
            push(pt);
        }
    }
    Ok(found)
}

/// All field elements (finite fields only).
fn enumerate_field<F: Field>(fd: &FieldDescriptor) -> Result<Vec<F>, WxError> {
    match fd {
        FieldDescriptor::Prime { p } => Ok((0..*p as i64)
            .map(|n| F::from_descriptor(fd, n).unwrap())
            .collect()),
        FieldDescriptor::Quadratic { p, r } => {
            // a + b·√r over the base scan, with √r the extension generator.
            let s = F::from_descriptor(fd, *r as i64)
                .unwrap()
                .sqrt()
                .ok_or_else(|| {
                    WxError::NonGeneric("extension generator has no square root".into())
                })?;
            let mut out = Vec::with_capacity((p * p) as usize);
            for a in 0..*p as i64 {
                let am = F::from_descriptor(fd, a).unwrap();
                for b in 0..*p as i64 {
                    let bm = F::from_descriptor(fd, b).unwrap();
                    out.push(am.clone() + bm * s.clone());
                }
            }
            Ok(out)
        }
        FieldDescriptor::Rationals => Err(WxError::Unsupported(
            fd.clone(),
            "cannot enumerate an infinite field".into(),
        )),
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
fn normalize_projective<F: Field>(v: Vec<F>) -> Vec<F> {
    let pivot = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    let inv = v[pivot].clone().inv().unwrap();
    v.into_iter().map(|c| c * inv.clone()).collect()
}

/// A conic written as `a·z² + b(u0,u1)·z + c(u0,u1)` in the coordinate
/// `z = u2`.
fn z_decompose<F: Field>(fd: &FieldDescriptor, g: &Matrix<F>) -> (F, BinaryForm<F>, BinaryForm<F>) {
    let two = F::from_descriptor(fd, 2).unwrap();
    let a = g.at(2, 2).clone();
    let b = BinaryForm::new(
        fd,
        1,
        vec![two.clone() * g.at(0, 2).clone(), two.clone() * g.at(1, 2).clone()],
    );
    let c = BinaryForm::new(
        fd,
        2,
        vec![
            g.at(0, 0).clone(),
            two.clone() * g.at(0, 1).clone(),
            g.at(1, 1).clone(),
        ],
    );
    (a, b, c)
}

/// Sylvester resultant in `z` of two conics in `z`-decomposed form:
/// `R = (a·c' − a'·c)² − (a·b' − a'·b)(b·c' − b'·c)`, a binary quartic.
fn conic_resultant<F: Field>(
    da: &(F, BinaryForm<F>, BinaryForm<F>),
    db: &(F, BinaryForm<F>, BinaryForm<F>),
) -> BinaryForm<F> {
    let (aa, ab, ac) = da;
    let (ba, bb, bc) = db;
    let t1 = ac.scale(ba).sub(&bc.scale(aa));
    let t2 = ab.mul(bc).sub(&bb.mul(ac));
    let t3 = bb.scale(aa).sub(&ab.scale(ba));
    t1.mul(&t1).sub(&t2.mul(&t3))
}

/// Completes a nonzero integer direction to an invertible 3×3 matrix
/// whose last column is that direction.
fn resolving_change<F: Field>(fd: &FieldDescriptor, v: [i64; 3]) -> Option<Matrix<F>> {
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mut ints = [0i64; 9];
        ints[3 * i] = 1;
        ints[3 * j + 1] = 1;
        ints[2] = v[0];
        ints[5] = v[1];
        ints[8] = v[2];
        let m = Matrix::from_ints(3, 3, fd, &ints).unwrap();
        if m.rank() == 3 {
            return Some(m);
        }
    }
    None
}

/// Common zeros of two conics in `P²`, with the total intersection
/// multiplicity over the algebraic closure (4, by the nonvanishing of
/// the quartic resultant). The projection apex is moved to a point off
/// at least one conic before the resultant is trusted; a resultant that
/// still vanishes identically certifies a shared component.
fn conic_pencil_intersection<F: Field>(
    fd: &FieldDescriptor,
    ga: &Matrix<F>,
    gb: &Matrix<F>,
) -> Result<(Vec<Vec<F>>, usize), WxError> {
    let zero = F::from_descriptor(fd, 0).unwrap();
    let one = F::from_descriptor(fd, 1).unwrap();

    // Candidate apexes in general position: two conics without a common
    // component share at most 4 points, so one of 8 candidates misses.
    let candidates: [[i64; 3]; 8] = [
        [0, 0, 1],
        [0, 1, 0],
        [1, 0, 0],
        [1, 1, 1],
        [1, 2, 3],
        [1, 4, 9],
        [2, 5, 1],
        [3, 1, 7],
    ];
    for cand in candidates {
        let change = match resolving_change::<F>(fd, cand) {
            Some(c) => c,
            None => continue,
        };
        let ra = restrict_gram(ga, &change);
        let rb = restrict_gram(gb, &change);
        if ra.at(2, 2).is_zero() && rb.at(2, 2).is_zero() {
            continue;
        }
        let da = z_decompose(fd, &ra);
        let db = z_decompose(fd, &rb);
        let resultant = conic_resultant(&da, &db);
        if resultant.is_zero() {
            // With the apex off one conic this forces a common component.
            return Err(WxError::NonGeneric(
                "the two conics share a component".into(),
            ));
        }

        let mut out: Vec<Vec<F>> = Vec::new();
        {
            let (aa, ab, ac) = &da;
            let (ba, bb, bc) = &db;
            let mut handle_direction = |u0: F, u1: F| {
                let pa = Poly::from_coeffs(
                    fd,
                    vec![ac.eval(&u0, &u1), ab.eval(&u0, &u1), aa.clone()],
                );
                let pb = Poly::from_coeffs(
                    fd,
                    vec![bc.eval(&u0, &u1), bb.eval(&u0, &u1), ba.clone()],
                );
                let common = if pa.is_zero() {
                    pb
                } else if pb.is_zero() {
                    pa
                } else {
                    pa.gcd(&pb)
                };
                for (root, _) in common.roots_with_multiplicity() {
                    out.push(vec![u0.clone(), u1.clone(), root]);
                }
            };
            for (root, _) in resultant.p1_roots_with_multiplicity() {
                match root {
                    Some(t) => handle_direction(one.clone(), t),
                    None => handle_direction(zero.clone(), one.clone()),
                }
            }
        }
        // The apex itself is on no line of the direction sweep.
        let apex = vec![zero.clone(), zero.clone(), one.clone()];
        if eval_gram(&ra, &apex).is_zero() && eval_gram(&rb, &apex).is_zero() {
            out.push(apex);
        }
        let mapped = out
            .into_iter()
            .map(|pt| change.mul_vec(&pt).unwrap())
            .collect();
        return Ok((mapped, resultant.degree()));
    }
    Err(WxError::NonGeneric(
        "no resolving apex for the conic pair".into(),
    ))
}

/// Enumerates the elliptic quartic `Γ = Q_W ∩ Q_Ω` in the hyperplane
/// space of `v4` and certifies its plane-section degree.
pub fn elliptic_quartic<F: Field>(
    x: &XModel<F>,
    v4: &Matrix<F>,
    rng: &mut dyn RngCore,
) -> Result<QuarticReport<F>, WxError> {
    let fd = x.w.field().clone();
    let m_report = m_space(&x.w, v4, Some(&x.omega8))?;
    if m_report.reducible {
        return Err(WxError::Precondition(
            "the hyperplane contains the isotropic 3-space: the quadric splits".into(),
        ));
    }
    let q_w = m_report.q_w.clone();
    let q_om = m_report.q_omega.clone().expect("section quadric was supplied");

    let points = quartic_points(&fd, &q_w, &q_om)?;
    let all_on_x = points.iter().all(|pt| {
        let amb = m_report.basis.mul_vec(pt).unwrap();
        x.on_x(&amb)
    });
    let n = points.len() as i64;
    let q = fd.order().unwrap() as i64;
    let hasse_ok = (n - q - 1).pow(2) <= 4 * q;

    // Seeded plane sections: total intersection multiplicity 4, from the
    // degree of the nonvanishing resultant of the restricted conics.
    let donor = x.w.scalar(0);
    let mut plane_sections = Vec::new();
    let mut sections_ok = true;
    let mut tried = 0;
    while plane_sections.len() < 5 && tried < 40 {
        tried += 1;
        let cols: Vec<Vec<F>> = (0..3)
            .map(|_| (0..4).map(|_| donor.random_like(rng)).collect())
            .collect();
        let h = columns_to_matrix(&fd, 4, &cols);
        if h.rank() != 3 {
            continue;
        }
        let ra = restrict_gram(&q_w, &h);
        let rb = restrict_gram(&q_om, &h);
        let (section, multiplicity) = match conic_pencil_intersection(&fd, &ra, &rb) {
            Ok(result) => result,
            Err(_) => {
                sections_ok = false;
                continue;
            }
        };
        sections_ok &= multiplicity == 4;
        plane_sections.push((section.len(), multiplicity));
    }

    Ok(QuarticReport {
        m_report,
        points,
        all_on_x,
        hasse_ok,
        plane_sections,
        sections_ok,
    })
}

// ---------------------------------------------------------------------------
// The involution ι.

/// Output of the conic involution.
#[derive(Debug, Clone)]
pub struct IotaReport<F: Field> {
    /// The residual conic `ι(c)`.
    pub conic: ConicRecord<F>,
    /// The intersection line of the two conic planes (columns, ambient).
    pub line: Matrix<F>,
    /// The two conics meet transversally (two distinct closure points).
    pub meets_distinct: bool,
    /// Intersection length counted with multiplicity (2 when sane).
    pub meet_count: usize,
    /// Number of rational intersection points.
    pub rational_meet_points: usize,
    /// `ι(ι(c)) = c` was verified.
    pub involution_ok: bool,
    /// Whether the reducible (σ/ρ) shortcut was taken.
    pub split_case: bool,
}

/// Applies the involution to a conic on the threefold lying in the
/// hyperplane space of `v4`: the residual of the conic in the quartic
/// curve `Γ = Q_W ∩ Q_Ω` is again a plane conic, found exactly from the
/// rank-2 member of the restricted quadric pencil.
pub fn iota<F: Field>(
    x: &XModel<F>,
    conic: &ConicRecord<F>,
    v4: &Matrix<F>,
) -> Result<IotaReport<F>, WxError> {
    iota_depth(x, conic, v4, true)
}

fn iota_depth<F: Field>(
    x: &XModel<F>,
    conic: &ConicRecord<F>,
    v4: &Matrix<F>,
    check_involution: bool,
) -> Result<IotaReport<F>, WxError> {
    let fd = x.w.field().clone();
    let m_report = m_space(&x.w, v4, Some(&x.omega8))?;
    let m = &m_report.basis;

    // The conic plane in hyperplane-space coordinates.
    let mut a_cols = Vec::with_capacity(3);
    for j in 0..3 {
        let c = express_in_span(m, &conic.plane.col(j)).ok_or_else(|| {
            WxError::Precondition("conic plane is not inside the hyperplane space".into())
        })?;
        a_cols.push(c);
    }
    let a_m = columns_to_matrix(&fd, 4, &a_cols);

    let q_w = &m_report.q_w;
    let q_om = m_report.q_omega.as_ref().expect("section quadric was supplied");

    if m_report.reducible {
        // σ/ρ shortcut: the Grassmannian quadric splits into two planes
        // and the conic plane must be one of them; the residual conic is
        // the section quadric on the other.
        let split = m_report.split.clone().ok_or_else(|| {
            WxError::NonGeneric("reducible quadric without split data".into())
        })?;
        let which = (0..2)
            .find(|&i| spans_equal(&split.planes[i], &conic.plane))
            .ok_or_else(|| {
                WxError::Precondition(
                    "conic plane is not a component of the split quadric".into(),
                )
            })?;
        let other = split.planes[1 - which].clone();
        let mut other_v8 = Vec::with_capacity(3);
        for j in 0..3 {
            other_v8.push(x.w.to_v8_coords(&other.col(j)).expect("plane is in V₈"));
        }
        let gram = restrict_gram(&x.omega8, &columns_to_matrix(&fd, 8, &other_v8));
        let residual = ConicRecord::new(other.clone(), gram)?;
        let line = intersect_spans(&conic.plane, &other);
        let (meets_distinct, meet_count, rational) = meet_certificate(conic, &line)?;
        let involution_ok = if check_involution {
            let back = iota_depth(x, &residual, v4, false)?;
            spans_equal(&back.conic.plane, &conic.plane)
        } else {
            true
        };
        return Ok(IotaReport {
            conic: residual,
            line,
            meets_distinct,
            meet_count,
            rational_meet_points: rational,
            involution_ok,
            split_case: true,
        });
    }

    // Both restricted forms must vanish on the conic, i.e. be
    // proportional to its form after the coordinate change.
    let g_w = restrict_gram(q_w, &a_m);
    let g_om = restrict_gram(q_om, &a_m);
    let flat = |g: &Matrix<F>| -> Vec<F> {
        (0..3).flat_map(|i| (0..3).map(move |j| g.at(i, j).clone())).collect()
    };
    let flat_w = flat(&g_w);
    let flat_om = flat(&g_om);
    let gram_flat = {
        // The conic's own form, transported: the record's gram is already
        // in plane coordinates, directly comparable.
        flat(&conic.gram)
    };
    for (name, f) in [("Grassmannian", &flat_w), ("section", &flat_om)] {
        if !f.iter().all(|v| v.is_zero()) && !proportional(f, &gram_flat) {
            return Err(WxError::Precondition(format!(
                "conic does not lie on the {name} quadric of its hyperplane space"
            )));
        }
    }

    // The unique singular pencil member vanishing on the plane.
    let stacked = Matrix::from_row_vectors(&fd, 2, &(0..9)
        .map(|k| vec![flat_w[k].clone(), flat_om[k].clone()])
        .collect::<Vec<_>>())
    .unwrap();
    let kernel = stacked.kernel_basis();
    if kernel.len() != 1 {
        return Err(WxError::NonGeneric(format!(
            "restricted pencil drops rank in dimension {}",
            kernel.len()
        )));
    }
    let alpha = kernel[0][0].clone();
    let beta = kernel[0][1].clone();
    let s = q_w.scale(&alpha).add(&q_om.scale(&beta)).unwrap();
    let s_rank = s.rank();
    if s_rank != 2 {
        return Err(WxError::NonGeneric(format!(
            "singular pencil member has rank {s_rank}; the residual is not a plane"
        )));
    }

    // ker S = the intersection line of the two planes.
    let ker = s.kernel_basis();
    let ker_m = columns_to_matrix(&fd, 4, &ker);

    // A vector of A off the kernel.
    let a_vec = (0..3)
        .map(|j| a_m.col(j))
        .find(|c| !s.mul_vec(c).unwrap().iter().all(|v| v.is_zero()))
        .ok_or_else(|| WxError::NonGeneric("conic plane is singular for the pencil".into()))?;
    // A direction with nonzero polar pairing against it.
    let donor_dirs: Vec<Vec<F>> = (0..4)
        .map(|i| {
            let mut u = vec![x.w.scalar(0); 4];
            u[i] = x.w.scalar(1);
            u
        })
        .collect();
    let u_vec = donor_dirs
        .into_iter()
        .find(|u| !polar_gram(&s, &a_vec, u).is_zero())
        .ok_or_else(|| WxError::NonGeneric("no transversal direction for the split".into()))?;

    // The second isotropic direction of S on ⟨a, u⟩ (the first is a):
    // q_S(s·a + t·u) = t·(2s·B(a,u) + t·q_S(u)).
    let b = polar_gram(&s, &a_vec, &u_vec);
    let qu = eval_gram(&s, &u_vec);
    let scale_a = x.w.scalar(0) - qu;
    let scale_u = x.w.scalar(2) * b;
    let w_vec: Vec<F> = a_vec
        .iter()
        .zip(u_vec.iter())
        .map(|(p, q)| scale_a.clone() * p.clone() + scale_u.clone() * q.clone())
        .collect();
    debug_assert!(eval_gram(&s, &w_vec).is_zero());

    let residual_m = col_basis(&columns_to_matrix(&fd, 4, &[
        ker[0].clone(),
        ker[1].clone(),
        w_vec,
    ]));
    if residual_m.cols() != 3 {
        return Err(WxError::NonGeneric("residual plane is degenerate".into()));
    }
    if spans_equal(&residual_m, &a_m) {
        return Err(WxError::NonGeneric(
            "residual plane equals the conic plane: tangent configuration".into(),
        ));
    }

    // The residual conic form: any pencil member independent of S
    // restricts to it; both named quadrics work unless one is S itself.
    let r_w = restrict_gram(q_w, &residual_m);
    let gram_res = if r_w.rank() > 0 {
        r_w
    } else {
        restrict_gram(q_om, &residual_m)
    };
    let residual_plane = m.mul(&residual_m).unwrap();
    let residual = ConicRecord::new(residual_plane.clone(), gram_res)?;

    let line = m.mul(&ker_m).unwrap();
    let (meets_distinct, meet_count, rational) = meet_certificate(conic, &line)?;

    let involution_ok = if check_involution {
        let back = iota_depth(x, &residual, v4, false)?;
        spans_equal(&back.conic.plane, &conic.plane)
    } else {
        true
    };

    Ok(IotaReport {
        conic: residual,
        line,
        meets_distinct,
        meet_count,
        rational_meet_points: rational,
        involution_ok,
        split_case: false,
    })
}

/// Certifies the intersection of a conic with a line in its plane. The
/// restricted binary quadratic must be nonzero; the intersection scheme
/// then has length 2 over the closure. Also reports whether the two
/// closure points are distinct (squarefree form) and how many are
/// rational.
fn meet_certificate<F: Field>(
    conic: &ConicRecord<F>,
    line: &Matrix<F>,
) -> Result<(bool, usize, usize), WxError> {
    if line.cols() != 2 {
        return Err(WxError::NonGeneric(format!(
            "conic planes meet in dimension {}, expected a line",
            line.cols()
        )));
    }
    let mut in_plane = Vec::with_capacity(2);
    for j in 0..2 {
        let c = express_in_span(&conic.plane, &line.col(j)).ok_or_else(|| {
            WxError::NonGeneric("intersection line is not inside the conic plane".into())
        })?;
        in_plane.push(c);
    }
    let form = binary_quadratic_on(&conic.gram, &in_plane[0], &in_plane[1]);
    if form.is_zero() {
        return Err(WxError::NonGeneric(
            "intersection line lies on the conic".into(),
        ));
    }
    let meet_count = form.degree();
    // Distinctness of the two closure points via the discriminant.
    let fd = conic.gram.field();
    let zero = F::from_descriptor(fd, 0).unwrap();
    let one = F::from_descriptor(fd, 1).unwrap();
    let four = F::from_descriptor(fd, 4).unwrap();
    let a = form.eval(&one, &zero);
    let c = form.eval(&zero, &one);
    let b = form.eval(&one, &one) - a.clone() - c.clone();
    let disc = b.clone() * b - four * a * c;
    let meets_distinct = !disc.is_zero();
    let rational = form.p1_roots_with_multiplicity().len();
    Ok((meets_distinct, meet_count, rational))
}

// ---------------------------------------------------------------------------
// σ-conics.

/// Incidence report for the σ-conic family against the special conic.
#[derive(Debug, Clone)]
pub struct SigmaReport<F: Field> {
    /// The special conic `c_X = Π ∩ Ω`.
    pub c_x: ConicRecord<F>,
    /// Number of σ-conics in the family (all of `P¹(F_p)`).
    pub family_size: usize,
    /// Every hyperplane quadric in the family split through `Π`.
    pub all_split: bool,
    /// Every σ-conic meets `c_X` in length exactly 2.
    pub all_meet_length_2: bool,
    /// Sampled distinct pairs of σ-conics that are disjoint.
    pub disjoint_pairs: usize,
    /// Number of pairs sampled.
    pub pair_samples: usize,
    /// Histogram of incidence counts over the rational points of `c_X`:
    /// how many points lie on 0, 1, 2 σ-conics.
    pub incidence_histogram: [usize; 3],
    /// Largest incidence count observed.
    pub max_incidence: usize,
}

impl<F: Field> SigmaReport<F> {
    /// The structural checks hold: full splitting, length-2 meets with
    /// `c_X`, mostly-disjoint pairs, incidence bounded by 2 and attained.
    pub fn all_pass(&self) -> bool {
        self.all_split
            && self.all_meet_length_2
            && self.disjoint_pairs * 10 >= self.pair_samples * 8
            && self.max_incidence == 2
            && self.incidence_histogram[2] > 0
    }
}

/// Scans the full pencil of hyperplanes through the isotropic 3-space,
/// forms every σ-conic `Π_{V₄} ∩ Ω`, and verifies the incidence geometry
/// against the special conic `c_X`.
pub fn sigma_incidences<F: Field>(
    x: &XModel<F>,
    pair_samples: usize,
    rng: &mut dyn RngCore,
) -> Result<SigmaReport<F>, WxError> {
    let fd = x.w.field().clone();
    let p = match (fd.characteristic(), fd.order()) {
        (Some(p), Some(o)) if o == p as u128 => p,
        _ => {
            return Err(WxError::Unsupported(
                fd,
                "the σ-family scan runs over a prime field".into(),
            ))
        }
    };

    // c_X = Π ∩ Ω.
    let pi_v8 = {
        let mut cols = Vec::with_capacity(3);
        for j in 0..3 {
            cols.push(x.w.to_v8_coords(&x.w.pi_plane.col(j)).unwrap());
        }
        columns_to_matrix(&fd, 8, &cols)
    };
    let gram_cx = restrict_gram(&x.omega8, &pi_v8);
    if gram_cx.rank() != 3 {
        return Err(WxError::NonGeneric(
            "the special conic is degenerate for this section".into(),
        ));
    }
    let c_x = ConicRecord::new(x.w.pi_plane.clone(), gram_cx)?;

    // The full σ-family.
    let mut params: Vec<(F, F)> = vec![(x.w.scalar(0), x.w.scalar(1))];
    for n in 0..p as i64 {
        params.push((x.w.scalar(1), x.w.scalar(n)));
    }
    let mut sigma_planes: Vec<Matrix<F>> = Vec::with_capacity(params.len());
    let mut all_split = true;
    for (lam, mu) in &params {
        let v4 = lu_hyperplane(&x.w, lam, mu);
        let rep = m_space(&x.w, &v4, None)?;
        match rep.split.and_then(|s| s.other_plane().cloned()) {
            Some(pl) => sigma_planes.push(pl),
            None => {
                all_split = false;
            }
        }
    }
    let family_size = sigma_planes.len();

    // (a) Each σ-conic meets c_X in length 2: the section quadric
    // restricted to the tangent line Π ∩ Π_{V₄} is a nonzero binary
    // quadratic.
    let mut all_meet_length_2 = true;
    for pl in &sigma_planes {
        let line = intersect_spans(&x.w.pi_plane, pl);
        match meet_certificate(&c_x, &line) {
            Ok((_, count, _)) => all_meet_length_2 &= count == 2,
            Err(_) => all_meet_length_2 = false,
        }
    }

    // (b) Sampled pairs of σ-conics: disjoint exactly when the section
    // quadric does not vanish at the single point Π_{V₄} ∩ Π_{V₄'}.
    let mut disjoint_pairs = 0;
    let mut sampled = 0;
    let mut guard = 0;
    while sampled < pair_samples && guard < 40 * pair_samples {
        guard += 1;
        let i = (rng.next_u64() % family_size as u64) as usize;
        let j = (rng.next_u64() % family_size as u64) as usize;
        if i == j {
            continue;
        }
        let meet = intersect_spans(&sigma_planes[i], &sigma_planes[j]);
        if meet.cols() != 1 {
            continue;
        }
        let pt = meet.col(0);
        let y = x.w.to_v8_coords(&pt).expect("plane point is in V₈");
        sampled += 1;
        if !eval_gram(&x.omega8, &y).is_zero() {
            disjoint_pairs += 1;
        }
    }

    // (c) Incidence counts over the rational points of c_X.
    let param = parametrize_conic(&fd, &c_x, rng)?;
    let mut histogram = [0usize; 3];
    let mut max_incidence = 0usize;
    let mut s_values: Vec<Option<F>> = (0..p as i64).map(|n| Some(x.w.scalar(n))).collect();
    s_values.push(None);
    for s in &s_values {
        let pt_plane = param.eval(s.as_ref());
        let pt = c_x.embed(&pt_plane);
        let count = sigma_planes
            .iter()
            .filter(|pl| span_contains(pl, &pt))
            .count();
        max_incidence = max_incidence.max(count);
        if count < 3 {
            histogram[count] += 1;
        }
    }

    Ok(SigmaReport {
        c_x,
        family_size,
        all_split,
        all_meet_length_2,
        disjoint_pairs,
        pair_samples: sampled,
        incidence_histogram: histogram,
        max_incidence,
    })
}

#[cfg(test)]
mod tests {
    use super::super::conics::{classify_conic, ConicTag};
    use super::super::w_model;
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

    fn test_x() -> XModel<Fp> {
        let model = w_model::<Fp>(&fd97());
        build_x(&model, 1, 60).unwrap()
    }

    #[test]
    fn sections_are_smooth_on_samples() {
        let x = test_x();
        assert_eq!(x.smooth_checked, 60);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let pts = x.sample_x_points(20, &mut rng).unwrap();
        for p in &pts {
            assert!(x.on_x(p));
        }
    }

    #[test]
    fn small_characteristic_is_refused() {
        let model = w_model::<Fp>(&FieldDescriptor::prime(7).unwrap());
        match build_x(&model, 0, 10) {
            Err(WxError::Unsupported(_, _)) => {}
            other => panic!("expected an unsupported-field error, got {other:?}"),
        }
    }

    #[test]
    fn degree_report_certifies_a_quintic_fourfold() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = w_degree_report(&model, &mut rng).unwrap();
        assert_eq!(rep.hilbert, vec![1, 8, 31, 85, 190, 371, 658]);
        assert_eq!(rep.degree, 5);
        assert_eq!(rep.section_hilbert, [4, 5, 5, 5]);
        assert_eq!(rep.length, 5);
        assert!(rep.all_pass());
    }

    #[test]
    fn elliptic_quartic_enumerates_and_checks() {
        let x = test_x();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // A hyperplane avoiding U₃: e1,e2,f0,f1 span plus a mix.
        let v4 = Matrix::from_ints(5, 4, &fd97(), &[
            1, 0, 0, 0,
            0, 1, 0, 0,
            0, 0, 1, 0,
            0, 0, 0, 1,
            0, 0, 0, 0,
        ])
        .unwrap();
        let rep = elliptic_quartic(&x, &v4, &mut rng).unwrap();
        assert!(rep.all_on_x);
        assert!(rep.hasse_ok, "count {} out of genus-1 range", rep.points.len());
        assert!(rep.sections_ok, "{:?}", rep.plane_sections);
        assert_eq!(rep.plane_sections.len(), 5);
        for (_, mult) in &rep.plane_sections {
            assert_eq!(*mult, 4);
        }
    }

    #[test]
    fn iota_on_the_special_conic_gives_a_sigma_conic() {
        let x = test_x();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // V₄ ⊃ U₃: the split case; ι(c_X) is the σ-conic of V₄.
        let v4 = lu_hyperplane(&x.w, &fp(1), &fp(3));
        let pi_v8 = {
            let mut cols = Vec::new();
            for j in 0..3 {
                cols.push(x.w.to_v8_coords(&x.w.pi_plane.col(j)).unwrap());
            }
            columns_to_matrix(&fd97(), 8, &cols)
        };
        let c_x = ConicRecord::new(
            x.w.pi_plane.clone(),
            restrict_gram(&x.omega8, &pi_v8),
        )
        .unwrap();
        let rep = iota(&x, &c_x, &v4).unwrap();
        assert!(rep.split_case);
        assert!(rep.involution_ok);
        assert_eq!(rep.meet_count, 2);
        let class = classify_conic(&x.w, &rep.conic, &mut rng).unwrap();
        assert_eq!(class.tag, ConicTag::Sigma);
    }

    #[test]
    fn sigma_suite_passes() {
        let x = test_x();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rep = sigma_incidences(&x, 10, &mut rng).unwrap();
        assert_eq!(rep.family_size, 98);
        assert!(rep.all_split);
        assert!(rep.all_meet_length_2);
        assert!(rep.max_incidence <= 2);
        assert!(rep.incidence_histogram[2] > 0, "{:?}", rep.incidence_histogram);
        assert!(rep.all_pass(), "{rep:?}");
    }

    fn p2_points(f: &dyn Fn(i64) -> Fp) -> Vec<Vec<Fp>> {
        let mut points = Vec::new();
        for b in 0..31 {
            for c in 0..31 {
                points.push(vec![f(1), f(b), f(c)]);
            }
        }
        for c in 0..31 {
            points.push(vec![f(0), f(1), f(c)]);
        }
        points.push(vec![f(0), f(0), f(1)]);
        points
    }

    #[test]
    fn conic_pencil_intersection_matches_brute_force() {
        // Explicit conic pairs over a small prime field, including one
        // where the standard apex lies on both conics.
        let fd = FieldDescriptor::prime(31).unwrap();
        let f = |n: i64| Fp::new(n, 31);
        let pairs: Vec<(Vec<i64>, Vec<i64>)> = vec![
            (
                vec![1, 0, 0, 0, 1, 0, 0, 0, -1],
                vec![0, 1, 0, 1, 0, 1, 0, 1, 2],
            ),
            // Both conics vanish at (0 : 0 : 1).
            (
                vec![1, 2, 3, 2, 5, 1, 3, 1, 0],
                vec![2, 0, 1, 0, 7, 4, 1, 4, 0],
            ),
        ];
        for (ia, ib) in pairs {
            let ga = Matrix::from_ints(3, 3, &fd, &ia).unwrap();
            let gb = Matrix::from_ints(3, 3, &fd, &ib).unwrap();
            let (fast, mult) = conic_pencil_intersection::<Fp>(&fd, &ga, &gb).unwrap();
            assert_eq!(mult, 4);
            let mut brute = Vec::new();
            for pt in p2_points(&f) {
                if eval_gram(&ga, &pt).is_zero() && eval_gram(&gb, &pt).is_zero() {
                    brute.push(normalize_projective(pt));
                }
            }
            let mut fast_norm: Vec<Vec<Fp>> =
                fast.into_iter().map(normalize_projective).collect();
            fast_norm.sort_by_key(|v| format!("{v:?}"));
            fast_norm.dedup();
            brute.sort_by_key(|v| format!("{v:?}"));
            assert_eq!(fast_norm, brute);
        }
    }

    #[test]
    fn quartic_sweep_matches_brute_scan_of_p3() {
        let fd = FieldDescriptor::prime(31).unwrap();
        let f = |n: i64| Fp::new(n, 31);
        let qa = Matrix::from_ints(4, 4, &fd, &[
            1, 0, 0, 2,
            0, 3, 1, 0,
            0, 1, -1, 0,
            2, 0, 0, 5,
        ])
        .unwrap();
        let qb = Matrix::from_ints(4, 4, &fd, &[
            0, 1, 0, 0,
            1, 2, 0, 3,
            0, 0, 4, 1,
            0, 3, 1, 1,
        ])
        .unwrap();
        let fast = quartic_points(&fd, &qa, &qb).unwrap();
        // Brute scan of P³(F₃₁).
        let mut brute = Vec::new();
        let mut reps: Vec<Vec<Fp>> = Vec::new();
        for a in 0..31 {
            for b in 0..31 {
                for c in 0..31 {
                    reps.push(vec![f(1), f(a), f(b), f(c)]);
                }
            }
        }
        for b in 0..31 {
            for c in 0..31 {
                reps.push(vec![f(0), f(1), f(b), f(c)]);
            }
        }
        for c in 0..31 {
            reps.push(vec![f(0), f(0), f(1), f(c)]);
        }
        reps.push(vec![f(0), f(0), f(0), f(1)]);
        for pt in reps {
            if eval_gram(&qa, &pt).is_zero() && eval_gram(&qb, &pt).is_zero() {
                brute.push(normalize_projective(pt));
            }
        }
        let mut fast_norm: Vec<Vec<Fp>> = fast;
        fast_norm.sort_by_key(|v| format!("{v:?}"));
        brute.sort_by_key(|v| format!("{v:?}"));
        assert_eq!(fast_norm, brute);
    }

    #[test]
    fn field_enumeration_is_complete_for_the_quadratic_extension() {
        use crate::scalars::Fp2;
        let fd = FieldDescriptor::quadratic(31).unwrap();
        let all = enumerate_field::<Fp2>(&fd).unwrap();
        assert_eq!(all.len(), 961);
        let mut seen: Vec<String> = all.iter().map(|v| format!("{v:?}")).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 961);
    }
}
