//! Twisted cubics through a marked configuration: a conic of the generic
//! class, two lines of the Grassmannian, and two marked points of a
//! common chord. The curve is recovered as `γ(t) = w(t) ∧ v(t)` for an
//! affine pencil `w(t)` on the chord and a vector cubic `v(t)` solved
//! from incidence conditions, then certified pointwise.

use super::planes::{binary_quadratic_on, p1_vector};
use super::{
    eval_gram, express_in_span, parametrize_conic_from, proportional, restrict_gram,
    span_contains, stable_draw, stable_vector, support, wedge2, ConicRecord, WModel, WxError,
};
use crate::multilinear::{is_decomposable, multisets_lex, wedge_elements};
use crate::pencils::{columns_to_matrix, gram_from_coords};
use crate::scalars::{BinaryForm, Field, FieldDescriptor, Matrix, P1Point};

use rand::RngCore;

/// A line of the Grassmannian `G(2, V₅)`: the pencil of 2-spaces between
/// a fixed vector and a fixed 3-space containing it.
#[derive(Debug, Clone)]
pub struct LineInG<F: Field> {
    /// The common vector of every 2-space of the pencil.
    pub apex: Vec<F>,
    /// 5×3 basis of the 3-space swept by the pencil.
    pub v3: Matrix<F>,
}

impl<F: Field> LineInG<F> {
    /// Validates that the apex is nonzero and lies in the 3-space.
    pub fn new(apex: Vec<F>, v3: Matrix<F>) -> Result<Self, WxError> {
        if apex.len() != 5 || apex.iter().all(|t| t.is_zero()) {
            return Err(WxError::Precondition("line apex must be a nonzero 5-vector".into()));
        }
        if v3.rows() != 5 || v3.cols() != 3 || v3.rank() != 3 {
            return Err(WxError::Precondition("line 3-space must have dimension 3".into()));
        }
        if !span_contains(&v3, &apex) {
            return Err(WxError::Precondition("line apex must lie in its 3-space".into()));
        }
        Ok(LineInG { apex, v3 })
    }
}

/// A full input configuration for the twisted-cubic construction.
#[derive(Debug, Clone)]
pub struct CubicInstance<F: Field> {
    /// The conic, stored as plane and form.
    pub record: ConicRecord<F>,
    /// Plane coordinates of a marked rational point of the conic.
    pub base: Vec<F>,
    /// First line.
    pub ell: LineInG<F>,
    /// Second line.
    pub ell_prime: LineInG<F>,
    /// First marked chord point (ambient 5-vector).
    pub w: Vec<F>,
    /// Second marked chord point.
    pub w_prime: Vec<F>,
    /// The 4-space supporting the conic, kept for cross-checks.
    pub v4: Matrix<F>,
}

/// The recovered cubic parametrization `γ(t) = Σ cᵢ tⁱ`.
#[derive(Debug, Clone)]
pub struct TwistedCubicParam<F: Field> {
    /// Chord pencil at `t = 0` (first foot, scaled).
    pub w0: Vec<F>,
    /// Chord pencil at `t = ∞` (second foot, scaled).
    pub w_inf: Vec<F>,
    /// Constant coefficient of the vector cubic.
    pub v0: Vec<F>,
    /// Linear coefficient.
    pub v1: Vec<F>,
    /// Quadratic coefficient.
    pub v_inf: Vec<F>,
    /// The parameter carrying the second line.
    pub t0: F,
    /// Wedge coefficients `c₀ … c₃` of the curve.
    pub curve: [Vec<F>; 4],
}

impl<F: Field> TwistedCubicParam<F> {
    /// The curve point at parameter `t`.
    pub fn eval(&self, t: &F) -> Vec<F> {
        let mut out = self.curve[3].clone();
        for k in (0..3).rev() {
            out = out
                .iter()
                .zip(self.curve[k].iter())
                .map(|(acc, c)| acc.clone() * t.clone() + c.clone())
                .collect();
        }
        out
    }

    /// The chord point at parameter `t`.
    pub fn chord(&self, t: &F) -> Vec<F> {
        self.w0
            .iter()
            .zip(self.w_inf.iter())
            .map(|(a, b)| a.clone() + t.clone() * b.clone())
            .collect()
    }

    /// The directrix point at parameter `t`.
    pub fn directrix(&self, t: &F) -> Vec<F> {
        let t2 = t.clone() * t.clone();
        (0..5)
            .map(|i| {
                self.v0[i].clone() + t.clone() * self.v1[i].clone() + t2.clone() * self.v_inf[i].clone()
            })
            .collect()
    }
}

/// Certified output of the twisted-cubic construction.
#[derive(Debug, Clone)]
pub struct CubicReport<F: Field> {
    /// The recovered parametrization.
    pub param: TwistedCubicParam<F>,
    /// Ruling parameter of the first chord foot.
    pub s0: P1Point<F>,
    /// Ruling parameter of the second chord foot.
    pub s1: P1Point<F>,
    /// Kernel dimension of the incidence system (3 = 1 genuine + 2 gauge).
    pub chord_kernel_dim: usize,
    /// `c₀` and `c₃` are the conic points on the feet rulings.
    pub foot_match: bool,
    /// `γ(1)` lies on the first line and `γ(t₀)` on the second.
    pub line_match: bool,
    /// Sampled curve points are decomposable.
    pub decomposable_ok: bool,
    /// The coefficient assembly reproduces `w(t) ∧ v(t)` pointwise.
    pub assembly_ok: bool,
    /// Rank of the four wedge coefficients (4: a genuine space cubic).
    pub span_rank: usize,
    /// A second solution of the incidence system gives the same curve.
    pub unique: bool,
}

impl<F: Field> CubicReport<F> {
    /// The full expected shape.
    pub fn all_pass(&self) -> bool {
        self.chord_kernel_dim == 3
            && self.foot_match
            && self.line_match
            && self.decomposable_ok
            && self.assembly_ok
            && self.span_rank == 4
            && self.unique
    }
}

fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b.iter()).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn scale_vec<F: Field>(c: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

fn flat3<F: Field>(m: &Matrix<F>) -> Vec<F> {
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            out.push(m.at(i, j).clone());
        }
    }
    out
}

/// Recovers the 4-space whose wedge square contains the conic plane, and
/// certifies that the record's form cuts exactly the decomposable locus
/// of that plane. This is the deterministic test for the generic conic
/// class — no point sampling, so it works over every field.
fn tau_support<F: Field>(
    model: &WModel<F>,
    record: &ConicRecord<F>,
) -> Result<Matrix<F>, WxError> {
    let fd = model.field().clone();
    if record.gram.rank() != 3 {
        return Err(WxError::Precondition(
            "the conic must be irreducible for the cubic construction".into(),
        ));
    }
    // A covector annihilating the support of every plane element.
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(15);
    for j in 0..3 {
        let skew = gram_from_coords(&fd, 5, &record.plane.col(j));
        for r in 0..5 {
            rows.push(skew.row(r));
        }
    }
    let stacked = Matrix::from_row_vectors(&fd, 5, &rows).unwrap();
    let annihilators = stacked.kernel_basis();
    if annihilators.len() != 1 {
        return Err(WxError::Precondition(
            "the conic plane does not lie in the wedge square of a unique 4-space".into(),
        ));
    }
    let theta = Matrix::from_row_vectors(&fd, 5, &[annihilators[0].clone()]).unwrap();
    let v4 = columns_to_matrix(&fd, 5, &theta.kernel_basis());
    if v4.cols() != 4 {
        return Err(WxError::ModelCorruption("support covector has the wrong rank".into()));
    }
    // The cone restricted to the plane must be the conic itself.
    let mut seen_nonzero = false;
    let gram_flat = flat3(&record.gram);
    for g in model.plucker.iter() {
        let restricted = restrict_gram(g, &record.plane);
        if restricted.rank() == 0 {
            continue;
        }
        seen_nonzero = true;
        if !proportional(&flat3(&restricted), &gram_flat) {
            return Err(WxError::Precondition(
                "the form does not cut the decomposable locus of its plane".into(),
            ));
        }
    }
    if !seen_nonzero {
        return Err(WxError::Precondition(
            "the conic plane lies inside the cone: not the generic class".into(),
        ));
    }
    Ok(v4)
}

/// Ruling parameter of a point on the fitted quadric: the unique `s` with
/// `x(s) ∧ y = 0`, found as the common rational root of the component
/// quadratics.
fn ruling_parameter<F: Field>(
    fd: &FieldDescriptor,
    amb: &[Vec<F>; 3],
    y: &[F],
) -> Result<P1Point<F>, WxError> {
    let images: Vec<Vec<F>> = amb
        .iter()
        .map(|a| wedge_elements(5, 2, a, 1, &y.to_vec()))
        .collect::<Result<_, _>>()?;
    let mut forms: Vec<BinaryForm<F>> = Vec::new();
    for j in 0..10 {
        let form = BinaryForm::new(
            fd,
            2,
            vec![images[0][j].clone(), images[1][j].clone(), images[2][j].clone()],
        );
        if !form.is_zero() {
            forms.push(form);
        }
    }
    let lead = forms
        .first()
        .ok_or_else(|| WxError::ModelCorruption("the foot lies on every ruling".into()))?;
    let mut survivors: Vec<P1Point<F>> = Vec::new();
    for (root, _) in lead.p1_roots_with_multiplicity() {
        if forms.iter().all(|f| f.eval_p1(&root).is_zero()) {
            survivors.push(root);
        }
    }
    match survivors.len() {
        1 => Ok(survivors.pop().unwrap()),
        0 => Err(WxError::NonGeneric("no ruling passes through the chord foot".into())),
        _ => Err(WxError::NonGeneric("ambiguous ruling through the chord foot".into())),
    }
}

/// Runs the full construction and certification. Errors name the failing
/// hypothesis; a chord tangent to the fitted quadric or missing it over
/// the working field raises [`WxError::DegenerateBisecant`].
#[allow(clippy::too_many_arguments)]
pub fn twisted_cubic<F: Field>(
    model: &WModel<F>,
    record: &ConicRecord<F>,
    base: &[F],
    ell: &LineInG<F>,
    ell_prime: &LineInG<F>,
    w: &[F],
    w_prime: &[F],
    rng: &mut dyn RngCore,
) -> Result<CubicReport<F>, WxError> {
    let fd = model.field().clone();
    if let Some(p) = fd.characteristic() {
        if p < 11 {
            return Err(WxError::EnlargeField(
                "the ruling fit needs at least nine distinct parameters".into(),
            ));
        }
    }

    // The conic class and its 4-space.
    let v4 = tau_support(model, record)?;

    // Marked points: on their lines' 3-spaces and in the 4-space.
    for (name, point, line) in [("first", w, ell), ("second", w_prime, ell_prime)] {
        if point.len() != 5 || point.iter().all(|t| t.is_zero()) {
            return Err(WxError::Precondition(format!(
                "the {name} marked point must be a nonzero 5-vector"
            )));
        }
        if !span_contains(&line.v3, point) {
            return Err(WxError::Precondition(format!(
                "the {name} marked point is not on its line's 3-space"
            )));
        }
        if !span_contains(&v4, point) {
            return Err(WxError::Precondition(format!(
                "the {name} marked point is outside the conic's 4-space"
            )));
        }
        if proportional(&line.apex, point) {
            return Err(WxError::Precondition(format!(
                "the {name} marked point coincides with its line's apex"
            )));
        }
    }

    // Rational parametrization from the marked base point, and the
    // ambient quadratic coefficients of the sweep.
    let param = parametrize_conic_from(&fd, record, base, rng)?;
    let amb: [Vec<F>; 3] = [
        record.embed(&param.coeffs[0]),
        record.embed(&param.coeffs[1]),
        record.embed(&param.coeffs[2]),
    ];
    let point_at = |s: &P1Point<F>| -> Vec<F> { record.embed(&param.eval(s.as_ref())) };

    // Fit the ruled quadric surface from nine rulings, three points each.
    let monomials = multisets_lex(4, 2);
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(27);
    for s in 0..9 {
        let x = point_at(&Some(model.scalar(s)));
        let ruling = support(&fd, &x)?;
        let b1 = ruling.col(0);
        let b2 = ruling.col(1);
        for b in [b1.clone(), b2.clone(), add_vec(&b1, &b2)] {
            let c = express_in_span(&v4, &b).ok_or_else(|| {
                WxError::ModelCorruption("a ruling leaves the conic's 4-space".into())
            })?;
            rows.push(
                monomials
                    .iter()
                    .map(|m| c[m[0]].clone() * c[m[1]].clone())
                    .collect(),
            );
        }
    }
    let eval = Matrix::from_row_vectors(&fd, monomials.len(), &rows).unwrap();
    if eval.rank() != 9 {
        return Err(WxError::NonGeneric(format!(
            "ruling fit has rank {} instead of 9",
            eval.rank()
        )));
    }
    let coeffs = eval.kernel_basis().pop().unwrap();
    let half = model.scalar(2).inv()?;
    let mut qd = Matrix::zeros(4, 4, &fd);
    for (idx, m) in monomials.iter().enumerate() {
        if m[0] == m[1] {
            *qd.at_mut(m[0], m[0]) = coeffs[idx].clone();
        } else {
            let v = half.clone() * coeffs[idx].clone();
            *qd.at_mut(m[0], m[1]) = v.clone();
            *qd.at_mut(m[1], m[0]) = v;
        }
    }
    if qd.rank() != 4 {
        return Err(WxError::NonGeneric("the fitted quadric surface is singular".into()));
    }

    // Chord feet: the two intersections of the marked chord with the
    // quadric.
    let w4 = express_in_span(&v4, w).unwrap();
    let w4p = express_in_span(&v4, w_prime).unwrap();
    for (name, c) in [("first", &w4), ("second", &w4p)] {
        if eval_gram(&qd, c).is_zero() {
            return Err(WxError::Precondition(format!(
                "the {name} marked point lies on the fitted quadric"
            )));
        }
    }
    let chord_form = binary_quadratic_on(&qd, &w4, &w4p);
    if chord_form.is_zero() {
        return Err(WxError::NonGeneric("the marked chord lies on the fitted quadric".into()));
    }
    let roots = chord_form.p1_roots_with_multiplicity();
    let (r0, r1) = match roots.as_slice() {
        [(_, 2)] => return Err(WxError::DegenerateBisecant { tangent: true }),
        [] => return Err(WxError::DegenerateBisecant { tangent: false }),
        [(a, 1), (b, 1)] => (a.clone(), b.clone()),
        _ => {
            return Err(WxError::NonGeneric(
                "unexpected chord intersection pattern".into(),
            ))
        }
    };
    let y0_4 = p1_vector(&w4, &w4p, &r0);
    let y1_4 = p1_vector(&w4, &w4p, &r1);
    let y0 = v4.mul_vec(&y0_4).unwrap();
    let y1 = v4.mul_vec(&y1_4).unwrap();

    // Which rulings carry the feet.
    let s0 = ruling_parameter(&fd, &amb, &y0)?;
    let s1 = ruling_parameter(&fd, &amb, &y1)?;
    if s0 == s1 {
        return Err(WxError::NonGeneric("both chord feet lie on one ruling".into()));
    }

    // Scale the feet so the chord pencil hits the marked points at the
    // right parameters: w at t = 1, w′ at t = t₀.
    let chord_span = columns_to_matrix(&fd, 5, &[y0.clone(), y1.clone()]);
    let ab = express_in_span(&chord_span, w)
        .ok_or_else(|| WxError::ModelCorruption("marked point off its own chord".into()))?;
    let abp = express_in_span(&chord_span, w_prime)
        .ok_or_else(|| WxError::ModelCorruption("marked point off its own chord".into()))?;
    if ab.iter().chain(abp.iter()).any(|t| t.is_zero()) {
        return Err(WxError::NonGeneric("a marked point coincides with a chord foot".into()));
    }
    let t0 = ab[0].clone() * abp[1].clone()
        * (abp[0].clone() * ab[1].clone()).inv()?;
    if t0 == model.scalar(1) || t0.is_zero() {
        return Err(WxError::NonGeneric(
            "the marked points give a degenerate chord cross-ratio".into(),
        ));
    }
    let w0 = scale_vec(&ab[0], &y0);
    let w_inf = scale_vec(&ab[1], &y1);

    // Incidence system for the vector cubic v(t): v(0) on the first foot
    // ruling, v(∞) on the second, v(1) in the first line's plane through
    // w, v(t₀) in the second line's plane through w′.
    let annihilator = |span: &Matrix<F>| -> Vec<Vec<F>> { span.transpose().kernel_basis() };
    let ruling0 = support(&fd, &point_at(&s0))?;
    let ruling1 = support(&fd, &point_at(&s1))?;
    let plane_w = columns_to_matrix(&fd, 5, &[ell.apex.clone(), w.to_vec()]);
    let plane_wp = columns_to_matrix(&fd, 5, &[ell_prime.apex.clone(), w_prime.to_vec()]);
    if plane_w.rank() != 2 || plane_wp.rank() != 2 {
        return Err(WxError::Precondition(
            "a marked point is proportional to its line's apex".into(),
        ));
    }
    let zero = model.scalar(0);
    let t0sq = t0.clone() * t0.clone();
    let mut sys_rows: Vec<Vec<F>> = Vec::with_capacity(12);
    for r in annihilator(&ruling0) {
        let mut row = vec![zero.clone(); 15];
        row[..5].clone_from_slice(&r);
        sys_rows.push(row);
    }
    for r in annihilator(&ruling1) {
        let mut row = vec![zero.clone(); 15];
        row[10..].clone_from_slice(&r);
        sys_rows.push(row);
    }
    for r in annihilator(&plane_w) {
        let mut row = Vec::with_capacity(15);
        row.extend(r.iter().cloned());
        row.extend(r.iter().cloned());
        row.extend(r.iter().cloned());
        sys_rows.push(row);
    }
    for r in annihilator(&plane_wp) {
        let mut row = Vec::with_capacity(15);
        row.extend(r.iter().cloned());
        row.extend(r.iter().map(|x| t0.clone() * x.clone()));
        row.extend(r.iter().map(|x| t0sq.clone() * x.clone()));
        sys_rows.push(row);
    }
    let system = Matrix::from_row_vectors(&fd, 15, &sys_rows).unwrap();
    let kernel = system.kernel_basis();
    let chord_kernel_dim = kernel.len();
    if chord_kernel_dim != 3 {
        return Err(WxError::NonGeneric(format!(
            "incidence system kernel has dimension {chord_kernel_dim}"
        )));
    }

    // Two genuine solutions: both end wedges nonzero.
    let mut genuine: Vec<(Vec<F>, Vec<F>, Vec<F>)> = Vec::new();
    for _ in 0..60 {
        if genuine.len() == 2 {
            break;
        }
        let combo: Vec<F> = (0..3).map(|_| stable_draw(&fd, rng)).collect();
        let mut v = vec![zero.clone(); 15];
        for (c, k) in combo.iter().zip(kernel.iter()) {
            for (acc, x) in v.iter_mut().zip(k.iter()) {
                *acc = acc.clone() + c.clone() * x.clone();
            }
        }
        let v0 = v[..5].to_vec();
        let v1 = v[5..10].to_vec();
        let v_inf = v[10..].to_vec();
        if wedge2(&w0, &v0).iter().all(|t| t.is_zero())
            || wedge2(&w_inf, &v_inf).iter().all(|t| t.is_zero())
        {
            continue;
        }
        genuine.push((v0, v1, v_inf));
    }
    if genuine.len() < 2 {
        return Err(WxError::NonGeneric("no genuine chord solution found".into()));
    }

    let make_curve = |v0: &[F], v1: &[F], v_inf: &[F]| -> [Vec<F>; 4] {
        [
            wedge2(&w0, v0),
            add_vec(&wedge2(&w0, v1), &wedge2(&w_inf, v0)),
            add_vec(&wedge2(&w0, v_inf), &wedge2(&w_inf, v1)),
            wedge2(&w_inf, v_inf),
        ]
    };
    let (v0, v1, v_inf) = genuine[0].clone();
    let curve = make_curve(&v0, &v1, &v_inf);
    let param_out = TwistedCubicParam {
        w0: w0.clone(),
        w_inf: w_inf.clone(),
        v0,
        v1,
        v_inf,
        t0: t0.clone(),
        curve,
    };

    // Certificates.
    let foot_match = proportional(&param_out.curve[0], &point_at(&s0))
        && proportional(&param_out.curve[3], &point_at(&s1));
    let at_one = param_out.eval(&model.scalar(1));
    let at_t0 = param_out.eval(&t0);
    let line_match = proportional(&at_one, &wedge2(&ell.apex, w))
        && proportional(&at_t0, &wedge2(&ell_prime.apex, w_prime));
    let mut decomposable_ok = true;
    let mut assembly_ok = true;
    for n in [2, 3, 5, 7, 11, 13, 17] {
        let t = model.scalar(n);
        let gamma = param_out.eval(&t);
        decomposable_ok &= is_decomposable(5, &gamma)?;
        let direct = wedge2(&param_out.chord(&t), &param_out.directrix(&t));
        assembly_ok &= gamma == direct;
    }
    let span_rank = columns_to_matrix(&fd, 10, &param_out.curve.to_vec()).rank();
    let (u0, u1, u_inf) = genuine[1].clone();
    let second = make_curve(&u0, &u1, &u_inf);
    let flat_first: Vec<F> = param_out.curve.iter().flatten().cloned().collect();
    let flat_second: Vec<F> = second.iter().flatten().cloned().collect();
    let unique = proportional(&flat_first, &flat_second);

    Ok(CubicReport {
        param: param_out,
        s0,
        s1,
        chord_kernel_dim,
        foot_match,
        line_match,
        decomposable_ok,
        assembly_ok,
        span_rank,
        unique,
    })
}

/// Segre form `x₀x₃ − x₁x₂` in ruled coordinates.
fn segre_eval<F: Field>(x: &[F]) -> F {
    x[0].clone() * x[3].clone() - x[1].clone() * x[2].clone()
}

/// Polar form of the Segre quadric.
fn segre_polar<F: Field>(half: &F, x: &[F], y: &[F]) -> F {
    half.clone()
        * (x[0].clone() * y[3].clone() + y[0].clone() * x[3].clone()
            - x[1].clone() * y[2].clone()
            - y[1].clone() * x[2].clone())
}

/// Shared scaffolding for the instance builders: a random 4-space with a
/// ruled-coordinate basis, the conic of one ruling family, and the marked
/// base point.
struct RuledScaffold<F: Field> {
    bs: Vec<Vec<F>>,
    v4: Matrix<F>,
    record: ConicRecord<F>,
    base: Vec<F>,
}

fn ruled_scaffold<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<RuledScaffold<F>, WxError> {
    let fd = model.field().clone();
    for _ in 0..80 {
        let bs: Vec<Vec<F>> = (0..4).map(|_| stable_vector(&fd, 5, rng)).collect();
        let v4 = columns_to_matrix(&fd, 5, &bs);
        if v4.rank() != 4 {
            continue;
        }
        // One ruling family of x₀x₃ = x₁x₂: spans ⟨b₀ + s·b₁, b₂ + s·b₃⟩,
        // whose wedges sweep a conic in a 3-plane.
        let a0 = wedge2(&bs[0], &bs[2]);
        let a1 = add_vec(&wedge2(&bs[0], &bs[3]), &wedge2(&bs[1], &bs[2]));
        let a2 = wedge2(&bs[1], &bs[3]);
        let plane = columns_to_matrix(&fd, 10, &[a0, a1, a2]);
        if plane.rank() != 3 {
            continue;
        }
        let gram = Matrix::from_ints(3, 3, &fd, &[0, 0, -1, 0, 2, 0, -1, 0, 0]).unwrap();
        let record = ConicRecord::new(plane, gram)?;
        let base = vec![model.scalar(1), model.scalar(0), model.scalar(0)];
        return Ok(RuledScaffold { bs, v4, record, base });
    }
    Err(WxError::NonGeneric("no independent ruled basis drawn".into()))
}

impl<F: Field> RuledScaffold<F> {
    /// Ambient vector from ruled coordinates.
    fn from_coords(&self, c: &[F]) -> Vec<F> {
        let mut out = scale_vec(&c[0], &self.bs[0]);
        for i in 1..4 {
            out = add_vec(&out, &scale_vec(&c[i], &self.bs[i]));
        }
        out
    }

    /// A random point of the ruling at parameter `s`, in ruled coordinates.
    fn ruling_point(&self, model: &WModel<F>, s: i64, rng: &mut dyn RngCore) -> Vec<F> {
        let fd = model.field();
        let sv = model.scalar(s);
        loop {
            let r0: F = stable_draw(fd, rng);
            let r1: F = stable_draw(fd, rng);
            if r0.is_zero() && r1.is_zero() {
                continue;
            }
            return vec![
                r0.clone(),
                sv.clone() * r0,
                r1.clone(),
                sv.clone() * r1,
            ];
        }
    }
}

/// Builds the two lines for a pair of marked points: random apexes off
/// the 4-space, random third directions.
fn lines_for<F: Field>(
    model: &WModel<F>,
    v4: &Matrix<F>,
    w: &[F],
    w_prime: &[F],
    rng: &mut dyn RngCore,
) -> Result<(LineInG<F>, LineInG<F>), WxError> {
    let fd = model.field().clone();
    let mut mk = |point: &[F]| -> Result<LineInG<F>, WxError> {
        for _ in 0..60 {
            let apex: Vec<F> = stable_vector(&fd, 5, rng);
            if apex.iter().all(|t| t.is_zero()) || span_contains(v4, &apex) {
                continue;
            }
            let extra: Vec<F> = stable_vector(&fd, 5, rng);
            let v3 = columns_to_matrix(&fd, 5, &[apex.clone(), point.to_vec(), extra]);
            if v3.rank() != 3 {
                continue;
            }
            return LineInG::new(apex, v3);
        }
        Err(WxError::NonGeneric("no line assembled through the marked point".into()))
    };
    Ok((mk(w)?, mk(w_prime)?))
}

/// Draws a configuration on which the construction succeeds: feet on two
/// distinct rulings, marked points mixing them with distinct ratios.
pub fn admissible_cubic_instance<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<CubicInstance<F>, WxError> {
    let scaffold = ruled_scaffold(model, rng)?;
    let half = model.scalar(2).inv()?;
    for _ in 0..80 {
        let y0 = scaffold.ruling_point(model, 2, rng);
        let y1 = scaffold.ruling_point(model, 5, rng);
        if segre_polar(&half, &y0, &y1).is_zero() {
            continue;
        }
        let c = stable_draw::<F>(model.field(), rng);
        let cp = stable_draw::<F>(model.field(), rng);
        if c.is_zero() || cp.is_zero() || c == cp {
            continue;
        }
        let w_coords = add_vec(&y0, &scale_vec(&c, &y1));
        let wp_coords = add_vec(&y0, &scale_vec(&cp, &y1));
        let w = scaffold.from_coords(&w_coords);
        let w_prime = scaffold.from_coords(&wp_coords);
        let (ell, ell_prime) = lines_for(model, &scaffold.v4, &w, &w_prime, rng)?;
        return Ok(CubicInstance {
            record: scaffold.record,
            base: scaffold.base,
            ell,
            ell_prime,
            w,
            w_prime,
            v4: scaffold.v4,
        });
    }
    Err(WxError::NonGeneric("no admissible chord drawn".into()))
}

/// Draws a configuration whose chord is tangent to the ruled quadric:
/// both marked points on a tangent line at a ruling point.
pub fn tangent_chord_instance<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<CubicInstance<F>, WxError> {
    let scaffold = ruled_scaffold(model, rng)?;
    let fd = model.field().clone();
    let half = model.scalar(2).inv()?;
    for _ in 0..200 {
        let y0 = scaffold.ruling_point(model, 3, rng);
        // A direction in the polar hyperplane of y0 with nonzero form
        // value: solve the polar condition for the last free coordinate.
        let mut z = vec![
            stable_draw::<F>(&fd, rng),
            stable_draw::<F>(&fd, rng),
            stable_draw::<F>(&fd, rng),
            model.scalar(0),
        ];
        if y0[0].is_zero() {
            continue;
        }
        // Polar: y0·z pairing = ½(z₀y₃ + z₃y₀ − z₁y₂ − z₂y₁) = 0.
        let numer = z[1].clone() * y0[2].clone() + z[2].clone() * y0[1].clone()
            - z[0].clone() * y0[3].clone();
        z[3] = numer * y0[0].clone().inv()?;
        debug_assert!(segre_polar(&half, &y0, &z).is_zero());
        if segre_eval(&z).is_zero() {
            continue;
        }
        let c = stable_draw::<F>(&fd, rng);
        let cp = stable_draw::<F>(&fd, rng);
        if c == cp {
            continue;
        }
        let w_coords = add_vec(&z, &scale_vec(&c, &y0));
        let wp_coords = add_vec(&z, &scale_vec(&cp, &y0));
        let w = scaffold.from_coords(&w_coords);
        let w_prime = scaffold.from_coords(&wp_coords);
        let (ell, ell_prime) = lines_for(model, &scaffold.v4, &w, &w_prime, rng)?;
        return Ok(CubicInstance {
            record: scaffold.record,
            base: scaffold.base,
            ell,
            ell_prime,
            w,
            w_prime,
            v4: scaffold.v4,
        });
    }
    Err(WxError::NonGeneric("no tangent chord drawn".into()))
}

/// Draws a configuration whose chord misses the ruled quadric over the
/// working field: the restricted form has no rational root.
pub fn missing_chord_instance<F: Field>(
    model: &WModel<F>,
    rng: &mut dyn RngCore,
) -> Result<CubicInstance<F>, WxError> {
    let scaffold = ruled_scaffold(model, rng)?;
    let fd = model.field().clone();
    let half = model.scalar(2).inv()?;
    // Full-field draws: integer-seeded coordinates stay inside the base field
    // of a quadratic extension, where every base-field discriminant is a
    // square and a rootless chord would never appear.
    let donor = model.scalar(0);
    for _ in 0..400 {
        let wc: Vec<F> = (0..4).map(|_| donor.random_like(rng)).collect();
        let wpc: Vec<F> = (0..4).map(|_| donor.random_like(rng)).collect();
        let qw = segre_eval(&wc);
        let qwp = segre_eval(&wpc);
        if qw.is_zero() || qwp.is_zero() {
            continue;
        }
        let b = segre_polar(&half, &wc, &wpc);
        let form = BinaryForm::new(&fd, 2, vec![qw, model.scalar(2) * b, qwp]);
        if form.is_zero() || !form.p1_roots_with_multiplicity().is_empty() {
            continue;
        }
        let w = scaffold.from_coords(&wc);
        let w_prime = scaffold.from_coords(&wpc);
        let (ell, ell_prime) = lines_for(model, &scaffold.v4, &w, &w_prime, rng)?;
        return Ok(CubicInstance {
            record: scaffold.record,
            base: scaffold.base,
            ell,
            ell_prime,
            w,
            w_prime,
            v4: scaffold.v4,
        });
    }
    Err(WxError::NonGeneric("no chord missing the quadric drawn".into()))
}

#[cfg(test)]
mod tests {
    use super::super::{classify_conic, m_space, spans_equal, stable_symmetric_gram, w_model, ConicTag};
    use super::super::planes::lu_hyperplane;
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
    fn admissible_instances_yield_certified_cubics() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let inst = admissible_cubic_instance(&model, &mut rng).unwrap();
            let rep = twisted_cubic(
                &model,
                &inst.record,
                &inst.base,
                &inst.ell,
                &inst.ell_prime,
                &inst.w,
                &inst.w_prime,
                &mut rng,
            )
            .unwrap();
            assert!(rep.all_pass(), "{rep:?}");
            assert!(!rep.param.t0.is_zero());
            assert_ne!(rep.s0, rep.s1);
        }
    }

    #[test]
    fn instance_conics_classify_as_the_generic_class() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let inst = admissible_cubic_instance(&model, &mut rng).unwrap();
        let class = classify_conic(&model, &inst.record, &mut rng).unwrap();
        assert_eq!(class.tag, ConicTag::Tau);
        assert!(spans_equal(class.v4.as_ref().unwrap(), &inst.v4));
    }

    #[test]
    fn cubic_construction_over_the_rationals() {
        let model = w_model::<Q>(&FieldDescriptor::Rationals);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let inst = admissible_cubic_instance(&model, &mut rng).unwrap();
        let rep = twisted_cubic(
            &model,
            &inst.record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn tangent_chords_are_reported_as_tangent() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let inst = tangent_chord_instance(&model, &mut rng).unwrap();
        let err = twisted_cubic(
            &model,
            &inst.record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, WxError::DegenerateBisecant { tangent: true }), "{err}");
    }

    #[test]
    fn chords_missing_the_quadric_are_reported() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let inst = missing_chord_instance(&model, &mut rng).unwrap();
        let err = twisted_cubic(
            &model,
            &inst.record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, WxError::DegenerateBisecant { tangent: false }), "{err}");
    }

    #[test]
    fn marked_point_preconditions_are_named() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let inst = admissible_cubic_instance(&model, &mut rng).unwrap();
        // A point off the first line's 3-space.
        let bad = vec![
            Fp::new(1, 97),
            Fp::new(3, 97),
            Fp::new(1, 97),
            Fp::new(4, 97),
            Fp::new(1, 97),
        ];
        let err = twisted_cubic(
            &model,
            &inst.record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &bad,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap_err();
        match err {
            WxError::Precondition(msg) => assert!(msg.contains("first"), "{msg}"),
            other => panic!("unexpected error {other}"),
        }
        // A base point off the conic (the form does not vanish there).
        let bad_base = vec![Fp::new(1, 97), Fp::new(1, 97), Fp::new(0, 97)];
        let err = twisted_cubic(
            &model,
            &inst.record,
            &bad_base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, WxError::Precondition(_)), "{err}");
    }

    #[test]
    fn cone_planes_are_rejected() {
        let model = w_model::<Fp>(&fd97());
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        let v4 = lu_hyperplane(&model, &Fp::new(1, 97), &Fp::new(4, 97));
        let rep = m_space(&model, &v4, None).unwrap();
        let plane = rep.split.unwrap().other_plane().unwrap().clone();
        let gram = stable_symmetric_gram(&fd97(), 3, &mut rng);
        let record = ConicRecord::new(plane, gram).unwrap();
        let inst = admissible_cubic_instance(&model, &mut rng).unwrap();
        let err = twisted_cubic(
            &model,
            &record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, WxError::Precondition(_)), "{err}");
    }
}
