//! The individual claim implementations.
//!
//! Each claim is a pure function from a [`Ctx`] (field choice, derived seed,
//! sample budget) to an [`Outcome`]. Claims recompute everything they assert
//! from the library layer; the expected values quoted in the registry are the
//! frozen reference numbers.

use std::collections::BTreeSet;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClaimInfo, FieldSpec};
use crate::bbw::{acyclicity_suite, solve_ledger, CohomLedger, FactClass, SolvedLedger};
use crate::chow::{
    delpezzo_checks, dimension_counts, hrr_suite, pairing_checks, sigma_system_degree,
    standard_dimension_inputs, torsion_euler, transform_ledger, x10_euler, x10_parity_ok,
    ThreefoldData, TransformKind, ValueCheck,
};
use crate::multilinear::{induced_map, EigenSpec, FunctorExpr};
use crate::pencils::{
    columns_to_matrix, common_isotropic, form_coords, isotropic_census, kernel_conic,
    phi_from_gl2, preserves_span, psi_map, rank_profile, sl_action, standard_model,
    UniquenessCertificate,
};
use crate::scalars::{BinaryForm, Field, FieldDescriptor, Matrix, P1Point};
use crate::wx::{
    admissible_cubic_instance, aut_suite, build_x, classify_conic, elliptic_quartic, eval_gram,
    iota, kappa_roundtrip, lu_hyperplane, m_space, missing_chord_instance, plane_incidences,
    polar_gram, quadric_space, restrict_gram, sigma_incidences, span_contains, spans_equal,
    stable_symmetric_gram, stable_vector, support, tangent_chord_instance, twisted_cubic,
    unipotent_action, w_degree_report, w_model, ConicRecord, ConicTag, WModel, WxError,
};
use crate::{Fp, Fp2, Q};

/// Per-claim execution context with an isolated derived seed.
pub(super) struct Ctx {
    /// The requested working field.
    pub spec: FieldSpec,
    /// Its validated descriptor.
    pub fd: FieldDescriptor,
    /// Seed derived from the master seed and the claim id.
    pub seed: u64,
    /// Sampling budget from the run configuration.
    pub samples: usize,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Result of executing one claim.
pub(super) enum Outcome {
    /// The claim ran to completion.
    Done {
        /// Whether every check held.
        pass: bool,
        /// Human-readable summary of the computed values.
        computed: String,
        /// Minimal witness of the first failure, when `pass` is false.
        witness: Option<String>,
    },
    /// The claim does not apply to the requested field.
    Skip {
        /// Why it was skipped.
        reason: String,
    },
}

/// A registry entry: metadata plus the runnable body.
pub(super) struct ClaimDef {
    /// Identity, title, dependencies, provenance, field support.
    pub info: ClaimInfo,
    /// The frozen expected values, as prose.
    pub expected: &'static str,
    /// The body.
    pub run: fn(&Ctx) -> Outcome,
}

// ---------------------------------------------------------------------------
// Small helpers shared by the claim bodies.

/// Accumulates named checks and computed facts.
struct Checks {
    facts: Vec<String>,
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { facts: Vec::new(), failures: Vec::new() }
    }

    /// Records a computed fact for the report.
    fn fact(&mut self, text: impl Into<String>) {
        self.facts.push(text.into());
    }

    /// Records a named pass/fail check.
    fn require(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    /// Records an equality check, keeping the mismatch as the witness.
    fn require_eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{label}: computed {got:?}, expected {want:?}"));
        }
    }

    /// Folds in a batch of frozen value checks.
    fn value_checks(&mut self, checks: &[ValueCheck]) {
        for c in checks {
            if !c.passed() {
                self.failures.push(format!(
                    "{}: computed {}, expected {}",
                    c.label, c.computed, c.expected
                ));
            }
        }
    }

    fn done(self) -> Outcome {
        let pass = self.failures.is_empty();
        let witness = if pass {
            None
        } else {
            let mut w = self.failures;
            w.truncate(3);
            Some(w.join(" | "))
        };
        Outcome::Done { pass, computed: self.facts.join("; "), witness }
    }
}

/// Maps a construction error into a failing outcome.
fn finish(result: Result<Outcome, String>) -> Outcome {
    result.unwrap_or_else(|err| Outcome::Done {
        pass: false,
        computed: "construction failed before the checks ran".into(),
        witness: Some(err),
    })
}

/// Dispatches a generic claim body over the three scalar types.
macro_rules! by_field {
    ($ctx:expr, $inner:ident) => {
        finish(match $ctx.spec {
            FieldSpec::Rational => $inner::<Q>($ctx),
            FieldSpec::Prime(_) => $inner::<Fp>($ctx),
            FieldSpec::Quadratic(_) => $inner::<Fp2>($ctx),
        })
    };
}

/// The reference model needs 2 and 3 invertible; skip tiny characteristics.
fn model_char_skip(ctx: &Ctx, min: u64, what: &str) -> Option<Outcome> {
    let c = match ctx.spec {
        FieldSpec::Rational => return None,
        FieldSpec::Prime(p) | FieldSpec::Quadratic(p) => p,
    };
    (c < min).then(|| Outcome::Skip {
        reason: format!("{what} needs characteristic at least {min}, got {c}"),
    })
}

/// Skip for field orders too small to sample from.
fn order_skip(ctx: &Ctx, min: u128, what: &str) -> Option<Outcome> {
    let order = match ctx.spec {
        FieldSpec::Rational => return None,
        FieldSpec::Prime(p) => u128::from(p),
        FieldSpec::Quadratic(p) => u128::from(p) * u128::from(p),
    };
    (order < min).then(|| Outcome::Skip {
        reason: format!("{what} needs a field with at least {min} elements, got {order}"),
    })
}

/// Skip on the rationals (claims that enumerate or sample rational points).
fn finite_only_skip(ctx: &Ctx, what: &str) -> Option<Outcome> {
    matches!(ctx.spec, FieldSpec::Rational)
        .then(|| Outcome::Skip { reason: format!("{what} runs over finite fields only") })
}

/// A fresh hyperplane of the 5-space: the kernel of a random covector.
fn random_hyperplane<F: Field>(
    fd: &FieldDescriptor,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>, String> {
    for _ in 0..32 {
        let theta: Vec<F> = stable_vector(fd, 5, rng);
        if theta.iter().all(|t| t.is_zero()) {
            continue;
        }
        let row = Matrix::from_row_vectors(fd, 5, &[theta])
            .map_err(|e| format!("covector row: {e}"))?;
        return Ok(columns_to_matrix(fd, 5, &row.kernel_basis()));
    }
    Err("no nonzero covector in 32 draws".into())
}

fn fmt_pairs(pairs: &[(i64, usize)]) -> String {
    let body: Vec<String> = pairs.iter().map(|(w, m)| format!("{w}:{m}")).collect();
    format!("({})", body.join(", "))
}

// ---------------------------------------------------------------------------
// C01 — pencil rank profile.

fn c01(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 3, "the reference pencil") {
        return skip;
    }
    by_field!(ctx, c01_inner)
}

fn c01_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = standard_model::<F>(&ctx.fd);
    let rep = rank_profile(&model.pencil);
    let mut ch = Checks::new();
    ch.require("every nonzero member has rank 4", rep.all_rank_four);
    ch.require_eq("common divisor degree of the sub-Pfaffians", rep.common_divisor_degree, 0);
    ch.require_eq("rational degenerate members", rep.rational_degenerate_points.len(), 0);
    ch.fact("all nonzero members have rank 4");
    ch.fact("sub-Pfaffian common divisor has degree 0, so no member degenerates over any extension");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C02 — the kernel conic.

fn c02(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the kernel-conic parameter sweep") {
        return skip;
    }
    by_field!(ctx, c02_inner)
}

fn c02_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let fd = &ctx.fd;
    let model = standard_model::<F>(fd);
    let curve = kernel_conic(&model.pencil).map_err(|e| format!("kernel curve: {e}"))?;
    let mut ch = Checks::new();

    let degs: Vec<usize> = curve.coords.iter().map(|c| c.degree()).collect();
    ch.require("every coordinate is a binary form of degree 2", degs.iter().all(|&d| d == 2));
    ch.fact(format!(
        "coordinate degrees ({})",
        degs.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
    ));

    let f = |n: i64| F::from_descriptor(fd, n).unwrap();
    let params: Vec<P1Point<F>> =
        vec![Some(f(0)), Some(f(1)), Some(f(2)), Some(f(3)), Some(f(4)), None];
    let mut values = Vec::new();
    for pt in &params {
        let v = curve.eval(pt);
        ch.require("kernel vector is nonzero", !v.iter().all(|t| t.is_zero()));
        let member = match pt {
            Some(t) => model.pencil.member(&f(1), t),
            None => model.pencil.member(&f(0), &f(1)),
        };
        let image = member.mul_vec(&v).map_err(|e| format!("member application: {e}"))?;
        ch.require("the member annihilates its kernel vector", image.iter().all(|t| t.is_zero()));
        values.push(v);
    }
    let span = columns_to_matrix(fd, 5, &values);
    ch.require_eq("span dimension of the kernel vectors", span.rank(), 3);
    ch.require("the span equals the distinguished 3-space", spans_equal(&span, &model.u3));
    ch.fact("6 sampled kernel vectors are annihilated by their members");
    ch.fact("their span has dimension 3 and equals the distinguished 3-space");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C03 — uniqueness of the isotropic 3-space by exhaustive enumeration.

fn c03(_ctx: &Ctx) -> Outcome {
    finish(c03_inner())
}

fn c03_inner() -> Result<Outcome, String> {
    // The enumeration is fixed at the 5-element field regardless of the
    // requested working field: it is a brute-force census.
    let fd5 = FieldDescriptor::prime(5).map_err(|e| format!("field: {e}"))?;
    let model = standard_model::<Fp>(&fd5);
    let census = isotropic_census(&model.pencil);
    let mut ch = Checks::new();
    ch.require_eq("3-dimensional subspaces enumerated", census.subspaces_checked, 20306);
    ch.require_eq("doubly isotropic subspaces found", census.isotropic.len(), 1);
    if let Some(first) = census.isotropic.first() {
        ch.require(
            "the unique isotropic subspace is the distinguished 3-space",
            spans_equal(first, &model.u3),
        );
    }
    let common = common_isotropic(&model.pencil).map_err(|e| format!("constructive search: {e}"))?;
    ch.require(
        "the constructive search agrees with the census",
        spans_equal(&common.basis, &model.u3),
    );
    let cert = match common.certificate {
        UniquenessCertificate::Exhaustive { subspaces_checked } => {
            format!("exhaustive over {subspaces_checked} subspaces")
        }
        UniquenessCertificate::SpanOfKernels => "span-of-kernels argument".to_string(),
    };
    ch.fact("20306 subspaces of the 5-space over the 5-element field enumerated");
    ch.fact("exactly 1 is isotropic for both pencil members, and it is the distinguished 3-space");
    ch.fact(format!("constructive certificate: {cert}"));
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C04 — consistency of the standard model and absence of degenerate forms.

fn c04(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the model consistency suite") {
        return skip;
    }
    by_field!(ctx, c04_inner)
}

fn c04_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let fd = &ctx.fd;
    let model = standard_model::<F>(fd);
    let mut ch = Checks::new();

    ch.require_eq("annihilator dimension", model.v8.rank(), 8);
    ch.require_eq("contraction rank", model.contraction.rank(), 2);
    let product = model
        .contraction
        .mul(&model.v8)
        .map_err(|e| format!("contraction application: {e}"))?;
    ch.require("the contraction kills the annihilator", product.rank() == 0);
    let full = model
        .v8
        .hstack(&model.complement)
        .map_err(|e| format!("decomposition stack: {e}"))?;
    ch.require_eq("annihilator plus complement spans the 10-space", full.rank(), 10);
    for j in 0..model.u1.cols() {
        ch.require("the wedge line lies in the annihilator", span_contains(&model.v8, &model.u1.col(j)));
    }
    for j in 0..model.u4.cols() {
        ch.require("the graded 4-piece lies in the annihilator", span_contains(&model.v8, &model.u4.col(j)));
    }

    // Equivariance under the 2-by-2 action: forms pull back into the pencil
    // and the induced wedge action preserves each graded piece.
    let gs: [[i64; 4]; 3] = [[1, 1, 0, 1], [0, 1, -1, 0], [1, 2, 1, 1]];
    let ca = form_coords(model.pencil.a());
    let cb = form_coords(model.pencil.b());
    for entries in gs {
        let g = Matrix::from_ints(2, 2, fd, &entries).map_err(|e| format!("2x2 matrix: {e}"))?;
        let phi = phi_from_gl2(fd, &g).map_err(|e| format!("induced 5x5 map: {e}"))?;
        for gram in [model.pencil.a(), model.pencil.b()] {
            let pulled = phi
                .transpose()
                .mul(gram)
                .and_then(|m| m.mul(&phi))
                .map_err(|e| format!("form pullback: {e}"))?;
            let rows = vec![ca.clone(), cb.clone(), form_coords(&pulled)];
            let stacked = Matrix::from_row_vectors(fd, 10, &rows)
                .map_err(|e| format!("coordinate stack: {e}"))?;
            ch.require("pulled-back members stay inside the pencil", stacked.rank() == 2);
        }
        let lam = induced_map(&phi, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)))
            .map_err(|e| format!("wedge action: {e}"))?;
        ch.require("the wedge action preserves the annihilator", preserves_span(&lam, &model.v8));
        ch.require("the wedge action preserves the complement", preserves_span(&lam, &model.complement));
        ch.require("the wedge action preserves the wedge line", preserves_span(&lam, &model.u1));
        ch.require("the wedge action preserves the graded 4-piece", preserves_span(&lam, &model.u4));
    }

    let rep = rank_profile(&model.pencil);
    ch.require("no member of the pencil has rank 2 or lower", rep.all_rank_four);

    ch.fact("annihilator dimension 8 with a 2-dimensional invariant complement");
    ch.fact("graded pieces of dimensions 1 and 4 nest correctly");
    ch.fact("3 sampled 2x2 symmetries pull the pencil back into itself and preserve every graded piece");
    ch.fact("no degenerate (rank at most 2) member exists in the pencil");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C05 — hyperplane-space dimension and the reducibility law.

fn c05(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the hyperplane-space sweep") {
        return skip;
    }
    by_field!(ctx, c05_inner)
}

fn c05_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let fd = &ctx.fd;
    let model = w_model::<F>(fd);
    let mut rng = ctx.rng();
    let mut ch = Checks::new();

    let n = match ctx.spec {
        FieldSpec::Rational => 12,
        _ => 50.max(ctx.samples / 4).min(400),
    };
    let mut reducible_seen = 0usize;
    for _ in 0..n {
        let v4 = random_hyperplane::<F>(fd, &mut rng)?;
        let rep = m_space(&model, &v4, None).map_err(|e| format!("hyperplane space: {e}"))?;
        ch.require_eq("hyperplane-space dimension", rep.basis.cols(), 4);
        let contains =
            (0..3).all(|j| span_contains(&v4, &model.standard.u3.col(j)));
        ch.require(
            "reducibility agrees with containment of the distinguished 3-space",
            rep.reducible == contains,
        );
        if rep.reducible {
            reducible_seen += 1;
        }
    }

    // The distinguished pencil of hyperplanes: always reducible, splitting
    // through the distinguished plane.
    let f = |k: i64| F::from_descriptor(fd, k).unwrap();
    for (lam, mu) in [(1i64, 0i64), (1, 1), (2, 1)] {
        let v4 = lu_hyperplane(&model, &f(lam), &f(mu));
        let rep = m_space(&model, &v4, None).map_err(|e| format!("special hyperplane: {e}"))?;
        ch.require("the special hyperplanes are reducible", rep.reducible);
        match rep.split {
            Some(split) => match split.pi_index {
                Some(idx) => ch.require(
                    "one split component is the distinguished plane",
                    spans_equal(&split.planes[idx], &model.pi_plane),
                ),
                None => {
                    ch.require("the special hyperplanes split through the distinguished plane", false)
                }
            },
            None => ch.require("split data present for the special hyperplanes", false),
        }
    }

    // Full scan over the 5-element field: every one of the 781 hyperplanes.
    let fd5 = FieldDescriptor::prime(5).map_err(|e| format!("field: {e}"))?;
    let model5 = w_model::<Fp>(&fd5);
    let f5 = |k: i64| Fp::new(k, 5);
    let mut reps5: Vec<Vec<Fp>> = Vec::with_capacity(781);
    for lead in 0..5usize {
        // Covectors with first nonzero coordinate at position `lead`,
        // normalized to 1 there.
        let tail = 4 - lead;
        let count = 5usize.pow(tail as u32);
        for mut idx in 0..count {
            let mut v = vec![f5(0); 5];
            v[lead] = f5(1);
            for slot in (lead + 1)..5 {
                v[slot] = f5((idx % 5) as i64);
                idx /= 5;
            }
            reps5.push(v);
        }
    }
    ch.require_eq("hyperplanes of the 5-space over the 5-element field", reps5.len(), 781);
    let mut reducible5 = 0usize;
    let mut agree = true;
    for theta in &reps5 {
        let row = Matrix::from_row_vectors(&fd5, 5, &[theta.clone()])
            .map_err(|e| format!("scan covector: {e}"))?;
        let v4 = columns_to_matrix(&fd5, 5, &row.kernel_basis());
        let rep = m_space(&model5, &v4, None).map_err(|e| format!("scan hyperplane: {e}"))?;
        let contains = (0..3).all(|j| span_contains(&v4, &model5.standard.u3.col(j)));
        if rep.reducible != contains {
            agree = false;
        }
        if rep.reducible {
            reducible5 += 1;
        }
        if rep.basis.cols() != 4 {
            agree = false;
        }
    }
    ch.require("full scan: reducibility is containment of the distinguished 3-space", agree);
    ch.require_eq("reducible hyperplanes over the 5-element field", reducible5, 6);

    ch.fact(format!("{n} seeded hyperplanes all have a 4-dimensional hyperplane space"));
    ch.fact(format!("{reducible_seen} of them were reducible, each agreeing with the membership law"));
    ch.fact("3 special pencil members split through the distinguished plane");
    ch.fact("full scan of all 781 hyperplanes over the 5-element field confirms the law, with exactly 6 reducible");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C06 — degree and smoothness sampling for the fourfold and its section.

fn c06(ctx: &Ctx) -> Outcome {
    if let Some(skip) = finite_only_skip(ctx, "the Hilbert-sampling degree certificate") {
        return skip;
    }
    if let Some(skip) = model_char_skip(ctx, 31, "the degree and smoothness sampling") {
        return skip;
    }
    by_field!(ctx, c06_inner)
}

fn c06_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let mut ch = Checks::new();

    let rep = w_degree_report(&model, &mut rng).map_err(|e| format!("degree report: {e}"))?;
    ch.require_eq("Hilbert values in degrees 0..=6", rep.hilbert.clone(), vec![
        1, 8, 31, 85, 190, 371, 658,
    ]);
    ch.require_eq("stabilized fourth difference (the projective degree)", rep.degree, 5);
    ch.require_eq("linear-section Hilbert values", rep.section_hilbert, [4, 5, 5, 5]);
    ch.require_eq("linear-section length", rep.length, 5);
    ch.require("degree report internal checks", rep.all_pass());

    let smooth_n = 30.max(ctx.samples / 4);
    let x = build_x(&model, ctx.seed ^ 0x00D5, smooth_n)
        .map_err(|e| format!("section construction: {e}"))?;
    ch.require_eq("certified smooth samples on the section", x.smooth_checked, smooth_n);
    let pts = x.sample_x_points(10, &mut rng).map_err(|e| format!("section points: {e}"))?;
    for p in &pts {
        ch.require("sampled section point lies on the threefold", x.on_x(p));
        let y = model.to_v8_coords(p).ok_or("section point left the annihilator")?;
        ch.require_eq("Jacobian rank at a sampled section point", x.jacobian_rank(&y), 4);
    }

    ch.fact("Hilbert values (1, 8, 31, 85, 190, 371, 658) with stabilized fourth difference 5");
    ch.fact("codimension-4 linear section has length 5");
    ch.fact(format!(
        "quadric section certified smooth at {smooth_n} samples, plus 10 fresh rank-4 Jacobian checks"
    ));
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C07 — the projection round-trip.

fn c07(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the projection round-trip") {
        return skip;
    }
    by_field!(ctx, c07_inner)
}

fn c07_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let n = match ctx.spec {
        FieldSpec::Rational => 25,
        _ => 100.max(ctx.samples),
    };
    let rep = kappa_roundtrip(&model, n, &mut rng).map_err(|e| format!("round-trip: {e}"))?;
    let mut ch = Checks::new();
    ch.require_eq("round-trips verified projectively", rep.roundtrips_ok, rep.samples);
    ch.require_eq("points sampled", rep.samples, n);
    ch.require("the center plane is refused by the projection", rep.pi_flagged);
    ch.require("the cubic image curve is refused by the inverse", rep.cubic_flagged);
    ch.require(
        "inverse components span the quadrics through the cubic curve",
        rep.components_span_cubic_quadrics,
    );
    ch.require("round-trip report internal checks", rep.all_pass());
    ch.fact(format!("{n} of {n} sampled fourfold points return to themselves"));
    ch.fact(format!(
        "quadrics through the distinguished cubic curve form a space of dimension {}",
        rep.cubic_quadric_dim
    ));
    ch.fact("both exceptional loci are refused with named errors");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C08 — the plane-incidence suite.

fn c08(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the plane-incidence sweep") {
        return skip;
    }
    if let Some(skip) = order_skip(ctx, 13, "the plane-incidence sweep") {
        return skip;
    }
    by_field!(ctx, c08_inner)
}

fn c08_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let n = match ctx.spec {
        FieldSpec::Rational => 8,
        _ => 10.max(ctx.samples / 20).min(40),
    };
    let rep = plane_incidences(&model, n, &mut rng).map_err(|e| format!("incidences: {e}"))?;
    let mut ch = Checks::new();
    ch.require("the distinguished plane lies on the fourfold", rep.pi_on_w);
    ch.require_eq("hyperplanes sampled", rep.samples, n);
    ch.require("every hyperplane quadric splits through the distinguished plane", rep.all_split_through_pi);
    ch.require("every intersection line is tangent to the dual conic", rep.all_lines_tangent);
    ch.require("every tangency point is the wedge image of the vertex", rep.all_tangency_points_match_vertex);
    ch.require("every vertex lies on the kernel conic", rep.all_vertices_on_cu);
    ch.require("plane pairs meet in a single point on the distinguished plane", rep.pair_points_on_pi);
    ch.require("each pair point is the wedge of the two vertices", rep.pair_points_are_vertex_wedges);
    ch.fact(format!("{n} hyperplane quadrics sampled; every one splits through the distinguished plane"));
    ch.fact("all tangency and pairwise-intersection certificates hold");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C09 — the conic classifier.

fn c09(ctx: &Ctx) -> Outcome {
    if let Some(skip) = finite_only_skip(ctx, "conic-point sampling") {
        return skip;
    }
    if let Some(skip) = model_char_skip(ctx, 11, "the conic classifier") {
        return skip;
    }
    if let Some(skip) = order_skip(ctx, 23, "the conic classifier") {
        return skip;
    }
    by_field!(ctx, c09_inner)
}

fn c09_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let fd = &ctx.fd;
    let model = w_model::<F>(fd);
    let mut rng = ctx.rng();
    let mut ch = Checks::new();

    let nondegenerate_gram = |rng: &mut ChaCha8Rng| -> Result<Matrix<F>, String> {
        for _ in 0..64 {
            let g = stable_symmetric_gram::<F>(fd, 3, rng);
            if g.rank() == 3 {
                return Ok(g);
            }
        }
        Err("no rank-3 symmetric form in 64 draws".into())
    };

    // The flat-family conic: any smooth conic in the distinguished plane.
    let rho_rec = ConicRecord::new(model.pi_plane.clone(), nondegenerate_gram(&mut rng)?)
        .map_err(|e| format!("flat-family conic: {e}"))?;
    let rho_cls =
        classify_conic(&model, &rho_rec, &mut rng).map_err(|e| format!("classify: {e}"))?;
    ch.require_eq("the distinguished-plane conic classifies as the flat class", rho_cls.tag, ConicTag::Rho);
    if let Some(v3) = &rho_cls.v3 {
        ch.require(
            "its recovered support 3-space is the distinguished one",
            spans_equal(v3, &model.standard.u3),
        );
    } else {
        ch.require("the flat class reports its 3-space", false);
    }

    // A hyperplane-family conic: the non-distinguished component of a split
    // hyperplane quadric.
    let f = |k: i64| F::from_descriptor(fd, k).unwrap();
    let v4s = lu_hyperplane(&model, &f(1), &f(4));
    let m_rep = m_space(&model, &v4s, None).map_err(|e| format!("split hyperplane: {e}"))?;
    let split = m_rep.split.ok_or("the special hyperplane did not split")?;
    let pi_idx = split.pi_index.ok_or("no split component matches the distinguished plane")?;
    let sigma_plane = split.planes[1 - pi_idx].clone();
    let sigma_rec = ConicRecord::new(sigma_plane, nondegenerate_gram(&mut rng)?)
        .map_err(|e| format!("hyperplane conic: {e}"))?;
    let sigma_cls =
        classify_conic(&model, &sigma_rec, &mut rng).map_err(|e| format!("classify: {e}"))?;
    ch.require_eq("the hyperplane conic classifies as the hyperplane class", sigma_cls.tag, ConicTag::Sigma);
    match &sigma_cls.v4 {
        Some(v4) => ch.require("its hyperplane is recovered", spans_equal(v4, &v4s)),
        None => ch.require("the hyperplane class reports its 4-space", false),
    }

    // A generic-class conic from the ruled-surface scaffold.
    let inst =
        admissible_cubic_instance(&model, &mut rng).map_err(|e| format!("scaffold conic: {e}"))?;
    let tau_cls =
        classify_conic(&model, &inst.record, &mut rng).map_err(|e| format!("classify: {e}"))?;
    ch.require_eq("the scaffold conic classifies as the generic class", tau_cls.tag, ConicTag::Tau);
    match &tau_cls.v4 {
        Some(v4) => ch.require("its supporting 4-space is recovered", spans_equal(v4, &inst.v4)),
        None => ch.require("the generic class reports its 4-space", false),
    }

    // Stability: reclassification with fresh point samples gives the same
    // labels and the same recovered subspaces.
    for _ in 0..2 {
        let r = classify_conic(&model, &rho_rec, &mut rng).map_err(|e| format!("reclassify: {e}"))?;
        ch.require("flat-class label is stable under resampling", r.tag == ConicTag::Rho);
        let s = classify_conic(&model, &sigma_rec, &mut rng).map_err(|e| format!("reclassify: {e}"))?;
        ch.require(
            "hyperplane-class label and 4-space are stable under resampling",
            s.tag == ConicTag::Sigma
                && s.v4.as_ref().map(|v| spans_equal(v, &v4s)).unwrap_or(false),
        );
        let t = classify_conic(&model, &inst.record, &mut rng).map_err(|e| format!("reclassify: {e}"))?;
        ch.require("generic-class label is stable under resampling", t.tag == ConicTag::Tau);
    }

    ch.fact("flat, hyperplane, and generic representatives classify correctly with their subspaces recovered");
    ch.fact("labels are stable across 2 independent resamplings of the test points");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C10 — symmetry dimensions of the fourfold.

fn c10(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 7, "the symmetry suite") {
        return skip;
    }
    by_field!(ctx, c10_inner)
}

fn c10_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let rep = aut_suite(&model, &mut rng).map_err(|e| format!("symmetry suite: {e}"))?;
    let mut ch = Checks::new();
    ch.require_eq("symmetry algebra dimension", rep.lie_dim, 8);
    ch.require_eq("completely symmetric subspace dimension", rep.phi0_kernel_dim, 4);
    ch.require_eq("joint kernel dimension of the constraint system", rep.kernel_dim, 5);
    ch.require_eq("infinitesimal pencil symmetries", rep.sl_kernel_dim, 8);
    ch.require("structure of the constraint system", rep.trivial_rows_ok && rep.linearity_ok);
    ch.require("block ranks", rep.block_ranks == (2, 8));
    ch.require("cubic-symbol kernel matches the explicit basis", rep.symmetric_basis_ok);
    ch.require("third block solves to the contragredient square", rep.phi3_matches_contragredient);
    ch.require("a generic symmetry transports the geometry", rep.generic_aut_ok);
    ch.require("symmetry suite internal checks", rep.all_pass());
    ch.fact("symmetry algebra has dimension 8 = 4 (from the 2x2 block) + 5 - 1");
    ch.fact("completely symmetric cubic space has dimension 4");
    ch.fact("a sampled generic symmetry preserves the fourfold, the plane, and the hyperplane family");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C11 — eigenvalue multiplicities and the folding bound.

fn c11(_ctx: &Ctx) -> Outcome {
    finish(c11_inner())
}

fn c11_inner() -> Result<Outcome, String> {
    let base = EigenSpec::from_pairs(&[(0, 2), (-1, 3)]);
    let v8 = base
        .wedge(2)
        .try_sub(&EigenSpec::from_pairs(&[(-1, 2)]))
        .map_err(|e| format!("weight subtraction: {e}"))?;
    let sym = v8.dual().sym(2);
    let mut ch = Checks::new();
    ch.require_eq(
        "weight multiplicities of the symmetric square",
        sym.pairs(),
        vec![(0, 1), (1, 4), (2, 13), (3, 12), (4, 6)],
    );
    ch.require_eq("total dimension", sym.dim(), 36);
    ch.require_eq("largest folded eigenspace at order 2", sym.max_folded_multiplicity(2), 20);
    let overall = (2u64..=6).map(|n| sym.max_folded_multiplicity(n)).max().unwrap_or(0);
    ch.require_eq("largest folded eigenspace over orders 2..=6", overall, 20);
    ch.fact(format!("multiplicities (1, 4, 13, 12, 6) on weights {}", fmt_pairs(&sym.pairs())));
    ch.fact("largest folded eigenspace is 20, attained at order 2");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C12 — rank of the unipotent quadric action.

fn c12(_ctx: &Ctx) -> Outcome {
    finish(c12_inner())
}

fn c12_inner() -> Result<Outcome, String> {
    // Field-independent statement; computed exactly over the rationals.
    let rep = unipotent_action().map_err(|e| format!("unipotent action: {e}"))?;
    let mut ch = Checks::new();
    ch.require_eq("rank of (identity minus the action) on the 36 quadric monomials", rep.moved_rank, 18);
    ch.require_eq("fixed-space dimension", rep.fixed_dim, 18);
    ch.require("the action is unipotent of index at most 5", rep.unipotency_ok);
    ch.require("the annihilator 8-space is stable", rep.v8_stable);
    ch.fact("rank of (identity minus action) is 18, exactly over the rationals");
    ch.fact("fixed quadrics form an 18-dimensional space; fifth power of the difference vanishes");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C13 — quadric evaluation rank on the fourfold.

fn c13(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 11, "the quadric evaluation sweep") {
        return skip;
    }
    by_field!(ctx, c13_inner)
}

fn c13_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let n = match ctx.spec {
        FieldSpec::Rational => 60,
        _ => 45.max(ctx.samples / 4),
    };
    let rep = quadric_space(&model, n, &mut rng).map_err(|e| format!("evaluation sweep: {e}"))?;
    let mut ch = Checks::new();
    ch.require_eq("evaluation rank of the 36 quadric monomials", rep.eval_rank, 31);
    ch.require_eq("dimension of quadrics vanishing on the fourfold", rep.vanishing_dim, 5);
    ch.fact(format!("{n} sampled fourfold points give evaluation rank 31"));
    ch.fact("36 - 31 = 5 independent quadrics vanish on the fourfold");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C14 — cohomology of the homogeneous bundles.

fn c14(_ctx: &Ctx) -> Outcome {
    finish(c14_inner())
}

fn c14_inner() -> Result<Outcome, String> {
    let suite = acyclicity_suite();
    let mut ch = Checks::new();
    for check in &suite {
        ch.require(
            &format!("bundle {}: table matches", check.label),
            check.passed(),
        );
    }
    let find = |label: &str| suite.iter().find(|c| c.label == label);
    for needed in ["O", "O(1)", "O(-5)", "O(-6)", "Omega1(-5)", "Omega2(-3)"] {
        ch.require(&format!("suite covers {needed}"), find(needed).is_some());
    }
    if let Some(c) = find("Omega2(-3)") {
        ch.require_eq("twisted 2-form power cohomology", c.computed.clone(), vec![(5usize, 5u128)]);
    }
    if let Some(c) = find("Omega1(-5)") {
        ch.require_eq("twisted cotangent cohomology", c.computed.clone(), vec![(6usize, 24u128)]);
    }
    if let Some(c) = find("O(1)") {
        ch.require_eq("sections of the hyperplane class", c.computed.clone(), vec![(0usize, 10u128)]);
    }
    if let Some(c) = find("O(-5)") {
        ch.require_eq("top cohomology at twist -5", c.computed.clone(), vec![(6usize, 1u128)]);
    }
    ch.fact(format!("{} bundle tables match their frozen values", suite.len()));
    ch.fact("twisted cotangent powers: a single dimension 5 in degree 5 and a single dimension 24 in degree 6");
    ch.fact("calibration: 10 hyperplane sections, 1-dimensional top cohomology at twist -5");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C15 — the exact-sequence cohomology ledger.

fn c15(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the independent rank recomputation") {
        return skip;
    }
    by_field!(ctx, c15_inner)
}

fn dims_of(solved: &SolvedLedger, name: &str) -> Option<Vec<u128>> {
    solved.objects.get(name).map(|vals| vals.iter().map(|v| v.value).collect())
}

fn c15_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let ledger = CohomLedger::canonical();
    let solved = solve_ledger(&ledger).map_err(|e| format!("ledger chase: {e}"))?;
    let mut ch = Checks::new();

    let expect = [
        ("O1Wm2", vec![0u128, 0, 0, 2, 0], "intrinsic 1-forms at twist -2"),
        ("O2Wm1", vec![0, 0, 0, 2, 0], "intrinsic 2-forms at twist -1"),
        ("O1Wm3", vec![0, 0, 0, 0, 8], "intrinsic 1-forms at twist -3"),
        ("J3res", vec![0, 0, 0, 5, 0], "restricted ambient 2-forms at twist -1"),
    ];
    for (name, want, label) in expect {
        match dims_of(&solved, name) {
            Some(got) => ch.require_eq(label, got, want),
            None => ch.require(&format!("ledger solves {name}"), false),
        }
    }
    ch.require(
        "the degree-3 cohomology of the 1-forms at twist -3 vanishes",
        dims_of(&solved, "O1Wm3").map(|d| d[3] == 0).unwrap_or(false),
    );

    let external: BTreeSet<String> = solved.consumed_facts(FactClass::External);
    let expected_facts: BTreeSet<String> =
        ["psi".to_string(), "sl_action".to_string()].into_iter().collect();
    ch.require_eq("external rank facts consumed", external.clone(), expected_facts);

    // Recompute both registered ranks independently over the working field.
    let model = standard_model::<F>(&ctx.fd);
    let psi = psi_map(&model);
    let sl = sl_action(&model);
    let declared_psi = ledger.facts.get("psi").map(|f| f.value);
    let declared_sl = ledger.facts.get("sl_action").map(|f| f.value);
    ch.require_eq("declared squaring-map rank", declared_psi, Some(3));
    ch.require_eq("declared action-map rank", declared_sl, Some(16));
    ch.require_eq("recomputed squaring-map rank", psi.rank as u128, 3);
    ch.require_eq("recomputed action-map rank", sl.rank as u128, 16);

    ch.fact("four target cohomology tables solved: dimensions 2, 2, 0, and 5 in the stated degrees");
    ch.fact("external rank facts consumed: exactly the squaring-map rank (3) and the action-map rank (16)");
    ch.fact("both ranks recomputed independently over the working field and matching the declarations");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C16 — the squaring-map and action-map ranks.

fn c16(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 5, "the rank computations") {
        return skip;
    }
    by_field!(ctx, c16_inner)
}

fn c16_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = standard_model::<F>(&ctx.fd);
    let psi = psi_map(&model);
    let sl = sl_action(&model);
    let mut ch = Checks::new();
    ch.require_eq("squaring-map rank", psi.rank, 3);
    ch.require("squaring-map image equals the distinguished 3-space", psi.image_equals_u3);
    ch.require_eq("action-map rank", sl.rank, 16);
    ch.require_eq("action-map domain dimension", sl.domain_dim, 24);
    ch.require_eq("action-map kernel dimension", sl.kernel_dim, 8);
    ch.fact("squaring map has rank 3 with image the distinguished 3-space");
    ch.fact("traceless action map has rank 16 on its 24-dimensional domain, kernel dimension 8");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C17 — Euler-characteristic identities.

fn c17(_ctx: &Ctx) -> Outcome {
    finish(c17_inner())
}

fn c17_inner() -> Result<Outcome, String> {
    let mut ch = Checks::new();
    ch.value_checks(&hrr_suite());
    for k in -5i64..=5 {
        match torsion_euler(k) {
            Ok(v) => ch.require_eq(&format!("torsion twist {k}"), v, i128::from(k)),
            Err(e) => ch.require(&format!("torsion twist {k}: {e}"), false),
        }
    }
    // Integrality sweep: the degree-10 evaluator returns an integer exactly
    // when the parity rule admits one.
    let mut sweep = 0usize;
    let mut sweep_ok = true;
    for rank in 1i64..=4 {
        for a in -3i64..=3 {
            for c2_h in -6i64..=6 {
                for c3 in -2i64..=2 {
                    let data = ThreefoldData { rank, a, c2_h, c3 };
                    let predicted = x10_parity_ok(&data);
                    let got = x10_euler(&data).is_ok();
                    if predicted != got {
                        sweep_ok = false;
                    }
                    sweep += 1;
                }
            }
        }
    }
    ch.require("integrality matches the parity rule on the sweep", sweep_ok);
    ch.fact("frozen values hold: -1, 2, 5, and 4 for the four named sheaves");
    ch.fact("torsion twists count points: values -5..=5 match the twist");
    ch.fact(format!("{sweep} parameter tuples swept: integrality agrees with the parity rule"));
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C18 — divisor-class ledgers.

fn c18(_ctx: &Ctx) -> Outcome {
    finish(c18_inner())
}

fn c18_inner() -> Result<Outcome, String> {
    let mut ch = Checks::new();
    let conic = transform_ledger(TransformKind::Conic);
    ch.require_eq("conic-center hyperplane class", conic.h_prime, (3, -4));
    ch.require_eq("conic-center exceptional class", conic.e_prime, (2, -3));
    ch.require_eq("conic-center canonical class", conic.k_tilde, (-1, 1));
    ch.require("conic-center rules are involutive", conic.is_involutive());
    let line = transform_ledger(TransformKind::Line);
    ch.require_eq("line-center hyperplane class", line.h_prime, (2, -3));
    ch.require_eq("line-center exceptional class", line.e_prime, (1, -2));
    ch.require_eq("line-center canonical class", line.k_tilde, (-1, 1));
    ch.require("line-center rules are involutive", line.is_involutive());
    ch.value_checks(&pairing_checks(TransformKind::Conic));
    ch.value_checks(&pairing_checks(TransformKind::Line));
    ch.require_eq("partner-conic degree under the contracted system", sigma_system_degree(2, 1, 1), 0);
    ch.require_eq("sextic image degree under the contracted system", sigma_system_degree(6, 4, 0), 2);
    ch.value_checks(&delpezzo_checks());
    ch.fact("conic surgery: classes (3, -4) and (2, -3), involutive, canonical class (-1, 1)");
    ch.fact("line surgery: classes (2, -3) and (1, -2), involutive");
    ch.fact("test-curve pairings match, including degrees -1 and -2 against the new hyperplane class");
    ch.fact("quintic surface ledger: 10 lines, 5 pencils, residual classes of degree 6 and genus 0");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C19 — dimension-count identities.

fn c19(_ctx: &Ctx) -> Outcome {
    finish(c19_inner())
}

fn c19_inner() -> Result<Outcome, String> {
    let checks = dimension_counts(&standard_dimension_inputs());
    let mut ch = Checks::new();
    ch.value_checks(&checks);
    let get = |label: &str| checks.iter().find(|c| c.label == label).map(|c| c.computed);
    ch.require_eq("quadric linear system", get("dim of the quadric linear system"), Some(30));
    ch.require_eq("moduli dimension", get("moduli dimension"), Some(22));
    ch.require_eq(
        "family of intermediate Jacobians",
        get("dimension of the family of intermediate Jacobians"),
        Some(20),
    );
    ch.require_eq("semisimple parameters", get("semisimple eigen parameters"), Some(25));
    ch.require_eq("unipotent conditions", get("unipotent conditions"), Some(13));
    ch.fact("linear system dimension 30; moduli dimension 30 - 8 = 22; Jacobian family dimension 22 - 2 = 20");
    ch.fact("semisimple bound 25 < 29 and unipotent bound 13 > 7 both hold");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C20 — the threefold geometry suite.

fn c20(ctx: &Ctx) -> Outcome {
    let p = match ctx.spec {
        FieldSpec::Prime(p) if (31..=149).contains(&p) => p,
        FieldSpec::Prime(p) => {
            return Outcome::Skip {
                reason: format!(
                    "the threefold suite enumerates hyperplane pencils and is sized for primes 31..=149, got {p}"
                ),
            }
        }
        _ => {
            return Outcome::Skip {
                reason: "the threefold suite enumerates rational points and runs over prime fields only"
                    .into(),
            }
        }
    };
    finish(c20_inner(ctx, p))
}

/// Interpolates the determinant of the restricted quadric pencil as a binary
/// quartic, using five fixed nodes.
fn pencil_determinant(
    fd: &FieldDescriptor,
    qw: &Matrix<Fp>,
    qom: &Matrix<Fp>,
    vinv: &Matrix<Fp>,
) -> Result<BinaryForm<Fp>, String> {
    let f = |k: i64| Fp::new(k, fd.characteristic().unwrap());
    let nodes: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)];
    let mut dets = Vec::with_capacity(5);
    for (lam, mu) in nodes {
        let member = qw
            .scale(&f(lam))
            .add(&qom.scale(&f(mu)))
            .map_err(|e| format!("pencil member: {e}"))?;
        dets.push(member.det().map_err(|e| format!("determinant: {e}"))?);
    }
    let coeffs = vinv.mul_vec(&dets).map_err(|e| format!("interpolation: {e}"))?;
    Ok(BinaryForm::new(fd, 4, coeffs))
}

/// Inverse of the fixed quartic interpolation matrix for the five nodes.
fn quartic_node_inverse(fd: &FieldDescriptor) -> Result<Matrix<Fp>, String> {
    let rows: [[i64; 5]; 5] = [
        [1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1],
        [1, 1, 1, 1, 1],
        [1, 2, 4, 8, 16],
        [1, 3, 9, 27, 81],
    ];
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    let v = Matrix::from_ints(5, 5, fd, &flat).map_err(|e| format!("node matrix: {e}"))?;
    v.inverse().map_err(|e| format!("node matrix inversion: {e}"))
}

/// Splits a rank-2 member into its two planes inside the 4-dimensional
/// hyperplane space; `None` when the two planes are conjugate over the
/// quadratic extension.
fn split_rank2_member(
    fd: &FieldDescriptor,
    s: &Matrix<Fp>,
) -> Result<Option<[Matrix<Fp>; 2]>, String> {
    let kernel = s.kernel_basis();
    if kernel.len() != 2 {
        return Err(format!("rank-2 member with kernel dimension {}", kernel.len()));
    }
    let f = |k: i64| Fp::new(k, fd.characteristic().unwrap());
    // Complete the kernel to a basis with two coordinate vectors.
    let mut complement: Option<(Vec<Fp>, Vec<Fp>)> = None;
    'outer: for i in 0..4 {
        for j in (i + 1)..4 {
            let mut u = vec![f(0); 4];
            u[i] = f(1);
            let mut v = vec![f(0); 4];
            v[j] = f(1);
            let all = columns_to_matrix(fd, 4, &[kernel[0].clone(), kernel[1].clone(), u.clone(), v.clone()]);
            if all.rank() == 4 {
                complement = Some((u, v));
                break 'outer;
            }
        }
    }
    let (u, v) = complement.ok_or("no coordinate complement of the kernel")?;
    // The member restricted to the complement is a nondegenerate binary
    // quadratic; its isotropic directions give the two planes.
    let quad = BinaryForm::new(
        fd,
        2,
        vec![eval_gram(s, &u), f(2) * polar_gram(s, &u, &v), eval_gram(s, &v)],
    );
    let roots = quad.p1_roots_with_multiplicity();
    if roots.iter().map(|(_, m)| m).sum::<usize>() != 2 || roots.len() != 2 {
        return Ok(None);
    }
    let mut planes = Vec::with_capacity(2);
    for (root, _) in roots {
        let dir: Vec<Fp> = match root {
            Some(t) => u.iter().zip(v.iter()).map(|(a, b)| *a + t * *b).collect(),
            None => v.clone(),
        };
        planes.push(columns_to_matrix(fd, 4, &[kernel[0].clone(), kernel[1].clone(), dir]));
    }
    Ok(Some([planes.remove(0), planes.remove(0)]))
}

/// One generic conic pair found by the through-a-point hyperplane scan.
struct GenericPair {
    v4: Matrix<Fp>,
    records: [ConicRecord<Fp>; 2],
}

/// Scans every hyperplane containing the support of a fourfold point for a
/// split residual quartic, yielding conic pairs through that point.
fn conic_pairs_through(
    model: &WModel<Fp>,
    omega8: &Matrix<Fp>,
    point: &[Fp],
    vinv: &Matrix<Fp>,
    found: &mut Vec<GenericPair>,
) -> Result<(), String> {
    let fd = model.field().clone();
    let p = fd.characteristic().unwrap();
    let f = |k: i64| Fp::new(k, p);
    let supp = support(&fd, point).map_err(|e| format!("point support: {e}"))?;
    let ann = supp.transpose().kernel_basis();
    if ann.len() != 3 {
        return Err(format!("support annihilator has dimension {}", ann.len()));
    }
    // All covectors vanishing on the support, up to scale.
    let mut combos: Vec<[i64; 3]> = Vec::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            combos.push([1, a, b]);
        }
    }
    for c in 0..p as i64 {
        combos.push([0, 1, c]);
    }
    combos.push([0, 0, 1]);

    for combo in combos {
        let mut theta = vec![f(0); 5];
        for (ci, basis) in combo.iter().zip(ann.iter()) {
            for (slot, val) in theta.iter_mut().zip(basis.iter()) {
                *slot = *slot + f(*ci) * *val;
            }
        }
        let row = Matrix::from_row_vectors(&fd, 5, &[theta]).map_err(|e| format!("covector: {e}"))?;
        let v4 = columns_to_matrix(&fd, 5, &row.kernel_basis());
        let m = match m_space(model, &v4, Some(omega8)) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if m.reducible {
            continue;
        }
        let qom = m.q_omega.clone().ok_or("section quadric missing")?;
        let disc = pencil_determinant(&fd, &m.q_w, &qom, vinv)?;
        if disc.is_zero() {
            continue;
        }
        for (root, mult) in disc.p1_roots_with_multiplicity() {
            if mult < 2 {
                continue;
            }
            let member = match &root {
                Some(t) => m
                    .q_w
                    .add(&qom.scale(t))
                    .map_err(|e| format!("singular member: {e}"))?,
                None => qom.clone(),
            };
            if member.rank() != 2 {
                continue;
            }
            let Some(planes_m) = split_rank2_member(&fd, &member)? else {
                continue;
            };
            let mut records = Vec::with_capacity(2);
            for plane_m in &planes_m {
                let mut gram = restrict_gram(&m.q_w, plane_m);
                if gram.rank() == 0 {
                    gram = restrict_gram(&qom, plane_m);
                }
                if gram.rank() != 3 {
                    break; // degenerate conic; not the generic situation
                }
                let ambient = m.basis.mul(plane_m).map_err(|e| format!("plane embedding: {e}"))?;
                match ConicRecord::new(ambient, gram) {
                    Ok(rec) => records.push(rec),
                    Err(_) => break,
                }
            }
            if records.len() != 2 {
                continue;
            }
            let duplicate = found.iter().any(|g| {
                spans_equal(&g.records[0].plane, &records[0].plane)
                    || spans_equal(&g.records[1].plane, &records[0].plane)
            });
            if duplicate {
                continue;
            }
            let pair =
                GenericPair { v4: v4.clone(), records: [records.remove(0), records.remove(0)] };
            found.push(pair);
        }
    }
    Ok(())
}

fn c20_inner(ctx: &Ctx, p: u64) -> Result<Outcome, String> {
    let fd = FieldDescriptor::prime(p).map_err(|e| format!("field: {e}"))?;
    let model = w_model::<Fp>(&fd);
    let f = |k: i64| Fp::new(k, p);
    let vinv = quartic_node_inverse(&fd)?;
    let mut ch = Checks::new();

    // The distinguished plane in annihilator coordinates.
    let mut pi_cols = Vec::with_capacity(3);
    for j in 0..3 {
        pi_cols.push(
            model
                .to_v8_coords(&model.pi_plane.col(j))
                .ok_or("the distinguished plane left the annihilator")?,
        );
    }
    let pi_v8 = columns_to_matrix(&fd, 8, &pi_cols);

    // A fixed hyperplane avoiding the distinguished 3-space, for the
    // space-curve checks.
    let v4_quartic = Matrix::from_ints(5, 4, &fd, &[
        1, 0, 0, 0, //
        0, 1, 0, 0, //
        0, 0, 1, 0, //
        0, 0, 0, 1, //
        0, 0, 0, 0,
    ])
    .map_err(|e| format!("fixed hyperplane: {e}"))?;

    let mut total_conics = 0usize;
    let mut total_generic = 0usize;
    for k in 0..3u64 {
        let x = build_x(&model, ctx.seed.wrapping_add(k), 40)
            .map_err(|e| format!("section seed {k}: {e}"))?;
        ch.require_eq("certified smooth section samples", x.smooth_checked, 40);
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ (0xC2_0000 + k));

        let pts = x.sample_x_points(10, &mut rng).map_err(|e| format!("section points: {e}"))?;
        for pt in &pts {
            ch.require("sampled point lies on the threefold", x.on_x(pt));
            let y = model.to_v8_coords(pt).ok_or("section point left the annihilator")?;
            ch.require_eq("Jacobian rank at a sampled point", x.jacobian_rank(&y), 4);
        }

        // The special conic and its class.
        let c_x = ConicRecord::new(model.pi_plane.clone(), restrict_gram(&x.omega8, &pi_v8))
            .map_err(|e| format!("special conic: {e}"))?;
        let cls = classify_conic(&x.w, &c_x, &mut rng).map_err(|e| format!("classify: {e}"))?;
        ch.require_eq("the special conic classifies as the flat class", cls.tag, ConicTag::Rho);

        // The hyperplane-conic family and its incidence geometry.
        let sig = sigma_incidences(&x, 8, &mut rng).map_err(|e| format!("family scan: {e}"))?;
        ch.require_eq("hyperplane-conic family size", sig.family_size, (p + 1) as usize);
        ch.require("every family member splits through the distinguished plane", sig.all_split);
        ch.require("every family member meets the special conic in length 2", sig.all_meet_length_2);
        ch.require("family incidence suite", sig.all_pass());

        // The space quartic curve in a fixed good hyperplane.
        let quartic = elliptic_quartic(&x, &v4_quartic, &mut rng)
            .map_err(|e| format!("space curve: {e}"))?;
        ch.require("every enumerated curve point lies on the threefold", quartic.all_on_x);
        ch.require("genus-1 point-count bound", quartic.hasse_ok);
        ch.require("all plane sections have total length 4", quartic.sections_ok);
        ch.require_eq("plane sections examined", quartic.plane_sections.len(), 5);

        // The involution on the split family: ten members.
        for mu in 0..10i64 {
            let v4 = lu_hyperplane(&x.w, &f(1), &f(mu));
            let rep = iota(&x, &c_x, &v4).map_err(|e| format!("involution (split): {e}"))?;
            ch.require("split involution flags the reducible shortcut", rep.split_case);
            ch.require("split involution squares to the identity", rep.involution_ok);
            ch.require_eq("meet length with the residual conic", rep.meet_count, 2);
            let sigma_cls = classify_conic(&x.w, &rep.conic, &mut rng)
                .map_err(|e| format!("classify residual: {e}"))?;
            ch.require_eq(
                "the residual of the special conic lies in the hyperplane family",
                sigma_cls.tag,
                ConicTag::Sigma,
            );
            if let Some(got_v4) = &sigma_cls.v4 {
                ch.require("the residual's hyperplane is recovered", spans_equal(got_v4, &v4));
            } else {
                ch.require("the residual reports its hyperplane", false);
            }
            total_conics += 1;
        }

        // Generic conics through sampled points, via the hyperplane scan.
        let mut pairs: Vec<GenericPair> = Vec::new();
        for _ in 0..8 {
            if pairs.len() >= 2 {
                break;
            }
            let pt = x
                .sample_x_points(1, &mut rng)
                .map_err(|e| format!("scan point: {e}"))?
                .remove(0);
            conic_pairs_through(&x.w, &x.omega8, &pt, &vinv, &mut pairs)?;
        }
        ch.require("at least one generic conic pair found through sampled points", !pairs.is_empty());
        for pair in &pairs {
            let rep = iota(&x, &pair.records[0], &pair.v4)
                .map_err(|e| format!("involution (generic): {e}"))?;
            ch.require("generic involution avoids the reducible shortcut", !rep.split_case);
            ch.require("generic involution squares to the identity", rep.involution_ok);
            ch.require_eq("generic meet length", rep.meet_count, 2);
            ch.require(
                "the involution image is the other conic of the split quartic",
                spans_equal(&rep.conic.plane, &pair.records[1].plane),
            );
            let tag = classify_conic(&x.w, &pair.records[0], &mut rng)
                .map_err(|e| format!("classify generic: {e}"))?
                .tag;
            ch.require_eq("generic conics classify as the generic class", tag, ConicTag::Tau);
            total_conics += 2;
            total_generic += 2;
        }
    }

    ch.fact("3 independent section seeds, each certified smooth at 40 samples with rank-4 Jacobians");
    ch.fact(format!(
        "special conic classifies flat; all {} family conics split and meet it in length 2",
        p + 1
    ));
    ch.fact("space quartic curves pass the genus-1 count and the length-4 plane sections");
    ch.fact(format!(
        "involution certified on {total_conics} conics ({total_generic} generic), squaring to the identity with meet length 2"
    ));
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// C21 — the twisted-cubic parametrization.

fn c21(ctx: &Ctx) -> Outcome {
    if let Some(skip) = model_char_skip(ctx, 11, "the twisted-cubic parametrization") {
        return skip;
    }
    by_field!(ctx, c21_inner)
}

fn c21_inner<F: Field>(ctx: &Ctx) -> Result<Outcome, String> {
    let model = w_model::<F>(&ctx.fd);
    let mut rng = ctx.rng();
    let mut ch = Checks::new();

    // Degenerate draws are reported as such by the parametrization; redraw
    // the scaffold on that named error and certify five generic instances.
    let instances = 5usize;
    let mut certified = 0usize;
    let mut attempts = 0usize;
    while certified < instances && attempts < 30 {
        attempts += 1;
        let inst = admissible_cubic_instance(&model, &mut rng)
            .map_err(|e| format!("instance {attempts}: {e}"))?;
        let rep = match twisted_cubic(
            &model,
            &inst.record,
            &inst.base,
            &inst.ell,
            &inst.ell_prime,
            &inst.w,
            &inst.w_prime,
            &mut rng,
        ) {
            Ok(rep) => rep,
            Err(WxError::NonGeneric(_)) => continue,
            Err(e) => return Err(format!("parametrization {attempts}: {e}")),
        };
        certified += 1;
        ch.require("curve ends lie on the conic", rep.foot_match);
        ch.require("marked parameters land on the two lines", rep.line_match);
        ch.require("sampled curve points are decomposable", rep.decomposable_ok);
        ch.require("the curve assembles as a moving wedge", rep.assembly_ok);
        ch.require_eq("span rank of the curve", rep.span_rank, 4);
        ch.require("the curve is projectively unique", rep.unique);
        ch.require("all parametrization certificates", rep.all_pass());
    }
    ch.require_eq("generic instances certified", certified, instances);

    let tangent = tangent_chord_instance(&model, &mut rng)
        .map_err(|e| format!("tangent instance: {e}"))?;
    match twisted_cubic(
        &model,
        &tangent.record,
        &tangent.base,
        &tangent.ell,
        &tangent.ell_prime,
        &tangent.w,
        &tangent.w_prime,
        &mut rng,
    ) {
        Err(WxError::DegenerateBisecant { tangent: true }) => {
            ch.require("tangent chords are rejected by name", true)
        }
        other => ch.require(
            &format!(
                "tangent chords are rejected by name (got {})",
                match other {
                    Ok(_) => "a certified curve".to_string(),
                    Err(e) => format!("{e}"),
                }
            ),
            false,
        ),
    }

    let missing = missing_chord_instance(&model, &mut rng)
        .map_err(|e| format!("missing-chord instance: {e}"))?;
    match twisted_cubic(
        &model,
        &missing.record,
        &missing.base,
        &missing.ell,
        &missing.ell_prime,
        &missing.w,
        &missing.w_prime,
        &mut rng,
    ) {
        Err(WxError::DegenerateBisecant { tangent: false }) => {
            ch.require("non-secant chords are rejected by name", true)
        }
        other => ch.require(
            &format!(
                "non-secant chords are rejected by name (got {})",
                match other {
                    Ok(_) => "a certified curve".to_string(),
                    Err(e) => format!("{e}"),
                }
            ),
            false,
        ),
    }

    let good = admissible_cubic_instance(&model, &mut rng)
        .map_err(|e| format!("precondition instance: {e}"))?;
    let bad_w = stable_vector::<F>(&ctx.fd, 5, &mut rng);
    match twisted_cubic(
        &model,
        &good.record,
        &good.base,
        &good.ell,
        &good.ell_prime,
        &bad_w,
        &good.w_prime,
        &mut rng,
    ) {
        Err(WxError::Precondition(msg)) => ch.require(
            &format!("corrupted marked points name the offending input (got {msg:?})"),
            msg.contains("first"),
        ),
        other => ch.require(
            &format!(
                "corrupted marked points raise a precondition error (got {})",
                match other {
                    Ok(_) => "a certified curve".to_string(),
                    Err(e) => format!("{e}"),
                }
            ),
            false,
        ),
    }

    ch.fact(format!(
        "{certified} admissible inputs (of {attempts} drawn) yield certified curves: end, line, decomposability, assembly, and uniqueness certificates all hold"
    ));
    ch.fact("tangent and non-secant chords are rejected with the degenerate-bisecant error");
    ch.fact("corrupted marked points are rejected with a named precondition");
    Ok(ch.done())
}

// ---------------------------------------------------------------------------
// The registry.

/// All claims in id order.
pub(super) fn registry() -> &'static [ClaimDef] {
    use once_cell::sync::Lazy;
    static REGISTRY: Lazy<Vec<ClaimDef>> = Lazy::new(build_registry);
    &REGISTRY
}

fn build_registry() -> Vec<ClaimDef> {
    vec![
        ClaimDef {
            info: ClaimInfo {
                id: "C01",
                title: "Pencil rank profile",
                dependencies: &["pencils", "scalars"],
                provenance: "reference",
                fields: "any",
            },
            expected: "every nonzero pencil member has rank 4; sub-Pfaffian common divisor degree 0",
            run: c01,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C02",
                title: "Kernel conic of the pencil",
                dependencies: &["pencils", "scalars"],
                provenance: "reference",
                fields: "any",
            },
            expected: "degree-2 kernel coordinates; sampled kernel vectors annihilated; span equals the distinguished 3-space",
            run: c02,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C03",
                title: "Isotropic 3-space uniqueness by enumeration",
                dependencies: &["pencils"],
                provenance: "oracle",
                fields: "any (enumeration fixed at fp:5)",
            },
            expected: "20306 subspaces enumerated; exactly 1 doubly isotropic, equal to the distinguished 3-space",
            run: c03,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C04",
                title: "Standard model consistency",
                dependencies: &["pencils", "multilinear"],
                provenance: "reference",
                fields: "any",
            },
            expected: "annihilator dimension 8; graded pieces nest; pencil equivariant under the 2x2 action; no rank-2 members",
            run: c04,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C05",
                title: "Hyperplane-space dimension and reducibility law",
                dependencies: &["wx_geometry", "pencils"],
                provenance: "reference",
                fields: "any (full scan fixed at fp:5)",
            },
            expected: "hyperplane spaces have dimension 4; reducibility is containment of the distinguished 3-space (781-hyperplane full scan, 6 reducible)",
            run: c05,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C06",
                title: "Fourfold degree and smoothness sampling",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "fp/fp2 with characteristic >= 31",
            },
            expected: "Hilbert values (1, 8, 31, 85, 190, 371, 658); degree 5; section length 5; smooth samples certified",
            run: c06,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C07",
                title: "Projection round-trip",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "any",
            },
            expected: "every sampled point returns to itself; both exceptional loci refused; inverse components span the quadric system",
            run: c07,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C08",
                title: "Plane incidence suite",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "any with at least 13 elements",
            },
            expected: "hyperplane quadrics split through the distinguished plane; tangency and pair-point certificates hold",
            run: c08,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C09",
                title: "Conic classifier",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "fp/fp2 with at least 23 elements",
            },
            expected: "flat, hyperplane, and generic representatives classify correctly with stable labels and recovered subspaces",
            run: c09,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C10",
                title: "Fourfold symmetry dimensions",
                dependencies: &["wx_geometry", "pencils", "multilinear"],
                provenance: "reference",
                fields: "any",
            },
            expected: "symmetry algebra dimension 8; completely symmetric subspace dimension 4",
            run: c10,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C11",
                title: "Eigenvalue multiplicities and folding bound",
                dependencies: &["multilinear"],
                provenance: "reference",
                fields: "any (field-independent)",
            },
            expected: "multiplicities (1, 4, 13, 12, 6) on the 36-dimensional space; largest folded eigenspace 20",
            run: c11,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C12",
                title: "Unipotent quadric action rank",
                dependencies: &["wx_geometry", "multilinear"],
                provenance: "reference",
                fields: "any (computed over the rationals)",
            },
            expected: "rank of (identity minus action) is 18; fixed space has dimension 18",
            run: c12,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C13",
                title: "Quadric evaluation rank",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "any",
            },
            expected: "evaluation rank 31 of the 36 monomials, so 5 independent quadrics vanish on the fourfold",
            run: c13,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C14",
                title: "Homogeneous-bundle cohomology suite",
                dependencies: &["bbw"],
                provenance: "reference",
                fields: "any (field-independent)",
            },
            expected: "acyclic twists are acyclic; single cohomologies of dimensions 5, 24, 10, and 1 in the stated degrees",
            run: c14,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C15",
                title: "Cohomology ledger chase",
                dependencies: &["bbw", "pencils"],
                provenance: "reference",
                fields: "any",
            },
            expected: "target tables (2, 2, 0, 5 in the stated degrees) solved consuming exactly two external rank facts, both recomputed",
            run: c15,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C16",
                title: "Squaring and action map ranks",
                dependencies: &["pencils"],
                provenance: "reference",
                fields: "any",
            },
            expected: "squaring map rank 3 with image the distinguished 3-space; action map rank 16 with kernel dimension 8",
            run: c16,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C17",
                title: "Euler characteristic suite",
                dependencies: &["chow"],
                provenance: "reference",
                fields: "any (field-independent)",
            },
            expected: "frozen values -1, 2, 5, 4; torsion twists count points; integrality matches the parity rule",
            run: c17,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C18",
                title: "Divisor-class ledgers",
                dependencies: &["chow"],
                provenance: "reference",
                fields: "any (field-independent)",
            },
            expected: "surgery classes (3, -4)/(2, -3) and (2, -3)/(1, -2), involutive; pairing and quintic-surface checks hold",
            run: c18,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C19",
                title: "Dimension-count identities",
                dependencies: &["chow"],
                provenance: "reference",
                fields: "any (field-independent)",
            },
            expected: "moduli dimension 22; Jacobian family dimension 20; bounds 25 < 29 and 13 > 7",
            run: c19,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C20",
                title: "Threefold geometry suite",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "fp with 31 <= p <= 149",
            },
            expected: "3 seeds: smooth sections, flat and hyperplane conic classes, length-4 space-curve sections, involution certified on 10+ conics per seed",
            run: c20,
        },
        ClaimDef {
            info: ClaimInfo {
                id: "C21",
                title: "Twisted-cubic parametrization",
                dependencies: &["wx_geometry"],
                provenance: "reference",
                fields: "any with characteristic 0 or >= 11",
            },
            expected: "5 admissible inputs certified with uniqueness; tangent, non-secant, and corrupted inputs rejected by name",
            run: c21,
        },
    ]
}
