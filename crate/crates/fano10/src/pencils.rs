//! Pencils of skew forms on a five-dimensional space.
//!
//! The central object is a pencil `λA + μB` of skew-symmetric bilinear forms
//! on `V₅ = U₂ ⊕ Sym²U₂^∨` whose nonzero members all have rank four. Its
//! member kernels sweep a conic inside the plane `P(U₃)`, `U₃ = Sym²U₂^∨`
//! being the unique common isotropic 3-space. The pencil span `L` sits inside
//! `∧²V₅^∨`, and two derived linear maps carry the key rank facts: the
//! squaring map `ψ : Sym²L → V₅` (rank 3, image `U₃`) and the action map
//! `sl(V₅) → Hom(L, ∧²V₅^∨/L)` (rank 16, kernel of dimension 8).

use crate::multilinear::{
    induced_map, subsets_lex, wedge2_basis_index, wedge_elements, FunctorExpr,
};
use crate::scalars::{BinaryForm, Field, FieldDescriptor, LinearError, Matrix, P1Point};
use num_traits::Zero;

/// Errors from pencil constructions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PencilError {
    /// A Gram matrix is not 5×5 skew-symmetric.
    #[error("not a 5x5 skew form: {0}")]
    NotSkew(String),
    /// The two members are linearly dependent, so there is no pencil.
    #[error("degenerate pencil: members are linearly dependent")]
    DependentMembers,
    /// The member kernels do not span a 3-space.
    #[error("kernel span has dimension {0}, expected 3")]
    KernelSpan(usize),
    /// Underlying linear algebra failure.
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// A pencil of skew forms, stored as two 5×5 Gram matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPencil<F: Field> {
    a: Matrix<F>,
    b: Matrix<F>,
}

impl<F: Field> SkewPencil<F> {
    /// Validates and wraps two skew 5×5 Gram matrices.
    pub fn new(a: Matrix<F>, b: Matrix<F>) -> Result<Self, PencilError> {
        for (name, m) in [("first", &a), ("second", &b)] {
            if m.rows() != 5 || m.cols() != 5 {
                return Err(PencilError::NotSkew(format!(
                    "{name} member is {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            for i in 0..5 {
                for j in 0..5 {
                    let sum = m.at(i, j).clone() + m.at(j, i).clone();
                    if !sum.is_zero() {
                        return Err(PencilError::NotSkew(format!(
                            "{name} member: entry ({i},{j}) breaks antisymmetry"
                        )));
                    }
                }
            }
        }
        // Independence: the 2×10 coordinate matrix must have rank 2.
        let coords = Matrix::from_rows(
            a.field().clone(),
            vec![form_coords(&a), form_coords(&b)],
        )?;
        if coords.rank() != 2 {
            return Err(PencilError::DependentMembers);
        }
        Ok(SkewPencil { a, b })
    }

    /// First member.
    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    /// Second member.
    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    /// The field descriptor.
    pub fn field(&self) -> &FieldDescriptor {
        self.a.field()
    }

    /// Gram matrix of the member at `[λ : μ]`.
    pub fn member(&self, lambda: &F, mu: &F) -> Matrix<F> {
        self.a.scale(lambda).add(&self.b.scale(mu)).expect("same shape")
    }

    /// The five sub-Pfaffian binary quadratics: entry `i` is the Pfaffian of
    /// the member with row and column `i` deleted, as a form in `(λ, μ)`.
    pub fn pfaffian_forms(&self) -> [BinaryForm<F>; 5] {
        let fd = self.field().clone();
        let entry = |i: usize, j: usize| -> BinaryForm<F> {
            BinaryForm::new(
                &fd,
                1,
                vec![self.a.at(i, j).clone(), self.b.at(i, j).clone()],
            )
        };
        std::array::from_fn(|i| {
            let kept: Vec<usize> = (0..5).filter(|&k| k != i).collect();
            let [p, q, r, s] = [kept[0], kept[1], kept[2], kept[3]];
            // Pfaffian of a 4×4 skew matrix: m01·m23 − m02·m13 + m03·m12.
            entry(p, q)
                .mul(&entry(r, s))
                .sub(&entry(p, r).mul(&entry(q, s)))
                .add(&entry(p, s).mul(&entry(q, r)))
        })
    }
}

/// Coordinates of a skew Gram matrix in the lex basis of `∧²V^∨`
/// (coefficient of `e_i^∨ ∧ e_j^∨` is the `(i, j)` entry, `i < j`).
pub fn form_coords<F: Field>(gram: &Matrix<F>) -> Vec<F> {
    let n = gram.rows();
    subsets_lex(n, 2)
        .iter()
        .map(|t| gram.at(t[0], t[1]).clone())
        .collect()
}

/// Rebuilds the skew Gram matrix from its `∧²V^∨` coordinates.
pub fn gram_from_coords<F: Field>(fd: &FieldDescriptor, n: usize, coords: &[F]) -> Matrix<F> {
    let mut m = Matrix::zeros(n, n, fd);
    for (idx, t) in subsets_lex(n, 2).iter().enumerate() {
        *m.at_mut(t[0], t[1]) = coords[idx].clone();
        *m.at_mut(t[1], t[0]) = -coords[idx].clone();
    }
    m
}

/// Outcome of the rank-profile check.
#[derive(Debug, Clone, PartialEq)]
pub struct RankProfileReport<F: Field> {
    /// True when every nonzero member has rank exactly four.
    pub all_rank_four: bool,
    /// Degree of the common divisor of the sub-Pfaffians (zero when the
    /// profile holds); a positive degree certifies degenerate members over
    /// the algebraic closure.
    pub common_divisor_degree: usize,
    /// Rational degenerate members, if any.
    pub rational_degenerate_points: Vec<P1Point<F>>,
}

/// Checks that every nonzero member of the pencil has rank four.
///
/// A skew 5×5 matrix has rank 4 unless all five sub-Pfaffians vanish; the
/// locus of degenerate members is therefore the common zero set of five
/// binary quadratics, detected exactly by their gcd (gcd over the base field
/// equals gcd over any extension).
pub fn rank_profile<F: Field>(pencil: &SkewPencil<F>) -> RankProfileReport<F> {
    let pf = pencil.pfaffian_forms();
    let mut gcd: Option<BinaryForm<F>> = None;
    for f in &pf {
        if f.is_zero() {
            continue;
        }
        gcd = Some(match gcd {
            None => f.clone(),
            Some(g) => g.gcd(f),
        });
    }
    match gcd {
        None => RankProfileReport {
            // All sub-Pfaffians vanish identically: every member degenerate.
            all_rank_four: false,
            common_divisor_degree: usize::MAX,
            rational_degenerate_points: Vec::new(),
        },
        Some(g) => {
            let d = g.degree();
            let pts = if d > 0 {
                g.p1_roots_with_multiplicity().into_iter().map(|(p, _)| p).collect()
            } else {
                Vec::new()
            };
            RankProfileReport {
                all_rank_four: d == 0,
                common_divisor_degree: d,
                rational_degenerate_points: pts,
            }
        }
    }
}

/// The member-kernel curve: five coordinate binary quadratics `v(λ, μ)`
/// with `(λA + μB) · v(λ, μ) = 0` identically.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCurve<F: Field> {
    /// Coordinates of the kernel vector as binary forms of degree two.
    pub coords: [BinaryForm<F>; 5],
}

impl<F: Field> KernelCurve<F> {
    /// Kernel vector of the member at a projective point.
    pub fn eval(&self, pt: &P1Point<F>) -> Vec<F> {
        self.coords.iter().map(|c| c.eval_p1(pt)).collect()
    }
}

/// Builds the kernel curve from the signed sub-Pfaffian vector
/// `v_i = (−1)^i Pf_î` and certifies the annihilation identity symbolically.
pub fn kernel_conic<F: Field>(pencil: &SkewPencil<F>) -> Result<KernelCurve<F>, PencilError> {
    let fd = pencil.field().clone();
    let pf = pencil.pfaffian_forms();
    let minus_one = F::from_descriptor(&fd, -1).unwrap();
    let coords: [BinaryForm<F>; 5] = std::array::from_fn(|i| {
        if i % 2 == 0 {
            pf[i].clone()
        } else {
            pf[i].scale(&minus_one)
        }
    });
    // Symbolic certificate: each component of (λA + μB)·v is a binary cubic
    // that must vanish identically.
    for i in 0..5 {
        let mut acc = BinaryForm::zero(&fd, 3);
        for j in 0..5 {
            let entry = BinaryForm::new(
                &fd,
                1,
                vec![pencil.a.at(i, j).clone(), pencil.b.at(i, j).clone()],
            );
            acc = acc.add(&entry.mul(&coords[j]));
        }
        if !acc.is_zero() {
            return Err(PencilError::NotSkew(format!(
                "kernel identity fails in component {i}"
            )));
        }
    }
    Ok(KernelCurve { coords })
}

/// How the common isotropic 3-space was certified.
#[derive(Debug, Clone, PartialEq)]
pub enum UniquenessCertificate {
    /// Every 3-dimensional subspace over the ground field was enumerated and
    /// exactly one was doubly isotropic.
    Exhaustive {
        /// Number of subspaces enumerated.
        subspaces_checked: usize,
    },
    /// The space was constructed as the span of member kernels and verified
    /// isotropic; uniqueness not certified by enumeration.
    SpanOfKernels,
}

/// A common isotropic 3-space with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonIsotropic<F: Field> {
    /// 5×3 matrix whose columns span the subspace.
    pub basis: Matrix<F>,
    /// How it was certified.
    pub certificate: UniquenessCertificate,
}

/// Whether a subspace (columns of `basis`) is isotropic for a Gram matrix.
pub fn is_isotropic<F: Field>(gram: &Matrix<F>, basis: &Matrix<F>) -> bool {
    let restricted = basis
        .transpose()
        .mul(gram)
        .and_then(|m| m.mul(basis))
        .expect("compatible shapes");
    (0..restricted.rows())
        .all(|i| (0..restricted.cols()).all(|j| restricted.at(i, j).is_zero()))
}

/// Constructs the common isotropic 3-space as the span of member kernels and
/// verifies double isotropy.
pub fn common_isotropic<F: Field>(
    pencil: &SkewPencil<F>,
) -> Result<CommonIsotropic<F>, PencilError> {
    let fd = pencil.field().clone();
    let curve = kernel_conic(pencil)?;
    // Sample points of the projective line until the kernel span stabilizes.
    let mut vectors: Vec<Vec<F>> = Vec::new();
    let mut points: Vec<P1Point<F>> = vec![None];
    for t in -3i64..=3 {
        points.push(Some(F::from_descriptor(&fd, t).unwrap()));
    }
    for pt in &points {
        let v = curve.eval(pt);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        vectors.push(v);
    }
    let span = Matrix::from_row_vectors(&fd, 5, &vectors)?;
    let rref = span.rref();
    if rref.rank != 3 {
        return Err(PencilError::KernelSpan(rref.rank));
    }
    let mut basis = Matrix::zeros(5, 3, &fd);
    for (col, row) in (0..3).enumerate() {
        for i in 0..5 {
            *basis.at_mut(i, col) = rref.reduced.at(row, i).clone();
        }
    }
    for gram in [&pencil.a, &pencil.b] {
        if !is_isotropic(gram, &basis) {
            return Err(PencilError::KernelSpan(rref.rank));
        }
    }
    Ok(CommonIsotropic { basis, certificate: UniquenessCertificate::SpanOfKernels })
}

/// Result of the exhaustive isotropic-subspace census over a small prime
/// field.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicCensus<F: Field> {
    /// Total number of 3-dimensional subspaces enumerated.
    pub subspaces_checked: usize,
    /// Bases of the doubly isotropic ones found.
    pub isotropic: Vec<Matrix<F>>,
}

/// Enumerates **all** 3-dimensional subspaces of `F_p^5` (via reduced
/// row-echelon representatives) and reports every one isotropic for both
/// members. Only feasible for small `p`; guarded at `p ≤ 7`.
pub fn isotropic_census<F: Field>(pencil: &SkewPencil<F>) -> IsotropicCensus<F> {
    let fd = pencil.field().clone();
    let p = fd.characteristic().expect("census needs a finite prime field");
    assert!(
        matches!(fd, FieldDescriptor::Prime { .. }) && p <= 7,
        "exhaustive census limited to prime fields with p ≤ 7"
    );
    let p = p as i64;
    let mut checked = 0usize;
    let mut found = Vec::new();
    for pivots in subsets_lex(5, 3) {
        // Free positions: (row r, column c) with c > pivots[r], c not a pivot.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &jr) in pivots.iter().enumerate() {
            for c in jr + 1..5 {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let k = free.len();
        let total = (p as u64).pow(k as u32);
        for code in 0..total {
            // Decode the odometer into free entries.
            let mut rows = Matrix::zeros(3, 5, &fd);
            for (r, &jr) in pivots.iter().enumerate() {
                *rows.at_mut(r, jr) = F::from_descriptor(&fd, 1).unwrap();
            }
            let mut rem = code;
            for &(r, c) in &free {
                let digit = (rem % p as u64) as i64;
                rem /= p as u64;
                *rows.at_mut(r, c) = F::from_descriptor(&fd, digit).unwrap();
            }
            checked += 1;
            let basis = rows.transpose();
            if is_isotropic(&pencil.a, &basis) && is_isotropic(&pencil.b, &basis) {
                found.push(basis);
            }
        }
    }
    IsotropicCensus { subspaces_checked: checked, isotropic: found }
}

/// The standard model: the split `V₅ = U₂ ⊕ Sym²U₂^∨`, the pencil, and the
/// derived subspaces of `∧²V₅`.
#[derive(Debug, Clone)]
pub struct StandardModel<F: Field> {
    /// Field of definition.
    pub fd: FieldDescriptor,
    /// Basis labels of `V₅`: `(e1, e2, f0, f1, f2)` with `f_i` the monomials
    /// `X², XY, Y²` on `U₂`.
    pub labels: [&'static str; 5],
    /// The pencil `(A, B)`.
    pub pencil: SkewPencil<F>,
    /// 5×2 basis of `U₂` (columns).
    pub u2: Matrix<F>,
    /// 5×3 basis of `U₃ = Sym²U₂^∨` (columns).
    pub u3: Matrix<F>,
    /// 10×8 basis of `V₈ ⊂ ∧²V₅` (columns, lex wedge coordinates).
    pub v8: Matrix<F>,
    /// 10×1 basis of `U₁ = ∧²U₂`.
    pub u1: Matrix<F>,
    /// 10×4 basis of the 4-dimensional graded piece of `V₈` inside
    /// `U₂ ⊗ U₃`.
    pub u4: Matrix<F>,
    /// 10×2 basis of the invariant complement of `V₈` in `∧²V₅`
    /// (isomorphic to `U₂`).
    pub complement: Matrix<F>,
    /// 2×10 contraction whose kernel is `V₈`.
    pub contraction: Matrix<F>,
}

/// Builds the standard model over a field descriptor.
pub fn standard_model<F: Field>(fd: &FieldDescriptor) -> StandardModel<F> {
    let f = |n: i64| F::from_descriptor(fd, n).unwrap();
    // Gram matrices: A(e1,f0)=2, A(e2,f1)=1; B(e1,f1)=1, B(e2,f2)=2.
    let mut a = Matrix::zeros(5, 5, fd);
    let mut b = Matrix::zeros(5, 5, fd);
    let set_skew = |m: &mut Matrix<F>, i: usize, j: usize, v: i64| {
        *m.at_mut(i, j) = f(v);
        *m.at_mut(j, i) = f(-v);
    };
    set_skew(&mut a, 0, 2, 2);
    set_skew(&mut a, 1, 3, 1);
    set_skew(&mut b, 0, 3, 1);
    set_skew(&mut b, 1, 4, 2);
    let pencil = SkewPencil::new(a, b).expect("standard pencil is valid");

    let mut u2 = Matrix::zeros(5, 2, fd);
    *u2.at_mut(0, 0) = f(1);
    *u2.at_mut(1, 1) = f(1);
    let mut u3 = Matrix::zeros(5, 3, fd);
    for i in 0..3 {
        *u3.at_mut(2 + i, i) = f(1);
    }

    // Wedge coordinate helper.
    let w = |i: usize, j: usize| wedge2_basis_index(5, i, j);
    let col = |entries: &[(usize, usize, i64)]| -> Vec<F> {
        let mut v = vec![f(0); 10];
        for &(i, j, c) in entries {
            v[w(i, j)] = f(c);
        }
        v
    };
    // V₈ basis: e1∧e2 | f0∧f1, f0∧f2, f1∧f2 | e2∧f0, e1∧f2,
    //           e1∧f0 − 2·e2∧f1, 2·e1∧f1 − e2∧f2.
    let v8_cols = vec![
        col(&[(0, 1, 1)]),
        col(&[(2, 3, 1)]),
        col(&[(2, 4, 1)]),
        col(&[(3, 4, 1)]),
        col(&[(1, 2, 1)]),
        col(&[(0, 4, 1)]),
        col(&[(0, 2, 1), (1, 3, -2)]),
        col(&[(0, 3, 2), (1, 4, -1)]),
    ];
    let v8 = columns_to_matrix(fd, 10, &v8_cols);
    let u1 = columns_to_matrix(fd, 10, &[col(&[(0, 1, 1)])]);
    let u4 = columns_to_matrix(
        fd,
        10,
        &[
            col(&[(1, 2, 1)]),
            col(&[(0, 4, 1)]),
            col(&[(0, 2, 1), (1, 3, -2)]),
            col(&[(0, 3, 2), (1, 4, -1)]),
        ],
    );
    // Invariant complement of V₈: span(e1∧f1 + e2∧f2, e1∧f0 + e2∧f1).
    let complement = columns_to_matrix(
        fd,
        10,
        &[
            col(&[(0, 3, 1), (1, 4, 1)]),
            col(&[(0, 2, 1), (1, 3, 1)]),
        ],
    );
    // Contraction ∧²V₅ → U₂^∨ (coordinates X, Y) with kernel V₈:
    // e1∧f0 ↦ X, e1∧f1 ↦ Y/2, e2∧f1 ↦ X/2, e2∧f2 ↦ Y.
    let mut contraction = Matrix::zeros(2, 10, fd);
    let half = f(2).inv().expect("characteristic is not 2");
    *contraction.at_mut(0, w(0, 2)) = f(1);
    *contraction.at_mut(1, w(0, 3)) = half.clone();
    *contraction.at_mut(0, w(1, 3)) = half;
    *contraction.at_mut(1, w(1, 4)) = f(1);

    StandardModel {
        fd: fd.clone(),
        labels: ["e1", "e2", "f0", "f1", "f2"],
        pencil,
        u2,
        u3,
        v8,
        u1,
        u4,
        complement,
        contraction,
    }
}

/// Packs column vectors into a matrix.
pub fn columns_to_matrix<F: Field>(
    fd: &FieldDescriptor,
    rows: usize,
    cols: &[Vec<F>],
) -> Matrix<F> {
    let mut m = Matrix::zeros(rows, cols.len(), fd);
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), rows, "column length mismatch");
        for (i, v) in c.iter().enumerate() {
            *m.at_mut(i, j) = v.clone();
        }
    }
    m
}

/// Report of the squaring map `ψ : Sym²L → V₅`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiReport<F: Field> {
    /// 5×3 matrix of ψ on the basis `(A·A, A·B, B·B)`.
    pub matrix: Matrix<F>,
    /// Its rank.
    pub rank: usize,
    /// Whether the image equals `U₃`.
    pub image_equals_u3: bool,
}

/// Computes ψ: a pair of 2-forms wedges to a 4-form, identified with a
/// vector through contraction with the standard volume form
/// (`v_i = (−1)^i · (coefficient of the 4-subset missing i)`).
pub fn psi_map<F: Field>(model: &StandardModel<F>) -> PsiReport<F> {
    let fd = &model.fd;
    let ca = form_coords(model.pencil.a());
    let cb = form_coords(model.pencil.b());
    let pairs = [(&ca, &ca), (&ca, &cb), (&cb, &cb)];
    let mut cols = Vec::new();
    for (s, t) in pairs {
        let top = wedge_elements(5, 2, s, 2, t).expect("wedge of 2-forms");
        // subsets_lex(5,4)[k] omits index 4−k.
        let mut v = vec![F::from_descriptor(fd, 0).unwrap(); 5];
        for (k, c) in top.iter().enumerate() {
            let i = 4 - k;
            let signed = if i % 2 == 0 { c.clone() } else { -c.clone() };
            v[i] = signed;
        }
        cols.push(v);
    }
    let matrix = columns_to_matrix(fd, 5, &cols);
    let rank = matrix.rank();
    let stacked = matrix.hstack(&model.u3).expect("same height");
    let image_equals_u3 = rank == 3 && stacked.rank() == 3;
    PsiReport { matrix, rank, image_equals_u3 }
}

/// Report of the action map `sl(V₅) → Hom(L, ∧²V₅^∨ / L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlActionReport {
    /// Rank of the 16×24 action matrix.
    pub rank: usize,
    /// Dimension of the domain `sl(V₅)`.
    pub domain_dim: usize,
    /// Kernel dimension (the infinitesimal symmetries of the pencil).
    pub kernel_dim: usize,
}

/// Computes the action map: `ξ ↦ (S ↦ ξ·S mod L)` where
/// `(ξ·S)(u,v) = −S(ξu, v) − S(u, ξv)`.
pub fn sl_action<F: Field>(model: &StandardModel<F>) -> SlActionReport {
    let fd = &model.fd;
    let f = |n: i64| F::from_descriptor(fd, n).unwrap();
    // Quotient projection ∧²V₅^∨ → ∧²V₅^∨/L via the rref of the L rows.
    let ca = form_coords(model.pencil.a());
    let cb = form_coords(model.pencil.b());
    let l_rows = Matrix::from_rows(fd.clone(), vec![ca, cb]).unwrap();
    let l_rref = l_rows.rref();
    assert_eq!(l_rref.rank, 2);
    let pivots = l_rref.pivots.clone();
    let non_pivots: Vec<usize> = (0..10).filter(|c| !pivots.contains(c)).collect();
    let project = |w: &[F]| -> Vec<F> {
        // Subtract the pivot-clearing combination of the reduced L rows.
        let mut v = w.to_vec();
        for (r, &pc) in pivots.iter().enumerate() {
            let coef = v[pc].clone();
            if coef.is_zero() {
                continue;
            }
            for c in 0..10 {
                v[c] = v[c].clone() - coef.clone() * l_rref.reduced.at(r, c).clone();
            }
        }
        non_pivots.iter().map(|&c| v[c].clone()).collect()
    };
    // Basis of sl₅: E_ij (i ≠ j) and H_k = E_kk − E_{k+1,k+1}.
    let mut basis: Vec<Matrix<F>> = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                let mut m = Matrix::zeros(5, 5, fd);
                *m.at_mut(i, j) = f(1);
                basis.push(m);
            }
        }
    }
    for k in 0..4 {
        let mut m = Matrix::zeros(5, 5, fd);
        *m.at_mut(k, k) = f(1);
        *m.at_mut(k + 1, k + 1) = f(-1);
        basis.push(m);
    }
    let act = |xi: &Matrix<F>, gram: &Matrix<F>| -> Matrix<F> {
        // (ξ·S) Gram = −(ξᵀ G + G ξ).
        let g1 = xi.transpose().mul(gram).unwrap();
        let g2 = gram.mul(xi).unwrap();
        g1.add(&g2).unwrap().scale(&f(-1))
    };
    let mut cols: Vec<Vec<F>> = Vec::new();
    for xi in &basis {
        let mut col = project(&form_coords(&act(xi, model.pencil.a())));
        col.extend(project(&form_coords(&act(xi, model.pencil.b()))));
        cols.push(col);
    }
    let m = columns_to_matrix(fd, 16, &cols);
    let rank = m.rank();
    SlActionReport { rank, domain_dim: basis.len(), kernel_dim: basis.len() - rank }
}

/// The block automorphism of `V₅` induced by `g ∈ GL(U₂)`: `g` on the
/// `e`-block and the symmetric square of the contragredient on the
/// `f`-block (monomial basis `X², XY, Y²`).
pub fn phi_from_gl2<F: Field>(
    fd: &FieldDescriptor,
    g: &Matrix<F>,
) -> Result<Matrix<F>, PencilError> {
    assert_eq!((g.rows(), g.cols()), (2, 2), "need a 2x2 matrix");
    let h = g
        .inverse()
        .map_err(|_| PencilError::DependentMembers)?
        .transpose();
    let sym2h = induced_map(&h, &FunctorExpr::Sym(2, Box::new(FunctorExpr::Atom)))
        .expect("symmetric square");
    let mut phi = Matrix::zeros(5, 5, fd);
    for i in 0..2 {
        for j in 0..2 {
            *phi.at_mut(i, j) = g.at(i, j).clone();
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            *phi.at_mut(2 + i, 2 + j) = sym2h.at(i, j).clone();
        }
    }
    Ok(phi)
}

/// Checks that the column span of `sub` is preserved by `map` (i.e.
/// `map · sub` has the same column span as `sub`).
pub fn preserves_span<F: Field>(map: &Matrix<F>, sub: &Matrix<F>) -> bool {
    let image = map.mul(sub).expect("compatible shapes");
    let dim = sub.rank();
    image.rank() == dim && sub.hstack(&image).expect("same height").rank() == dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;
    use num_rational::BigRational;
    use rand::SeedableRng;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    fn model97() -> StandardModel<Fp> {
        standard_model(&fd97())
    }

    #[test]
    fn v8_is_kernel_of_contraction() {
        let m = model97();
        let prod = m.contraction.mul(&m.v8).unwrap();
        assert!((0..prod.rows()).all(|i| (0..prod.cols()).all(|j| prod.at(i, j).is_zero())));
        assert_eq!(m.v8.rank(), 8);
        assert_eq!(m.contraction.rank(), 2);
    }

    #[test]
    fn wedge_square_splits_into_v8_and_complement() {
        let m = model97();
        let full = m.v8.hstack(&m.complement).unwrap();
        assert_eq!(full.rank(), 10);
    }

    #[test]
    fn u1_and_u4_sit_inside_v8() {
        let m = model97();
        for sub in [&m.u1, &m.u4] {
            let stacked = m.v8.hstack(sub).unwrap();
            assert_eq!(stacked.rank(), 8);
        }
    }

    #[test]
    fn rank_profile_holds_for_standard_pencil() {
        for fd in [fd97(), FieldDescriptor::prime(5).unwrap()] {
            let m: StandardModel<Fp> = standard_model(&fd);
            let report = rank_profile(&m.pencil);
            assert!(report.all_rank_four);
            assert_eq!(report.common_divisor_degree, 0);
        }
        let mq: StandardModel<BigRational> = standard_model(&FieldDescriptor::Rationals);
        assert!(rank_profile(&mq.pencil).all_rank_four);
    }

    #[test]
    fn rank_profile_detects_a_rank_two_member() {
        // Replace B by a rank-2 form: the member at [0:1] degenerates.
        let fd = fd97();
        let m = model97();
        let mut b2 = Matrix::zeros(5, 5, &fd);
        *b2.at_mut(0, 1) = Fp::new(1, 97);
        *b2.at_mut(1, 0) = Fp::new(-1, 97);
        let pencil = SkewPencil::new(m.pencil.a().clone(), b2).unwrap();
        let report = rank_profile(&pencil);
        assert!(!report.all_rank_four);
        assert!(report.common_divisor_degree >= 1);
        assert!(report.rational_degenerate_points.contains(&None));
    }

    #[test]
    fn member_ranks_match_profile_pointwise() {
        let m = model97();
        // All 98 members over F_97.
        let one = Fp::new(1, 97);
        let zero = Fp::new(0, 97);
        assert_eq!(m.pencil.member(&zero, &one).rank(), 4);
        for t in 0..97 {
            let mu = Fp::new(t, 97);
            assert_eq!(m.pencil.member(&one, &mu).rank(), 4, "member at t={t}");
        }
    }

    #[test]
    fn kernel_conic_matches_closed_form() {
        // Kernel of λA+μB is (0, 0, μ², −2λμ, λ²) up to a scalar.
        let m = model97();
        let curve = kernel_conic(&m.pencil).unwrap();
        assert!(curve.coords[0].is_zero());
        assert!(curve.coords[1].is_zero());
        let expect: [Vec<i64>; 3] = [vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]];
        // Find the overall scalar from the f2 coordinate at [1:0].
        let scale = curve.coords[4].coeffs()[0];
        assert!(!scale.is_zero());
        for (k, exp) in expect.iter().enumerate() {
            let form = &curve.coords[2 + k];
            for (i, &e) in exp.iter().enumerate() {
                assert_eq!(form.coeffs()[i], Fp::new(e, 97) * scale, "coord {k} coeff {i}");
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate_members_at_points() {
        let m: StandardModel<BigRational> = standard_model(&FieldDescriptor::Rationals);
        let curve = kernel_conic(&m.pencil).unwrap();
        for t in [-2i64, 0, 1, 5] {
            let pt = Some(BigRational::from_integer(t.into()));
            let v = curve.eval(&pt);
            let lam = BigRational::from_integer(1.into());
            let mu = BigRational::from_integer(t.into());
            let member = m.pencil.member(&lam, &mu);
            let img = member.mul_vec(&v).unwrap();
            assert!(img.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn common_isotropic_is_u3() {
        for fd in [fd97(), FieldDescriptor::prime(5).unwrap()] {
            let m: StandardModel<Fp> = standard_model(&fd);
            let ci = common_isotropic(&m.pencil).unwrap();
            let stacked = ci.basis.hstack(&m.u3).unwrap();
            assert_eq!(stacked.rank(), 3, "common isotropic equals U3 over {fd}");
        }
        let mq: StandardModel<BigRational> = standard_model(&FieldDescriptor::Rationals);
        let ci = common_isotropic(&mq.pencil).unwrap();
        assert_eq!(ci.basis.hstack(&mq.u3).unwrap().rank(), 3);
    }

    #[test]
    fn census_over_f5_finds_exactly_u3() {
        let fd = FieldDescriptor::prime(5).unwrap();
        let m: StandardModel<Fp> = standard_model(&fd);
        let census = isotropic_census(&m.pencil);
        assert_eq!(census.subspaces_checked, 20306);
        assert_eq!(census.isotropic.len(), 1);
        let only = &census.isotropic[0];
        assert_eq!(only.hstack(&m.u3).unwrap().rank(), 3);
    }

    #[test]
    fn psi_has_rank_three_with_image_u3() {
        let m = model97();
        let report = psi_map(&m);
        assert_eq!(report.rank, 3);
        assert!(report.image_equals_u3);
        let mq: StandardModel<BigRational> = standard_model(&FieldDescriptor::Rationals);
        let rq = psi_map(&mq);
        assert_eq!(rq.rank, 3);
        assert!(rq.image_equals_u3);
    }

    #[test]
    fn psi_squares_point_to_member_kernels() {
        // ψ(S·S) spans the kernel of S for each member: A·A ↦ f2-line,
        // B·B ↦ f0-line.
        let m = model97();
        let report = psi_map(&m);
        let col = |j: usize| -> Vec<Fp> { (0..5).map(|i| *report.matrix.at(i, j)).collect() };
        let aa = col(0);
        assert!(aa[0].is_zero() && aa[1].is_zero() && aa[2].is_zero() && aa[3].is_zero());
        assert!(!aa[4].is_zero());
        let bb = col(2);
        assert!(bb[0].is_zero() && bb[1].is_zero() && bb[3].is_zero() && bb[4].is_zero());
        assert!(!bb[2].is_zero());
    }

    #[test]
    fn sl_action_has_rank_sixteen() {
        let m = model97();
        let report = sl_action(&m);
        assert_eq!(report.domain_dim, 24);
        assert_eq!(report.rank, 16);
        assert_eq!(report.kernel_dim, 8);
        let mq: StandardModel<BigRational> = standard_model(&FieldDescriptor::Rationals);
        let rq = sl_action(&mq);
        assert_eq!(rq.rank, 16);
        assert_eq!(rq.kernel_dim, 8);
    }

    #[test]
    fn gl2_block_maps_preserve_the_structure() {
        let fd = fd97();
        let m = model97();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let donor = Fp::new(0, 97);
        let mut done = 0;
        while done < 10 {
            let data: Vec<Fp> = (0..4)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let g = Matrix::new(2, 2, fd.clone(), data).unwrap();
            if g.rank() != 2 {
                continue;
            }
            done += 1;
            let phi = phi_from_gl2(&fd, &g).unwrap();
            // Pullback forms stay in the pencil: φᵀ S φ ∈ span{A, B}.
            for gram in [m.pencil.a(), m.pencil.b()] {
                let pull = phi.transpose().mul(gram).unwrap().mul(&phi).unwrap();
                let rows = Matrix::from_rows(
                    fd.clone(),
                    vec![
                        form_coords(m.pencil.a()),
                        form_coords(m.pencil.b()),
                        form_coords(&pull),
                    ],
                )
                .unwrap();
                assert_eq!(rows.rank(), 2, "pullback leaves the pencil span");
            }
            // ∧²φ preserves V₈ and the invariant complement.
            let wphi = induced_map(&phi, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)))
                .unwrap();
            assert!(preserves_span(&wphi, &m.v8));
            assert!(preserves_span(&wphi, &m.complement));
            assert!(preserves_span(&wphi, &m.u1));
            assert!(preserves_span(&wphi, &m.u4));
            // φ preserves U₂ and U₃.
            assert!(preserves_span(&phi, &m.u2));
            assert!(preserves_span(&phi, &m.u3));
        }
    }

    #[test]
    fn dependent_members_are_rejected() {
        let m = model97();
        let doubled = m.pencil.a().scale(&Fp::new(2, 97));
        assert_eq!(
            SkewPencil::new(m.pencil.a().clone(), doubled),
            Err(PencilError::DependentMembers)
        );
    }

    #[test]
    fn non_skew_input_rejected() {
        let fd = fd97();
        let id = Matrix::<Fp>::identity(5, &fd);
        let z = Matrix::zeros(5, 5, &fd);
        assert!(matches!(SkewPencil::new(id, z), Err(PencilError::NotSkew(_))));
    }
}
