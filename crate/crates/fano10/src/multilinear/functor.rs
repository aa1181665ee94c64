//! Induced maps on functorial constructions (duals, tensor, exterior and
//! symmetric powers) and coordinate-level exterior algebra.

use crate::scalars::{Field, LinearError, Matrix};
use num_traits::Zero;
use std::collections::HashMap;

/// Errors from multilinear constructions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MultilinearError {
    /// Dual of a non-square or singular map is undefined.
    #[error("dual requires an invertible square map: {0}")]
    DualUndefined(String),
    /// Coordinate vector length does not match the expected basis size.
    #[error("coordinate length mismatch: expected {expected}, got {got}")]
    CoordinateLength { expected: usize, got: usize },
    /// Underlying linear-algebra failure.
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// A finite-dimensional vector space with a named ordered basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BasedSpace {
    /// Display name of the space.
    pub name: String,
    /// Basis labels, in order; the length is the dimension.
    pub labels: Vec<String>,
}

impl BasedSpace {
    /// Builds a space from a name and basis labels.
    pub fn new(name: impl Into<String>, labels: &[&str]) -> Self {
        BasedSpace {
            name: name.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Formal functor applied to a single space.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctorExpr {
    /// The space itself.
    Atom,
    /// Linear dual (contravariant on spaces, made covariant on invertible
    /// maps via the contragredient).
    Dual(Box<FunctorExpr>),
    /// Tensor product of two constructions.
    Tensor(Box<FunctorExpr>, Box<FunctorExpr>),
    /// Exterior power.
    Wedge(usize, Box<FunctorExpr>),
    /// Symmetric power.
    Sym(usize, Box<FunctorExpr>),
}

impl FunctorExpr {
    /// Dimension of the construction applied to a space of dimension `n`.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            FunctorExpr::Atom => n,
            FunctorExpr::Dual(e) => e.dim(n),
            FunctorExpr::Tensor(a, b) => a.dim(n) * b.dim(n),
            FunctorExpr::Wedge(k, e) => binomial(e.dim(n), *k),
            FunctorExpr::Sym(k, e) => {
                let d = e.dim(n);
                if d == 0 && *k > 0 {
                    0
                } else {
                    binomial(d + k - 1, *k)
                }
            }
        }
    }

    /// Labels of the induced basis, for diagnostics.
    pub fn basis_labels(&self, space: &BasedSpace) -> Vec<String> {
        match self {
            FunctorExpr::Atom => space.labels.clone(),
            FunctorExpr::Dual(e) => e
                .basis_labels(space)
                .into_iter()
                .map(|l| format!("{l}*"))
                .collect(),
            FunctorExpr::Tensor(a, b) => {
                let la = a.basis_labels(space);
                let lb = b.basis_labels(space);
                la.iter()
                    .flat_map(|x| lb.iter().map(move |y| format!("{x}⊗{y}")))
                    .collect()
            }
            FunctorExpr::Wedge(k, e) => {
                let inner = e.basis_labels(space);
                subsets_lex(inner.len(), *k)
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&i| inner[i].clone())
                            .collect::<Vec<_>>()
                            .join("∧")
                    })
                    .collect()
            }
            FunctorExpr::Sym(k, e) => {
                let inner = e.basis_labels(space);
                multisets_lex(inner.len(), *k)
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&i| inner[i].clone())
                            .collect::<Vec<_>>()
                            .join("·")
                    })
                    .collect()
            }
        }
    }
}

/// Binomial coefficient as usize (small arguments only).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial fits usize")
}

/// Sorted k-subsets of {0..n-1} in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sorted k-multisets of {0..n-1} in lexicographic order.
pub fn multisets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != n - 1 {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[i];
        }
    }
}

/// Index of the pair `(i, j)` with `i < j` in the lex basis of the second
/// exterior power of an `n`-dimensional space.
pub fn wedge2_basis_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n, "need i < j < n");
    // Pairs starting with 0..i-1 come first.
    (0..i).map(|a| n - 1 - a).sum::<usize>() + (j - i - 1)
}

fn index_table(tuples: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    tuples
        .iter()
        .enumerate()
        .map(|(pos, t)| (t.clone(), pos))
        .collect()
}

/// Sign of merging two disjoint sorted tuples by concatenation-then-sort;
/// `None` when they share an index (the wedge vanishes).
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            inversions += a.len() - i;
            merged.push(b[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((merged, inversions % 2 == 1))
}

/// Wedge product in coordinates: given the components of a degree-`da` and a
/// degree-`db` exterior element over an `n`-dimensional space (lex bases),
/// returns the components of their wedge in degree `da + db`.
pub fn wedge_elements<F: Field>(
    n: usize,
    da: usize,
    a: &[F],
    db: usize,
    b: &[F],
) -> Result<Vec<F>, MultilinearError> {
    let basis_a = subsets_lex(n, da);
    let basis_b = subsets_lex(n, db);
    if a.len() != basis_a.len() {
        return Err(MultilinearError::CoordinateLength { expected: basis_a.len(), got: a.len() });
    }
    if b.len() != basis_b.len() {
        return Err(MultilinearError::CoordinateLength { expected: basis_b.len(), got: b.len() });
    }
    let basis_out = subsets_lex(n, da + db);
    let table = index_table(&basis_out);
    let fd = a
        .iter()
        .chain(b.iter())
        .find_map(|x| x.descriptor())
        .expect("at least one bound coordinate");
    let zero = F::from_descriptor(&fd, 0).unwrap();
    let mut out = vec![zero; basis_out.len()];
    for (ia, ta) in basis_a.iter().enumerate() {
        if a[ia].is_zero() {
            continue;
        }
        for (ib, tb) in basis_b.iter().enumerate() {
            if b[ib].is_zero() {
                continue;
            }
            if let Some((merged, odd)) = merge_sign(ta, tb) {
                let pos = table[&merged];
                let term = a[ia].clone() * b[ib].clone();
                let term = if odd { -term } else { term };
                out[pos] = out[pos].clone() + term;
            }
        }
    }
    Ok(out)
}

/// Coordinates of `v1 ∧ v2` in the lex basis of the second exterior power.
pub fn plucker_point<F: Field>(v1: &[F], v2: &[F]) -> Result<Vec<F>, MultilinearError> {
    if v1.len() != v2.len() {
        return Err(MultilinearError::CoordinateLength { expected: v1.len(), got: v2.len() });
    }
    wedge_elements(v1.len(), 1, v1, 1, v2)
}

/// Whether a 2-form `ω` on an `n`-dimensional space is decomposable,
/// i.e. `ω ∧ ω = 0`.
pub fn is_decomposable<F: Field>(n: usize, omega: &[F]) -> Result<bool, MultilinearError> {
    let sq = wedge_elements(n, 2, omega, 2, omega)?;
    Ok(sq.iter().all(Zero::is_zero))
}

/// The matrix of the map `v ↦ v ∧ x` from the base space to the next
/// exterior degree, for a fixed element `x` of exterior degree `dx`.
pub fn wedge_with_matrix<F: Field>(
    n: usize,
    dx: usize,
    x: &[F],
    field: &crate::scalars::FieldDescriptor,
) -> Result<Matrix<F>, MultilinearError> {
    let rows = binomial(n, dx + 1);
    let mut cols = Vec::with_capacity(n);
    let zero = F::from_descriptor(field, 0).unwrap();
    let one = F::from_descriptor(field, 1).unwrap();
    for i in 0..n {
        let mut e = vec![zero.clone(); n];
        e[i] = one.clone();
        cols.push(wedge_elements(n, 1, &e, dx, x)?);
    }
    let mut m = Matrix::zeros(rows, n, field);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            *m.at_mut(i, j) = v.clone();
        }
    }
    Ok(m)
}

/// Matrix of the `k`-th exterior power of a linear map (lex bases on both
/// sides; rectangular maps allowed). Entries are the `k×k` minors.
fn wedge_power_matrix<F: Field>(g: &Matrix<F>, k: usize) -> Matrix<F> {
    let row_tuples = subsets_lex(g.rows(), k);
    let col_tuples = subsets_lex(g.cols(), k);
    let row_index = index_table(&row_tuples);
    let mut out = Matrix::zeros(row_tuples.len(), col_tuples.len(), g.field());
    for (jc, t) in col_tuples.iter().enumerate() {
        // Iterated wedge of the selected columns.
        let mut acc: HashMap<Vec<usize>, F> = HashMap::new();
        acc.insert(vec![], out.scalar(1));
        for &c in t {
            let mut next: HashMap<Vec<usize>, F> = HashMap::new();
            for (tuple, coef) in &acc {
                for r in 0..g.rows() {
                    let grc = g.at(r, c);
                    if grc.is_zero() {
                        continue;
                    }
                    if let Some((merged, odd)) = merge_sign(tuple, &[r]) {
                        let term = coef.clone() * grc.clone();
                        let term = if odd { -term } else { term };
                        let slot = next.entry(merged).or_insert_with(|| out.scalar(0));
                        *slot = slot.clone() + term;
                    }
                }
            }
            acc = next;
        }
        for (tuple, coef) in acc {
            *out.at_mut(row_index[&tuple], jc) = coef;
        }
    }
    out
}

/// Matrix of the `k`-th symmetric power of a linear map (lex multiset bases).
fn sym_power_matrix<F: Field>(g: &Matrix<F>, k: usize) -> Matrix<F> {
    let row_tuples = multisets_lex(g.rows(), k);
    let col_tuples = multisets_lex(g.cols(), k);
    let row_index = index_table(&row_tuples);
    let mut out = Matrix::zeros(row_tuples.len(), col_tuples.len(), g.field());
    for (jc, t) in col_tuples.iter().enumerate() {
        let mut acc: HashMap<Vec<usize>, F> = HashMap::new();
        acc.insert(vec![], out.scalar(1));
        for &c in t {
            let mut next: HashMap<Vec<usize>, F> = HashMap::new();
            for (tuple, coef) in &acc {
                for r in 0..g.rows() {
                    let grc = g.at(r, c);
                    if grc.is_zero() {
                        continue;
                    }
                    let mut merged = tuple.clone();
                    merged.push(r);
                    merged.sort_unstable();
                    let term = coef.clone() * grc.clone();
                    let slot = next.entry(merged).or_insert_with(|| out.scalar(0));
                    *slot = slot.clone() + term;
                }
            }
            acc = next;
        }
        for (tuple, coef) in acc {
            *out.at_mut(row_index[&tuple], jc) = coef;
        }
    }
    out
}

/// Kronecker product, with the left factor's indices varying slowest.
fn kronecker<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let v = a.at(ia, ja);
            if v.is_zero() {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    let w = b.at(ib, jb);
                    if w.is_zero() {
                        continue;
                    }
                    *out.at_mut(ia * b.rows() + ib, ja * b.cols() + jb) = v.clone() * w.clone();
                }
            }
        }
    }
    out
}

/// Matrix of a functorial construction applied to a linear map. `Dual` uses
/// the contragredient (inverse transpose), keeping the construction covariant
/// on invertible maps.
pub fn induced_map<F: Field>(
    f: &Matrix<F>,
    expr: &FunctorExpr,
) -> Result<Matrix<F>, MultilinearError> {
    match expr {
        FunctorExpr::Atom => Ok(f.clone()),
        FunctorExpr::Dual(inner) => {
            let g = induced_map(f, inner)?;
            if g.rows() != g.cols() {
                return Err(MultilinearError::DualUndefined(format!(
                    "{}x{} map",
                    g.rows(),
                    g.cols()
                )));
            }
            let inv = g
                .inverse()
                .map_err(|_| MultilinearError::DualUndefined("singular map".into()))?;
            Ok(inv.transpose())
        }
        FunctorExpr::Tensor(a, b) => {
            let ga = induced_map(f, a)?;
            let gb = induced_map(f, b)?;
            Ok(kronecker(&ga, &gb))
        }
        FunctorExpr::Wedge(k, inner) => Ok(wedge_power_matrix(&induced_map(f, inner)?, *k)),
        FunctorExpr::Sym(k, inner) => Ok(sym_power_matrix(&induced_map(f, inner)?, *k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FieldDescriptor, Fp};
    use num_traits::Zero;
    use rand::SeedableRng;

    fn fd97() -> FieldDescriptor {
        FieldDescriptor::prime(97).unwrap()
    }

    fn random_invertible(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix<Fp> {
        let fd = fd97();
        let donor = Fp::new(0, 97);
        loop {
            let data: Vec<Fp> = (0..n * n)
                .map(|_| crate::scalars::Field::random_like(&donor, rng))
                .collect();
            let m = Matrix::new(n, n, fd.clone(), data).unwrap();
            if m.rank() == n {
                return m;
            }
        }
    }

    #[test]
    fn dims_match_enumerated_bases() {
        let v5 = BasedSpace::new("V", &["a", "b", "c", "d", "e"]);
        let w2 = FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom));
        assert_eq!(w2.dim(5), 10);
        assert_eq!(w2.basis_labels(&v5).len(), 10);
        let s2d = FunctorExpr::Sym(2, Box::new(FunctorExpr::Dual(Box::new(FunctorExpr::Atom))));
        assert_eq!(s2d.dim(8), 36);
        let t = FunctorExpr::Tensor(
            Box::new(FunctorExpr::Atom),
            Box::new(FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom))),
        );
        assert_eq!(t.dim(5), 50);
    }

    #[test]
    fn wedge2_index_is_lex_position() {
        let tuples = subsets_lex(5, 2);
        for (pos, t) in tuples.iter().enumerate() {
            assert_eq!(wedge2_basis_index(5, t[0], t[1]), pos);
        }
    }

    #[test]
    fn functoriality_of_induced_maps() {
        // induced(f·g) = induced(f)·induced(g) for each constructor.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = random_invertible(4, &mut rng);
        let g = random_invertible(4, &mut rng);
        let fg = f.mul(&g).unwrap();
        let exprs = vec![
            FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Sym(2, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Dual(Box::new(FunctorExpr::Atom)),
            FunctorExpr::Sym(2, Box::new(FunctorExpr::Dual(Box::new(FunctorExpr::Atom)))),
            FunctorExpr::Tensor(
                Box::new(FunctorExpr::Dual(Box::new(FunctorExpr::Atom))),
                Box::new(FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom))),
            ),
            FunctorExpr::Wedge(3, Box::new(FunctorExpr::Atom)),
        ];
        for e in exprs {
            let lhs = induced_map(&fg, &e).unwrap();
            let rhs = induced_map(&f, &e).unwrap().mul(&induced_map(&g, &e).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "functoriality fails for {e:?}");
        }
    }

    #[test]
    fn identity_induces_identity() {
        let id = Matrix::<Fp>::identity(5, &fd97());
        for e in [
            FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Sym(3, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Dual(Box::new(FunctorExpr::Atom)),
        ] {
            let m = induced_map(&id, &e).unwrap();
            assert_eq!(m, Matrix::identity(m.rows(), &fd97()));
        }
    }

    #[test]
    fn top_wedge_is_determinant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let f = random_invertible(4, &mut rng);
        let top = induced_map(&f, &FunctorExpr::Wedge(4, Box::new(FunctorExpr::Atom))).unwrap();
        assert_eq!(top.rows(), 1);
        assert_eq!(*top.at(0, 0), f.det().unwrap());
    }

    #[test]
    fn wedge_entries_are_minors() {
        let fd = fd97();
        let f = Matrix::<Fp>::from_ints(3, 3, &fd, &[1, 2, 3, 4, 5, 6, 7, 8, 10]).unwrap();
        let w = induced_map(&f, &FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom))).unwrap();
        // Entry at (rows {0,1}, cols {0,1}) is the top-left 2x2 minor 1*5-2*4 = -3.
        assert_eq!(*w.at(0, 0), Fp::new(-3, 97));
        // Entry at (rows {0,2}, cols {1,2}): det [[2,3],[8,10]] = -4.
        let r = subsets_lex(3, 2);
        let ri = r.iter().position(|t| t == &vec![0, 2]).unwrap();
        let ci = r.iter().position(|t| t == &vec![1, 2]).unwrap();
        assert_eq!(*w.at(ri, ci), Fp::new(-4, 97));
    }

    #[test]
    fn sym_square_of_two_by_two() {
        // f = [[a,b],[c,d]] on basis (x,y); Sym^2 on basis (x², xy, y²).
        let fd = fd97();
        let (a, b, c, d) = (2i64, 3, 5, 7);
        let f = Matrix::<Fp>::from_ints(2, 2, &fd, &[a, b, c, d]).unwrap();
        let s = induced_map(&f, &FunctorExpr::Sym(2, Box::new(FunctorExpr::Atom))).unwrap();
        let expect = Matrix::<Fp>::from_ints(
            3,
            3,
            &fd,
            &[
                a * a, a * b, b * b, //
                2 * a * c, a * d + b * c, 2 * b * d, //
                c * c, c * d, d * d,
            ],
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn plucker_and_decomposability() {
        let fd = fd97();
        let v1: Vec<Fp> = [1i64, 0, 2, 0, 0].iter().map(|&n| Fp::new(n, 97)).collect();
        let v2: Vec<Fp> = [0i64, 1, 0, 3, 0].iter().map(|&n| Fp::new(n, 97)).collect();
        let om = plucker_point(&v1, &v2).unwrap();
        assert!(is_decomposable(5, &om).unwrap());
        // Sum of two generic decomposables in 5 variables is not decomposable.
        let v3: Vec<Fp> = [0i64, 0, 1, 1, 0].iter().map(|&n| Fp::new(n, 97)).collect();
        let v4: Vec<Fp> = [0i64, 0, 0, 0, 1].iter().map(|&n| Fp::new(n, 97)).collect();
        let om2 = plucker_point(&v3, &v4).unwrap();
        let sum: Vec<Fp> = om.iter().zip(&om2).map(|(x, y)| *x + *y).collect();
        assert!(!is_decomposable(5, &sum).unwrap());
        let _ = fd;
    }

    #[test]
    fn wedge_with_matrix_kernel_is_span_of_decomposable() {
        // For x = v1∧v2 the kernel of v ↦ v∧x is span(v1, v2).
        let fd = fd97();
        let v1: Vec<Fp> = [1i64, 2, 3, 4, 5].iter().map(|&n| Fp::new(n, 97)).collect();
        let v2: Vec<Fp> = [0i64, 1, 0, 0, 7].iter().map(|&n| Fp::new(n, 97)).collect();
        let x = plucker_point(&v1, &v2).unwrap();
        let m = wedge_with_matrix(5, 2, &x, &fd).unwrap();
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        // v1 and v2 are annihilated.
        assert!(m.mul_vec(&v1).unwrap().iter().all(Zero::is_zero));
        assert!(m.mul_vec(&v2).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn dual_is_contragredient() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let f = random_invertible(3, &mut rng);
        let dual = induced_map(&f, &FunctorExpr::Dual(Box::new(FunctorExpr::Atom))).unwrap();
        // Pairing preservation: dualᵀ · f = I.
        assert_eq!(
            dual.transpose().mul(&f).unwrap(),
            Matrix::identity(3, &fd97())
        );
    }
}
