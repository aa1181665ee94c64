//! Dense exact matrices with deterministic reduction.

use super::{Field, FieldDescriptor, Poly, ScalarError};

/// Errors from matrix construction and linear algebra.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinearError {
    /// Entry count does not match the declared shape.
    #[error("shape mismatch: {rows}x{cols} declared, {got} entries supplied")]
    Shape { rows: usize, cols: usize, got: usize },
    /// Operand dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An entry belongs to a different field than the matrix declares.
    #[error("mixed-field input: matrix over {expected}, entry in {got}")]
    MixedField { expected: String, got: String },
    /// Underlying scalar failure (division by zero, bad descriptor).
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// A square system was expected to be invertible.
    #[error("matrix is singular")]
    Singular,
}

/// Dense matrix over an exact field, row-major storage.
///
/// The field descriptor travels with the matrix; constructors reject entries
/// bound to a different field, so mixed-field arithmetic is caught at the
/// boundary rather than deep inside a reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    field: FieldDescriptor,
    data: Vec<F>,
}

/// Result of reduced row-echelon computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RrefOutput<F: Field> {
    /// The reduced matrix.
    pub reduced: Matrix<F>,
    /// Number of pivots.
    pub rank: usize,
    /// Pivot column indices, increasing.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// Builds a matrix from row-major entries, validating shape and field.
    pub fn new(
        rows: usize,
        cols: usize,
        field: FieldDescriptor,
        data: Vec<F>,
    ) -> Result<Self, LinearError> {
        if data.len() != rows * cols {
            return Err(LinearError::Shape { rows, cols, got: data.len() });
        }
        for entry in &data {
            if let Some(fd) = entry.descriptor() {
                if fd != field {
                    return Err(LinearError::MixedField {
                        expected: field.to_string(),
                        got: fd.to_string(),
                    });
                }
            }
        }
        Ok(Matrix { rows, cols, field, data })
    }

    /// Builds from nested rows.
    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<F>>) -> Result<Self, LinearError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinearError::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, field, rows.into_iter().flatten().collect())
    }

    /// Builds from integer entries via the descriptor embedding.
    pub fn from_ints(
        rows: usize,
        cols: usize,
        field: &FieldDescriptor,
        ints: &[i64],
    ) -> Result<Self, LinearError> {
        let data = ints
            .iter()
            .map(|&n| F::from_descriptor(field, n))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(rows, cols, field.clone(), data)
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize, field: &FieldDescriptor) -> Self {
        let z = F::from_descriptor(field, 0).expect("descriptor/type mismatch");
        Matrix { rows, cols, field: field.clone(), data: vec![z; rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize, field: &FieldDescriptor) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        let one = F::from_descriptor(field, 1).expect("descriptor/type mismatch");
        for i in 0..n {
            *m.at_mut(i, i) = one.clone();
        }
        m
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The field descriptor.
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Entry accessor.
    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    /// Mutable entry accessor.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.data[i * self.cols + j]
    }

    /// Embeds an integer into this matrix's field.
    pub fn scalar(&self, n: i64) -> F {
        F::from_descriptor(&self.field, n).expect("descriptor/type mismatch")
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.cols != rhs.rows {
            return Err(LinearError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols, &self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a.clone() * rhs.at(k, j).clone();
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = cur + add;
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinearError> {
        if v.len() != self.cols {
            return Err(LinearError::Dimension(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let zero = self.scalar(0);
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = zero.clone();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc = acc + self.at(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect())
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinearError::Dimension("addition shape".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() + b.clone();
        }
        Ok(out)
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinearError::Dimension("subtraction shape".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() - b.clone();
        }
        Ok(out)
    }

    /// Scales every entry.
    pub fn scale(&self, c: &F) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * c.clone();
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.rows != rhs.rows {
            return Err(LinearError::Dimension("hstack rows".into()));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.row(i);
            row.extend(rhs.row(i));
            rows.push(row);
        }
        Matrix::from_rows(self.field.clone(), rows)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.cols != rhs.cols {
            return Err(LinearError::Dimension("vstack cols".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix::new(self.rows + rhs.rows, self.cols, self.field.clone(), data)
    }

    /// Builds the matrix whose rows are the given vectors (empty list allowed).
    pub fn from_row_vectors(
        field: &FieldDescriptor,
        cols: usize,
        vectors: &[Vec<F>],
    ) -> Result<Self, LinearError> {
        if vectors.is_empty() {
            return Ok(Matrix::zeros(0, cols, field));
        }
        Matrix::from_rows(field.clone(), vectors.to_vec())
    }

    /// Reduced row-echelon form with deterministic first-nonzero pivoting.
    pub fn rref(&self) -> RrefOutput<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // First nonzero entry in column c at or below row r.
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.at(pr, j).clone();
                    *m.at_mut(pr, j) = m.at(r, j).clone();
                    *m.at_mut(r, j) = tmp;
                }
            }
            let inv = m.at(r, c).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j).clone() * inv.clone();
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefOutput { rank: pivots.len(), pivots, reduced: m }
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let RrefOutput { reduced, pivots, .. } = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(j)).collect();
        let zero = self.scalar(0);
        let one = self.scalar(1);
        free.iter()
            .map(|&fj| {
                let mut v = vec![zero.clone(); self.cols];
                v[fj] = one.clone();
                for (r, &pj) in pivots.iter().enumerate() {
                    v[pj] = -reduced.at(r, fj).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `Mx = b`. Returns `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, LinearError> {
        if b.len() != self.rows {
            return Err(LinearError::Dimension(format!(
                "solve: {} rows vs {} rhs entries",
                self.rows,
                b.len()
            )));
        }
        let bcol = Matrix::from_rows(
            self.field.clone(),
            b.iter().map(|x| vec![x.clone()]).collect(),
        )?;
        let aug = self.hstack(&bcol)?;
        let RrefOutput { reduced, pivots, .. } = aug.rref();
        // Inconsistent iff a pivot lands in the appended column.
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let zero = self.scalar(0);
        let mut x = vec![zero; self.cols];
        for (r, &pj) in pivots.iter().enumerate() {
            x[pj] = reduced.at(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant by fraction-producing Gaussian elimination (exact fields).
    pub fn det(&self) -> Result<F, LinearError> {
        if self.rows != self.cols {
            return Err(LinearError::Dimension("determinant of non-square".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.scalar(1);
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Ok(self.scalar(0));
            };
            if pr != c {
                for j in 0..n {
                    let tmp = m.at(pr, j).clone();
                    *m.at_mut(pr, j) = m.at(c, j).clone();
                    *m.at_mut(c, j) = tmp;
                }
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone() * inv.clone();
                    for j in c..n {
                        let v = m.at(i, j).clone() - f.clone() * m.at(c, j).clone();
                        *m.at_mut(i, j) = v;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self, LinearError> {
        if self.rows != self.cols {
            return Err(LinearError::Dimension("inverse of non-square".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, &self.field))?;
        let RrefOutput { reduced, rank, .. } = aug.rref();
        if rank < n {
            return Err(LinearError::Singular);
        }
        let mut out = Matrix::zeros(n, n, &self.field);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = reduced.at(i, n + j).clone();
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(xI − M)`, monic, via Hessenberg
    /// reduction (valid over any field, no division-by-integer pitfalls).
    pub fn charpoly(&self) -> Result<Poly<F>, LinearError> {
        if self.rows != self.cols {
            return Err(LinearError::Dimension("charpoly of non-square".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::constant(&self.field, 1));
        }
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for j in 0..n.saturating_sub(2) {
            let Some(pr) = (j + 1..n).find(|&i| !h.at(i, j).is_zero()) else {
                continue;
            };
            if pr != j + 1 {
                // Swap rows and matching columns (a similarity).
                for c in 0..n {
                    let tmp = h.at(pr, c).clone();
                    *h.at_mut(pr, c) = h.at(j + 1, c).clone();
                    *h.at_mut(j + 1, c) = tmp;
                }
                for r in 0..n {
                    let tmp = h.at(r, pr).clone();
                    *h.at_mut(r, pr) = h.at(r, j + 1).clone();
                    *h.at_mut(r, j + 1) = tmp;
                }
            }
            let inv = h.at(j + 1, j).inv().expect("pivot nonzero");
            for i in j + 2..n {
                if h.at(i, j).is_zero() {
                    continue;
                }
                let f = h.at(i, j).clone() * inv.clone();
                // Row op: row_i -= f * row_{j+1}; column op: col_{j+1} += f * col_i.
                for c in 0..n {
                    let v = h.at(i, c).clone() - f.clone() * h.at(j + 1, c).clone();
                    *h.at_mut(i, c) = v;
                }
                for r in 0..n {
                    let v = h.at(r, j + 1).clone() + f.clone() * h.at(r, i).clone();
                    *h.at_mut(r, j + 1) = v;
                }
            }
        }
        // Char polys of leading principal blocks of the Hessenberg matrix.
        let x = Poly::monomial(&self.field, 1, 1);
        let mut ps: Vec<Poly<F>> = vec![Poly::constant(&self.field, 1)];
        for k in 1..=n {
            let hkk = h.at(k - 1, k - 1).clone();
            let mut p = (x.clone() - Poly::from_coeff(&self.field, hkk)).mul(&ps[k - 1]);
            let mut subprod = self.scalar(1);
            for m in 1..k {
                // product of subdiagonal entries h[k-m..k-1][..]
                subprod = subprod * h.at(k - m, k - m - 1).clone();
                if subprod.is_zero() {
                    break;
                }
                let coef = h.at(k - 1 - m, k - 1).clone() * subprod.clone();
                p = p - ps[k - 1 - m].scale(&coef);
            }
            ps.push(p);
        }
        Ok(ps.pop().expect("nonempty"))
    }

    /// Rank by exhaustive minor expansion — a deliberately naive oracle used
    /// in tests to cross-check `rref`.
    pub fn rank_by_minors(&self) -> usize {
        fn det_rec<F: Field>(m: &Matrix<F>, rows: &[usize], cols: &[usize]) -> F {
            if rows.len() == 1 {
                return m.at(rows[0], cols[0]).clone();
            }
            let zero = m.scalar(0);
            let mut acc = zero;
            for (k, &c) in cols.iter().enumerate() {
                let sub_rows = &rows[1..];
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&cc| cc != c).collect();
                let term = m.at(rows[0], c).clone() * det_rec(m, sub_rows, &sub_cols);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = Vec::new();
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
        let maxk = self.rows.min(self.cols);
        for k in (1..=maxk).rev() {
            for rows in combos(self.rows, k) {
                for cols in combos(self.cols, k) {
                    if !det_rec(self, &rows, &cols).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Fp;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::SeedableRng;

    type QM = Matrix<BigRational>;
    type FM = Matrix<Fp>;

    fn qfd() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn rref_identity_is_fixed_point_with_full_rank() {
        let id = QM::identity(3, &qfd());
        let out = id.rref();
        assert_eq!(out.reduced, id);
        assert_eq!(out.rank, 3);
        assert_eq!(out.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = QM::zeros(2, 5, &qfd());
        let out = z.rref();
        assert_eq!(out.reduced, z);
        assert_eq!(out.rank, 0);
        assert!(out.pivots.is_empty());
    }

    #[test]
    fn seeded_f7_rank_matches_brute_force_minors() {
        let fd = FieldDescriptor::prime(7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..12 {
            let donor = Fp::new(0, 7);
            let data: Vec<Fp> = (0..25)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let m = FM::new(5, 5, fd.clone(), data).unwrap();
            assert_eq!(m.rank(), m.rank_by_minors());
        }
    }

    #[test]
    fn kernel_of_identity_empty_and_of_zero_full() {
        let id = QM::identity(4, &qfd());
        assert!(id.kernel_basis().is_empty());
        let z = QM::zeros(3, 3, &qfd());
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        let basis = QM::from_rows(qfd(), k).unwrap();
        assert_eq!(basis, QM::identity(3, &qfd()));
    }

    #[test]
    fn kernel_of_rank4_skew_matrix_is_annihilated() {
        // Skew 5x5 of rank 4 over the rationals.
        let ints: [i64; 25] = [
            0, 1, 0, 0, 0, //
            -1, 0, 0, 0, 0, //
            0, 0, 0, 2, 0, //
            0, 0, -2, 0, 0, //
            0, 0, 0, 0, 0,
        ];
        let m = QM::from_ints(5, 5, &qfd(), &ints).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let img = m.mul_vec(&k[0]).unwrap();
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = QM::identity(3, &qfd());
        let b = vec![id.scalar(4), id.scalar(-1), id.scalar(7)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
        let z = QM::zeros(2, 2, &qfd());
        let b2 = vec![z.scalar(1), z.scalar(0)];
        assert_eq!(z.solve(&b2).unwrap(), None);
    }

    #[test]
    fn solve_seeded_full_rank_f97_substitutes_back() {
        let fd = FieldDescriptor::prime(97).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let donor = Fp::new(0, 97);
        loop {
            let data: Vec<Fp> = (0..36)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let m = FM::new(6, 6, fd.clone(), data).unwrap();
            if m.rank() < 6 {
                continue;
            }
            let b: Vec<Fp> = (0..6)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let x = m.solve(&b).unwrap().unwrap();
            assert_eq!(m.mul_vec(&x).unwrap(), b);
            break;
        }
    }

    #[test]
    fn rank_plus_kernel_dimension_is_cols() {
        let fd = FieldDescriptor::prime(13).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let donor = Fp::new(0, 13);
        for (r, c) in [(3, 7), (7, 3), (5, 5), (1, 4)] {
            let data: Vec<Fp> = (0..r * c)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let m = FM::new(r, c, fd.clone(), data).unwrap();
            assert_eq!(m.rank() + m.kernel_basis().len(), c);
        }
    }

    #[test]
    fn mixed_field_entries_rejected() {
        let fd7 = FieldDescriptor::prime(7).unwrap();
        let bad = FM::new(1, 2, fd7, vec![Fp::new(1, 7), Fp::new(1, 11)]);
        assert!(matches!(bad, Err(LinearError::MixedField { .. })));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let fd = FieldDescriptor::prime(11).unwrap();
        let m = FM::from_ints(3, 3, &fd, &[2, 7, 1, 0, 3, 5, 4, 4, 9]).unwrap();
        // Cofactor: 2*(27-20) - 7*(0-20) + 1*(0-12) = 14 + 140 - 12 = 142 = 10 mod 11
        assert_eq!(m.det().unwrap(), Fp::new(142, 11));
        let singular = FM::from_ints(2, 2, &fd, &[1, 2, 2, 4]).unwrap();
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn charpoly_matches_naive_polynomial_determinant() {
        let fd = FieldDescriptor::prime(97).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let donor = Fp::new(0, 97);
        for n in 1..=4usize {
            let data: Vec<Fp> = (0..n * n)
                .map(|_| crate::scalars::Field::random_like(&donor, &mut rng))
                .collect();
            let m = FM::new(n, n, fd.clone(), data).unwrap();
            let cp = m.charpoly().unwrap();
            // Naive det(xI - M) by Laplace expansion over Poly entries.
            let x = Poly::monomial(&fd, 1, 1);
            let entries: Vec<Poly<Fp>> = (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n, k % n);
                    let c = Poly::from_coeff(&fd, m.at(i, j).clone());
                    if i == j {
                        x.clone() - c
                    } else {
                        -c
                    }
                })
                .collect();
            fn pdet(n: usize, e: &[Poly<Fp>], fd: &FieldDescriptor) -> Poly<Fp> {
                if n == 1 {
                    return e[0].clone();
                }
                let mut acc = Poly::constant(fd, 0);
                for j in 0..n {
                    let mut sub = Vec::new();
                    for r in 1..n {
                        for c in 0..n {
                            if c != j {
                                sub.push(e[r * n + c].clone());
                            }
                        }
                    }
                    let minor = pdet(n - 1, &sub, fd);
                    let term = e[j].mul(&minor);
                    acc = if j % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
            assert_eq!(cp, pdet(n, &entries, &fd), "charpoly mismatch at n={n}");
        }
    }

    #[test]
    fn charpoly_works_at_p5_dimension_5() {
        // Division-free of small-integer hazards: 5x5 over F_5.
        let fd = FieldDescriptor::prime(5).unwrap();
        let m = FM::identity(5, &fd);
        let cp = m.charpoly().unwrap();
        // (x-1)^5 = x^5 - 1 mod 5  (freshman's dream)
        let x = Poly::monomial(&fd, 1, 1);
        let one = Poly::constant(&fd, 1);
        assert_eq!(cp, x.pow(5) - one);
    }

    #[test]
    fn inverse_round_trip() {
        let fd = FieldDescriptor::prime(97).unwrap();
        let m = FM::from_ints(3, 3, &fd, &[1, 2, 3, 0, 1, 4, 5, 6, 0]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FM::identity(3, &fd));
    }
}
