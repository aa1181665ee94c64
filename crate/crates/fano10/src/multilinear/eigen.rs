//! Eigenvalue bookkeeping for diagonalizable actions: a spectrum is a
//! multiset of integer exponents (of a fixed primitive character), and the
//! functorial constructions act on spectra combinatorially.

use super::functor::FunctorExpr;
use std::collections::BTreeMap;

/// Errors from spectrum manipulation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    /// Component-wise subtraction would go negative.
    #[error("not a subrepresentation: exponent {exponent} has multiplicity {have}, need {need}")]
    NotASubrepresentation { exponent: i64, have: usize, need: usize },
}

/// Multiset of eigen-exponents with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSpec {
    mults: BTreeMap<i64, usize>,
}

impl EigenSpec {
    /// Builds from pairs `(exponent, multiplicity)`, merging duplicates.
    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        let mut mults = BTreeMap::new();
        for &(e, m) in pairs {
            if m > 0 {
                *mults.entry(e).or_insert(0) += m;
            }
        }
        EigenSpec { mults }
    }

    /// Sorted `(exponent, multiplicity)` pairs.
    pub fn pairs(&self) -> Vec<(i64, usize)> {
        self.mults.iter().map(|(&e, &m)| (e, m)).collect()
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.mults.values().sum()
    }

    /// Multiplicity of one exponent.
    pub fn multiplicity(&self, e: i64) -> usize {
        self.mults.get(&e).copied().unwrap_or(0)
    }

    /// Largest multiplicity (zero for the empty spectrum).
    pub fn max_multiplicity(&self) -> usize {
        self.mults.values().copied().max().unwrap_or(0)
    }

    /// Dual action: exponents negate.
    pub fn dual(&self) -> Self {
        EigenSpec {
            mults: self.mults.iter().map(|(&e, &m)| (-e, m)).collect(),
        }
    }

    /// Tensor product: exponents add, multiplicities multiply.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut mults = BTreeMap::new();
        for (&e1, &m1) in &self.mults {
            for (&e2, &m2) in &rhs.mults {
                *mults.entry(e1 + e2).or_insert(0) += m1 * m2;
            }
        }
        EigenSpec { mults }
    }

    /// Direct sum.
    pub fn sum(&self, rhs: &Self) -> Self {
        let mut mults = self.mults.clone();
        for (&e, &m) in &rhs.mults {
            *mults.entry(e).or_insert(0) += m;
        }
        EigenSpec { mults }
    }

    /// Component-wise difference; errors when `rhs` is not a sub-multiset.
    pub fn try_sub(&self, rhs: &Self) -> Result<Self, EigenError> {
        let mut mults = self.mults.clone();
        for (&e, &m) in &rhs.mults {
            let have = mults.get(&e).copied().unwrap_or(0);
            if have < m {
                return Err(EigenError::NotASubrepresentation { exponent: e, have, need: m });
            }
            if have == m {
                mults.remove(&e);
            } else {
                mults.insert(e, have - m);
            }
        }
        Ok(EigenSpec { mults })
    }

    /// Exterior power: choose `k` eigenlines without repetition.
    pub fn wedge(&self, k: usize) -> Self {
        self.power_dp(k, |m, t| falling_binomial(m, t))
    }

    /// Symmetric power: choose `k` eigenlines with repetition.
    pub fn sym(&self, k: usize) -> Self {
        self.power_dp(k, |m, t| {
            if t == 0 {
                1
            } else {
                falling_binomial(m + t - 1, t)
            }
        })
    }

    /// Knapsack over distinct exponents: pick `t` vectors from each
    /// eigen-group, `ways(m, t)` choices contributing exponent `t·e`.
    fn power_dp(&self, k: usize, ways: impl Fn(usize, usize) -> u128) -> Self {
        let mut dp: Vec<BTreeMap<i64, u128>> = vec![BTreeMap::new(); k + 1];
        dp[0].insert(0, 1);
        for (&e, &m) in &self.mults {
            let mut next: Vec<BTreeMap<i64, u128>> = vec![BTreeMap::new(); k + 1];
            for (j, layer) in dp.iter().enumerate() {
                for (&acc_e, &cnt) in layer {
                    for t in 0..=(k - j) {
                        let w = ways(m, t);
                        if w == 0 {
                            continue;
                        }
                        *next[j + t].entry(acc_e + (t as i64) * e).or_insert(0) += cnt * w;
                    }
                }
            }
            dp = next;
        }
        let mults = dp[k]
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&e, &c)| (e, usize::try_from(c).expect("multiplicity fits usize")))
            .collect();
        EigenSpec { mults }
    }

    /// Folds exponents modulo `n`, returning residue-class multiplicities.
    pub fn fold_mod(&self, n: u64) -> BTreeMap<u64, usize> {
        assert!(n >= 1, "modulus must be positive");
        let n_i = n as i64;
        let mut out = BTreeMap::new();
        for (&e, &m) in &self.mults {
            let r = ((e % n_i) + n_i) % n_i;
            *out.entry(r as u64).or_insert(0) += m;
        }
        out
    }

    /// Largest residue-class multiplicity after folding modulo `n`.
    pub fn max_folded_multiplicity(&self, n: u64) -> usize {
        self.fold_mod(n).values().copied().max().unwrap_or(0)
    }
}

fn falling_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Applies a functorial construction to a spectrum.
pub fn eigen_spec_apply(expr: &FunctorExpr, spec: &EigenSpec) -> EigenSpec {
    match expr {
        FunctorExpr::Atom => spec.clone(),
        FunctorExpr::Dual(e) => eigen_spec_apply(e, spec).dual(),
        FunctorExpr::Tensor(a, b) => {
            eigen_spec_apply(a, spec).tensor(&eigen_spec_apply(b, spec))
        }
        FunctorExpr::Wedge(k, e) => eigen_spec_apply(e, spec).wedge(*k),
        FunctorExpr::Sym(k, e) => eigen_spec_apply(e, spec).sym(*k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::functor::{binomial, induced_map};
    use crate::scalars::{FieldDescriptor, Matrix};
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn wedge_square_of_mixed_spectrum() {
        let v = EigenSpec::from_pairs(&[(0, 2), (-1, 3)]);
        let w = v.wedge(2);
        assert_eq!(w.pairs(), vec![(-2, 3), (-1, 6), (0, 1)]);
        assert_eq!(w.dim(), binomial(5, 2));
    }

    #[test]
    fn sym_square_after_dual_subtraction_chain() {
        let v = EigenSpec::from_pairs(&[(0, 2), (-1, 3)]);
        let sub = EigenSpec::from_pairs(&[(-1, 2)]);
        let reduced = v.wedge(2).try_sub(&sub).unwrap();
        assert_eq!(reduced.pairs(), vec![(-2, 3), (-1, 4), (0, 1)]);
        let dualized = reduced.dual();
        assert_eq!(dualized.pairs(), vec![(0, 1), (1, 4), (2, 3)]);
        let s = dualized.sym(2);
        assert_eq!(s.pairs(), vec![(0, 1), (1, 4), (2, 13), (3, 12), (4, 6)]);
        assert_eq!(s.dim(), 36);
        let folded = s.fold_mod(2);
        assert_eq!(folded.get(&0), Some(&20));
        assert_eq!(folded.get(&1), Some(&16));
    }

    #[test]
    fn subtraction_guards_against_non_subrepresentations() {
        let v = EigenSpec::from_pairs(&[(0, 1), (-1, 2)]);
        let bad = EigenSpec::from_pairs(&[(-1, 3)]);
        assert_eq!(
            v.try_sub(&bad),
            Err(EigenError::NotASubrepresentation { exponent: -1, have: 2, need: 3 })
        );
        let also_bad = EigenSpec::from_pairs(&[(5, 1)]);
        assert!(v.try_sub(&also_bad).is_err());
    }

    #[test]
    fn power_dimensions_are_binomial() {
        let v = EigenSpec::from_pairs(&[(0, 3), (2, 2), (7, 4)]);
        let n = v.dim();
        for k in 0..=n {
            assert_eq!(v.wedge(k).dim(), binomial(n, k));
            assert_eq!(v.sym(k).dim(), binomial(n + k - 1, k));
        }
        assert_eq!(v.tensor(&v).dim(), n * n);
        assert_eq!(v.dual().dim(), n);
    }

    #[test]
    fn folding_respects_total_dimension() {
        let v = EigenSpec::from_pairs(&[(-3, 2), (0, 5), (1, 1), (4, 7)]);
        for n in 1..=6u64 {
            let total: usize = v.fold_mod(n).values().sum();
            assert_eq!(total, v.dim());
        }
        // Exponents -3 and 1 collide mod 4, 0 and 4 collide mod 4.
        let f4 = v.fold_mod(4);
        assert_eq!(f4.get(&1), Some(&3));
        assert_eq!(f4.get(&0), Some(&12));
    }

    #[test]
    fn spectra_match_induced_maps_on_a_diagonal_action() {
        // Diagonal action diag(2^e) over the rationals: the induced matrix of
        // every construction is diagonal with entries 2^(derived exponent).
        let fd = FieldDescriptor::Rationals;
        let spec = EigenSpec::from_pairs(&[(0, 1), (1, 2), (-1, 1)]);
        let mut diag_entries: Vec<i64> = Vec::new();
        for (e, m) in spec.pairs() {
            diag_entries.extend(std::iter::repeat(e).take(m));
        }
        let n = diag_entries.len();
        let two = BigRational::from_integer(2.into());
        let pow2 = |e: i64| -> BigRational {
            let mut acc = BigRational::from_integer(1.into());
            for _ in 0..e.unsigned_abs() {
                acc *= two.clone();
            }
            if e < 0 {
                acc.recip()
            } else {
                acc
            }
        };
        let mut m = Matrix::<BigRational>::zeros(n, n, &fd);
        for (i, &e) in diag_entries.iter().enumerate() {
            *m.at_mut(i, i) = pow2(e);
        }
        let exprs = vec![
            FunctorExpr::Wedge(2, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Sym(2, Box::new(FunctorExpr::Atom)),
            FunctorExpr::Dual(Box::new(FunctorExpr::Atom)),
            FunctorExpr::Tensor(Box::new(FunctorExpr::Atom), Box::new(FunctorExpr::Atom)),
            FunctorExpr::Sym(3, Box::new(FunctorExpr::Dual(Box::new(FunctorExpr::Atom)))),
        ];
        for expr in exprs {
            let induced = induced_map(&m, &expr).unwrap();
            let derived = eigen_spec_apply(&expr, &spec);
            assert_eq!(induced.rows(), derived.dim());
            let mut counts: std::collections::BTreeMap<i64, usize> = Default::default();
            for i in 0..induced.rows() {
                for j in 0..induced.cols() {
                    if i != j {
                        assert!(induced.at(i, j).is_zero(), "off-diagonal in {expr:?}");
                    }
                }
                let v = induced.at(i, i).clone();
                let e = (-60..=60)
                    .find(|&e| v == pow2(e))
                    .expect("diagonal entry is a power of two");
                *counts.entry(e).or_insert(0) += 1;
            }
            let expect: std::collections::BTreeMap<i64, usize> =
                derived.pairs().into_iter().collect();
            assert_eq!(counts, expect, "spectrum mismatch for {expr:?}");
        }
    }
}
