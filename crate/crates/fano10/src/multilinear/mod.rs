//! Functorial multilinear algebra on based vector spaces: exterior and
//! symmetric powers, duals, tensor products, induced maps, and eigenvalue
//! bookkeeping for diagonalizable actions.

mod eigen;
mod functor;

pub use eigen::{eigen_spec_apply, EigenError, EigenSpec};
pub use functor::{
    binomial, induced_map, is_decomposable, multisets_lex, plucker_point, subsets_lex,
    wedge2_basis_index, wedge_elements, wedge_with_matrix, BasedSpace, FunctorExpr,
    MultilinearError,
};
