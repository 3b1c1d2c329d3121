//! Independent checks on invariant dimensions.
//!
//! * [`multigraph_count`] enumerates symmetric integer matrices with a
//!   prescribed degree sequence.
//! * [`weyl_ct_sp`] integrates exactly over the maximal torus of `Sp(n)`.
//! * [`haar_mc_dim`] estimates by sampling Haar-random matrices from `O(n)`
//!   and `Sp(n)`.
//!
//! None of them touches the symmetric function machinery.

mod haar;
mod multigraph;
mod weyl;

pub use haar::{
    eigenangle_chi_square, haar_mc_dim, haar_mc_dims, orthogonality_residual, sample_orthogonal,
    sample_symplectic, symplectic_form, symplecticity_residual, ChiSquare, HaarSampler, McEstimate, McReport,
};
pub use multigraph::multigraph_count;
pub use weyl::{weyl_ct_sp, weyl_ct_sp_kind, LaurentPoly, MAX_WEYL_RANK, MAX_WEYL_WEIGHT};
