//! Bivariate cross-covariance models and their flexibility indices.
//!
//! The crate covers two families of valid bivariate correlation models:
//!
//! * the bivariate Matérn model, whose marginal and cross entries are
//!   Matérn correlations with their own rate `alpha_ij` and smoothness
//!   `nu_ij`, scaled by a colocated coefficient `rho12`;
//! * the linear model of coregionalization (LMC), which mixes two latent
//!   univariate correlations through a 2x2 loading matrix.
//!
//! [`validity`] computes the closed-form colocated-correlation bound for
//! the constant-smoothness Matérn model and checks Gram matrices for
//! positive semidefiniteness. [`flexibility`] implements the sup-difference
//! index `D` and the integral index `D-tilde`, each by closed form and by an
//! independent numerical route. [`compare`] runs the LMC versus bivariate
//! exponential comparison at matched colocated correlation.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compare;
pub mod descriptor;
pub mod error;
pub mod flexibility;
pub mod format;
pub mod models;
pub mod optimize;
pub mod points;
pub mod quadrature;
pub mod specfun;
pub mod validity;

pub use compare::{compare_on_rho_grid, dominance_check, ComparisonRow, LmcRoot};
pub use descriptor::ModelDescriptor;
pub use error::{Error, Result};
pub use flexibility::{
    d_index_closed, d_index_numeric, dtilde_closed, dtilde_numeric, g_closed, integral_matern, GBranch,
    GSolution, IndexTriple, NumericGrid, QuadratureSettings,
};
pub use models::{
    build_constrained_lmc, colocated, cross_covariance_matrix, eval_cross, eval_univariate,
    BivariateMaternModel, BivariateModel, Component, CrossCorrelation, LmcModel, UnivariateCorrelation,
};
pub use points::PointSet;
pub use validity::{
    bound_curve, empirical_rho_bound, gram_psd_check, matern_colocated_bound, BoundCurve, PsdReport,
};
