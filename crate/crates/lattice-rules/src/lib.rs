//! General lattice rules for quasi-Monte Carlo integration.
//!
//! The crate constructs Kronecker, rank-1 (including Fibonacci and Korobov)
//! and Frolov lattices, computes their Zaremba figure of merit and dyadic
//! dual-lattice censuses exactly, evaluates worst-case-error upper bounds,
//! and runs empirical convergence studies on compactly supported test
//! integrands.
//!
//! Numbers are exact throughout: rank-1 and rational-Kronecker data use
//! arbitrary-precision rationals end to end, while irrational generators and
//! Frolov roots are stored as certified 96-bit fixed-point approximants on
//! which all further arithmetic is exact. Results computed on approximants
//! carry `exact = false`.
//!
//! See the `examples/` directory for one runnable program per capability, and
//! the `lattice-rules` binary for the same operations as CLI subcommands.

pub mod bounds;
pub mod cli;
pub mod diophantine;
pub mod error;
pub mod fixed;
pub mod lattice;
pub mod matrix;
pub mod quadrature;
pub mod zaremba;

pub use bounds::{
    metrical_rate, psi_lower_bound, theta_conjugate, wce_bound_closed, wce_bound_sum, BoundParams,
    BoundSum, PsiKind,
};
pub use diophantine::{
    cfrac_rational, convergents, fibonacci_rule, k_value, korobov_vector, named_alpha, Alpha,
    AlphaKind, CFExpansion, NamedAlpha,
};
pub use error::{LatticeError, Result};
pub use fixed::Fixed;
pub use lattice::{
    dual_basis, enumerate_points, frolov_matrix, generator_matrix, kronecker_matrix, rank1_matrix,
    DualBasis, GeneratorMatrix, LatticeSpec, PointSet,
};
pub use quadrature::{
    bump_exact_integral, convergence_study, fit_rate, qmc_apply, qmc_apply_rational,
    ConvergenceRow, Integrand, RateFit, StudyOptions,
};
pub use zaremba::{
    dyadic_count, r_product, search_best_gen, zaremba_brute, zaremba_index, zaremba_with_budget,
    DyadicIndex, SearchMode, ZarembaResult,
};
