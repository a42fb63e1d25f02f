//! Exact vector partition functions over pointed lattice cones.
//!
//! Given an integer matrix `A` whose columns `alpha^1, ..., alpha^N` span a
//! pointed cone, this crate counts and weights the nonnegative integer
//! solutions of `A x = lambda`, manipulates the truncated generating series
//! of such counts, and checks the summation identities that relate them.
//! All arithmetic is exact over the rationals.
//!
//! Indices of variables and columns are 0-based throughout.

pub mod cli;
pub mod cone;
pub mod enumeration;
pub mod error;
pub mod identities;
pub mod series;
pub mod types;

pub use cone::{certify_pointed, ell_degree, ConeCertificate};
pub use enumeration::{
    cone_points, enumerate_solutions, generalized_vp, generalized_vp_table, vector_partition,
    SolutionSet,
};
pub use error::{Error, Result};
pub use identities::{
    cb_1d_value, cb_multidim_terms, count_step_sequences, lemma4_residual, prop3_terms,
    q_delta_apply, shift_apply, theorem1_sides, verify_basic_recurrence, verify_cb_1d,
    verify_cb_multidim, verify_prop1, verify_prop2, verify_prop3, verify_theorem1, Prop1Window,
    VerificationReport, Violation,
};
pub use series::{geometric_inverse, substitute_monomial, weight_series, TruncatedSeries};
pub use types::{
    evaluate_weight, multinomial, orthant_points, ratio, scalar, LatticeVector, Scalar, StepMatrix,
    WeightFunction, WeightTable,
};
