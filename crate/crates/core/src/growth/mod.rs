//! Upper bound on the growth rate: exact arithmetic in `Q(x)`, the bundled
//! 55-vertex polytope, closure certificates and the heuristic search that
//! proposes polytopes.

pub mod algnum;
pub mod certify;
pub mod polytope;
pub mod search;

pub use algnum::AlgNum;
pub use certify::{
    check_closure, check_identities, check_seed, solve_certificate, upper_bound_constant, CertKind, Certificate,
    ClosureReport,
};
pub use polytope::{load_polytope, star_scaled, Polytope, ScaledVec, Vertex};
pub use search::{boundary_seeds, search_from, search_lambda, SearchOutcome};

/// `95^(1/13)`, the growth constant.
pub fn lambda_f64() -> f64 {
    1.0 / algnum::x_f64()
}
