//! Exhaustive verifiers for structural statements about c-boomerang
//! uniformity: linearized trinomials, Gold and Chebyshev bounds, and the
//! inverse function.

pub mod census;
pub mod gold;
pub mod inverse;
pub mod mu;
pub mod trinomial;

pub use census::lemma_quadratic_census;
pub use gold::{delta_d, gold_bound_check, in_gold_class};
pub use inverse::{binary_conditions, inverse_binary_verify, inverse_odd_verify, BinaryReading};
pub use mu::{mu_c_check, mu_c_count, mu_c_counts, MuSystem};
pub use trinomial::{trinomial_roots_cm04, trinomial_roots_scan, RootPath, TrinomialRoots, TrinomialSpec};
