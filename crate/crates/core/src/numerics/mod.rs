//! Numerical building blocks shared by the physics modules.

pub mod hermite;
pub mod quad;
pub mod sum;
pub mod zeta;

pub use hermite::GaussHermite;
pub use quad::{integrate, integrate_tail, periodic_trapezoid, QuadOutcome, QuadSettings};
pub use sum::{pairwise_sum, pairwise_sum_c};
