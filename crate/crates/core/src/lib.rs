//! Numerical laboratory for heat-kernel orbital integrals on symmetric
//! spaces: the explicit orbital-integral formula and its brute-force orbit
//! oracle, trace formulas, the one-dimensional hypoelliptic model, finite
//! Clifford/Dirac identities, analytic torsion and Ruelle zeta functions.

pub mod error;
pub mod hypo;
pub mod lie;
pub mod clifford;
pub mod numerics;
pub mod oracle;
pub mod orbital;
pub mod trace;
pub mod validate;

pub use error::{Error, Result};
