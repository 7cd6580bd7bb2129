//! Finite-dimensional checks of the algebraic identities: Clifford
//! relations and the Kostant Dirac square, the Bargmann-conjugated
//! Koszul/de Rham Laplacian, and the Λ-supertrace/determinant identity.

mod exterior;
mod kostant;
mod lambda;
mod weyl;

pub use exterior::{ExteriorBasis, Parity};
pub use kostant::{adjoint_rep, kostant_dirac, kostant_dirac_residual, trivial_rep, CliffordModel, KostantReport};
pub use lambda::{induced_exterior_map, lambda_supertrace_identity, LambdaIdentity};
pub use weyl::{bargmann_roundtrip, bargmann_transform, inverse_bargmann, verify_weitzenbock, Polynomial, TruncatedWeylComplex, WeitzenbockReport};
