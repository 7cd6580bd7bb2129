//! Trace formulas from length-spectrum data, spectral zeta functions and
//! analytic torsion, Ruelle zeta functions and Fried's identity on the circle.

pub mod poisson;
pub mod ruelle;
pub mod spectrum;
pub mod surface;
pub mod torsion;

pub use poisson::{identity_orbital_plancherel, plancherel_identity_residual, poisson_both_sides};
pub use ruelle::{euler_product_check, fried_check_circle, ruelle_closed_form, ruelle_xi, ruelle_zeta, FriedCheck};
pub use spectrum::{circle_length_spectrum, synthetic_genus2_spectrum, ClassEntry, Holonomy, LengthSpectrum, SpectralData};
pub use surface::{
    circle_classes, circle_geometric_side, identity_spectral_integral, selberg_assemble, surface_classes, surface_heat_trace,
    ClassDescriptor, OrbitalEvaluator,
};
pub use torsion::{analytic_torsion_circle, circle_log_det_lerch, circle_zeta, spectral_zeta_prime_approx, torsion_from_spectrum, TorsionMethod, TorsionResult};
