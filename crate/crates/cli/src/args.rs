use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Heat-kernel orbital integrals, trace formulas, the hypoelliptic model
/// kernel, torsion and Ruelle zeta functions.
///
/// Results are written as CSV. Sweeps accept `1`, `0.5,1,2`,
/// `lin:START:STOP:COUNT` or `log:START:STOP:COUNT`. ORBITALIS_THREADS caps
/// the number of worker threads.
#[derive(Debug, Parser)]
#[command(name = "orbitalis", version, args_override_self = true)]
pub struct Cli {
    /// JSON file whose keys mirror the subcommand's flags; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the CSV here instead of standard output.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write a two-column whitespace-separated file for plotting.
    #[arg(long, global = true, value_name = "FILE")]
    pub plot_data: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbital integral of the heat kernel for one semisimple element.
    Orbital(OrbitalArgs),
    /// Assemble the geometric side of a trace formula from its classes.
    Trace(TraceArgs),
    /// Both sides of Poisson summation on the circle.
    Poisson(PoissonArgs),
    /// Heat trace of a hyperbolic surface from a length spectrum.
    SurfaceTrace(SurfaceTraceArgs),
    /// Supertrace of the one-dimensional hypoelliptic model.
    Hypo(HypoArgs),
    /// Clifford, Kostant, Weitzenbock and Lambda-supertrace checks.
    AlgebraCheck(AlgebraCheckArgs),
    /// Analytic torsion of the twisted circle or of an eigenvalue list.
    Torsion(TorsionArgs),
    /// Spectral or Ruelle zeta functions.
    Zeta(ZetaArgs),
    /// R(0) against T^2 on the circle with holonomy e^{i theta}.
    FriedCheck(FriedArgs),
    /// Run every module's invariant suite; exit 1 if any check fails.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrbitalMethod {
    Explicit,
    RankOne,
    Oracle,
    Both,
}

#[derive(Debug, Args)]
pub struct OrbitalArgs {
    /// `sl2`, `abelian:N`, or a path to a structure-constant JSON file.
    #[arg(long, default_value = "sl2")]
    pub model: String,
    /// identity | hyperbolic:a=A | elliptic:phi=PHI | translation:a=A1,A2,..
    /// | general:a=A1,..;y=Y1,..
    #[arg(long, default_value = "identity")]
    pub gamma: String,
    #[arg(long, default_value = "1")]
    pub t: String,
    /// Scalar shift A in -Delta/2 + A; defaults to the model's Casimir shift.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,
    #[arg(long, value_enum, default_value_t = OrbitalMethod::Explicit)]
    pub method: OrbitalMethod,
    /// Starting Gauss-Hermite nodes per axis.
    #[arg(long, allow_hyphen_values = true, default_value_t = 64)]
    pub nodes: usize,
    /// Relative tolerance of the quadratures.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumSource {
    /// Length spectrum JSON file.
    #[arg(long, value_name = "FILE")]
    pub spectrum: Option<PathBuf>,
    /// Use the synthetic genus-2 spectrum with lengths up to this bound.
    #[arg(long, allow_hyphen_values = true, value_name = "LMAX")]
    pub synthetic_genus2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// `abelian:1` (circle, Poisson) or `sl2` (hyperbolic surface).
    #[arg(long, default_value = "abelian:1")]
    pub model: String,
    #[arg(long, default_value = "1")]
    pub t: String,
    #[command(flatten)]
    pub source: SpectrumSource,
    /// Surface area.
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0 * std::f64::consts::PI)]
    pub vol: f64,
    /// Largest power of each primitive class.
    #[arg(long, allow_hyphen_values = true, default_value_t = 64)]
    pub k_max: usize,
    /// Rank-one closed form where it applies instead of quadrature everywhere.
    #[arg(long)]
    pub auto: bool,
    #[arg(long, allow_hyphen_values = true, default_value_t = 64)]
    pub nodes: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct PoissonArgs {
    #[arg(long, default_value = "1")]
    pub t: String,
}

#[derive(Debug, Args)]
pub struct SurfaceTraceArgs {
    #[arg(long, default_value = "1")]
    pub t: String,
    #[command(flatten)]
    pub source: SpectrumSource,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0 * std::f64::consts::PI)]
    pub vol: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 64)]
    pub k_max: usize,
}

#[derive(Debug, Args)]
pub struct HypoArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "1")]
    pub b: String,
    #[arg(long, default_value = "1")]
    pub t: String,
    /// Run the PDE and Monte Carlo oracles for every (b, t) instead.
    #[arg(long)]
    pub oracles: bool,
    /// Seed of the Monte Carlo oracle.
    #[arg(long, allow_hyphen_values = true, default_value_t = 20240917)]
    pub seed: u64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1_000_000)]
    pub paths: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 128)]
    pub steps: usize,
    /// Starting point y of the Monte Carlo y-marginal.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub y: f64,
    /// Grid nodes per axis of the PDE oracle.
    #[arg(long, allow_hyphen_values = true, default_value_t = 512)]
    pub pde_nodes: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0 / 400.0)]
    pub pde_dt: f64,
    /// Points of the diagonal profile written with --plot-data.
    #[arg(long, allow_hyphen_values = true, default_value_t = 201)]
    pub profile_points: usize,
}

#[derive(Debug, Args)]
pub struct AlgebraCheckArgs {
    #[arg(long, default_value = "sl2")]
    pub model: String,
    /// (n, D) pairs of the truncated Weyl complex, as `n:D,n:D`.
    #[arg(long, default_value = "1:6,2:5")]
    pub weitzenbock: String,
    /// Random orthogonal u for the Lambda-supertrace identity.
    #[arg(long, allow_hyphen_values = true, default_value_t = 50)]
    pub lambda_trials: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 11)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    /// Holonomy angles of the twisted unit circle.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Eigenvalue CSV (lambda,multiplicity) instead of the circle.
    #[arg(long, value_name = "FILE")]
    pub eigenvalues: Option<PathBuf>,
    /// Dimension of the manifold behind --eigenvalues.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaKind {
    Spectral,
    Ruelle,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long, value_enum, default_value_t = ZetaKind::Spectral)]
    pub kind: ZetaKind,
    /// Holonomy angles of the circle.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub circumference: f64,
    /// Points s of the spectral zeta (circle only; eigenvalue lists give s = 0).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, value_name = "FILE")]
    pub eigenvalues: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub dim: usize,
    /// Length spectrum JSON for the Ruelle zeta.
    #[arg(long, value_name = "FILE")]
    pub spectrum: Option<PathBuf>,
    /// Real parts of sigma for the Ruelle zeta.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub sigma: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub sigma_im: f64,
}

#[derive(Debug, Args)]
pub struct FriedArgs {
    #[arg(long, default_value = "3.141592653589793", allow_hyphen_values = true)]
    pub theta: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Include the slow PDE and Monte Carlo oracles.
    #[arg(long)]
    pub full: bool,
}
