use std::collections::HashMap;
use std::path::Path;

use num_complex::Complex64;
use orbitalis_core::clifford::{bargmann_roundtrip, lambda_supertrace_identity, verify_weitzenbock, CliffordModel, KostantReport, Polynomial};
use orbitalis_core::hypo::{self, oracles};
use orbitalis_core::lie::{laplacian_shift, load_model, LieAlgebraModel, SemisimpleElement};
use orbitalis_core::oracle::{direct_orbital_integral, IntegrationConfig};
use orbitalis_core::orbital::{heat_orbital_integral, rank_one_closed_form, HeatParameters, QuadratureConfig};
use orbitalis_core::trace::{self, LengthSpectrum, SpectralData};
use orbitalis_core::validate::{random_orthogonal, run_all};
use orbitalis_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::*;
use crate::output::{f, PlotData, Table};
use crate::sweep::{parse_positive, parse_sweep};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or inputs; exit 1.
    Usage(String),
    /// Failure inside the numerical library; exit 2 when numerical.
    Core(Error),
    /// Output could not be written; exit 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => fm.write_str(m),
            CliError::Core(e) => write!(fm, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<String> for CliError {
    fn from(m: String) -> Self {
        CliError::Usage(m)
    }
}

/// Attributes input errors raised by the library to the flag that supplied the value.
fn blame(flag: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| if e.is_numerical() { CliError::Core(e) } else { CliError::Usage(format!("--{flag}: {e}")) }
}

pub struct Report {
    pub table: Table,
    pub plot: Option<PlotData>,
    /// Some check in the table failed (validate / algebra-check).
    pub failed: bool,
}

impl Report {
    fn new(table: Table) -> Self {
        Report { table, plot: None, failed: false }
    }
}

pub fn parse_model(text: &str) -> Result<LieAlgebraModel, CliError> {
    if text == "sl2" {
        return Ok(LieAlgebraModel::sl2());
    }
    if let Some(n) = text.strip_prefix("abelian:") {
        let n: usize = n.parse().ok().filter(|n| *n >= 1).ok_or_else(|| format!("--model: 'abelian:N' needs N >= 1 (got '{text}')"))?;
        return Ok(LieAlgebraModel::abelian(n));
    }
    let p = Path::new(text);
    if p.is_file() {
        return load_model(p).map_err(blame("model"));
    }
    Err(CliError::Usage(format!("--model: expected sl2, abelian:N or a model JSON file (got '{text}')")))
}

fn gamma_params(text: &str) -> Result<HashMap<String, Vec<f64>>, CliError> {
    let mut out = HashMap::new();
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("--gamma: expected key=value, got '{part}'"))?;
        let vals = v
            .split(',')
            .map(|x| x.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| format!("--gamma: '{v}' is not a list of numbers"))?;
        out.insert(k.trim().to_string(), vals);
    }
    Ok(out)
}

pub fn parse_gamma(model: &LieAlgebraModel, text: &str) -> Result<SemisimpleElement, CliError> {
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    let params = gamma_params(rest)?;
    let scalar = |key: &str| -> Result<f64, CliError> {
        match params.get(key).map(|v| v.as_slice()) {
            Some([x]) => Ok(*x),
            _ => Err(CliError::Usage(format!("--gamma: '{kind}' needs a single {key}=VALUE"))),
        }
    };
    let vector = |key: &str| -> Result<Vec<f64>, CliError> {
        params.get(key).cloned().ok_or_else(|| CliError::Usage(format!("--gamma: '{kind}' needs {key}=V1,V2,..")))
    };
    let g = match kind {
        "identity" => Ok(SemisimpleElement::identity(model)),
        "hyperbolic" if model.dim_k == 0 => {
            let mut a = vec![0.0; model.dim_p];
            a[0] = scalar("a")?;
            SemisimpleElement::translation(model, &a)
        }
        "hyperbolic" => SemisimpleElement::sl2_hyperbolic(model, scalar("a")?),
        "elliptic" => SemisimpleElement::sl2_elliptic(model, scalar("phi")?),
        "translation" => SemisimpleElement::translation(model, &vector("a")?),
        "general" => SemisimpleElement::from_k_generator(model, &vector("a")?, &vector("y")?),
        _ => {
            return Err(CliError::Usage(format!(
                "--gamma: unknown kind '{kind}' (expected identity, hyperbolic, elliptic, translation or general)"
            )))
        }
    };
    g.map_err(blame("gamma"))
}

fn positive(flag: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("--{flag}: must be a positive number (got {x})")))
    }
}

fn at_least(flag: &str, n: usize, min: usize) -> Result<usize, CliError> {
    if n >= min {
        Ok(n)
    } else {
        Err(CliError::Usage(format!("--{flag}: must be at least {min} (got {n})")))
    }
}

fn load_spectrum(src: &SpectrumSource) -> Result<LengthSpectrum, CliError> {
    match (&src.spectrum, src.synthetic_genus2) {
        (Some(_), Some(_)) => Err(CliError::Usage("--spectrum: give either --spectrum or --synthetic-genus2, not both".into())),
        (Some(p), None) => LengthSpectrum::load(p).map_err(blame("spectrum")),
        (None, Some(l)) => Ok(trace::synthetic_genus2_spectrum(positive("synthetic-genus2", l)?)),
        (None, None) => Err(CliError::Usage("--spectrum: a length spectrum is required (or --synthetic-genus2 LMAX)".into())),
    }
}

fn load_eigenvalues(p: &Path) -> Result<Vec<(f64, usize)>, CliError> {
    match SpectralData::load_csv(p).map_err(blame("eigenvalues"))? {
        SpectralData::Eigenvalues(v) => Ok(v),
        SpectralData::Circle { .. } => unreachable!("CSV input is always an eigenvalue list"),
    }
}

pub fn orbital(args: &OrbitalArgs) -> Result<Report, CliError> {
    let model = parse_model(&args.model)?;
    let gamma = parse_gamma(&model, &args.gamma)?;
    let ts = parse_positive("t", &args.t)?;
    at_least("nodes", args.nodes, 1)?;
    let tol = positive("tol", args.tol)?;
    let base_shift = laplacian_shift(&model);
    let shift = args.shift.unwrap_or(base_shift);
    let quad = QuadratureConfig { nodes: args.nodes, refine: true, tol };
    let formula = |t: f64| -> Result<(f64, f64), CliError> {
        let params = HeatParameters::scalar(&model, t, shift);
        let r = match args.method {
            OrbitalMethod::RankOne => rank_one_closed_form(&model, &gamma, &params).map_err(blame("method"))?,
            _ => heat_orbital_integral(&model, &gamma, &params, quad)?,
        };
        Ok((r.value, r.abs_error_estimate))
    };
    // the orbit integral sees e^{tΔ/2}; the formula carries e^{−tA}
    let oracle = |t: f64| -> Result<(f64, f64), CliError> {
        let r = direct_orbital_integral(&model, &gamma, t, IntegrationConfig { rel_tol: tol.min(1e-10), ..Default::default() })
            .map_err(blame("model"))?;
        let w = (-t * (shift - base_shift)).exp();
        Ok((r.value * w, r.abs_error_estimate * w))
    };
    let mut plot = PlotData::default();
    let table = if args.method == OrbitalMethod::Both {
        let mut tb = Table::new(&["t", "explicit", "explicit_error", "oracle", "oracle_error", "residual"]);
        for t in ts {
            let (e, ee) = formula(t)?;
            let (o, oe) = oracle(t)?;
            tb.push(vec![f(t), f(e), f(ee), f(o), f(oe), f((e - o).abs())]);
            plot.points.push((t, e));
        }
        tb
    } else {
        let mut tb = Table::new(&["t", "value", "error_estimate", "method"]);
        let label = match args.method {
            OrbitalMethod::Explicit => "explicit",
            OrbitalMethod::RankOne => "rank_one",
            _ => "oracle",
        };
        for t in ts {
            let (v, err) = if args.method == OrbitalMethod::Oracle { oracle(t)? } else { formula(t)? };
            tb.push(vec![f(t), f(v), f(err), label.into()]);
            plot.points.push((t, v));
        }
        tb
    };
    Ok(Report { table, plot: Some(plot), failed: false })
}

pub fn trace_cmd(args: &TraceArgs) -> Result<Report, CliError> {
    let model = parse_model(&args.model)?;
    let ts = parse_positive("t", &args.t)?;
    at_least("nodes", args.nodes, 1)?;
    at_least("k-max", args.k_max, 1)?;
    let quad = QuadratureConfig { nodes: args.nodes, refine: true, tol: positive("tol", args.tol)? };
    let eval = if args.auto { trace::OrbitalEvaluator::Auto(quad) } else { trace::OrbitalEvaluator::Explicit(quad) };
    let circle = model.dim_p == 1 && model.dim_k == 0;
    let surface = model == LieAlgebraModel::sl2();
    if !circle && !surface {
        return Err(CliError::Usage(format!("--model: trace supports abelian:1 and sl2 (got '{}')", args.model)));
    }
    let spectrum = if surface { Some(load_spectrum(&args.source)?) } else { None };
    let vol = positive("vol", args.vol)?;
    let mut tb = Table::new(&["t", "assembled", "reference", "residual"]);
    let mut plot = PlotData::default();
    for t in ts {
        let (assembled, reference) = match &spectrum {
            None => {
                let cls = trace::circle_classes(&model, t)?;
                (trace::selberg_assemble(&model, &cls, t, 0.0, eval)?, trace::poisson_both_sides(t)?.0)
            }
            Some(spec) => {
                let cls = trace::surface_classes(&model, vol, spec, t, args.k_max)?;
                (
                    trace::selberg_assemble(&model, &cls, t, laplacian_shift(&model), eval)?,
                    trace::surface_heat_trace(vol, spec, t, args.k_max)?,
                )
            }
        };
        tb.push(vec![f(t), f(assembled), f(reference), f((assembled - reference).abs())]);
        plot.points.push((t, assembled));
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn poisson(args: &PoissonArgs) -> Result<Report, CliError> {
    let mut tb = Table::new(&["t", "spectral_side", "geometric_side", "residual"]);
    let mut plot = PlotData::default();
    for t in parse_positive("t", &args.t)? {
        let (s, g) = trace::poisson_both_sides(t)?;
        tb.push(vec![f(t), f(s), f(g), f((s - g).abs())]);
        plot.points.push((t, (s - g).abs()));
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn surface_trace(args: &SurfaceTraceArgs) -> Result<Report, CliError> {
    let ts = parse_positive("t", &args.t)?;
    let spec = load_spectrum(&args.source)?;
    let vol = positive("vol", args.vol)?;
    at_least("k-max", args.k_max, 1)?;
    let mut tb = Table::new(&["t", "trace", "weyl_ratio"]);
    let mut plot = PlotData::default();
    for t in ts {
        let v = trace::surface_heat_trace(vol, &spec, t, args.k_max)?;
        tb.push(vec![f(t), f(v), f(v * 2.0 * std::f64::consts::PI * t / vol)]);
        plot.points.push((t, v));
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn hypo_cmd(args: &HypoArgs) -> Result<Report, CliError> {
    let avals = parse_sweep("a", &args.a)?;
    let bvals = parse_positive("b", &args.b)?;
    let tvals = parse_positive("t", &args.t)?;
    if args.oracles {
        at_least("paths", args.paths, 2)?;
        at_least("steps", args.steps, 1)?;
        at_least("pde-nodes", args.pde_nodes, 8)?;
        let dt = positive("pde-dt", args.pde_dt)?;
        if !args.y.is_finite() {
            return Err(CliError::Usage("--y: must be finite".into()));
        }
        let mut tb = Table::new(&[
            "b", "t", "pde_l2_residual", "pde_l2_norm", "mc_estimate", "mc_std_error", "mc_exact", "mc_z",
        ]);
        for &b in &bvals {
            for &t in &tvals {
                let cfg = oracles::PdeConfig { nodes: args.pde_nodes, dt, ..Default::default() };
                let pde = oracles::pde_oracle(b, t, cfg)?;
                let mc = oracles::feynman_kac_marginal(args.y, b, t, args.paths, args.steps, args.seed)?;
                tb.push(vec![
                    f(b), f(t), f(pde.l2_residual), f(pde.l2_norm), f(mc.estimate), f(mc.std_error), f(mc.exact), f(mc.z_score()),
                ]);
            }
        }
        return Ok(Report::new(tb));
    }
    let mut tb = Table::new(&["a", "b", "t", "supertrace", "closed_form", "residual"]);
    for &a in &avals {
        for &b in &bvals {
            for &t in &tvals {
                let st = hypo::hypo_supertrace(a, b, t)?;
                let cf = hypo::flat_orbital(a, t);
                tb.push(vec![f(a), f(b), f(t), f(st), f(cf), f((st - cf).abs())]);
            }
        }
    }
    // diagonal profile Y ↦ p((0,Y),(a,Y)) of the first grid point
    let n = at_least("profile-points", args.profile_points, 3)?;
    let prof = hypo::localization_profile(avals[0], bvals[0], tvals[0], n, 6.0)?;
    Ok(Report { table: tb, plot: Some(PlotData { points: prof.rows }), failed: false })
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|p| {
            let parsed = p.split_once(':').and_then(|(n, d)| Some((n.trim().parse().ok()?, d.trim().parse().ok()?)));
            match parsed {
                Some((n, d)) if n >= 1 && d >= 3 => Ok((n, d)),
                _ => Err(CliError::Usage(format!("--weitzenbock: expected n:D with n >= 1 and D >= 3 (got '{p}')"))),
            }
        })
        .collect()
}

pub fn algebra_check(args: &AlgebraCheckArgs) -> Result<Report, CliError> {
    let model = parse_model(&args.model)?;
    let pairs = parse_pairs(&args.weitzenbock)?;
    let mut rows: Vec<(String, Result<f64, Error>, f64)> = vec![
        ("model structure residual".into(), Ok(model.residuals().max()), 1e-12),
        ("Clifford relations".into(), Ok(CliffordModel::new(&model).relations_residual()), 1e-13),
        ("Kostant, adjoint".into(), KostantReport::for_adjoint(&model).map(|r| r.residual), 1e-11),
        ("Kostant, trivial".into(), KostantReport::for_trivial(&model).map(|r| r.residual), 1e-11),
    ];
    for (n, d) in pairs {
        let r = verify_weitzenbock(n, d);
        let v = if r.kernel_dim == 1 { r.residual.max(r.d_squared) } else { f64::INFINITY };
        rows.push((format!("Weitzenbock n={n} D={d}"), Ok(v), 1e-12));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = Ok(0.0f64);
    for i in 0..args.lambda_trials {
        let u = random_orthogonal(2 + i % 3, &mut rng);
        worst = worst.and_then(|w| Ok(w.max(lambda_supertrace_identity(&u)?.residual())));
    }
    rows.push((format!("Lambda supertrace, {} random orthogonal u", args.lambda_trials), worst, 1e-12));
    rows.push(("Bargmann round trip (n=2, D=5)".into(), Ok(bargmann_roundtrip(&Polynomial::monomial(2, 5, &[2, 1], 1.0))), 1e-12));

    let mut tb = Table::new(&["check", "value", "tolerance", "passed", "detail"]);
    let mut failed = false;
    for (name, v, tol) in rows {
        let (value, detail) = match v {
            Ok(v) => (v, String::new()),
            Err(e) => (f64::NAN, e.to_string()),
        };
        let passed = value <= tol;
        failed |= !passed;
        tb.push(vec![name, f(value), f(tol), passed.to_string(), detail]);
    }
    Ok(Report { table: tb, plot: None, failed })
}

pub fn torsion(args: &TorsionArgs) -> Result<Report, CliError> {
    at_least("dim", args.dim, 1)?;
    let mut tb = Table::new(&["source", "theta", "log_t", "torsion", "method", "error_estimate"]);
    let mut plot = PlotData::default();
    let thetas = match (&args.theta, &args.eigenvalues) {
        (Some(s), _) => parse_sweep("theta", s)?,
        (None, Some(_)) => Vec::new(),
        (None, None) => vec![std::f64::consts::PI],
    };
    for th in thetas {
        let r = trace::analytic_torsion_circle(th).map_err(blame("theta"))?;
        tb.push(vec!["circle".into(), f(th), f(r.log_t), f(r.log_t.exp()), r.method.to_string(), f(r.error_estimate)]);
        plot.points.push((th, r.log_t));
    }
    if let Some(p) = &args.eigenvalues {
        let data = SpectralData::Eigenvalues(load_eigenvalues(p)?);
        let r = trace::torsion_from_spectrum(&data, args.dim).map_err(blame("eigenvalues"))?;
        tb.push(vec![p.display().to_string(), String::new(), f(r.log_t), f(r.log_t.exp()), r.method.to_string(), f(r.error_estimate)]);
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn zeta(args: &ZetaArgs) -> Result<Report, CliError> {
    match args.kind {
        ZetaKind::Spectral => spectral_zeta(args),
        ZetaKind::Ruelle => ruelle(args),
    }
}

fn spectral_zeta(args: &ZetaArgs) -> Result<Report, CliError> {
    let circ = positive("circumference", args.circumference)?;
    let svals = parse_sweep("s", &args.s)?;
    let mut tb = Table::new(&["source", "theta", "s", "zeta", "zeta_prime", "error_estimate"]);
    let mut plot = PlotData::default();
    let thetas = match (&args.theta, &args.eigenvalues) {
        (Some(s), _) => parse_sweep("theta", s)?,
        (None, Some(_)) => Vec::new(),
        (None, None) => vec![std::f64::consts::PI],
    };
    for th in thetas {
        for &s in &svals {
            let (z, zp) = trace::circle_zeta(th, circ, s).map_err(blame("theta"))?;
            tb.push(vec!["circle".into(), f(th), f(s), f(z), f(zp), f(0.0)]);
            plot.points.push((s, z));
        }
    }
    if let Some(p) = &args.eigenvalues {
        if svals != [0.0] {
            return Err(CliError::Usage("--s: eigenvalue lists only give zeta'(0); use --s 0".into()));
        }
        at_least("dim", args.dim, 1)?;
        let eigs = load_eigenvalues(p)?;
        let (zp, err) = trace::spectral_zeta_prime_approx(&eigs, args.dim).map_err(blame("eigenvalues"))?;
        tb.push(vec![p.display().to_string(), String::new(), f(0.0), String::new(), f(zp), f(err)]);
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

fn ruelle(args: &ZetaArgs) -> Result<Report, CliError> {
    let sigmas = parse_sweep("sigma", &args.sigma)?;
    if !args.sigma_im.is_finite() {
        return Err(CliError::Usage("--sigma-im: must be finite".into()));
    }
    let mut sources: Vec<(String, String, LengthSpectrum)> = Vec::new();
    if let Some(s) = &args.theta {
        for th in parse_sweep("theta", s)? {
            sources.push(("circle".into(), f(th), trace::circle_length_spectrum(th)));
        }
    }
    if let Some(p) = &args.spectrum {
        sources.push((p.display().to_string(), String::new(), LengthSpectrum::load(p).map_err(blame("spectrum"))?));
    }
    if sources.is_empty() {
        return Err(CliError::Usage("--spectrum: the Ruelle zeta needs --spectrum FILE or --theta".into()));
    }
    let mut tb = Table::new(&[
        "source", "theta", "sigma_re", "sigma_im", "xi_re", "xi_im", "r_re", "r_im", "closed_re", "closed_im",
    ]);
    let mut plot = PlotData::default();
    for (name, theta, spec) in &sources {
        for &re in &sigmas {
            let sigma = Complex64::new(re, args.sigma_im);
            // the series is only reported inside its half-plane of convergence
            let series = match trace::ruelle_xi(spec, sigma) {
                Ok(xi) => Some((xi, xi.exp())),
                Err(Error::DivergentRegion { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let closed = match trace::ruelle_closed_form(spec, sigma) {
                Ok(c) => Some(c),
                Err(Error::AcyclicityViolated(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let pair = |z: Option<Complex64>| z.map_or([String::new(), String::new()], |z| [f(z.re), f(z.im)]);
            let [xr, xi] = pair(series.map(|s| s.0));
            let [rr, ri] = pair(series.map(|s| s.1));
            let [cr, ci] = pair(closed);
            if let Some(c) = closed {
                plot.points.push((re, c.re));
            }
            tb.push(vec![name.clone(), theta.clone(), f(re), f(args.sigma_im), xr, xi, rr, ri, cr, ci]);
        }
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn fried(args: &FriedArgs) -> Result<Report, CliError> {
    let mut tb = Table::new(&["theta", "R0", "T2", "residual"]);
    let mut plot = PlotData::default();
    for th in parse_sweep("theta", &args.theta)? {
        let c = trace::fried_check_circle(th).map_err(blame("theta"))?;
        tb.push(vec![f(c.theta), f(c.r0), f(c.t_squared), f(c.residual)]);
        plot.points.push((th, c.r0));
    }
    Ok(Report { table: tb, plot: Some(plot), failed: false })
}

pub fn validate(args: &ValidateArgs) -> Result<Report, CliError> {
    let outcomes = run_all(args.full);
    // timings go to stderr so the CSV stays reproducible
    let mut tb = Table::new(&["module", "check", "value", "tolerance", "passed", "detail"]);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        tb.push(vec![o.module.into(), o.name.clone(), f(o.value), f(o.tolerance), o.passed.to_string(), o.detail.clone()]);
    }
    let secs: f64 = outcomes.iter().map(|o| o.seconds).sum();
    eprintln!("{} of {} checks passed in {secs:.2} s", outcomes.len() - failed, outcomes.len());
    Ok(Report { table: tb, plot: None, failed: failed > 0 })
}

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Orbital(a) => orbital(a),
        Command::Trace(a) => trace_cmd(a),
        Command::Poisson(a) => poisson(a),
        Command::SurfaceTrace(a) => surface_trace(a),
        Command::Hypo(a) => hypo_cmd(a),
        Command::AlgebraCheck(a) => algebra_check(a),
        Command::Torsion(a) => torsion(a),
        Command::Zeta(a) => zeta(a),
        Command::FriedCheck(a) => fried(a),
        Command::Validate(a) => validate(a),
    }
}
