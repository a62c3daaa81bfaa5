//! Command-line front end for `jacobi-cross`.
//!
//! Every subcommand writes a human-readable summary that ends in a
//! `RESULT: PASS` or `RESULT: FAIL rel_err=<v> tol=<v>` line. Verification
//! subcommands can also write a CSV file; floats there carry 17 significant
//! digits so that re-parsing recovers the exact binary value.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use jacobi_cross::asymptotics::{kuznecov_sum, verify_cutlocus, verify_identity, ConvergenceReport, SumTarget};
use jacobi_cross::quadrature::gauss_jacobi;
use jacobi_cross::special::{jacobi_eval, jacobi_eval_all, orthonormal_eval_all};
use jacobi_cross::{JacobiParams, SymmetricSpace};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jacobi_cross::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Outcome of a completed run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Pass,
    Fail { rel_err: f64, tol: f64 },
}

impl Verdict {
    fn from_check(rel_err: f64, tol: f64) -> Self {
        if rel_err <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail { rel_err, tol }
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jacobi-cross", version, about = "Jacobi polynomials and spectral sums on compact rank-one symmetric spaces")]
pub struct Cli {
    /// Worker threads for the parallel sums (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in spaces with their dimension, diameter and Jacobi data.
    Spaces,
    /// Evaluate P_ℓ^{(α,β)}(x).
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Cesàro mean of the weighted squared polynomials against its limit.
    VerifyIdentity {
        #[arg(long, conflicts_with_all = ["alpha", "beta"], required_unless_present_all = ["alpha", "beta"])]
        space: Option<SymmetricSpace>,
        #[arg(long, allow_negative_numbers = true, requires = "beta")]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true, requires = "alpha")]
        beta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        m_schedule: Schedule,
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Normalised cut-locus sums against 2/k.
    VerifyCutlocus {
        #[arg(long)]
        space: SymmetricSpace,
        #[arg(long)]
        m_schedule: Schedule,
        #[arg(long, default_value_t = 0.005)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Spectral sums over λ_ℓ < T against their leading-order prediction.
    Kuznecov {
        #[arg(long)]
        space: SymmetricSpace,
        /// `sphere:<r>` or `cutlocus`
        #[arg(long)]
        target: TargetArg,
        #[arg(long)]
        t_max: f64,
        /// Number of cutoffs T_i = t_max·i/steps, i = 1..=steps.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Allowed |ratio - 1| at t_max.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Gram matrix of the orthonormal polynomials under a Gauss–Jacobi rule.
    Orthogonality {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// ∫ φ_ℓ² A dr for the zonal eigenfunctions of a space.
    Normalization {
        #[arg(long)]
        space: SymmetricSpace,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// Strictly increasing list of positive degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule(pub Vec<usize>);

impl FromStr for Schedule {
    type Err = String;

    /// Either `m1,m2,...` or `geo:start:factor:count`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ms = if let Some(rest) = s.strip_prefix("geo:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let [start, factor, count] = parts[..] else {
                return Err("expected geo:start:factor:count".into());
            };
            let start: usize = start.parse().map_err(|_| format!("bad start '{start}'"))?;
            let factor: f64 = factor.parse().map_err(|_| format!("bad factor '{factor}'"))?;
            let count: u32 = count.parse().map_err(|_| format!("bad count '{count}'"))?;
            if !(factor > 1.0 && factor.is_finite()) {
                return Err("factor must exceed 1".into());
            }
            (0..count).map(|i| (start as f64 * factor.powi(i as i32)).round() as usize).collect()
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad entry '{t}'")))
                .collect::<Result<Vec<_>, _>>()?
        };
        if ms.is_empty() {
            return Err("schedule is empty".into());
        }
        if ms[0] == 0 {
            return Err("entries must be positive".into());
        }
        if ms.windows(2).any(|w| w[0] >= w[1]) {
            return Err("entries must be strictly increasing".into());
        }
        Ok(Schedule(ms))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetArg(pub SumTarget);

impl std::fmt::Display for TargetArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            SumTarget::DistanceSphere(r) => write!(f, "sphere:{r}"),
            SumTarget::CutLocus => f.write_str("cutlocus"),
        }
    }
}

impl FromStr for TargetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "cutlocus" {
            return Ok(TargetArg(SumTarget::CutLocus));
        }
        let r = s
            .strip_prefix("sphere:")
            .ok_or_else(|| format!("expected sphere:<r> or cutlocus, got '{s}'"))?;
        let r: f64 = r.parse().map_err(|_| format!("bad radius '{r}'"))?;
        Ok(TargetArg(SumTarget::DistanceSphere(r)))
    }
}

/// 17 significant digits.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_csv(path: &PathBuf, header: [&str; 4], rows: &[[String; 4]]) -> Result<(), CliError> {
    let wrap = |source| CliError::Csv { path: path.clone(), source };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(wrap)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| wrap(e.into()))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {tol}")))
    }
}

/// Runs `cli`, appending the summary to `out`.
///
/// Nothing is appended when an error is returned.
pub fn run(cli: &Cli, out: &mut String) -> Result<Verdict, CliError> {
    match cli.threads {
        Some(n) => {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(|| dispatch(&cli.command, out))
        }
        None => dispatch(&cli.command, out),
    }
}

fn dispatch(command: &Command, out: &mut String) -> Result<Verdict, CliError> {
    let mut buf = String::new();
    let verdict = match command {
        Command::Spaces => spaces(&mut buf),
        Command::Eval { alpha, beta, degree, x } => {
            if !x.is_finite() {
                return Err(CliError::Usage(format!("--x must be finite, got {x}")));
            }
            let params = JacobiParams::new(*alpha, *beta)?;
            let _ = writeln!(buf, "{}", jacobi_eval(&params, *degree, *x));
            Ok(Verdict::Pass)
        }
        Command::VerifyIdentity { space, alpha, beta, x, m_schedule, tol, csv } => {
            check_tol(*tol)?;
            let params = match (space, alpha, beta) {
                (Some(s), _, _) => s.jacobi_params(),
                (None, Some(a), Some(b)) => JacobiParams::new(*a, *b)?,
                _ => return Err(CliError::Usage("give --space or both --alpha and --beta".into())),
            };
            let report = verify_identity(&params, *x, &m_schedule.0, *tol)?;
            let _ = writeln!(buf, "verify-identity alpha={} beta={} x={x}", params.alpha(), params.beta());
            report_summary(&mut buf, &report, csv)
        }
        Command::VerifyCutlocus { space, m_schedule, tol, csv } => {
            check_tol(*tol)?;
            let report = verify_cutlocus(space, &m_schedule.0, *tol)?;
            let _ = writeln!(buf, "verify-cutlocus space={space}");
            report_summary(&mut buf, &report, csv)
        }
        Command::Kuznecov { space, target, t_max, steps, tol, csv } => {
            kuznecov(&mut buf, space, *target, *t_max, *steps, *tol, csv)
        }
        Command::Orthogonality { alpha, beta, max_degree, nodes, tol, csv } => {
            orthogonality(&mut buf, *alpha, *beta, *max_degree, *nodes, *tol, csv)
        }
        Command::Normalization { space, max_degree, tol } => normalization(&mut buf, space, *max_degree, *tol),
    }?;
    match verdict {
        Verdict::Pass => buf.push_str("RESULT: PASS\n"),
        Verdict::Fail { rel_err, tol } => {
            let _ = writeln!(buf, "RESULT: FAIL rel_err={} tol={}", sci(rel_err), sci(tol));
        }
    }
    out.push_str(&buf);
    Ok(verdict)
}

fn spaces(buf: &mut String) -> Result<Verdict, CliError> {
    let catalog = [
        SymmetricSpace::sphere(1)?,
        SymmetricSpace::sphere(2)?,
        SymmetricSpace::sphere(3)?,
        SymmetricSpace::complex_projective(2)?,
        SymmetricSpace::complex_projective(3)?,
        SymmetricSpace::quaternionic_projective(2)?,
        SymmetricSpace::quaternionic_projective(3)?,
        SymmetricSpace::cayley_plane(),
    ];
    let _ = writeln!(
        buf,
        "{:<9} {:>3} {:>3} {:>3} {:>10} {:>6} {:>5} {:>5} {:>3} {:>12} {:>12}",
        "space", "d", "p", "q", "L", "omega", "alpha", "beta", "k", "nu", "volume"
    );
    for s in catalog {
        let sp = s.params();
        let (k, nu) = match sp.cut_locus {
            Some(c) => (c.codim.to_string(), format!("{:.6}", c.measure)),
            None => ("-".into(), "-".into()),
        };
        let _ = writeln!(
            buf,
            "{:<9} {:>3} {:>3} {:>3} {:>10.7} {:>6} {:>5} {:>5} {:>3} {:>12} {:>12.6}",
            s.to_string(),
            sp.dim,
            sp.p,
            sp.q,
            sp.diameter,
            sp.omega,
            sp.alpha,
            sp.beta,
            k,
            nu,
            s.volume()
        );
    }
    Ok(Verdict::Pass)
}

fn report_summary(buf: &mut String, report: &ConvergenceReport, csv: &Option<PathBuf>) -> Result<Verdict, CliError> {
    for e in &report.entries {
        let _ = writeln!(buf, "m={} lhs={} target={} rel_error={}", e.m, sci(e.lhs), sci(e.target), sci(e.rel_err));
    }
    match report.fitted_rate {
        Some(rate) => {
            let _ = writeln!(buf, "fitted_rate={rate:.4}");
        }
        None => buf.push_str("fitted_rate=n/a\n"),
    }
    if let Some(path) = csv {
        let rows: Vec<[String; 4]> = report
            .entries
            .iter()
            .map(|e| [e.m.to_string(), sci(e.lhs), sci(e.target), sci(e.rel_err)])
            .collect();
        write_csv(path, ["m", "lhs", "target", "rel_error"], &rows)?;
    }
    Ok(Verdict::from_check(report.final_rel_err(), report.tol))
}

fn kuznecov(
    buf: &mut String,
    space: &SymmetricSpace,
    target: TargetArg,
    t_max: f64,
    steps: usize,
    tol: f64,
    csv: &Option<PathBuf>,
) -> Result<Verdict, CliError> {
    check_tol(tol)?;
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(CliError::Usage(format!("--t-max must be positive, got {t_max}")));
    }
    let _ = writeln!(buf, "kuznecov space={space} target={target}");
    let mut rows = Vec::with_capacity(steps);
    let mut last = None;
    for i in 1..=steps {
        let t = t_max * i as f64 / steps as f64;
        let s = kuznecov_sum(space, target.0, t)?;
        let _ = writeln!(
            buf,
            "T={} degrees<={} empirical={} predicted={} ratio={}",
            sci(t),
            s.max_degree,
            sci(s.empirical),
            sci(s.predicted),
            sci(s.ratio())
        );
        rows.push([sci(t), sci(s.empirical), sci(s.predicted), sci(s.ratio())]);
        last = Some(s);
    }
    if let Some(path) = csv {
        write_csv(path, ["T", "empirical", "predicted", "ratio"], &rows)?;
    }
    let ratio = last.expect("steps >= 1").ratio();
    Ok(Verdict::from_check((ratio - 1.0).abs(), tol))
}

fn orthogonality(
    buf: &mut String,
    alpha: f64,
    beta: f64,
    max_degree: usize,
    nodes: usize,
    tol: f64,
    csv: &Option<PathBuf>,
) -> Result<Verdict, CliError> {
    check_tol(tol)?;
    let params = JacobiParams::new(alpha, beta)?;
    let rule = gauss_jacobi(&params, nodes)?;
    let values: Vec<Vec<f64>> = rule.nodes().iter().map(|&x| orthonormal_eval_all(&params, max_degree, x)).collect();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..=max_degree {
        for j in 0..=max_degree {
            let g: f64 = rule.weights().iter().zip(&values).map(|(w, v)| w * v[i] * v[j]).sum();
            let err = (g - if i == j { 1.0 } else { 0.0 }).abs();
            worst = worst.max(err);
            rows.push([i.to_string(), j.to_string(), sci(g), sci(err)]);
        }
    }
    let _ = writeln!(
        buf,
        "orthogonality alpha={alpha} beta={beta} max_degree={max_degree} nodes={nodes}\nmax_abs_error={}",
        sci(worst)
    );
    if let Some(path) = csv {
        write_csv(path, ["i", "j", "gram_entry", "abs_error"], &rows)?;
    }
    Ok(Verdict::from_check(worst, tol))
}

fn normalization(buf: &mut String, space: &SymmetricSpace, max_degree: usize, tol: f64) -> Result<Verdict, CliError> {
    check_tol(tol)?;
    let params = space.jacobi_params();
    // exact for φ_ℓ² up to ℓ = max_degree
    let rule = gauss_jacobi(&params, max_degree + 1)?;
    // the pushforward density is this constant times the Jacobi weight
    let factor = space.pushforward_density(0.0)?;
    let values: Vec<Vec<f64>> = rule.nodes().iter().map(|&x| jacobi_eval_all(&params, max_degree, x)).collect();
    let _ = writeln!(buf, "normalization space={space}");
    let mut worst = 0.0f64;
    for ell in 0..=max_degree {
        let c2 = space.normalizing_constant(ell).powi(2);
        let integral: f64 = factor * c2 * rule.weights().iter().zip(&values).map(|(w, v)| w * v[ell] * v[ell]).sum::<f64>();
        let err = (integral - 1.0).abs();
        worst = worst.max(err);
        let _ = writeln!(buf, "l={ell} integral={}", sci(integral));
    }
    let _ = writeln!(buf, "max_rel_error={}", sci(worst));
    Ok(Verdict::from_check(worst, tol))
}

/// A clap error folded onto one line, without the usage and help trailer.
pub fn one_line(err: &clap::Error) -> String {
    if err.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
        return "error: a subcommand is required (see --help)".to_string();
    }
    let text = err.to_string();
    let parts: Vec<&str> = text
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .filter(|l| !l.is_empty())
        .collect();
    if parts.is_empty() {
        "error: invalid usage".to_string()
    } else {
        parts.join(" ")
    }
}
