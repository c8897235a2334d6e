//! `zrenyi`: entropies, bounds and verification suites from the command line.
//!
//! Exit status is 0 when everything passes, 1 when an inequality fails and
//! 2 on usage errors.

mod dist;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use zrenyi::bounds::{bernoulli_exp_charfn_bound, np_crossing_level, np_phi_monotone, np_single_crossing, BoundFn};
use zrenyi::extremal::{enumerate_extreme_points, min_entropy_over_extremes, DensityBound, Guard};
use zrenyi::families::bernoulli;
use zrenyi::report::{Cell, IneqReport, Table};
use zrenyi::spectral::hausdorff_young_check;
use zrenyi::verify::lo::{lo_erdos_comparison, lo_q_bound, lo_reduce, lo_renyi_bound};
use zrenyi::verify::scan::{shannon_counterexample_scan, tightness_scan, Family};
use zrenyi::verify::suite::{self, SuiteRun, DEFAULT_SEED};
use zrenyi::verify::{
    check_bc_upper, check_bernoulli_repi, check_bmm_lower, check_delta_le_12var_bernoulli,
    check_entropy_variance_bound, check_min_epi, check_min_epi_reversal, check_small_value_min_epi,
};
use zrenyi::{char_lq_norm, convolve_all, convolve_fft, delta, renyi_entropy, Error, RenyiOrder, WeightVector};

use dist::{parse_dist, parse_list};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            // A violated monotonicity or crossing condition counts as a failed check.
            CliError::Lib(Error::NotMonotone { .. } | Error::MultipleCrossings { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_alpha(s: &str) -> Result<RenyiOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "zrenyi", version, about = "Rényi entropies and entropy power bounds on the integers")]
struct Cli {
    /// Output format. CSV floats carry 17 significant digits.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Quadrature tolerance (charnorm, hausdorff-young).
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Lift the soft limits of `extremes min` (hard limits still apply).
    #[arg(long, global = true)]
    guard_override: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// H_α in nats.
    Entropy {
        #[arg(long)]
        dist: String,
        #[arg(long, value_parser = parse_alpha)]
        alpha: RenyiOrder,
    },
    /// Δ_α = exp(2H_α) − 1.
    Delta {
        #[arg(long)]
        dist: String,
        #[arg(long, value_parser = parse_alpha)]
        alpha: RenyiOrder,
    },
    /// Law of the independent sum, as {"offset", "probs"} (CSV: k,mass).
    Convolve {
        #[arg(long, required = true)]
        dist: Vec<String>,
        /// Use FFT products throughout.
        #[arg(long)]
        fft: bool,
    },
    /// (1/2π)∫|φ|^q over [−π, π].
    Charnorm {
        #[arg(long)]
        dist: String,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
    /// Extreme points of {f on 0..m : f ≤ 1/C}.
    #[command(subcommand)]
    Extremes(ExtremesCmd),
    /// Inequality checks, on given inputs or on a random suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Parameter scans (CSV columns listed per scan).
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Point probabilities of weighted Bernoulli sums.
    #[command(subcommand)]
    Lo(LoCmd),
}

#[derive(Debug, Subcommand)]
enum ExtremesCmd {
    /// List the extreme points; CSV columns C,m,A,x.
    List {
        #[arg(long)]
        c: String,
        #[arg(long)]
        m: usize,
    },
    /// Brute-force minimum of H_α over sums of extreme points.
    Min {
        /// Comma-separated bounds, e.g. 2,3/2.
        #[arg(long)]
        cs: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_alpha)]
        alpha: RenyiOrder,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteKind {
    Random,
}

#[derive(Debug, Args)]
struct SuiteOpts {
    /// Run a seeded random suite instead of the given inputs.
    #[arg(long, value_enum)]
    suite: Option<SuiteKind>,
    /// Largest number of summands in random instances.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    instances: usize,
    /// Largest support of random pmfs.
    #[arg(long, default_value_t = 50)]
    support: usize,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Δ_α(Bernoulli(p)) ≤ 12 Var.
    Delta12var {
        #[arg(long)]
        p: f64,
        #[arg(long, value_parser = parse_alpha)]
        alpha: RenyiOrder,
    },
    /// Δ_α(ΣX_i) ≥ (α'/6)ΣΔ_α(X_i); factors as "p,p;p,…".
    Repi {
        #[arg(long)]
        ps: Option<String>,
        #[arg(long, value_parser = parse_alpha, default_value = "inf")]
        alpha: RenyiOrder,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Δ∞(ΣX_i) ≥ c ΣΔ∞(X_i) for c = 1/22 and 1/(16+36/π²).
    MinEpi {
        #[arg(long)]
        dist: Vec<String>,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Δ∞(ΣX_i) ≤ 6 ΣΔ∞(X_i); factors as "p,p;p,…".
    Reversal {
        #[arg(long)]
        ps: Option<String>,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Δ∞(ΣX_i) ≥ (π²/36)ΣΔ∞(X_i) when all max masses are ≥ 1/2.
    SmallValue {
        #[arg(long)]
        dist: Vec<String>,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Δ∞ ≤ 12 Var.
    Bc {
        #[arg(long)]
        dist: Option<String>,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Δ∞ ≥ 2 Var for symmetric log-concave laws.
    Bmm {
        #[arg(long)]
        dist: Option<String>,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// H_α of a Poisson-binomial against its variance bounds.
    EntropyVariance {
        #[arg(long)]
        ps: Option<String>,
        #[arg(long, value_parser = parse_alpha, default_value = "inf")]
        alpha: RenyiOrder,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// ‖f‖_p ≤ ‖f̂‖_{p'}.
    HausdorffYoung {
        #[arg(long)]
        dist: String,
        #[arg(long, value_parser = parse_alpha)]
        p: RenyiOrder,
    },
    /// |φ(t)| ≤ exp(−Δ∞ t²/24) on a grid for Bernoulli(p).
    ExpCharfn {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Δ_1(ΣX_i) ≥ ΣΔ_1(X_i) for n iid Bernoulli(θ); fails for small θ.
    Shannon {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        n: usize,
    },
    /// Single crossing of w_λ − v_λ and monotonicity of the normalized difference.
    Np {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value = "1,2,4,8,16")]
        s: String,
    },
}

#[derive(Debug, Subcommand)]
enum ScanCmd {
    /// 2α'Var ≤ Δ_α along a grid; columns family,param,alpha,lhs,rhs,slack.
    Tightness {
        /// bernoulli_p, poisson_lambda or iid_binomial.
        #[arg(long)]
        family: String,
        #[arg(long)]
        grid: String,
        #[arg(long, value_parser = parse_alpha, default_value = "inf")]
        alpha: RenyiOrder,
    },
    /// Δ_1(ΣX)/ΣΔ_1(X) for iid Bernoulli(θ); columns theta,n,lhs,rhs,ratio.
    Shannon {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 50)]
        nmax: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LoCmd {
    /// Signs of the weights.
    Reduce {
        #[arg(long)]
        weights: String,
    },
    /// Q(S, 0) against both Gaussian bounds.
    Bound {
        #[arg(long)]
        weights: String,
        /// One probability for all weights, or one per weight.
        #[arg(long)]
        p: String,
    },
    /// H_α(S) against both variance bounds.
    Renyi {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        p: String,
        #[arg(long, value_parser = parse_alpha)]
        alpha: RenyiOrder,
    },
    /// Exact Q for fair unit sums against the binomial value and the bound;
    /// columns n,q,erdos,exact_match,bound,ratio.
    Erdos {
        #[arg(long, default_value_t = 60)]
        nmax: usize,
    },
}

enum Output {
    Value(Value, Table),
    Reports(Vec<IneqReport>),
    Table(Table),
}

fn factor_lists(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    s.split(';').map(parse_list).collect()
}

fn weights_and_ps(weights: &str, p: &str) -> Result<(WeightVector, Vec<f64>), CliError> {
    let v: WeightVector = weights.parse()?;
    let mut ps = parse_list(p)?;
    if ps.len() == 1 {
        ps = vec![ps[0]; v.len()];
    }
    Ok((v, ps))
}

fn missing(what: &str) -> CliError {
    CliError::Usage(format!("give {what} or --suite random"))
}

fn run_suite(opts: &SuiteOpts, run: impl FnOnce(&SuiteOpts) -> zrenyi::Result<SuiteRun>) -> Result<Option<Output>, CliError> {
    match opts.suite {
        Some(SuiteKind::Random) => Ok(Some(Output::Reports(run(opts)?.reports))),
        None => Ok(None),
    }
}

fn single(name: &str, value: f64, extra: Value) -> Output {
    let mut t = Table::new(&["quantity", "value"]);
    t.push(vec![name.into(), value.into()]);
    let mut obj = extra;
    obj[name] = json!(value);
    Output::Value(obj, t)
}

fn verify(cmd: VerifyCmd, seed: u64, tol: f64) -> Result<Output, CliError> {
    let out = match cmd {
        VerifyCmd::Delta12var { p, alpha } => Output::Reports(vec![check_delta_le_12var_bernoulli(p, alpha)?]),
        VerifyCmd::Repi { ps, alpha, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::repi_suite(seed, o.instances, o.n, alpha))? {
                return Ok(o);
            }
            let ps = factor_lists(&ps.ok_or_else(|| missing("--ps"))?)?;
            Output::Reports(vec![check_bernoulli_repi(&ps, alpha)?])
        }
        VerifyCmd::MinEpi { dist, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::min_epi_suite(seed, o.instances, o.n, o.support))? {
                return Ok(o);
            }
            if dist.is_empty() {
                return Err(missing("--dist"));
            }
            let fs = dist.iter().map(|d| parse_dist(d)).collect::<Result<Vec<_>, _>>()?;
            Output::Reports(check_min_epi(&fs)?)
        }
        VerifyCmd::Reversal { ps, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::reversal_suite(seed, o.instances, o.n))? {
                return Ok(o);
            }
            let ps = factor_lists(&ps.ok_or_else(|| missing("--ps"))?)?;
            Output::Reports(vec![check_min_epi_reversal(&ps)?])
        }
        VerifyCmd::SmallValue { dist, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::small_value_suite(seed, o.instances, o.n))? {
                return Ok(o);
            }
            if dist.is_empty() {
                return Err(missing("--dist"));
            }
            let fs = dist.iter().map(|d| parse_dist(d)).collect::<Result<Vec<_>, _>>()?;
            Output::Reports(vec![check_small_value_min_epi(&fs)?])
        }
        VerifyCmd::Bc { dist, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::bc_suite(seed, o.instances, o.support))? {
                return Ok(o);
            }
            let f = parse_dist(&dist.ok_or_else(|| missing("--dist"))?)?;
            Output::Reports(vec![check_bc_upper(&f)])
        }
        VerifyCmd::Bmm { dist, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::bmm_suite(seed, o.instances))? {
                return Ok(o);
            }
            let f = parse_dist(&dist.ok_or_else(|| missing("--dist"))?)?;
            Output::Reports(vec![check_bmm_lower(&f)?])
        }
        VerifyCmd::EntropyVariance { ps, alpha, opts } => {
            if let Some(o) = run_suite(&opts, |o| suite::entropy_variance_suite(seed, o.instances, o.n, alpha))? {
                return Ok(o);
            }
            let ps = parse_list(&ps.ok_or_else(|| missing("--ps"))?)?;
            Output::Reports(check_entropy_variance_bound(&ps, alpha)?)
        }
        VerifyCmd::HausdorffYoung { dist, p } => {
            let f = parse_dist(&dist)?;
            Output::Reports(vec![hausdorff_young_check(&f, p.value(), tol)?])
        }
        VerifyCmd::ExpCharfn { p, points } => {
            if points < 2 {
                return Err(CliError::Usage("--points must be at least 2".into()));
            }
            let grid: Vec<f64> = (0..points)
                .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / (points - 1) as f64)
                .collect();
            Output::Reports(vec![bernoulli_exp_charfn_bound(&bernoulli(p)?, &grid)?])
        }
        VerifyCmd::Shannon { theta, n } => {
            let t = shannon_counterexample_scan(&[theta], n)?;
            let row = t.rows.last().expect("n >= 1");
            let cell = |i: usize| match &row[i] {
                Cell::Float(x) => *x,
                _ => unreachable!("float column"),
            };
            let r = IneqReport::ge("shannon_epi", cell(2), cell(3), 1e-12 * cell(3).max(1.0))
                .with_param("theta", theta)
                .with_param("n", n);
            Output::Reports(vec![r])
        }
        VerifyCmd::Np { lambda, s } => {
            let w = BoundFn::w_lambda(lambda)?;
            let v = BoundFn::v_lambda(lambda)?;
            let crossing = np_single_crossing(&w, &v, zrenyi::bounds::CROSSING_RESOLUTION)?;
            match np_crossing_level(&w, &v, zrenyi::bounds::CROSSING_RESOLUTION)? {
                Some(t0) => {
                    let r = np_phi_monotone(&w, &v, t0, &parse_list(&s)?)?
                        .with_param("crossing", crossing)
                        .with_param("lambda", lambda);
                    Output::Reports(vec![r])
                }
                None => {
                    eprintln!("no positive crossing level; monotonicity check skipped");
                    Output::Reports(Vec::new())
                }
            }
        }
    };
    Ok(out)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    let out = match cli.cmd {
        Cmd::Entropy { dist, alpha } => {
            let h = renyi_entropy(&parse_dist(&dist)?, alpha);
            single("entropy", h, json!({"dist": dist, "alpha": alpha}))
        }
        Cmd::Delta { dist, alpha } => {
            let d = delta(&parse_dist(&dist)?, alpha);
            single("delta", d, json!({"dist": dist, "alpha": alpha}))
        }
        Cmd::Convolve { dist, fft } => {
            let fs = dist.iter().map(|d| parse_dist(d)).collect::<Result<Vec<_>, _>>()?;
            let law = if fft {
                let mut acc = fs[0].clone();
                for f in &fs[1..] {
                    acc = convolve_fft(&acc, f)?;
                }
                acc
            } else {
                convolve_all(fs.iter())
            };
            let mut t = Table::new(&["k", "mass"]);
            for (k, p) in law.iter() {
                t.push(vec![Cell::Int(k), p.into()]);
            }
            Output::Value(serde_json::to_value(&law).expect("pmf serializes"), t)
        }
        Cmd::Charnorm { dist, q } => {
            let v = char_lq_norm(&parse_dist(&dist)?, q, cli.tol)?;
            single("norm", v, json!({"dist": dist, "q": q, "tol": cli.tol}))
        }
        Cmd::Extremes(ExtremesCmd::List { c, m }) => {
            let c: DensityBound = c.parse()?;
            let pts = enumerate_extreme_points(c, m)?;
            let mut t = Table::new(&["C", "m", "A", "x"]);
            for p in &pts {
                let a: Vec<String> = p.a.iter().map(|i| i.to_string()).collect();
                t.push(vec![
                    p.c.to_string().into(),
                    Cell::Int(p.m as i64),
                    a.join(" ").into(),
                    p.x.map(|x| x.to_string()).unwrap_or_default().into(),
                ]);
            }
            Output::Value(serde_json::to_value(&pts).expect("specs serialize"), t)
        }
        Cmd::Extremes(ExtremesCmd::Min { cs, m, alpha }) => {
            let cs = cs
                .split(',')
                .map(|c| c.trim().parse::<DensityBound>())
                .collect::<Result<Vec<_>, _>>()?;
            let guard = if cli.guard_override { Guard::overridden() } else { Guard::default() };
            let r = min_entropy_over_extremes(&cs, m, alpha, guard)?;
            let mut t = Table::new(&["alpha", "entropy", "tuples"]);
            t.push(vec![alpha.to_string().into(), r.entropy.into(), (r.tuples.to_string()).into()]);
            Output::Value(serde_json::to_value(&r).expect("result serializes"), t)
        }
        Cmd::Verify(v) => verify(v, seed, cli.tol)?,
        Cmd::Scan(ScanCmd::Tightness { family, grid, alpha }) => {
            let family: Family = family.parse()?;
            Output::Table(tightness_scan(family, &parse_list(&grid)?, alpha)?)
        }
        Cmd::Scan(ScanCmd::Shannon { theta, nmax }) => {
            Output::Table(shannon_counterexample_scan(&parse_list(&theta)?, nmax)?)
        }
        Cmd::Lo(LoCmd::Reduce { weights }) => {
            let v: WeightVector = weights.parse()?;
            let signs = lo_reduce(&v);
            let mut t = Table::new(&["index", "sign"]);
            for (i, s) in signs.iter().enumerate() {
                t.push(vec![Cell::Int(i as i64), Cell::Int(*s as i64)]);
            }
            Output::Value(json!({"weights": v, "signs": signs}), t)
        }
        Cmd::Lo(LoCmd::Bound { weights, p }) => {
            let (v, ps) = weights_and_ps(&weights, &p)?;
            Output::Reports(lo_q_bound(&v, &ps)?)
        }
        Cmd::Lo(LoCmd::Renyi { weights, p, alpha }) => {
            let (v, ps) = weights_and_ps(&weights, &p)?;
            Output::Reports(lo_renyi_bound(&v, &ps, alpha)?)
        }
        Cmd::Lo(LoCmd::Erdos { nmax }) => Output::Table(lo_erdos_comparison(nmax)?),
    };
    Ok(out)
}

fn reports_table(reports: &[IneqReport]) -> Table {
    let mut t = Table::new(&["name", "pass", "lhs", "rhs", "slack", "tolerance", "seed", "params"]);
    for r in reports {
        t.push(vec![
            r.name.clone().into(),
            r.pass.to_string().into(),
            r.lhs.into(),
            r.rhs.into(),
            r.slack.into(),
            r.tolerance.into(),
            r.seed.map(|s| s.to_string()).unwrap_or_default().into(),
            serde_json::to_string(&r.params).expect("params serialize").into(),
        ]);
    }
    t
}

fn render(out: &Output, format: Format) -> (String, bool) {
    let pass = match out {
        Output::Reports(r) => r.iter().all(|r| r.pass),
        _ => true,
    };
    let text = match (out, format) {
        (Output::Value(v, _), Format::Json) => serde_json::to_string_pretty(v).expect("json"),
        (Output::Value(_, t), Format::Csv) | (Output::Table(t), Format::Csv) => t.to_csv_string(),
        (Output::Table(t), Format::Json) => serde_json::to_string_pretty(&t.to_json()).expect("json"),
        (Output::Reports(r), Format::Json) => serde_json::to_string_pretty(r).expect("json"),
        (Output::Reports(r), Format::Csv) => reports_table(r).to_csv_string(),
    };
    (text, pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, path) = (cli.format, cli.out.clone());
    let out = match run(cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let (mut text, pass) = render(&out, format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &path {
        Some(p) => fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if !pass {
        if let Output::Reports(r) = &out {
            let failed = r.iter().filter(|r| !r.pass).count();
            eprintln!("{failed} of {} checks failed", r.len());
        }
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
