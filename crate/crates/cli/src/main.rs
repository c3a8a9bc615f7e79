//! `cramped`: certificates, orbit scans and GHC verdicts for subalgebra
//! inclusions from the command line.
//!
//! Exit status: 0 success, 1 input error, 2 inconclusive, 3 hypothesis not
//! applicable.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cramped::branching::{catalog_embedding, load_embedding, EmbeddingSpec};
use cramped::crampedness::{certify, dimension_obstruction, CertifyOutcome, DEFAULT_M_MAX};
use cramped::ghcsupport::{ghc_verdict, load_support, n_gamma_sample, GhcStatus, Membership};
use cramped::liecore::{RootSystem, Weight};
use cramped::momentgeo::{
    moment_image_distance, scan_fundamental_orbits, wz_orbit_property, CompactModel, OptimizerConfig,
};
use cramped::rational::{self, Q};

use output::{list, Format, Report, Table};

const EXIT_INPUT: u8 = 1;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_NOT_APPLICABLE: i32 = 3;

#[derive(Parser)]
#[command(name = "cramped", version, about = "Crampedness certificates, moment-image scans and GHC verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for every randomized step; recorded in all output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores; results do not depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Args)]
struct PairArgs {
    /// Catalog pair such as `principal-sl2:A2`, `diagonal:A1`, `factor:A1xA1`, `sl-in-sl:2`, `identity:G2`.
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    pair: Option<String>,
    /// Embedding-spec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    grad_tol: f64,
    #[arg(long, default_value_t = 0.1)]
    step_init: f64,
    /// Meeting threshold, relative to `1 + ‖ξ_λ‖`.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Root data of a system descriptor such as `A2` or `A1xG2`.
    Roots {
        #[arg(long)]
        system: String,
    },
    /// Decompose `V_λ` under `h`.
    Branch {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Smallest `h`-constituent dimension of `V_λ`.
    B {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Search for a crampedness certificate.
    Certify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: u64,
    },
    /// Distances from each fundamental orbit to `h^⊥`.
    MomentScan {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Distance from the orbit through `λ` (real coordinates allowed) to `h^⊥`.
    OrbitDistance {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// GHC verdict for a support file.
    GhcCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        support: PathBuf,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: u64,
        /// Search for a crampedness certificate and use it if found.
        #[arg(long)]
        use_certificate: bool,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Check that sampled orbits of dimension above `2·dim h` meet `h^⊥`.
    WzCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
    /// Dominant weights in a box within `γ` of the moment image.
    NGamma {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gamma: f64,
        #[arg(long = "box", default_value_t = 4)]
        bound: i64,
        #[command(flatten)]
        opt: OptimizerArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(EXIT_INPUT);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool configured once");
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

type CliResult<T> = Result<T, String>;

fn err(e: cramped::Error) -> String {
    e.to_string()
}

fn load_pair(args: &PairArgs) -> CliResult<EmbeddingSpec> {
    match (&args.pair, &args.spec) {
        (Some(p), None) => catalog_embedding(p).map_err(err),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            load_embedding(&text).map_err(err)
        }
        _ => Err("exactly one of --pair and --spec is required".into()),
    }
}

fn pair_info(spec: &EmbeddingSpec) -> Value {
    json!({ "name": spec.name(), "g": spec.g().descriptor(), "h": spec.h().descriptor() })
}

fn parse_lambda(text: &str, rank: usize) -> CliResult<Vec<Q>> {
    let coords = text
        .split(',')
        .map(|t| rational::parse_q(t.trim()).ok_or_else(|| format!("bad coordinate `{}` in --lambda", t.trim())))
        .collect::<CliResult<Vec<Q>>>()?;
    if coords.len() != rank {
        return Err(format!("--lambda has {} coordinates, rank is {rank}", coords.len()));
    }
    Ok(coords)
}

fn parse_integral(text: &str, system: &std::sync::Arc<RootSystem>) -> CliResult<Vec<i64>> {
    let coords = parse_lambda(text, system.rank())?;
    let w = Weight::new(system, coords).map_err(err)?;
    w.dominant_integral().map_err(err)
}

fn optimizer(opt: &OptimizerArgs, seed: u64) -> CliResult<OptimizerConfig> {
    let cfg = OptimizerConfig {
        restarts: opt.restarts,
        max_iters: opt.max_iters,
        grad_tol: opt.grad_tol,
        step_init: opt.step_init,
        seed,
    };
    cfg.validate()?;
    if !(opt.tol > 0.0) {
        return Err("--tol must be positive".into());
    }
    Ok(cfg)
}

fn status_name(status: GhcStatus) -> String {
    serde_json::to_value(status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn fmt_f(x: f64) -> String {
    format!("{x:.9}")
}

fn run(cli: &Cli) -> CliResult<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::Roots { system } => cmd_roots(system, seed),
        Command::Branch { pair, lambda } => cmd_branch(pair, lambda, seed),
        Command::B { pair, lambda } => cmd_b(pair, lambda, seed),
        Command::Certify { pair, mmax } => cmd_certify(pair, *mmax, seed),
        Command::MomentScan { pair, opt } => cmd_moment_scan(pair, opt, seed),
        Command::OrbitDistance { pair, lambda, opt } => cmd_orbit_distance(pair, lambda, opt, seed),
        Command::GhcCheck { pair, support, mmax, use_certificate, opt } => {
            cmd_ghc_check(pair, support, *mmax, *use_certificate, opt, seed)
        }
        Command::WzCheck { pair, samples, opt } => cmd_wz_check(pair, *samples, opt, seed),
        Command::NGamma { pair, gamma, bound, opt } => cmd_n_gamma(pair, *gamma, *bound, opt, seed),
    }
}

fn cmd_roots(system: &str, seed: u64) -> CliResult<Report> {
    let rs = RootSystem::parse(system).map_err(err)?;
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({ "simple": r.simple, "weight": r.weight, "height": r.height }))
        .collect();
    let norms: Vec<String> = rs.simple_root_norms().iter().map(rational::format_q).collect();
    let result = json!({
        "system": rs.descriptor(),
        "rank": rs.rank(),
        "dimension": rs.dimension(),
        "cartan_matrix": rs.cartan_matrix(),
        "simple_root_norms": norms,
        "rho": rs.rho(),
        "positive_roots": roots,
    });
    let mut report = Report::new("roots", None, seed, result);
    report.text.push(format!("system {} rank {} dimension {}", rs.descriptor(), rs.rank(), rs.dimension()));
    for row in rs.cartan_matrix() {
        report.text.push(format!("cartan {}", list(row)));
    }
    report.table = Table::new(vec!["index", "simple", "weight", "height"]);
    for (k, r) in rs.positive_roots().iter().enumerate() {
        report.text.push(format!("root {:>3} {} weight {}", k + 1, list(&r.simple), list(&r.weight)));
        report.table.push(vec![(k + 1).to_string(), list(&r.simple), list(&r.weight), r.height.to_string()]);
    }
    Ok(report)
}

fn cmd_branch(pair: &PairArgs, lambda: &str, seed: u64) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let lambda = parse_integral(lambda, spec.g())?;
    let parts = spec.branch_int(&lambda).map_err(err)?;
    let constituents: Vec<Value> = parts
        .iter()
        .map(|c| json!({ "highest": c.highest, "multiplicity": c.multiplicity, "dimension": c.dimension }))
        .collect();
    let dim = spec.g().weyl_dim_int(&lambda).map_err(err)?;
    let result = json!({ "lambda": lambda, "dimension": dim, "constituents": constituents });
    let mut report = Report::new("branch", Some(pair_info(&spec)), seed, result);
    report.text.push(format!("V{} (dim {dim}) restricts to:", list(&lambda)));
    report.table = Table::new(vec!["lambda", "highest", "multiplicity", "dimension"]);
    for c in &parts {
        report.text.push(format!("  {} x{} (dim {})", list(&c.highest), c.multiplicity, c.dimension));
        report.table.push(vec![list(&lambda), list(&c.highest), c.multiplicity.to_string(), c.dimension.to_string()]);
    }
    Ok(report)
}

fn cmd_b(pair: &PairArgs, lambda: &str, seed: u64) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let lambda = parse_integral(lambda, spec.g())?;
    let b = spec.b_of_lambda_int(&lambda).map_err(err)?;
    let inv = spec.invariant_dim_int(&lambda).map_err(err)?;
    let mut report =
        Report::new("b", Some(pair_info(&spec)), seed, json!({ "lambda": lambda, "b": b, "invariant_dim": inv }));
    report.text.push(format!("b{} = {b}", list(&lambda)));
    report.text.push(format!("invariant dimension {inv}"));
    report.table = Table::new(vec!["lambda", "b", "invariant_dim"]);
    report.table.push(vec![list(&lambda), b.to_string(), inv.to_string()]);
    Ok(report)
}

fn cmd_certify(pair: &PairArgs, mmax: u64, seed: u64) -> CliResult<Report> {
    if mmax == 0 {
        return Err("--mmax must be positive".into());
    }
    let spec = load_pair(pair)?;
    let outcome = certify(&spec, mmax).map_err(err)?;
    let doc = outcome.to_document();
    let obstruction = dimension_obstruction(&spec);
    let mut result = serde_json::to_value(&doc).expect("document serializes");
    result["dimension_obstruction"] = serde_json::to_value(obstruction).expect("serializes");
    let mut report = Report::new("certify", Some(pair_info(&spec)), seed, result);
    report.table = Table::new(vec!["status", "lambda", "b"]);
    match &outcome {
        CertifyOutcome::Certified(c) => {
            report.text.push(format!("status certified (mMax {mmax})"));
            report.text.push(format!("m = {}", list(&c.m)));
            for e in &c.box_entries {
                report.text.push(format!("  b{} = {}", list(&e.lambda), e.b));
                report.table.push(vec!["certified".into(), list(&e.lambda), e.b.to_string()]);
            }
            report.text.push(format!("bGH = {}", c.b_gh));
        }
        CertifyOutcome::Inconclusive { missing, .. } => {
            report.text.push(format!("status inconclusive (mMax {mmax})"));
            report.text.push(format!("no invariant found on lines {}", list(missing)));
            report.table.push(vec!["inconclusive".into(), String::new(), String::new()]);
            report.exit = EXIT_INCONCLUSIVE;
        }
    }
    report.text.push(format!("dimension obstruction: {obstruction:?}"));
    Ok(report)
}

fn cmd_moment_scan(pair: &PairArgs, opt: &OptimizerArgs, seed: u64) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let cfg = optimizer(opt, seed)?;
    let model = CompactModel::new(&spec).map_err(err)?;
    let scan = scan_fundamental_orbits(&model, &cfg, opt.tol);
    let verdict = if scan.all_meet { "yes" } else { "no" };
    let result = json!({ "rows": scan.rows, "surjective_evidence": verdict, "tol": opt.tol, "optimizer": cfg });
    let mut report = Report::new("moment-scan", Some(pair_info(&spec)), seed, result);
    report.table = Table::new(vec!["lambda", "distance", "meets", "iterations"]);
    for r in &scan.rows {
        let lam: Vec<i64> = r.lambda.iter().map(|&x| x as i64).collect();
        report.text.push(format!("omega_{} distance {} meets {}", r.index, fmt_f(r.distance), r.meets));
        report.table.push(vec![list(&lam), fmt_f(r.distance), r.meets.to_string(), r.iterations.to_string()]);
    }
    report.text.push(format!("surjective-evidence: {verdict}"));
    Ok(report)
}

fn cmd_orbit_distance(pair: &PairArgs, lambda: &str, opt: &OptimizerArgs, seed: u64) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let cfg = optimizer(opt, seed)?;
    let coords = parse_lambda(lambda, spec.g().rank())?;
    let real: Vec<f64> = coords.iter().map(rational::to_f64).collect();
    let model = CompactModel::new(&spec).map_err(err)?;
    let d = moment_image_distance(&model, &real, &cfg);
    let meets = d.meets(opt.tol);
    let shown: Vec<String> = coords.iter().map(rational::format_q).collect();
    let result = json!({
        "lambda": shown,
        "distance": d.distance,
        "norm": d.norm,
        "meets": meets,
        "iterations": d.iterations,
        "best_restart": d.best_restart,
        "converged": d.converged,
        "tol": opt.tol,
        "optimizer": cfg,
    });
    let mut report = Report::new("orbit-distance", Some(pair_info(&spec)), seed, result);
    report.text.push(format!("lambda {} distance {} norm {}", list(&shown), fmt_f(d.distance), fmt_f(d.norm)));
    report.text.push(format!("meets h-perp (evidence): {meets}"));
    report.table = Table::new(vec!["lambda", "distance", "meets", "iterations"]);
    report.table.push(vec![list(&shown), fmt_f(d.distance), meets.to_string(), d.iterations.to_string()]);
    Ok(report)
}

fn cmd_ghc_check(
    pair: &PairArgs,
    support: &PathBuf,
    mmax: u64,
    use_certificate: bool,
    opt: &OptimizerArgs,
    seed: u64,
) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let cfg = optimizer(opt, seed)?;
    let text = std::fs::read_to_string(support).map_err(|e| format!("{}: {e}", support.display()))?;
    let s = load_support(&text).map_err(err)?;
    if s.system.descriptor() != spec.g().descriptor() {
        return Err(format!("support system {} does not match g = {}", s.system, spec.g()));
    }
    let model = CompactModel::new(&spec).map_err(err)?;
    let outcome = if use_certificate { Some(certify(&spec, mmax).map_err(err)?) } else { None };
    let cert = outcome.as_ref().and_then(|o| o.certificate());
    let verdict = ghc_verdict(&model, &s, cert, mmax, &cfg, opt.tol).map_err(err)?;
    let result = json!({ "support": s.to_document(), "verdict": verdict, "certificate_used": cert.is_some() });
    let mut report = Report::new("ghc-check", Some(pair_info(&spec)), seed, result);
    let status = status_name(verdict.status);
    report.text.push(format!("status {status} ({})", verdict.grade));
    report.text.push(verdict.rationale.clone());
    report.text.push(format!("vagrancy {}", fmt_f(verdict.vagrancy.total())));
    report.table = Table::new(vec!["direction", "membership", "distance", "meets", "status"]);
    for e in &verdict.per_ray_evidence {
        let m = match e.membership {
            Membership::Yes(n) => format!("yes({n})"),
            Membership::UnknownUpTo(n) => format!("unknown<={n}"),
        };
        report.text.push(format!("  direction {} {m} distance {}", list(&e.direction), fmt_f(e.distance)));
        report.table.push(vec![
            list(&e.direction),
            m,
            fmt_f(e.distance),
            e.meets.to_string(),
            status.clone(),
        ]);
    }
    if verdict.status == GhcStatus::Undetermined {
        report.exit = EXIT_INCONCLUSIVE;
    }
    Ok(report)
}

fn cmd_wz_check(pair: &PairArgs, samples: usize, opt: &OptimizerArgs, seed: u64) -> CliResult<Report> {
    let spec = load_pair(pair)?;
    let cfg = optimizer(opt, seed)?;
    let model = CompactModel::new(&spec).map_err(err)?;
    let r = wz_orbit_property(&model, samples, &cfg, opt.tol);
    let mut report = Report::new("wz-check", Some(pair_info(&spec)), seed, &r);
    report.text.push(format!(
        "hypothesis min orbit dim {} > 2 dim h = {}: {}",
        r.min_orbit_dimension,
        2 * r.dim_h,
        r.hypothesis_holds
    ));
    report.table = Table::new(vec!["lambda", "distance", "meets"]);
    for s in &r.samples {
        report.table.push(vec![list(&s.lambda), fmt_f(s.distance), s.meets.to_string()]);
    }
    if !r.hypothesis_holds {
        report.exit = EXIT_NOT_APPLICABLE;
    } else {
        report.text.push(format!("samples {} failures {}", r.samples.len(), r.failures.len()));
        if !r.failures.is_empty() {
            report.exit = EXIT_INCONCLUSIVE;
        }
    }
    Ok(report)
}

fn cmd_n_gamma(pair: &PairArgs, gamma: f64, bound: i64, opt: &OptimizerArgs, seed: u64) -> CliResult<Report> {
    if !(gamma >= 0.0) || bound < 0 {
        return Err("--gamma and --box must be nonnegative".into());
    }
    let spec = load_pair(pair)?;
    let cfg = optimizer(opt, seed)?;
    let model = CompactModel::new(&spec).map_err(err)?;
    let weights = n_gamma_sample(&model, gamma, bound, &cfg);
    let mut report = Report::new(
        "n-gamma",
        Some(pair_info(&spec)),
        seed,
        json!({ "gamma": gamma, "box": bound, "weights": weights, "optimizer": cfg }),
    );
    report.text.push(format!("{} weights within {gamma} (evidence)", weights.len()));
    report.table = Table::new(vec!["lambda"]);
    for w in &weights {
        report.text.push(format!("  {}", list(w)));
        report.table.push(vec![list(w)]);
    }
    Ok(report)
}
