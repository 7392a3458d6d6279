mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ideal_moments::cache::{Cache, CacheStatus};
use ideal_moments::moments::{
    first_main, first_moment, first_moment_naive, gcd_sum_identity, key_estimate, predicted_error_exponent,
    residual_trend, second_main, second_moment, second_moment_naive, DomainPolicy, MainTerm, MomentKind, MomentReport,
    Regime, ReportRow, TrendSummary, CSV_COLUMNS, CSV_SCHEMA,
};
use ideal_moments::verify::{self, CheckOutcome, Suite};
use ideal_moments::zeta::{field_constants_with_table, riemann_zeta, zeta_k};
use ideal_moments::{Constants, Error, IdealTable, NumberField, Param, TableMode};
use num_complex::Complex64;
use serde_json::json;

use config::{ExperimentConfig, Format};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: 1,
            msg: msg.into(),
        }
    }

    fn verification(msg: impl Into<String>) -> Self {
        Self {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } | Error::Overflow(_) => 3,
            _ => 1,
        };
        Self {
            code,
            msg: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "idealmoments",
    version,
    about = "Moments of Ramanujan sums over number field ideals"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Global {
    /// Field descriptor as inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Norm bound of the ideal table.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Grid points "x:theta,..."; a bare x uses --theta.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Cross-check fast paths against the definitional sums.
    #[arg(long, global = true)]
    pub naive_oracle: bool,
    /// Build only a_K and M_K (no factorization lists).
    #[arg(long, global = true)]
    pub counts_only: bool,
    /// Cache directory; defaults to $IDEALMOMENTS_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z2: Option<f64>,
    /// Omit the timestamp header line.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// JSON config file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariants and analytic constants of a field.
    Field,
    /// Build the ideal table and refresh the caches.
    Build,
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Compute moments over a grid.
    Moment {
        #[arg(value_enum)]
        kind: KindArg,
    },
    /// Zeta values.
    Zeta {
        #[command(subcommand)]
        action: ZetaAction,
    },
}

#[derive(Subcommand, Debug)]
enum ZetaAction {
    /// Evaluate ζ(s), or ζ_K(s) when --field is given.
    Eval {
        /// Point such as "2", "0.5+14.1347i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SuiteArg {
    Lemma21,
    Lemma22,
    Lemma23,
    Prufer,
    KeyEstimate,
    RationalBaseline,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Lemma21 => Suite::Lemma21,
            SuiteArg::Lemma22 => Suite::Lemma22,
            SuiteArg::Lemma23 => Suite::Lemma23,
            SuiteArg::Prufer => Suite::Prufer,
            SuiteArg::KeyEstimate => Suite::KeyEstimate,
            SuiteArg::RationalBaseline => Suite::RationalBaseline,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    First,
    Second,
    KeyEstimate,
    GcdIdentity,
}

impl From<KindArg> for MomentKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::First => MomentKind::First,
            KindArg::Second => MomentKind::Second,
            KindArg::KeyEstimate => MomentKind::KeyEstimate,
            KindArg::GcdIdentity => MomentKind::GcdIdentity,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("idealmoments: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = ExperimentConfig::resolve(&cli.global)?;
    match cli.command {
        Command::Field => cmd_field(&cfg),
        Command::Build => cmd_build(&cfg),
        Command::Verify { suite } => cmd_verify(&cfg, suite.into()),
        Command::Moment { kind } => cmd_moment(&cfg, kind.into()),
        Command::Zeta {
            action: ZetaAction::Eval { s },
        } => cmd_zeta(&cfg, &s),
    }
}

fn cache_for(cfg: &ExperimentConfig) -> Option<Cache> {
    if cfg.no_cache {
        return None;
    }
    cfg.cache_dir.clone().map(Cache::new).or_else(Cache::from_env)
}

fn load_table(
    cfg: &ExperimentConfig,
    field: &NumberField,
    bound: u64,
    mode: TableMode,
) -> Result<IdealTable, CliError> {
    match cache_for(cfg) {
        None => Ok(IdealTable::build(field, bound, mode)?),
        Some(cache) => {
            let (table, status) = cache.load_or_build(field, bound, mode)?;
            if let CacheStatus::Rebuilt(why) = status {
                eprintln!("idealmoments: warning: cache rebuilt ({why})");
            }
            Ok(table)
        }
    }
}

fn emit(cfg: &ExperimentConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError {
            code: 3,
            msg: format!("{}: {e}", path.display()),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| CliError {
                code: 3,
                msg: e.to_string(),
            })
        }
    }
}

fn unix_time() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn constants(field: &NumberField, table: &IdealTable) -> Result<Constants, CliError> {
    Ok(field_constants_with_table(field, table)?)
}

fn cmd_field(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let k = cfg.number_field()?;
    let table = IdealTable::build(&k, cfg.bound.unwrap_or(100_000), TableMode::CountsOnly)?;
    let c = constants(&k, &table)?;
    let info = json!({
        "field": cfg.field_label(),
        "kind": k.kind().to_string(),
        "degree": k.degree(),
        "disc": k.disc(),
        "char_modulus": k.char_modulus(),
        "rho": c.rho,
        "rho_empirical": c.rho_empirical,
        "zeta2": c.zeta2,
        "zeta0": c.zeta0,
        "alpha": c.alpha,
        "cache_key": k.descriptor().cache_key(),
    });
    let body = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&info).unwrap()),
        Format::Csv => {
            let mut s = String::new();
            for (key, v) in info.as_object().unwrap() {
                let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                s.push_str(&format!("{key}: {v}\n"));
            }
            s
        }
    };
    emit(cfg, &body)
}

fn cmd_build(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let k = cfg.number_field()?;
    let bound = cfg.bound.ok_or_else(|| CliError::usage("--bound is required"))?;
    let mode = if cfg.counts_only {
        TableMode::CountsOnly
    } else {
        TableMode::Full
    };
    let table = load_table(cfg, &k, bound, mode)?;
    let mut info = json!({
        "field": cfg.field_label(),
        "bound": bound,
        "mode": format!("{mode:?}"),
        "ideals": table.ideal_count_up_to(bound)?,
        "mertens": table.mertens_at(bound),
    });
    if let Some(cache) = cache_for(cfg) {
        info["table_cache"] = json!(cache.table_path(&k));
        info["splitting_cache"] = json!(cache.splitting_path(&k));
    }
    emit(cfg, &format!("{}\n", serde_json::to_string(&info).unwrap()))
}

fn default_verify_bound(suite: Suite) -> u64 {
    match suite {
        Suite::Lemma21 | Suite::Lemma22 | Suite::Lemma23 => 1000,
        Suite::Prufer | Suite::RationalBaseline => 200,
        Suite::KeyEstimate => 100_000,
    }
}

fn cmd_verify(cfg: &ExperimentConfig, suite: Suite) -> Result<(), CliError> {
    let bound = cfg.bound.unwrap_or_else(|| default_verify_bound(suite));
    let mut outcomes: Vec<CheckOutcome> = if suite == Suite::RationalBaseline {
        verify::rational_baseline(bound)?
    } else {
        let k = cfg.number_field()?;
        let table = load_table(cfg, &k, bound, TableMode::Full)?;
        let mut v = match suite {
            Suite::KeyEstimate => verify::key_estimate_trend(&table, Param::real(cfg.z1), Param::real(cfg.z2))?,
            _ => verify::run_on(&table, suite)?,
        };
        if cfg.naive_oracle {
            v.extend(verify::naive_ramanujan(&table, 50.min(bound), suite)?);
        }
        v
    };
    let failed = outcomes.iter().filter(|c| !c.passed).count();
    let mut body = String::new();
    for c in outcomes.drain(..) {
        body.push_str(&serde_json::to_string(&c).unwrap());
        body.push('\n');
    }
    emit(cfg, &body)?;
    if failed > 0 {
        return Err(CliError::verification(format!(
            "{failed} check(s) failed in suite {suite}"
        )));
    }
    Ok(())
}

struct MomentRun {
    rows: Vec<ReportRow>,
    reports: Vec<MomentReport>,
    trend: Option<Result<TrendSummary, String>>,
}

fn required_bound(kind: MomentKind, grid: &[(f64, Option<f64>)]) -> Result<u64, CliError> {
    let mut need = 1.0f64;
    for &(x, theta) in grid {
        let y = match kind {
            MomentKind::First | MomentKind::Second => {
                let t = theta.ok_or_else(|| {
                    CliError::usage(format!("grid point x = {x} has no theta (use x:theta or --theta)"))
                })?;
                x.powf(t)
            }
            _ => x,
        };
        need = need.max(x).max(y);
    }
    if need > 5e8 {
        return Err(Error::BoundExceeded {
            value: need,
            bound: 500_000_000,
        }
        .into());
    }
    Ok(need.floor() as u64)
}

fn cmd_moment(cfg: &ExperimentConfig, kind: MomentKind) -> Result<(), CliError> {
    if cfg.grid.is_empty() {
        return Err(CliError::usage("moment commands need a nonempty --grid"));
    }
    let k = cfg.number_field()?;
    let need = required_bound(kind, &cfg.grid)?;
    let bound = match cfg.bound {
        Some(b) if b < need => {
            return Err(Error::BoundExceeded {
                value: need as f64,
                bound: b,
            }
            .into())
        }
        Some(b) => b,
        None => need,
    };
    let label = cfg.field_label();
    let run = match kind {
        MomentKind::First | MomentKind::Second | MomentKind::GcdIdentity => {
            let mode = if kind == MomentKind::Second || cfg.naive_oracle {
                TableMode::Full
            } else {
                TableMode::CountsOnly
            };
            let table = load_table(cfg, &k, bound, mode)?;
            let c = constants(&k, &table)?;
            let mut rows = Vec::new();
            let mut reports = Vec::new();
            for &(x, theta) in &cfg.grid {
                let report = match kind {
                    MomentKind::First => {
                        let y = x.powf(theta.unwrap());
                        let lhs = first_moment(&table, x, y)?;
                        if cfg.naive_oracle && first_moment_naive(&table, x, y)? != lhs {
                            return Err(CliError::verification(format!(
                                "first moment fast path disagrees at x = {x}"
                            )));
                        }
                        let main = vec![MainTerm {
                            name: "rho_y".into(),
                            value: first_main(&c, y),
                        }];
                        MomentReport::new(kind, x, y, theta, lhs, main)
                    }
                    MomentKind::Second => {
                        let y = x.powf(theta.unwrap());
                        if Regime::classify(x, y).0 == Regime::Outside {
                            rows.push(ReportRow::violation(&label, x, y, theta));
                            continue;
                        }
                        let lhs = second_moment(&table, x, y, cfg.jobs)?;
                        if cfg.naive_oracle && second_moment_naive(&table, x, y)? != lhs {
                            return Err(CliError::verification(format!(
                                "second moment fast path disagrees at x = {x}"
                            )));
                        }
                        MomentReport::new(kind, x, y, theta, lhs, second_main(&c, x, y)?)
                    }
                    _ => {
                        let (lhs, main) = gcd_sum_identity(&table, &c, x)?;
                        let main = vec![MainTerm {
                            name: "rho_x2_over_2zeta2".into(),
                            value: main,
                        }];
                        MomentReport::new(kind, x, x, None, lhs, main)
                    }
                };
                rows.push(ReportRow::from_report(&label, &report));
                reports.push(report);
            }
            let thetas: Vec<Option<f64>> = cfg.grid.iter().map(|g| g.1).collect();
            let common = thetas
                .first()
                .copied()
                .flatten()
                .filter(|t| thetas.iter().all(|u| *u == Some(*t)));
            let predicted = common.and_then(|t| predicted_error_exponent(kind, k.kind(), t));
            let trend = Some(residual_trend(&reports, predicted).map_err(|e| e.to_string()));
            MomentRun { rows, reports, trend }
        }
        MomentKind::KeyEstimate => {
            let table = load_table(cfg, &k, bound, TableMode::Full)?;
            let mut rows = Vec::new();
            for &(x, _) in &cfg.grid {
                let r = key_estimate(
                    &table,
                    x,
                    Param::real(cfg.z1),
                    Param::real(cfg.z2),
                    DomainPolicy::Report,
                )?;
                rows.push(ReportRow::from_key(&label, &r));
            }
            MomentRun {
                rows,
                reports: Vec::new(),
                trend: None,
            }
        }
    };
    let body = match cfg.format {
        Format::Csv => render_csv(cfg, &run)?,
        Format::Json => render_json(cfg, kind, &run),
    };
    emit(cfg, &body)
}

fn render_csv(cfg: &ExperimentConfig, run: &MomentRun) -> Result<String, CliError> {
    let mut head = String::new();
    if cfg.timestamp {
        head.push_str(&format!("#generated_unix={}\n", unix_time()));
    }
    head.push_str(CSV_SCHEMA);
    head.push('\n');
    let mut w = csv::Writer::from_writer(head.into_bytes());
    let csv_err = |e: csv::Error| CliError {
        code: 3,
        msg: e.to_string(),
    };
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in &run.rows {
        w.write_record(r.csv_record()).map_err(csv_err)?;
    }
    let mut body = String::from_utf8(w.into_inner().map_err(|e| CliError {
        code: 3,
        msg: e.to_string(),
    })?)
    .unwrap();
    match &run.trend {
        Some(Ok(t)) => {
            let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_else(|| "NA".into());
            body.push_str(&format!(
                "#trend points={} residual_slope={} main_slope={} predicted_exponent={} degenerate={}\n",
                t.points,
                opt(t.residual_slope),
                opt(t.main_slope),
                opt(t.predicted_exponent),
                t.degenerate
            ));
        }
        Some(Err(e)) => body.push_str(&format!("#trend unavailable: {e}\n")),
        None => {}
    }
    Ok(body)
}

fn render_json(cfg: &ExperimentConfig, kind: MomentKind, run: &MomentRun) -> String {
    let mut doc = json!({
        "schema": 1,
        "kind": kind.label(),
        "rows": run.rows,
        "main_terms": run.reports.iter().map(|r| &r.main_terms).collect::<Vec<_>>(),
    });
    if cfg.timestamp {
        doc["generated_unix"] = json!(unix_time());
    }
    match &run.trend {
        Some(Ok(t)) => doc["trend"] = json!(t),
        Some(Err(e)) => doc["trend_error"] = json!(e),
        None => {}
    }
    format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
}

fn cmd_zeta(cfg: &ExperimentConfig, s: &str) -> Result<(), CliError> {
    let s: Complex64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("cannot parse s = {s:?}")))?;
    let (value, tail) = match &cfg.field {
        None => (riemann_zeta(s)?, None),
        Some(_) => {
            let k = cfg.number_field()?;
            let v = zeta_k(&k, s)?;
            (v.value, v.prime_bound.map(|b| (v.tail_bound, b)))
        }
    };
    let mut doc = json!({ "s": [s.re, s.im], "re": value.re, "im": value.im });
    if let Some((bound, primes)) = tail {
        doc["tail_bound"] = json!(bound);
        doc["prime_bound"] = json!(primes);
    }
    if cfg.field.is_some() {
        doc["field"] = json!(cfg.field_label());
    }
    emit(cfg, &format!("{}\n", serde_json::to_string(&doc).unwrap()))
}
