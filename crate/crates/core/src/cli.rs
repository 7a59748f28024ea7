//! `cluster-game` command-line interface.
//!
//! Every subcommand produces one report. JSON reports carry `schema`, tool
//! version, the command, a config echo and the seed; `--no-timestamp` drops
//! the only non-deterministic field. CSV output starts with a `#` metadata
//! line followed by a header row.
//!
//! Exit codes: 0 success, 2 validation error, 3 equivalence failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cluster::{
    build_cluster, play_cluster, play_cluster_with, verify_equivalence, ClusterOptions,
    Construction,
};
use crate::error::Error;
use crate::exec::Execution;
use crate::game::{
    play_circuit, play_classical, sweep_surface, PayoffGrid, PayoffPair, PayoffTable, Strategy,
    DEFAULT_SWEEP_SAMPLES, DEFAULT_TIE_TOL,
};
use crate::tomography::{
    generate_settings, monte_carlo_fidelity, noise_state, simulate_counts, CountsFile,
    NoiseModel, DEFAULT_COUNTS_PER_SETTING, DEFAULT_MC_RUNS,
};

pub const REPORT_SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 2007;
/// `verify` fails when circuit and cluster payoffs differ by more than this.
pub const EQUIVALENCE_THRESHOLD: f64 = 1e-8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_EQUIVALENCE: i32 = 3;

const UNREACHABLE: &str = "unreachable (six-photon resource required)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cluster-game", version, about = "Quantum Prisoner's Dilemma on a four-qubit cluster state")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Payoff table file: JSON object with keys cc, cd, dc, dd.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Omit the timestamp so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one profile on the circuit and on the cluster.
    Play {
        /// Strategy of player A: c, d, q:<alpha> or g:<theta>:<phi> (radians).
        #[arg(long)]
        a: String,
        /// Strategy of player B.
        #[arg(long)]
        b: String,
    },
    /// Circuit payoff surface over the composite [d,c] ∪ [c,q] axes.
    Sweep {
        /// Samples per axis.
        #[arg(long, default_value_t = DEFAULT_SWEEP_SAMPLES)]
        grid: usize,
    },
    /// Compare circuit and cluster payoffs on every profile of a grid.
    Verify {
        /// Comma-separated strategy list (default: c, d, q(kπ/20) for k = 1..10).
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, hide = true)]
        no_corrections: bool,
    },
    /// Simulated tomography of the cluster resource with Monte Carlo error bars.
    Tomo {
        /// none, werner:<p> or dephased:<sigma>.
        #[arg(long, default_value = "none")]
        noise: String,
        /// Counts per measurement setting.
        #[arg(long, default_value_t = DEFAULT_COUNTS_PER_SETTING)]
        n: u64,
        /// Monte Carlo runs.
        #[arg(long, default_value_t = DEFAULT_MC_RUNS)]
        runs: usize,
        /// Where to write the simulated counts (default: next to --out).
        #[arg(long)]
        counts: Option<PathBuf>,
        /// Reconstruct an existing counts file instead of simulating.
        #[arg(long, conflicts_with_all = ["noise", "n", "counts"])]
        from_counts: Option<PathBuf>,
    },
    /// Nash and Pareto sets for the classical and quantum games.
    Analyze {
        /// Comma-separated quantum strategy grid (default: c, d, q:π/4, q:π/2).
        #[arg(long)]
        grid: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Play { .. } => "play",
            Command::Sweep { .. } => "sweep",
            Command::Verify { .. } => "verify",
            Command::Tomo { .. } => "tomo",
            Command::Analyze { .. } => "analyze",
        }
    }
}

/// Finished report plus the exit status it implies.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    /// CSV header and rows.
    pub table: (Vec<String>, Vec<Vec<String>>),
    pub exit_code: i32,
}

pub fn parse_grid(spec: &str) -> Result<Vec<Strategy>, Error> {
    let grid: Vec<Strategy> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty strategy grid".into()));
    }
    Ok(grid)
}

pub fn load_table(path: Option<&Path>) -> Result<PayoffTable, Error> {
    match path {
        None => Ok(PayoffTable::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            let t: PayoffTable = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            Ok(PayoffTable::new(t.cc, t.cd, t.dc, t.dd))
        }
    }
}

pub fn default_verify_grid() -> Vec<Strategy> {
    let mut g = vec![Strategy::C, Strategy::D];
    g.extend((1..=10).map(|k| Strategy::Q(k as f64 * PI / 20.0)));
    g
}

pub fn experimental_grid() -> Vec<Strategy> {
    vec![
        Strategy::C,
        Strategy::D,
        Strategy::Q(FRAC_PI_4),
        Strategy::Q(FRAC_PI_2),
    ]
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn pair_json(p: &PayoffPair) -> Value {
    json!({ "payoff_a": p.a, "payoff_b": p.b, "probs": p.probs })
}

pub fn cmd_play(a: &str, b: &str, table: &PayoffTable) -> Result<Report, Error> {
    let sa: Strategy = a.parse()?;
    let sb: Strategy = b.parse()?;
    let circuit = play_circuit(&sa, &sb, table)?;
    let cluster = play_cluster_with(&sa, &sb, table, ClusterOptions::default());

    let header = [
        "pathway", "strategy_a", "strategy_b", "payoff_a", "payoff_b", "p00", "p01", "p10",
        "p11", "status",
    ];
    let row = |name: &str, p: Option<&PayoffPair>, status: &str| -> Vec<String> {
        let mut r = vec![name.to_string(), sa.to_string(), sb.to_string()];
        match p {
            Some(p) => {
                r.push(fmt(p.a));
                r.push(fmt(p.b));
                r.extend(p.probs.iter().map(|x| fmt(*x)));
            }
            None => r.extend(std::iter::repeat_n(String::new(), 6)),
        }
        r.push(status.to_string());
        r
    };
    let mut rows = vec![row("circuit", Some(&circuit), "ok")];

    let (cluster_json, agree) = match &cluster {
        Ok(run) => {
            rows.push(row("cluster", Some(&run.payoff), "ok"));
            let agree = (run.payoff.a - circuit.a).abs() <= EQUIVALENCE_THRESHOLD
                && (run.payoff.b - circuit.b).abs() <= EQUIVALENCE_THRESHOLD;
            let mut v = pair_json(&run.payoff);
            v["status"] = json!("ok");
            v["projection_probability"] = json!(run.projection_probability);
            v["plan"] = serde_json::to_value(run.plan).expect("plan serializes");
            (v, Some(agree))
        }
        Err(Error::UnsupportedStrategy { .. }) => {
            rows.push(row("cluster", None, UNREACHABLE));
            (json!({ "status": UNREACHABLE }), None)
        }
        Err(e) => return Err(e.clone()),
    };
    let mut circuit_json = pair_json(&circuit);
    circuit_json["status"] = json!("ok");

    Ok(Report {
        command: "play",
        config: json!({ "a": sa.to_string(), "b": sb.to_string(), "table": table }),
        result: json!({
            "strategy_a": sa.to_string(),
            "strategy_b": sb.to_string(),
            "circuit": circuit_json,
            "cluster": cluster_json,
            "pathways_agree": agree,
        }),
        table: (header.iter().map(|s| s.to_string()).collect(), rows),
        exit_code: EXIT_OK,
    })
}

pub fn cmd_sweep(samples: usize, table: &PayoffTable) -> Result<Report, Error> {
    let points = sweep_surface(samples, table, Execution::default())?;
    let header = [
        "axis_a", "axis_b", "payoff_a", "payoff_b", "p00", "p01", "p10", "p11",
    ];
    let rows = points
        .iter()
        .map(|p| {
            [
                p.axis_a, p.axis_b, p.payoff_a, p.payoff_b, p.p00, p.p01, p.p10, p.p11,
            ]
            .iter()
            .map(|x| fmt(*x))
            .collect()
        })
        .collect();
    Ok(Report {
        command: "sweep",
        config: json!({ "grid": samples, "table": table }),
        result: json!({
            "axis": "t in [-1, 1]: t <= 0 is U(-t*pi, 0) from d to c; t > 0 is U(0, t*pi/2) from c to q(pi/2)",
            "rows": points,
        }),
        table: (header.iter().map(|s| s.to_string()).collect(), rows),
        exit_code: EXIT_OK,
    })
}

pub fn cmd_verify(
    grid: &[Strategy],
    table: &PayoffTable,
    apply_corrections: bool,
) -> Result<Report, Error> {
    let report = verify_equivalence(
        grid,
        table,
        ClusterOptions { apply_corrections },
        Execution::default(),
    )?;
    let pass = report.max_discrepancy <= EQUIVALENCE_THRESHOLD;
    let header = [
        "strategy_a", "strategy_b", "circuit_a", "circuit_b", "cluster_a", "cluster_b",
        "discrepancy",
    ];
    let rows = report
        .profiles
        .iter()
        .map(|p| {
            vec![
                p.a.clone(),
                p.b.clone(),
                fmt(p.circuit.a),
                fmt(p.circuit.b),
                fmt(p.cluster.a),
                fmt(p.cluster.b),
                fmt(p.discrepancy),
            ]
        })
        .collect();
    let mut config = json!({
        "grid": grid.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "table": table,
    });
    if !apply_corrections {
        config["corrections_disabled"] = json!(true);
    }
    Ok(Report {
        command: "verify",
        config,
        result: json!({
            "profiles": report.profiles,
            "max_discrepancy": report.max_discrepancy,
            "threshold": EQUIVALENCE_THRESHOLD,
            "pass": pass,
        }),
        table: (header.iter().map(|s| s.to_string()).collect(), rows),
        exit_code: if pass { EXIT_OK } else { EXIT_EQUIVALENCE },
    })
}

/// Options for [`cmd_tomo`].
#[derive(Debug, Clone)]
pub struct TomoConfig {
    pub noise: NoiseModel,
    pub n: u64,
    pub runs: usize,
    pub seed: u64,
    pub counts_out: Option<PathBuf>,
    pub from_counts: Option<PathBuf>,
}

pub fn cmd_tomo(cfg: &TomoConfig) -> Result<Report, Error> {
    let target = build_cluster(Construction::Direct)?.state().clone();
    let counts = match &cfg.from_counts {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<CountsFile>(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?
        }
        None => {
            let rho = noise_state(cfg.noise, &target, cfg.seed)?;
            simulate_counts(&rho, &generate_settings(), cfg.n, cfg.seed, Execution::default())?
        }
    };
    if let Some(path) = &cfg.counts_out {
        let text = serde_json::to_string_pretty(&counts).expect("counts serialize");
        fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    }
    let report = monte_carlo_fidelity(&counts, &target, cfg.runs, cfg.seed)?;

    let header = ["F", "sigma_F", "mc_mean", "runs", "witness"];
    let rows = vec![vec![
        fmt(report.fidelity),
        fmt(report.sigma_f),
        fmt(report.mc_mean),
        report.runs.to_string(),
        report.witness.to_string(),
    ]];
    let mut config = json!({ "runs": cfg.runs });
    match &cfg.from_counts {
        Some(p) => config["from_counts"] = json!(p.display().to_string()),
        None => {
            config["noise"] = json!(cfg.noise.to_string());
            config["n"] = json!(cfg.n);
        }
    }
    if let Some(p) = &cfg.counts_out {
        config["counts"] = json!(p.display().to_string());
    }
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["N"] = json!(counts.n);
    result["counts_seed"] = json!(counts.seed);
    Ok(Report {
        command: "tomo",
        config,
        result,
        table: (header.iter().map(|s| s.to_string()).collect(), rows),
        exit_code: EXIT_OK,
    })
}

#[derive(Debug, Serialize)]
struct GridAnalysis {
    model: &'static str,
    strategies: Vec<String>,
    nash: Vec<(String, String)>,
    pareto: Vec<(String, String)>,
    both: Vec<(String, String)>,
    verdict: &'static str,
}

fn analyze_grid<F>(
    model: &'static str,
    grid: &[Strategy],
    evaluator: F,
) -> Result<(GridAnalysis, PayoffGrid), Error>
where
    F: Fn(&Strategy, &Strategy) -> Result<PayoffPair, Error> + Sync + Send,
{
    let payoffs = PayoffGrid::evaluate(grid, grid, evaluator, Execution::default())?;
    let nash = payoffs.nash(DEFAULT_TIE_TOL);
    let pareto = payoffs.pareto(DEFAULT_TIE_TOL);
    let label = |(i, j): &(usize, usize)| (grid[*i].to_string(), grid[*j].to_string());
    let both: Vec<_> = nash.iter().filter(|p| pareto.contains(p)).map(label).collect();
    Ok((
        GridAnalysis {
            model,
            strategies: grid.iter().map(|s| s.to_string()).collect(),
            nash: nash.iter().map(label).collect(),
            pareto: pareto.iter().map(label).collect(),
            verdict: if both.is_empty() {
                "dilemma present"
            } else {
                "dilemma resolved"
            },
            both,
        },
        payoffs,
    ))
}

pub fn cmd_analyze(quantum: &[Strategy], table: &PayoffTable) -> Result<Report, Error> {
    let classical = [Strategy::C, Strategy::D];
    let mut analyses = vec![
        analyze_grid("classical", &classical, |a, b| play_classical(a, b, table))?,
        analyze_grid("circuit", quantum, |a, b| play_circuit(a, b, table))?,
    ];
    if quantum.iter().all(|s| s.class().is_ok()) {
        analyses.push(analyze_grid("cluster", quantum, |a, b| {
            play_cluster(a, b, table)
        })?);
    }

    let header = [
        "model", "strategy_a", "strategy_b", "payoff_a", "payoff_b", "nash", "pareto",
    ];
    let mut rows = Vec::new();
    for (analysis, payoffs) in &analyses {
        for (i, sa) in analysis.strategies.iter().enumerate() {
            for (j, sb) in analysis.strategies.iter().enumerate() {
                let key = (sa.clone(), sb.clone());
                let p = payoffs.get(i, j);
                rows.push(vec![
                    analysis.model.to_string(),
                    sa.clone(),
                    sb.clone(),
                    fmt(p.a),
                    fmt(p.b),
                    analysis.nash.contains(&key).to_string(),
                    analysis.pareto.contains(&key).to_string(),
                ]);
            }
        }
    }
    let grids: Vec<&GridAnalysis> = analyses.iter().map(|(a, _)| a).collect();
    Ok(Report {
        command: "analyze",
        config: json!({
            "grid": quantum.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "table": table,
            "tie_tolerance": DEFAULT_TIE_TOL,
        }),
        result: json!({ "grids": grids }),
        table: (header.iter().map(|s| s.to_string()).collect(), rows),
        exit_code: EXIT_OK,
    })
}

/// Runs the parsed command.
pub fn execute(cli: &Cli) -> Result<Report, Error> {
    let table = load_table(cli.table.as_deref())?;
    match &cli.command {
        Command::Play { a, b } => cmd_play(a, b, &table),
        Command::Sweep { grid } => cmd_sweep(*grid, &table),
        Command::Verify {
            grid,
            no_corrections,
        } => {
            let g = match grid {
                Some(s) => parse_grid(s)?,
                None => default_verify_grid(),
            };
            cmd_verify(&g, &table, !no_corrections)
        }
        Command::Tomo {
            noise,
            n,
            runs,
            counts,
            from_counts,
        } => {
            let counts_out = counts.clone().or_else(|| {
                match (&cli.out, from_counts) {
                    (Some(out), None) => Some(out.with_extension("counts.json")),
                    _ => None,
                }
            });
            cmd_tomo(&TomoConfig {
                noise: noise.parse()?,
                n: *n,
                runs: *runs,
                seed: cli.seed,
                counts_out,
                from_counts: from_counts.clone(),
            })
        }
        Command::Analyze { grid } => {
            let g = match grid {
                Some(s) => parse_grid(s)?,
                None => experimental_grid(),
            };
            cmd_analyze(&g, &table)
        }
    }
}

/// Serializes a report in the requested format.
pub fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Json => {
            let mut doc = json!({
                "schema": REPORT_SCHEMA,
                "tool": env!("CARGO_PKG_NAME"),
                "version": env!("CARGO_PKG_VERSION"),
                "command": report.command,
                "seed": cli.seed,
                "config": report.config,
                "result": report.result,
            });
            if !cli.no_timestamp {
                let now = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                doc["timestamp_unix"] = json!(now);
            }
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        Format::Csv => {
            let mut meta = format!(
                "# schema={} tool={} version={} command={} seed={}",
                REPORT_SCHEMA,
                env!("CARGO_PKG_NAME"),
                env!("CARGO_PKG_VERSION"),
                report.command,
                cli.seed
            );
            if !cli.no_timestamp {
                let now = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                meta.push_str(&format!(" timestamp_unix={now}"));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.0).expect("in-memory write");
            for row in &report.table.1 {
                w.write_record(row).expect("in-memory write");
            }
            let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
            format!("{meta}\n{body}")
        }
    }
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error ({}): {e}", cli.command.name());
            return EXIT_VALIDATION;
        }
    };
    let text = render(&cli, &report);
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_VALIDATION;
    }
    report.exit_code
}
