use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use ptolemaic_core::fvsp::{solve_fvsp, verify_fvsp_solution, FvspError, FvspInstance, RoundingParams};
use ptolemaic_core::gen::{erdos_renyi, fixture, random_c4_gem_free, random_fvsp_instance};
use ptolemaic_core::graph::{VertexSet, WeightedGraph};
use ptolemaic_core::icd::{brute_force_icd, build_icd};
use ptolemaic_core::obstruction::{find_induced_c4, find_induced_gem, is_ptolemaic};
use ptolemaic_core::oracle::{exact_c4gem_hitting, exact_fvsp, exact_ptolemaic_deletion, OracleBudget};
use ptolemaic_core::pipeline::solve_ptolemaic_deletion_with;

#[derive(Parser, Debug)]
#[command(name = "ptolemaic", version, about = "Approximate weighted ptolemaic deletion and FVSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Debug)]
struct Config {
    /// Rounding parameters as `eps,alpha,beta`
    #[arg(long, global = true, value_parser = parse_params)]
    params: Option<RoundingParams>,
    /// Size limit for exact oracles (vertices or FVSP nodes)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for random generators
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format; each subcommand accepts a subset
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full deletion pipeline on a graph file
    Solve { input: PathBuf },
    /// Dump the inter-clique digraph of a (C4, gem)-free graph
    Icd {
        input: PathBuf,
        /// Use the brute-force construction, which accepts any small graph
        #[arg(long)]
        oracle: bool,
    },
    /// Solve an FVSP instance file
    Fvsp { input: PathBuf },
    /// Run an exact exponential-time solver
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        input: PathBuf,
    },
    /// Verify a solution against a graph or FVSP instance
    Check {
        input: PathBuf,
        /// JSON output of `solve`/`fvsp`, or whitespace/comma separated ids
        solution: PathBuf,
    },
    /// Emit a named fixture or a seeded random graph or instance
    Gen {
        /// diamond, gem, house, domino, bull, dart, or c<k>, p<k>, k<k>
        #[arg(long, conflicts_with_all = ["n", "p", "family"])]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value_t = Family::Er)]
        family: Family,
        #[arg(short, long, default_value_t = 8)]
        n: usize,
        #[arg(short, long, default_value_t = 0.4)]
        p: f64,
        /// Uniform weight range `lo,hi`
        #[arg(long, default_value = "1,1", value_parser = parse_range)]
        weights: (f64, f64),
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleProblem {
    /// Minimum ptolemaic deletion set
    Pd,
    /// Minimum FVSP solution
    Fvsp,
    /// Minimum vertex set hitting every induced C4 and gem
    Hitting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Erdős–Rényi graph
    Er,
    /// Random (C4, gem)-free graph
    Free,
    /// Random valid FVSP instance
    Fvsp,
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
enum Failure {
    /// Unreadable input, malformed file, or rejected configuration.
    Input(anyhow::Error),
    /// A structural precondition or pipeline stage failed.
    Structural { stage: &'static str, message: String },
    /// `check` rejected the solution.
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Input(_) => 2,
            Failure::Structural { .. } => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn structural(stage: &'static str, message: impl ToString) -> Failure {
    Failure::Structural { stage, message: message.to_string() }
}

fn parse_params(s: &str) -> Result<RoundingParams, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("invalid number `{t}`")))
        .collect::<Result<_, _>>()?;
    let [e, a, b] = parts[..] else {
        return Err("expected three values `eps,alpha,beta`".into());
    };
    RoundingParams::new(e, a, b).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("invalid number `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("invalid number `{hi}`"))?;
    if !(0.0..=hi).contains(&lo) || !hi.is_finite() {
        return Err(format!("need 0 <= lo <= hi, got {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<WeightedGraph> {
    read_input(path)?.parse().with_context(|| format!("parsing graph {}", path.display()))
}

fn read_instance(path: &Path) -> anyhow::Result<FvspInstance> {
    read_input(path)?.parse().with_context(|| format!("parsing FVSP instance {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize") + "\n"
}

fn format_or(config: &Config, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = config.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Input(anyhow!("format {f:?} is not supported here; use one of {allowed:?}")))
    }
}

fn budget(config: &Config) -> OracleBudget {
    match config.budget {
        Some(n) => OracleBudget { max_vertices: n, max_nodes: n, ..OracleBudget::default() },
        None => OracleBudget::default(),
    }
}

fn ids(list: impl IntoIterator<Item = usize>) -> String {
    list.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_solve(config: &Config, input: &Path) -> Result<String, Failure> {
    let format = format_or(config, Format::Json, &[Format::Json, Format::Text])?;
    let g = read_graph(input)?;
    let params = config.params.unwrap_or_default();
    let result = solve_ptolemaic_deletion_with(&g, &params).map_err(|e| structural(e.stage(), e))?;
    Ok(match format {
        Format::Text => format!("weight {}\ndeleted {}\n", result.weight, ids(result.deleted.iter())),
        _ => to_json(&result),
    })
}

fn cmd_icd(config: &Config, input: &Path, oracle: bool) -> Result<String, Failure> {
    let format = format_or(config, Format::Text, &[Format::Text, Format::Dot])?;
    let g = read_graph(input)?;
    let icd = if oracle {
        brute_force_icd(&g).map_err(|e| structural("icd", e))?
    } else {
        if let Some([a, b, c, d]) = find_induced_c4(&g) {
            return Err(structural("icd", format!("graph is not (C4, gem)-free: induced C4 {a}-{b}-{c}-{d}")));
        }
        if let Some(gem) = find_induced_gem(&g) {
            let [a, b, c, d] = gem.path;
            let msg = format!("graph is not (C4, gem)-free: gem path {a}-{b}-{c}-{d} hub {}", gem.hub);
            return Err(structural("icd", msg));
        }
        build_icd(&g).map_err(|e| structural("icd", e))?
    };
    Ok(match format {
        Format::Dot => icd.to_dot(),
        _ => icd.to_text(),
    })
}

fn cmd_fvsp(config: &Config, input: &Path) -> Result<String, Failure> {
    let format = format_or(config, Format::Json, &[Format::Json, Format::Text])?;
    let inst = read_instance(input)?;
    let params = config.params.unwrap_or_default();
    let sol = solve_fvsp(&inst, &params).map_err(|e| match e {
        FvspError::Instance(v) => structural("instance", v),
        other => structural("fvsp", other),
    })?;
    Ok(match format {
        Format::Text => format!("weight {}\ntheta {}\ndeleted {}\n", sol.weight, sol.theta, ids(sol.deleted.iter().copied())),
        _ => to_json(&sol),
    })
}

fn cmd_oracle(config: &Config, problem: OracleProblem, input: &Path) -> Result<String, Failure> {
    format_or(config, Format::Json, &[Format::Json])?;
    let budget = budget(config);
    let oracle_err = |e| Failure::Input(anyhow!("oracle: {e}"));
    let (weight, set) = match problem {
        OracleProblem::Pd => {
            let r = exact_ptolemaic_deletion(&read_graph(input)?, &budget).map_err(oracle_err)?;
            (r.weight, r.set.into_vec())
        }
        OracleProblem::Hitting => {
            let r = exact_c4gem_hitting(&read_graph(input)?, &budget).map_err(oracle_err)?;
            (r.weight, r.set.into_vec())
        }
        OracleProblem::Fvsp => {
            let inst = read_instance(input)?;
            inst.validate().map_err(|v| structural("instance", v))?;
            let r = exact_fvsp(&inst, &budget).map_err(oracle_err)?;
            (r.weight, r.set)
        }
    };
    Ok(to_json(&json!({ "weight": weight, "deleted": set })))
}

/// Reads `deleted` from JSON output, or a bare list of ids.
fn parse_solution(text: &str) -> anyhow::Result<Vec<usize>> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).context("parsing solution JSON")?;
        let deleted = value.get("deleted").ok_or_else(|| anyhow!("solution JSON has no `deleted` field"))?;
        return serde_json::from_value(deleted.clone()).context("`deleted` must be a list of ids");
    }
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("invalid id `{t}`")))
        .collect()
}

fn first_tag(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

fn cmd_check(config: &Config, input: &Path, solution: &Path) -> Result<String, Failure> {
    let format = format_or(config, Format::Text, &[Format::Text, Format::Json])?;
    let text = read_input(input)?;
    let deleted = parse_solution(&read_input(solution)?)?;
    let report = match first_tag(&text) {
        Some("d") => {
            let inst: FvspInstance = text.parse().context("parsing FVSP instance")?;
            match verify_fvsp_solution(&inst, &deleted) {
                Ok(()) => Ok(json!({ "ok": true, "weight": deleted.iter().map(|&v| inst.weights()[v]).sum::<f64>() })),
                Err(v) => Err(json!({ "ok": false, "reason": v.to_string() })),
            }
        }
        _ => {
            let g: WeightedGraph = text.parse().context("parsing graph")?;
            if let Some(&v) = deleted.iter().find(|&&v| v >= g.n()) {
                return Err(Failure::Input(anyhow!("vertex {v} out of range")));
            }
            let set: VertexSet = deleted.iter().copied().collect();
            match is_ptolemaic(&g.remove_vertices(&set).0) {
                Ok(()) => Ok(json!({ "ok": true, "weight": g.weight_of(set.iter()) })),
                Err(ob) => {
                    // witness in input vertex ids
                    let labels = g.remove_vertices(&set).1;
                    let witness = relabel(&ob.to_string(), &labels);
                    Err(json!({ "ok": false, "reason": "not ptolemaic", "witness": witness }))
                }
            }
        }
    };
    let render = |v: &serde_json::Value| match format {
        Format::Json => to_json(v),
        _ => {
            let mut s = String::new();
            if v["ok"] == true {
                let _ = writeln!(s, "ok weight {}", v["weight"]);
            } else {
                let _ = write!(s, "{}", v["reason"].as_str().unwrap_or_default());
                if let Some(w) = v.get("witness").and_then(|w| w.as_str()) {
                    let _ = write!(s, ": {w}");
                }
                s.push('\n');
            }
            s
        }
    };
    match report {
        Ok(v) => Ok(render(&v)),
        Err(v) => Err(Failure::Rejected(render(&v))),
    }
}

/// Maps every number in an obstruction description back to input ids.
fn relabel(description: &str, labels: &[usize]) -> String {
    let mut out = String::new();
    let mut num = String::new();
    for c in description.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_digit() {
            num.push(c);
            continue;
        }
        if !num.is_empty() {
            let v: usize = num.parse().expect("digits");
            let _ = write!(out, "{}", labels[v]);
            num.clear();
        }
        out.push(c);
    }
    out.pop();
    out
}

fn cmd_gen(config: &Config, fixture_name: Option<&str>, family: Family, n: usize, p: f64, weights: (f64, f64)) -> Result<String, Failure> {
    format_or(config, Format::Text, &[Format::Text])?;
    if let Some(name) = fixture_name {
        let g = fixture(name).ok_or_else(|| anyhow!("unknown fixture `{name}`"))?;
        return Ok(g.to_text());
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Failure::Input(anyhow!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(match family {
        Family::Er => erdos_renyi(&mut rng, n, p, weights).to_text(),
        Family::Free => random_c4_gem_free(&mut rng, n, p, weights).to_text(),
        Family::Fvsp => random_fvsp_instance(&mut rng, n, p, weights).to_text(),
    })
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let config = &cli.config;
    match &cli.command {
        Command::Solve { input } => cmd_solve(config, input),
        Command::Icd { input, oracle } => cmd_icd(config, input, *oracle),
        Command::Fvsp { input } => cmd_fvsp(config, input),
        Command::Oracle { problem, input } => cmd_oracle(config, *problem, input),
        Command::Check { input, solution } => cmd_check(config, input, solution),
        Command::Gen { fixture, family, n, p, weights } => cmd_gen(config, fixture.as_deref(), *family, *n, *p, *weights),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Structural { stage, message } => eprintln!("error [{stage}]: {message}"),
                Failure::Rejected(report) => print!("{report}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
