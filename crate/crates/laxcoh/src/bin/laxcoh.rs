//! `laxcoh build|cocycle|verify`: configuration-driven construction and
//! verification. Exit codes: 0 success, 1 input error, 2 math error or a
//! failed check.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use laxcoh::cocycle::{Cocycle, CocycleTable};
use laxcoh::config::{InstanceConfig, OmegaPrimeConfig};
use laxcoh::lax::GradedBasis;
use laxcoh::riemann::jet_at;
use laxcoh::suites::{self, Instance, Overrides, Suite};
use laxcoh::{Error, Result};

#[derive(Parser)]
#[command(name = "laxcoh", version, about = "Exact Lax operator algebras and their local cocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for written artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample budget for sampled grids.
    #[arg(long)]
    samples: Option<usize>,
    /// Polynomial degree of the connection ansatz.
    #[arg(long)]
    pole_budget: Option<usize>,
    /// Comma-separated enclosed points, e.g. `P+,gamma1`.
    #[arg(long)]
    cycle: Option<String>,
    /// Second connection for the action (JSON kernel coefficients).
    #[arg(long)]
    omega_prime: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Gamma1,
    Gamma2,
    /// `γ₁ + γ₂`.
    Combo,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Grading,
    Action,
    Cocycle,
    Invariance,
    Locality,
    Normalization,
    Uniqueness,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Grading => Suite::Grading,
            SuiteArg::Action => Suite::Action,
            SuiteArg::Cocycle => Suite::Cocycle,
            SuiteArg::Invariance => Suite::Invariance,
            SuiteArg::Locality => Suite::Locality,
            SuiteArg::Normalization => Suite::Normalization,
            SuiteArg::Uniqueness => Suite::Uniqueness,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Writes basis.json and connection.json.
    Build(Common),
    /// Writes table.json for a geometric cocycle.
    Cocycle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "gamma1")]
        which: Which,
    },
    /// Runs a verification suite and prints the report.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

fn load(common: &Common) -> Result<(InstanceConfig, Overrides)> {
    let config = InstanceConfig::load(&common.config)?;
    let omega_prime = common.omega_prime.as_deref().map(OmegaPrimeConfig::load).transpose()?;
    let o = Overrides {
        samples: common.samples,
        pole_budget: common.pole_budget,
        cycle: common.cycle.clone(),
        omega_prime,
        ..Default::default()
    };
    let config = o.apply(&config)?;
    Ok((config, o))
}

fn write(dir: &Path, name: &str, v: &Value) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, to_text(v))?;
    Ok(path.display().to_string())
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn out_dir(common: &Common) -> PathBuf {
    common.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn build(common: &Common) -> Result<Value> {
    let (config, _) = load(common)?;
    let alg = config.algebra()?;
    let (lo, hi) = config.degree_window;
    let basis = GradedBasis::build(&alg, lo, hi)?;
    let points = alg.sphere().points();
    let elements: Vec<Value> = basis
        .to_json()
        .into_iter()
        .map(|entry| {
            let x = basis.get(entry.degree, entry.leading_index).expect("listed element");
            let jets: Vec<Value> = points
                .iter()
                .map(|&p| {
                    let j = jet_at(&x.value, p, config.jet_window);
                    json!({ "point": p.label(), "lead_order": j.lead_order, "coefficients": j.coeffs })
                })
                .collect();
            json!({ "element": entry, "jets": jets })
        })
        .collect();
    let w = config.connection(&alg)?;
    let dir = out_dir(common);
    let basis_doc = json!({
        "flavor": alg.flavor().name(),
        "degree_window": config.degree_window,
        "jet_window": config.jet_window,
        "count": basis.len(),
        "elements": elements,
    });
    let files = vec![write(&dir, "basis.json", &basis_doc)?, write(&dir, "connection.json", &json!(w.to_json()))?];
    Ok(json!({ "command": "build", "basis_elements": basis.len(), "files": files }))
}

fn cocycle(common: &Common, which: Which) -> Result<Value> {
    let (config, _) = load(common)?;
    let alg = config.algebra()?;
    let cycle = config.cycle_for(alg.sphere())?;
    let w = config.connection(&alg)?;
    let gamma = match which {
        Which::Gamma1 => Cocycle::gamma1(&w, cycle.clone()),
        Which::Gamma2 => Cocycle::gamma2(cycle.clone()),
        Which::Combo => Cocycle::gamma1(&w, cycle.clone()).plus(Cocycle::gamma2(cycle.clone())),
    };
    let (lo, hi) = config.degree_window;
    let t = CocycleTable::build(&alg, &gamma, (lo, hi), (2 * lo, 2 * hi))?;
    let bounds = t.level_bounds();
    let doc = json!({
        "cocycle": gamma.label(),
        "cycle": cycle.labels(),
        "level_bounds": { "R": bounds.lowest, "S": bounds.highest, "bounded": bounds.bounded() },
        "nonzero_entries": t.len(),
        "table": t.to_json(),
    });
    let file = write(&out_dir(common), "table.json", &doc)?;
    Ok(json!({
        "command": "cocycle",
        "nonzero_entries": t.len(),
        "level_bounds": { "R": bounds.lowest, "S": bounds.highest },
        "files": [file],
    }))
}

fn verify(common: &Common, suite: Suite) -> Result<(Value, bool)> {
    let (config, o) = load(common)?;
    let inst = Instance::new(&config, &o)?;
    let report = suites::run(&inst, suite);
    let v = serde_json::to_value(&report).expect("serializable");
    if let Some(dir) = &common.out {
        write(dir, "report.json", &v)?;
    }
    Ok((v, report.passed()))
}

fn fail(e: &Error) -> ExitCode {
    let kind = if e.is_input_error() { "input" } else { "math" };
    eprintln!("{}", json!({ "error": e.to_string(), "kind": kind }));
    ExitCode::from(if e.is_input_error() { 1 } else { 2 })
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
    let result = match &cli.command {
        Command::Build(c) => build(c).map(|v| (v, true)),
        Command::Cocycle { common, which } => cocycle(common, *which).map(|v| (v, true)),
        Command::Verify { common, suite } => verify(common, (*suite).into()),
    };
    match result {
        Ok((v, ok)) => {
            print!("{}", to_text(&v));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => fail(&e),
    }
}
