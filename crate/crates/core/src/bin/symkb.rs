use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use symkb::constructions::{bridge_model, nullary_formula, Family};
use symkb::formula::{parse, Formula};
use symkb::harness::{describe, run_suite, SuiteConfig};
use symkb::kripke::{chain_model, ModelJson, PointedModel, UnravelMode};
use symkb::prover::{decide_with, Logic, ProverConfig, DEFAULT_MAX_NODES};
use symkb::substitution::{equivalent_with, is_unifier_with, Judgement, Substitution};

#[derive(Parser)]
#[command(
    name = "symkb",
    version,
    about = "Decision procedures and unification constructions for KB, KDB and KTB"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide validity of a formula.
    Decide {
        #[arg(long)]
        logic: Logic,
        #[arg(long)]
        formula: String,
        /// Print the verdict as JSON, including any countermodel.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Work with substitutions given as JSON text or as a path to a JSON file.
    #[command(subcommand)]
    Subst(SubstCommand),
    /// Print the standard constructions.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run or inspect the lemma checks.
    #[command(subcommand)]
    Lemmas(LemmasCommand),
}

#[derive(Args)]
struct ProverArgs {
    #[arg(long, default_value = "kb")]
    logic: Logic,
    #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

#[derive(Subcommand)]
enum SubstCommand {
    /// Apply a substitution to a formula.
    Apply {
        #[arg(long)]
        subst: String,
        #[arg(long)]
        formula: String,
    },
    /// The substitution that applies `first` and then `then`.
    Compose {
        #[arg(long)]
        first: String,
        #[arg(long)]
        then: String,
    },
    /// Whether two substitutions are equivalent.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        prover: ProverArgs,
    },
    /// Whether a substitution unifies a formula.
    Unifier {
        #[arg(long)]
        subst: String,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        prover: ProverArgs,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Sigma {
        #[arg(long)]
        k: usize,
    },
    Tau {
        #[arg(long)]
        k: usize,
    },
    Lambda {
        #[arg(long)]
        k: usize,
    },
    Mu {
        #[arg(long)]
        k: usize,
    },
    /// The formula (x → ⊞x) ∧ (¬x → ⊟¬x).
    Phi,
    /// The guard-labelled chain carrying one plus and one minus witness path.
    Chain {
        #[arg(long)]
        k: usize,
    },
    /// Join two pointed models around their witness paths.
    Bridge {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        k: usize,
        /// Keep the result reflexive (needs reflexive inputs).
        #[arg(long)]
        reflexive: bool,
    },
}

#[derive(Subcommand)]
enum LemmasCommand {
    /// Run every check; exits 0 iff all of them pass.
    Run {
        #[arg(long)]
        logic: Logic,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        l_max: usize,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Describe one check.
    Show { id: String },
}

type CliResult = Result<ExitCode, String>;

fn formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| format!("bad formula: {e}"))
}

/// JSON given inline when it starts with `{`, otherwise read from a file.
fn json_text(arg: &str) -> Result<String, String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))
    }
}

fn substitution(arg: &str) -> Result<Substitution, String> {
    Substitution::from_json_str(&json_text(arg)?).map_err(|e| format!("bad substitution: {e}"))
}

fn pointed(path: &Path) -> Result<PointedModel, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PointedModel::from_json_str(&text).map_err(|e| format!("bad model in {}: {e}", path.display()))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("values serialise")
    );
}

fn judgement(j: Judgement) -> ExitCode {
    match j {
        Ok(true) => {
            println!("true");
            ExitCode::SUCCESS
        }
        Ok(false) => {
            println!("false");
            ExitCode::from(1)
        }
        Err(e) => {
            println!("unknown ({})", e.reason);
            ExitCode::from(2)
        }
    }
}

fn decide(logic: Logic, text: &str, as_json: bool, max_nodes: usize) -> CliResult {
    let f = formula(text)?;
    let verdict = decide_with(logic, &f, &ProverConfig { max_nodes });
    if as_json {
        print_json(&verdict.to_json());
    } else {
        println!("{verdict}");
    }
    Ok(match verdict.as_bool() {
        Some(true) => ExitCode::SUCCESS,
        Some(false) => ExitCode::from(1),
        None => ExitCode::from(2),
    })
}

fn subst(cmd: SubstCommand) -> CliResult {
    match cmd {
        SubstCommand::Apply { subst, formula: f } => {
            println!("{}", substitution(&subst)?.apply(&formula(&f)?));
            Ok(ExitCode::SUCCESS)
        }
        SubstCommand::Compose { first, then } => {
            print_json(
                &substitution(&first)?
                    .compose(&substitution(&then)?)
                    .to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        SubstCommand::Equiv {
            left,
            right,
            prover,
        } => {
            let config = ProverConfig {
                max_nodes: prover.max_nodes,
            };
            Ok(judgement(equivalent_with(
                prover.logic,
                &substitution(&left)?,
                &substitution(&right)?,
                &config,
            )))
        }
        SubstCommand::Unifier {
            subst,
            formula: f,
            prover,
        } => {
            let config = ProverConfig {
                max_nodes: prover.max_nodes,
            };
            Ok(judgement(is_unifier_with(
                prover.logic,
                &substitution(&subst)?,
                &formula(&f)?,
                &config,
            )))
        }
    }
}

fn gen(cmd: GenCommand) -> CliResult {
    let family = |family: Family, k: usize| print_json(&family.substitution(k).to_json());
    match cmd {
        GenCommand::Sigma { k } => family(Family::Sigma, k),
        GenCommand::Tau { k } => family(Family::Tau, k),
        GenCommand::Lambda { k } => family(Family::Lambda, k),
        GenCommand::Mu { k } => family(Family::Mu, k),
        GenCommand::Phi => println!("{}", nullary_formula()),
        GenCommand::Chain { k } => print_json(&ModelJson::from_model(&chain_model(k), Some(0))),
        GenCommand::Bridge {
            left,
            right,
            k,
            reflexive,
        } => {
            let mode = if reflexive {
                UnravelMode::Reflexive
            } else {
                UnravelMode::Plain
            };
            let b = bridge_model(&pointed(&left)?, &pointed(&right)?, k, mode)
                .map_err(|e| e.to_string())?;
            print_json(&json!({
                "model": ModelJson::from_model(&b.model, None),
                "root": b.root,
                "root_prime": b.root_prime,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lemmas(cmd: LemmasCommand) -> CliResult {
    match cmd {
        LemmasCommand::Run {
            logic,
            k_max,
            l_max,
            json,
            seed,
            max_nodes,
        } => {
            let mut config = SuiteConfig::new(logic, k_max, l_max, seed);
            config.max_nodes = max_nodes;
            let report = run_suite(&config);
            print!("{}", report.summary());
            if let Some(path) = json {
                let text =
                    serde_json::to_string_pretty(&report.to_json()).expect("reports serialise");
                std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        LemmasCommand::Show { id } => {
            print!("{}", describe(&id).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Decide {
            logic,
            formula,
            json,
            max_nodes,
        } => decide(logic, &formula, json, max_nodes),
        Command::Subst(cmd) => subst(cmd),
        Command::Gen(cmd) => gen(cmd),
        Command::Lemmas(cmd) => lemmas(cmd),
    };
    result.unwrap_or_else(|message| {
        eprintln!("error: {message}");
        ExitCode::from(3)
    })
}
