use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use predmodal::document::ModelDocument;
use predmodal::efgames::{
    duplicator_wins_with_budget, frame_structure, EfError, DEFAULT_EF_BUDGET,
};
use predmodal::frames::{generate, ring_union, FrameFamilyTag};
use predmodal::translate::{embed, standard_translation, Logic};
use predmodal::validity::{in_logic, SearchBounds, ValidityError, Verdict};
use predmodal::verify::{verify_lemmas, Status, VerifyConfig};
use predmodal::{parse_fol, parse_modal, Frame, ModalFormula};

const EXIT_REFUTED: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "predmodal",
    version,
    about = "Predicate modal logic over chains and rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its normal form and basic measures as JSON.
    Parse {
        #[arg(long)]
        formula: PathBuf,
        /// Read a first-order formula instead of a modal one.
        #[arg(long)]
        fol: bool,
    },
    /// Print the standard translation or one of the two embeddings.
    Translate {
        #[arg(long, value_enum)]
        logic: TranslateMode,
        #[arg(long)]
        formula: PathBuf,
        /// Emit a TPTP `fof` line instead of the native syntax.
        #[arg(long)]
        tptp: bool,
        /// Free world variable for `st-only`.
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Bounded membership in L0 or L1.
    Check {
        #[arg(long, value_enum)]
        logic: LogicArg,
        #[arg(long)]
        formula: PathBuf,
        /// Size of the element pool domains are drawn from.
        #[arg(long, default_value_t = 2)]
        domain_bound: usize,
        /// Largest frame index searched; defaults to md + 3.
        #[arg(long)]
        frame_bound: Option<usize>,
        #[arg(long, default_value_t = predmodal::validity::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print a family frame in the document format.
    GenFrame {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
    },
    /// Play the EF game on two frame documents.
    EfCompare {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        rounds: usize,
        /// Also report the least rank up to MAX at which Spoiler wins.
        #[arg(long, value_name = "MAX")]
        find_rank: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EF_BUDGET)]
        budget: u64,
    },
    /// Run every check and write the report.
    VerifyLemmas {
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock milliseconds per check.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        alpha_max: Option<usize>,
        #[arg(long)]
        beta_max: Option<usize>,
        #[arg(long)]
        ring_max_worlds: Option<usize>,
        #[arg(long)]
        random_frames: Option<usize>,
        #[arg(long)]
        random_models: Option<usize>,
        #[arg(long)]
        truncation_models: Option<usize>,
        #[arg(long)]
        random_refutable: Option<usize>,
        #[arg(long)]
        ef_max_n: Option<usize>,
        #[arg(long)]
        chain_parity_max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateMode {
    #[value(name = "L0")]
    L0,
    #[value(name = "L1")]
    L1,
    StOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogicArg {
    #[value(name = "L0")]
    L0,
    #[value(name = "L1")]
    L1,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Self {
        match l {
            LogicArg::L0 => Logic::L0,
            LogicArg::L1 => Logic::L1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chain,
    Ring,
    Marked,
    Union,
    RingUnion,
}

/// An exit code with a message for standard error.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_modal(path: &Path) -> Result<ModalFormula, Failure> {
    parse_modal(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_frame(path: &Path) -> Result<Frame, Failure> {
    ModelDocument::parse(&read(path)?)
        .and_then(|d| d.to_frame())
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn cmd_parse(formula: &Path, fol: bool) -> Result<u8, Failure> {
    let text = read(formula)?;
    let located = |e: &dyn std::fmt::Display| input_error(format!("{}: {e}", formula.display()));
    let value = if fol {
        let phi = parse_fol(&text).map_err(|e| located(&e))?;
        serde_json::json!({
            "formula": phi.to_string(),
            "quantifier_rank": phi.quantifier_rank(),
            "free_vars": phi.free_vars(),
            "letters": phi.letters().map_err(|e| located(&e))?,
        })
    } else {
        let phi = parse_modal(&text).map_err(|e| located(&e))?;
        serde_json::json!({
            "formula": phi.to_string(),
            "modal_depth": phi.modal_depth(),
            "free_vars": phi.free_vars(),
            "letters": phi.letters().map_err(|e| located(&e))?,
        })
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("plain data")
    );
    Ok(0)
}

fn cmd_translate(
    mode: TranslateMode,
    formula: &Path,
    tptp: bool,
    var: &str,
) -> Result<u8, Failure> {
    let phi = read_modal(formula)?;
    let out = match mode {
        TranslateMode::StOnly => standard_translation(&phi, var),
        TranslateMode::L0 => embed(Logic::L0, &phi),
        TranslateMode::L1 => embed(Logic::L1, &phi),
    }
    .map_err(|e| input_error(e.to_string()))?;
    if tptp {
        let role = match mode {
            TranslateMode::StOnly => "axiom",
            _ => "conjecture",
        };
        println!("{}", out.to_tptp("translated", role));
    } else {
        println!("{out}");
    }
    Ok(0)
}

fn cmd_check(
    logic: Logic,
    formula: &Path,
    domain_bound: usize,
    frame_bound: Option<usize>,
    budget: u64,
) -> Result<u8, Failure> {
    let phi = read_modal(formula)?;
    let mut bounds = SearchBounds::for_formula(&phi)
        .map_err(|e| input_error(e.to_string()))?
        .with_domain_size(domain_bound)
        .with_budget(budget);
    if let Some(m) = frame_bound {
        bounds = bounds.with_frame_index(m);
    }
    match in_logic(logic, &phi, &bounds) {
        Ok(Verdict::Refuted(r)) => {
            eprintln!(
                "refuted in {logic}: frame index {}, world {}",
                r.frame_index,
                r.world_name()
            );
            println!("{}", ModelDocument::from_model(&r.model).to_json());
            Ok(EXIT_REFUTED)
        }
        Ok(Verdict::NoCountermodelUpTo(b)) => {
            let note = if b.decides(&phi) {
                "all frames up to md + 3 searched, membership settled"
            } else {
                "membership holds up to these bounds only"
            };
            println!(
                "member of {logic} up to frame index {} with domain pool {} ({note})",
                b.max_frame_index, b.max_domain_size
            );
            Ok(0)
        }
        Err(e @ ValidityError::BudgetExceeded { .. }) => Err(Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        }),
        Err(e) => Err(input_error(e.to_string())),
    }
}

fn cmd_gen_frame(family: FamilyArg, n: usize) -> Result<u8, Failure> {
    let frame = match family {
        FamilyArg::Chain => generate(FrameFamilyTag::ChainC0, n),
        FamilyArg::Ring => generate(FrameFamilyTag::RingC1, n),
        FamilyArg::Marked => generate(FrameFamilyTag::MarkedChain, n),
        FamilyArg::Union => generate(FrameFamilyTag::DisjointUnion, n),
        FamilyArg::RingUnion => ring_union(n),
    }
    .map_err(|e| input_error(e.to_string()))?;
    println!("{}", ModelDocument::from_frame(&frame).to_json());
    Ok(0)
}

fn ef_failure(e: EfError) -> Failure {
    match e {
        EfError::BudgetExceeded { .. } => Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        },
        other => input_error(other.to_string()),
    }
}

fn cmd_ef_compare(
    left: &Path,
    right: &Path,
    rounds: usize,
    find_rank: Option<usize>,
    budget: u64,
) -> Result<u8, Failure> {
    let a = frame_structure(&read_frame(left)?);
    let b = frame_structure(&read_frame(right)?);
    let wins = duplicator_wins_with_budget(&a, &b, rounds, budget).map_err(ef_failure)?;
    let mut value = serde_json::json!({ "rounds": rounds, "duplicator_wins": wins });
    if let Some(max) = find_rank {
        let mut rank = None;
        for r in 0..=max {
            if !duplicator_wins_with_budget(&a, &b, r, budget).map_err(ef_failure)? {
                rank = Some(r);
                break;
            }
        }
        value["distinguishing_rank"] = serde_json::json!(rank);
    }
    println!("{value}");
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { formula, fol } => cmd_parse(&formula, fol),
        Command::Translate {
            logic,
            formula,
            tptp,
            var,
        } => cmd_translate(logic, &formula, tptp, &var),
        Command::Check {
            logic,
            formula,
            domain_bound,
            frame_bound,
            budget,
        } => cmd_check(logic.into(), &formula, domain_bound, frame_bound, budget),
        Command::GenFrame { family, n } => cmd_gen_frame(family, n),
        Command::EfCompare {
            left,
            right,
            rounds,
            find_rank,
            budget,
        } => cmd_ef_compare(&left, &right, rounds, find_rank, budget),
        Command::VerifyLemmas {
            out,
            timings,
            seed,
            alpha_max,
            beta_max,
            ring_max_worlds,
            random_frames,
            random_models,
            truncation_models,
            random_refutable,
            ef_max_n,
            chain_parity_max_n,
        } => {
            let d = VerifyConfig::default();
            let config = VerifyConfig {
                seed: seed.unwrap_or(d.seed),
                alpha_max: alpha_max.unwrap_or(d.alpha_max),
                beta_max: beta_max.unwrap_or(d.beta_max),
                ring_max_worlds: ring_max_worlds.unwrap_or(d.ring_max_worlds),
                random_frames: random_frames.unwrap_or(d.random_frames),
                random_models: random_models.unwrap_or(d.random_models),
                truncation_models: truncation_models.unwrap_or(d.truncation_models),
                random_refutable: random_refutable.unwrap_or(d.random_refutable),
                ef_max_n: ef_max_n.unwrap_or(d.ef_max_n),
                chain_parity_max_n: chain_parity_max_n.unwrap_or(d.chain_parity_max_n),
                timings,
                ..d
            };
            let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
            let report = verify_lemmas(format!("predmodal {echo}"), &config);
            let text = report.render();
            match out {
                Some(path) => fs::write(&path, &text)
                    .map_err(|e| input_error(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(if report.count(Status::Fail) > 0 {
                EXIT_REFUTED
            } else if report.count(Status::Budget) > 0 {
                EXIT_BUDGET
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
