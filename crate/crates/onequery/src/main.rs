use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use onequery::harness::{self, Corpus};
use onequery::{parse_dimacs, parse_expr, Formula, SolverKind, TruthTable2};

#[derive(Parser)]
#[command(
    name = "onequery",
    about = "Verify that two non-adaptive SAT-oracle queries fold into one",
    version
)]
struct Cli {
    /// Solver backend for all oracle queries.
    #[arg(long, global = true, value_enum, default_value_t = OracleArg::Dpll)]
    oracle: OracleArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Dpll,
    Brute,
}

impl From<OracleArg> for SolverKind {
    fn from(arg: OracleArg) -> SolverKind {
        match arg {
            OracleArg::Dpll => SolverKind::Dpll,
            OracleArg::Brute => SolverKind::BruteForce,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify one decision table on one formula pair; JSON record to stdout.
    Run {
        /// Truth table as 4 bits "f00f01f10f11" (e.g. 0110) or a mnemonic
        /// (and, or, xor, xnor, nand, nor, a, b, not-a, not-b, andnot,
        /// notand-b).
        #[arg(long = "f")]
        table: String,
        /// First formula file: .cnf is read as DIMACS, anything else as
        /// expression text.
        #[arg(long)]
        a: PathBuf,
        /// Second formula file.
        #[arg(long)]
        b: PathBuf,
        /// Include exact circuit amplitudes after each stage.
        #[arg(long)]
        trace: bool,
    },
    /// Sweep all 16 tables over a corpus; JSON report to stdout, summary to
    /// stderr. Exits 0 only on zero mismatches and zero determinism
    /// violations.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
    Verify {
        /// Enumerate all small formulas exhaustively.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 3)]
        max_vars: u32,
        #[arg(long, default_value_t = 5)]
        max_nodes: usize,
        /// Pair budget; the Cartesian square is strided down to this.
        #[arg(long, default_value_t = 2000)]
        max_pairs: usize,
        /// Draw seeded random CNF pairs instead.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 8)]
        vars: u32,
        /// Clause count; the default ratio clauses/vars ≈ 4.2 mixes outcomes.
        #[arg(long)]
        clauses: Option<usize>,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Show how many one-query classical decision trees compute each table
    /// against an unstructured black box.
    Contrast,
}

fn load_formula(path: &Path) -> Result<Formula, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if path.extension().is_some_and(|ext| ext == "cnf") {
        let cnf = parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(onequery::formula::cnf_to_formula(&cnf))
    } else {
        parse_expr(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let solver = SolverKind::from(cli.oracle);
    match cli.command {
        Command::Run { table, a, b, trace } => {
            let Some(table) = TruthTable2::parse(&table) else {
                eprintln!("error: {table:?} is not a truth table or mnemonic");
                return ExitCode::from(2);
            };
            let (a, b) = match (load_formula(&a), load_formula(&b)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let record = harness::run_single(table, &a, &b, solver, trace);
            println!(
                "{}",
                serde_json::to_string_pretty(&record).expect("records always serialize")
            );
            if record.agreement {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Verify {
            exhaustive,
            max_vars,
            max_nodes,
            max_pairs,
            random: _,
            pairs,
            vars,
            clauses,
            width,
            seed,
        } => {
            let corpus: Corpus = if exhaustive {
                match harness::enumerate_small(max_vars, max_nodes, max_pairs) {
                    Ok(corpus) => corpus,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else {
                let clauses = clauses.unwrap_or_else(|| (vars as f64 * 4.2).round() as usize);
                if width as u32 > vars {
                    eprintln!("error: --width {width} exceeds --vars {vars}");
                    return ExitCode::from(2);
                }
                harness::random_corpus(pairs, vars, clauses, width, seed)
            };
            let report = harness::sweep(&corpus, solver);
            println!("{}", report.to_json());
            eprintln!("{}", report.human_summary());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Contrast => {
            let rows = harness::contrast_demo();
            print!("{}", harness::render_contrast(&rows));
            ExitCode::SUCCESS
        }
    }
}
