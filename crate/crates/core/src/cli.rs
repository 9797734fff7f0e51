//! The `fdds` command-line tool.
//!
//! Exit codes: 0 found or success, 1 not divisible, 2 input error,
//! 3 not supported. Verdicts are printed as `#` comment lines on stdout so
//! that the output stays a valid system file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fdds::Fdds;
use crate::gen;
use crate::io::{format_fdds, format_forest, parse_fdds, to_dot};
use crate::oracle::{
    brute_divide, enumerate_fdds, EnumerationBudget, OracleError, MAX_ORACLE_NODES,
};
use crate::solvers::{
    divide_connected, root_connected, solve_axk, solve_component_extremal, unroll_divide,
    Certificate, ExtremalMode, SolveOutcome, Status,
};
use crate::unroll::cut_unroll;

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NOT_DIVISIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_SUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "fdds",
    version,
    about = "Algebra of finite discrete-time dynamical systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum or product of two systems.
    Op {
        op: BinaryOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an equation over systems.
    Solve {
        #[command(subcommand)]
        mode: SolveMode,
    },
    /// Print the canonical form, a DOT graph or a cut unroll.
    Inspect {
        file: PathBuf,
        #[arg(long, group = "view")]
        canon: bool,
        #[arg(long, group = "view")]
        dot: bool,
        #[arg(long, group = "view", value_name = "N")]
        unroll_cut: Option<usize>,
    },
    /// Write a random system.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every isomorphism class up to a size, one canonical form per line.
    Enumerate {
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Exhaustive search for every X with A X = B.
    BruteDivide {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BinaryOp {
    Sum,
    Product,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Minimal,
    Maximal,
}

#[derive(Subcommand, Debug)]
enum SolveMode {
    /// Connected X with A X = B.
    DivideConnected {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected X with X^k = A.
    Root {
        a: PathBuf,
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected X with A X^k = B.
    Axk {
        a: PathBuf,
        b: PathBuf,
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// X with Unr(A) Unr(X) = Unr(B).
    UnrollDivide {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Component-minimal or component-maximal X with A X = B.
    DivideExtremal {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure(String);

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_FOUND
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Op { op, a, b, out } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let r = match op {
                BinaryOp::Sum => a.sum(&b),
                BinaryOp::Product => a.product(&b),
            };
            emit(stdout, out.as_deref(), &format_fdds(&r))?;
            Ok(EXIT_FOUND)
        }
        Command::Solve { mode } => solve(mode, stdout),
        Command::Inspect {
            file,
            canon,
            dot,
            unroll_cut,
        } => {
            let a = load(&file)?;
            let text = match (canon, dot, unroll_cut) {
                (_, _, Some(n)) => format_forest(&cut_unroll(&a, n).forest),
                (_, true, _) => to_dot(&a),
                _ => format!("{}\n", a.canonical_form()),
            };
            emit(stdout, None, &text)?;
            Ok(EXIT_FOUND)
        }
        Command::Generate {
            seed,
            nodes,
            connected,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = if connected {
                if nodes == 0 {
                    return Err(Failure("a connected system needs at least one node".into()));
                }
                gen::random_connected(&mut rng, nodes)
            } else {
                gen::random_fdds(&mut rng, nodes)
            };
            emit(stdout, out.as_deref(), &format_fdds(&a))?;
            Ok(EXIT_FOUND)
        }
        Command::Enumerate {
            max_nodes,
            connected,
        } => {
            let mut budget = EnumerationBudget::new(max_nodes);
            if connected {
                budget = budget.connected();
            }
            let classes = enumerate_fdds(budget).map_err(|e| Failure(e.to_string()))?;
            let mut text = String::new();
            let mut count = 0usize;
            for x in classes {
                text.push_str(&x.canonical_form());
                text.push('\n');
                count += 1;
            }
            text.push_str(&format!("# classes: {count}\n"));
            emit(stdout, None, &text)?;
            Ok(EXIT_FOUND)
        }
        Command::BruteDivide {
            a,
            b,
            max_nodes,
            connected,
        } => {
            let (a, b) = (load(&a)?, load(&b)?);
            if max_nodes > MAX_ORACLE_NODES {
                return Err(Failure(OracleError::Budget(max_nodes).to_string()));
            }
            if !a.is_empty() && b.len() / a.len() > max_nodes {
                return Err(Failure(format!(
                    "quotient size {} exceeds --max-nodes {max_nodes}",
                    b.len() / a.len()
                )));
            }
            let sols = brute_divide(&a, &b, connected).map_err(|e| Failure(e.to_string()))?;
            let mut text = format!("# solutions: {}\n", sols.len());
            for x in &sols {
                text.push_str(&x.canonical_form());
                text.push('\n');
            }
            emit(stdout, None, &text)?;
            Ok(if sols.is_empty() {
                EXIT_NOT_DIVISIBLE
            } else {
                EXIT_FOUND
            })
        }
    }
}

fn solve(mode: SolveMode, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (outcome, out) = match mode {
        SolveMode::DivideConnected { a, b, out } => (divide_connected(&load(&a)?, &load(&b)?), out),
        SolveMode::Root { a, k, out } => (root_connected(&load(&a)?, k), out),
        SolveMode::Axk { a, b, k, out } => (solve_axk(&load(&a)?, &load(&b)?, k), out),
        SolveMode::UnrollDivide { a, b, out } => (unroll_divide(&load(&a)?, &load(&b)?), out),
        SolveMode::DivideExtremal { a, b, mode, out } => {
            let mode = match mode {
                ModeArg::Minimal => ExtremalMode::Minimal,
                ModeArg::Maximal => ExtremalMode::Maximal,
            };
            (solve_component_extremal(&load(&a)?, &load(&b)?, mode), out)
        }
    };
    report(stdout, &outcome, out.as_deref())
}

fn report(
    stdout: &mut dyn Write,
    outcome: &SolveOutcome,
    out: Option<&Path>,
) -> Result<i32, Failure> {
    let mut text = String::new();
    match outcome.status {
        Status::Found => {
            text.push_str("# status: found\n");
            match &outcome.certificate {
                Some(Certificate::Product(_)) => {
                    text.push_str("# verified: recomputed product is isomorphic to the target\n")
                }
                Some(Certificate::CutProduct { n, .. }) => text.push_str(&format!(
                    "# verified: cut unroll products agree at depth {n}\n"
                )),
                None => text.push_str("# verified: trivial instance\n"),
            }
        }
        Status::NotDivisible => text.push_str("# status: not-divisible\n"),
        Status::NotSupported => text.push_str("# status: not-supported\n"),
    }
    let solution = match (&outcome.status, &outcome.solution) {
        (Status::Found, Some(x)) => Some(format_fdds(x)),
        _ => None,
    };
    match (solution, out) {
        (Some(sol), Some(path)) => {
            write_file(path, &sol)?;
            text.push_str(&format!("# solution written to {}\n", path.display()));
        }
        (Some(sol), None) => text.push_str(&sol),
        (None, _) => {}
    }
    emit(stdout, None, &text)?;
    Ok(match outcome.status {
        Status::Found => EXIT_FOUND,
        Status::NotDivisible => EXIT_NOT_DIVISIBLE,
        Status::NotSupported => EXIT_NOT_SUPPORTED,
    })
}

fn load(path: &Path) -> Result<Fdds, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_fdds(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure(format!("writing output: {e}"))),
    }
}
