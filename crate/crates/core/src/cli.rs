//! Command-line front end.
//!
//! Results go to stdout as DIMACS-style lines: `s` status, `o` weight,
//! `v` assignment, `k` kernel parameter, `c` comments. Decision commands exit
//! with 10 (YES) or 20 (NO); anything else that finishes exits 0, and usage or
//! input errors exit 1 with a message on stderr.
//!
//! Reported weights (`o` lines) are for the file as written, so they include
//! the weight that normalization set aside: tautologies, and the part of
//! conflicting unit pairs that every assignment satisfies. The kernel
//! commands decide their question for the normalized formula, where
//! tautologies are gone.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::autarky::{is_expanding, matching_autarky};
use crate::bounds::improved_lower_bound;
use crate::compactify::compactify;
use crate::dimacs::{emit_dimacs, parse_document};
use crate::formula::{Assignment, Formula, Literal, Weight};
use crate::generate::{generate, Family, GeneratorConfig};
use crate::kernel::{kernelize_half, kernelize_phi, KernelConfig, KernelOutcome, Verdict};
use crate::oracle::{max_sat_exact, DEFAULT_BUDGET};
use crate::q5::Q5;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_YES: i32 = 10;
pub const EXIT_NO: i32 = 20;

#[derive(Debug, Parser)]
#[command(
    name = "maxsat-golden",
    version,
    about = "Golden-ratio MAX-SAT bounds and kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a CNF/WCNF file and report its properties.
    Validate { file: PathBuf },
    /// Certified lower bound with a witnessing assignment.
    Bound { file: PathBuf },
    /// Assignment meeting the bound, as `v` lines.
    Assign { file: PathBuf },
    /// Matching autarky: `U`, its assignment, and the remaining formula.
    Autarky { file: PathBuf },
    /// Compact form of the (autarky-reduced) formula.
    Compactify { file: PathBuf },
    /// Decide or kernelize `sat(F) ≥ ⌊φ·w(F)⌋ + k` (UCF input).
    KernelPhi {
        file: PathBuf,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Decide or kernelize `sat(F) ≥ ⌊w(F)/2⌋ + k`.
    KernelHalf {
        file: PathBuf,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Exact optimum by exhaustive search.
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Generate a seeded random instance as WCNF.
    Gen {
        /// compact, ucf, general, triangle-batch or tight(L)
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, default_value_t = 10)]
        n: usize,
        #[arg(short, default_value_t = 20)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
    },
    /// Weight of an assignment given as signed literals.
    Verify {
        file: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
    },
}

/// An input error, reported on stderr with exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// A parsed input: the normalized formula and the weight set aside for it.
struct Input {
    formula: Formula,
    guaranteed: Weight,
}

impl Input {
    /// `F` with conflicting unit pairs cancelled, and the total set-aside weight.
    fn ucf(&self) -> (Formula, Weight) {
        let (f, cancelled) = self.formula.ucf_reduce();
        (f, cancelled + &self.guaranteed)
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Input, Failure> {
    let text = read_input(path)?;
    let doc = parse_document(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    for w in &doc.warnings {
        writeln!(err, "warning: {}: {w}", path.display())?;
    }
    let (formula, report) = doc
        .to_formula()
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok(Input {
        formula,
        guaranteed: report.guaranteed_weight,
    })
}

fn v_line(assignment: &Assignment) -> String {
    let mut line = String::from("v");
    for lit in assignment.to_dimacs() {
        line.push_str(&format!(" {lit}"));
    }
    line.push_str(" 0");
    line
}

/// Makes `assignment` total on `formula`; free variables get FALSE.
fn complete(mut assignment: Assignment, formula: &Formula) -> Assignment {
    for &v in formula.vars() {
        if assignment.get(v).is_none() {
            assignment.set(v, false);
        }
    }
    assignment
}

fn yes_no(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            let input = load(&file, err)?;
            let f = &input.formula;
            writeln!(out, "c variables {}", f.num_vars())?;
            writeln!(out, "c clauses {}", f.num_clauses())?;
            writeln!(out, "c total weight {}", f.total_weight())?;
            writeln!(out, "c set-aside weight {}", input.guaranteed)?;
            writeln!(out, "c ucf {}", f.is_ucf())?;
            writeln!(out, "c compact {}", f.is_compact())?;
            writeln!(out, "c expanding {}", is_expanding(f))?;
            writeln!(out, "s VALID")?;
            Ok(EXIT_OK)
        }
        Command::Bound { file } => {
            let input = load(&file, err)?;
            let (ucf, set_aside) = input.ucf();
            let cert = improved_lower_bound(&ucf)?;
            let bound = cert.bound.clone() + Q5::from_weight(&set_aside);
            let assignment = complete(cert.assignment, &input.formula);
            let achieved = input.formula.evaluate(&assignment)? + &input.guaranteed;
            writeln!(out, "c bound {bound}")?;
            writeln!(out, "c bound ~ {:.6}", bound.to_f64())?;
            writeln!(out, "c autarky weight {}", cert.autarky_weight)?;
            writeln!(out, "c remainder variables {}", cert.remainder_vars)?;
            writeln!(out, "s BOUND MET")?;
            writeln!(out, "o {achieved}")?;
            writeln!(out, "{}", v_line(&assignment))?;
            Ok(EXIT_OK)
        }
        Command::Assign { file } => {
            let input = load(&file, err)?;
            let (ucf, _) = input.ucf();
            let cert = improved_lower_bound(&ucf)?;
            let assignment = complete(cert.assignment, &input.formula);
            let achieved = input.formula.evaluate(&assignment)? + &input.guaranteed;
            writeln!(out, "o {achieved}")?;
            writeln!(out, "{}", v_line(&assignment))?;
            Ok(EXIT_OK)
        }
        Command::Autarky { file } => {
            let input = load(&file, err)?;
            let d = matching_autarky(&input.formula)?;
            let vars: Vec<String> = d.vars.iter().map(|v| v.id().to_string()).collect();
            writeln!(out, "c autarky variables {}", vars.join(" "))?;
            writeln!(out, "c satisfied weight {}", d.satisfied.total_weight())?;
            writeln!(out, "{}", v_line(&d.beta))?;
            writeln!(out, "c remainder")?;
            write!(out, "{}", emit_dimacs(&d.remainder))?;
            Ok(EXIT_OK)
        }
        Command::Compactify { file } => {
            let input = load(&file, err)?;
            let (mut f, _) = input.ucf();
            if !is_expanding(&f) {
                writeln!(out, "c not expanding; compactifying the autarky remainder")?;
                f = matching_autarky(&f)?.remainder;
            }
            let (compact, lift) = compactify(&f)?;
            let flipped: Vec<String> = lift.flipped.iter().map(|v| v.id().to_string()).collect();
            writeln!(out, "c flipped {}", flipped.join(" "))?;
            write!(out, "{}", emit_dimacs(&compact))?;
            Ok(EXIT_OK)
        }
        Command::KernelPhi { file, k, budget } => {
            let input = load(&file, err)?;
            let outcome = kernelize_phi(
                &input.formula,
                k,
                &KernelConfig {
                    oracle_budget: budget,
                },
            )?;
            report_kernel(&outcome, out)
        }
        Command::KernelHalf { file, k, budget } => {
            let input = load(&file, err)?;
            let outcome = kernelize_half(
                &input.formula,
                k,
                &KernelConfig {
                    oracle_budget: budget,
                },
            )?;
            report_kernel(&outcome, out)
        }
        Command::Exact { file, budget } => {
            let input = load(&file, err)?;
            let r = max_sat_exact(&input.formula, budget)?;
            writeln!(out, "s OPTIMUM FOUND")?;
            writeln!(out, "o {}", r.optimum + &input.guaranteed)?;
            writeln!(out, "{}", v_line(&r.witness))?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            family,
            seed,
            n,
            m,
            max_weight,
        } => {
            let f = generate(&GeneratorConfig::new(family, n, m, max_weight, seed))?;
            write!(out, "{}", emit_dimacs(&f))?;
            Ok(EXIT_OK)
        }
        Command::Verify { file, assignment } => {
            let input = load(&file, err)?;
            let text = read_input(&assignment)?;
            let a = parse_assignment(&text)?;
            let value = input.formula.evaluate(&a)? + &input.guaranteed;
            writeln!(out, "o {value}")?;
            Ok(EXIT_OK)
        }
    }
}

fn report_kernel(outcome: &KernelOutcome, out: &mut dyn Write) -> Outcome {
    writeln!(out, "c rule {:?}", outcome.rule)?;
    if let Some((f, k)) = &outcome.reduced {
        writeln!(out, "c reduced to {} variables, k' = {k}", f.num_vars())?;
    }
    match &outcome.verdict {
        Verdict::Yes => {
            writeln!(out, "s YES")?;
            Ok(yes_no(true))
        }
        Verdict::No => {
            writeln!(out, "s NO")?;
            Ok(yes_no(false))
        }
        Verdict::Kernel { formula, parameter } => {
            writeln!(out, "s KERNEL")?;
            writeln!(out, "k {parameter}")?;
            if let Some(cert) = &outcome.certificate {
                writeln!(out, "c variable limit {}", cert.var_limit)?;
                if let Some(w) = &cert.weight_limit {
                    writeln!(out, "c weight limit {w}")?;
                }
            }
            write!(out, "{}", emit_dimacs(formula))?;
            Ok(EXIT_OK)
        }
    }
}

/// Reads signed literals, skipping `c`/`s`/`o` lines and a leading `v` on
/// value lines. A `0` token is ignored.
fn parse_assignment(text: &str) -> Result<Assignment, Failure> {
    let mut a = Assignment::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let body = match line.split_whitespace().next() {
            None | Some("c") | Some("s") | Some("o") | Some("k") => continue,
            Some("v") => &line[1..],
            Some(_) => line,
        };
        for token in body.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| {
                Failure(format!("assignment line {}: bad literal `{token}`", i + 1))
            })?;
            if value == 0 {
                continue;
            }
            let lit = Literal::from_dimacs(value).ok_or_else(|| {
                Failure(format!("assignment line {}: bad literal `{token}`", i + 1))
            })?;
            if a.set(lit.var(), lit.is_positive()) == Some(!lit.is_positive()) {
                return Err(Failure(format!(
                    "assignment gives variable {} both values",
                    lit.var().id()
                )));
            }
        }
    }
    Ok(a)
}
