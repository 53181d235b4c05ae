use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use braidrep::braid::BraidWord;
use braidrep::harness::{export_graded, export_matrix, run_suite, ExportFormat, SuiteParams, SUITES};
use braidrep::matrix::Matrix;
use braidrep::quantum::{quant, PINNED_SIGN};
use braidrep::ring::Substitution;
use braidrep::{bkl, fox, gassner, lawrence, Error, Result};

#[derive(Parser)]
#[command(name = "braidrep", version, about = "Exact coloured braid group representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Uncoloured Burau
    Burau,
    /// Reduced Burau on e_j − e_{j+1}
    ReducedBurau,
    /// Over-strand coloured Γ, or induced Gassner with --induced
    Gassner,
    /// Weight-one quantum action (always induced)
    Quant,
    Bkl,
    Lawrence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    CsvMonomial,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ExportFormat::Json,
            Format::Latex => ExportFormat::Latex,
            Format::CsvMonomial => ExportFormat::CsvMonomial,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    /// Code sequences U(k)
    Code,
    /// Forks (n = 3, m = 2): BKL(s, t^{-1}), related to code sequences by P
    Fork,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix of a braid word in one of the representations
    Rep {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Signed generator indices, e.g. "1 -2 1"
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        braid: String,
        /// One variable per strand
        #[arg(long)]
        colored: bool,
        /// All n! blocks of the induced representation
        #[arg(long)]
        induced: bool,
        /// Assignments such as "q1=q,q2=q" into the listed target variables
        #[arg(long)]
        specialize: Option<String>,
        /// Target variables for --specialize (defaults to the source variables)
        #[arg(long)]
        into: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Basis::Code)]
        basis: Basis,
    },
    /// Fox-calculus matrices
    Fox {
        #[command(subcommand)]
        what: FoxCommand,
    },
    /// Run a verification suite; exit code 0 iff it passes
    Verify {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_m: Option<u32>,
    },
    /// List the verification suites
    Suites,
}

#[derive(Subcommand)]
enum FoxCommand {
    /// Magnus matrix 𝔞(∂φ(x_i)/∂x_j)
    Gassner {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        braid: String,
        /// Conjugate into the over-strand Γ basis
        #[arg(long)]
        gamma_basis: bool,
        /// (n−1)×(n−1) matrix in the g-basis (pure braids)
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Output {
    Plain(Matrix),
    Graded(braidrep::graded::GradedMap),
}

fn specialize(out: Output, assign: Option<&str>, into: Option<&str>) -> Result<Output> {
    let Some(assign) = assign else { return Ok(out) };
    let src = match &out {
        Output::Plain(m) => m.vars().clone(),
        Output::Graded(g) => g.vars().clone(),
    };
    let dst = match into {
        Some(names) => braidrep::ring::VarSet::new(names.split(',').map(str::trim))?,
        None => src.clone(),
    };
    let sub = Substitution::parse_assignments(&src, &dst, assign)?;
    Ok(match out {
        Output::Plain(m) => Output::Plain(m.substitute(&sub)?),
        Output::Graded(g) => Output::Graded(g.substitute(&sub)?),
    })
}

fn rep(
    family: Family,
    n: usize,
    m: u32,
    braid: &str,
    colored: bool,
    induced: bool,
    basis: Basis,
) -> Result<Output> {
    let w = BraidWord::parse(n, braid)?;
    if basis == Basis::Fork && !(family == Family::Lawrence && n == 3 && m == 2 && !colored && !induced) {
        return Err(Error::InvalidBounds("--basis fork needs uncoloured lawrence with n = 3, m = 2".into()));
    }
    Ok(match family {
        Family::Burau => Output::Plain(gassner::burau_matrix(&w)?),
        Family::ReducedBurau => Output::Plain(gassner::reduced_burau_matrix(&w)?),
        Family::Gassner if induced => Output::Graded(gassner::induced_gassner(&w, None)?),
        Family::Gassner => Output::Plain(gassner::gamma(&w)?),
        Family::Quant => Output::Graded(quant(&w, PINNED_SIGN, None)?),
        Family::Bkl if induced => Output::Graded(bkl::induced_bkl(&w, None)?),
        Family::Bkl if colored => Output::Plain(bkl::cbkl(&w)?),
        Family::Bkl => Output::Plain(bkl::bkl_matrix(&w)?),
        Family::Lawrence if induced => Output::Graded(lawrence::induced_lawrence(&w, m, None)?),
        Family::Lawrence if colored => Output::Plain(lawrence::claw(&w, m)?),
        Family::Lawrence if basis == Basis::Fork => Output::Plain(fork_basis_lawrence(&w)?),
        Family::Lawrence => Output::Plain(lawrence::lawrence_matrix(&w, m)?),
    })
}

/// Uncoloured BKL(s, t^{-1}) on the fork basis, which P carries to the
/// code-sequence Lawrence matrix.
fn fork_basis_lawrence(w: &BraidWord) -> Result<Matrix> {
    let v = lawrence::uncolored_vars();
    let s = braidrep::ring::LaurentPoly::var(&v, "s")?;
    let ti = braidrep::ring::LaurentPoly::var_pow(&v, "t", -1)?;
    let mut acc = Matrix::identity(&v, 3);
    for l in w.letters() {
        let g = bkl::bkl_generator_matrix(3, l.index, &s, &ti)?;
        acc = acc.mul(&if l.positive { g } else { g.inverse()? })?;
    }
    Ok(acc)
}

fn print(out: &Output, format: Format) {
    match out {
        Output::Plain(m) => print!("{}", export_matrix(m, format.into())),
        Output::Graded(g) => print!("{}", export_graded(g, format.into())),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Rep {
            family,
            n,
            m,
            braid,
            colored,
            induced,
            specialize: assign,
            into,
            format,
            basis,
        } => {
            let out = rep(family, n, m, &braid, colored, induced, basis)?;
            let out = specialize(out, assign.as_deref(), into.as_deref())?;
            print(&out, format);
            Ok(true)
        }
        Command::Fox {
            what:
                FoxCommand::Gassner {
                    n,
                    braid,
                    gamma_basis,
                    reduced,
                    format,
                },
        } => {
            let w = BraidWord::parse(n, &braid)?;
            let m = if reduced {
                fox::reduced_magnus_matrix(&w)?
            } else if gamma_basis {
                fox::magnus_in_gamma_basis(&w)?
            } else {
                fox::magnus_matrix(&w)
            };
            print(&Output::Plain(m), format);
            Ok(true)
        }
        Command::Verify {
            suite,
            seed,
            max_n,
            max_m,
        } => {
            let start = Instant::now();
            let report = run_suite(&suite, &SuiteParams { seed, max_n, max_m })?;
            println!("{report}");
            eprintln!("{suite}: {} cases in {:.3?}", report.cases, start.elapsed());
            Ok(report.passed())
        }
        Command::Suites => {
            for s in SUITES {
                println!("{s}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
