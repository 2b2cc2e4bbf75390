//! Command-line front end for the `soergel` crate.
//!
//! Every subcommand is deterministic given its flags and prints canonical
//! JSON by default. Exit codes: 0 success, 1 a verification failed or a
//! computation was refused, 2 usage error.

pub mod commands;
pub mod output;

use clap::{Args, Parser, Subcommand};

pub use output::{emit, Format, Output, Table};

#[derive(Parser, Debug)]
#[command(name = "soergel", version, about = "Soergel modules, Hecke algebras and Koszul duality checks for S_n")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RankArg {
    /// n for the symmetric group S_n.
    #[arg(long)]
    pub rank: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kazhdan-Lusztig polynomials p_{x,w} for all x ≤ w.
    Kl {
        #[command(flatten)]
        rank: RankArg,
        /// Element as a word ("1,2,1") or in one-line notation ("321").
        #[arg(long)]
        w: String,
    },
    /// Bott-Samelson module of a word, optionally decomposed.
    Bs {
        #[command(flatten)]
        rank: RankArg,
        /// Comma-separated simple reflections, e.g. "1,2,1".
        #[arg(long)]
        word: String,
        /// Also split it into indecomposables.
        #[arg(long)]
        decompose: bool,
    },
    /// Graded dimensions of Hom(D_x, D_y).
    Hom {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Coinvariant algebra: dimension, Poincaré polynomial, staircase basis.
    Coinv {
        #[command(flatten)]
        rank: RankArg,
    },
    /// Decompose a Bott-Samelson module by search, with verified witnesses
    /// and its class in the Hecke algebra.
    Decompose {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        word: String,
    },
    /// Graded endomorphism algebra of a sum of indecomposables.
    Endo {
        #[command(flatten)]
        rank: RankArg,
        /// Elements to include (repeatable); all of S_n when omitted.
        #[arg(long)]
        w: Vec<String>,
    },
    /// Tate motives over a point: witnesses and random axiom checks.
    Tate {
        /// Run the fixed witness battery.
        #[arg(long)]
        demo: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random complexes per axiom check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Check Kos∘ι = v∘gKos on seeded random mixed complexes.
    KoszulSquare {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Graded Ext^k(L_x, L_y) over the dual algebra.
    Ext {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Largest k to report; defaults to the length of the resolution.
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Purity test for Ext between simple modules.
    Koszulity {
        #[command(flatten)]
        rank: RankArg,
    },
    /// The acceptance battery.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Parse `argv` and run; returns the exit code and writes to stdout/stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            print!("{}", emit(&out, cli.format));
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            commands::exit_code(&e)
        }
    }
}
