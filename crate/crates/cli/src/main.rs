//! Command-line front end: parse algebra specs, compute homology and
//! deformation data, and run the invariance checks.

mod commands;
mod report;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ainf",
    version,
    about = "Exact homology and deformation computations for A-infinity algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Largest tensor weight kept in the bar and cyclic complexes.
    #[arg(long, global = true, default_value_t = 7)]
    pub max_weight: usize,
    /// Largest internal degree allowed in the algebra.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: i64,
    /// Inclusive degree range `n..m` (or a single degree).
    #[arg(long, global = true, value_parser = parse_degrees)]
    pub degrees: Option<RangeInclusive<i64>>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized property checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of randomized cases.
    #[arg(long, global = true, default_value_t = 20)]
    pub cases: usize,
    /// Cap on the number of `S` steps used for periodic homology.
    #[arg(long, global = true)]
    pub stabilize: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a spec and check the algebra and its attachments.
    Validate { spec: PathBuf },
    /// Hochschild homology dimensions.
    Hh { spec: PathBuf },
    /// Cyclic homology dimensions.
    Hc { spec: PathBuf },
    /// Periodic cyclic homology from the `S`-ladder.
    Hp { spec: PathBuf },
    /// Closed graded traces and their comparison with `HC^0`.
    Traces { spec: PathBuf },
    /// Brackets of the structure and derivation, and randomized bracket identities with `--seed`.
    Bracket { spec: PathBuf },
    /// Hochschild cohomology `HH^p(A, A)` dimensions.
    Cohomology { spec: PathBuf },
    /// Obstruction to extending the spec's deformation by one order.
    Deform { spec: PathBuf },
    /// Invariance and comparison checks.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        spec: PathBuf,
        /// Also test whether a 1-connected quotient map preserves `HP`
        /// (experimental; never affects the status).
        #[arg(long)]
        conjecture_check: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// An equivalence induces isomorphisms on HH, HC and HP.
    #[value(name = "prop23")]
    EquivalenceInvariance,
    /// A quotient by an ideal vanishing in degree 0 preserves HP.
    #[value(name = "thm44")]
    NilpotentQuotient,
    /// HP agrees with classical HP of the degree-0 homology algebra.
    #[value(name = "thm45")]
    HpOfH0,
    /// Lie derivatives along derivations vanish on HP.
    #[value(name = "cor42")]
    LieDerivative,
    /// Exactness of the S, B, I sequence.
    Sbi,
    /// The total cyclic complex and the λ-complex agree.
    QuasiIso,
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<i64>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("bad degree {t:?}: {e}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => {
            let n = parse(s)?;
            Ok(n..=n)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts;
    let result = match cli.command {
        Command::Validate { spec } => commands::validate(&spec, &opts),
        Command::Hh { spec } => commands::hh(&spec, &opts),
        Command::Hc { spec } => commands::hc(&spec, &opts),
        Command::Hp { spec } => commands::hp(&spec, &opts),
        Command::Traces { spec } => commands::traces(&spec, &opts),
        Command::Bracket { spec } => commands::bracket(&spec, &opts),
        Command::Cohomology { spec } => commands::cohomology(&spec, &opts),
        Command::Deform { spec } => commands::deform(&spec, &opts),
        Command::Verify {
            claim,
            spec,
            conjecture_check,
        } => commands::verify(claim, &spec, conjecture_check, &opts),
    };
    match result {
        Ok(report) => {
            match opts.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
