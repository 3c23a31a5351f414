use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cdv_core::commands::{
    defspace_fiber_report, defspace_verify_report, dualcomplex_classify_report,
    dualcomplex_invariants_report, germ_report, parse_config, smallres_report, Germ, InputError,
    DEFAULT_MAX_CUTOFF,
};
use cdv_core::corpus::{parse_corpus, run_corpus, BUNDLED_CORPUS};
use cdv_core::dualcomplex::SemistableKind;
use cdv_core::report::Report;
use cdv_core::smallres::GermSpec;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// Exact invariants of isolated threefold singularities.
#[derive(Parser)]
#[command(name = "cdv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tjurina number of a hypersurface germ at the origin.
    Tjurina(GermArgs),
    /// Milnor number of a hypersurface germ at the origin.
    Milnor(GermArgs),
    /// Small-resolution invariants of x^2+y^2+g(z,w) from a germ file.
    Smallres { file: PathBuf },
    /// Link invariant and deformation dimensions of a divisor configuration.
    DualcomplexInvariants {
        file: PathBuf,
        /// Ambient dimension of the resolution.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Compare ell with 9 - m for a simple elliptic section of multiplicity m.
        #[arg(long, value_name = "M", conflicts_with = "cusp")]
        simple_elliptic: Option<i64>,
        /// Compare ell with 9 - m + s for a cusp section.
        #[arg(long, value_name = "M,S", value_delimiter = ',', num_args = 2)]
        cusp: Option<Vec<i64>>,
        /// Write the dual complex as Graphviz DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Type II / III_1 / III_2 classification of a divisor configuration.
    DualcomplexClassify {
        file: PathBuf,
        /// Write the dual complex as Graphviz DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Symbolic identities of the deformation-space morphism Phi.
    DefspaceVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points for the sampled ramification check.
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Fiber of Phi over a rational point b = (b_{n-2}, ..., b_0).
    DefspaceFiber {
        #[arg(long)]
        n: usize,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        b: Vec<String>,
    },
    /// Runs a regression corpus (the bundled one by default).
    Corpus { path: Option<PathBuf> },
}

#[derive(Args)]
struct GermArgs {
    /// Polynomial text, e.g. "x^3+y^3+z^3+w^3".
    #[arg(allow_hyphen_values = true)]
    f: String,
    #[arg(long, value_delimiter = ',', default_value = "x,y,z,w")]
    vars: Vec<String>,
    /// Largest cutoff for the truncated-Macaulay cross-check; 0 skips it.
    #[arg(long, default_value_t = DEFAULT_MAX_CUTOFF)]
    max_cutoff: u32,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn write_dot(path: &Option<PathBuf>, dot: &str) -> Result<(), InputError> {
    if let Some(p) = path {
        fs::write(p, dot).map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn germ(kind: Germ, args: &GermArgs) -> Result<Report, InputError> {
    let cutoff = (args.max_cutoff > 0).then_some(args.max_cutoff);
    germ_report(kind, &args.f, &args.vars, cutoff)
}

fn execute(command: &Command) -> Result<Report, InputError> {
    match command {
        Command::Tjurina(args) => germ(Germ::Tjurina, args),
        Command::Milnor(args) => germ(Germ::Milnor, args),
        Command::Smallres { file } => {
            let spec: GermSpec = serde_json::from_str(&read(file)?)
                .map_err(|e| InputError(format!("invalid germ file: {e}")))?;
            smallres_report(&spec)
        }
        Command::DualcomplexInvariants {
            file,
            n,
            simple_elliptic,
            cusp,
            dot,
        } => {
            let config = parse_config(&read(file)?)?;
            let kind = match (simple_elliptic, cusp.as_deref()) {
                (Some(m), _) => Some(SemistableKind::SimpleElliptic { m: *m }),
                (None, Some([m, s])) => Some(SemistableKind::Cusp { m: *m, s: *s }),
                _ => None,
            };
            let report = dualcomplex_invariants_report(&config, *n, kind)?;
            let (_, dot_text) = dualcomplex_classify_report(&config)?;
            write_dot(dot, &dot_text)?;
            Ok(report)
        }
        Command::DualcomplexClassify { file, dot } => {
            let config = parse_config(&read(file)?)?;
            let (report, dot_text) = dualcomplex_classify_report(&config)?;
            write_dot(dot, &dot_text)?;
            Ok(report)
        }
        Command::DefspaceVerify { n, seed, trials } => defspace_verify_report(*n, *seed, *trials),
        Command::DefspaceFiber { n, b } => defspace_fiber_report(*n, b),
        Command::Corpus { path } => {
            let (text, source) = match path {
                Some(p) => (read(p)?, p.display().to_string()),
                None => (BUNDLED_CORPUS.to_string(), "bundled".to_string()),
            };
            let entries = parse_corpus(&text)?;
            Ok(run_corpus(&entries, &source))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            print!("{}", report.to_json());
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
