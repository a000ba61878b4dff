use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invforms::cli::{self, Command, Format, JobConfig, Source, EXIT_CODES_HELP};

/// Invariant differential forms on symmetric spaces, in exact arithmetic.
#[derive(Parser)]
#[command(name = "invforms", version, after_help = EXIT_CODES_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Dimensions of the invariant forms on m, degree by degree.
    Poincare(Opts),
    /// Chern-Weil and Chern-Simons generators of the invariant forms.
    Generators(Opts),
    /// Full check of the even x odd tensor decomposition.
    Decompose(Opts),
    /// Chern-Simons integral against the constant times tau(f).
    VerifyCs(Opts),
    /// Random and pair instances of the pair-of-projectors lemma.
    VerifyLemma(Opts),
    /// Built-in algebras and pairs.
    Catalog(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Args)]
#[command(after_help = EXIT_CODES_HELP)]
struct Opts {
    /// Catalog pair, e.g. sl2:cartan, su3:ad-diag(1,1,-1), group:su2.
    #[arg(long, conflicts_with_all = ["file", "algebra"])]
    pair: Option<String>,
    /// JSON algebra file (group pair unless it gives an involution or h_basis).
    #[arg(long, conflicts_with = "algebra")]
    file: Option<PathBuf>,
    /// Catalog algebra, e.g. su3; pair commands use its group pair.
    #[arg(long)]
    algebra: Option<String>,
    /// Largest invariant-polynomial degree searched.
    #[arg(long, default_value_t = 4)]
    max_poly_degree: usize,
    /// Largest form degree for poincare and verify-lemma (default dim m).
    #[arg(long)]
    max_form_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results are gathered in a fixed order.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for the random lemma instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random lemma instances.
    #[arg(long, default_value_t = 100)]
    instances: usize,
}

fn config(command: Command, o: Opts) -> JobConfig {
    let source = match (o.pair, o.file, o.algebra) {
        (Some(p), _, _) => Source::Pair(p),
        (_, Some(f), _) => Source::File(f),
        (_, _, Some(a)) => Source::Algebra(a),
        _ => Source::None,
    };
    JobConfig {
        command,
        source,
        max_poly_degree: o.max_poly_degree,
        max_form_degree: o.max_form_degree,
        format: match o.format {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
        },
        out: o.out,
        jobs: o.jobs,
        seed: o.seed,
        instances: o.instances,
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let cfg = match args.command {
        Sub::Poincare(o) => config(Command::Poincare, o),
        Sub::Generators(o) => config(Command::Generators, o),
        Sub::Decompose(o) => config(Command::Decompose, o),
        Sub::VerifyCs(o) => config(Command::VerifyCs, o),
        Sub::VerifyLemma(o) => config(Command::VerifyLemma, o),
        Sub::Catalog(o) => config(Command::Catalog, o),
    };
    let result = cli::run(&cfg).and_then(|outcome| cli::emit(&cfg, &outcome).map(|text| (text, outcome.exit_code)));
    match result {
        Ok((text, code)) => {
            if let Some(text) = text {
                print!("{text}");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
