use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bocal::commands::{self, CommandError, Context, ModuleChoice, TestSet};
use bocal::document::{ReportDocument, Run};

#[derive(Parser, Debug)]
#[command(name = "bocal", version, about = "Exact computations with finite-dimensional algebras and dimension bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Base field: Q or a prime p for F_p.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Largest syzygy index computed before reporting a lower bound.
    #[arg(long, global = true, default_value_t = 10)]
    cutoff: usize,
    #[arg(long, global = true)]
    s: Option<usize>,
    #[arg(long, global = true)]
    t: Option<usize>,
    #[arg(long, global = true)]
    l: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Seed for randomized searches.
    #[arg(long, global = true, env = "BOCAL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tests {
    AllSimples,
    AllProjectives,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Choice {
    All,
    Simples,
    SimplesProjectives,
    Regular,
}

impl From<Choice> for ModuleChoice {
    fn from(c: Choice) -> Self {
        match c {
            Choice::All => ModuleChoice::AllIndecomposables,
            Choice::Simples => ModuleChoice::Simples,
            Choice::SimplesProjectives => ModuleChoice::SimplesAndProjectives,
            Choice::Regular => ModuleChoice::Regular,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and certify an algebra file with its subalgebras and towers.
    Build { file: String },
    /// Loewy length, Cartan matrix, radical layers and global dimension.
    Invariants { algebra: String },
    /// Projective dimension of a module with its certificate.
    Pd { algebra: String, module: String },
    /// Check every step of a tower of left idealized extensions.
    TowerCheck {
        tower: String,
        #[arg(long)]
        skip_middle: bool,
    },
    /// Build and verify an IT witness from a tower.
    ItPipeline {
        tower: String,
        #[arg(long, value_enum, default_value_t = Tests::AllSimples)]
        tests: Tests,
    },
    /// Endomorphism algebra of a projective and the syzygy comparison in degrees up to J.
    Endo {
        algebra: String,
        /// Summands, e.g. "P(1)+P(2')".
        projective: String,
        #[arg(long, default_value_t = 1)]
        j: usize,
    },
    #[command(subcommand)]
    Oracle(Oracle),
    /// Everything computable for a corpus entry, or for all of them.
    Report {
        entry: String,
        /// Compare each computed value against the entry's expected value.
        #[arg(long, visible_alias = "compare", alias = "compare-paper")]
        compare_expected: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Oracle {
    /// Nakayama test and enumeration of indecomposables.
    Nakayama { algebra: String },
    /// Search for an extension-dimension witness.
    Extdim {
        algebra: String,
        #[arg(long = "degree", default_value_t = 0)]
        degree: usize,
        #[arg(long = "with", value_enum, default_value_t = Choice::All)]
        with: Choice,
        /// Also enumerate small modules over F_p and check they decompose.
        #[arg(long)]
        census: bool,
    },
    /// Search for a weak resolution-dimension witness.
    Wresol {
        algebra: String,
        #[arg(long = "degree", default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Choice::SimplesProjectives)]
        mgen: Choice,
    },
}

fn context(g: &Global) -> Result<Context, CommandError> {
    let mut params = BTreeMap::new();
    for (k, v) in [("s", g.s), ("t", g.t), ("l", g.l), ("n", g.n), ("k", g.k), ("r", g.r)] {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    }
    Ok(Context { seed: g.seed, field: g.field.parse().map_err(|e: bocal::linalg::LinalgError| CommandError::Usage(e.to_string()))?, cutoff: g.cutoff, params })
}

fn runs(ctx: &Context, command: &Command) -> Vec<Result<Run, CommandError>> {
    let one = |r| vec![r];
    match command {
        Command::Build { file } => one(commands::build(ctx, file)),
        Command::Invariants { algebra } => one(commands::invariants(ctx, algebra)),
        Command::Pd { algebra, module } => one(commands::projective_dimension(ctx, algebra, module)),
        Command::TowerCheck { tower, skip_middle } => one(commands::tower_check(ctx, tower, *skip_middle)),
        Command::ItPipeline { tower, tests } => {
            let tests = match tests {
                Tests::AllSimples => TestSet::AllSimples,
                Tests::AllProjectives => TestSet::AllProjectives,
            };
            one(commands::it_pipeline(ctx, tower, tests))
        }
        Command::Endo { algebra, projective, j } => one(commands::endo(ctx, algebra, projective, *j)),
        Command::Oracle(Oracle::Nakayama { algebra }) => one(commands::oracle_nakayama(ctx, algebra)),
        Command::Oracle(Oracle::Extdim { algebra, degree, with, census }) => {
            one(commands::oracle_extdim(ctx, algebra, *degree, (*with).into(), *census))
        }
        Command::Oracle(Oracle::Wresol { algebra, degree, mgen }) => {
            one(commands::oracle_wresol(ctx, algebra, *degree, (*mgen).into()))
        }
        Command::Report { entry, compare_expected } if entry == "all" => commands::report_all(ctx, *compare_expected),
        Command::Report { entry, compare_expected } => one(commands::report(ctx, entry, *compare_expected)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut doc = ReportDocument::new(cli.global.seed);
    match context(&cli.global) {
        Ok(ctx) => {
            for r in runs(&ctx, &cli.command) {
                match r {
                    Ok(run) => doc.runs.push(run),
                    Err(e) => doc.errors.push(e.record()),
                }
            }
        }
        Err(e) => doc.errors.push(e.record()),
    }
    let text = match cli.global.format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("bocal: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(doc.exit_code() as u8)
}
