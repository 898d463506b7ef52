//! `qlc` — exact checks for curved Koszul duality of QLC algebras.

use clap::{Parser, Subcommand, ValueEnum};
use curved_koszul::cyclic::Kind;
use curved_koszul::document::{fixture_document, fixture_names, parse_document, Document};
use curved_koszul::koszul_complex::HochschildMethod;
use curved_koszul::runner;
use curved_koszul::strategy::Strategy;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "qlc",
    about = "Curved Koszul duality for quadratic-linear-constant algebras, verified exactly at finite truncation",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Bundled fixture name (see `qlc list`)
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Path to a JSON presentation document
    #[arg(long, global = true)]
    doc: Option<PathBuf>,
    /// Write the machine-readable report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run the data-parallel inner loops sequentially
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Koszul,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Per,
    Plus,
    Minus,
    DualPer,
    DualPlus,
    DualMinus,
}

#[derive(Subcommand)]
enum Command {
    /// List the bundled fixtures
    List,
    /// Check the QLC validity conditions
    Validate,
    /// Derive and verify the graph split (qR, φ, θ)
    Split,
    /// Build the Koszul dual curved coalgebra components
    Dual {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// Verify the curved coalgebra axioms and ψ-compatibility conditions
    Axioms {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// Weightwise Koszulness certificate with the PBW cross-check
    KoszulCert {
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
    },
    /// Cobar/bar constructions: d² = 0, the bullet identities, Maurer-Cartan
    Cobar {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// The total Koszul complex as a resolution at a truncation
    Resolve {
        #[arg(long, default_value_t = 5)]
        truncate: usize,
    },
    /// Hochschild homology with the two-truncation stability protocol
    Hh {
        #[arg(long, default_value_t = 6)]
        truncate: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Koszul)]
        method: MethodArg,
    },
    /// Cyclic homology of the dual curved algebra in the given bicomplex kind
    Hc {
        #[arg(long, value_enum, default_value_t = KindArg::Plus)]
        kind: KindArg,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        #[arg(long, default_value_t = 3)]
        n_max: i64,
    },
    /// The two routes to reduced cyclic homology and the X⁺ comparison
    FtCompare {
        #[arg(long, default_value_t = 4)]
        n_max: i64,
    },
    /// Koszul dual Lie coalgebra, Lie cobar and the commutative resolution
    Lie {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// The universal-coenveloping comparison at weights ≤ 4
    UcCompare,
}

fn load_document(cli: &Cli) -> Result<Document, String> {
    match (&cli.fixture, &cli.doc) {
        (Some(_), Some(_)) => Err("pass either --fixture or --doc, not both".into()),
        (Some(name), None) => fixture_document(name)
            .ok_or_else(|| format!("unknown fixture {name:?}; try `qlc list`")),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_document(&text).map_err(|e| e.to_string())
        }
        (None, None) => Err("a document is required: --fixture NAME or --doc PATH".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::Parallel };

    if matches!(cli.command, Command::List) {
        for name in fixture_names() {
            let doc = fixture_document(name).unwrap();
            let mode = match doc {
                Document::Associative(_) => "associative",
                Document::Commutative(_) => "commutative",
            };
            println!("{name}  ({mode})");
        }
        return ExitCode::SUCCESS;
    }

    let doc = match load_document(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let result = match &cli.command {
        Command::List => unreachable!(),
        Command::Validate => runner::run_validate(&doc),
        Command::Split => runner::run_split(&doc),
        Command::Dual { max_weight } => runner::run_dual(&doc, *max_weight),
        Command::Axioms { max_weight } => runner::run_axioms(&doc, *max_weight),
        Command::KoszulCert { max_weight } => runner::run_koszul_cert(&doc, *max_weight, strategy),
        Command::Cobar { max_weight } => runner::run_cobar(&doc, *max_weight),
        Command::Resolve { truncate } => runner::run_resolve(&doc, *truncate),
        Command::Hh { truncate, method } => {
            let m = match method {
                MethodArg::Koszul => HochschildMethod::Koszul,
                MethodArg::Bar => HochschildMethod::Bar,
            };
            runner::run_hh(&doc, *truncate, m, strategy)
        }
        Command::Hc { kind, max_weight, n_max } => {
            let k = match kind {
                KindArg::Per => Kind::Per,
                KindArg::Plus => Kind::Plus,
                KindArg::Minus => Kind::Minus,
                KindArg::DualPer => Kind::DualPer,
                KindArg::DualPlus => Kind::DualPlus,
                KindArg::DualMinus => Kind::DualMinus,
            };
            runner::run_hc(&doc, k, *max_weight, *n_max, strategy)
        }
        Command::FtCompare { n_max } => runner::run_ft_compare(&doc, *n_max, strategy),
        Command::Lie { max_weight } => runner::run_lie(&doc, *max_weight),
        Command::UcCompare => runner::run_uc_compare(&doc),
    };
    let wall = start.elapsed();

    match result {
        Ok(report) => {
            print!("{}", report.render_table(Some(wall)));
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error writing report: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
