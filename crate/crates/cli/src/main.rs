//! triqent: decay curves, death thresholds, and a phase-flip code demo for
//! three qubits under local dephasing.
//!
//! Every subcommand prints one table, as CSV (default) or a JSON array of
//! objects. Exit codes: 0 success, 1 runtime or verification failure, 2
//! usage error.

mod grid;
mod output;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Cell, Table};
use triqent_core::dynamics::{self, Quantity};
use triqent_core::qec::{self, ErrorMode};
use triqent_core::states::Family;

#[derive(Parser)]
#[command(
    name = "triqent",
    version,
    about = "Three-qubit entanglement under local dephasing: curves, thresholds, and a phase-flip code"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decay curves for the noisy GHZ family
    Ghz(SweepArgs),
    /// Decay curves for the noisy W family
    W(SweepArgs),
    /// Decay curves for the noisy unbalanced GHZ-class family
    Gb(SweepArgs),
    /// Phase-flip code sweep over logical amplitude and noise weight
    Qec(QecArgs),
    /// Mixing-weight detection thresholds at kappa_t = 0
    Thresholds(ThresholdArgs),
    /// Cross-check numeric curves against closed forms; exit 1 on mismatch
    VerifyTables,
}

#[derive(Args)]
struct SweepArgs {
    /// Mixing weight grid: a value, a comma list, or lo:hi:step
    #[arg(long, default_value = "1")]
    q: String,
    /// Dimensionless time (kappa t) grid
    #[arg(long, default_value = "0:3:0.05")]
    kt: String,
}

#[derive(Args)]
struct QecArgs {
    /// Logical amplitude grid
    #[arg(long, default_value = "0:1:0.05")]
    alpha: String,
    /// Dephasing weight grid
    #[arg(long, default_value = "0:1:0.05")]
    p: String,
    /// Where the noise strikes
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Which qubit is hit in single mode
    #[arg(long, default_value_t = 1)]
    qubit: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Single,
    All,
    Both,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    family: FamilyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ghz,
    W,
    Gb,
    All,
}

enum AppError {
    Usage(String),
    Runtime(String),
}

impl From<triqent_core::Error> for AppError {
    fn from(e: triqent_core::Error) -> Self {
        AppError::Runtime(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(AppError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, AppError> {
    let zero_tol = output::load_zero_tol().map_err(AppError::Usage)?;
    let (table, code) = match &cli.command {
        Command::Ghz(args) => (sweep_table(Family::Ghz, args)?, 0),
        Command::W(args) => (sweep_table(Family::W, args)?, 0),
        Command::Gb(args) => (sweep_table(Family::Gb, args)?, 0),
        Command::Qec(args) => (qec_table(args)?, 0),
        Command::Thresholds(args) => (thresholds_table(args)?, 0),
        Command::VerifyTables => {
            let (table, pass) = verify::run()?;
            (table, if pass { 0 } else { 1 })
        }
    };
    let text = match cli.format {
        Format::Csv => output::to_csv(&table, zero_tol),
        Format::Json => output::to_json(&table, zero_tol),
    };
    output::write_out(&text, cli.output.as_deref()).map_err(AppError::Runtime)?;
    Ok(code)
}

fn sweep_table(family: Family, args: &SweepArgs) -> Result<Table, AppError> {
    let qs = grid::parse(&args.q, "--q", 0.0, 1.0).map_err(AppError::Usage)?;
    let kts = grid::parse(&args.kt, "--kt", 0.0, 50.0).map_err(AppError::Usage)?;
    let samples = dynamics::sweep(family, &qs, &kts)?;
    let mut table = Table::new(vec!["family", "q", "kappa_t", "quantity", "value"]);
    for s in samples {
        table.push(vec![
            Cell::text(family.name()),
            Cell::Num(s.q),
            Cell::Num(s.kappa_t),
            Cell::text(s.quantity.name()),
            Cell::Num(s.value),
        ]);
    }
    Ok(table)
}

const QEC_RECORDS: [&str; 8] = [
    "witness_WH",
    "N",
    "N3",
    "purity_noerr",
    "purity_err",
    "prob_err",
    "fidelity_noerr",
    "fidelity_err",
];

fn qec_table(args: &QecArgs) -> Result<Table, AppError> {
    let alphas = grid::parse(&args.alpha, "--alpha", 0.0, 1.0).map_err(AppError::Usage)?;
    let ps = grid::parse(&args.p, "--p", 0.0, 1.0).map_err(AppError::Usage)?;
    if !(1..=3).contains(&args.qubit) {
        return Err(AppError::Usage(format!(
            "--qubit: {} is not one of 1, 2, 3",
            args.qubit
        )));
    }
    let modes: Vec<ErrorMode> = match args.mode {
        ModeArg::Single => vec![ErrorMode::SingleQubit(args.qubit)],
        ModeArg::All => vec![ErrorMode::AllQubits],
        ModeArg::Both => vec![
            ErrorMode::SingleQubit(args.qubit),
            ErrorMode::AllQubits,
        ],
    };
    let mut table = Table::new(vec!["alpha", "p", "mode", "record", "value"]);
    for &alpha in &alphas {
        for &p in &ps {
            for &mode in &modes {
                let run = qec::run(alpha, p, mode)?;
                let values = [
                    run.encoded.witness_wh,
                    run.encoded.negativity,
                    run.encoded.tri_negativity,
                    run.no_error.purity,
                    run.error.purity,
                    run.error.probability,
                    run.no_error.fidelity,
                    run.error.fidelity,
                ];
                for (name, value) in QEC_RECORDS.iter().zip(values) {
                    table.push(vec![
                        Cell::Num(alpha),
                        Cell::Num(p),
                        Cell::text(mode.name()),
                        Cell::text(*name),
                        Cell::Num(value),
                    ]);
                }
            }
        }
    }
    Ok(table)
}

fn thresholds_table(args: &ThresholdArgs) -> Result<Table, AppError> {
    let families: Vec<Family> = match args.family {
        FamilyArg::Ghz => vec![Family::Ghz],
        FamilyArg::W => vec![Family::W],
        FamilyArg::Gb => vec![Family::Gb],
        FamilyArg::All => vec![Family::Ghz, Family::W, Family::Gb],
    };
    let mut table = Table::new(vec!["family", "quantity", "q_threshold"]);
    for family in families {
        let quantities: &[(&str, Quantity)] = match family {
            Family::Ghz => &[
                ("witness_G", Quantity::WitnessG),
                ("witness_W", Quantity::WitnessW),
                ("N", Quantity::N),
            ],
            Family::W => &[
                ("witness", Quantity::WitnessW),
                ("C", Quantity::C12),
                ("N", Quantity::N),
            ],
            Family::Gb => &[
                ("witness_G", Quantity::WitnessG),
                ("witness_W", Quantity::WitnessW),
                ("C12", Quantity::C12),
                ("N", Quantity::N),
                ("N3", Quantity::N3),
            ],
        };
        for (name, quantity) in quantities {
            let cell = match dynamics::q_threshold(family, *quantity)? {
                Some(v) => Cell::Num(v),
                None => Cell::Missing,
            };
            table.push(vec![
                Cell::text(family.name()),
                Cell::text(*name),
                cell,
            ]);
        }
    }
    Ok(table)
}
