use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qloid::commands::error_document;
use qloid::{run, Command, Options, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Finite quantaloids, enriched categories and distributors.
///
/// Exit codes: 0 the property holds, 1 it fails (a witness is printed),
/// 2 invalid input, 3 enumeration budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "qloid", version)]
struct Cli {
    command: Command,
    /// Input files in the block format.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long)]
    quantale: Option<String>,
    #[arg(long)]
    quantaloid: Option<String>,
    /// Base quantaloid reference, `NAME` or `dq(NAME)`.
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    category: Option<String>,
    #[arg(long)]
    distributor: Option<String>,
    #[arg(long)]
    functor: Option<String>,
    #[arg(long)]
    qset: Option<String>,
    /// Object of the base, for `classify`.
    #[arg(long = "type")]
    r#type: Option<String>,
    /// First operand for `residual`.
    #[arg(long)]
    a: Option<String>,
    /// Second operand for `residual`.
    #[arg(long)]
    b: Option<String>,
    /// Largest number of candidates any enumeration may inspect.
    #[arg(long, default_value_t = 1_000_000)]
    max_enum: u64,
    /// Point bound for the symmetry search.
    #[arg(long)]
    max_objects: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        quantale: cli.quantale,
        quantaloid: cli.quantaloid,
        base: cli.base,
        category: cli.category,
        distributor: cli.distributor,
        functor: cli.functor,
        qset: cli.qset,
        r#type: cli.r#type,
        a: cli.a,
        b: cli.b,
        max_enum: Some(cli.max_enum),
        max_objects: cli.max_objects,
    };
    let result = Workspace::load(&cli.files).and_then(|mut ws| run(cli.command, &mut ws, &opts));
    let code = match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Machine => println!("{}", serde_json::to_string_pretty(&report.machine()).expect("json")),
            }
            report.exit_code()
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Machine => println!("{}", serde_json::to_string_pretty(&error_document(cli.command, &e)).expect("json")),
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
