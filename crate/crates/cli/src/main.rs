use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gindex::action::{ak2_standard, ak7_example_with, morita_example, ActionData, ActionSpec};
use gindex::apps::{
    cobordism_compare, eigenrank_report, hirzebruch_class_formula, toledo_ak7, BundleNumerics,
};
use gindex::pipeline::analyze;
use gindex::registry::{Registries, Strategies, StrategyNames};
use gindex::report::{self, Format};
use gindex::sweep::{run_all, SweepBounds};
use gindex::Error;

#[derive(Parser)]
#[command(
    name = "gindex",
    version,
    about = "Exact G-index computations for cyclic surface actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: OutFormat,

    #[command(flatten)]
    strategies: StrategyFlags,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Table,
    Json,
}

/// Strategy selection; `gindex strategies` lists the choices.
#[derive(Args)]
struct StrategyFlags {
    /// Normalization row of the index system.
    #[arg(long, global = true)]
    sigma_row: Option<String>,
    /// Degree-0 signature method.
    #[arg(long, global = true)]
    deg0: Option<String>,
    /// Isotypic multiplicity method.
    #[arg(long, global = true)]
    multiplicity: Option<String>,
    /// Exact rank certifier.
    #[arg(long, global = true)]
    certifier: Option<String>,
    /// Inverse of J.
    #[arg(long, global = true)]
    solver: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for an action given as JSON.
    Analyze { spec: PathBuf },
    /// Full report for a built-in example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        h: Option<u64>,
        /// Rotation class of the seven branch points (ak7).
        #[arg(long, default_value_t = 1)]
        j0: u32,
        /// Which fibering (ak2).
        #[arg(long, default_value_t = 1)]
        fibering: u8,
    },
    /// Acceptance checks plus the invariant sweep.
    Verify {
        #[arg(long, default_value_t = 20)]
        max_m: u32,
        #[arg(long, default_value_t = 4)]
        max_z: u64,
        #[arg(long, default_value_t = 1)]
        max_h: u64,
        /// Add a check that always fails.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Toledo coefficients of the Z/7 construction.
    Toledo {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        j0: Option<u32>,
    },
    /// Compare characteristic numbers of two fiberings.
    Cobordism { first: PathBuf, second: PathBuf },
    /// The branched double cover identities.
    Hirzebruch,
    /// List the registered strategies.
    Strategies,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Morita,
    Ak7,
    Ak2,
}

enum Failure {
    Error(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn resolve(flags: &StrategyFlags) -> Result<Strategies, Error> {
    let reg = Registries::builtin();
    let d = reg.defaults();
    let names = StrategyNames {
        sigma_row: flags.sigma_row.clone().unwrap_or(d.sigma_row),
        deg0: flags.deg0.clone().unwrap_or(d.deg0),
        multiplicity: flags.multiplicity.clone().unwrap_or(d.multiplicity),
        certifier: flags.certifier.clone().unwrap_or(d.certifier),
        solver: flags.solver.clone().unwrap_or(d.solver),
    };
    reg.resolve(&names)
}

fn emit(format: Format, json: impl FnOnce() -> serde_json::Value, table: impl FnOnce() -> String) {
    match format {
        Format::Json => print!("{}", report::canonical(&json())),
        Format::Table => print!("{}", table()),
    }
}

fn run_action(a: &ActionData, st: &Strategies, format: Format) -> Result<(), Failure> {
    let an = analyze(a, st)?;
    let ranks = eigenrank_report(a, st)?;
    let names = st.names();
    emit(
        format,
        || report::analysis_json(&an, &names, &ranks),
        || report::analysis_table(&an, &names, &ranks),
    );
    Ok(())
}

fn need<T>(x: Option<T>, flag: &str, example: &str) -> Result<T, Error> {
    x.ok_or_else(|| Error::IncompleteInput(format!("{example} needs --{flag}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = match cli.format {
        OutFormat::Table => Format::Table,
        OutFormat::Json => Format::Json,
    };
    let st = resolve(&cli.strategies)?;
    match cli.command {
        Command::Analyze { spec } => {
            let a = ActionSpec::from_json(&read(&spec)?)?.build()?;
            run_action(&a, &st, format)
        }
        Command::Example {
            name,
            m,
            h,
            j0,
            fibering,
        } => {
            let a = match name {
                ExampleName::Morita => {
                    morita_example(need(m, "m", "morita")?, need(h, "h", "morita")?)?
                }
                ExampleName::Ak7 => ak7_example_with(need(h, "h", "ak7")?, j0)?.base_action,
                ExampleName::Ak2 => match fibering {
                    1 => ak2_standard().0 .0,
                    2 => ak2_standard().1 .0,
                    f => {
                        return Err(Error::UnsupportedParameter(format!(
                            "ak2 has fiberings 1 and 2, got {f}"
                        ))
                        .into())
                    }
                },
            };
            run_action(&a, &st, format)
        }
        Command::Verify {
            max_m,
            max_z,
            max_h,
            inject_fault,
        } => {
            if max_m < 2 || max_z == 0 {
                return Err(Error::UnsupportedParameter(
                    "sweep bounds must be positive (max-m >= 2, max-z >= 1)".into(),
                )
                .into());
            }
            let bounds = SweepBounds {
                max_m,
                max_z,
                max_h,
            };
            let v = run_all(&st, bounds, inject_fault);
            emit(
                format,
                || report::verify_json(&v),
                || report::verify_table(&v),
            );
            if v.ok() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Toledo { h, j0 } => {
            let r = toledo_ak7(h, j0, &st)?;
            emit(
                format,
                || report::toledo_json(&r),
                || report::toledo_table(&r),
            );
            Ok(())
        }
        Command::Cobordism { first, second } => {
            let f1 = BundleNumerics::from_json(&read(&first)?)?;
            let f2 = BundleNumerics::from_json(&read(&second)?)?;
            let r = cobordism_compare(&f1, &f2, &st)?;
            emit(
                format,
                || report::cobordism_json(&r),
                || report::cobordism_table(&r),
            );
            Ok(())
        }
        Command::Hirzebruch => {
            let r = hirzebruch_class_formula(&st)?;
            emit(
                format,
                || serde_json::to_value(&r).expect("report serializes"),
                || report::hirzebruch_table(&r),
            );
            if r.holds {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Strategies => {
            let reg = Registries::builtin();
            let catalog = reg.catalog();
            emit(
                format,
                || {
                    let families: serde_json::Map<String, serde_json::Value> = catalog
                        .iter()
                        .map(|(fam, entries)| {
                            let list: Vec<serde_json::Value> = entries
                                .iter()
                                .map(|(n, d)| serde_json::json!({"name": n, "description": d}))
                                .collect();
                            (fam.to_string(), serde_json::Value::Array(list))
                        })
                        .collect();
                    serde_json::Value::Object(families)
                },
                || {
                    let mut out = String::new();
                    for (fam, entries) in &catalog {
                        out.push_str(&format!("--{fam}\n"));
                        for (i, (n, d)) in entries.iter().enumerate() {
                            let mark = if i == 0 { " (default)" } else { "" };
                            out.push_str(&format!("  {n}{mark}: {d}\n"));
                        }
                    }
                    out
                },
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_malformed_input() { 2 } else { 3 })
        }
    }
}
