use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use serrecat::Settings;
use serrecat_cli::{emit_error, emit_report, parse_spec, run, CliError, Command, RecollementMode, SpecFile, TorsionKind};

/// Serre subcategories, torsion pairs and recollements of module categories
/// over finite-dimensional algebras. Reports are JSON on standard output.
#[derive(Parser, Debug)]
#[command(name = "serrecat", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Spec file, or `-` for standard input.
    spec: PathBuf,
    /// Seed for the randomized isomorphism searches.
    #[arg(long)]
    seed: Option<u64>,
    /// Write `"timing_ms": null` so that reports are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Type (m, -n) of the Serre subcategory with the given simples.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated simple indices (0-based), or `none`.
        #[arg(long)]
        simples: Option<String>,
    },
    /// Types of every Serre subcategory.
    ClassifyAll {
        #[command(flatten)]
        common: Common,
    },
    /// The recollement at a sum of primitive idempotents.
    Recollement {
        #[command(flatten)]
        common: Common,
        /// Comma-separated idempotent indices (0-based); `e` is their sum.
        #[arg(long)]
        idempotent: Option<String>,
        /// Check the recollement axioms.
        #[arg(long, conflicts_with_all = ["battery", "split"])]
        verify: bool,
        /// Run the equivalent-condition batteries of the right and left halves.
        #[arg(long, conflicts_with = "split")]
        battery: bool,
        /// Decide whether the recollement splits, with a witness if not.
        #[arg(long)]
        split: bool,
    },
    /// t-decomposition of a module along the torsion pair of an idempotent.
    Torsion {
        #[command(flatten)]
        common: Common,
        /// `killed`: modules killed by AeA and their perpendicular;
        /// `full`: modules generated by AeA and those killed by it.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Comma-separated idempotent indices (0-based); `e` is their sum.
        #[arg(long)]
        idempotent: Option<String>,
        /// A module block name, or one of `P<i>`, `S<i>`, `I<i>`, `regular`.
        #[arg(long)]
        module: Option<String>,
    },
    /// Completes the left recollement at an idempotent to a recollement.
    Extend {
        #[command(flatten)]
        common: Common,
        /// Comma-separated idempotent indices (0-based); `e` is their sum.
        #[arg(long)]
        idempotent: Option<String>,
    },
    /// The merged seven-term adjoint sequence of a two-vertex triangular algebra.
    Remark54 {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Killed,
    Full,
}

fn indices(flag: Option<&str>, fallback: Option<&Vec<usize>>, what: &str) -> Result<Vec<usize>, CliError> {
    match flag {
        Some("none") => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("--{what}: bad index `{x}`"))))
            .collect(),
        None => fallback
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("--{what} is required (flag or `{what}` line in the spec)"))),
    }
}

fn read_spec(path: &PathBuf) -> Result<SpecFile, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(parse_spec(&text)?)
}

fn execute(cmd: &Cmd) -> Result<(String, bool), CliError> {
    let common = match cmd {
        Cmd::Classify { common, .. }
        | Cmd::ClassifyAll { common }
        | Cmd::Recollement { common, .. }
        | Cmd::Torsion { common, .. }
        | Cmd::Extend { common, .. }
        | Cmd::Remark54 { common } => common,
    };
    let spec = read_spec(&common.spec)?;
    let p = &spec.params;
    let command = match cmd {
        Cmd::Classify { simples, .. } => Command::Classify {
            simples: indices(simples.as_deref(), p.simples.as_ref(), "simples")?,
        },
        Cmd::ClassifyAll { .. } => Command::ClassifyAll,
        Cmd::Recollement {
            idempotent,
            verify,
            battery,
            split,
            ..
        } => Command::Recollement {
            idempotent: indices(idempotent.as_deref(), p.idempotent.as_ref(), "idempotent")?,
            mode: match (verify, battery, split) {
                (true, _, _) => RecollementMode::Verify,
                (_, true, _) => RecollementMode::Battery,
                (_, _, true) => RecollementMode::Split,
                _ => RecollementMode::Construct,
            },
        },
        Cmd::Torsion {
            kind, idempotent, module, ..
        } => Command::Torsion {
            kind: match kind.or_else(|| Kind::from_str(p.kind.as_deref()?, false).ok()) {
                Some(Kind::Killed) => TorsionKind::Killed,
                Some(Kind::Full) => TorsionKind::Full,
                None => return Err(CliError::Usage("--kind is required".into())),
            },
            idempotent: indices(idempotent.as_deref(), p.idempotent.as_ref(), "idempotent")?,
            module: module
                .clone()
                .or_else(|| p.module.clone())
                .ok_or_else(|| CliError::Usage("--module is required".into()))?,
        },
        Cmd::Extend { idempotent, .. } => Command::Extend {
            idempotent: indices(idempotent.as_deref(), p.idempotent.as_ref(), "idempotent")?,
        },
        Cmd::Remark54 { .. } => Command::Remark54,
    };
    let settings = Settings::with_seed(common.seed.or(p.seed).unwrap_or(0));
    let mut report = run(&command, &spec, &settings)?;
    if common.no_timing {
        report.timing_ms = None;
    }
    Ok((emit_report(&report), report.verified))
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Classify { .. } => "classify",
        Cmd::ClassifyAll { .. } => "classify-all",
        Cmd::Recollement { .. } => "recollement",
        Cmd::Torsion { .. } => "torsion",
        Cmd::Extend { .. } => "extend",
        Cmd::Remark54 { .. } => "remark54",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli.command) {
        Ok((out, verified)) => {
            print!("{out}");
            if verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("serrecat: a reported check failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("serrecat: {e}");
            print!("{}", emit_error(command_name(&cli.command), &e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
