//! Command-line front end for `serrecat`: a small text format for algebras
//! and modules, the command surface, and deterministic JSON reports.

pub mod error;
pub mod report;
pub mod run;
pub mod spec;

pub use error::{CliError, ParseError};
pub use report::{emit_error, emit_report, Report};
pub use run::{run, run_text, Command, RecollementMode, TorsionKind};
pub use spec::{parse_spec, SpecFile};
