//! Command-line front end and the JSON report format.

mod app;
mod commands;
mod report;

pub use app::{run, Cli, Command, KArg, Outcome, TriangulationCommand};
pub use commands::{
    fan_pattern, flip_report, form_report, ideal_check_report, monodromy_report,
    mutation_walk_report, quarter_tridiagonal, sln_triple_report, triangulation_report,
    CORANK_POINTS, DEFAULT_POINTS,
};
pub use report::{Diagnostic, Item, Report, Status};
