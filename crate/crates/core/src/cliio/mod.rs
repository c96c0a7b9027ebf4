//! Text input, the command-line driver and certificate checking.

pub mod commands;
pub mod expr;
pub mod lexer;
pub mod workspace;

pub use expr::parse_poly;
pub use workspace::{
    parse_spec, parse_spec_with, print_spec, vector_string, ModuleDecl, ParseOptions, PrimeDecl, RingDecl,
    WorkspaceConfig, WorkspaceSpec,
};
pub use commands::{exit_code, run_command, Cli, Command};
