//! Library side of the `sm-toolkit` command-line tool.

pub mod commands;
pub mod output;

pub use commands::{
    cmd_curve, cmd_heisenberg, cmd_simulate, cmd_solve, cmd_verify, parse_weights, CliError, VerifyArgs,
};
pub use output::{format_number, Format, OutputRecord, Table, Value};
