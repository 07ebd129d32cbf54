//! Library half of the `dispersive` command-line tool.

pub mod commands;
pub mod output;
pub mod presets;
pub mod request;

use dispersive_core::ErrorKind;

/// Process exit status for a failure class.
pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Config => 2,
        ErrorKind::Regime => 3,
        ErrorKind::Numerical => 4,
        ErrorKind::Io => 5,
    }
}
