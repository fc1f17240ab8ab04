//! Library half of the `blockdet` binary: argument-independent logic for the
//! `det`/`per`, `check`, and `bench` subcommands, separated so integration
//! tests can exercise report serialization and the check suites directly.

pub mod bench;
pub mod check;
pub mod compute;
pub mod report;

/// A failed run, tagged with the scriptable exit code contract:
/// `1` a cross-check or property failed, `2` the input could not be parsed,
/// `3` the requested method's preconditions are unmet.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Input(String),
    Method(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Method(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) | Failure::Method(m) => m,
        }
    }
}

impl From<blockdet::Error> for Failure {
    fn from(e: blockdet::Error) -> Self {
        use blockdet::Error::*;
        match e {
            // The graph exists but the chosen evaluation cannot handle it.
            SizeBound { .. } | Unsupported(_) | LoopOnCutVertex { .. }
            | NotSeparable { .. } | Disconnected => Failure::Method(e.to_string()),
            // The input itself is malformed or describes no graph.
            _ => Failure::Input(e.to_string()),
        }
    }
}
