use std::fmt::{self, Display};
use std::process::ExitCode;
use std::time::Instant;

/// Ordered `key=value` report printed to stdout. Keys appear in insertion
/// order; `elapsed_ms` is always last.
pub struct RunReport {
    fields: Vec<(String, String)>,
    start: Instant,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        let mut r = RunReport {
            fields: Vec::new(),
            start: Instant::now(),
        };
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn print(&self) {
        for (k, v) in &self.fields {
            println!("{k}={v}");
        }
        println!("elapsed_ms={}", self.start.elapsed().as_millis());
    }
}

/// Why a command did not succeed, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters (exit 2).
    Usage(String),
    /// A verification found a counterexample (exit 1).
    Verification(String),
    /// A size or time limit was hit (exit 3).
    Resource(String),
    /// Reading or writing a file failed (exit 1).
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Verification(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        })
    }
}

impl Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Resource(m) => write!(f, "resource limit: {m}"),
            Failure::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e.to_string())
    }
}
