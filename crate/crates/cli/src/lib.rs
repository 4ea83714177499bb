//! Front end for the `logmap` library: parameter sweeps, figure presets,
//! divergence reports and bit streams, written as CSV, JSON or SVG.

pub mod args;
pub mod config;
pub mod output;
pub mod presets;
pub mod run;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use logmap::ErrorKind;

pub use args::{Cli, Format};
pub use config::{RunConfig, Task};
pub use run::{run, Artifact};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

pub fn exit_code(e: &logmap::Error) -> i32 {
    match e.kind() {
        ErrorKind::Usage => EXIT_USAGE,
        ErrorKind::Math => EXIT_MATH,
    }
}

/// Parses `argv`, runs, writes the artifact and returns the exit status.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if code == 0 {
                e.render().to_string()
            } else {
                first_line(&e.render().to_string())
            };
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = writeln!(stderr, "{text}");
            }
            return code;
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let artifact = match run(&config) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    for w in &artifact.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let text = output::render(&artifact, config.format);
    let written = match &config.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_IO
        }
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("error: invalid arguments")
        .to_string()
}
