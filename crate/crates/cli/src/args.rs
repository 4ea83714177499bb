//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "logmap",
    version,
    about = "Exact solutions and precision experiments for logistic equations and maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logistic ODE: particular solution and one general solution per γ.
    #[command(allow_negative_numbers = true)]
    Ode(OdeArgs),
    /// Standard map x -> r x (1 - x): iteration plus optional closed forms.
    #[command(allow_negative_numbers = true)]
    Map3(Map3Args),
    /// Backward-coupled map: iteration, particular and general solutions.
    #[command(allow_negative_numbers = true)]
    Map4(Map4Args),
    /// Divergence of finite-width evaluations from a wide oracle orbit.
    #[command(allow_negative_numbers = true)]
    Compare(CompareArgs),
    /// Reproduce one of the three reference figures.
    Figure(FigureArgs),
    /// Bits from the chaotic r = 4 orbit.
    #[command(allow_negative_numbers = true)]
    Rng(RngArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FormName {
    Table1,
    Simple,
    R2,
    R4,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format; `compare` defaults to json, everything else to csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    #[arg(long = "r", value_parser = finite)]
    pub r: f64,
    #[arg(long, value_parser = finite)]
    pub x0: f64,
    /// Riccati shift; repeat for several curves.
    #[arg(long, value_parser = finite)]
    pub gamma: Vec<f64>,
    #[arg(long, value_parser = finite, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, value_parser = finite, default_value_t = 0.1)]
    pub dt: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Map3Args {
    #[arg(long = "r", value_parser = finite)]
    pub r: f64,
    #[arg(long, value_parser = finite)]
    pub x0: f64,
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    /// Significand width of the iteration and closed forms.
    #[arg(long, default_value_t = 53)]
    pub bits: usize,
    /// Closed form to evaluate next to the iteration; repeatable.
    #[arg(long, value_enum)]
    pub form: Vec<FormName>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Map4Args {
    #[arg(long = "r", value_parser = finite)]
    pub r: f64,
    #[arg(long, value_parser = finite)]
    pub x0: f64,
    #[arg(long, value_parser = finite)]
    pub gamma: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long = "r", value_parser = finite)]
    pub r: f64,
    #[arg(long, value_parser = finite)]
    pub x0: f64,
    /// Closed forms to test; defaults to every form solving this r.
    #[arg(long, value_enum)]
    pub form: Vec<FormName>,
    #[arg(long, default_value_t = 60)]
    pub steps: usize,
    #[arg(long, default_value_t = 53)]
    pub bits: usize,
    #[arg(long, value_parser = finite, default_value_t = 0.01)]
    pub threshold: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub number: u8,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RngArgs {
    #[arg(long, value_parser = finite)]
    pub x0: f64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub burn_in: usize,
    #[command(flatten)]
    pub output: Output,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a finite number, got {s}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_values_parse() {
        let cli = Cli::try_parse_from(["logmap", "map3", "--r", "-2", "--x0", "-0.25"]).unwrap();
        match cli.command {
            Command::Map3(a) => assert_eq!((a.r, a.x0), (-2.0, -0.25)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_finite_values_are_rejected() {
        for bad in ["nan", "inf", "-inf", "abc"] {
            let err = Cli::try_parse_from(["logmap", "map3", "--r", bad, "--x0", "0.5"]).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn figure_number_is_bounded() {
        assert!(Cli::try_parse_from(["logmap", "figure", "4"]).is_err());
        assert!(Cli::try_parse_from(["logmap", "figure", "2"]).is_ok());
    }

    #[test]
    fn gamma_repeats() {
        let cli = Cli::try_parse_from([
            "logmap", "ode", "--r", "1", "--x0", "0.1", "--gamma", "0.2", "--gamma", "0.3",
        ])
        .unwrap();
        match cli.command {
            Command::Ode(a) => assert_eq!(a.gamma, vec![0.2, 0.3]),
            other => panic!("{other:?}"),
        }
    }
}
