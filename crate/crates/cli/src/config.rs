//! Validated run description, echoed verbatim into JSON output.

use std::path::PathBuf;

use logmap::map_standard::ClosedFormVariant;
use logmap::precision::DOUBLE_BITS;
use logmap::{Error, Result};
use serde::Serialize;

use crate::args::{Cli, Command, FormName, Format, Output};
use crate::presets::{figure1, figure2, figure3};

impl From<FormName> for ClosedFormVariant {
    fn from(f: FormName) -> Self {
        match f {
            FormName::Table1 => ClosedFormVariant::Rm2Table1,
            FormName::Simple => ClosedFormVariant::Rm2Simple,
            FormName::R2 => ClosedFormVariant::R2,
            FormName::R4 => ClosedFormVariant::R4,
        }
    }
}

/// Wide orbit the `map3` series are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reference {
    pub bits: usize,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Task {
    Ode {
        r: f64,
        x0: f64,
        gamma: Vec<f64>,
        t_end: f64,
        dt: f64,
    },
    Map3 {
        r: f64,
        x0: f64,
        steps: usize,
        bits: usize,
        forms: Vec<ClosedFormVariant>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reference: Option<Reference>,
    },
    Map4 {
        r: f64,
        x0: f64,
        gamma: Vec<f64>,
        steps: usize,
    },
    Compare {
        r: f64,
        x0: f64,
        forms: Vec<ClosedFormVariant>,
        steps: usize,
        bits: usize,
        threshold: f64,
    },
    Rng {
        x0: f64,
        count: usize,
        burn_in: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<u8>,
    #[serde(flatten)]
    pub task: Task,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (figure, task, output) = match cli.command {
            Command::Ode(a) => (
                None,
                Task::Ode {
                    r: a.r,
                    x0: a.x0,
                    gamma: a.gamma,
                    t_end: a.t_end,
                    dt: a.dt,
                },
                a.output,
            ),
            Command::Map3(a) => (
                None,
                Task::Map3 {
                    r: a.r,
                    x0: a.x0,
                    steps: a.steps,
                    bits: a.bits,
                    forms: distinct(a.form),
                    reference: None,
                },
                a.output,
            ),
            Command::Map4(a) => (
                None,
                Task::Map4 {
                    r: a.r,
                    x0: a.x0,
                    gamma: a.gamma,
                    steps: a.steps,
                },
                a.output,
            ),
            Command::Compare(a) => {
                let mut forms = distinct(a.form);
                if forms.is_empty() {
                    forms = ClosedFormVariant::ALL
                        .into_iter()
                        .filter(|v| v.required_r() == a.r)
                        .collect();
                }
                (
                    None,
                    Task::Compare {
                        r: a.r,
                        x0: a.x0,
                        forms,
                        steps: a.steps,
                        bits: a.bits,
                        threshold: a.threshold,
                    },
                    a.output,
                )
            }
            Command::Figure(a) => (Some(a.number), figure_task(a.number)?, a.output),
            Command::Rng(a) => (
                None,
                Task::Rng {
                    x0: a.x0,
                    count: a.count,
                    burn_in: a.burn_in,
                },
                a.output,
            ),
        };
        let Output { format, out } = output;
        let format = format.unwrap_or(match task {
            Task::Compare { .. } => Format::Json,
            _ => Format::Csv,
        });
        let config = RunConfig {
            figure,
            task,
            format,
            out,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        match &self.task {
            Task::Map3 { bits, .. } | Task::Compare { bits, .. } if *bits < DOUBLE_BITS => Err(Error::Usage(format!(
                "--bits must be at least {DOUBLE_BITS}, got {bits}"
            ))),
            Task::Compare { threshold, .. } if *threshold <= 0.0 => {
                Err(Error::Usage(format!("--threshold must be positive, got {threshold}")))
            }
            Task::Ode { t_end, dt, .. } if !(*dt > 0.0 && *t_end >= 0.0) => Err(Error::Usage(format!(
                "--t-end must be non-negative and --dt positive, got {t_end} and {dt}"
            ))),
            Task::Rng { count: 0, .. } => Err(Error::Usage("--count must be positive".into())),
            _ => Ok(()),
        }
    }
}

fn distinct(forms: Vec<FormName>) -> Vec<ClosedFormVariant> {
    let mut out: Vec<ClosedFormVariant> = Vec::new();
    for f in forms {
        let v = f.into();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// The run a figure number stands for.
pub fn figure_task(number: u8) -> Result<Task> {
    match number {
        1 => Ok(Task::Ode {
            r: figure1::R,
            x0: figure1::X0,
            gamma: figure1::GAMMAS.to_vec(),
            t_end: figure1::T_END,
            dt: figure1::DT,
        }),
        2 => Ok(Task::Map3 {
            r: figure2::R,
            x0: figure2::X0,
            steps: figure2::STEPS,
            bits: figure2::WORKING_BITS,
            forms: vec![ClosedFormVariant::Rm2Table1, ClosedFormVariant::Rm2Simple],
            reference: Some(Reference {
                bits: figure2::ORACLE_BITS,
                threshold: figure2::THRESHOLD,
            }),
        }),
        3 => Ok(Task::Map4 {
            r: figure3::R,
            x0: figure3::X0,
            gamma: figure3::GAMMAS.to_vec(),
            steps: figure3::STEPS,
        }),
        n => Err(Error::Usage(format!("no figure {n}; choose 1, 2 or 3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut full = vec!["logmap"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn compare_defaults_to_matching_forms_and_json() {
        let c = config(&["compare", "--r", "-2", "--x0", "0.9"]).unwrap();
        assert_eq!(c.format, Format::Json);
        match c.task {
            Task::Compare { forms, .. } => {
                assert_eq!(forms, vec![ClosedFormVariant::Rm2Table1, ClosedFormVariant::Rm2Simple])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn narrow_width_is_a_usage_error() {
        let err = config(&["map3", "--r", "4", "--x0", "0.3", "--bits", "24"]).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn figure_presets_expand() {
        let c = config(&["figure", "3"]).unwrap();
        assert_eq!(c.figure, Some(3));
        assert_eq!(
            c.task,
            Task::Map4 {
                r: 1.73,
                x0: 0.333,
                gamma: vec![0.5, 1.0, 2.0, 5.0, 10.0],
                steps: 50
            }
        );
    }

    #[test]
    fn repeated_forms_collapse() {
        let c = config(&["map3", "--r", "4", "--x0", "0.3", "--form", "r4", "--form", "r4"]).unwrap();
        match c.task {
            Task::Map3 { forms, .. } => assert_eq!(forms, vec![ClosedFormVariant::R4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn echo_names_the_subcommand() {
        let c = config(&["rng", "--x0", "0.3", "--count", "8"]).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["subcommand"], "rng");
        assert_eq!(v["count"], 8);
        assert_eq!(v["format"], "csv");
    }
}
