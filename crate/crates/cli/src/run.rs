//! Turns a [`RunConfig`] into series and divergence reports.

use logmap::continuous::{self, ContinuousParams, RiccatiShift, ShiftStatus};
use logmap::map_riccati::{self, RiccatiMapParams};
use logmap::map_standard::{self, ClosedFormVariant, MapParams};
use logmap::precision::{compare_trajectories, Abscissa, DivergenceReport};
use logmap::{PrecisionPolicy, Result, Trajectory};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Reference, RunConfig, Task};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    pub at: Abscissa,
    /// Decimal text, lossless at the series width.
    pub value: String,
    #[serde(skip)]
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits: Option<usize>,
    pub points: Vec<Point>,
}

impl Series {
    fn from_trajectory(name: impl Into<String>, t: &Trajectory) -> Self {
        Series {
            name: name.into(),
            method: t.method().to_string(),
            bits: Some(t.precision().significand_bits()),
            points: t
                .samples()
                .iter()
                .map(|s| Point {
                    at: s.at,
                    value: s.value.to_decimal_string(),
                    approx: s.value.to_f64(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub series: String,
    pub working_bits: usize,
    pub oracle_bits: usize,
    #[serde(flatten)]
    pub report: DivergenceReport,
}

/// Everything a run produces, in emission order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifact {
    pub config: RunConfig,
    pub series: Vec<Series>,
    pub reports: Vec<Report>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

fn gamma_label(g: f64) -> String {
    format!("gamma={g}")
}

pub fn run(config: &RunConfig) -> Result<Artifact> {
    let mut artifact = Artifact {
        config: config.clone(),
        series: Vec::new(),
        reports: Vec::new(),
        warnings: Vec::new(),
    };
    match &config.task {
        Task::Ode {
            r,
            x0,
            gamma,
            t_end,
            dt,
        } => ode(&mut artifact, *r, *x0, gamma, *t_end, *dt)?,
        Task::Map3 {
            r,
            x0,
            steps,
            bits,
            forms,
            reference,
        } => map3(
            &mut artifact,
            MapParams::new(*r, *x0)?,
            *steps,
            *bits,
            forms,
            *reference,
        )?,
        Task::Map4 { r, x0, gamma, steps } => map4(&mut artifact, RiccatiMapParams::new(*r, *x0)?, gamma, *steps)?,
        Task::Compare {
            r,
            x0,
            forms,
            steps,
            bits,
            threshold,
        } => compare(
            &mut artifact,
            MapParams::new(*r, *x0)?,
            forms,
            *steps,
            *bits,
            *threshold,
        )?,
        Task::Rng { x0, count, burn_in } => rng(&mut artifact, *x0, *count, *burn_in)?,
    }
    Ok(artifact)
}

fn ode(a: &mut Artifact, r: f64, x0: f64, gammas: &[f64], t_end: f64, dt: f64) -> Result<()> {
    let p = ContinuousParams::new(r, x0)?;
    let shifts = gammas
        .iter()
        .map(|g| RiccatiShift::new(*g))
        .collect::<Result<Vec<_>>>()?;
    for s in &shifts {
        if shift_status_warns(&p, s) {
            a.warnings.push(format!(
                "gamma={} lies outside the admissible range for x0={x0}; the curve may cross a pole",
                s.gamma
            ));
        }
    }
    a.series.push(Series::from_trajectory(
        "particular",
        &continuous::particular_trajectory(&p, t_end, dt)?,
    ));
    let general = shifts
        .par_iter()
        .map(|s| {
            continuous::general_trajectory(&p, s, t_end, dt).map(|t| Series::from_trajectory(gamma_label(s.gamma), &t))
        })
        .collect::<Result<Vec<_>>>()?;
    a.series.extend(general);
    Ok(())
}

fn shift_status_warns(p: &ContinuousParams, s: &RiccatiShift) -> bool {
    continuous::shift_status(p, s) == ShiftStatus::OutsideRange
}

fn map3(
    a: &mut Artifact,
    p: MapParams,
    steps: usize,
    bits: usize,
    forms: &[ClosedFormVariant],
    reference: Option<Reference>,
) -> Result<()> {
    let policy = PrecisionPolicy::bits(bits)?;
    let mut runs = vec![("iterated".to_string(), map_standard::iterate(&p, steps, &policy)?)];
    let closed = forms
        .par_iter()
        .map(|v| map_standard::closed_form_trajectory(&p, steps, *v, &policy).map(|t| (v.tag().to_string(), t)))
        .collect::<Result<Vec<_>>>()?;
    runs.extend(closed);
    if let Some(reference) = reference {
        let truth = map_standard::oracle(&p, steps, reference.bits)?;
        for (name, t) in &runs {
            a.reports.push(Report {
                series: name.clone(),
                working_bits: bits,
                oracle_bits: reference.bits,
                report: compare_trajectories(t, &truth, reference.threshold)?,
            });
        }
        runs.push(("oracle".to_string(), truth));
    }
    a.series
        .extend(runs.iter().map(|(name, t)| Series::from_trajectory(name.clone(), t)));
    Ok(())
}

fn map4(a: &mut Artifact, p: RiccatiMapParams, gammas: &[f64], steps: usize) -> Result<()> {
    a.series
        .push(Series::from_trajectory("iterated", &map_riccati::iterate(&p, steps)?));
    a.series.push(Series::from_trajectory(
        "particular",
        &map_riccati::particular_trajectory(&p, steps)?,
    ));
    if gammas.is_empty() {
        return Ok(());
    }
    let coeffs = map_riccati::coefficients(&p, steps)?;
    let general = gammas
        .par_iter()
        .map(|g| {
            map_riccati::general_trajectory(&p, &coeffs, *g, steps)
                .map(|t| Series::from_trajectory(gamma_label(*g), &t))
        })
        .collect::<Result<Vec<_>>>()?;
    a.series.extend(general);
    Ok(())
}

fn compare(
    a: &mut Artifact,
    p: MapParams,
    forms: &[ClosedFormVariant],
    steps: usize,
    bits: usize,
    threshold: f64,
) -> Result<()> {
    let oracle_bits = map_standard::oracle_bits(steps, bits);
    let mut reports = forms
        .par_iter()
        .map(|v| {
            map_standard::divergence_analysis(&p, *v, steps, bits, threshold).map(|report| Report {
                series: v.tag().to_string(),
                working_bits: bits,
                oracle_bits,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    reports.push(Report {
        series: "iterated".to_string(),
        working_bits: bits,
        oracle_bits,
        report: map_standard::iteration_divergence(&p, steps, bits, threshold)?,
    });
    a.reports = reports;
    Ok(())
}

fn rng(a: &mut Artifact, x0: f64, count: usize, burn_in: usize) -> Result<()> {
    let bits = map_standard::prng_bits(x0, count, burn_in)?;
    a.series.push(Series {
        name: "bits".to_string(),
        method: "logistic-r4".to_string(),
        bits: None,
        points: bits
            .iter()
            .enumerate()
            .map(|(i, b)| Point {
                at: Abscissa::Index(i as u64),
                value: if *b { "1" } else { "0" }.to_string(),
                approx: if *b { 1.0 } else { 0.0 },
            })
            .collect(),
    });
    Ok(())
}
