//! Quality control by multiplicity: run the same computation at several
//! precision levels and estimate how many digits of the answer deserve
//! trust from how well adjacent precision levels agree.
//!
//! The comparison is relative ("agreed significant digits"), the highest
//! available precision serves as the working reference for reporting, and
//! nothing here ever treats any level as exact.

use crate::error::{Error, Result};
use crate::lorenz::{self, LorenzParams, LorenzState};
use crate::precision::{PrecisionSpec, RoundingPolicy, TieRule};
use crate::rotation::{self, RotationConfig};

/// Observable projected out of a run for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `‖v‖` for rotations, `‖(x,y,z)‖` for Lorenz states.
    Norm,
    /// Phase in degrees (rotation experiments only).
    PhaseDeg,
    X,
    Y,
    Z,
}

/// How many decimal digits two runs agree on, per sample.
#[derive(Debug, Clone)]
pub struct AgreementSeries {
    /// `(abscissa, agreed_digits)`; abscissae strictly increasing.
    pub samples: Vec<(f64, f64)>,
    /// The pair of precision levels compared (coarser first).
    pub runs_compared: (PrecisionSpec, PrecisionSpec),
}

/// Experiment template for [`compare_runs`]; the policy inside is replaced
/// by each compared spec.
#[derive(Debug, Clone, Copy)]
pub enum ExperimentTemplate {
    Rotation(RotationConfig),
    Lorenz {
        s0: LorenzState,
        params: LorenzParams,
        h: f64,
        t_max: f64,
        sample_every: u64,
    },
}

/// Number of agreed significant decimal digits between two values:
/// `-log10(|a - b| / max(|a|, |b|, eps))`, clamped to [0, 17], with 17 for
/// exact agreement. The metric is relative and symmetric.
pub fn agreed_digits(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::NonFinite(a));
    }
    if !b.is_finite() {
        return Err(Error::NonFinite(b));
    }
    if a == b {
        return Ok(17.0);
    }
    const EPS: f64 = 1e-300;
    let rel = (a - b).abs() / a.abs().max(b.abs()).max(EPS);
    Ok((-rel.log10()).clamp(0.0, 17.0))
}

/// Runs the template once per spec and compares adjacent precision levels
/// (sorted coarse to fine) on the chosen observable.
pub fn compare_runs(
    template: &ExperimentTemplate,
    specs: &[PrecisionSpec],
    observable: Observable,
) -> Result<Vec<AgreementSeries>> {
    compare_runs_with(template, specs, observable, Pairing::Adjacent)
}

/// Pair selection for [`compare_runs_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Each precision level against the next finer one.
    Adjacent,
    /// Every pair of levels.
    AllPairs,
}

pub fn compare_runs_with(
    template: &ExperimentTemplate,
    specs: &[PrecisionSpec],
    observable: Observable,
    pairing: Pairing,
) -> Result<Vec<AgreementSeries>> {
    if specs.len() < 2 {
        return Err(Error::Config(
            "compare_runs needs at least two precision levels".into(),
        ));
    }
    for s in specs {
        s.validate()?;
    }
    let mut sorted: Vec<PrecisionSpec> = specs.to_vec();
    sorted.sort_by_key(|s| s.precision_rank());

    let runs: Vec<Vec<(f64, f64)>> = sorted
        .iter()
        .map(|spec| run_observable(template, *spec, observable))
        .collect::<Result<_>>()?;

    // identical sampling grids are required for a pointwise comparison
    for r in &runs[1..] {
        if r.len() != runs[0].len() || r.iter().zip(&runs[0]).any(|(&(ta, _), &(tb, _))| ta != tb) {
            return Err(Error::Config(
                "runs sampled different grids; records cannot be compared pointwise".into(),
            ));
        }
    }

    let pairs: Vec<(usize, usize)> = match pairing {
        Pairing::Adjacent => (0..sorted.len() - 1).map(|i| (i, i + 1)).collect(),
        Pairing::AllPairs => {
            let mut v = Vec::new();
            for i in 0..sorted.len() {
                for j in i + 1..sorted.len() {
                    v.push((i, j));
                }
            }
            v
        }
    };

    pairs
        .into_iter()
        .map(|(i, j)| {
            let samples = runs[i]
                .iter()
                .zip(&runs[j])
                .map(|(&(t, a), &(_, b))| Ok((t, agreed_digits(a, b)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(AgreementSeries {
                samples,
                runs_compared: (sorted[i], sorted[j]),
            })
        })
        .collect()
}

fn run_observable(
    template: &ExperimentTemplate,
    spec: PrecisionSpec,
    observable: Observable,
) -> Result<Vec<(f64, f64)>> {
    match template {
        ExperimentTemplate::Rotation(base) => {
            let mut config = *base;
            config.policy = RoundingPolicy::new(spec, base.policy.tie_rule);
            let records = rotation::collect_records(&config)?;
            records
                .iter()
                .map(|r| {
                    let value = match observable {
                        Observable::Norm => r.norm,
                        Observable::PhaseDeg => r.phase_deg,
                        Observable::X => r.v.x,
                        Observable::Y => r.v.y,
                        Observable::Z => {
                            return Err(Error::Config(
                                "rotation states have no z coordinate".into(),
                            ))
                        }
                    };
                    Ok((r.k as f64, value))
                })
                .collect()
        }
        ExperimentTemplate::Lorenz {
            s0,
            params,
            h,
            t_max,
            sample_every,
        } => {
            let policy = RoundingPolicy::new(spec, TieRule::default());
            let series = lorenz::run_single(s0, params, *h, *t_max, &policy, *sample_every)?;
            Ok(series
                .into_iter()
                .map(|(t, v)| {
                    let value = match observable {
                        Observable::Norm => (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt(),
                        Observable::X => v[0],
                        Observable::Y => v[1],
                        Observable::Z => v[2],
                        Observable::PhaseDeg => f64::NAN,
                    };
                    (t, value)
                })
                .collect())
        }
    }
}

/// Linear interpolation of an agreement series at an abscissa, reported as
/// "estimated trustworthy significant digits".
pub fn trust_estimate(series: &AgreementSeries, at: f64) -> Result<f64> {
    let samples = &series.samples;
    if samples.is_empty() {
        return Err(Error::Parameter("series has no samples".into()));
    }
    let (first, last) = (samples[0].0, samples[samples.len() - 1].0);
    if !(first..=last).contains(&at) {
        return Err(Error::Parameter(format!(
            "abscissa {at} outside series range [{first}, {last}]"
        )));
    }
    let idx = samples.partition_point(|&(t, _)| t < at);
    if idx < samples.len() && samples[idx].0 == at {
        return Ok(samples[idx].1);
    }
    let (t0, y0) = samples[idx - 1];
    let (t1, y1) = samples[idx];
    Ok(y0 + (y1 - y0) * (at - t0) / (t1 - t0))
}
