//! The three subcommands: `rotate`, `lorenz`, `table`.

use crate::config::{resolve, ConfigFile};
use crate::output::{csv_line, fmt_f64, write_gnuplot_script, Sink};
use crate::{Failure, LorenzArgs, RotateArgs, TableArgs, EX_DIVERGED, EX_OK};
use precision_lab::lorenz::{LorenzParams, LorenzState, RestartTruncate, TwinConfig};
use precision_lab::qc;
use precision_lab::rotation::{RotationConfig, RotationMode};
use precision_lab::{PrecisionSpec, RoundingPolicy, TieRule};
use std::path::PathBuf;

fn parse_spec(s: &str) -> Result<PrecisionSpec, Failure> {
    s.parse::<PrecisionSpec>()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn parse_tie(s: &str) -> Result<TieRule, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "half-away" => Ok(TieRule::HalfAwayFromZero),
        "half-even" => Ok(TieRule::HalfEven),
        other => Err(Failure::usage(format!(
            "invalid tie rule '{other}' (expected half-away or half-even)"
        ))),
    }
}

fn parse_mode(s: &str) -> Result<RotationMode, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "step" => Ok(RotationMode::Stepwise),
        "square" => Ok(RotationMode::Squaring),
        other => Err(Failure::usage(format!(
            "invalid mode '{other}' (expected step or square)"
        ))),
    }
}

fn out_sink(flag: &Option<String>, file: &ConfigFile) -> Result<Sink, Failure> {
    let out = resolve(
        flag.clone(),
        file.get("output", "out").map(str::to_string),
        "-".to_string(),
    );
    Sink::open(&out)
}

fn gnuplot_path(flag: &Option<PathBuf>, file: &ConfigFile) -> Option<PathBuf> {
    flag.clone()
        .or_else(|| file.get("output", "gnuplot_script").map(PathBuf::from))
}

// ---------------------------------------------------------------------------
// rotate
// ---------------------------------------------------------------------------

pub fn rotate(args: &RotateArgs, file: &ConfigFile) -> Result<i32, Failure> {
    let theta = resolve(args.theta_deg, file.parse("rotation", "theta_deg")?, 5.0);
    let steps = resolve(args.steps, file.parse("rotation", "steps")?, 288);
    let digits = resolve(
        args.digits.clone(),
        file.get("rotation", "digits").map(str::to_string),
        "native".to_string(),
    );
    let mode = resolve(
        args.mode.clone(),
        file.get("rotation", "mode").map(str::to_string),
        "step".to_string(),
    );
    let record_every = resolve(
        args.record_every,
        file.parse("rotation", "record_every")?,
        1,
    );
    let tie = resolve(
        args.tie.clone(),
        file.get("rotation", "tie").map(str::to_string),
        "half-away".to_string(),
    );

    let spec = parse_spec(&digits)?;
    let tie = parse_tie(&tie)?;
    let mode = parse_mode(&mode)?;
    let config = RotationConfig::new(theta, steps, RoundingPolicy::new(spec, tie), mode)
        .with_record_every(record_every);

    let trajectory = precision_lab::rotation::run(&config)?;
    let squaring = mode == RotationMode::Squaring;

    let mut text = String::new();
    let mut header = "k,x,y,norm,norm_drift,phase_deg,phase_error_deg".to_string();
    if squaring {
        header.push_str(",det_drift");
    }
    header.push('\n');
    text.push_str(&header);

    let mut diverged_at = None;
    for rec in trajectory {
        let mut fields = vec![
            rec.k.to_string(),
            fmt_f64(rec.v.x),
            fmt_f64(rec.v.y),
            fmt_f64(rec.norm),
            fmt_f64(rec.norm_drift),
            fmt_f64(rec.phase_deg),
            fmt_f64(rec.phase_error_deg),
        ];
        if squaring {
            fields.push(fmt_f64(rec.det_drift.unwrap_or(f64::NAN)));
        }
        text.push_str(&csv_line(&fields));
        if rec.diverged && diverged_at.is_none() {
            diverged_at = Some(rec.k);
        }
    }
    if let Some(k) = diverged_at {
        text.push_str(&format!("# diverged=true,k={k}\n"));
    }

    let mut sink = out_sink(&args.out, file)?;
    sink.write_all_text(&text)?;
    if let Some(script) = gnuplot_path(&args.gnuplot_script, file) {
        write_gnuplot_script(&script, sink.path(), 5, "norm_drift", false)?;
    }
    Ok(if diverged_at.is_some() {
        EX_DIVERGED
    } else {
        EX_OK
    })
}

// ---------------------------------------------------------------------------
// lorenz
// ---------------------------------------------------------------------------

pub fn lorenz(args: &LorenzArgs, file: &ConfigFile) -> Result<i32, Failure> {
    let digits_a = resolve(
        args.digits_a.clone(),
        file.get("lorenz", "digits_a").map(str::to_string),
        "native".to_string(),
    );
    let digits_b = resolve(
        args.digits_b.clone(),
        file.get("lorenz", "digits_b").map(str::to_string),
        "7".to_string(),
    );
    let h = resolve(args.h, file.parse("lorenz", "h")?, 0.01);
    let t_max = resolve(args.t_max, file.parse("lorenz", "t_max")?, 50.0);
    let threshold = resolve(args.threshold, file.parse("lorenz", "threshold")?, 1.0);
    let sigma = resolve(args.sigma, file.parse("lorenz", "sigma")?, 10.0);
    let rho = resolve(args.rho, file.parse("lorenz", "rho")?, 28.0);
    let beta = resolve(args.beta, file.parse("lorenz", "beta")?, 8.0 / 3.0);
    let x0 = resolve(args.x0, file.parse("lorenz", "x0")?, 1.0);
    let y0 = resolve(args.y0, file.parse("lorenz", "y0")?, 1.0);
    let z0 = resolve(args.z0, file.parse("lorenz", "z0")?, 1.0);
    let sample_every = resolve(args.sample_every, file.parse("lorenz", "sample_every")?, 1);
    let restart = resolve(
        args.restart_truncate,
        file.parse("lorenz", "restart_truncate")?,
        0,
    );
    let tie = resolve(
        args.tie.clone(),
        file.get("lorenz", "tie").map(str::to_string),
        "half-away".to_string(),
    );
    let tie = parse_tie(&tie)?;

    let config = TwinConfig {
        s0: LorenzState::new(x0, y0, z0),
        params: LorenzParams { sigma, rho, beta },
        h,
        t_max,
        policy_a: RoundingPolicy::new(parse_spec(&digits_a)?, tie),
        policy_b: RoundingPolicy::new(parse_spec(&digits_b)?, tie),
        threshold,
        sample_every,
        restart_truncate: (restart > 0).then_some(RestartTruncate {
            digits: restart,
            at_t: t_max / 2.0,
        }),
    };

    let (report, states) = precision_lab::lorenz::run_twin_with_states(&config)?;

    let mut text = String::from("t,sep,agreed_digits\n");
    for ((t, sep), (_, a, b)) in report.samples.iter().zip(&states) {
        let agreed = state_agreed_digits(*sep, a, b);
        text.push_str(&csv_line(&[fmt_f64(*t), fmt_f64(*sep), fmt_f64(agreed)]));
    }
    let dt = report.divergence_time.map_or("NA".to_string(), fmt_f64);
    let ef = report.efolding_estimate.map_or("NA".to_string(), fmt_f64);
    text.push_str(&format!("# divergence_time={dt},efolding={ef}\n"));
    if let Some(t) = report.truncated_at {
        text.push_str(&format!("# truncated_at={}\n", fmt_f64(t)));
    }

    let mut sink = out_sink(&args.out, file)?;
    sink.write_all_text(&text)?;
    if let Some(script) = gnuplot_path(&args.gnuplot_script, file) {
        write_gnuplot_script(&script, sink.path(), 2, "separation", true)?;
    }
    Ok(if report.truncated_at.is_some() {
        EX_DIVERGED
    } else {
        EX_OK
    })
}

/// Digit agreement of two 3D states: the relative-separation analogue of
/// `qc::agreed_digits`, with the larger state magnitude as the scale.
fn state_agreed_digits(sep: f64, a: &[f64; 3], b: &[f64; 3]) -> f64 {
    if sep == 0.0 {
        return 17.0;
    }
    let norm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let scale = norm(a).max(norm(b)).max(1e-300);
    (-(sep / scale).log10()).clamp(0.0, 17.0)
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

pub fn table(args: &TableArgs, file: &ConfigFile) -> Result<i32, Failure> {
    let list = resolve(
        args.digits_list.clone(),
        file.get("qc", "digits_list").map(str::to_string),
        "native,12,7".to_string(),
    );
    let theta = resolve(args.theta_deg, file.parse("rotation", "theta_deg")?, 5.0);
    let steps = resolve(args.steps, file.parse("rotation", "steps")?, 288);
    let format = resolve(
        args.format.clone(),
        file.get("output", "format").map(str::to_string),
        "text".to_string(),
    );
    let tie = resolve(
        args.tie.clone(),
        file.get("rotation", "tie").map(str::to_string),
        "half-away".to_string(),
    );
    let tie = parse_tie(&tie)?;

    let specs: Vec<PrecisionSpec> = list
        .split(',')
        .map(|s| parse_spec(s.trim()))
        .collect::<Result<_, _>>()?;
    if specs.is_empty() {
        return Err(Failure::usage("--digits-list must name at least one level"));
    }

    let rows = run_table_rows(&specs, theta, steps, tie)?;

    // the finest level in the list is the working reference
    let best_idx = (0..specs.len())
        .max_by_key(|&i| specs[i].precision_rank())
        .expect("non-empty list");
    let best_norm = rows[best_idx].norm;

    let mut text = String::new();
    match format.as_str() {
        "csv" => {
            text.push_str("precision,norm_drift,agreed_digits_vs_best\n");
            for row in &rows {
                let agreed = qc::agreed_digits(row.norm, best_norm).map_err(Failure::from)?;
                text.push_str(&csv_line(&[
                    row.spec.to_string(),
                    fmt_f64(row.drift),
                    fmt_f64(agreed),
                ]));
            }
        }
        "text" => {
            text.push_str(&format!(
                "{:<10} {:>24} {:>22}\n",
                "precision", "norm_drift", "agreed_digits_vs_best"
            ));
            for row in &rows {
                let agreed = qc::agreed_digits(row.norm, best_norm).map_err(Failure::from)?;
                text.push_str(&format!(
                    "{:<10} {:>24} {:>22}\n",
                    row.spec.to_string(),
                    fmt_f64(row.drift),
                    fmt_f64(agreed)
                ));
            }
        }
        other => {
            return Err(Failure::usage(format!(
                "invalid format '{other}' (expected text or csv)"
            )))
        }
    }

    let mut sink = out_sink(&args.out, file)?;
    sink.write_all_text(&text)?;
    Ok(if rows.iter().any(|r| r.diverged) {
        EX_DIVERGED
    } else {
        EX_OK
    })
}

struct TableRow {
    spec: PrecisionSpec,
    drift: f64,
    norm: f64,
    diverged: bool,
}

/// Runs one stepwise experiment per precision level. `PRECISION_LAB_THREADS`
/// caps the fan-out (unset or 0 means serial); results are assembled in
/// list order either way.
fn run_table_rows(
    specs: &[PrecisionSpec],
    theta: f64,
    steps: u64,
    tie: TieRule,
) -> Result<Vec<TableRow>, Failure> {
    let run_one = |spec: PrecisionSpec| -> Result<TableRow, Failure> {
        let config = RotationConfig::new(
            theta,
            steps,
            RoundingPolicy::new(spec, tie),
            RotationMode::Stepwise,
        )
        .with_record_every(steps.max(1));
        let rec = precision_lab::rotation::final_record(&config)?;
        Ok(TableRow {
            spec,
            drift: rec.norm_drift,
            norm: rec.norm,
            diverged: rec.diverged,
        })
    };

    let threads: usize = std::env::var("PRECISION_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0);
    let workers = threads.min(specs.len());

    if workers <= 1 {
        return specs.iter().map(|&s| run_one(s)).collect();
    }

    let mut results: Vec<Option<Result<TableRow, Failure>>> =
        (0..specs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunks: Vec<_> = results.chunks_mut(specs.len().div_ceil(workers)).collect();
        let mut offset = 0;
        for chunk in chunks {
            let start = offset;
            offset += chunk.len();
            let specs = &specs;
            scope.spawn(move || {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(run_one(specs[start + i]));
                }
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}
