//! Iterated 2D rotations under injected rounding: the stepwise recurrence
//! `v_{k+1} = R v_k` and the squaring cascade `R_{k+1} = R_k^2`,
//! `v_{k+1} = R_k v_k`, with drift metrics against exact angle bookkeeping.
//!
//! A unit vector rotated by an orthogonal matrix should keep length 1
//! forever; finite-precision arithmetic makes it drift. The drift of
//! `‖v_k‖ - 1` and of the phase against the exactly-known rotation angle is
//! the measured signal.

use crate::error::{Error, Result};
use crate::extended::{self, DoubleDouble};
use crate::precision::{PrecisionSpec, RoundingPolicy};

/// A record is flagged "diverged" once `|norm_drift|` exceeds this
/// (collapse toward a point or escape toward infinity).
pub const DIVERGENCE_DRIFT: f64 = 0.5;

/// Squaring mode reaches angle `theta * 2^k`; the exact integer-degree
/// bookkeeping stays within safe range only up to this many steps.
pub const MAX_SQUARING_STEPS: u64 = 60;

/// Stepwise runs are capped here.
pub const MAX_STEPWISE_STEPS: u64 = 1_000_000_000;

/// A 2D state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const UNIT_X: Vec2 = Vec2 { x: 1.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A 2x2 matrix, row major: `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a11: 1.0,
        a12: 0.0,
        a21: 0.0,
        a22: 1.0,
    };

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Max-norm residual of `R^T R - I`; zero for an exactly orthogonal
    /// matrix. Grows once rounding injection degrades the matrix, which is
    /// part of the measured signal rather than an enforced invariant.
    pub fn orthogonality_residual(&self) -> f64 {
        let r11 = self.a11 * self.a11 + self.a21 * self.a21 - 1.0;
        let r12 = self.a11 * self.a12 + self.a21 * self.a22;
        let r22 = self.a12 * self.a12 + self.a22 * self.a22 - 1.0;
        r11.abs().max(r12.abs()).max(r22.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }
}

/// Which recurrence the experiment iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationMode {
    /// `v_{k+1} = R v_k` with a fixed matrix.
    Stepwise,
    /// `R_{k+1} = R_k^2`, `v_{k+1} = R_k v_k`.
    Squaring,
}

/// Configuration of one rotation experiment.
#[derive(Debug, Clone, Copy)]
pub struct RotationConfig {
    /// Rotation angle per step, degrees.
    pub theta_deg: f64,
    pub steps: u64,
    pub policy: RoundingPolicy,
    pub mode: RotationMode,
    /// Emit a record every this many steps (the final step always records).
    pub record_every: u64,
}

impl RotationConfig {
    pub fn new(theta_deg: f64, steps: u64, policy: RoundingPolicy, mode: RotationMode) -> Self {
        RotationConfig {
            theta_deg,
            steps,
            policy,
            mode,
            record_every: 1,
        }
    }

    pub fn with_record_every(mut self, record_every: u64) -> Self {
        self.record_every = record_every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta_deg.is_finite() {
            return Err(Error::NonFinite(self.theta_deg));
        }
        self.policy.spec.validate()?;
        if self.record_every == 0 {
            return Err(Error::Parameter("record_every must be >= 1".into()));
        }
        let cap = match self.mode {
            RotationMode::Stepwise => MAX_STEPWISE_STEPS,
            RotationMode::Squaring => MAX_SQUARING_STEPS,
        };
        if self.steps > cap {
            return Err(Error::Parameter(format!(
                "{:?} mode supports at most {cap} steps, got {}",
                self.mode, self.steps
            )));
        }
        Ok(())
    }
}

/// One sampled point of a trajectory.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRecord {
    /// Step index.
    pub k: u64,
    /// State after step `k` (narrowed to native floats for extended runs).
    pub v: Vec2,
    /// `‖v_k‖`.
    pub norm: f64,
    /// `‖v_k‖ - 1`, computed at the run's working precision.
    pub norm_drift: f64,
    /// Direction of `v_k`, degrees in [0, 360).
    pub phase_deg: f64,
    /// Signed angular error against the exact rotation angle, in (-180, 180].
    pub phase_error_deg: f64,
    /// `det(R_k) - 1`; squaring mode only.
    pub det_drift: Option<f64>,
    /// Set once `|norm_drift|` exceeds [`DIVERGENCE_DRIFT`] or the state
    /// stops being finite. A non-finite state also ends the run.
    pub diverged: bool,
}

// ---------------------------------------------------------------------------
// Rotation matrices
// ---------------------------------------------------------------------------

/// Quadrant index 0..4 when `theta_deg` is an exact multiple of 90 degrees.
fn quadrant_of(theta_deg: f64) -> Option<u8> {
    if theta_deg.abs() > 1e15 {
        // beyond exact integer range for the division below
        return None;
    }
    if theta_deg % 90.0 != 0.0 {
        return None;
    }
    Some(((theta_deg / 90.0) as i64).rem_euclid(4) as u8)
}

fn quadrant_entries(q: u8) -> (f64, f64) {
    // (cos, sin)
    match q {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

/// The rotation matrix `[[cos t, -sin t], [sin t, cos t]]` with each entry
/// passed through the policy.
///
/// Multiples of 90 degrees are special-cased to exact `{-1, 0, 1}` entries
/// under every policy; native trigonometry cannot deliver them exactly.
/// Under the Extended policy the entries are the double-double values
/// narrowed to native floats — extended runs keep the wide entries
/// internally.
pub fn rotation_matrix(theta_deg: f64, policy: &RoundingPolicy) -> Result<Mat2> {
    if !theta_deg.is_finite() {
        return Err(Error::NonFinite(theta_deg));
    }
    if let Some(q) = quadrant_of(theta_deg) {
        let (c, s) = quadrant_entries(q);
        return Ok(Mat2 {
            a11: c,
            a12: -s,
            a21: s,
            a22: c,
        });
    }
    if policy.spec == PrecisionSpec::Extended {
        let m = rotation_matrix_dd(theta_deg)?;
        return Ok(m.narrow());
    }
    let rad = theta_deg.to_radians();
    let c = policy.apply(rad.cos())?;
    let s = policy.apply(rad.sin())?;
    Ok(Mat2 {
        a11: c,
        a12: -s,
        a21: s,
        a22: c,
    })
}

/// One rotation step: both dot products evaluated in native arithmetic,
/// each rounded once by the policy.
pub fn step_rotate(policy: &RoundingPolicy, r: &Mat2, v: &Vec2) -> Result<Vec2> {
    let x = r.a11 * v.x + r.a12 * v.y;
    let y = r.a21 * v.x + r.a22 * v.y;
    let x = policy.apply(x).map_err(step_overflow)?;
    let y = policy.apply(y).map_err(step_overflow)?;
    Ok(Vec2::new(x, y))
}

fn step_overflow(e: Error) -> Error {
    match e {
        Error::NonFinite(_) => Error::Overflow { step: 0 },
        other => other,
    }
}

// ---------------------------------------------------------------------------
// Exact angle bookkeeping
// ---------------------------------------------------------------------------

/// `k * theta mod 360` with exact bookkeeping: integer arithmetic when
/// `theta` is an integer, double-double reduction otherwise.
fn stepwise_ref_angle(k: u64, theta_deg: f64) -> f64 {
    if theta_deg.fract() == 0.0 && theta_deg.abs() <= 1e15 {
        let t = theta_deg as i128;
        return ((t * k as i128).rem_euclid(360)) as f64;
    }
    let (p, e) = raw_two_prod(k as f64, theta_deg);
    reduce_mod_360(DoubleDouble::new(p, e))
}

/// `theta * (2^k - 1) mod 360`, the angle reached by the squaring cascade.
fn squaring_ref_angle(k: u64, theta_deg: f64) -> f64 {
    debug_assert!(k <= MAX_SQUARING_STEPS);
    if theta_deg.fract() == 0.0 && theta_deg.abs() <= 1e15 {
        let t = theta_deg as i128;
        let m = (1i128 << k) - 1;
        return ((t * m).rem_euclid(360)) as f64;
    }
    // 2^k - 1 held as a double-double so no bits are lost for k > 53
    let m = DoubleDouble::from((k as f64).exp2()).sub(DoubleDouble::ONE);
    reduce_mod_360(m.mul_f64(theta_deg))
}

fn raw_two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = DoubleDouble::from(a).mul_f64(b);
    (p.hi(), p.lo())
}

fn reduce_mod_360(angle: DoubleDouble) -> f64 {
    let q = (angle.to_f64() / 360.0).floor();
    let mut r = angle.sub(DoubleDouble::from(q).mul_f64(360.0));
    let mut rf = r.to_f64();
    if rf < 0.0 {
        r = r.add(DoubleDouble::from(360.0));
        rf = r.to_f64();
    }
    if rf >= 360.0 {
        rf -= 360.0;
    }
    rf.max(0.0)
}

/// The exact state `(cos k*theta, sin k*theta)`, with the angle reduced
/// modulo 360 before conversion to radians. Quadrant multiples return exact
/// `{-1, 0, 1}` components.
pub fn exact_state(k: u64, theta_deg: f64) -> Vec2 {
    let angle = stepwise_ref_angle(k, theta_deg);
    exact_state_of_angle(angle)
}

fn exact_state_of_angle(angle_deg: f64) -> Vec2 {
    if let Some(q) = quadrant_of(angle_deg) {
        let (c, s) = quadrant_entries(q);
        return Vec2::new(c, s);
    }
    let rad = DoubleDouble::from(angle_deg).mul(extended::DEG_TO_RAD);
    let (s, c) = extended::sincos(rad).expect("reduced angle inside window");
    Vec2::new(c.to_f64(), s.to_f64())
}

/// Direction of `v` in degrees, [0, 360). Axis-aligned vectors are exact.
pub fn phase_of(v: &Vec2) -> Result<f64> {
    if v.x == 0.0 && v.y == 0.0 {
        return Err(Error::PhaseUndefined);
    }
    if v.x == 0.0 {
        return Ok(if v.y > 0.0 { 90.0 } else { 270.0 });
    }
    if v.y == 0.0 {
        return Ok(if v.x > 0.0 { 0.0 } else { 180.0 });
    }
    Ok(v.y.atan2(v.x).to_degrees().rem_euclid(360.0))
}

/// Signed difference `a - b` of two angles, mapped to (-180, 180].
fn signed_angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// Norm drift and phase error of a state at step `k` of a stepwise run.
pub fn drift_metrics(v: &Vec2, k: u64, theta_deg: f64) -> Result<(f64, f64)> {
    if !v.is_finite() {
        return Err(Error::NonFinite(v.x));
    }
    let phase = phase_of(v)?;
    let reference = stepwise_ref_angle(k, theta_deg);
    Ok((v.norm() - 1.0, signed_angle_diff(phase, reference)))
}

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

/// Streaming trajectory of one rotation experiment.
///
/// Yields a record for step 0, every `record_every` steps, and the final
/// step; stops early (with the last record flagged) once the run diverges
/// beyond recovery. Constant memory regardless of `steps`.
pub struct Trajectory {
    config: RotationConfig,
    state: RunState,
    k: u64,
    done: bool,
}

enum RunState {
    StepwiseF64 { r: Mat2, v: Vec2 },
    StepwiseDd { r: DdMat2, v: DdVec2 },
    SquaringF64 { r: Mat2, v: Vec2 },
    SquaringDd { r: DdMat2, v: DdVec2 },
}

/// Runs the stepwise recurrence (config.mode must be Stepwise).
pub fn run_stepwise(config: &RotationConfig) -> Result<Trajectory> {
    if config.mode != RotationMode::Stepwise {
        return Err(Error::Config("run_stepwise requires Stepwise mode".into()));
    }
    Trajectory::new(config)
}

/// Runs the squaring cascade (config.mode must be Squaring).
pub fn run_squaring(config: &RotationConfig) -> Result<Trajectory> {
    if config.mode != RotationMode::Squaring {
        return Err(Error::Config("run_squaring requires Squaring mode".into()));
    }
    Trajectory::new(config)
}

/// Runs whichever mode the config selects.
pub fn run(config: &RotationConfig) -> Result<Trajectory> {
    Trajectory::new(config)
}

/// Convenience: run to completion and collect all records.
pub fn collect_records(config: &RotationConfig) -> Result<Vec<TrajectoryRecord>> {
    Ok(run(config)?.collect())
}

/// Convenience: the record at the final step (or the diverged tail record).
pub fn final_record(config: &RotationConfig) -> Result<TrajectoryRecord> {
    run(config)?
        .last()
        .ok_or_else(|| Error::Config("zero-step run emits only the initial record".into()))
}

impl Trajectory {
    fn new(config: &RotationConfig) -> Result<Self> {
        config.validate()?;
        let extended = config.policy.spec == PrecisionSpec::Extended;
        let state = match (config.mode, extended) {
            (RotationMode::Stepwise, false) => RunState::StepwiseF64 {
                r: rotation_matrix(config.theta_deg, &config.policy)?,
                v: Vec2::UNIT_X,
            },
            (RotationMode::Squaring, false) => RunState::SquaringF64 {
                r: rotation_matrix(config.theta_deg, &config.policy)?,
                v: Vec2::UNIT_X,
            },
            (RotationMode::Stepwise, true) => RunState::StepwiseDd {
                r: rotation_matrix_dd(config.theta_deg)?,
                v: DdVec2::UNIT_X,
            },
            (RotationMode::Squaring, true) => RunState::SquaringDd {
                r: rotation_matrix_dd(config.theta_deg)?,
                v: DdVec2::UNIT_X,
            },
        };
        Ok(Trajectory {
            config: *config,
            state,
            k: 0,
            done: false,
        })
    }

    fn record_at(&self, k: u64) -> TrajectoryRecord {
        let theta = self.config.theta_deg;
        let (v, norm, norm_drift, det_drift) = match &self.state {
            RunState::StepwiseF64 { v, .. } => {
                let n = v.norm();
                (*v, n, n - 1.0, None)
            }
            RunState::SquaringF64 { r, v } => {
                let n = v.norm();
                (*v, n, n - 1.0, Some(r.det() - 1.0))
            }
            RunState::StepwiseDd { v, .. } => {
                let (vn, n, d) = v.narrowed_metrics();
                (vn, n, d, None)
            }
            RunState::SquaringDd { r, v } => {
                let (vn, n, d) = v.narrowed_metrics();
                (vn, n, d, Some(r.narrow().det() - 1.0))
            }
        };
        let reference = match self.config.mode {
            RotationMode::Stepwise => stepwise_ref_angle(k, theta),
            RotationMode::Squaring => squaring_ref_angle(k, theta),
        };
        let (phase_deg, phase_error_deg) = match phase_of(&v) {
            Ok(p) => (p, signed_angle_diff(p, reference)),
            Err(_) => (f64::NAN, f64::NAN),
        };
        let diverged =
            !v.is_finite() || !norm_drift.is_finite() || norm_drift.abs() > DIVERGENCE_DRIFT;
        TrajectoryRecord {
            k,
            v,
            norm,
            norm_drift,
            phase_deg,
            phase_error_deg,
            det_drift,
            diverged,
        }
    }

    /// Advances the state one step; false when the state went non-finite.
    /// The non-finite values are kept so the final flagged record shows the
    /// blow-up rather than a stale state.
    fn advance(&mut self) -> bool {
        let policy = self.config.policy;
        match &mut self.state {
            RunState::StepwiseF64 { r, v } => {
                *v = rotate_or_raw(&policy, r, v);
                v.is_finite()
            }
            RunState::SquaringF64 { r, v } => {
                // v_{k+1} = R_k v_k, then R_{k+1} = R_k R_k
                *v = rotate_or_raw(&policy, r, v);
                if !v.is_finite() {
                    return false;
                }
                *r = square_or_raw(&policy, r);
                r.is_finite()
            }
            RunState::StepwiseDd { r, v } => {
                *v = r.mul_vec(v);
                v.is_finite()
            }
            RunState::SquaringDd { r, v } => {
                *v = r.mul_vec(v);
                *r = r.square();
                v.is_finite() && r.is_finite()
            }
        }
    }
}

impl Iterator for Trajectory {
    type Item = TrajectoryRecord;

    fn next(&mut self) -> Option<TrajectoryRecord> {
        if self.done {
            return None;
        }
        if self.k == 0 {
            self.k = 1;
            if self.config.steps == 0 {
                self.done = true;
            }
            return Some(self.record_at(0));
        }
        while self.k <= self.config.steps {
            let k = self.k;
            self.k += 1;
            let alive = self.advance();
            let is_sample = k.is_multiple_of(self.config.record_every) || k == self.config.steps;
            if !alive {
                let mut rec = self.record_at(k);
                rec.diverged = true;
                self.done = true;
                return Some(rec);
            }
            if is_sample {
                let rec = self.record_at(k);
                if k == self.config.steps {
                    self.done = true;
                }
                return Some(rec);
            }
        }
        self.done = true;
        None
    }
}

/// One rotation step, passing raw non-finite values through on overflow.
fn rotate_or_raw(policy: &RoundingPolicy, r: &Mat2, v: &Vec2) -> Vec2 {
    let x = r.a11 * v.x + r.a12 * v.y;
    let y = r.a21 * v.x + r.a22 * v.y;
    Vec2::new(policy.apply(x).unwrap_or(x), policy.apply(y).unwrap_or(y))
}

/// `R*R` with each emitted entry rounded once; overflowed entries stay raw.
fn square_or_raw(policy: &RoundingPolicy, r: &Mat2) -> Mat2 {
    let rounded = |v: f64| policy.apply(v).unwrap_or(v);
    Mat2 {
        a11: rounded(r.a11 * r.a11 + r.a12 * r.a21),
        a12: rounded(r.a11 * r.a12 + r.a12 * r.a22),
        a21: rounded(r.a21 * r.a11 + r.a22 * r.a21),
        a22: rounded(r.a21 * r.a12 + r.a22 * r.a22),
    }
}

// ---------------------------------------------------------------------------
// Double-double state for Extended runs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct DdVec2 {
    x: DoubleDouble,
    y: DoubleDouble,
}

impl DdVec2 {
    const UNIT_X: DdVec2 = DdVec2 {
        x: DoubleDouble::ONE,
        y: DoubleDouble::ZERO,
    };

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Narrowed state plus norm and drift computed at double-double width
    /// (narrowing first would flush drifts below native epsilon to zero).
    fn narrowed_metrics(&self) -> (Vec2, f64, f64) {
        let norm_dd = self.x.mul(self.x).add(self.y.mul(self.y)).sqrt();
        let drift = norm_dd.sub(DoubleDouble::ONE).to_f64();
        (
            Vec2::new(self.x.to_f64(), self.y.to_f64()),
            norm_dd.to_f64(),
            drift,
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct DdMat2 {
    a11: DoubleDouble,
    a12: DoubleDouble,
    a21: DoubleDouble,
    a22: DoubleDouble,
}

impl DdMat2 {
    fn mul_vec(&self, v: &DdVec2) -> DdVec2 {
        DdVec2 {
            x: self.a11.mul(v.x).add(self.a12.mul(v.y)),
            y: self.a21.mul(v.x).add(self.a22.mul(v.y)),
        }
    }

    fn square(&self) -> DdMat2 {
        DdMat2 {
            a11: self.a11.mul(self.a11).add(self.a12.mul(self.a21)),
            a12: self.a11.mul(self.a12).add(self.a12.mul(self.a22)),
            a21: self.a21.mul(self.a11).add(self.a22.mul(self.a21)),
            a22: self.a21.mul(self.a12).add(self.a22.mul(self.a22)),
        }
    }

    fn narrow(&self) -> Mat2 {
        Mat2 {
            a11: self.a11.to_f64(),
            a12: self.a12.to_f64(),
            a21: self.a21.to_f64(),
            a22: self.a22.to_f64(),
        }
    }

    fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }
}

fn rotation_matrix_dd(theta_deg: f64) -> Result<DdMat2> {
    if !theta_deg.is_finite() {
        return Err(Error::NonFinite(theta_deg));
    }
    if let Some(q) = quadrant_of(theta_deg) {
        let (c, s) = quadrant_entries(q);
        let (c, s) = (DoubleDouble::from(c), DoubleDouble::from(s));
        return Ok(DdMat2 {
            a11: c,
            a12: s.neg(),
            a21: s,
            a22: c,
        });
    }
    let rad = DoubleDouble::from(theta_deg).mul(extended::DEG_TO_RAD);
    let (s, c) = extended::sincos(rad)?;
    Ok(DdMat2 {
        a11: c,
        a12: s.neg(),
        a21: s,
        a22: c,
    })
}
