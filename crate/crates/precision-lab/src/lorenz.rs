//! Rounding-injected integration of the Lorenz system and twin-run
//! divergence measurement.
//!
//! The Lorenz equations (x' = sigma(y-x), y' = x(rho-z) - y, z' = xy -
//! beta z, with the classical chaotic parameters as defaults) are advanced
//! by classical fixed-step RK4. The rounding policy is applied to each
//! state coordinate once, at the end of every step — never inside the
//! stages — so the injected noise is a clean per-step perturbation. Twin
//! runs integrate the same initial state under two policies and track the
//! separation, giving a divergence time and an e-folding-rate estimate.

use crate::error::{Error, Result};
use crate::extended::DoubleDouble;
use crate::precision::{PrecisionSpec, RoundingPolicy};

/// Parameters of the Lorenz system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzParams {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

impl Default for LorenzParams {
    /// The classical chaotic choice: sigma = 10, rho = 28, beta = 8/3.
    fn default() -> Self {
        LorenzParams {
            sigma: 10.0,
            rho: 28.0,
            beta: 8.0 / 3.0,
        }
    }
}

impl LorenzParams {
    pub fn validate(&self) -> Result<()> {
        for v in [self.sigma, self.rho, self.beta] {
            if !v.is_finite() {
                return Err(Error::NonFinite(v));
            }
        }
        Ok(())
    }
}

/// State of the system at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl LorenzState {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        LorenzState { x, y, z, t: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Euclidean distance between two states (time is not part of it).
pub fn separation(a: &LorenzState, b: &LorenzState) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// The right-hand side, evaluated in native arithmetic.
pub fn lorenz_rhs(s: &LorenzState, p: &LorenzParams) -> (f64, f64, f64) {
    (
        p.sigma * (s.y - s.x),
        s.x * (p.rho - s.z) - s.y,
        s.x * s.y - p.beta * s.z,
    )
}

fn rhs3(v: [f64; 3], p: &LorenzParams) -> [f64; 3] {
    [
        p.sigma * (v[1] - v[0]),
        v[0] * (p.rho - v[2]) - v[1],
        v[0] * v[1] - p.beta * v[2],
    ]
}

/// One RK4 stage advance in native arithmetic (no rounding injection).
fn rk4_core(v: [f64; 3], p: &LorenzParams, h: f64) -> [f64; 3] {
    let k1 = rhs3(v, p);
    let k2 = rhs3(add_scaled(v, k1, 0.5 * h), p);
    let k3 = rhs3(add_scaled(v, k2, 0.5 * h), p);
    let k4 = rhs3(add_scaled(v, k3, h), p);
    let mut out = v;
    for i in 0..3 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn add_scaled(v: [f64; 3], k: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] + s * k[0], v[1] + s * k[1], v[2] + s * k[2]]
}

/// Classical fixed-step RK4 advance with end-of-step rounding injection.
///
/// The four stages run in native arithmetic; the policy is applied once to
/// each of x, y, z. The returned time is `s.t + h`; long integrations
/// should recompute `t` as `step_count * h` (the twin runner does).
pub fn rk4_step(
    s: &LorenzState,
    p: &LorenzParams,
    h: f64,
    policy: &RoundingPolicy,
) -> Result<LorenzState> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Parameter(format!(
            "step size must be positive, got {h}"
        )));
    }
    if !s.is_finite() {
        return Err(Error::Diverged { t: s.t });
    }
    let raw = rk4_core(s.coords(), p, h);
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = policy
            .apply(raw[i])
            .map_err(|_| Error::Diverged { t: s.t + h })?;
    }
    Ok(LorenzState {
        x: out[0],
        y: out[1],
        z: out[2],
        t: s.t + h,
    })
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

/// Working state of one trajectory: native floats, or double-double when
/// the policy is Extended.
enum Traj {
    Native([f64; 3]),
    Dd([DoubleDouble; 3]),
}

impl Traj {
    fn start(s0: &LorenzState, policy: &RoundingPolicy) -> Traj {
        match policy.spec {
            PrecisionSpec::Extended => Traj::Dd([
                DoubleDouble::from(s0.x),
                DoubleDouble::from(s0.y),
                DoubleDouble::from(s0.z),
            ]),
            _ => Traj::Native(s0.coords()),
        }
    }

    fn step(&mut self, p: &LorenzParams, h: f64, policy: &RoundingPolicy) -> bool {
        match self {
            Traj::Native(v) => {
                let raw = rk4_core(*v, p, h);
                for i in 0..3 {
                    match policy.apply(raw[i]) {
                        Ok(r) => v[i] = r,
                        Err(_) => return false,
                    }
                }
                v.iter().all(|c| c.is_finite())
            }
            Traj::Dd(v) => {
                *v = rk4_core_dd(*v, p, h);
                v.iter().all(|c| c.is_finite())
            }
        }
    }

    fn narrowed(&self) -> [f64; 3] {
        match self {
            Traj::Native(v) => *v,
            Traj::Dd(v) => [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()],
        }
    }

    /// One-time coordinate truncation (the "restart from a printout" event).
    /// The trajectory continues in its working representation.
    fn truncate_digits(&mut self, digits: u32, tie: crate::precision::TieRule) -> Result<()> {
        let policy = RoundingPolicy::new(PrecisionSpec::SigDigits(digits), tie);
        let n = self.narrowed();
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = policy.apply(n[i])?;
        }
        match self {
            Traj::Native(v) => *v = out,
            Traj::Dd(v) => {
                *v = [
                    DoubleDouble::from(out[0]),
                    DoubleDouble::from(out[1]),
                    DoubleDouble::from(out[2]),
                ]
            }
        }
        Ok(())
    }
}

fn rhs_dd(v: [DoubleDouble; 3], p: &LorenzParams) -> [DoubleDouble; 3] {
    let sigma = DoubleDouble::from(p.sigma);
    let rho = DoubleDouble::from(p.rho);
    let beta = DoubleDouble::from(p.beta);
    [
        sigma.mul(v[1].sub(v[0])),
        v[0].mul(rho.sub(v[2])).sub(v[1]),
        v[0].mul(v[1]).sub(beta.mul(v[2])),
    ]
}

fn rk4_core_dd(v: [DoubleDouble; 3], p: &LorenzParams, h: f64) -> [DoubleDouble; 3] {
    let half = 0.5 * h;
    let k1 = rhs_dd(v, p);
    let k2 = rhs_dd(add_scaled_dd(v, k1, half), p);
    let k3 = rhs_dd(add_scaled_dd(v, k2, half), p);
    let k4 = rhs_dd(add_scaled_dd(v, k3, h), p);
    let sixth = DoubleDouble::from(h).div_f64(6.0);
    let mut out = v;
    for i in 0..3 {
        let sum = k1[i]
            .add(k2[i].mul_f64(2.0))
            .add(k3[i].mul_f64(2.0))
            .add(k4[i]);
        out[i] = out[i].add(sixth.mul(sum));
    }
    out
}

fn add_scaled_dd(v: [DoubleDouble; 3], k: [DoubleDouble; 3], s: f64) -> [DoubleDouble; 3] {
    [
        v[0].add(k[0].mul_f64(s)),
        v[1].add(k[1].mul_f64(s)),
        v[2].add(k[2].mul_f64(s)),
    ]
}

/// Integrates natively for `t_skip` time units; used to move initial
/// states onto the attractor before sampling experiments.
pub fn skip_transient(
    s0: &LorenzState,
    p: &LorenzParams,
    t_skip: f64,
    h: f64,
) -> Result<LorenzState> {
    let mut s = *s0;
    let steps = (t_skip / h).round() as u64;
    for k in 1..=steps {
        s = rk4_step(&s, p, h, &RoundingPolicy::native())?;
        s.t = k as f64 * h;
    }
    Ok(s)
}

/// A single-policy trajectory sampled at every `sample_every`-th step.
/// Returns `(t, [x, y, z])` tuples; extended states are narrowed.
pub fn run_single(
    s0: &LorenzState,
    p: &LorenzParams,
    h: f64,
    t_max: f64,
    policy: &RoundingPolicy,
    sample_every: u64,
) -> Result<Vec<(f64, [f64; 3])>> {
    if h <= 0.0 || t_max <= 0.0 {
        return Err(Error::Parameter("h and t_max must be positive".into()));
    }
    if sample_every == 0 {
        return Err(Error::Parameter("sample_every must be >= 1".into()));
    }
    p.validate()?;
    let steps = (t_max / h).round() as u64;
    let mut traj = Traj::start(s0, policy);
    let mut out = Vec::with_capacity((steps / sample_every + 1) as usize);
    for k in 1..=steps {
        if !traj.step(p, h, policy) {
            return Err(Error::Diverged { t: k as f64 * h });
        }
        if k % sample_every == 0 || k == steps {
            out.push((k as f64 * h, traj.narrowed()));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Twin runs
// ---------------------------------------------------------------------------

/// A one-time mid-run truncation of a twin's state to `digits` significant
/// digits at time `at_t` (re-entering rounded values from a printout).
#[derive(Debug, Clone, Copy)]
pub struct RestartTruncate {
    pub digits: u32,
    pub at_t: f64,
}

/// Configuration of a twin-divergence run.
#[derive(Debug, Clone, Copy)]
pub struct TwinConfig {
    pub s0: LorenzState,
    pub params: LorenzParams,
    pub h: f64,
    pub t_max: f64,
    pub policy_a: RoundingPolicy,
    pub policy_b: RoundingPolicy,
    /// Separation at which the twins count as diverged.
    pub threshold: f64,
    /// Record a sample every this many steps.
    pub sample_every: u64,
    /// Optional one-time truncation applied to trajectory B.
    pub restart_truncate: Option<RestartTruncate>,
}

impl TwinConfig {
    pub fn new(s0: LorenzState, policy_a: RoundingPolicy, policy_b: RoundingPolicy) -> Self {
        TwinConfig {
            s0,
            params: LorenzParams::default(),
            h: 0.01,
            t_max: 50.0,
            policy_a,
            policy_b,
            threshold: 1.0,
            sample_every: 1,
            restart_truncate: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.policy_a.spec.validate()?;
        self.policy_b.spec.validate()?;
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Parameter(format!(
                "h must be positive, got {}",
                self.h
            )));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::Parameter(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::Parameter(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::Parameter("sample_every must be >= 1".into()));
        }
        if !self.s0.is_finite() {
            return Err(Error::NonFinite(self.s0.x));
        }
        Ok(())
    }
}

/// Separation series and divergence summary of a twin run.
#[derive(Debug, Clone)]
pub struct DivergenceReport {
    /// `(t, separation)` samples, strictly increasing in `t`.
    pub samples: Vec<(f64, f64)>,
    /// First time the separation exceeded the threshold; `None` if never.
    pub divergence_time: Option<f64>,
    pub threshold: f64,
    /// Least-squares slope of `ln(separation)` over the pre-saturation
    /// window `1e-8 < sep < 1`; `None` when the window holds fewer than
    /// two samples.
    pub efolding_estimate: Option<f64>,
    /// Time at which a trajectory went non-finite, if the run truncated.
    pub truncated_at: Option<f64>,
}

/// Integrates the twin trajectories and reports their separation history.
pub fn run_twin(config: &TwinConfig) -> Result<DivergenceReport> {
    Ok(run_twin_with_states(config)?.0)
}

/// Sampled twin states `(t, state_a, state_b)`.
pub type TwinStates = Vec<(f64, [f64; 3], [f64; 3])>;

/// Like [`run_twin`], additionally returning the sampled twin states
/// aligned with the report's samples.
pub fn run_twin_with_states(config: &TwinConfig) -> Result<(DivergenceReport, TwinStates)> {
    config.validate()?;
    let steps = (config.t_max / config.h).round() as u64;
    let mut a = Traj::start(&config.s0, &config.policy_a);
    let mut b = Traj::start(&config.s0, &config.policy_b);
    let mut samples = Vec::new();
    let mut states = Vec::new();
    let mut divergence_time = None;
    let mut truncated_at = None;
    let mut truncate_pending = config.restart_truncate;

    for k in 1..=steps {
        let t = k as f64 * config.h;
        let alive_a = a.step(&config.params, config.h, &config.policy_a);
        let alive_b = b.step(&config.params, config.h, &config.policy_b);
        if let Some(rt) = truncate_pending {
            if t >= rt.at_t {
                b.truncate_digits(rt.digits, config.policy_b.tie_rule)?;
                truncate_pending = None;
            }
        }
        let (pa, pb) = (a.narrowed(), b.narrowed());
        let sep = dist3(pa, pb);
        if !alive_a || !alive_b || !sep.is_finite() {
            truncated_at = Some(t);
            samples.push((t, sep));
            states.push((t, pa, pb));
            break;
        }
        if k % config.sample_every == 0 || k == steps {
            samples.push((t, sep));
            states.push((t, pa, pb));
        }
        if divergence_time.is_none() && sep > config.threshold {
            divergence_time = Some(t);
        }
    }

    let efolding_estimate = efolding_slope(&samples);
    Ok((
        DivergenceReport {
            samples,
            divergence_time,
            threshold: config.threshold,
            efolding_estimate,
            truncated_at,
        },
        states,
    ))
}

fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Least-squares slope of ln(sep) vs t over the window 1e-8 < sep < 1.
fn efolding_slope(samples: &[(f64, f64)]) -> Option<f64> {
    let window: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(_, s)| s > 1e-8 && s < 1.0)
        .map(|&(t, s)| (t, s.ln()))
        .collect();
    if window.len() < 2 {
        return None;
    }
    let n = window.len() as f64;
    let sum_t: f64 = window.iter().map(|&(t, _)| t).sum();
    let sum_y: f64 = window.iter().map(|&(_, y)| y).sum();
    let mean_t = sum_t / n;
    let mean_y = sum_y / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(t, y) in &window {
        num += (t - mean_t) * (y - mean_y);
        den += (t - mean_t) * (t - mean_t);
    }
    if den == 0.0 {
        None
    } else {
        Some(num / den)
    }
}
