//! Search for measurement sets with the smallest LHS bound.
//!
//! [`anneal`] runs independent simulated-annealing restarts. Each restart
//! draws its own ChaCha8 stream (`seed`, stream = restart index), starts
//! from uniformly random directions, and proposes single-direction
//! rotations about a random axis by a half-normal angle. Acceptance is
//! Metropolis on the change in bound with temperature in bound units. The
//! best set of every restart is then polished by [`refine`], a
//! trust-region linear-programming step on the near-maximal sign patterns, and the lowest bound wins (ties go to
//! the lower restart index).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome, Variable};

use crate::error::{Result, SteeringError};
use crate::lhsbound::{bound_value, canonicalize, lhs_bound, patterns_above, MeasurementSet};
use crate::vector::{UnitVector3, Vec3};

/// Largest N the optimizer accepts.
pub const MAX_SETTINGS: usize = 20;

/// Largest trust-region half-width of [`refine`], in tangent coordinates.
const REFINE_INITIAL_STEP: f64 = 0.05;
const REFINE_MIN_STEP: f64 = 1e-13;
const REFINE_SEED: u64 = 0x2ef1_4e5e_ed00;
/// Cap on the number of linearized patterns per refinement step.
const REFINE_MAX_ACTIVE: usize = 4096;

/// Missing fields in a JSON config take the defaults for its `n_settings`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "PartialConfig")]
pub struct AnnealingConfig {
    pub n_settings: usize,
    pub seed: u64,
    pub t_initial: f64,
    pub t_final: f64,
    pub cooling: f64,
    pub sweeps_per_temperature: usize,
    pub restarts: usize,
    pub move_scale_initial: f64,
    pub move_scale_final: f64,
    /// Pattern-search iterations applied to each restart's best set.
    pub refine_iterations: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    n_settings: usize,
    #[serde(default)]
    seed: u64,
    t_initial: Option<f64>,
    t_final: Option<f64>,
    cooling: Option<f64>,
    sweeps_per_temperature: Option<usize>,
    restarts: Option<usize>,
    move_scale_initial: Option<f64>,
    move_scale_final: Option<f64>,
    refine_iterations: Option<usize>,
}

impl From<PartialConfig> for AnnealingConfig {
    fn from(p: PartialConfig) -> Self {
        let d = AnnealingConfig::new(p.n_settings, p.seed);
        AnnealingConfig {
            t_initial: p.t_initial.unwrap_or(d.t_initial),
            t_final: p.t_final.unwrap_or(d.t_final),
            cooling: p.cooling.unwrap_or(d.cooling),
            sweeps_per_temperature: p.sweeps_per_temperature.unwrap_or(d.sweeps_per_temperature),
            restarts: p.restarts.unwrap_or(d.restarts),
            move_scale_initial: p.move_scale_initial.unwrap_or(d.move_scale_initial),
            move_scale_final: p.move_scale_final.unwrap_or(d.move_scale_final),
            refine_iterations: p.refine_iterations.unwrap_or(d.refine_iterations),
            ..d
        }
    }
}

impl Default for AnnealingConfig {
    fn default() -> Self {
        AnnealingConfig::new(2, 1)
    }
}

impl AnnealingConfig {
    /// Default schedule for `n` settings.
    pub fn new(n_settings: usize, seed: u64) -> Self {
        AnnealingConfig {
            n_settings,
            seed,
            t_initial: 0.05,
            t_final: 1e-5,
            cooling: 0.97,
            sweeps_per_temperature: 50 * n_settings,
            restarts: 20,
            move_scale_initial: 0.5,
            move_scale_final: 0.005,
            refine_iterations: 2000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_settings;
        if n > MAX_SETTINGS {
            return Err(SteeringError::Capacity {
                what: "anneal",
                n,
                limit: MAX_SETTINGS,
            });
        }
        if n < 2 {
            return Err(SteeringError::validation(format!("n_settings = {n} must be at least 2")));
        }
        if !(self.t_final > 0.0 && self.t_final < self.t_initial && self.t_initial.is_finite()) {
            return Err(SteeringError::validation(format!(
                "temperatures must satisfy 0 < t_final ({}) < t_initial ({})",
                self.t_final, self.t_initial
            )));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(SteeringError::Range {
                name: "cooling",
                value: self.cooling,
                range: "(0, 1)",
            });
        }
        if self.restarts < 1 || self.sweeps_per_temperature < 1 {
            return Err(SteeringError::validation("restarts and sweeps_per_temperature must be >= 1"));
        }
        for (name, v) in [
            ("move_scale_initial", self.move_scale_initial),
            ("move_scale_final", self.move_scale_final),
        ] {
            if !(v > 0.0 && v <= PI) {
                return Err(SteeringError::Range {
                    name,
                    value: v,
                    range: "(0, pi]",
                });
            }
        }
        Ok(())
    }

    /// Move scale at temperature `t`: geometric interpolation between the
    /// initial and final scales, linear in log-temperature.
    pub fn move_scale(&self, t: f64) -> f64 {
        let frac = ((t / self.t_initial).ln() / (self.t_final / self.t_initial).ln()).clamp(0.0, 1.0);
        self.move_scale_initial * (self.move_scale_final / self.move_scale_initial).powf(frac)
    }

    /// Number of temperature levels in the schedule.
    pub fn temperature_steps(&self) -> usize {
        let mut t = self.t_initial;
        let mut steps = 0;
        while t >= self.t_final {
            steps += 1;
            t *= self.cooling;
        }
        steps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_set: MeasurementSet,
    pub best_bound: f64,
    /// (restart index, final bound after refinement).
    pub history: Vec<(usize, f64)>,
    pub evaluations: u64,
}

/// Outcome of one annealing restart before refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub restart: usize,
    pub best_set: MeasurementSet,
    pub best_bound: f64,
    /// Best-so-far bound after each temperature level.
    pub trace: Vec<f64>,
    pub evaluations: u64,
}

fn random_direction<R: Rng>(rng: &mut R) -> UnitVector3 {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    UnitVector3::normalize(Vec3::new(rho * phi.cos(), rho * phi.sin(), z)).expect("unit vector")
}

fn random_axis<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        );
        let n = v.norm();
        if n > 1e-9 {
            return (1.0 / n) * v;
        }
    }
}

/// `n` directions uniform on the sphere (z uniform in [-1, 1], azimuth
/// uniform in [0, 2π)), reproducible per seed.
pub fn random_set(n: usize, seed: u64) -> Result<MeasurementSet> {
    if n < 1 {
        return Err(SteeringError::validation("random_set needs n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = (0..n).map(|_| random_direction(&mut rng)).collect();
    MeasurementSet::new(format!("random n={n} seed={seed}"), dirs)
}

/// The RNG used by restart `restart` of a run seeded with `seed`.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// One annealing restart (no refinement).
pub fn anneal_restart(config: &AnnealingConfig, restart: usize) -> Result<RestartOutcome> {
    config.validate()?;
    let n = config.n_settings;
    let mut rng = restart_rng(config.seed, restart);
    let mut current: Vec<UnitVector3> = (0..n).map(|_| random_direction(&mut rng)).collect();
    let mut current_value = bound_value(&current);
    let mut best = current.clone();
    let mut best_value = current_value;
    let mut evaluations = 1u64;
    let mut trace = Vec::with_capacity(config.temperature_steps());

    let mut t = config.t_initial;
    while t >= config.t_final {
        let scale = config.move_scale(t);
        for _ in 0..config.sweeps_per_temperature {
            let j = rng.random_range(0..n);
            let axis = random_axis(&mut rng);
            let g: f64 = StandardNormal.sample(&mut rng);
            let old = current[j];
            current[j] = old.rotated_about(axis, g.abs() * scale);
            let value = bound_value(&current);
            evaluations += 1;
            let delta = value - current_value;
            if delta <= 0.0 || rng.random::<f64>() < (-delta / t).exp() {
                current_value = value;
                if value < best_value {
                    best_value = value;
                    best.clone_from(&current);
                }
            } else {
                current[j] = old;
            }
        }
        trace.push(best_value);
        t *= config.cooling;
    }

    let label = format!("anneal n={n} seed={} restart={restart}", config.seed);
    Ok(RestartOutcome {
        restart,
        best_set: MeasurementSet::new(label, best)?,
        best_bound: best_value,
        trace,
        evaluations,
    })
}

struct Polished {
    restart: usize,
    set: MeasurementSet,
    bound: f64,
    evaluations: u64,
}

fn run_restart(config: &AnnealingConfig, restart: usize) -> Result<Polished> {
    let raw = anneal_restart(config, restart)?;
    let refined = refine_raw(&raw.best_set, config.refine_iterations)?;
    Ok(Polished {
        restart,
        bound: refined.1,
        set: refined.0,
        evaluations: raw.evaluations + refined.2,
    })
}

fn finish(config: &AnnealingConfig, polished: Vec<Polished>) -> Result<OptimizationResult> {
    let history = polished.iter().map(|p| (p.restart, p.bound)).collect();
    let evaluations = polished.iter().map(|p| p.evaluations).sum();
    // strict `<` keeps the lowest restart index among ties
    let mut winner = &polished[0];
    for p in &polished[1..] {
        if p.bound < winner.bound {
            winner = p;
        }
    }
    let label = format!(
        "anneal n={} seed={} restart={}",
        config.n_settings, config.seed, winner.restart
    );
    let best_set = canonicalize(&winner.set)?.with_label(label);
    let best_bound = lhs_bound(&best_set)?.value;
    Ok(OptimizationResult {
        best_set,
        best_bound,
        history,
        evaluations,
    })
}

/// Simulated annealing with restarts and refinement, run sequentially.
pub fn anneal(config: &AnnealingConfig) -> Result<OptimizationResult> {
    config.validate()?;
    let polished = (0..config.restarts)
        .map(|r| run_restart(config, r))
        .collect::<Result<Vec<_>>>()?;
    finish(config, polished)
}

/// As [`anneal`] with restarts evaluated in parallel; the result is
/// identical to the sequential run.
pub fn anneal_parallel(config: &AnnealingConfig) -> Result<OptimizationResult> {
    config.validate()?;
    let polished = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(config, r))
        .collect::<Result<Vec<_>>>()?;
    finish(config, polished)
}

/// Sequential linear programming on the minimax objective, returning
/// (set, bound, evaluations); never canonicalizes.
///
/// Each iteration linearizes every sign pattern that could become maximal
/// inside a box trust region of half-width `radius` in the tangent
/// coordinates of each direction, then minimizes the largest linearized
/// norm. Steps are kept only if the true bound drops.
fn refine_raw(set: &MeasurementSet, iterations: usize) -> Result<(MeasurementSet, f64, u64)> {
    let n = set.len();
    if n > MAX_SETTINGS {
        return Err(SteeringError::Capacity {
            what: "refine",
            n,
            limit: MAX_SETTINGS,
        });
    }
    let nf = n as f64;
    let mut dirs = set.directions().to_vec();
    let mut value = bound_value(&dirs);
    let mut evaluations = 1u64;
    let mut radius = REFINE_INITIAL_STEP;
    let mut rng = ChaCha8Rng::seed_from_u64(REFINE_SEED ^ n as u64);

    for _ in 0..iterations {
        if radius < REFINE_MIN_STEP || n < 2 {
            break;
        }
        // a pattern's norm moves by at most 2·radius·N per step, so
        // anything further below the maximum cannot overtake it
        let slack = (value - 4.0 * radius).max(0.0) * nf;
        let mut active = patterns_above(&dirs, slack * slack);
        evaluations += 1;
        if active.len() > REFINE_MAX_ACTIVE {
            active.sort_by(|a, b| b.1.norm_sqr().total_cmp(&a.1.norm_sqr()));
            active.truncate(REFINE_MAX_ACTIVE);
        }
        let frames: Vec<(Vec3, Vec3)> = dirs.iter().map(|d| d.tangent_frame()).collect();

        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let coords: Vec<(Variable, Variable)> = (0..n)
            .map(|_| (lp.add_var(0.0, (-radius, radius)), lp.add_var(0.0, (-radius, radius))))
            .collect();
        let t = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
        for &(mask, sum) in &active {
            let norm = sum.norm();
            if norm == 0.0 {
                continue;
            }
            let unit = (1.0 / norm) * sum;
            let mut terms = Vec::with_capacity(2 * n + 1);
            for (j, (&(u, v), &(eu, ev))) in coords.iter().zip(&frames).enumerate() {
                let sign = if j > 0 && mask >> (j - 1) & 1 == 1 { -1.0 } else { 1.0 };
                terms.push((u, sign * unit.dot(eu) / nf));
                terms.push((v, sign * unit.dot(ev) / nf));
            }
            terms.push((t, -1.0));
            lp.add_constraint(terms, ComparisonOp::Le, -norm / nf);
        }
        let solution = match lp.solve() {
            Ok(SolveOutcome::Solution(s)) => Some(s),
            _ => None,
        };
        let predicted = solution.as_ref().map_or(0.0, |s| value - s[t]);
        if !(predicted > 0.0) {
            // first-order stationary (e.g. coincident directions): try
            // random joint moves before shrinking
            if let Some(v) = random_escape(&mut dirs, &frames, radius, value, &mut rng, &mut evaluations) {
                value = v;
            } else {
                radius *= 0.25;
            }
            continue;
        }
        let solution = solution.expect("checked above");
        let trial: Vec<UnitVector3> = dirs
            .iter()
            .zip(&frames)
            .zip(&coords)
            .map(|((d, &(eu, ev)), &(u, v))| {
                let moved = d.vec() + solution[u] * eu + solution[v] * ev;
                UnitVector3::normalize(moved).expect("unit vector")
            })
            .collect();
        let trial_value = bound_value(&trial);
        evaluations += 1;
        let ratio = (value - trial_value) / predicted;
        if trial_value < value {
            dirs = trial;
            value = trial_value;
        }
        if ratio > 0.75 {
            radius = (radius * 2.0).min(REFINE_INITIAL_STEP);
        } else if ratio < 0.25 {
            radius *= 0.25;
        }
    }
    Ok((MeasurementSet::new(set.label(), dirs)?, value, evaluations))
}

fn random_escape(
    dirs: &mut Vec<UnitVector3>,
    frames: &[(Vec3, Vec3)],
    radius: f64,
    value: f64,
    rng: &mut ChaCha8Rng,
    evaluations: &mut u64,
) -> Option<f64> {
    for _ in 0..2 * dirs.len() {
        let trial: Vec<UnitVector3> = dirs
            .iter()
            .zip(frames)
            .map(|(d, &(eu, ev))| {
                let gu: f64 = StandardNormal.sample(rng);
                let gv: f64 = StandardNormal.sample(rng);
                UnitVector3::normalize(d.vec() + radius * (gu * eu + gv * ev)).expect("unit vector")
            })
            .collect();
        let v = bound_value(&trial);
        *evaluations += 1;
        if v < value {
            *dirs = trial;
            return Some(v);
        }
    }
    None
}

/// Local polish of a set. The returned bound never exceeds
/// the input bound (beyond canonicalization rounding).
pub fn refine(set: &MeasurementSet, iterations: usize) -> Result<OptimizationResult> {
    let input = lhs_bound(set)?.value;
    let (work, value, evaluations) = refine_raw(set, iterations)?;
    let canonical = |s: &MeasurementSet| -> Result<(MeasurementSet, f64)> {
        let c = canonicalize(s)?;
        let b = lhs_bound(&c)?.value;
        Ok((c, b))
    };
    let (mut out_set, mut out_bound) = canonical(if value < input { &work } else { set })?;
    // canonicalization rotates the set, which can cost an ulp
    if out_bound > input + 1e-15 {
        (out_set, out_bound) = (set.clone(), input);
    }
    Ok(OptimizationResult {
        best_set: out_set.with_label(format!("{} (refined)", set.label())),
        best_bound: out_bound,
        history: vec![(0, out_bound)],
        evaluations,
    })
}
