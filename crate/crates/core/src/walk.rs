//! Symmetric finite-range random walks and their observables.
//!
//! A walk is `S_t = S_{t-1} · X_t` with i.i.d. increments drawn from a
//! [`StepDistribution`]. The observables are the occupation time `L_r` of
//! the ball `B(o, r)`, the exit time `τ_r`, return indicators `S_m = o` and
//! hitting indicators.
//!
//! `L_r` counts visits over infinite time. It is estimated by stopping once
//! the walk's certified distance exceeds `escape_factor · max(r, 1)` or the
//! horizon runs out; [`OccupationResult::truncated`] records the latter.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::groups::{Element, GroupModel};
use crate::metric::WordMetric;
use crate::rng::RandomStream;
use crate::stats::{Accumulator, EstimateRecord};

pub const DEFAULT_ESCAPE_FACTOR: f64 = 8.0;
pub const DEFAULT_HORIZON: u64 = 10_000_000;

const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
enum Chooser {
    Uniform(usize),
    Weighted(WeightedIndex<f64>),
}

/// Increment law: a finite support plus an optional holding mass.
#[derive(Clone, Debug)]
pub struct StepDistribution {
    model: GroupModel,
    support: Vec<(Element, f64)>,
    lazy_weight: f64,
    chooser: Chooser,
}

impl StepDistribution {
    /// Uniform on the standard generators; with `lazy`, holds with probability 1/2.
    pub fn simple(model: &GroupModel, lazy: bool) -> Self {
        let gens = model.generators();
        let lazy_weight = if lazy { 0.5 } else { 0.0 };
        let p = (1.0 - lazy_weight) / gens.len() as f64;
        let support = gens.into_iter().map(|g| (g, p)).collect();
        Self::new(model, support, lazy_weight).expect("standard generators are symmetric")
    }

    /// A symmetric finite-range law. Rejects supports whose inverse image
    /// carries different mass.
    pub fn new(model: &GroupModel, support: Vec<(Element, f64)>, lazy_weight: f64) -> Result<Self> {
        let dist = Self::new_asymmetric(model, support, lazy_weight)?;
        if !dist.is_symmetric() {
            return Err(Error::Distribution(
                "support is not closed under inversion with equal mass".into(),
            ));
        }
        Ok(dist)
    }

    /// Like [`StepDistribution::new`] without the symmetry requirement.
    /// Only meant for degenerate probes; the theory needs symmetric walks.
    pub fn new_asymmetric(model: &GroupModel, support: Vec<(Element, f64)>, lazy_weight: f64) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Distribution("empty support".into()));
        }
        if !(0.0..1.0).contains(&lazy_weight) {
            return Err(Error::Distribution(format!(
                "holding mass {lazy_weight} outside [0, 1)"
            )));
        }
        let id = model.identity();
        let mut total = lazy_weight;
        for (g, p) in &support {
            model.validate(g)?;
            if *g == id {
                return Err(Error::Distribution("identity belongs in the holding mass".into()));
            }
            if !(*p > 0.0) {
                return Err(Error::Distribution(format!("non-positive mass {p} on {g}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Distribution(format!("masses sum to {total}")));
        }
        let mut sorted: Vec<&Element> = support.iter().map(|(g, _)| g).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Distribution("duplicate support element".into()));
        }
        let first = support[0].1;
        let chooser = if support.iter().all(|(_, p)| *p == first) {
            Chooser::Uniform(support.len())
        } else {
            Chooser::Weighted(
                WeightedIndex::new(support.iter().map(|(_, p)| *p)).map_err(|e| Error::Distribution(e.to_string()))?,
            )
        };
        Ok(StepDistribution {
            model: model.clone(),
            support,
            lazy_weight,
            chooser,
        })
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn support(&self) -> &[(Element, f64)] {
        &self.support
    }

    pub fn lazy_weight(&self) -> f64 {
        self.lazy_weight
    }

    pub fn is_lazy(&self) -> bool {
        self.lazy_weight >= 0.5
    }

    /// Every support element's inverse carries the same mass.
    pub fn is_symmetric(&self) -> bool {
        let mass: FxHashMap<&Element, f64> = self.support.iter().map(|(g, p)| (g, *p)).collect();
        self.support.iter().all(|(g, p)| {
            let inv = self.model.inverse(g).expect("validated");
            mass.get(&inv).is_some_and(|q| (q - p).abs() <= MASS_TOLERANCE)
        })
    }

    /// Index into [`StepDistribution::support`] of the next move, ignoring holding.
    pub fn sample_move_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.chooser {
            Chooser::Uniform(n) => rng.random_range(0..*n),
            Chooser::Weighted(w) => w.sample(rng),
        }
    }

    /// Advances `x` by one step. Returns false when the walk held in place.
    pub fn step<R: Rng + ?Sized>(&self, x: &mut Element, rng: &mut R) -> bool {
        if self.lazy_weight > 0.0 && rng.random::<f64>() < self.lazy_weight {
            return false;
        }
        let i = self.sample_move_index(rng);
        self.model.right_multiply(x, &self.support[i].0);
        true
    }
}

/// Uniform on the standard generators, optionally lazy.
pub fn make_step_distribution(model: &GroupModel, lazy: bool) -> StepDistribution {
    StepDistribution::simple(model, lazy)
}

/// Escape radius used for certified stopping.
pub fn escape_radius(r: u64, escape_factor: f64) -> u64 {
    (escape_factor * r.max(1) as f64).ceil() as u64
}

fn check_radius(metric: &dyn WordMetric, r: u64) -> Result<()> {
    match metric.exact_radius() {
        Some(r_max) if r > r_max => Err(Error::Range { r, r_max }),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopReason {
    Horizon,
    EscapedRadius(u64),
    HitTarget,
}

/// When [`sample_trajectory`] stops.
#[derive(Clone, Debug)]
pub enum TrajectoryStop<'a> {
    Horizon,
    /// Certified distance exceeds the radius.
    EscapeRadius(u64),
    HitTarget(&'a Element),
}

/// A finite walk path `S_0, ..., S_T`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub steps: Vec<Element>,
    pub stop_reason: StopReason,
}

impl Trajectory {
    /// Number of indices `t` with `S_t ∈ B(o, r)`.
    pub fn occupation(&self, metric: &dyn WordMetric, r: u64) -> Result<u64> {
        let mut count = 0;
        for x in &self.steps {
            count += metric.in_ball(x, r)? as u64;
        }
        Ok(count)
    }

    /// First index with `S_t ∉ B(o, r)`, if the path has one.
    pub fn exit_index(&self, metric: &dyn WordMetric, r: u64) -> Result<Option<u64>> {
        for (t, x) in self.steps.iter().enumerate() {
            if !metric.in_ball(x, r)? {
                return Ok(Some(t as u64));
            }
        }
        Ok(None)
    }

    /// Consecutive steps differ by a support element or are equal.
    pub fn is_valid_for(&self, dist: &StepDistribution) -> bool {
        let model = dist.model();
        self.steps.windows(2).all(|w| {
            w[0] == w[1]
                || dist.support().iter().any(|(g, _)| {
                    let mut y = w[0].clone();
                    model.right_multiply(&mut y, g);
                    y == w[1]
                })
        })
    }
}

/// Records a walk from `start` until `stop` fires or `horizon` steps pass.
pub fn sample_trajectory(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    start: &Element,
    stop: TrajectoryStop<'_>,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<Trajectory> {
    dist.model().validate(start)?;
    let mut x = start.clone();
    let mut steps = vec![x.clone()];
    let fired = |x: &Element| match &stop {
        TrajectoryStop::Horizon => None,
        TrajectoryStop::EscapeRadius(m) => (metric.lower_bound(x) > *m).then_some(StopReason::EscapedRadius(*m)),
        TrajectoryStop::HitTarget(t) => (x == *t).then_some(StopReason::HitTarget),
    };
    if let Some(reason) = fired(&x) {
        return Ok(Trajectory {
            steps,
            stop_reason: reason,
        });
    }
    for _ in 0..horizon {
        dist.step(&mut x, rng);
        steps.push(x.clone());
        if let Some(reason) = fired(&x) {
            return Ok(Trajectory {
                steps,
                stop_reason: reason,
            });
        }
    }
    Ok(Trajectory {
        steps,
        stop_reason: StopReason::Horizon,
    })
}

/// One sample of the truncated occupation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OccupationResult {
    pub l_r: u64,
    /// The horizon ran out before the walk escaped.
    pub truncated: bool,
    pub escape_radius_used: u64,
    pub horizon_used: u64,
    pub steps: u64,
}

/// Samples `L_r = |{t : S_t ∈ B(o, r)}|` for a walk from the identity.
pub fn sample_occupation_time(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    r: u64,
    escape_factor: f64,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<OccupationResult> {
    if !dist.model().is_transient() {
        return Err(Error::Recurrent {
            model: dist.model().to_string(),
        });
    }
    if !(escape_factor >= 2.0) {
        return Err(Error::Parameter(format!("escape factor {escape_factor} < 2")));
    }
    check_radius(metric, r)?;
    let m = escape_radius(r, escape_factor);
    let mut x = dist.model().identity();
    let mut l_r = 1;
    for t in 1..=horizon {
        dist.step(&mut x, rng);
        if metric.in_ball(&x, r)? {
            l_r += 1;
        } else if metric.lower_bound(&x) > m {
            return Ok(OccupationResult {
                l_r,
                truncated: false,
                escape_radius_used: m,
                horizon_used: horizon,
                steps: t,
            });
        }
    }
    Ok(OccupationResult {
        l_r,
        truncated: true,
        escape_radius_used: m,
        horizon_used: horizon,
        steps: horizon,
    })
}

/// Samples `τ_r`, the first `t` with `S_t ∉ B(o, r)`.
pub fn sample_exit_time(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    r: u64,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<u64> {
    check_radius(metric, r)?;
    sample_exit_time_from(dist, metric, &dist.model().identity(), r, horizon, rng)
}

/// Exit time of `B(o, r)` for a walk started at `start`.
pub fn sample_exit_time_from(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    start: &Element,
    r: u64,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<u64> {
    let mut x = start.clone();
    if !metric.in_ball(&x, r)? {
        return Ok(0);
    }
    for t in 1..=horizon {
        dist.step(&mut x, rng);
        if !metric.in_ball(&x, r)? {
            return Ok(t);
        }
    }
    Err(Error::Horizon {
        horizon,
        context: format!("exit time of B(o,{r}) on {}", dist.model()),
    })
}

/// Whether an `m`-step walk from the identity ends at the identity.
pub fn sample_return_indicator<R: Rng + ?Sized>(dist: &StepDistribution, m: u64, rng: &mut R) -> bool {
    let mut x = dist.model().identity();
    for _ in 0..m {
        dist.step(&mut x, rng);
    }
    x == dist.model().identity()
}

/// Sequential Monte Carlo estimate of `p_m(o, o)`; the record's `r` is `m`.
pub fn estimate_return_probability(
    dist: &StepDistribution,
    m: u64,
    trials: u64,
    rng: &mut RandomStream,
) -> Result<EstimateRecord> {
    if trials == 0 {
        return Err(Error::Parameter("need at least one trial".into()));
    }
    let mut acc = Accumulator::new();
    for _ in 0..trials {
        acc.push(sample_return_indicator(dist, m, rng) as u8 as f64);
    }
    Ok(acc.record(m))
}

/// Outcome of a hitting-probability trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HitOutcome {
    pub hit: bool,
    /// The horizon ran out before hit or escape.
    pub truncated: bool,
}

/// Runs a walk from the identity until it hits `target` or its certified
/// distance exceeds `escape`.
pub fn sample_hit(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    target: &Element,
    escape: u64,
    horizon: u64,
    rng: &mut RandomStream,
) -> HitOutcome {
    let mut x = dist.model().identity();
    if &x == target {
        return HitOutcome {
            hit: true,
            truncated: false,
        };
    }
    for _ in 0..horizon {
        if dist.step(&mut x, rng) {
            if &x == target {
                return HitOutcome {
                    hit: true,
                    truncated: false,
                };
            }
            if metric.lower_bound(&x) > escape {
                return HitOutcome {
                    hit: false,
                    truncated: false,
                };
            }
        }
    }
    HitOutcome {
        hit: false,
        truncated: true,
    }
}
