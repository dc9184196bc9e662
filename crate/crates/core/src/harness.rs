//! Experiment orchestration.
//!
//! An experiment runs an observable at a list of radii. Trial `i` at radius
//! `r` draws from the stream derived from `(seed, observable id, r, i)`, and
//! results are merged in trial order, so output does not depend on the
//! worker count or on the trials run at other radii.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Element, GroupModel};
use crate::metric::{DistanceOracle, Metric, WordMetric};
use crate::rng::RandomStream;
use crate::stats::{Accumulator, EstimateRecord};
use crate::walk::{
    escape_radius, sample_exit_time, sample_hit, sample_occupation_time, sample_return_indicator, StepDistribution,
    DEFAULT_ESCAPE_FACTOR, DEFAULT_HORIZON,
};
use crate::wsf::{ray_decomposition_trace, sample_component_stats, sample_component_stats_implicit, WiredBallGraph};

/// Largest wired ball the harness indexes before switching to the
/// hash-keyed sampler.
pub const DEFAULT_INDEX_CAP: usize = 2_000_000;

/// Fraction of failed trials at one radius that fails the experiment.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Observable {
    OccupationTime,
    ExitTime,
    WsfBallVolume,
    WsfComponent,
    RayDecomposition,
    ReturnProbability,
    HittingProbability,
}

impl Observable {
    pub const ALL: [Observable; 7] = [
        Observable::OccupationTime,
        Observable::ExitTime,
        Observable::WsfBallVolume,
        Observable::WsfComponent,
        Observable::RayDecomposition,
        Observable::ReturnProbability,
        Observable::HittingProbability,
    ];

    /// Stable label mixed into the per-trial seeds.
    pub fn id(self) -> u64 {
        match self {
            Observable::OccupationTime => 1,
            Observable::ExitTime => 2,
            Observable::WsfBallVolume => 3,
            Observable::WsfComponent => 4,
            Observable::RayDecomposition => 5,
            Observable::ReturnProbability => 6,
            Observable::HittingProbability => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Observable::OccupationTime => "occupation",
            Observable::ExitTime => "exit-time",
            Observable::WsfBallVolume => "wsf-volume",
            Observable::WsfComponent => "wsf-component",
            Observable::RayDecomposition => "ray",
            Observable::ReturnProbability => "return",
            Observable::HittingProbability => "hitting",
        }
    }

    /// Names of the per-trial values, primary first.
    pub fn series(self) -> &'static [&'static str] {
        match self {
            Observable::WsfBallVolume => &["T", "C", "Nr"],
            Observable::WsfComponent => &["C", "T", "Nr"],
            Observable::RayDecomposition => &["xi", "cover", "ray", "returned"],
            _ => &["value"],
        }
    }

    fn is_wsf(self) -> bool {
        matches!(self, Observable::WsfBallVolume | Observable::WsfComponent)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown observable '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkOptions {
    pub lazy: bool,
    pub escape_factor: f64,
    pub horizon: u64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions {
            lazy: false,
            escape_factor: DEFAULT_ESCAPE_FACTOR,
            horizon: DEFAULT_HORIZON,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WsfOptions {
    /// Wired ball radius is `wired_factor · r`.
    pub wired_factor: u64,
    /// Wired balls larger than this are sampled without an index.
    pub index_cap: usize,
}

impl Default for WsfOptions {
    fn default() -> Self {
        WsfOptions {
            wired_factor: 2,
            index_cap: DEFAULT_INDEX_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "as_display")]
    pub group: GroupModel,
    pub observable: Observable,
    pub radii: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    pub walk: WalkOptions,
    pub wsf: WsfOptions,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[serde(skip)]
    pub workers: usize,
}

fn as_display<S: serde::Serializer>(g: &GroupModel, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

/// Smallest trial count accepted by [`ExperimentConfig::validate`].
pub const MIN_TRIALS: u64 = 30;

impl ExperimentConfig {
    pub fn new(group: GroupModel, observable: Observable, radii: Vec<u64>, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            group,
            observable,
            radii,
            trials,
            seed,
            walk: WalkOptions::default(),
            wsf: WsfOptions::default(),
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::Config("no radii".into()));
        }
        if self.radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("radii must be strictly increasing".into()));
        }
        if self.trials < MIN_TRIALS {
            return Err(Error::Config(format!(
                "need at least {MIN_TRIALS} trials per radius, got {}",
                self.trials
            )));
        }
        if !(self.walk.escape_factor >= 2.0) {
            return Err(Error::Config(format!("escape factor {} < 2", self.walk.escape_factor)));
        }
        if self.walk.horizon == 0 {
            return Err(Error::Config("horizon must be positive".into()));
        }
        if self.wsf.wired_factor < 1 {
            return Err(Error::Config("wired factor must be at least 1".into()));
        }
        let needs_transience = matches!(
            self.observable,
            Observable::OccupationTime | Observable::RayDecomposition | Observable::HittingProbability
        );
        if needs_transience && !self.group.is_transient() {
            return Err(Error::Recurrent {
                model: self.group.to_string(),
            });
        }
        if self.observable == Observable::ReturnProbability && self.radii[0] == 0 {
            return Err(Error::Config("return times start at m = 1".into()));
        }
        Ok(())
    }

    /// Builds a config from flat `key = value` pairs. Keys: `group`,
    /// `observable`, `radii`, `trials`, `seed`, `lazy`, `escape-factor`,
    /// `horizon`, `wired-factor`, `index-cap`, `workers`.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| pairs.get(k).map(String::as_str);
        let need = |k: &str| get(k).ok_or_else(|| Error::Config(format!("missing key '{k}'")));
        let group: GroupModel = need("group")?.parse()?;
        let observable: Observable = need("observable")?.parse()?;
        let radii = parse_list(need("radii")?)?;
        let trials = parse_num(get("trials").unwrap_or("1000"), "trials")?;
        let seed = parse_num(get("seed").unwrap_or("1"), "seed")?;
        let mut cfg = ExperimentConfig::new(group, observable, radii, trials, seed);
        for (key, value) in pairs {
            match key.as_str() {
                "group" | "observable" | "radii" | "trials" | "seed" => {}
                "lazy" => cfg.walk.lazy = parse_bool(value)?,
                "escape-factor" => cfg.walk.escape_factor = parse_num(value, key)?,
                "horizon" => cfg.walk.horizon = parse_num(value, key)?,
                "wired-factor" => cfg.wsf.wired_factor = parse_num(value, key)?,
                "index-cap" => cfg.wsf.index_cap = parse_num(value, key)?,
                "workers" => cfg.workers = parse_num(value, key)?,
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Comma-separated unsigned integers.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_num(t, "list entry"))
        .collect()
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Config(format!("bad {what} '{s}'")))
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::Config(format!("bad boolean '{other}'"))),
    }
}

/// Results at one radius: one record per series of the observable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusResult {
    pub r: u64,
    pub series: Vec<(String, EstimateRecord)>,
    /// Radius of the wired ball (forests) or escape radius (walks).
    pub r_used: u64,
}

impl RadiusResult {
    pub fn primary(&self) -> &EstimateRecord {
        &self.series[0].1
    }

    pub fn get(&self, name: &str) -> Option<&EstimateRecord> {
        self.series.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub results: Vec<RadiusResult>,
}

impl ExperimentReport {
    /// Primary record per radius.
    pub fn records(&self) -> Vec<EstimateRecord> {
        self.results.iter().map(|r| r.primary().clone()).collect()
    }

    pub fn series(&self, name: &str) -> Vec<EstimateRecord> {
        self.results.iter().filter_map(|r| r.get(name).cloned()).collect()
    }
}

struct TrialValue {
    values: Vec<f64>,
    truncated: bool,
}

enum WsfEngine {
    Indexed(WiredBallGraph),
    Implicit { radius: u64 },
}

struct Setup {
    dist: StepDistribution,
    metric: Option<Metric>,
    oracle: Option<DistanceOracle>,
}

fn setup(cfg: &ExperimentConfig) -> Result<Setup> {
    let dist = StepDistribution::simple(&cfg.group, cfg.walk.lazy);
    let r_max = *cfg.radii.last().expect("validated");
    let fail = |e: Error| Error::Experiment {
        r: r_max,
        reason: e.to_string(),
    };
    let (metric, oracle) = match cfg.observable {
        Observable::OccupationTime | Observable::ExitTime => {
            (Some(Metric::for_model(&cfg.group, r_max).map_err(fail)?), None)
        }
        Observable::RayDecomposition => (Some(Metric::for_model(&cfg.group, 2 * r_max).map_err(fail)?), None),
        Observable::ReturnProbability => (None, None),
        Observable::HittingProbability => (
            Some(Metric::for_model(&cfg.group, r_max).map_err(fail)?),
            Some(DistanceOracle::build(&cfg.group, r_max).map_err(fail)?),
        ),
        Observable::WsfBallVolume | Observable::WsfComponent => {
            let big = r_max * cfg.wsf.wired_factor;
            match DistanceOracle::build_with_cap(&cfg.group, big, cfg.wsf.index_cap) {
                Ok(o) => (None, Some(o)),
                Err(Error::Capacity { radius_reached, .. }) if cfg.group.has_closed_form_metric() => (
                    Some(Metric::for_model(&cfg.group, big).map_err(fail)?),
                    Some(DistanceOracle::build(&cfg.group, radius_reached.max(r_max)).map_err(fail)?),
                ),
                Err(e) => return Err(fail(e)),
            }
        }
    };
    Ok(Setup { dist, metric, oracle })
}

fn wsf_engine(cfg: &ExperimentConfig, s: &Setup, r: u64) -> Result<WsfEngine> {
    let radius = r * cfg.wsf.wired_factor;
    let oracle = s.oracle.as_ref().expect("forest setup has an oracle");
    if radius <= oracle.r_max() && oracle.volume(radius)? as usize <= cfg.wsf.index_cap {
        Ok(WsfEngine::Indexed(WiredBallGraph::build(&s.dist, oracle, radius)?))
    } else {
        Ok(WsfEngine::Implicit { radius })
    }
}

fn run_trial(
    cfg: &ExperimentConfig,
    s: &Setup,
    engine: Option<&WsfEngine>,
    target: Option<&Element>,
    r: u64,
    rng: &mut RandomStream,
) -> Result<TrialValue> {
    let single = |x: f64, truncated: bool| TrialValue {
        values: vec![x],
        truncated,
    };
    let metric = || s.metric.as_ref().expect("walk setup has a metric") as &dyn WordMetric;
    match cfg.observable {
        Observable::OccupationTime => {
            let out = sample_occupation_time(&s.dist, metric(), r, cfg.walk.escape_factor, cfg.walk.horizon, rng)?;
            Ok(single(out.l_r as f64, out.truncated))
        }
        Observable::ExitTime => Ok(single(
            sample_exit_time(&s.dist, metric(), r, cfg.walk.horizon, rng)? as f64,
            false,
        )),
        Observable::ReturnProbability => Ok(single(sample_return_indicator(&s.dist, r, rng) as u8 as f64, false)),
        Observable::HittingProbability => {
            let m = escape_radius(r, cfg.walk.escape_factor);
            let out = sample_hit(
                &s.dist,
                metric(),
                target.expect("hitting target"),
                m,
                cfg.walk.horizon,
                rng,
            );
            Ok(single(out.hit as u8 as f64, out.truncated))
        }
        Observable::RayDecomposition => {
            let m = escape_radius(2 * r, cfg.walk.escape_factor);
            let t = ray_decomposition_trace(&s.dist, metric(), r, m, cfg.walk.horizon, rng)?;
            Ok(TrialValue {
                values: vec![
                    t.xi as f64,
                    t.cover_bound as f64,
                    t.ray_in_ball as f64,
                    (t.xi > 1) as u8 as f64,
                ],
                truncated: false,
            })
        }
        Observable::WsfBallVolume | Observable::WsfComponent => {
            let stats = match engine.expect("forest engine") {
                WsfEngine::Indexed(g) => sample_component_stats(g, r, rng)?,
                WsfEngine::Implicit { radius } => sample_component_stats_implicit(
                    &s.dist,
                    s.oracle.as_ref().expect("ball oracle"),
                    s.metric.as_ref().expect("closed-form metric"),
                    r,
                    *radius,
                    rng,
                )?,
            };
            let (t, c, n) = (
                stats.size_t_o_cap_b as f64,
                stats.size_c as f64,
                stats.ray_length as f64,
            );
            let values = if cfg.observable == Observable::WsfBallVolume {
                vec![t, c, n]
            } else {
                vec![c, t, n]
            };
            Ok(TrialValue {
                values,
                truncated: false,
            })
        }
    }
}

fn run_radius(cfg: &ExperimentConfig, s: &Setup, r: u64) -> Result<RadiusResult> {
    let start = Instant::now();
    let fail = |e: Error| Error::Experiment {
        r,
        reason: e.to_string(),
    };
    let engine = if cfg.observable.is_wsf() {
        Some(wsf_engine(cfg, s, r).map_err(fail)?)
    } else {
        None
    };
    let target = match cfg.observable {
        Observable::HittingProbability => Some(s.oracle.as_ref().expect("oracle").first_at(r).map_err(fail)?.clone()),
        _ => None,
    };
    let outcomes: Vec<Result<TrialValue>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomStream::derive(cfg.seed, &[cfg.observable.id(), r, i]);
            run_trial(cfg, s, engine.as_ref(), target.as_ref(), r, &mut rng)
        })
        .collect();
    let names = cfg.observable.series();
    let mut accs = vec![Accumulator::new(); names.len()];
    let mut failed = 0u64;
    let mut first_error = None;
    for out in outcomes {
        match out {
            Ok(v) => {
                for (acc, x) in accs.iter_mut().zip(&v.values) {
                    acc.push_flagged(*x, v.truncated);
                }
            }
            Err(e) => {
                failed += 1;
                first_error.get_or_insert(e);
            }
        }
    }
    if failed as f64 > MAX_FAILURE_FRACTION * cfg.trials as f64 {
        return Err(Error::Experiment {
            r,
            reason: format!(
                "{failed} of {} trials failed; first error: {}",
                cfg.trials,
                first_error.expect("failures recorded")
            ),
        });
    }
    let wall = start.elapsed().as_secs_f64();
    let series = names
        .iter()
        .zip(accs)
        .map(|(n, acc)| {
            let mut rec = acc.record(r);
            rec.failed = failed;
            rec.wall_time_secs = wall;
            (n.to_string(), rec)
        })
        .collect();
    let r_used = match (&engine, cfg.observable) {
        (Some(WsfEngine::Indexed(g)), _) => g.radius().unwrap_or(r),
        (Some(WsfEngine::Implicit { radius }), _) => *radius,
        (None, Observable::RayDecomposition) => escape_radius(2 * r, cfg.walk.escape_factor),
        (None, Observable::ReturnProbability | Observable::ExitTime) => r,
        (None, _) => escape_radius(r, cfg.walk.escape_factor),
    };
    Ok(RadiusResult { r, series, r_used })
}

/// Runs every radius of the experiment and keeps all series.
pub fn run_experiment_report(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| {
        let s = setup(cfg)?;
        let results = cfg
            .radii
            .iter()
            .map(|&r| run_radius(cfg, &s, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExperimentReport {
            config: cfg.clone(),
            results,
        })
    })
}

/// One record per radius for the observable's primary series.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<EstimateRecord>> {
    run_experiment_report(cfg).map(|r| r.records())
}
