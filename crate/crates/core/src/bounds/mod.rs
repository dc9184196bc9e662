//! Numerical evaluation of return-probability, heat-kernel and
//! occupation-sum bounds, for comparison with simulation.

mod numeric;
mod volume;

pub use numeric::{geometric_breakpoints, hurwitz_zeta, integrate_panels, QuadratureResult};
pub use volume::VolumeFunction;

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{DistanceOracle, WordMetric};
use crate::rng::RandomStream;
use crate::stats::{Accumulator, EstimateRecord};
use crate::walk::{sample_hit, StepDistribution};

/// Constants entering the bounds. They are not known explicitly and are
/// usually fitted at the smallest scale of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    /// Spectral constant, in `(0, 1]`.
    pub c: f64,
    /// Prefactor of the return-probability integral.
    pub c_prime: f64,
    /// Prefactor of the heat-kernel bound.
    pub c_double_prime: f64,
    /// Moment parameter.
    pub k: u32,
    /// Split coefficient; `None` means `c^-2` for occupation sums and
    /// `2 c^-2` for forest sums.
    pub alpha: Option<f64>,
    /// Constant in `Σ_{m ≤ n} P[S_m ∈ B(o, r)] ≤ c_d r √n`.
    pub c_diffusive: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            c: 0.9,
            c_prime: 1.0,
            c_double_prime: 1.0,
            k: 5,
            alpha: None,
            c_diffusive: 1.0,
        }
    }
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c <= 1.0) {
            return Err(Error::Parameter(format!("c = {} outside (0, 1]", self.c)));
        }
        if !(self.c_prime > 0.0 && self.c_double_prime > 0.0 && self.c_diffusive > 0.0) {
            return Err(Error::Parameter("prefactors must be positive".into()));
        }
        if self.k < 1 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        if let Some(a) = self.alpha {
            if !(a > 0.0) {
                return Err(Error::Parameter(format!("alpha = {a} must be positive")));
            }
        }
        Ok(())
    }

    fn alpha_or(&self, scale: f64) -> f64 {
        self.alpha.unwrap_or(scale / (self.c * self.c))
    }
}

/// Parses comma-separated `name=value` overrides of the defaults, e.g.
/// `c=0.4,k=3`. Names: `c`, `c1`, `c2`, `k`, `alpha`, `cd`.
impl FromStr for BoundParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = BoundParams::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected name=value, got '{item}'")))?;
            let bad = || Error::Parameter(format!("bad value in '{item}'"));
            let x: f64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "c" => p.c = x,
                "c1" | "c_prime" => p.c_prime = x,
                "c2" | "c_double_prime" => p.c_double_prime = x,
                "k" => {
                    if x.fract() != 0.0 || x < 0.0 {
                        return Err(bad());
                    }
                    p.k = x as u32
                }
                "alpha" => p.alpha = Some(x),
                "cd" | "c_diffusive" => p.c_diffusive = x,
                other => return Err(Error::Parameter(format!("unknown bound parameter '{other}'"))),
            }
        }
        p.validate()?;
        Ok(p)
    }
}

/// Value of the return-probability integral with diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReturnBound {
    pub m: u64,
    pub value: f64,
    pub error: f64,
    /// Part of the integral used the power-law continuation of a table.
    pub extrapolated: bool,
}

const RETURN_REL_TOL: f64 = 1e-9;
// e^{-u} underflows past this point
const U_CUTOFF: f64 = 750.0;

/// `c' m ∫_0^1 e^{-λm} / V(c/√λ) dλ = c' ∫_0^m e^{-u} / V(c √(m/u)) du`.
pub fn return_bound(volume: &VolumeFunction, m: u64, params: &BoundParams) -> Result<f64> {
    return_bound_detailed(volume, m, params, RETURN_REL_TOL).map(|b| b.value)
}

pub fn return_bound_detailed(
    volume: &VolumeFunction,
    m: u64,
    params: &BoundParams,
    rel_tol: f64,
) -> Result<ReturnBound> {
    params.validate()?;
    if m < 1 {
        return Err(Error::Parameter("return bound needs m >= 1".into()));
    }
    let mf = m as f64;
    let c = params.c;
    let integrand = |u: f64| {
        if u <= 0.0 {
            0.0
        } else {
            (-u).exp() / volume.eval(c * (mf / u).sqrt())
        }
    };
    let (exact, numeric_top) = match volume.table_radius() {
        Some(n) => {
            // V(c√(m/u)) = V(j) on u ∈ (c²m/(j+1)², c²m/j²]
            let mut exact = 0.0;
            for j in 0..=n {
                let hi = if j == 0 {
                    mf
                } else {
                    (c * c * mf / (j * j) as f64).min(mf)
                };
                let lo = (c * c * mf / ((j + 1) * (j + 1)) as f64).min(mf);
                if hi > lo {
                    exact += ((-lo).exp() - (-hi).exp()) / volume.at(j);
                }
            }
            (exact, (c * c * mf / ((n + 1) * (n + 1)) as f64).min(mf))
        }
        None => (0.0, mf),
    };
    let top = numeric_top.min(U_CUTOFF);
    let rest = if top > 0.0 {
        integrate_panels(integrand, &geometric_breakpoints(top, 60), rel_tol, rel_tol * exact)?
    } else {
        QuadratureResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        }
    };
    Ok(ReturnBound {
        m,
        value: params.c_prime * (exact + rest.value),
        error: params.c_prime * rest.error,
        extrapolated: volume.table_radius().is_some() && rest.value > 0.0,
    })
}

/// `φ(m) = c''(m^{-k/2} r^k / V(r) + e^{-c² m / r²})`.
pub fn heat_kernel_bound(r: u64, m: u64, volume: &VolumeFunction, params: &BoundParams) -> f64 {
    let (rf, mf, k) = (r as f64, m as f64, params.k as f64);
    params.c_double_prime
        * (mf.powf(-k / 2.0) * rf.powf(k) / volume.at(r) + (-params.c * params.c * mf / (rf * rf)).exp())
}

/// Where the sum over times is split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitMode {
    /// At `α r² log V(r)`, with the heat-kernel bound in the tail.
    LogVolume,
    /// At `α r²`, with `P ≤ 1` below and only the `m^{-k/2}` decay above;
    /// meant for polynomial growth with `k` set to the growth degree.
    Diffusive,
}

/// A split sum: `head` covers `m ≤ m0`, `tail` covers `m > m0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SplitBound {
    pub r: u64,
    pub m0: u64,
    pub head: f64,
    pub tail: f64,
    /// Polynomial part of the tail.
    pub tail_power: f64,
    /// Exponential part of the tail.
    pub tail_exponential: f64,
    pub total: f64,
}

const TAIL_REL_TOL: f64 = 1e-12;

/// `Σ_{m > m0} (m+1)^w q^m` summed directly until the geometric remainder
/// is below `TAIL_REL_TOL` of the partial sum. `log_scale` multiplies every
/// term by `e^{log_scale}`.
fn geometric_tail(q: f64, m0: u64, weighted: bool, log_scale: f64) -> f64 {
    let lq = q.ln();
    let start = m0 as f64 + 1.0;
    let mut term_base = (log_scale + lq * start).exp();
    if term_base == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut m = start;
    loop {
        let w = if weighted { m + 1.0 } else { 1.0 };
        sum += w * term_base;
        term_base *= q;
        m += 1.0;
        let remainder = if weighted {
            term_base * ((m + 1.0) - m * q) / ((1.0 - q) * (1.0 - q))
        } else {
            term_base / (1.0 - q)
        };
        if remainder <= TAIL_REL_TOL * sum || term_base == 0.0 {
            return sum + remainder;
        }
    }
}

fn split(r: u64, volume: &VolumeFunction, params: &BoundParams, mode: SplitMode, wsf: bool) -> Result<SplitBound> {
    params.validate()?;
    if r < 1 {
        return Err(Error::Parameter("split sums need r >= 1".into()));
    }
    let k = params.k;
    if wsf && k <= 4 {
        return Err(Error::Parameter(format!("forest sums need k > 4, got {k}")));
    }
    if !wsf && k <= 2 {
        return Err(Error::Parameter(format!("occupation sums need k > 2, got {k}")));
    }
    let alpha = params.alpha_or(if wsf { 2.0 } else { 1.0 });
    let rf = r as f64;
    let v = volume.at(r);
    let m0 = match mode {
        SplitMode::LogVolume => (alpha * rf * rf * v.ln()).floor() as u64,
        SplitMode::Diffusive => (alpha * rf * rf).floor() as u64,
    };
    let m0f = m0 as f64;
    let head = match (mode, wsf) {
        (SplitMode::LogVolume, false) => params.c_diffusive * rf * m0f.sqrt(),
        (SplitMode::LogVolume, true) => (m0f + 1.0) * params.c_diffusive * rf * m0f.sqrt(),
        (SplitMode::Diffusive, false) => m0f + 1.0,
        (SplitMode::Diffusive, true) => (m0f + 1.0) * (m0f + 2.0) / 2.0,
    };
    let s = k as f64 / 2.0;
    let a = m0f + 1.0;
    let zeta_sum = if wsf {
        hurwitz_zeta(s - 1.0, a) + hurwitz_zeta(s, a)
    } else {
        hurwitz_zeta(s, a)
    };
    let tail_power = params.c_double_prime * rf.powi(k as i32) * zeta_sum;
    let tail_exponential = match mode {
        SplitMode::LogVolume => {
            let q = (-params.c * params.c / (rf * rf)).exp();
            params.c_double_prime * geometric_tail(q, m0, wsf, v.ln())
        }
        SplitMode::Diffusive => 0.0,
    };
    let tail = tail_power + tail_exponential;
    Ok(SplitBound {
        r,
        m0,
        head,
        tail,
        tail_power,
        tail_exponential,
        total: head + tail,
    })
}

/// Bound on `E[L_r]` split at `m0 = ⌊α r² log V(r)⌋`: the head is
/// `c_d r √m0`, the tail `Σ_{m > m0} V(r) φ(m)`.
pub fn occupation_split(r: u64, volume: &VolumeFunction, params: &BoundParams) -> Result<SplitBound> {
    split(r, volume, params, SplitMode::LogVolume, false)
}

pub fn occupation_split_with(
    r: u64,
    volume: &VolumeFunction,
    params: &BoundParams,
    mode: SplitMode,
) -> Result<SplitBound> {
    split(r, volume, params, mode, false)
}

/// Bound on `Σ_m (m+1) P[S_m ∈ B(o, r)]`, the forest analogue with weight `m+1`.
pub fn wsf_split(r: u64, volume: &VolumeFunction, params: &BoundParams) -> Result<SplitBound> {
    split(r, volume, params, SplitMode::LogVolume, true)
}

pub fn wsf_split_with(r: u64, volume: &VolumeFunction, params: &BoundParams, mode: SplitMode) -> Result<SplitBound> {
    split(r, volume, params, mode, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DoublingEntry {
    pub a: u64,
    pub r: u64,
    /// `V(a r) / (V(r) a^k)`
    pub ratio: f64,
}

/// `V(ar) / (V(r) a^k)` for all `a, r ≥ 1` with `a r` inside the oracle.
pub fn volume_doubling_table(oracle: &DistanceOracle, k: u32) -> Vec<DoublingEntry> {
    let v = oracle.volumes();
    let n = oracle.r_max();
    let mut out = Vec::new();
    for r in 1..=n {
        for a in 1..=n / r {
            out.push(DoublingEntry {
                a,
                r,
                ratio: v[(a * r) as usize] as f64 / (v[r as usize] as f64 * (a as f64).powi(k as i32)),
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeatKernelRow {
    pub m: u64,
    pub estimate: f64,
    pub sem: f64,
    pub bound: f64,
    /// Radius minimizing the bound.
    pub best_r: u64,
    pub dominates: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatKernelCheck {
    pub fit_m: u64,
    pub fitted_c_double_prime: f64,
    pub rows: Vec<HeatKernelRow>,
    pub all_dominate: bool,
}

/// `min_{1 ≤ r ≤ r_max} φ_r(m)` and the minimizing radius.
pub fn heat_kernel_minimum(m: u64, volume: &VolumeFunction, params: &BoundParams, r_max: u64) -> (f64, u64) {
    (1..=r_max.max(1))
        .map(|r| (heat_kernel_bound(r, m, volume, params), r))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("nonempty radius range")
}

/// Fits `c''` so that the bound, minimized over `r`, matches the estimate
/// at `fit_m`, then checks it against the estimates at the other times.
/// Each record's `r` field is its time `m`.
pub fn heat_kernel_check(
    estimates: &[EstimateRecord],
    fit_m: u64,
    volume: &VolumeFunction,
    params: &BoundParams,
    r_max: u64,
) -> Result<HeatKernelCheck> {
    params.validate()?;
    let fit = estimates
        .iter()
        .find(|e| e.r == fit_m)
        .ok_or_else(|| Error::Parameter(format!("no estimate at m = {fit_m}")))?;
    if !(fit.mean > 0.0) {
        return Err(Error::Fit(format!("zero return estimate at m = {fit_m}")));
    }
    let unit = BoundParams {
        c_double_prime: 1.0,
        ..*params
    };
    let (base, _) = heat_kernel_minimum(fit_m, volume, &unit, r_max);
    let c2 = fit.mean / base;
    let rows: Vec<HeatKernelRow> = estimates
        .iter()
        .map(|e| {
            let (b, best_r) = heat_kernel_minimum(e.r, volume, &unit, r_max);
            let bound = c2 * b;
            HeatKernelRow {
                m: e.r,
                estimate: e.mean,
                sem: e.sem,
                bound,
                best_r,
                dominates: e.mean <= bound * (1.0 + 1e-12),
            }
        })
        .collect();
    Ok(HeatKernelCheck {
        fit_m,
        fitted_c_double_prime: c2,
        all_dominate: rows.iter().all(|r| r.dominates),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingRow {
    pub distance: u64,
    pub target: String,
    pub estimate: f64,
    pub sem: f64,
    pub bound: f64,
    pub truncated_fraction: f64,
    pub dominates: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingReport {
    pub degree: u32,
    pub fitted_c_d: f64,
    pub rows: Vec<HittingRow>,
    pub all_dominate: bool,
}

/// Options for [`hitting_bound_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct HittingOptions {
    pub distances: Vec<u64>,
    pub trials: u64,
    /// Walks stop once their certified distance exceeds this multiple of the
    /// target distance.
    pub escape_factor: f64,
    pub horizon: u64,
}

impl Default for HittingOptions {
    fn default() -> Self {
        HittingOptions {
            distances: vec![2, 4, 8],
            trials: 100_000,
            escape_factor: 8.0,
            horizon: 10_000_000,
        }
    }
}

/// Estimates `P_o[S hits x]` for the first element `x` (in BFS order) of
/// each sphere in `options.distances`, fits `c_D` at the smallest
/// distance and checks `P ≤ c_D / |x|^D` at the others.
pub fn hitting_bound_check(
    oracle: &DistanceOracle,
    dist: &StepDistribution,
    degree: u32,
    options: &HittingOptions,
    rng: &RandomStream,
) -> Result<HittingReport> {
    let model = dist.model();
    if model.polynomial_degree().is_some() {
        return Err(Error::Parameter(format!("{model} has polynomial growth")));
    }
    let mut distances = options.distances.clone();
    distances.sort_unstable();
    distances.dedup();
    if distances.first() == Some(&0) {
        distances.remove(0);
    }
    if distances.is_empty() {
        return Err(Error::Parameter("need a positive target distance".into()));
    }
    let mut estimates = Vec::new();
    for &n in &distances {
        let target = oracle.first_at(n)?.clone();
        let escape = crate::walk::escape_radius(n, options.escape_factor);
        let mut stream = rng.split(n);
        let mut acc = Accumulator::new();
        for _ in 0..options.trials {
            let out = sample_hit(
                dist,
                oracle as &dyn WordMetric,
                &target,
                escape,
                options.horizon,
                &mut stream,
            );
            acc.push_flagged(out.hit as u8 as f64, out.truncated);
        }
        estimates.push((n, target, acc.record(n)));
    }
    let (n0, _, first) = &estimates[0];
    if !(first.mean > 0.0) {
        return Err(Error::Fit(format!("no hits at distance {n0}")));
    }
    let c_d = first.mean * (*n0 as f64).powi(degree as i32);
    let rows: Vec<HittingRow> = estimates
        .into_iter()
        .map(|(n, target, rec)| {
            let bound = c_d / (n as f64).powi(degree as i32);
            HittingRow {
                distance: n,
                target: target.to_string(),
                estimate: rec.mean,
                sem: rec.sem,
                bound,
                truncated_fraction: rec.truncated_fraction,
                dominates: rec.mean <= bound * (1.0 + 1e-12),
            }
        })
        .collect();
    Ok(HittingReport {
        degree,
        fitted_c_d: c_d,
        all_dominate: rows.iter().all(|r| r.dominates),
        rows,
    })
}
