//! Excursion decomposition of the walk that generates the ray of `o`.
//!
//! With `τ^{-1} = 0`, the trace alternates return times
//! `ρ_i = inf{t > τ^{i-1} : S_t ∈ LE[S(0, τ^{i-1})] ∩ B(o, r)}` (`ρ_0 = 0`)
//! and exit times `τ^i = inf{t > ρ_i : S_t ∉ B(o, 2r)}` until some `ρ_ξ` is
//! infinite. Every vertex of the ray inside `C(o, r)` lies on one of the
//! windows `[ρ_i, τ^i]`.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::lerw::LoopEraser;
use crate::metric::WordMetric;
use crate::rng::RandomStream;
use crate::walk::StepDistribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RayWindow {
    pub rho: u64,
    pub tau: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayTrace {
    pub windows: Vec<RayWindow>,
    /// Index of the first infinite return time.
    pub xi: usize,
    /// `Σ (τ^i - ρ_i)`.
    pub cover_bound: u64,
    /// Leading run of the final loop erasure inside `B(o, r)`.
    pub ray_in_ball: u64,
    pub steps: u64,
    pub escape_radius: u64,
}

/// Simulates one walk from `o` and records its windows. The walk is
/// declared gone for good once its certified distance exceeds
/// `escape_radius`.
pub fn ray_decomposition_trace(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    r: u64,
    escape_radius: u64,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<RayTrace> {
    let model = dist.model();
    if !model.is_transient() {
        return Err(Error::Recurrent {
            model: model.to_string(),
        });
    }
    if escape_radius < 2 * r + 1 {
        return Err(Error::Parameter(format!(
            "escape radius {escape_radius} must exceed 2r = {}",
            2 * r
        )));
    }
    metric.in_ball(&model.identity(), 2 * r)?;
    let mut x = model.identity();
    let mut eraser = LoopEraser::new(x.clone());
    let mut windows = Vec::new();
    let mut t = 0u64;
    let mut rho = 0u64;
    let mut step = |x: &mut Element, t: &mut u64, eraser: &mut LoopEraser<Element>| -> Result<()> {
        if *t >= horizon {
            return Err(Error::Horizon {
                horizon,
                context: "ray decomposition walk did not escape".into(),
            });
        }
        let i = dist.sample_move_index(rng);
        model.right_multiply(x, &dist.support()[i].0);
        *t += 1;
        eraser.push(x.clone());
        Ok(())
    };
    loop {
        while metric.in_ball(&x, 2 * r)? {
            step(&mut x, &mut t, &mut eraser)?;
        }
        windows.push(RayWindow { rho, tau: t });
        let targets: FxHashSet<Element> = eraser
            .current()
            .iter()
            .filter(|v| metric.in_ball(v, r).unwrap_or(false))
            .cloned()
            .collect();
        let returned = loop {
            step(&mut x, &mut t, &mut eraser)?;
            if targets.contains(&x) {
                break true;
            }
            if metric.lower_bound(&x) > escape_radius {
                break false;
            }
        };
        if !returned {
            break;
        }
        rho = t;
    }
    let mut ray_in_ball = 0;
    for v in eraser.current() {
        if !metric.in_ball(v, r)? {
            break;
        }
        ray_in_ball += 1;
    }
    Ok(RayTrace {
        xi: windows.len(),
        cover_bound: windows.iter().map(|w| w.tau - w.rho).sum(),
        windows,
        ray_in_ball,
        steps: t,
        escape_radius,
    })
}
