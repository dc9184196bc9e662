//! Wired spanning forests through Wilson's algorithm.

mod components;
mod graph;
mod matrix_tree;
mod ray;
mod wilson;

pub use components::{component_stats, component_stats_elements, ComponentStats};
pub use graph::{build_wired_ball, Vertex, WiredBallGraph, ROOT};
pub use matrix_tree::{bareiss_determinant, enumerate_spanning_trees, spanning_tree_count};
pub use ray::{ray_decomposition_trace, RayTrace, RayWindow};
pub use wilson::{
    wilson_by_elements, wilson_rooted_at_infinity_truncated, wilson_wired, wilson_wired_implicit, wilson_wired_partial,
    ElementForest, ForestSample, VertexOrder, WILSON_HORIZON,
};

use crate::error::Result;
use crate::metric::{DistanceOracle, WordMetric};
use crate::rng::RandomStream;
use crate::walk::StepDistribution;

/// Samples the observables at radius `r` on an indexed wired ball, running
/// only the walks from `B(o, r)` in BFS order.
pub fn sample_component_stats(graph: &WiredBallGraph, r: u64, rng: &mut RandomStream) -> Result<ComponentStats> {
    let starts: Vec<Vertex> = (0..graph.num_inner() as Vertex)
        .filter(|&v| graph.distance(v) <= r)
        .collect();
    let forest = wilson_wired_partial(graph, &starts, rng)?;
    component_stats(&forest, graph, r)
}

/// The same on the wired ball `B(o, radius)` without indexing it. `oracle`
/// must reach `r`; `metric` must decide membership in `B(o, radius)`.
pub fn sample_component_stats_implicit(
    dist: &StepDistribution,
    oracle: &DistanceOracle,
    metric: &dyn WordMetric,
    r: u64,
    radius: u64,
    rng: &mut RandomStream,
) -> Result<ComponentStats> {
    let starts = oracle.ball(r)?;
    let forest = wilson_wired_implicit(dist, metric, radius, starts, rng)?;
    component_stats_elements(&forest, oracle, r, radius)
}

#[cfg(test)]
mod tests;
