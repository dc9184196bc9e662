use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::metric::DistanceOracle;

use super::graph::{Vertex, WiredBallGraph, ROOT};
use super::wilson::{top_of, ElementForest, ForestSample};

/// Observables of the component of `o` seen from `B(o, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    /// `|T_o ∩ B(o, r)|`
    pub size_t_o_cap_b: u64,
    /// `|C(o, r)|`
    pub size_c: u64,
    /// `N_r = |Ray_o ∩ C(o, r)|`
    pub ray_length: u64,
    pub r: u64,
    /// Radius of the wired ball, or the escape radius for the truncated sampler.
    pub r_used: u64,
}

impl ComponentStats {
    pub fn is_consistent(&self, volume: u64) -> bool {
        1 <= self.ray_length
            && self.ray_length <= self.size_c
            && self.size_c <= self.size_t_o_cap_b
            && self.size_t_o_cap_b <= volume
    }
}

/// Counts `|T_o ∩ B|`, `|C|` and `N_r` for a forest given by `parent`
/// (`None` unassigned, `Some(None)` the root) and a tree `label`.
pub(crate) fn count_components<V, P, L>(origin: &V, ball: &[V], parent: P, mut label: L) -> Result<(u64, u64, u64)>
where
    V: Clone + Eq + Hash,
    P: Fn(&V) -> Option<Option<V>>,
    L: FnMut(&V) -> Result<u64>,
{
    let index: FxHashMap<&V, usize> = ball.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let o = *index
        .get(origin)
        .ok_or_else(|| Error::Parameter("origin outside the ball".into()))?;
    let label_o = label(origin)?;
    let mut t = 0u64;
    let mut link = (0..ball.len()).collect::<Vec<usize>>();
    fn find(link: &mut [usize], mut i: usize) -> usize {
        while link[i] != i {
            link[i] = link[link[i]];
            i = link[i];
        }
        i
    }
    for (i, x) in ball.iter().enumerate() {
        if label(x)? == label_o {
            t += 1;
        }
        let p = parent(x).ok_or_else(|| Error::Parameter("forest does not cover the ball".into()))?;
        if let Some(j) = p.and_then(|p| index.get(&p).copied()) {
            let (a, b) = (find(&mut link, i), find(&mut link, j));
            link[a] = b;
        }
    }
    let root_o = find(&mut link, o);
    let c = (0..ball.len()).filter(|&i| find(&mut link, i) == root_o).count() as u64;

    let mut n_r = 0u64;
    let mut cur = Some(origin.clone());
    while let Some(x) = cur {
        match index.get(&x) {
            Some(&i) if find(&mut link, i) == root_o => n_r += 1,
            _ => {}
        }
        cur = parent(&x).flatten();
    }
    Ok((t, c, n_r))
}

fn checked(stats: ComponentStats, volume: u64) -> Result<ComponentStats> {
    if !stats.is_consistent(volume) {
        return Err(Error::Parameter(format!("inconsistent component counts {stats:?}")));
    }
    Ok(stats)
}

/// Component observables of a forest on a wired ball, read off inside `B(o, r)`.
pub fn component_stats(forest: &ForestSample, graph: &WiredBallGraph, r: u64) -> Result<ComponentStats> {
    if let Some(radius) = graph.radius() {
        if r > radius {
            return Err(Error::Range { r, r_max: radius });
        }
    }
    let o = graph
        .vertex_of(&graph.model().identity())
        .ok_or_else(|| Error::Parameter("identity is not an inner vertex".into()))?;
    let ball: Vec<Vertex> = (0..graph.num_inner() as Vertex)
        .filter(|&v| graph.distance(v) <= r)
        .collect();
    let parent = |v: &Vertex| forest.parent(*v).map(|p| (p != ROOT).then_some(p));
    let mut memo = FxHashMap::default();
    let label = |v: &Vertex| top_of(v, &parent, &mut memo).map(u64::from);
    let (t, c, n) = count_components(&o, &ball, parent, label)?;
    let stats = ComponentStats {
        size_t_o_cap_b: t,
        size_c: c,
        ray_length: n,
        r,
        r_used: graph.radius().unwrap_or(r),
    };
    checked(stats, ball.len() as u64)
}

/// Same for a forest on group elements; `r_used` is recorded as given.
pub fn component_stats_elements(
    forest: &ElementForest,
    oracle: &DistanceOracle,
    r: u64,
    r_used: u64,
) -> Result<ComponentStats> {
    let ball = oracle.ball(r)?;
    let origin = oracle.group().identity();
    let parent = |x: &Element| forest.parent(x).map(|p| p.cloned());
    let label = |x: &Element| {
        forest
            .tree_label(x)
            .map(u64::from)
            .ok_or_else(|| Error::Parameter("forest does not cover the ball".into()))
    };
    let (t, c, n) = count_components(&origin, ball, parent, label)?;
    let stats = ComponentStats {
        size_t_o_cap_b: t,
        size_c: c,
        ray_length: n,
        r,
        r_used,
    };
    checked(stats, ball.len() as u64)
}
