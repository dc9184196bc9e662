use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::metric::{DistanceOracle, WordMetric};
use crate::rng::RandomStream;
use crate::walk::StepDistribution;

use super::graph::{Vertex, WiredBallGraph, ROOT};

/// Step budget for a single Wilson walk.
pub const WILSON_HORIZON: u64 = 1_000_000_000;

/// Order in which Wilson's algorithm starts its walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    /// BFS order from `o`, `o` first.
    Bfs,
    /// BFS order reversed, so `o` comes last.
    ReverseBfs,
    Custom(Vec<Vertex>),
}

impl VertexOrder {
    fn resolve(&self, n: usize) -> Result<Vec<Vertex>> {
        match self {
            VertexOrder::Bfs => Ok((0..n as Vertex).collect()),
            VertexOrder::ReverseBfs => Ok((0..n as Vertex).rev().collect()),
            VertexOrder::Custom(v) => {
                let mut seen = vec![false; n];
                for &x in v {
                    if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                        return Err(Error::Parameter(format!("bad vertex {x} in custom order")));
                    }
                }
                if v.len() != n {
                    return Err(Error::Parameter("custom order must list every inner vertex".into()));
                }
                Ok(v.clone())
            }
        }
    }
}

/// A rooted forest on the inner vertices of a wired graph.
///
/// Vertices without an assigned parent are those a partial run never reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSample {
    parent: Vec<Vertex>,
    in_tree: Vec<bool>,
}

impl ForestSample {
    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    /// Parent of `v` ([`ROOT`] for the wired root), or `None` when unassigned.
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.in_tree[v as usize].then(|| self.parent[v as usize])
    }

    pub fn is_spanning(&self) -> bool {
        self.in_tree.iter().all(|&b| b)
    }

    /// The parent map, `None` for unassigned vertices.
    pub fn parents(&self) -> Vec<Option<Vertex>> {
        (0..self.parent.len() as Vertex).map(|v| self.parent(v)).collect()
    }

    /// Path `v, parent(v), ...` up to but excluding the root.
    pub fn path_to_root(&self, v: Vertex) -> Option<Vec<Vertex>> {
        let mut path = vec![v];
        let mut cur = v;
        loop {
            let p = self.parent(cur)?;
            if p == ROOT {
                return Some(path);
            }
            if path.len() > self.parent.len() {
                return None;
            }
            path.push(p);
            cur = p;
        }
    }

    /// Assigned vertices have acyclic parent chains ending at the root
    /// through edges of `graph`.
    pub fn is_valid_for(&self, graph: &WiredBallGraph) -> bool {
        if self.parent.len() != graph.num_inner() {
            return false;
        }
        (0..self.parent.len() as Vertex).all(|v| match self.parent(v) {
            None => true,
            Some(p) => graph.moves(v).contains(&p) && self.path_to_root(v).is_some(),
        })
    }
}

fn run_wilson<I>(graph: &WiredBallGraph, starts: I, rng: &mut RandomStream) -> Result<ForestSample>
where
    I: IntoIterator<Item = Vertex>,
{
    let n = graph.num_inner();
    let mut next = vec![ROOT; n];
    let mut in_tree = vec![false; n];
    let done = |v: Vertex, in_tree: &[bool]| v == ROOT || in_tree[v as usize];
    for start in starts {
        // the last exit from each vertex traces out the loop erasure
        let mut u = start;
        let mut steps = 0u64;
        while !done(u, &in_tree) {
            let w = graph.random_move(u, rng);
            next[u as usize] = w;
            u = w;
            steps += 1;
            if steps > WILSON_HORIZON {
                return Err(Error::Horizon {
                    horizon: WILSON_HORIZON,
                    context: "Wilson walk was not absorbed".into(),
                });
            }
        }
        let mut u = start;
        while !done(u, &in_tree) {
            in_tree[u as usize] = true;
            u = next[u as usize];
        }
    }
    Ok(ForestSample { parent: next, in_tree })
}

/// Uniform spanning tree of the wired multigraph, rooted at the wired root.
pub fn wilson_wired(graph: &WiredBallGraph, rng: &mut RandomStream, order: &VertexOrder) -> Result<ForestSample> {
    let order = order.resolve(graph.num_inner())?;
    run_wilson(graph, order, rng)
}

/// Runs only the walks started from `starts`.
///
/// The result is the part of the uniform spanning tree made of the paths
/// from `starts` to the root, with the same law as in a full run whose
/// ordering begins with `starts`.
pub fn wilson_wired_partial(graph: &WiredBallGraph, starts: &[Vertex], rng: &mut RandomStream) -> Result<ForestSample> {
    if let Some(&v) = starts.iter().find(|&&v| v as usize >= graph.num_inner()) {
        return Err(Error::Parameter(format!("start vertex {v} outside the graph")));
    }
    run_wilson(graph, starts.iter().copied(), rng)
}

/// A forest on group elements; `None` parent means absorbed by the root.
/// Every vertex carries the label of its tree.
#[derive(Clone, Debug, Default)]
pub struct ElementForest {
    nodes: FxHashMap<Element, (Option<Element>, u32)>,
}

impl ElementForest {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `None` when unassigned, `Some(None)` for the root.
    pub fn parent(&self, x: &Element) -> Option<Option<&Element>> {
        self.nodes.get(x).map(|(p, _)| p.as_ref())
    }

    /// Trees are labelled in the order they reached the root.
    pub fn tree_label(&self, x: &Element) -> Option<u32> {
        self.nodes.get(x).map(|&(_, t)| t)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.nodes.contains_key(x)
    }
}

/// Wilson's algorithm on group elements: walks from `starts` (in order)
/// until they hit the current forest or an absorbing element.
pub fn wilson_by_elements<F>(
    dist: &StepDistribution,
    starts: &[Element],
    mut absorbing: F,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<ElementForest>
where
    F: FnMut(&Element) -> Result<bool>,
{
    let mut tree: FxHashMap<Element, (Option<Element>, u32)> = FxHashMap::default();
    let mut next: FxHashMap<Element, Element> = FxHashMap::default();
    let mut trees = 0u32;
    let mut path = Vec::new();
    for start in starts {
        dist.model().validate(start)?;
        if tree.contains_key(start) || absorbing(start)? {
            continue;
        }
        let mut u = start.clone();
        let mut steps = 0u64;
        loop {
            // holding steps do not change the loop erasure
            let mut w = u.clone();
            let i = dist.sample_move_index(rng);
            dist.model().right_multiply(&mut w, &dist.support()[i].0);
            steps += 1;
            let stop = tree.contains_key(&w) || absorbing(&w)?;
            if stop {
                next.insert(u, w);
                break;
            }
            if steps >= horizon {
                return Err(Error::Horizon {
                    horizon,
                    context: "Wilson walk was neither absorbed nor escaped".into(),
                });
            }
            next.insert(u, w.clone());
            u = w;
        }
        let mut u = start.clone();
        let label = loop {
            let w = next.remove(&u).expect("walk recorded an exit");
            if let Some(&(_, t)) = tree.get(&w) {
                path.push((u, Some(w)));
                break t;
            }
            if absorbing(&w)? {
                path.push((u, None));
                trees += 1;
                break trees - 1;
            }
            path.push((u, Some(w.clone())));
            u = w;
        };
        for (v, p) in path.drain(..) {
            tree.insert(v, (p, label));
        }
        next.clear();
    }
    Ok(ElementForest { nodes: tree })
}

/// Partial Wilson run on the wired ball `B(o, radius)` without indexing it:
/// the exterior is absorbing.
pub fn wilson_wired_implicit(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    radius: u64,
    starts: &[Element],
    rng: &mut RandomStream,
) -> Result<ElementForest> {
    wilson_by_elements(dist, starts, |x| Ok(!metric.in_ball(x, radius)?), WILSON_HORIZON, rng)
}

/// Wilson's method rooted at infinity, restricted to the walks from
/// `B(o, r)`. A walk counts as escaped once its certified distance
/// exceeds `escape_radius`.
pub fn wilson_rooted_at_infinity_truncated(
    dist: &StepDistribution,
    oracle: &DistanceOracle,
    r: u64,
    escape_radius: u64,
    order: &VertexOrder,
    rng: &mut RandomStream,
) -> Result<ElementForest> {
    if escape_radius < 4 * r {
        return Err(Error::Parameter(format!(
            "escape radius {escape_radius} must be at least 4r = {}",
            4 * r
        )));
    }
    let ball = oracle.ball(r)?;
    let starts: Vec<Element> = order
        .resolve(ball.len())?
        .into_iter()
        .map(|v| ball[v as usize].clone())
        .collect();
    wilson_by_elements(
        dist,
        &starts,
        |x| Ok(oracle.lower_bound(x) > escape_radius),
        WILSON_HORIZON,
        rng,
    )
}

pub(crate) fn top_of<V, P>(x: &V, parent: &P, memo: &mut FxHashMap<V, V>) -> Result<V>
where
    V: Clone + Eq + Hash,
    P: Fn(&V) -> Option<Option<V>>,
{
    let mut path = Vec::new();
    let mut cur = x.clone();
    let top = loop {
        if let Some(t) = memo.get(&cur) {
            break t.clone();
        }
        match parent(&cur) {
            None => return Err(Error::Parameter("forest does not cover the ball".into())),
            Some(None) => {
                let t = cur.clone();
                path.push(cur);
                break t;
            }
            Some(Some(p)) => {
                path.push(cur);
                cur = p;
            }
        }
    };
    for v in path {
        memo.insert(v, top.clone());
    }
    Ok(top)
}
