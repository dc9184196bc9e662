use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::groups::{Element, GroupModel};
use crate::lerw::Walker;
use crate::metric::{DistanceOracle, WordMetric};
use crate::walk::StepDistribution;

/// Index of an inner vertex, or [`ROOT`].
pub type Vertex = u32;

/// The wired vertex standing for everything outside the region.
pub const ROOT: Vertex = u32::MAX;

#[derive(Clone, Debug)]
enum RootChooser {
    Uniform,
    Weighted(WeightedIndex<f64>),
}

/// A finite region of a Cayley graph with its exterior collapsed to [`ROOT`].
///
/// Each inner vertex keeps one out-edge per support element of the step
/// law, so parallel edges into the root survive with their multiplicity and
/// the walk on this graph has the same transition probabilities as the
/// walk on the group until it leaves the region. Holding steps are
/// self-loops and are not represented.
#[derive(Clone, Debug)]
pub struct WiredBallGraph {
    model: GroupModel,
    dist: StepDistribution,
    elements: Vec<Element>,
    index: FxHashMap<Element, Vertex>,
    distances: Vec<u32>,
    /// `moves[v * k + i]` is the end of support move `i` from `v`.
    moves: Vec<Vertex>,
    support_len: usize,
    root_edges: Vec<Vertex>,
    root_chooser: RootChooser,
    radius: Option<u64>,
}

impl WiredBallGraph {
    /// The wired ball `B(o, radius)`, inner vertices in BFS order.
    pub fn build(dist: &StepDistribution, oracle: &DistanceOracle, radius: u64) -> Result<Self> {
        if oracle.group() != dist.model() {
            return Err(Error::Parameter("oracle and walk use different groups".into()));
        }
        let ball = oracle.ball(radius)?.to_vec();
        let distances = ball.iter().map(|x| oracle.lower_bound(x) as u32).collect();
        let mut g = Self::assemble(dist, ball, distances)?;
        g.radius = Some(radius);
        Ok(g)
    }

    /// Wires an arbitrary finite set of elements; distances come from `metric`.
    pub fn from_region(dist: &StepDistribution, metric: &dyn WordMetric, region: Vec<Element>) -> Result<Self> {
        for x in &region {
            dist.model().validate(x)?;
        }
        let distances = region.iter().map(|x| metric.lower_bound(x) as u32).collect();
        Self::assemble(dist, region, distances)
    }

    fn assemble(dist: &StepDistribution, elements: Vec<Element>, distances: Vec<u32>) -> Result<Self> {
        if elements.len() >= ROOT as usize {
            return Err(Error::Parameter("region too large to index".into()));
        }
        let model = dist.model().clone();
        let mut index = FxHashMap::default();
        for (i, x) in elements.iter().enumerate() {
            if index.insert(x.clone(), i as Vertex).is_some() {
                return Err(Error::Parameter(format!("duplicate region element {x}")));
            }
        }
        let k = dist.support().len();
        let mut moves = Vec::with_capacity(elements.len() * k);
        let mut root_edges = Vec::new();
        let mut root_weights = Vec::new();
        for (v, x) in elements.iter().enumerate() {
            for (g, p) in dist.support() {
                let mut y = x.clone();
                model.right_multiply(&mut y, g);
                let target = index.get(&y).copied().unwrap_or(ROOT);
                if target == ROOT {
                    root_edges.push(v as Vertex);
                    root_weights.push(*p);
                }
                moves.push(target);
            }
        }
        let root_chooser = if root_weights.windows(2).all(|w| w[0] == w[1]) {
            RootChooser::Uniform
        } else {
            RootChooser::Weighted(WeightedIndex::new(&root_weights).map_err(|e| Error::Parameter(e.to_string()))?)
        };
        let g = WiredBallGraph {
            model,
            dist: dist.clone(),
            elements,
            index,
            distances,
            moves,
            support_len: k,
            root_edges,
            root_chooser,
            radius: None,
        };
        if !g.reaches_root() {
            return Err(Error::Parameter("some inner vertex cannot reach the wired root".into()));
        }
        Ok(g)
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn step_distribution(&self) -> &StepDistribution {
        &self.dist
    }

    pub fn num_inner(&self) -> usize {
        self.elements.len()
    }

    pub fn radius(&self) -> Option<u64> {
        self.radius
    }

    pub fn element(&self, v: Vertex) -> &Element {
        &self.elements[v as usize]
    }

    pub fn vertex_of(&self, x: &Element) -> Option<Vertex> {
        self.index.get(x).copied()
    }

    pub fn distance(&self, v: Vertex) -> u64 {
        self.distances[v as usize] as u64
    }

    /// Ends of the support moves from inner vertex `v`, one per support element.
    pub fn moves(&self, v: Vertex) -> &[Vertex] {
        let k = self.support_len;
        &self.moves[v as usize * k..(v as usize + 1) * k]
    }

    /// Parallel edges from `v` to the root.
    pub fn root_multiplicity(&self, v: Vertex) -> usize {
        self.moves(v).iter().filter(|&&t| t == ROOT).count()
    }

    /// All edges into the root, one entry per parallel edge.
    pub fn root_edges(&self) -> &[Vertex] {
        &self.root_edges
    }

    /// Number of support moves from `u` landing on `v` (which may be [`ROOT`]).
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        if u == ROOT {
            return self.root_edges.iter().filter(|&&w| w == v).count();
        }
        self.moves(u).iter().filter(|&&t| t == v).count()
    }

    /// One step of the walk from an inner vertex; the move index follows
    /// the step law.
    #[inline]
    pub fn random_move<R: Rng + ?Sized>(&self, v: Vertex, rng: &mut R) -> Vertex {
        let i = self.dist.sample_move_index(rng);
        self.moves[v as usize * self.support_len + i]
    }

    fn random_from_root<R: Rng + ?Sized>(&self, rng: &mut R) -> Vertex {
        let i = match &self.root_chooser {
            RootChooser::Uniform => rng.random_range(0..self.root_edges.len()),
            RootChooser::Weighted(w) => w.sample(rng),
        };
        self.root_edges[i]
    }

    fn reaches_root(&self) -> bool {
        let n = self.num_inner();
        let mut reached = vec![false; n];
        let mut stack: Vec<Vertex> = Vec::new();
        for &v in &self.root_edges {
            if !reached[v as usize] {
                reached[v as usize] = true;
                stack.push(v);
            }
        }
        // symmetric support: u -> v iff v -> u
        while let Some(v) = stack.pop() {
            for &w in self.moves(v) {
                if w != ROOT && !reached[w as usize] {
                    reached[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        reached.into_iter().all(|b| b)
    }
}

impl Walker for WiredBallGraph {
    type State = Vertex;

    fn next_state<R: Rng + ?Sized>(&self, from: &Vertex, rng: &mut R) -> Vertex {
        if *from == ROOT {
            self.random_from_root(rng)
        } else {
            self.random_move(*from, rng)
        }
    }
}

/// Builds the wired ball `B(o, radius)` for the walk `dist`.
pub fn build_wired_ball(dist: &StepDistribution, oracle: &DistanceOracle, radius: u64) -> Result<WiredBallGraph> {
    WiredBallGraph::build(dist, oracle, radius)
}
