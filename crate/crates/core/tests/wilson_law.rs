//! Wilson's algorithm on wired balls against a brute-force enumeration of
//! spanning trees, for several vertex orders, and the component observables
//! against a direct recount.

use std::collections::HashMap;

use cayley_walks::groups::{Element, GroupModel};
use cayley_walks::metric::DistanceOracle;
use cayley_walks::rng::RandomStream;
use cayley_walks::walk::StepDistribution;
use cayley_walks::wsf::{
    build_wired_ball, component_stats, sample_component_stats, spanning_tree_count, wilson_wired, ForestSample,
    VertexOrder, WiredBallGraph, ROOT,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Parent of each inner point, `None` for the wired root.
type Tree = Vec<Option<usize>>;

struct Wired {
    points: Vec<Vec<i64>>,
    /// Neighbor choices of each point; `None` is an edge to the exterior.
    choices: Vec<Vec<Option<usize>>>,
}

impl Wired {
    fn lattice(d: usize, r: i64) -> Self {
        let mut points = vec![vec![]];
        for _ in 0..d {
            points = points
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    let used: i64 = p.iter().map(|c| c.abs()).sum();
                    (-(r - used)..=(r - used)).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        let index: HashMap<Vec<i64>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let choices = points
            .iter()
            .map(|p| {
                let mut out = Vec::new();
                for i in 0..d {
                    for s in [-1, 1] {
                        let mut q = p.clone();
                        q[i] += s;
                        out.push(index.get(&q).copied());
                    }
                }
                out
            })
            .collect();
        Wired { points, choices }
    }

    fn reaches_root(&self, tree: &Tree, mut v: usize) -> bool {
        for _ in 0..=tree.len() {
            match tree[v] {
                None => return true,
                Some(p) => v = p,
            }
        }
        false
    }

    /// Every spanning tree oriented to the root, weighted by the number of
    /// edge choices giving it.
    fn trees(&self) -> HashMap<Tree, u64> {
        let n = self.points.len();
        let mut out = HashMap::new();
        let mut pick = vec![0usize; n];
        loop {
            let tree: Tree = (0..n).map(|v| self.choices[v][pick[v]]).collect();
            if (0..n).all(|v| self.reaches_root(&tree, v)) {
                *out.entry(tree).or_default() += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < self.choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    fn tree_of(&self, forest: &ForestSample, graph: &WiredBallGraph) -> Tree {
        let point = |v| match graph.element(v) {
            Element::Z(p) => self.points.iter().position(|q| q == p).unwrap(),
            other => panic!("unexpected element {other}"),
        };
        let mut tree = vec![None; self.points.len()];
        for v in 0..graph.num_inner() as u32 {
            let p = forest.parent(v).expect("spanning");
            tree[point(v)] = (p != ROOT).then(|| point(p));
        }
        tree
    }

    /// `(|T_o ∩ B(o, r)|, |C(o, r)|, N_r)` by direct recount.
    fn components(&self, tree: &Tree, r: i64) -> (u64, u64, u64) {
        let o = self.points.iter().position(|p| p.iter().all(|&c| c == 0)).unwrap();
        let inside = |v: usize| self.points[v].iter().map(|c| c.abs()).sum::<i64>() <= r;
        let top = |mut v: usize| {
            while let Some(p) = tree[v] {
                v = p;
            }
            v
        };
        let n = self.points.len();
        let t = (0..n).filter(|&v| inside(v) && top(v) == top(o)).count() as u64;
        let mut in_c = vec![false; n];
        in_c[o] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for v in 0..n {
                if let Some(p) = tree[v] {
                    if inside(v) && inside(p) && in_c[v] != in_c[p] {
                        in_c[v] = true;
                        in_c[p] = true;
                        grew = true;
                    }
                }
            }
        }
        let c = in_c.iter().filter(|&&b| b).count() as u64;
        let mut ray = 0;
        let mut cur = Some(o);
        while let Some(v) = cur {
            ray += in_c[v] as u64;
            cur = tree[v];
        }
        (t, c, ray)
    }
}

fn setup(d: usize, r: u64) -> (Wired, WiredBallGraph) {
    let group = GroupModel::ZPower(d);
    let dist = StepDistribution::simple(&group, false);
    let oracle = DistanceOracle::build(&group, r).unwrap();
    (
        Wired::lattice(d, r as i64),
        build_wired_ball(&dist, &oracle, r).unwrap(),
    )
}

fn chi_square_p(observed: &HashMap<Tree, u64>, law: &HashMap<Tree, u64>, n: u64) -> f64 {
    let total: u64 = law.values().sum();
    let mut stat = 0.0;
    for (tree, &w) in law {
        let expected = n as f64 * w as f64 / total as f64;
        let seen = *observed.get(tree).unwrap_or(&0) as f64;
        stat += (seen - expected).powi(2) / expected;
    }
    1.0 - ChiSquared::new((law.len() - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn enumeration_matches_matrix_tree_count() {
    for (d, r) in [(1, 1), (1, 3), (2, 1), (3, 1)] {
        let (wired, graph) = setup(d, r);
        let total: u64 = wired.trees().values().sum();
        assert_eq!(total as u128, spanning_tree_count(&graph).unwrap(), "Z^{d}, R = {r}");
    }
}

#[test]
fn wilson_samples_uniform_trees_in_every_order() {
    let (wired, graph) = setup(2, 1);
    let law = wired.trees();
    let n = graph.num_inner();
    let mut shuffled: Vec<u32> = (0..n as u32).collect();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(3));
    let orders = [VertexOrder::Bfs, VertexOrder::ReverseBfs, VertexOrder::Custom(shuffled)];
    for (k, order) in orders.iter().enumerate() {
        let mut rng = RandomStream::from_seed(40 + k as u64);
        let samples = 30_000;
        let mut observed: HashMap<Tree, u64> = HashMap::new();
        for _ in 0..samples {
            let forest = wilson_wired(&graph, &mut rng, order).unwrap();
            assert!(forest.is_spanning() && forest.is_valid_for(&graph));
            *observed.entry(wired.tree_of(&forest, &graph)).or_default() += 1;
        }
        assert!(observed.keys().all(|t| law.contains_key(t)));
        let p = chi_square_p(&observed, &law, samples);
        assert!(p >= 0.001, "{order:?}: p = {p}");
    }
}

#[test]
fn component_stats_match_recount() {
    for (d, big, r) in [(1, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1)] {
        let (wired, graph) = setup(d, big);
        let mut rng = RandomStream::from_seed(50 + d as u64);
        for _ in 0..300 {
            let forest = wilson_wired(&graph, &mut rng, &VertexOrder::Bfs).unwrap();
            let stats = component_stats(&forest, &graph, r).unwrap();
            let tree = wired.tree_of(&forest, &graph);
            let (t, c, n) = wired.components(&tree, r as i64);
            assert_eq!((stats.size_t_o_cap_b, stats.size_c, stats.ray_length), (t, c, n));
        }
    }
}

#[test]
fn component_means_on_the_line_are_exact() {
    let (wired, graph) = setup(1, 2);
    let law = wired.trees();
    let total: u64 = law.values().sum();
    let mut exact = [0.0f64; 3];
    for (tree, &w) in &law {
        let (t, c, n) = wired.components(tree, 1);
        for (e, x) in exact.iter_mut().zip([t, c, n]) {
            *e += w as f64 * x as f64 / total as f64;
        }
    }
    let mut rng = RandomStream::from_seed(60);
    let samples = 40_000;
    let mut sums = [0.0f64; 3];
    let mut squares = [0.0f64; 3];
    for _ in 0..samples {
        let s = sample_component_stats(&graph, 1, &mut rng).unwrap();
        for (i, x) in [s.size_t_o_cap_b, s.size_c, s.ray_length].into_iter().enumerate() {
            sums[i] += x as f64;
            squares[i] += (x * x) as f64;
        }
    }
    for i in 0..3 {
        let mean = sums[i] / samples as f64;
        let sem = ((squares[i] / samples as f64 - mean * mean) / samples as f64).sqrt();
        assert!(
            (mean - exact[i]).abs() <= 4.0 * sem + 1e-12,
            "series {i}: {mean} vs {}",
            exact[i]
        );
    }
}
