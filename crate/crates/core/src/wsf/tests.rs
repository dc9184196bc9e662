use super::*;
use crate::groups::{Element, GroupModel};
use crate::metric::ClosedFormMetric;

fn wired(model: &GroupModel, radius: u64) -> WiredBallGraph {
    let oracle = DistanceOracle::build(model, radius).unwrap();
    build_wired_ball(&StepDistribution::simple(model, false), &oracle, radius).unwrap()
}

#[test]
fn wired_ball_shapes() {
    let g = wired(&GroupModel::ZPower(2), 1);
    assert_eq!(g.num_inner(), 5);
    assert_eq!(g.root_multiplicity(0), 0);
    for v in 1..5 {
        assert_eq!(g.root_multiplicity(v), 3);
    }
    let g = wired(&GroupModel::ZPower(1), 1);
    assert_eq!(g.num_inner(), 3);
    assert_eq!((1..3).map(|v| g.root_multiplicity(v)).collect::<Vec<_>>(), vec![1, 1]);
    let g = wired(&GroupModel::Free(2), 1);
    assert_eq!(g.num_inner(), 5);
    assert!((1..5).all(|v| g.root_multiplicity(v) == 3));
    assert_eq!(g.root_edges().len(), 12);
}

#[test]
fn tree_counts() {
    assert_eq!(spanning_tree_count(&wired(&GroupModel::ZPower(1), 1)).unwrap(), 4);
    assert_eq!(spanning_tree_count(&wired(&GroupModel::ZPower(2), 1)).unwrap(), 768);
    for (d, n) in [(1, 4), (2, 64)] {
        let g = wired(&GroupModel::ZPower(d), 1);
        let trees = enumerate_spanning_trees(&g, 1_000).unwrap();
        let total: u128 = trees.iter().map(|t| t.1).sum();
        assert_eq!(total, spanning_tree_count(&g).unwrap());
        assert!(trees.len() <= n);
    }
    assert!(enumerate_spanning_trees(&wired(&GroupModel::ZPower(2), 1), 10).is_err());
    assert_eq!(bareiss_determinant(vec![vec![2, 1], vec![1, 2]]).unwrap(), 3);
    assert_eq!(bareiss_determinant(vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
}

#[test]
fn single_vertex_goes_to_root() {
    let m = GroupModel::ZPower(3);
    let g = wired(&m, 0);
    let mut rng = RandomStream::from_seed(1);
    for _ in 0..20 {
        let f = wilson_wired(&g, &mut rng, &VertexOrder::Bfs).unwrap();
        assert_eq!(f.parent(0), Some(ROOT));
    }
}

#[test]
fn forests_are_valid_spanning_trees() {
    let g = wired(&GroupModel::Heisenberg3, 3);
    let mut rng = RandomStream::from_seed(2);
    for order in [VertexOrder::Bfs, VertexOrder::ReverseBfs] {
        let f = wilson_wired(&g, &mut rng, &order).unwrap();
        assert!(f.is_spanning());
        assert!(f.is_valid_for(&g));
        let s = component_stats(&f, &g, 2).unwrap();
        assert!(s.is_consistent(g.num_inner() as u64));
    }
}

#[test]
fn partial_run_covers_starts() {
    let g = wired(&GroupModel::ZPower(3), 6);
    let mut rng = RandomStream::from_seed(3);
    let f = wilson_wired_partial(&g, &[0, 1, 2], &mut rng).unwrap();
    assert!(f.is_valid_for(&g));
    assert!((0..3).all(|v| f.parent(v).is_some()));
    assert!(!f.is_spanning());
}

#[test]
fn rooted_at_infinity_radius_zero() {
    let m = GroupModel::Free(2);
    let oracle = DistanceOracle::build(&m, 0).unwrap();
    let dist = StepDistribution::simple(&m, false);
    let mut rng = RandomStream::from_seed(4);
    let f = wilson_rooted_at_infinity_truncated(&dist, &oracle, 0, 0, &VertexOrder::Bfs, &mut rng).unwrap();
    assert_eq!(f.len(), 1);
    let s = component_stats_elements(&f, &oracle, 0, 0).unwrap();
    assert_eq!((s.size_t_o_cap_b, s.size_c, s.ray_length), (1, 1, 1));
    assert!(wilson_rooted_at_infinity_truncated(&dist, &oracle, 0, 0, &VertexOrder::Bfs, &mut rng).is_ok());
    let oracle = DistanceOracle::build(&m, 2).unwrap();
    assert!(wilson_rooted_at_infinity_truncated(&dist, &oracle, 2, 7, &VertexOrder::Bfs, &mut rng).is_err());
}

#[test]
fn implicit_and_indexed_agree_on_tree_shape() {
    // on F2 the wired ball forest restricted to B(o, 1) is determined by
    // which leaves hang off o
    let m = GroupModel::Free(2);
    let oracle = DistanceOracle::build(&m, 1).unwrap();
    let metric = ClosedFormMetric::new(&m).unwrap();
    let dist = StepDistribution::simple(&m, false);
    let mut rng = RandomStream::from_seed(5);
    for _ in 0..50 {
        let s = sample_component_stats_implicit(&dist, &oracle, &metric, 1, 3, &mut rng).unwrap();
        assert!(s.is_consistent(5));
        assert_eq!(s.size_c, s.size_t_o_cap_b);
    }
}

#[test]
fn ray_trace_windows() {
    let m = GroupModel::Free(2);
    let dist = StepDistribution::simple(&m, false);
    let metric = ClosedFormMetric::new(&m).unwrap();
    let mut rng = RandomStream::from_seed(6);
    for _ in 0..200 {
        let t = ray_decomposition_trace(&dist, &metric, 3, 24, 1_000_000, &mut rng).unwrap();
        assert!(t.xi >= 1);
        assert_eq!(t.windows[0].rho, 0);
        assert!(t.windows.windows(2).all(|w| w[0].tau < w[1].rho && w[1].rho < w[1].tau));
        assert!(t.ray_in_ball <= t.cover_bound);
        // on a tree the loop erasure is a geodesic
        assert_eq!(t.ray_in_ball, 4);
    }
    let z = GroupModel::ZPower(2);
    let zd = StepDistribution::simple(&z, false);
    let zm = ClosedFormMetric::new(&z).unwrap();
    assert!(matches!(
        ray_decomposition_trace(&zd, &zm, 2, 10, 100, &mut rng),
        Err(crate::Error::Recurrent { .. })
    ));
}

#[test]
fn from_region_path() {
    let m = GroupModel::ZPower(1);
    let metric = ClosedFormMetric::new(&m).unwrap();
    let region: Vec<Element> = (0..3).map(|i| Element::Z(vec![i])).collect();
    let g = WiredBallGraph::from_region(&StepDistribution::simple(&m, false), &metric, region).unwrap();
    assert_eq!(g.root_multiplicity(0), 1);
    assert_eq!(g.root_multiplicity(1), 0);
    assert_eq!(g.multiplicity(0, 1), 1);
    assert_eq!(spanning_tree_count(&g).unwrap(), 4);
}
