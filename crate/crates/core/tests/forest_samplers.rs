//! Agreement between the forest samplers, stability in the wired radius,
//! and exact identities on the 4-regular tree.

use cayley_walks::groups::GroupModel;
use cayley_walks::harness::{run_experiment_report, ExperimentConfig, Observable};
use cayley_walks::metric::{DistanceOracle, Metric};
use cayley_walks::rng::RandomStream;
use cayley_walks::stats::{summarize, EstimateRecord};
use cayley_walks::walk::StepDistribution;
use cayley_walks::wsf::{
    build_wired_ball, ray_decomposition_trace, sample_component_stats, sample_component_stats_implicit, ComponentStats,
};

fn series(samples: &[ComponentStats]) -> [EstimateRecord; 3] {
    [
        summarize(samples.iter().map(|s| s.size_t_o_cap_b as f64)),
        summarize(samples.iter().map(|s| s.size_c as f64)),
        summarize(samples.iter().map(|s| s.ray_length as f64)),
    ]
}

fn agree(a: &EstimateRecord, b: &EstimateRecord, what: &str) {
    let se = a.sem.hypot(b.sem);
    assert!(
        (a.mean - b.mean).abs() <= 4.0 * se + 1e-12,
        "{what}: {} ± {} vs {} ± {}",
        a.mean,
        a.sem,
        b.mean,
        b.sem
    );
}

#[test]
fn implicit_and_indexed_samplers_agree() {
    for (descriptor, r, big) in [("Z^3", 2, 4), ("H3", 2, 4), ("LL", 2, 5), ("F2", 2, 4)] {
        let group = GroupModel::parse(descriptor).unwrap();
        let dist = StepDistribution::simple(&group, false);
        let oracle = DistanceOracle::build(&group, big).unwrap();
        let graph = build_wired_ball(&dist, &oracle, big).unwrap();
        let metric = Metric::Oracle(oracle.clone());
        let mut rng = RandomStream::from_seed(70);
        let trials = 1500;
        let indexed: Vec<ComponentStats> = (0..trials)
            .map(|_| sample_component_stats(&graph, r, &mut rng).unwrap())
            .collect();
        let implicit: Vec<ComponentStats> = (0..trials)
            .map(|_| sample_component_stats_implicit(&dist, &oracle, &metric, r, big, &mut rng).unwrap())
            .collect();
        for (k, (a, b)) in series(&indexed).iter().zip(series(&implicit).iter()).enumerate() {
            agree(a, b, &format!("{descriptor} series {k}"));
        }
    }
}

fn forest_report(
    descriptor: &str,
    radii: Vec<u64>,
    trials: u64,
    wired_factor: u64,
    index_cap: usize,
) -> Vec<[EstimateRecord; 3]> {
    let mut cfg = ExperimentConfig::new(
        descriptor.parse().unwrap(),
        Observable::WsfBallVolume,
        radii,
        trials,
        71,
    );
    cfg.wsf.wired_factor = wired_factor;
    cfg.wsf.index_cap = index_cap;
    run_experiment_report(&cfg)
        .unwrap()
        .results
        .iter()
        .map(|res| ["T", "C", "Nr"].map(|s| res.get(s).unwrap().clone()))
        .collect()
}

#[test]
fn components_stable_in_wired_radius() {
    let near = forest_report("Z^5", vec![2], 800, 3, 2_000_000);
    let far = forest_report("Z^5", vec![2], 800, 4, 2_000_000);
    for k in 1..3 {
        agree(&near[0][k], &far[0][k], &format!("Z^5 series {k}"));
    }
}

#[test]
fn tree_forest_matches_exact_volume() {
    for res in forest_report("F2", vec![1, 2, 3], 3000, 4, 100_000) {
        let t = &res[0];
        let r = t.r as f64;
        let exact = 1.0 + 2.0 * r + r * (r - 1.0) / 3.0;
        assert!(
            (t.mean - exact).abs() <= 4.0 * t.sem,
            "r = {r}: {} ± {} vs {exact}",
            t.mean,
            t.sem
        );
        // balls of a tree are convex, so C(o, r) is all of T_o ∩ B(o, r); the ray is a geodesic
        assert_eq!(res[1].mean, t.mean);
        assert_eq!((res[2].mean, res[2].sem), (r + 1.0, 0.0));
    }
}

#[test]
fn tree_rays_are_geodesic() {
    let group = GroupModel::parse("F2").unwrap();
    let dist = StepDistribution::simple(&group, false);
    let metric = Metric::for_model(&group, 0).unwrap();
    let mut rng = RandomStream::from_seed(72);
    for r in [1, 3, 5] {
        for _ in 0..300 {
            let t = ray_decomposition_trace(&dist, &metric, r, 16 * r, 10_000_000, &mut rng).unwrap();
            assert_eq!(t.ray_in_ball, r + 1);
            assert_eq!(t.xi, t.windows.len());
            assert_eq!(t.windows[0].rho, 0);
            assert!(t.windows.windows(2).all(|w| w[0].tau < w[1].rho && w[1].rho < w[1].tau));
            assert!(t.ray_in_ball <= t.cover_bound + t.xi as u64);
        }
    }
}

#[test]
fn ray_cover_bound_holds_on_lattices() {
    for descriptor in ["Z^3", "Z^5", "H3"] {
        let group = GroupModel::parse(descriptor).unwrap();
        let dist = StepDistribution::simple(&group, false);
        let metric = Metric::for_model(&group, 40).unwrap();
        let mut rng = RandomStream::from_seed(73);
        for _ in 0..200 {
            let t = ray_decomposition_trace(&dist, &metric, 3, 24, 10_000_000, &mut rng).unwrap();
            assert!(t.xi >= 1 && t.ray_in_ball >= 1);
            assert!(t.ray_in_ball <= t.cover_bound + t.xi as u64, "{descriptor}: {t:?}");
        }
    }
}
