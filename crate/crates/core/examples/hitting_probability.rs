// Probability that the walk on F2 ever hits a vertex at distance n, against
// the exact value 3^{-n} and the fitted polynomial bound.

use cayley_walks::bounds::{hitting_bound_check, HittingOptions};
use cayley_walks::groups::GroupModel;
use cayley_walks::metric::DistanceOracle;
use cayley_walks::rng::RandomStream;
use cayley_walks::walk::StepDistribution;

pub fn run_example() -> cayley_walks::Result<()> {
    let group = GroupModel::parse("F2")?;
    let oracle = DistanceOracle::build(&group, 4)?;
    let dist = StepDistribution::simple(&group, false);
    let options = HittingOptions {
        distances: vec![1, 2, 3, 4],
        trials: 5_000,
        ..HittingOptions::default()
    };
    let report = hitting_bound_check(&oracle, &dist, 3, &options, &RandomStream::from_seed(8))?;
    for row in &report.rows {
        println!(
            "n = {}  target {:>5}  P[hit] = {:.4} ± {:.4}  exact {:.4}  bound {:.4}",
            row.distance,
            row.target,
            row.estimate,
            row.sem,
            3f64.powi(-(row.distance as i32)),
            row.bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hitting example");
}
