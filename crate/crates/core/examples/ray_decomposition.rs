// Segments of a walk on Z^5 that enter B(o, r), and what survives loop erasure.

use cayley_walks::groups::GroupModel;
use cayley_walks::metric::Metric;
use cayley_walks::rng::RandomStream;
use cayley_walks::walk::StepDistribution;
use cayley_walks::wsf::ray_decomposition_trace;

pub fn run_example() -> cayley_walks::Result<()> {
    let group = GroupModel::parse("Z^5")?;
    let dist = StepDistribution::simple(&group, false);
    let metric = Metric::for_model(&group, 0)?;
    let mut rng = RandomStream::from_seed(2);
    for _ in 0..3 {
        let t = ray_decomposition_trace(&dist, &metric, 3, 48, 10_000_000, &mut rng)?;
        let windows: Vec<(u64, u64)> = t.windows.iter().map(|w| (w.rho, w.tau)).collect();
        println!(
            "visits {windows:?}  xi = {}  ray inside B(o, 3) = {}",
            t.xi, t.ray_in_ball
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("ray example");
}
