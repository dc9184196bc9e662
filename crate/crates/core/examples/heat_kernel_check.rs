// Fits the heat-kernel bound at m = 8 and compares it with simulated
// return probabilities of the lazy walk on Z^3.

use cayley_walks::bounds::{heat_kernel_check, BoundParams, VolumeFunction};
use cayley_walks::harness::{run_experiment, ExperimentConfig, Observable};
use cayley_walks::metric::DistanceOracle;

pub fn run_example() -> cayley_walks::Result<()> {
    let group = "Z^3".parse()?;
    let mut cfg = ExperimentConfig::new(group, Observable::ReturnProbability, vec![8, 16, 32, 64], 50_000, 4);
    cfg.walk.lazy = true;
    let estimates = run_experiment(&cfg)?;
    let volume = VolumeFunction::from_oracle(&DistanceOracle::build(&cfg.group, 64)?);
    let check = heat_kernel_check(
        &estimates,
        8,
        &volume,
        &BoundParams {
            k: 2,
            ..BoundParams::default()
        },
        64,
    )?;
    println!("fitted c'' = {:.4}", check.fitted_c_double_prime);
    for row in &check.rows {
        println!(
            "m = {:>2}  p_m = {:.5} ± {:.5}  bound {:.5}  dominates {}",
            row.m, row.estimate, row.sem, row.bound, row.dominates
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("heat kernel example");
}
