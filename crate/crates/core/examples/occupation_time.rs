// Expected time the lazy walk on Z^3 spends in B(o, r), and its growth exponent.

use cayley_walks::harness::{run_experiment, ExperimentConfig, Observable};
use cayley_walks::stats::fit_exponent;

pub fn run_example() -> cayley_walks::Result<()> {
    let mut cfg = ExperimentConfig::new("Z^3".parse()?, Observable::OccupationTime, vec![2, 4, 8], 300, 7);
    cfg.walk.lazy = true;
    let records = run_experiment(&cfg)?;
    for e in &records {
        println!("r = {:>2}  E[L_r] = {:8.2} ± {:.2}", e.r, e.mean, e.sem);
    }
    let fit = fit_exponent(&records)?;
    println!("exponent {:.3} ± {:.3}", fit.slope, fit.slope_se);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("occupation example");
}
