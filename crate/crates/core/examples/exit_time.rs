// Exit times of balls on the Heisenberg group, and the lazy line at r = 1.

use cayley_walks::harness::{run_experiment, ExperimentConfig, Observable};
use cayley_walks::stats::fit_exponent;

pub fn run_example() -> cayley_walks::Result<()> {
    let cfg = ExperimentConfig::new("H3".parse()?, Observable::ExitTime, vec![2, 4, 8], 300, 3);
    let records = run_experiment(&cfg)?;
    for e in &records {
        println!("H3  r = {:>2}  E[tau_r] = {:8.2} ± {:.2}", e.r, e.mean, e.sem);
    }
    println!("exponent {:.3}", fit_exponent(&records)?.slope);

    // lazy walk on Z leaving {-1, 0, 1}: 2 (r + 1)^2 = 8 steps on average
    let mut line = ExperimentConfig::new("Z".parse()?, Observable::ExitTime, vec![1], 2000, 3);
    line.walk.lazy = true;
    let e = &run_experiment(&line)?[0];
    println!("lazy Z  r = 1  E[tau_1] = {:.3} ± {:.3}", e.mean, e.sem);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("exit time example");
}
