// Wired spanning forest on the 4-regular tree against the exact value
// E|T_o ∩ B(o, r)| = 1 + 2r + r(r - 1)/3.

use cayley_walks::harness::{run_experiment_report, ExperimentConfig, Observable};

pub fn run_example() -> cayley_walks::Result<()> {
    let cfg = ExperimentConfig::new("F2".parse()?, Observable::WsfBallVolume, vec![2, 3, 4], 200, 9);
    let report = run_experiment_report(&cfg)?;
    for res in &report.results {
        let r = res.r as f64;
        let t = res.get("T").expect("T series");
        let exact = 1.0 + 2.0 * r + r * (r - 1.0) / 3.0;
        println!(
            "r = {}  T = {:6.2} ± {:.2}  exact {exact:6.2}  N_r = {}",
            res.r,
            t.mean,
            t.sem,
            res.get("Nr").expect("Nr").mean
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tree forest example");
}
