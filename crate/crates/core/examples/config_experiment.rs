// An experiment described by a flat key = value config, written as CSV and JSON.

use cayley_walks::harness::{run_experiment_report, ExperimentConfig};
use cayley_walks::report::{experiment_table, parse_key_values, Format};

const CONFIG: &str = "
# Lamplighter forest components
group = LL
observable = wsf-component
radii = 2, 3, 4
trials = 100
seed = 12
wired-factor = 2
";

pub fn run_example() -> cayley_walks::Result<()> {
    let cfg = ExperimentConfig::from_pairs(&parse_key_values(CONFIG)?)?;
    let table = experiment_table(&run_experiment_report(&cfg)?);
    print!("{}", table.render(Format::Csv));
    print!("{}", table.render(Format::Json));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("config example");
}
