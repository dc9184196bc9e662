// The integral bound on p_m(o, o) for a few volume functions.

use cayley_walks::bounds::{return_bound, BoundParams, VolumeFunction};
use cayley_walks::groups::GroupModel;
use cayley_walks::metric::DistanceOracle;

pub fn run_example() -> cayley_walks::Result<()> {
    let params = BoundParams {
        c: 1.0,
        ..BoundParams::default()
    };
    let z3 = VolumeFunction::from_oracle(&DistanceOracle::build(&GroupModel::parse("Z^3")?, 20)?);
    let volumes = [
        ("r^3".parse::<VolumeFunction>()?, "r^3"),
        (z3, "Z^3 balls"),
        ("expbase:3".parse()?, "3^r"),
    ];
    for m in [10u64, 100, 1000, 10_000] {
        let row: Vec<String> = volumes
            .iter()
            .map(|(v, name)| format!("{name}: {:.3e}", return_bound(v, m, &params).unwrap_or(f64::NAN)))
            .collect();
        println!("m = {m:>5}  {}", row.join("  "));
    }
    // for V(r) = r^3 the bound tends to Gamma(5/2) m^{-3/2}
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("return bound example");
}
