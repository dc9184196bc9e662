// Ball volumes and doubling ratios for a few group descriptors.

use cayley_walks::bounds::volume_doubling_table;
use cayley_walks::groups::GroupModel;
use cayley_walks::metric::DistanceOracle;

pub fn run_example() -> cayley_walks::Result<()> {
    for descriptor in ["Z^3", "H3", "LL", "F2", "Z^2xF2"] {
        let group = GroupModel::parse(descriptor)?;
        let oracle = DistanceOracle::build(&group, 5)?;
        println!("{group:>8}  V(0..5) = {:?}", oracle.volumes());
    }

    // V(a r) / (V(r) a^k) stays bounded below by a constant exactly when growth is at least r^k
    let z2 = DistanceOracle::build(&GroupModel::parse("Z^2")?, 16)?;
    for e in volume_doubling_table(&z2, 3).iter().filter(|e| e.r == 2) {
        println!("Z^2  a = {:>2}  V(2a)/(V(2) a^3) = {:.4}", e.a, e.ratio);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("ball growth example");
}
