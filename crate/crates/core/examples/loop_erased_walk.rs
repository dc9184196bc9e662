// Loop erasure of a hand-made path and a loop-erased walk on Z^3.

use cayley_walks::groups::GroupModel;
use cayley_walks::lerw::{loop_erase, sample_lerw, StopRule};
use cayley_walks::metric::Metric;
use cayley_walks::rng::RandomStream;
use cayley_walks::walk::StepDistribution;

pub fn run_example() -> cayley_walks::Result<()> {
    let path = ['a', 'b', 'c', 'b', 'd', 'e', 'd', 'f'];
    let erased: String = loop_erase(&path).vertices().iter().collect();
    println!("{} -> {erased}", path.iter().collect::<String>());

    let group = GroupModel::parse("Z^3")?;
    let dist = StepDistribution::simple(&group, false);
    let metric = Metric::for_model(&group, 0)?;
    let mut rng = RandomStream::from_seed(11);
    for _ in 0..3 {
        let lerw = sample_lerw(
            &dist,
            &metric,
            &group.identity(),
            &StopRule::EscapeRadius(10),
            1_000_000,
            &mut rng,
        )?;
        println!(
            "LERW from o until distance > 10: {} vertices, ends at {}",
            lerw.len(),
            lerw.last().expect("nonempty")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("loop erasure example");
}
