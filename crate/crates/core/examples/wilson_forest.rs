// Wilson's algorithm on a wired ball of Z^2: tree counts, one sample and
// the component of o.

use cayley_walks::groups::GroupModel;
use cayley_walks::metric::DistanceOracle;
use cayley_walks::rng::RandomStream;
use cayley_walks::walk::StepDistribution;
use cayley_walks::wsf::{build_wired_ball, component_stats, spanning_tree_count, wilson_wired, VertexOrder, ROOT};

pub fn run_example() -> cayley_walks::Result<()> {
    let group = GroupModel::parse("Z^2")?;
    let dist = StepDistribution::simple(&group, false);
    let oracle = DistanceOracle::build(&group, 6)?;

    let small = build_wired_ball(&dist, &oracle, 1)?;
    println!("wired B(o, 1) in Z^2: {} spanning trees", spanning_tree_count(&small)?);

    let graph = build_wired_ball(&dist, &oracle, 6)?;
    let mut rng = RandomStream::from_seed(5);
    let forest = wilson_wired(&graph, &mut rng, &VertexOrder::Bfs)?;
    let to_root = (0..graph.num_inner() as u32)
        .filter(|&v| forest.parent(v) == Some(ROOT))
        .count();
    println!(
        "{} vertices, {to_root} attached to the wired boundary",
        graph.num_inner()
    );
    let stats = component_stats(&forest, &graph, 3)?;
    println!(
        "r = 3: |T_o ∩ B| = {}, |C(o, r)| = {}, N_r = {}",
        stats.size_t_o_cap_b, stats.size_c, stats.ray_length
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("wilson example");
}
