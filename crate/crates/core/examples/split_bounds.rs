// Head and tail of the occupation and forest bounds for exponential and
// polynomial growth.

use cayley_walks::bounds::{occupation_split, wsf_split, wsf_split_with, BoundParams, SplitMode, VolumeFunction};

pub fn run_example() -> cayley_walks::Result<()> {
    let exp: VolumeFunction = "2*3^r-1".parse()?;
    let occ = BoundParams {
        k: 3,
        ..BoundParams::default()
    };
    let forest = BoundParams::default();
    println!("V = {exp}");
    for r in [4u64, 16, 64] {
        let a = occupation_split(r, &exp, &occ)?;
        let b = wsf_split(r, &exp, &forest)?;
        let r2 = (r * r) as f64;
        println!(
            "r = {r:>3}  occupation tail/r^2 = {:.3}  forest tail/r^4 = {:.4}",
            a.tail / r2,
            b.tail / (r2 * r2)
        );
    }

    let poly = VolumeFunction::power(1.0, 5.0)?;
    for r in [4u64, 16, 64] {
        let s = wsf_split_with(r, &poly, &forest, SplitMode::Diffusive)?;
        println!(
            "V = r^5  r = {r:>3}  forest bound / r^4 = {:.4}",
            s.total / (r as f64).powi(4)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("split bound example");
}
