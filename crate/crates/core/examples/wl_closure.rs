//! WL stabilization of the λ-partition, by both engines.

use octa::design::Design;
use octa::gf::FieldParams;
use octa::scheme::{check_props, full_group_coloring, CheckMode};
use octa::wl::{lambda_coloring, schurian_flag, wl_stabilize, wl_stabilize_with_group};

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(41);
    let d = Design::build(&FieldParams::for_order(q)?)?;
    let lambda = lambda_coloring(&d);
    let fast = wl_stabilize_with_group(&lambda, d.generators(), CheckMode::Full)?;
    println!("colors per round {:?}", fast.colors_per_round);
    println!("{:?}", check_props(&fast.final_config));
    let full = full_group_coloring(d.points())?;
    println!("{:?}", schurian_flag(fast.classes(), full.num_colors() - 1)?);
    if d.num_points() <= 200 {
        let dense = wl_stabilize(&lambda, CheckMode::Full)?;
        println!("dense engine agrees: {}", dense.coloring() == fast.coloring());
    }
    Ok(())
}
