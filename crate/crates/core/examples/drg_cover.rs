//! The q = 25 minimal scheme as an antipodal distance-regular graph.

use octa::design::Design;
use octa::gf::FieldParams;
use octa::scheme::{drg_analysis, CheckMode};
use octa::wl::{lambda_coloring, wl_stabilize_with_group};

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    let d = Design::build(&FieldParams::for_order(q)?)?;
    let wl = wl_stabilize_with_group(&lambda_coloring(&d), d.generators(), CheckMode::Full)?;
    match drg_analysis(&wl.final_config) {
        Some(r) => {
            let a = r.intersection_array;
            println!("intersection array {{{},{},{}; {},{},{}}}", a[0], a[1], a[2], a[3], a[4], a[5]);
            println!("antipodal: {}, {}-fold cover of K_{}", r.antipodal, r.antipodal_class_size, r.cover_of);
        }
        None => println!("q = {q}: {} classes, not a metric 3-class scheme", wl.classes()),
    }
    Ok(())
}
