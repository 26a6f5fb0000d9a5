//! Orbital schemes of PSL(2,q) and of PΣL(2,q) × ⟨σ⟩ with their properties.

use octa::design::Design;
use octa::gf::FieldParams;
use octa::scheme::{check_props, full_group_coloring, gpbibd_check, intersection_tensor, orbital_coloring, CheckMode};

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(13);
    let d = Design::build(&FieldParams::for_order(q)?)?;
    let n = d.num_points();
    for (name, c) in [("PSL(2,q)", orbital_coloring(d.generators(), n)), ("full group", full_group_coloring(d.points())?)] {
        let cc = intersection_tensor(&c, CheckMode::Full)?;
        let props = check_props(&cc);
        let lam = gpbibd_check(&d, &c)?;
        println!("{name}: {props:?}");
        println!("  λ per color {:?}", lam.values().collect::<Vec<_>>());
        println!("  valencies {:?}", cc.valencies.as_deref().unwrap_or_default());
    }
    Ok(())
}
