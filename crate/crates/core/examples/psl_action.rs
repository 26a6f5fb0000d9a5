//! PSL(2,q) acting on P = (F_q² ∖ {0})/⟨i⟩: points, generators, stabilizers.

use octa::gf::FieldParams;
use octa::pgroup::{group_order, point_orbit, PointSet};

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(13);
    let f = FieldParams::for_order(q)?;
    let pts = PointSet::new(&f)?;
    let gens = pts.psl_generator_perms();
    println!("|P| = {}, |PSL(2,{q})| = {}", pts.len(), group_order(q));
    println!("{} generators, orders {:?}", gens.len(), gens.iter().map(|g| g.order()).collect::<Vec<_>>());
    println!("orbit of point 0: {} points", point_orbit(&gens, 0).len());
    let stab = pts.point_stabilizer_report()?;
    println!("point stabilizer order {} (shape verified: {})", stab.order, stab.shape_verified);
    let sigma = pts.sigma_perm()?;
    println!("σ has order {} and fixes T = {:?}", sigma.order(), pts.basic_block_indices()?);
    Ok(())
}
