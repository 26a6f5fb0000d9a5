//! The octahedral design B = T^G with its counts checked.

use octa::design::Design;
use octa::gf::FieldParams;

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(13);
    let d = Design::build(&FieldParams::for_order(q)?)?;
    let params = d.verify_counts()?;
    println!("v={} b={} r={} k={} λ={:?}", params.v, params.b, params.r, params.k, params.lambda_values);
    if !d.is_char5() {
        let census = d.edge_diagonal_census()?;
        println!("{} edges in 4 blocks each, {} diagonals in 1 block each", census.edges, census.diagonals);
    }
    let stab = d.block_stabilizer_report()?;
    println!("block stabilizer order {}, element orders {:?}", stab.order, stab.element_orders);
    let b = &d.blocks()[0];
    println!("first block {:?}, diagonals {:?}", b.points, b.diag_pairs);
    Ok(())
}
