//! Arithmetic in F_q: the default modulus, ω, i, and a few operations.
//!
//! cargo run --example gf_arithmetic -- 25

use octa::gf::{ArithOp, FieldParams};

fn main() -> octa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    let f = FieldParams::for_order(q)?;
    println!("F_{q}: {}", f.modulus_line());
    println!("ω = {}", f.display(f.omega()));
    if let Some(i) = f.i_elem() {
        println!("i = ω^{} = {}, i² = {}", (q - 1) / 4, f.display(i), f.display(f.mul(i, i)));
    }
    let a = f.omega_pow(3);
    let b = f.add(f.one(), f.omega());
    for op in [ArithOp::Add, ArithOp::Mul, ArithOp::Div, ArithOp::Pow(f.q() as u64)] {
        println!("{} {op:?} {} = {}", f.display(a), f.display(b), f.display(f.arith(a, b, op)?));
    }
    Ok(())
}
