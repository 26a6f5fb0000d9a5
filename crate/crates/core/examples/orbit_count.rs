//! Frobenius orbits on F_q^×/μ₄ by the closed formula and by enumeration.

use octa::counting::{admissible_orders, orbit_count_direct, orbit_count_pf};
use octa::gf::{prime_power, FieldParams};

fn main() -> octa::Result<()> {
    println!("q\tp^n\t|P/F|\tdirect\tm_min");
    for q in admissible_orders(169) {
        let (p, n) = prime_power(q).expect("admissible orders are prime powers");
        let pf = orbit_count_pf(p, n)?;
        let direct = orbit_count_direct(&FieldParams::for_order(q)?)?;
        println!("{q}\t{p}^{n}\t{}\t{direct}\t{}", pf.count, pf.m_min);
    }
    Ok(())
}
