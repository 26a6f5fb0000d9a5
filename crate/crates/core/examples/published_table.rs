//! The table of designs for q up to a bound, checked against the
//! published values.
//!
//! cargo run --release --example published_table -- 49

use octa::cli::{cmd_table, render_table, Format, RunOptions};

fn main() {
    let max_q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(49);
    let t = cmd_table(max_q, true, &RunOptions::default());
    print!("{}", render_table(&t, Format::Text));
}
