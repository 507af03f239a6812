//! A directed 2-factor with at most k cycles, and the blow-up just below the bound.
use hamorient::embedding::{two_factor, OracleOptions};
use hamorient::generators::{gen_blowup_tt, gen_random_min_degree};

fn main() -> hamorient::Result<()> {
    let (n, k) = (12, 2);
    let g = gen_random_min_degree(n, n + n / (k + 1) - 1, 4).graph;
    let f = two_factor(&g, k, &OracleOptions::default())?;
    for c in &f.cycles {
        println!("cycle {:?}", c);
    }
    let g1 = gen_blowup_tt(&[4, 4, 4], 1.0, 0.0, 0);
    match two_factor(&g1, k, &OracleOptions::default()) {
        Err(e) => println!("G1 (4,4,4): {e}"),
        Ok(f) => println!("G1 unexpectedly accepted with {} cycles", f.cycles.len()),
    }
    Ok(())
}
