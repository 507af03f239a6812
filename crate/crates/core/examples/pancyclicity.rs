//! Oriented cycles of every length in a dense digraph.
use hamorient::embedding::{pancyclic_suite, PancyclicOptions};
use hamorient::generators::gen_random_min_degree;
use std::collections::BTreeMap;

fn main() -> hamorient::Result<()> {
    let g = gen_random_min_degree(10, 14, 6).graph;
    let rep = pancyclic_suite(&g, 1, 0.1, &PancyclicOptions::default())?;
    let mut by_method: BTreeMap<&str, usize> = BTreeMap::new();
    for c in &rep.cells {
        *by_method.entry(c.method.as_str()).or_default() += 1;
    }
    println!("delta={} full range={} cells={} found={} violations={}", rep.min_degree, rep.full_range, rep.cells.len(), rep.found, rep.violations);
    println!("{by_method:?}");
    Ok(())
}
