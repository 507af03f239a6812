//! Random splits of an expander into expanding pieces.
use hamorient::embedding::{split_expander, SplitParams};
use hamorient::generators::gen_random_min_degree;
use hamorient::VertexSet;

fn main() -> hamorient::Result<()> {
    let g = gen_random_min_degree(40, 64, 3).graph;
    let w0 = VertexSet::from_iter(40, 0..4);
    let out = split_expander(&g, &[4, 18, 18], &w0, &SplitParams::default())?;
    println!("accepted after {} samples", out.attempts);
    for r in &out.reports {
        println!("W_{}: {} vertices, min degree ratio {:.3}, {}", r.index, r.size, r.min_degree_ratio, r.expansion);
    }
    Ok(())
}
