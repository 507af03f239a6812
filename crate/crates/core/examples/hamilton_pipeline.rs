//! Decompose, then embed several orientations of a Hamilton cycle.
use hamorient::decomposition::{decompose, DecompositionParams};
use hamorient::embedding::{embed_hamilton_orientation, EmbedParams};
use hamorient::generators::{gen_blowup_tt, rng};
use hamorient::CyclePattern;
use rand::Rng;

fn main() -> hamorient::Result<()> {
    let g = gen_blowup_tt(&[30, 30], 0.95, 0.001, 2);
    let sp = decompose(&g, &DecompositionParams::desk(3))?;
    let params = EmbedParams { oracle_cap: 0, ..EmbedParams::default() };
    let n = g.n();
    let mut r = rng(9);
    let mut patterns = vec![
        CyclePattern::antidirected(n)?,
        CyclePattern::new((0..n).map(|i| i != 0).collect())?,
        CyclePattern::new((0..n).map(|i| i < 40 || i % 2 == 0).collect())?,
    ];
    patterns.extend((0..3).map(|_| CyclePattern::new((0..n).map(|_| r.gen()).collect()).unwrap()));
    for c in &patterns {
        let o = embed_hamilton_orientation(&g, &sp, c, &params)?;
        println!("{:?}: valid={} attempts={}", o.case, o.check.valid, o.attempts);
    }
    Ok(())
}
