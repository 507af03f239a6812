//! The exact oracle: full patterns, pinned positions and paths between two vertices.
use hamorient::embedding::{embed_path_between, exact_embed, OracleOptions, OracleResult, PatternRef};
use hamorient::generators::{gen_bipartite_extremal, gen_random_min_degree};
use hamorient::{CyclePattern, PathPattern, VertexSet};

fn main() -> hamorient::Result<()> {
    let opts = OracleOptions::default();
    let g = gen_random_min_degree(12, 16, 1).graph;
    let c = CyclePattern::parse("++-++--+-+++")?;
    if let OracleResult::Found(e) = exact_embed(&g, PatternRef::Cycle(&c), &[(0, 5)], &opts)? {
        println!("{} with position 0 on vertex 5: {:?}", c, e.map);
    }
    let p = PathPattern::parse("+-+-+")?;
    let r = embed_path_between(&g, &p, 0, 1, &VertexSet::from_iter(12, [2, 3]), &opts)?;
    println!("path {p} from 0 to 1 avoiding 2,3: {:?}", r.embedding().map(|e| &e.map));
    let b = gen_bipartite_extremal(9);
    let c = CyclePattern::parse("+-+-+-+-+")?;
    let none = exact_embed(&b, PatternRef::Cycle(&c), &[], &opts)?;
    println!("bipartite extremal n=9, {c}: {}", if none.is_none() { "none" } else { "found" });
    Ok(())
}
