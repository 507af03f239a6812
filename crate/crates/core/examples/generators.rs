//! Extremal and planted families with their minimum degrees.
use hamorient::generators::{gen_bipartite_extremal, gen_blowup_tt, gen_random_min_degree, gen_split_cliques};
use hamorient::io::write_edge_list;

fn main() {
    for n in [8, 9] {
        println!("bipartite extremal n={n}: delta={}", gen_bipartite_extremal(n).min_degree());
        println!("split cliques      n={n}: delta={}", gen_split_cliques(n).min_degree());
    }
    let g1 = gen_blowup_tt(&[5, 5, 5], 1.0, 0.0, 0);
    println!("G1 (5,5,5): delta={} (n + n/3 - 2 = {})", g1.min_degree(), 15 + 5 - 2);
    let r = gen_random_min_degree(12, 17, 3);
    println!("random n=12: delta={} after {} added edges", r.graph.min_degree(), r.augmentations);
    print!("{}", write_edge_list(&gen_blowup_tt(&[2, 2], 1.0, 0.0, 0), Some("G1 with two parts of size 2")));
}
