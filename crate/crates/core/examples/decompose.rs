//! Recovering planted classes of a noisy blow-up.
use hamorient::decomposition::{decompose, verify_partition, DecompositionParams};
use hamorient::generators::{gen_blowup_tt, part_labels};

fn main() -> hamorient::Result<()> {
    let sizes = [24, 24, 24];
    let g = gen_blowup_tt(&sizes, 0.95, 0.001, 5);
    let p = DecompositionParams::desk(3);
    let sp = decompose(&g, &p)?;
    let labels = part_labels(&sizes);
    for (i, c) in sp.classes.iter().enumerate() {
        let planted = c.iter().filter(|&v| labels[v] == i).count();
        println!("class {i}: {} vertices, {planted} from planted part {i}", c.len());
    }
    let r = verify_partition(&g, &sp.classes, &p);
    println!("clauses: (1) {} (2) {} (3) {} (4) {}", r.clause1.pass, r.clause2(), r.clause3.pass, r.clause4.pass);
    for f in &sp.flags {
        println!("flag: {f}");
    }
    Ok(())
}
