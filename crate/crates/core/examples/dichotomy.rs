//! Every dense digraph has a sparse cut or is a robust outexpander.
use hamorient::expansion::{sparse_or_expander, Dichotomy, DichotomyOptions};
use hamorient::generators::{gen_blowup_tt, gen_random_min_degree};

fn main() -> hamorient::Result<()> {
    let (eta, alpha, tau) = (0.3, 0.3, 0.25);
    let mut counts = [0usize; 3];
    for seed in 0..50 {
        let g = gen_random_min_degree(12, 16, seed).graph;
        match sparse_or_expander(&g, eta, alpha, tau, &DichotomyOptions::default())? {
            Dichotomy::Cut(_) => counts[0] += 1,
            Dichotomy::Expander(_) => counts[1] += 1,
            Dichotomy::Neither { .. } => counts[2] += 1,
        }
    }
    println!("random n=12: cuts {} expanders {} neither {}", counts[0], counts[1], counts[2]);
    let g = gen_blowup_tt(&[6, 6], 1.0, 0.0, 0);
    if let Dichotomy::Cut(c) = sparse_or_expander(&g, eta, alpha, tau, &DichotomyOptions::default())? {
        println!("blow-up (6,6): cut {:?} | {:?}, e+ = {}", c.x1.to_vec(), c.x2.to_vec(), c.e_forward);
    }
    Ok(())
}
