//! Exact robust outexpander certificates and a violating set.
use hamorient::expansion::{certify_expander, CertificateJson, ExpansionParams};
use hamorient::generators::{gen_blowup_tt, gen_complete_digraph};

fn main() -> hamorient::Result<()> {
    let p = ExpansionParams::exact(0.05, 0.2)?;
    let k = gen_complete_digraph(12);
    let v = certify_expander(&k, &p)?;
    println!("complete n=12: {}", serde_json::to_string(&CertificateJson::from_verdict(&v, p.nu, p.tau, None)).unwrap());
    // two cliques with edges one way only: the later clique has no robust out-neighbours
    let g = gen_blowup_tt(&[6, 6], 1.0, 0.0, 0);
    let v = certify_expander(&g, &p)?;
    println!("blow-up (6,6): {}", serde_json::to_string(&CertificateJson::from_verdict(&v, p.nu, p.tau, None)).unwrap());
    Ok(())
}
