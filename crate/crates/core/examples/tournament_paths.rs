//! Any oriented path on at most m vertices lies in the transitive tournament on m vertices.
use hamorient::embedding::{tt_embed_path, tt_validates};
use hamorient::pattern::path_classes;

fn main() -> hamorient::Result<()> {
    let mut total = 0;
    for l in 1..=10 {
        for p in path_classes(l) {
            let ranks = tt_embed_path(&p, l)?;
            assert!(tt_validates(&p, &ranks, l));
            total += 1;
        }
    }
    println!("{total} path classes embedded and validated");
    let p = hamorient::PathPattern::parse("++--+-")?;
    println!("{p} -> ranks {:?}", tt_embed_path(&p, 7)?);
    Ok(())
}
