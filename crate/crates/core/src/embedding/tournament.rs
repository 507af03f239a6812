//! Oriented paths in transitive tournaments.

use crate::error::{Error, Result};
use crate::pattern::PathPattern;

/// Ranks in the transitive tournament on `0..size` (edge `i → j` iff `i < j`)
/// for the vertices of `path`.
///
/// Two pointers close in on the unused ranks: a vertex whose next edge points
/// forward takes the lowest unused rank, one whose next edge points backward
/// takes the highest. Every later vertex then lies on the correct side.
pub fn tt_embed_path(path: &PathPattern, size: usize) -> Result<Vec<usize>> {
    let l = path.vertices();
    if l > size {
        return Err(Error::Precondition(format!("path on {l} vertices does not fit a tournament on {size}")));
    }
    let (mut lo, mut hi) = (0usize, size - 1);
    let mut ranks = Vec::with_capacity(l);
    for i in 0..l - 1 {
        if path.forward(i) {
            ranks.push(lo);
            lo += 1;
        } else {
            ranks.push(hi);
            hi -= 1;
        }
    }
    ranks.push(lo);
    Ok(ranks)
}

/// Whether `ranks` is a copy of `path` in the transitive tournament on `0..size`.
pub fn tt_validates(path: &PathPattern, ranks: &[usize], size: usize) -> bool {
    if ranks.len() != path.vertices() || ranks.iter().any(|&r| r >= size) {
        return false;
    }
    let mut seen = vec![false; size];
    for &r in ranks {
        if seen[r] {
            return false;
        }
        seen[r] = true;
    }
    (0..ranks.len().saturating_sub(1)).all(|i| path.forward(i) == (ranks[i] < ranks[i + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(tt_embed_path(&PathPattern::directed(5), 5).unwrap(), vec![0, 1, 2, 3, 4]);
        let p = PathPattern::parse("+-+").unwrap();
        let r = tt_embed_path(&p, 4).unwrap();
        assert!(tt_validates(&p, &r, 4));
        assert_eq!(tt_embed_path(&PathPattern::single(), 1).unwrap(), vec![0]);
        assert!(tt_embed_path(&PathPattern::directed(4), 3).is_err());
    }

    #[test]
    fn validator_rejects_wrong_order() {
        let p = PathPattern::parse("+").unwrap();
        assert!(!tt_validates(&p, &[1, 0], 2));
        assert!(!tt_validates(&p, &[0, 0], 2));
    }
}
