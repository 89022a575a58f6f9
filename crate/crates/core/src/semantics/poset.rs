//! Finite posets up to isomorphism, and their up-sets.

use std::collections::BTreeSet;

/// A partial order on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub n: usize,
    /// `leq[i][j]` iff `i <= j`.
    pub leq: Vec<Vec<bool>>,
    /// Canonical code: the largest relation code over all relabelings.
    pub code: u64,
}

/// Bits over ordered pairs `(i, j)`, `i != j`, row-major, first pair most
/// significant.
fn relation_code(leq: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = leq.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                code = (code << 1) | leq[perm[i]][perm[j]] as u64;
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The canonical relabeling of a partial order and its code.
pub fn canonical(leq: &[Vec<bool>]) -> (Vec<Vec<bool>>, u64) {
    let n = leq.len();
    let (perm, code) = permutations(n)
        .into_iter()
        .map(|p| {
            let c = relation_code(leq, &p);
            (p, c)
        })
        .max_by_key(|(_, c)| *c)
        .expect("at least one permutation");
    let relabeled = (0..n).map(|i| (0..n).map(|j| leq[perm[i]][perm[j]]).collect()).collect();
    (relabeled, code)
}

/// All posets on `n` points up to isomorphism, sorted by canonical code.
///
/// Every finite poset has a linear extension, so it suffices to enumerate
/// orders contained in `<` on `0..n`.
pub fn posets(n: usize) -> Vec<Poset> {
    assert!((1..=8).contains(&n), "poset size {n} out of range");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if !transitive {
            continue;
        }
        let (leq, code) = canonical(&leq);
        if seen.insert(code) {
            out.push(Poset { n, leq, code });
        }
    }
    out.sort_by_key(|p| p.code);
    out
}

impl Poset {
    /// Up-closed subsets as bitmasks, ascending.
    pub fn up_sets(&self) -> Vec<u32> {
        (0u32..(1u32 << self.n))
            .filter(|&s| {
                (0..self.n).all(|w| s >> w & 1 == 0 || (0..self.n).all(|v| !self.leq[w][v] || s >> v & 1 == 1))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // unlabeled posets: 1, 2, 5, 16, 63
        let counts: Vec<usize> = (1..=5).map(|n| posets(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 16, 63]);
    }

    #[test]
    fn two_point_order_is_antichain_then_chain() {
        let ps = posets(2);
        assert!(!ps[0].leq[0][1] && !ps[0].leq[1][0]);
        assert!(ps[1].leq[0][1] && !ps[1].leq[1][0]);
    }

    #[test]
    fn chain_up_sets() {
        let chain = &posets(2)[1];
        assert_eq!(chain.up_sets(), vec![0b00, 0b10, 0b11]);
        assert_eq!(posets(2)[0].up_sets().len(), 4);
    }
}
