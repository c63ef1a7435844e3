//! Exhaustive search for small balanced vertex separators.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::Graph;

use super::masks::{bits, full_mask, MaskGraph};

/// Largest graph the search accepts.
pub const MAX_SEPARATOR_VERTICES: usize = 40;
/// Largest separator size the search accepts.
pub const MAX_SEPARATOR_SIZE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("separator search handles at most {vertex_limit} vertices and size cap {size_limit}, got {vertices} and {cap}")]
    SearchSpaceTooLarge {
        vertices: usize,
        cap: usize,
        vertex_limit: usize,
        size_limit: usize,
    },
    #[error("balance must lie in [2/3, 1), got {num}/{den}")]
    InvalidBalance { num: u64, den: u64 },
}

/// Balance fraction `num/den` in `[2/3, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Balance {
    num: u64,
    den: u64,
}

impl Default for Balance {
    fn default() -> Balance {
        Balance { num: 2, den: 3 }
    }
}

impl Balance {
    pub fn new(num: u64, den: u64) -> Result<Balance, SeparatorError> {
        if den == 0 || num >= den || 3 * num < 2 * den {
            return Err(SeparatorError::InvalidBalance { num, den });
        }
        Ok(Balance { num, den })
    }

    /// Allowed sizes `[ceil((1-p) m), floor(p m)]` for each side.
    fn side_range(self, m: usize) -> (usize, usize) {
        let m = m as u64;
        let lo = ((self.den - self.num) * m).div_ceil(self.den);
        let hi = self.num * m / self.den;
        (lo as usize, hi as usize)
    }
}

/// A separator `X` with the rest of the vertices split into `A` and `B`,
/// no edges between `A` and `B`, and both sides within the balance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorWitness {
    pub separator: Vec<usize>,
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
}

impl SeparatorWitness {
    /// Checks the witness against `g` from scratch.
    pub fn verify(&self, g: &Graph, balance: Balance) -> bool {
        let n = g.vertex_count();
        let mut side = vec![0u8; n];
        for (tag, part) in [(1, &self.separator), (2, &self.part_a), (3, &self.part_b)] {
            for &v in part {
                if v >= n || side[v] != 0 {
                    return false;
                }
                side[v] = tag;
            }
        }
        if side.contains(&0) {
            return false;
        }
        if g.edges().any(|(u, v)| side[u] * side[v] == 6) {
            return false;
        }
        let (lo, hi) = balance.side_range(n - self.separator.len());
        [&self.part_a, &self.part_b]
            .iter()
            .all(|p| (lo..=hi).contains(&p.len()))
    }
}

fn components(adj: &[u64], vertices: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = vertices;
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let reach = bits(frontier).fold(0, |m, v| m | adj[v]) & vertices & !comp;
            comp |= reach;
            frontier = reach;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// Union of components whose total size lies in `[lo, hi]`, by subset sum.
fn pick_side(comps: &[u64], lo: usize, hi: usize) -> Option<u64> {
    // reach[s] = mask of components giving sum s
    let mut reach: Vec<Option<u64>> = vec![None; hi + 1];
    reach[0] = Some(0);
    for (i, c) in comps.iter().enumerate() {
        let size = c.count_ones() as usize;
        for s in (size..=hi).rev() {
            if reach[s].is_none() {
                if let Some(prev) = reach[s - size] {
                    reach[s] = Some(prev | 1 << i);
                }
            }
        }
    }
    (lo..=hi)
        .find_map(|s| reach[s])
        .map(|chosen| bits(chosen).fold(0, |m, i| m | comps[i]))
}

/// Smallest balanced separator of size at most `size_cap`, trying sizes in
/// increasing order and separators of one size in lexicographic order.
/// `Ok(None)` certifies that none exists within the cap.
pub fn balanced_separator_search(
    g: &Graph,
    size_cap: usize,
    balance: Balance,
) -> Result<Option<SeparatorWitness>, SeparatorError> {
    let n = g.vertex_count();
    if n > MAX_SEPARATOR_VERTICES || size_cap > MAX_SEPARATOR_SIZE {
        return Err(SeparatorError::SearchSpaceTooLarge {
            vertices: n,
            cap: size_cap,
            vertex_limit: MAX_SEPARATOR_VERTICES,
            size_limit: MAX_SEPARATOR_SIZE,
        });
    }
    let adj = MaskGraph::from_graph(g).adj;
    let all = full_mask(n);
    for size in 0..=size_cap.min(n) {
        for x in (0..n).combinations(size) {
            let xmask = x.iter().fold(0u64, |m, &v| m | 1 << v);
            let rest = all & !xmask;
            let m = rest.count_ones() as usize;
            let (lo, hi) = balance.side_range(m);
            if let Some(a) = pick_side(&components(&adj, rest), lo, hi) {
                return Ok(Some(SeparatorWitness {
                    separator: x,
                    part_a: bits(a).collect(),
                    part_b: bits(rest & !a).collect(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid, path, petersen, random_graph};
    use proptest::prelude::*;

    fn find(g: &Graph, cap: usize) -> Option<SeparatorWitness> {
        balanced_separator_search(g, cap, Balance::default()).unwrap()
    }

    #[test]
    fn path_splits_in_the_middle() {
        let w = find(&path(5), 1).unwrap();
        assert_eq!(w.separator, vec![2]);
        assert_eq!(w.part_a.len(), 2);
        assert!(w.verify(&path(5), Balance::default()));
    }

    #[test]
    fn cliques_have_no_small_separator() {
        assert_eq!(find(&complete(5), 3), None);
        // removing everything leaves an empty, trivially balanced split
        assert_eq!(find(&complete(5), 5).unwrap().separator.len(), 5);
        // a single leftover vertex cannot be split within the balance
        assert_eq!(find(&complete(5), 4), None);
    }

    #[test]
    fn known_graphs() {
        let p = petersen();
        let w = find(&p, 5).unwrap();
        assert!(w.verify(&p, Balance::default()));
        assert_eq!(find(&cycle(8), 2).unwrap().separator.len(), 2);
        assert_eq!(find(&cycle(8), 1), None);
        let g = grid(4, 4);
        assert_eq!(find(&g, 4).unwrap().separator.len(), 4);
        // disconnected graphs need no separator when components balance
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(find(&two, 0).unwrap().separator.is_empty());
    }

    #[test]
    fn balance_validation() {
        assert!(Balance::new(2, 3).is_ok());
        assert!(Balance::new(3, 4).is_ok());
        assert!(Balance::new(1, 2).is_err());
        assert!(Balance::new(1, 1).is_err());
        assert!(Balance::new(1, 0).is_err());
        assert_eq!(Balance::default().side_range(7), (3, 4));
        assert_eq!(Balance::default().side_range(0), (0, 0));
        assert!(matches!(
            balanced_separator_search(&Graph::empty(41), 1, Balance::default()),
            Err(SeparatorError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn witness_verification_rejects_bad_splits() {
        let g = path(5);
        let bad = SeparatorWitness {
            separator: vec![2],
            part_a: vec![0, 1, 3],
            part_b: vec![4],
        };
        assert!(!bad.verify(&g, Balance::default()));
        let unbalanced = SeparatorWitness {
            separator: vec![1],
            part_a: vec![0],
            part_b: vec![2, 3, 4],
        };
        assert!(!unbalanced.verify(&g, Balance::default()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn found_separators_verify_and_are_minimal(n in 4usize..12, p in 0.1f64..0.7, seed in 0u64..1000) {
            let g = random_graph(n, p, seed);
            let w = find(&g, n).unwrap();
            prop_assert!(w.verify(&g, Balance::default()));
            if !w.separator.is_empty() {
                prop_assert_eq!(find(&g, w.separator.len() - 1), None);
            }
        }
    }
}
