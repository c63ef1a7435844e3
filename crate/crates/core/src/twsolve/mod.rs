//! Exact treewidth for graphs of at most 64 vertices, and balanced
//! separator search.
//!
//! The solver brackets the answer between `max(ω - 1, mmw)` and the best of
//! the min-fill and min-degree orderings, then decides `tw <= k` for
//! increasing `k` by depth-first search over elimination prefixes. Prefixes
//! are memoized by the set of vertices still present, which is all the
//! remaining search depends on.

mod masks;
mod ordering;
mod separator;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::budget::{Budget, Meter, SearchStats};
use crate::clique::max_clique;
use crate::graph::Graph;
use crate::td::TreeDecomposition;

use masks::{bits, MaskGraph};
pub use ordering::{format_ordering, ordering_to_decomposition, ordering_width, parse_ordering};
pub use separator::{balanced_separator_search, Balance, SeparatorError, SeparatorWitness};

/// Vertex limit of the exact solver.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("exact treewidth handles at most {limit} vertices, got {count}")]
    TooManyVertices { count: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Exact,
    /// Budget ran out; the treewidth lies in `[lower, upper]`.
    Bracketed,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Exact => "exact",
            SolveStatus::Bracketed => "bracketed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub lower: usize,
    pub upper: usize,
    pub status: SolveStatus,
    /// Elimination ordering of width `upper`.
    pub ordering: Vec<usize>,
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == SolveStatus::Exact).then_some(self.upper)
    }

    /// Tree decomposition of width `upper` built from the certificate.
    pub fn decomposition(&self, g: &Graph) -> TreeDecomposition {
        ordering_to_decomposition(g, &self.ordering)
    }
}

/// Clique number `ω(G)`, so `ω - 1 <= tw`. A clique found before the
/// budget ran out still gives a valid bound.
pub fn clique_lower_bound(g: &Graph, budget: Budget) -> usize {
    max_clique(g, budget).size()
}

/// Minor-min-width lower bound. Panics above 64 vertices.
pub fn minor_min_width(g: &Graph) -> usize {
    MaskGraph::from_graph(g).minor_min_width()
}

/// Width and ordering of the better of the min-fill and min-degree
/// heuristics. Panics above 64 vertices.
pub fn heuristic_upper_bound(g: &Graph) -> (usize, Vec<usize>) {
    let m = MaskGraph::from_graph(g);
    [
        ordering::min_fill_ordering(&m),
        ordering::min_degree_ordering(&m),
    ]
    .into_iter()
    .map(|o| (ordering_width(g, &o), o))
    .min_by_key(|(w, _)| *w)
    .unwrap()
}

enum Decision {
    Yes,
    No,
    OutOfBudget,
}

struct Decider<'a> {
    k: usize,
    seen: HashSet<u64>,
    prefix: Vec<usize>,
    meter: &'a mut Meter,
}

impl Decider<'_> {
    fn decide(&mut self, g: &MaskGraph) -> Decision {
        if g.alive_count() <= self.k + 1 {
            return Decision::Yes;
        }
        if !self.meter.tick() {
            return Decision::OutOfBudget;
        }
        // a simplicial vertex of small degree can always go first
        if let Some(v) = bits(g.alive).find(|&v| g.degree(v) <= self.k && g.is_simplicial(v)) {
            return self.branch(g, v).unwrap_or(Decision::No);
        }
        if g.minor_min_width() > self.k {
            return Decision::No;
        }
        let k = self.k;
        for v in bits(g.alive).filter(|&v| g.degree(v) <= k) {
            match self.branch(g, v) {
                Some(Decision::No) | None => {}
                Some(other) => return other,
            }
        }
        Decision::No
    }

    /// Eliminates `v` and recurses; `None` if the resulting state was
    /// already explored.
    fn branch(&mut self, g: &MaskGraph, v: usize) -> Option<Decision> {
        if !self.seen.insert(g.alive & !(1 << v)) {
            return None;
        }
        let mut next = g.clone();
        next.eliminate(v);
        self.prefix.push(v);
        let d = self.decide(&next);
        if !matches!(d, Decision::Yes) {
            self.prefix.pop();
        }
        Some(d)
    }
}

/// Exact treewidth within `budget`; a spent budget yields a bracket.
pub fn treewidth_exact(g: &Graph, budget: Budget) -> Result<SolveResult, SolveError> {
    let n = g.vertex_count();
    if n > MAX_EXACT_VERTICES {
        return Err(SolveError::TooManyVertices {
            count: n,
            limit: MAX_EXACT_VERTICES,
        });
    }
    let mut meter = Meter::new(budget);
    if n == 0 {
        return Ok(SolveResult {
            lower: 0,
            upper: 0,
            status: SolveStatus::Exact,
            ordering: Vec::new(),
            stats: meter.stats(),
        });
    }
    let m = MaskGraph::from_graph(g);
    let (mut upper, mut best) = heuristic_upper_bound(g);
    let mut lower = clique_lower_bound(g, budget)
        .saturating_sub(1)
        .max(m.minor_min_width());
    let mut status = SolveStatus::Exact;

    while lower < upper {
        let mut decider = Decider {
            k: lower,
            seen: HashSet::new(),
            prefix: Vec::new(),
            meter: &mut meter,
        };
        match decider.decide(&m) {
            Decision::Yes => {
                let mut order = decider.prefix;
                let mut rest = m.alive;
                for &v in &order {
                    rest &= !(1 << v);
                }
                order.extend(bits(rest));
                debug_assert!(ordering_width(g, &order) <= lower);
                upper = lower;
                best = order;
            }
            Decision::No => lower += 1,
            Decision::OutOfBudget => {
                status = SolveStatus::Bracketed;
                break;
            }
        }
    }
    Ok(SolveResult {
        lower,
        upper,
        status,
        ordering: best,
        stats: meter.stats(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid, path, petersen, random_graph};
    use crate::td::validate;

    /// Treewidth by dynamic programming over vertex subsets:
    /// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)`
    /// is the set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
    fn subset_dp_treewidth(g: &Graph) -> usize {
        let n = g.vertex_count();
        let adj: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0, |m, u| m | 1 << u))
            .collect();
        let q = |s: u32, v: usize| -> usize {
            let mut seen = 1u32 << v;
            let mut stack = vec![v];
            let mut out = 0u32;
            while let Some(x) = stack.pop() {
                for u in 0..n {
                    if adj[x] >> u & 1 == 1 && seen >> u & 1 == 0 {
                        seen |= 1 << u;
                        if s >> u & 1 == 1 {
                            stack.push(u);
                        } else {
                            out |= 1 << u;
                        }
                    }
                }
            }
            out.count_ones() as usize
        };
        let mut tw = vec![usize::MAX; 1 << n];
        tw[0] = 0;
        for s in 1u32..1 << n {
            tw[s as usize] = (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| {
                    let rest = s & !(1 << v);
                    tw[rest as usize].max(q(rest, v))
                })
                .min()
                .unwrap();
        }
        tw[(1usize << n) - 1]
    }

    fn exact(g: &Graph) -> usize {
        let r = treewidth_exact(g, Budget::unlimited()).unwrap();
        assert_eq!(r.status, SolveStatus::Exact);
        assert_eq!(r.lower, r.upper);
        assert_eq!(ordering_width(g, &r.ordering), r.upper);
        let report = validate(g, &r.decomposition(g)).unwrap();
        assert!(report.is_valid());
        assert_eq!(report.width, r.upper);
        r.upper
    }

    #[test]
    fn known_values() {
        for m in 1..8 {
            assert_eq!(exact(&complete(m)), m - 1);
        }
        assert_eq!(exact(&path(4)), 1);
        assert_eq!(exact(&cycle(6)), 2);
        assert_eq!(exact(&grid(3, 3)), 3);
        assert_eq!(exact(&grid(4, 4)), 4);
        assert_eq!(exact(&petersen()), 4);
        assert_eq!(exact(&Graph::empty(5)), 0);
        assert_eq!(exact(&Graph::empty(0)), 0);
    }

    #[test]
    fn matches_subset_dp_on_random_graphs() {
        for seed in 0..80 {
            let n = 5 + (seed as usize % 8);
            let g = random_graph(n, 0.2 + 0.007 * seed as f64, seed);
            assert_eq!(exact(&g), subset_dp_treewidth(&g), "seed {seed}");
        }
    }

    #[test]
    fn oracle_sanity() {
        assert_eq!(subset_dp_treewidth(&petersen()), 4);
        assert_eq!(subset_dp_treewidth(&cycle(5)), 2);
    }

    #[test]
    fn zero_budget_brackets() {
        let g = grid(4, 4);
        let r = treewidth_exact(&g, Budget::nodes(0)).unwrap();
        assert!(r.lower <= 4 && 4 <= r.upper);
        assert_eq!(ordering_width(&g, &r.ordering), r.upper);
        if r.lower < r.upper {
            assert_eq!(r.status, SolveStatus::Bracketed);
            assert_eq!(r.value(), None);
        }
    }

    #[test]
    fn rejects_large_graphs() {
        assert_eq!(
            treewidth_exact(&Graph::empty(65), Budget::unlimited()),
            Err(SolveError::TooManyVertices {
                count: 65,
                limit: 64
            })
        );
    }
}
