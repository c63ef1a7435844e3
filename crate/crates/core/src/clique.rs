//! Maximum clique by branch and bound on packed bit sets, with greedy
//! sequential coloring as the upper bound.
//!
//! Vertices are renumbered by non-increasing degree before the search so
//! that the coloring sees high-degree vertices first; results are reported
//! in the caller's numbering.

use crate::bits::BitSet;
use crate::budget::{Budget, Meter, SearchStats};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Sorted vertex list of the best clique found.
    pub clique: Vec<usize>,
    /// False when the budget ran out before optimality was proven.
    pub exact: bool,
    pub stats: SearchStats,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.clique.len()
    }
}

struct Search<'a> {
    adj: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
    meter: &'a mut Meter,
}

impl Search<'_> {
    /// Greedy coloring of `candidates`; returns vertices whose color is at
    /// least `min_color`, ordered by nondecreasing color.
    fn color(&self, candidates: &BitSet, min_color: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = candidates.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class = uncolored.clone();
            while let Some(v) = class.first() {
                uncolored.remove(v);
                class.remove(v);
                class.difference_with(&self.adj[v]);
                if color >= min_color {
                    out.push((v, color));
                }
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: BitSet) {
        if !self.meter.tick() {
            return;
        }
        let min_color = (self.best.len() + 1).saturating_sub(self.current.len());
        let colored = self.color(&candidates, min_color);
        for &(v, color) in colored.iter().rev() {
            if self.current.len() + color <= self.best.len() || self.meter.exhausted() {
                return;
            }
            self.current.push(v);
            let next = candidates.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }
}

/// Vertex order by non-increasing degree, ties by index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn renumbered(g: &Graph, order: &[usize]) -> Vec<BitSet> {
    let n = g.vertex_count();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| BitSet::from_indices(n, g.neighbors(v).iter().map(|u| pos[u])))
        .collect()
}

pub fn max_clique(g: &Graph, budget: Budget) -> CliqueResult {
    let n = g.vertex_count();
    let order = degree_order(g);
    let adj = renumbered(g, &order);
    let mut meter = Meter::new(budget);

    // greedy seed
    let mut seed: Vec<usize> = Vec::new();
    for v in 0..n {
        if seed.iter().all(|&u| adj[u].contains(v)) {
            seed.push(v);
        }
    }
    let mut search = Search {
        adj,
        best: seed,
        current: Vec::new(),
        meter: &mut meter,
    };
    search.expand(BitSet::full(n));
    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    CliqueResult {
        clique,
        exact: !meter.exhausted(),
        stats: meter.stats(),
    }
}

/// Every clique of exactly `size` vertices, each sorted, up to `limit` of
/// them. Returns `None` if more than `limit` exist.
pub fn cliques_of_size(g: &Graph, size: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn walk(
        g: &Graph,
        size: usize,
        limit: usize,
        current: &mut Vec<usize>,
        candidates: BitSet,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if current.len() == size {
            if out.len() == limit {
                return false;
            }
            out.push(current.clone());
            return true;
        }
        if current.len() + candidates.count() < size {
            return true;
        }
        let mut rest = candidates;
        while let Some(v) = rest.first() {
            rest.remove(v);
            if current.len() + 1 + rest.count() < size {
                break;
            }
            current.push(v);
            let next = rest.intersection(g.neighbors(v));
            let ok = walk(g, size, limit, current, next, out);
            current.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let complete = walk(
        g,
        size,
        limit,
        &mut Vec::new(),
        BitSet::full(g.vertex_count()),
        &mut out,
    );
    complete.then_some(out)
}
