//! Elimination orderings: greedy heuristics, width, and conversion to a
//! tree decomposition.

use crate::bits::BitSet;
use crate::graph::Graph;
use crate::td::TreeDecomposition;

use super::masks::{bits, MaskGraph};

/// Eliminates vertices in `order` on a packed-bit fill graph and calls
/// `visit(v, higher)` with the neighbors of `v` still present.
fn eliminate_all(g: &Graph, order: &[usize], mut visit: impl FnMut(usize, &BitSet)) {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "ordering must list every vertex once");
    let mut adj: Vec<BitSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut seen = BitSet::new(n);
    for &v in order {
        assert!(!seen.contains(v), "vertex {v} repeated in ordering");
        seen.insert(v);
        let higher = adj[v].clone();
        visit(v, &higher);
        for u in higher.iter() {
            adj[u].union_with(&higher);
            adj[u].remove(u);
            adj[u].remove(v);
        }
    }
}

/// Largest number of later neighbors a vertex has when eliminated.
pub fn ordering_width(g: &Graph, order: &[usize]) -> usize {
    let mut width = 0;
    eliminate_all(g, order, |_, higher| width = width.max(higher.count()));
    width
}

/// One bag `{v} ∪ later neighbors` per vertex, attached to the bag of its
/// earliest later neighbor. Roots of the resulting forest are chained.
pub fn ordering_to_decomposition(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = vec![BitSet::new(n); n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut last_root: Option<usize> = None;
    eliminate_all(g, order, |v, higher| {
        let mut bag = higher.clone();
        bag.insert(v);
        bags[pos[v]] = bag;
        match higher.iter().min_by_key(|&u| pos[u]) {
            Some(parent) => edges.push((pos[v], pos[parent])),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, pos[v]));
                }
                last_root = Some(pos[v]);
            }
        }
    });
    TreeDecomposition::new(n, bags, edges)
}

/// Ordering as 1-indexed vertex ids, one per line.
pub fn format_ordering(order: &[usize]) -> String {
    order.iter().map(|v| format!("{}\n", v + 1)).collect()
}

/// Inverse of [`format_ordering`]; `None` unless the text lists each of the
/// `vertex_count` vertices exactly once.
pub fn parse_ordering(text: &str, vertex_count: usize) -> Option<Vec<usize>> {
    let order: Vec<usize> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<usize>()
                .ok()
                .filter(|&v| 1 <= v && v <= vertex_count)
                .map(|v| v - 1)
        })
        .collect::<Option<_>>()?;
    let mut seen = BitSet::new(vertex_count);
    for &v in &order {
        if seen.contains(v) {
            return None;
        }
        seen.insert(v);
    }
    (order.len() == vertex_count).then_some(order)
}

/// Greedy ordering picking the vertex with the fewest fill edges, ties by
/// degree and then index.
pub(crate) fn min_fill_ordering(m: &MaskGraph) -> Vec<usize> {
    greedy(m, |g, v| (g.fill_in(v), g.degree(v)))
}

/// Greedy ordering picking a vertex of minimum current degree.
pub(crate) fn min_degree_ordering(m: &MaskGraph) -> Vec<usize> {
    greedy(m, |g, v| (g.degree(v), g.fill_in(v)))
}

fn greedy(m: &MaskGraph, key: impl Fn(&MaskGraph, usize) -> (usize, usize)) -> Vec<usize> {
    let mut g = m.clone();
    let mut order = Vec::with_capacity(g.alive_count());
    while g.alive != 0 {
        let v = bits(g.alive).min_by_key(|&v| (key(&g, v), v)).unwrap();
        order.push(v);
        g.eliminate(v);
    }
    order
}
