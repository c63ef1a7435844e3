//! Small reference graphs for testing the solvers.

use itertools::Itertools;
use rand::{Rng, SeedableRng};

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::complete(n)
}

/// `rows x cols` grid, vertex `(i, j)` numbered `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::empty(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                g.add_edge(v, v + 1).unwrap();
            }
            if i + 1 < rows {
                g.add_edge(v, v + cols).unwrap();
            }
        }
    }
    g
}

/// Set Kneser graph `K(m, r)`: `r`-subsets of `{0..m}` in lex order,
/// adjacent when disjoint.
pub fn set_kneser(m: usize, r: usize) -> Graph {
    let sets: Vec<Vec<usize>> = (0..m).combinations(r).collect();
    let mut g = Graph::empty(sets.len());
    for (a, b) in (0..sets.len()).tuple_combinations() {
        if sets[a].iter().all(|x| !sets[b].contains(x)) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// The Petersen graph as `K(5, 2)`.
pub fn petersen() -> Graph {
    set_kneser(5, 2)
}

/// Erdős–Rényi `G(n, p)` from a seeded generator.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for (u, v) in (0..n).tuple_combinations() {
        if rng.gen_bool(p) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random labelled tree: each vertex `i > 0` attaches to a uniform earlier one.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for i in 1..n {
        g.add_edge(rng.gen_range(0..i), i).unwrap();
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(grid(3, 4).edge_count(), 17);
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.is_regular() && p.degree(0) == 3);
        assert_eq!(random_tree(20, 3).edge_count(), 19);
        assert_eq!(random_graph(10, 1.0, 0), Graph::complete(10));
    }
}
