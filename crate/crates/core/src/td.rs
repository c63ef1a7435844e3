//! Tree decompositions: representation, validation and the star
//! construction around an independent set.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::VertexSet;
use crate::graph::Graph;

pub use crate::pace::{read_td, write_td};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdError {
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("decomposition covers {decomposition} vertices but the graph has {graph}")]
    VertexCountMismatch { graph: usize, decomposition: usize },
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
}

/// A tree on nodes `0..bags.len()` with one vertex bag per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    vertex_count: usize,
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags must all range over `0..vertex_count`. Tree shape is checked by
    /// [`validate`], not here.
    pub fn new(
        vertex_count: usize,
        bags: Vec<VertexSet>,
        edges: Vec<(usize, usize)>,
    ) -> TreeDecomposition {
        assert!(
            bags.iter().all(|b| b.capacity() == vertex_count),
            "bag capacity must equal the vertex count"
        );
        TreeDecomposition {
            vertex_count,
            bags,
            edges,
        }
    }

    /// One bag holding every vertex.
    pub fn trivial(vertex_count: usize) -> TreeDecomposition {
        TreeDecomposition::new(
            vertex_count,
            vec![VertexSet::full(vertex_count)],
            Vec::new(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(VertexSet::count).max().unwrap_or(0)
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Adjacency lists of the tree, or why the edge list is not a tree.
    pub fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>, TdError> {
        let nodes = self.bags.len();
        if nodes == 0 {
            return Err(TdError::MalformedTree("no nodes".into()));
        }
        if self.edges.len() != nodes - 1 {
            return Err(TdError::MalformedTree(format!(
                "{} edges on {} nodes",
                self.edges.len(),
                nodes
            )));
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            if a >= nodes || b >= nodes {
                return Err(TdError::MalformedTree(format!(
                    "edge {a}-{b} leaves the node range"
                )));
            }
            if a == b {
                return Err(TdError::MalformedTree(format!("self-loop at node {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // n-1 edges + connected = tree
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != nodes {
            return Err(TdError::MalformedTree("tree edges are disconnected".into()));
        }
        Ok(adj)
    }
}

/// A violated decomposition condition with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// A vertex in no bag.
    UncoveredVertex(usize),
    /// An edge `(u, v)`, `u < v`, whose ends share no bag.
    UncoveredEdge(usize, usize),
    /// A vertex whose bags do not form a connected subtree.
    DisconnectedVertex(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredVertex(v) => write!(f, "vertex {} is in no bag", v + 1),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {}-{} is in no bag", u + 1, v + 1),
            Violation::DisconnectedVertex(v) => {
                write!(f, "bags containing vertex {} are disconnected", v + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub width: usize,
    /// At most one entry per condition, the first witness in vertex order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks vertex coverage, edge coverage and subtree connectivity.
pub fn validate(g: &Graph, d: &TreeDecomposition) -> Result<ValidationReport, TdError> {
    if g.vertex_count() != d.vertex_count {
        return Err(TdError::VertexCountMismatch {
            graph: g.vertex_count(),
            decomposition: d.vertex_count,
        });
    }
    let adj = d.tree_adjacency()?;
    let n = g.vertex_count();
    let mut violations = Vec::new();

    // node lists per vertex
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in d.bags.iter().enumerate() {
        for v in bag.iter() {
            holders[v].push(node);
        }
    }

    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        violations.push(Violation::UncoveredVertex(v));
    }

    let uncovered_edge = (0..n).into_par_iter().find_map_first(|u| {
        let mut reach = VertexSet::new(n);
        for &node in &holders[u] {
            reach.union_with(&d.bags[node]);
        }
        g.neighbors(u)
            .difference(&reach)
            .iter()
            .find(|&v| v > u)
            .map(|v| (u, v))
    });
    if let Some((u, v)) = uncovered_edge {
        violations.push(Violation::UncoveredEdge(u, v));
    }

    let disconnected = (0..n).into_par_iter().find_first(|&v| {
        let Some(&start) = holders[v].first() else {
            return false;
        };
        let mut seen = vec![false; d.bags.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] && d.bags[y].contains(v) {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached != holders[v].len()
    });
    if let Some(v) = disconnected {
        violations.push(Violation::DisconnectedVertex(v));
    }

    Ok(ValidationReport {
        width: d.width(),
        violations,
    })
}

/// Center bag `V \ I` with one leaf `{v} ∪ N(v)` per `v` in the independent
/// set `I`. Width is `max(|V| - |I| - 1, max_{v in I} deg v)`.
pub fn star_decomposition(
    g: &Graph,
    independent: &VertexSet,
) -> Result<TreeDecomposition, TdError> {
    let n = g.vertex_count();
    if independent.capacity() != n {
        return Err(TdError::VertexCountMismatch {
            graph: n,
            decomposition: independent.capacity(),
        });
    }
    for u in independent.iter() {
        if let Some(v) = g.neighbors(u).intersection(independent).first() {
            return Err(TdError::NotIndependent(u.min(v), u.max(v)));
        }
    }
    let mut bags = vec![independent.complement()];
    let mut edges = Vec::new();
    for v in independent.iter() {
        let mut leaf = g.neighbors(v).clone();
        leaf.insert(v);
        edges.push((0, bags.len()));
        bags.push(leaf);
    }
    Ok(TreeDecomposition::new(n, bags, edges))
}
