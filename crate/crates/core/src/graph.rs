//! Dense simple graphs with packed adjacency rows, and the constructors for
//! generalized q-Kneser graphs.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::bits::BitSet;
use crate::gf::{make_field, GfError};
use crate::qcount::{self, Count, CountError, Params};
use crate::subspace::{self, Subspace, SubspaceError};

/// Largest vertex count built without an explicit override.
pub const DEFAULT_VERTEX_LIMIT: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Params(#[from] CountError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("graph would have {count} vertices, above the limit of {limit}")]
    TooLarge { count: Count, limit: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BitSet>,
    labels: Vec<Subspace>,
    params: Option<Params>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            adjacency: vec![BitSet::new(n); n],
            labels: Vec::new(),
            params: None,
        }
    }

    pub fn complete(n: usize) -> Graph {
        let adjacency = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        Graph {
            adjacency,
            labels: Vec::new(),
            params: None,
        }
    }

    /// Graph on `n` vertices with the given 0-indexed edges; repeated edges
    /// collapse into one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Subspace labels in vertex order; empty for graphs not built from
    /// subspaces.
    pub fn labels(&self) -> &[Subspace] {
        &self.labels
    }

    pub fn params(&self) -> Option<&Params> {
        self.params.as_ref()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .sum::<usize>()
            / 2
    }

    pub fn is_regular(&self) -> bool {
        let mut degrees = (0..self.vertex_count()).map(|v| self.degree(v));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.adjacency[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut c = row.complement();
                c.remove(v);
                c
            })
            .collect();
        Graph {
            adjacency,
            labels: self.labels.clone(),
            params: None,
        }
    }

    /// Subgraph induced on `keep`, renumbered in increasing vertex order.
    pub fn induced(&self, keep: &BitSet) -> Graph {
        let vertices = keep.to_vec();
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adjacency[i].insert(j);
                    g.adjacency[j].insert(i);
                }
            }
        }
        g
    }

    /// `hist[m]` = number of vertices whose label meets the label of `v` in
    /// an `m`-dimensional subspace (including `v` itself).
    pub fn intersection_histogram(&self, v: usize) -> Option<Vec<usize>> {
        let base = self.labels.get(v)?;
        let mut hist = vec![0usize; base.dim() + 1];
        let mut scratch = Vec::new();
        for other in &self.labels {
            hist[base.dim_intersection_unchecked(other, &mut scratch)] += 1;
        }
        Some(hist)
    }
}

/// Builds `K_q(n,k,t)`: vertices are the `k`-subspaces of `F_q^n` in
/// enumeration order, adjacent when they meet in dimension below `t`.
pub fn build_qkneser(p: &Params) -> Result<Graph, GraphError> {
    build_qkneser_with_limit(p, DEFAULT_VERTEX_LIMIT)
}

pub fn build_qkneser_with_limit(p: &Params, limit: usize) -> Result<Graph, GraphError> {
    p.validate()?;
    let field = Arc::new(make_field(p.q)?);
    let count = qcount::gauss(p.n as i64, p.k as i64, p.q)?;
    if count.to_usize().is_none_or(|c| c > limit) {
        return Err(GraphError::TooLarge { count, limit });
    }
    let labels = subspace::enumerate_with_limit(&field, p.n as usize, p.k as usize, limit)?;
    let n = labels.len();
    let t = p.t as usize;
    let adjacency: Vec<BitSet> = labels
        .par_iter()
        .enumerate()
        .map_init(Vec::new, |scratch, (u, a)| {
            let mut row = BitSet::new(n);
            for (v, b) in labels.iter().enumerate() {
                if v != u && a.dim_intersection_unchecked(b, scratch) < t {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    Ok(Graph {
        adjacency,
        labels,
        params: Some(*p),
    })
}

/// Complement of the Grassmann graph, i.e. `K_q(n,k,k-1)`.
pub fn build_cograssmann(n: u32, k: u32, q: u64) -> Result<Graph, GraphError> {
    build_cograssmann_with_limit(n, k, q, DEFAULT_VERTEX_LIMIT)
}

pub fn build_cograssmann_with_limit(
    n: u32,
    k: u32,
    q: u64,
    limit: usize,
) -> Result<Graph, GraphError> {
    let p = Params::new(n, k, k.saturating_sub(1), q)?;
    build_qkneser_with_limit(&p, limit)
}
