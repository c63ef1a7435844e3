//! Graphs on at most 64 vertices as one `u64` neighbor mask per vertex.

use crate::graph::Graph;

#[inline]
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Adjacency masks plus the set of vertices still present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MaskGraph {
    pub adj: Vec<u64>,
    pub alive: u64,
}

impl MaskGraph {
    pub fn from_graph(g: &Graph) -> MaskGraph {
        let n = g.vertex_count();
        assert!(n <= 64, "mask graphs hold at most 64 vertices");
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
            .collect();
        MaskGraph {
            adj,
            alive: full_mask(n),
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn alive_count(&self) -> usize {
        self.alive.count_ones() as usize
    }

    /// Makes the neighborhood of `v` a clique and deletes `v`.
    pub fn eliminate(&mut self, v: usize) {
        let nb = self.adj[v];
        for u in bits(nb) {
            self.adj[u] = (self.adj[u] | nb) & !(1 << u) & !(1 << v);
        }
        self.adj[v] = 0;
        self.alive &= !(1 << v);
    }

    pub fn is_simplicial(&self, v: usize) -> bool {
        let nb = self.adj[v];
        bits(nb).all(|u| nb & !(1 << u) & !self.adj[u] == 0)
    }

    /// Number of missing edges inside `N(v)`.
    pub fn fill_in(&self, v: usize) -> usize {
        let nb = self.adj[v];
        bits(nb)
            .map(|u| (nb & !(1 << u) & !self.adj[u]).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    fn min_degree_vertex(&self) -> Option<usize> {
        bits(self.alive).min_by_key(|&v| (self.degree(v), v))
    }

    /// Minor-min-width: repeatedly record the minimum degree and contract
    /// a minimum-degree vertex into its minimum-degree neighbor.
    pub fn minor_min_width(&self) -> usize {
        let mut g = self.clone();
        let mut lb = 0;
        while g.alive_count() > 1 {
            let v = g.min_degree_vertex().unwrap();
            let d = g.degree(v);
            lb = lb.max(d);
            if d == 0 {
                g.alive &= !(1 << v);
                continue;
            }
            let u = bits(g.adj[v]).min_by_key(|&u| (g.degree(u), u)).unwrap();
            // contract v into u
            let nv = g.adj[v] & !(1 << u);
            for w in bits(nv) {
                g.adj[w] = (g.adj[w] & !(1 << v)) | 1 << u;
            }
            g.adj[u] = (g.adj[u] | nv) & !(1 << v);
            g.adj[v] = 0;
            g.alive &= !(1 << v);
        }
        lb
    }
}
