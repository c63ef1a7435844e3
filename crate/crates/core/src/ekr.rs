//! Intersecting families as independent sets of `K_q(n,k,t)`.
//!
//! The two extremal families are the point pencil (every vertex containing
//! a fixed `t`-subspace) and, when `n = 2k`, the nest (every vertex inside a
//! fixed `(n-t)`-subspace). The exact solver checks their optimality on small
//! instances.

use std::fmt::Write as _;
use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::bits::VertexSet;
use crate::budget::{Budget, SearchStats};
use crate::clique::{cliques_of_size, max_clique};
use crate::gf::FieldSpec;
use crate::graph::Graph;
use crate::qcount::Params;
use crate::subspace::{Subspace, SubspaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EkrError {
    #[error("graph was not built from subspaces")]
    MissingLabels,
    #[error("expected a subspace of dimension {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("nest families need n = 2k, got n={n} k={k}")]
    NotHalfDimension { n: u32, k: u32 },
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

fn params_of(g: &Graph) -> Result<&Params, EkrError> {
    g.params()
        .filter(|_| !g.labels().is_empty())
        .ok_or(EkrError::MissingLabels)
}

fn members_where<F>(g: &Graph, mut keep: F) -> Result<VertexSet, EkrError>
where
    F: FnMut(&Subspace) -> Result<bool, SubspaceError>,
{
    let mut out = VertexSet::new(g.vertex_count());
    for (v, label) in g.labels().iter().enumerate() {
        if keep(label)? {
            out.insert(v);
        }
    }
    Ok(out)
}

/// All vertices containing the `t`-subspace `center`.
pub fn point_pencil(g: &Graph, center: &Subspace) -> Result<VertexSet, EkrError> {
    let p = params_of(g)?;
    if center.dim() != p.t as usize {
        return Err(EkrError::DimMismatch {
            expected: p.t as usize,
            got: center.dim(),
        });
    }
    members_where(g, |label| label.contains(center))
}

/// All vertices contained in the `(n-t)`-subspace `ambient`; needs `n = 2k`.
pub fn nest_family(g: &Graph, ambient: &Subspace) -> Result<VertexSet, EkrError> {
    let p = params_of(g)?;
    if p.n != 2 * p.k {
        return Err(EkrError::NotHalfDimension { n: p.n, k: p.k });
    }
    let expected = (p.n - p.t) as usize;
    if ambient.dim() != expected {
        return Err(EkrError::DimMismatch {
            expected,
            got: ambient.dim(),
        });
    }
    members_where(g, |label| ambient.contains(label))
}

/// `span{e_1, ..., e_d}` in `F_q^n`.
pub fn coordinate_subspace(
    field: &Arc<FieldSpec>,
    n: usize,
    d: usize,
) -> Result<Subspace, EkrError> {
    let coords: Vec<usize> = (0..d).collect();
    Ok(Subspace::coordinate(field, n, &coords)?)
}

/// Point pencil around `span{e_1, ..., e_t}`.
pub fn standard_pencil(g: &Graph) -> Result<VertexSet, EkrError> {
    let p = params_of(g)?;
    let field = g.labels()[0].field();
    point_pencil(g, &coordinate_subspace(field, p.n as usize, p.t as usize)?)
}

/// Nest inside `span{e_1, ..., e_(n-t)}`.
pub fn standard_nest(g: &Graph) -> Result<VertexSet, EkrError> {
    let p = params_of(g)?;
    let field = g.labels()[0].field();
    nest_family(
        g,
        &coordinate_subspace(field, p.n as usize, (p.n - p.t) as usize)?,
    )
}

/// Whether no two members of `s` are adjacent.
pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).is_disjoint(s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    /// Size of `witness`; the independence number when `exact`.
    pub size: usize,
    pub witness: VertexSet,
    /// False when the budget ran out; `size` is then only a lower bound.
    pub exact: bool,
    pub stats: SearchStats,
}

/// Maximum independent set as a maximum clique of the complement.
pub fn max_independent_set_exact(g: &Graph, budget: Budget) -> MisResult {
    let r = max_clique(&g.complement(), budget);
    MisResult {
        size: r.size(),
        witness: VertexSet::from_indices(g.vertex_count(), r.clique.iter().copied()),
        exact: r.exact,
        stats: r.stats,
    }
}

/// All independent sets with exactly `size` members, or `None` if there are
/// more than `limit`.
pub fn independent_sets_of_size(g: &Graph, size: usize, limit: usize) -> Option<Vec<VertexSet>> {
    let n = g.vertex_count();
    cliques_of_size(&g.complement(), size, limit).map(|all| {
        all.into_iter()
            .map(|c| VertexSet::from_indices(n, c))
            .collect()
    })
}

/// Which extremal shape a family has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// Exactly the vertices containing this `t`-subspace.
    PointPencil(Subspace),
    /// Exactly the vertices inside this `(n-t)`-subspace.
    Nest(Subspace),
    Other,
}

pub fn classify_family(g: &Graph, s: &VertexSet) -> Result<FamilyKind, EkrError> {
    let p = params_of(g)?;
    let members: Vec<&Subspace> = s.iter().map(|v| &g.labels()[v]).collect();
    let Some((first, rest)) = members.split_first() else {
        return Ok(FamilyKind::Other);
    };
    let mut common = (*first).clone();
    let mut span = (*first).clone();
    for m in rest {
        common = common.intersection(m)?;
        span = span.sum(m)?;
    }
    if common.dim() == p.t as usize && point_pencil(g, &common)? == *s {
        return Ok(FamilyKind::PointPencil(common));
    }
    if p.n == 2 * p.k && span.dim() == (p.n - p.t) as usize && nest_family(g, &span)? == *s {
        return Ok(FamilyKind::Nest(span));
    }
    Ok(FamilyKind::Other)
}

/// Witness as sorted 1-indexed vertex ids, one per line.
pub fn format_witness(s: &VertexSet) -> String {
    let mut out = String::new();
    for v in s.iter() {
        writeln!(out, "{}", v + 1).unwrap();
    }
    out
}

/// Inverse of [`format_witness`].
pub fn parse_witness(text: &str, vertex_count: usize) -> Option<VertexSet> {
    let ids: Vec<usize> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<usize>()
                .ok()
                .filter(|&v| 1 <= v && v <= vertex_count)
        })
        .collect::<Option<_>>()?;
    ids.iter()
        .tuple_windows()
        .all(|(a, b)| a < b)
        .then(|| VertexSet::from_indices(vertex_count, ids.iter().map(|v| v - 1)))
}
