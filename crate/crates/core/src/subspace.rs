//! Subspaces of `F_q^n` in reduced row echelon form.
//!
//! A [`Subspace`] stores the unique RREF basis of the space it spans, so two
//! values compare equal exactly when they are the same subspace. The derived
//! total order (pivot columns first, then the basis read row-major) is the
//! order in which [`enumerate`] yields subspaces.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, GfError};
use crate::qcount::{self, Count, CountError};

/// Default cap on the number of subspaces [`enumerate`] will produce.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("matrix has no rows")]
    EmptyMatrix,
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("dimension {k} is not between 0 and {n}")]
    InvalidDimension { n: usize, k: usize },
    #[error("{count} subspaces exceed the enumeration limit of {limit}")]
    TooLarge { count: Count, limit: usize },
}

#[derive(Clone)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    n: usize,
    pivots: Vec<usize>,
    /// `dim x n`, row-major
    basis: Vec<FieldElement>,
}

impl Subspace {
    /// The span of `rows`, given as integer element encodings.
    pub fn span(field: &Arc<FieldSpec>, rows: &[Vec<u64>]) -> Result<Subspace, SubspaceError> {
        let converted = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| field.element(v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span_elements(field, converted)
    }

    pub fn span_elements(
        field: &Arc<FieldSpec>,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<Subspace, SubspaceError> {
        let n = rows.first().ok_or(SubspaceError::EmptyMatrix)?.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SubspaceError::RaggedMatrix);
        }
        let height = rows.len();
        let mut flat: Vec<FieldElement> = rows.into_iter().flatten().collect();
        let pivots = rref(field, &mut flat, height, n);
        flat.truncate(pivots.len() * n);
        Ok(Subspace {
            field: Arc::clone(field),
            n,
            pivots,
            basis: flat,
        })
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Subspace {
        Subspace {
            field: Arc::clone(field),
            n,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    /// `span{e_i : i in coords}` (0-indexed coordinates).
    pub fn coordinate(
        field: &Arc<FieldSpec>,
        n: usize,
        coords: &[usize],
    ) -> Result<Subspace, SubspaceError> {
        if coords.is_empty() {
            return Ok(Subspace::zero(field, n));
        }
        let rows = coords
            .iter()
            .map(|&c| {
                if c >= n {
                    return Err(SubspaceError::InvalidDimension { n, k: c });
                }
                let mut r = vec![0u64; n];
                r[c] = 1;
                Ok(r)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(field, &rows)
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Ambient dimension.
    #[inline]
    pub fn ambient(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.basis[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.basis.chunks(self.n.max(1)).take(self.dim())
    }

    /// Basis coefficients as integers, row-major.
    pub fn to_row_major(&self) -> Vec<u64> {
        self.basis.iter().map(|e| e.index() as u64).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.n != other.n || *self.field != *other.field {
            Err(SubspaceError::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    /// `dim(self ∩ other)`.
    pub fn dim_intersection(&self, other: &Subspace) -> Result<usize, SubspaceError> {
        self.check_ambient(other)?;
        let mut scratch = Vec::new();
        Ok(self.dim_intersection_unchecked(other, &mut scratch))
    }

    /// `dim(self ∩ other)` for spaces already known to share an ambient
    /// space. `scratch` is reused between calls.
    pub(crate) fn dim_intersection_unchecked(
        &self,
        other: &Subspace,
        scratch: &mut Vec<FieldElement>,
    ) -> usize {
        other.dim() - self.residual_rank(other, scratch)
    }

    /// Rank of `other`'s basis after clearing the pivot columns of `self`,
    /// i.e. `dim(self + other) - dim(self)`.
    fn residual_rank(&self, other: &Subspace, buf: &mut Vec<FieldElement>) -> usize {
        let f = &*self.field;
        let n = self.n;
        buf.clear();
        buf.extend_from_slice(&other.basis);
        for row in buf.chunks_mut(n.max(1)).take(other.dim()) {
            for (r, &pc) in self.pivots.iter().enumerate() {
                let c = row[pc];
                if c.is_zero() {
                    continue;
                }
                let pivot_row = &self.basis[r * n..(r + 1) * n];
                for j in pc..n {
                    row[j] = f.sub(row[j], f.mul(c, pivot_row[j]));
                }
            }
        }
        rref(f, buf, other.dim(), n).len()
    }

    /// `dim(self + other)`.
    pub fn dim_sum(&self, other: &Subspace) -> Result<usize, SubspaceError> {
        self.check_ambient(other)?;
        let mut scratch = Vec::new();
        Ok(self.dim() + self.residual_rank(other, &mut scratch))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        Ok(self.dim_intersection(other)? == other.dim())
    }

    /// Whether the vector `v` lies in this subspace.
    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool, SubspaceError> {
        if v.len() != self.n {
            return Err(SubspaceError::AmbientMismatch);
        }
        let f = &*self.field;
        let mut rest = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = rest[pc];
            if !c.is_zero() {
                for (x, &y) in rest.iter_mut().zip(self.row(r)) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        Ok(rest.iter().all(|x| x.is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let rows: Vec<Vec<FieldElement>> = self
            .rows()
            .chain(other.rows())
            .map(|r| r.to_vec())
            .collect();
        if rows.is_empty() {
            return Ok(Subspace::zero(&self.field, self.n));
        }
        Subspace::span_elements(&self.field, rows)
    }

    /// `self ∩ other` by the Zassenhaus algorithm: row-reduce
    /// `[[A, A], [B, 0]]`; rows whose left half vanishes span the
    /// intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let n = self.n;
        let height = self.dim() + other.dim();
        if height == 0 || n == 0 {
            return Ok(Subspace::zero(&self.field, n));
        }
        let mut m = Vec::with_capacity(height * 2 * n);
        for r in self.rows() {
            m.extend_from_slice(r);
            m.extend_from_slice(r);
        }
        for r in other.rows() {
            m.extend_from_slice(r);
            m.extend(std::iter::repeat_n(FieldElement::ZERO, n));
        }
        let pivots = rref(&self.field, &mut m, height, 2 * n);
        let rows: Vec<Vec<FieldElement>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(r, _)| m[r * 2 * n + n..(r + 1) * 2 * n].to_vec())
            .collect();
        if rows.is_empty() {
            return Ok(Subspace::zero(&self.field, n));
        }
        Subspace::span_elements(&self.field, rows)
    }
}

/// Reduces the `height x width` row-major matrix in place to RREF and
/// returns the pivot columns; nonzero rows end up first.
pub fn rref(field: &FieldSpec, m: &mut [FieldElement], height: usize, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == height {
            break;
        }
        let Some(src) = (top..height).find(|&r| !m[r * width + col].is_zero()) else {
            continue;
        };
        if src != top {
            for j in 0..width {
                m.swap(src * width + j, top * width + j);
            }
        }
        let inv = field.inv(m[top * width + col]).expect("pivot is nonzero");
        for j in col..width {
            m[top * width + j] = field.mul(inv, m[top * width + j]);
        }
        for r in 0..height {
            if r == top {
                continue;
            }
            let c = m[r * width + col];
            if c.is_zero() {
                continue;
            }
            for j in col..width {
                let sub = field.mul(c, m[top * width + j]);
                m[r * width + j] = field.sub(m[r * width + j], sub);
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.pivots == other.pivots
            && self.basis == other.basis
            && *self.field == *other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.n.hash(state);
        self.pivots.hash(state);
        self.basis.hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (
            self.field.order(),
            self.n,
            self.dim(),
            &self.pivots,
            &self.basis,
        )
            .cmp(&(
                other.field.order(),
                other.n,
                other.dim(),
                &other.pivots,
                &other.basis,
            ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(q={}, n={}, {:?})",
            self.field.order(),
            self.n,
            self.to_row_major()
        )
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_row_major().iter().join(" "))
    }
}

/// Lazily yields every `k`-subspace of `F_q^n`: pivot sets in lexicographic
/// order, and within a pivot set the free RREF entries counted in base `q`
/// with the first free entry (row-major) most significant.
pub struct SubspaceIter {
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    patterns: itertools::Combinations<std::ops::Range<usize>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    digits: Vec<u32>,
    exhausted_pattern: bool,
}

impl SubspaceIter {
    pub fn new(field: &Arc<FieldSpec>, n: usize, k: usize) -> Result<SubspaceIter, SubspaceError> {
        if k > n {
            return Err(SubspaceError::InvalidDimension { n, k });
        }
        Ok(SubspaceIter {
            field: Arc::clone(field),
            n,
            k,
            patterns: (0..n).combinations(k),
            pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            exhausted_pattern: true,
        })
    }

    fn load_pattern(&mut self, pivots: Vec<usize>) {
        self.free.clear();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..self.n {
                if !pivots.contains(&c) {
                    self.free.push(r * self.n + c);
                }
            }
        }
        self.digits = vec![0; self.free.len()];
        self.pivots = pivots;
        self.exhausted_pattern = false;
    }

    fn advance_digits(&mut self) {
        let q = self.field.order();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        self.exhausted_pattern = true;
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.exhausted_pattern {
            let pivots = self.patterns.next()?;
            self.load_pattern(pivots);
        }
        let mut basis = vec![FieldElement::ZERO; self.k * self.n];
        for (r, &pc) in self.pivots.iter().enumerate() {
            basis[r * self.n + pc] = FieldElement::ONE;
        }
        for (&pos, &d) in self.free.iter().zip(&self.digits) {
            basis[pos] = self.field.element(d as u64).expect("digit below q");
        }
        let out = Subspace {
            field: Arc::clone(&self.field),
            n: self.n,
            pivots: self.pivots.clone(),
            basis,
        };
        self.advance_digits();
        Some(out)
    }
}

/// Number of `k`-subspaces of `F_q^n` for this field.
pub fn count(field: &FieldSpec, n: usize, k: usize) -> Count {
    qcount::gauss(n as i64, k as i64, field.order() as u64).expect("field order is at least 2")
}

/// All `k`-subspaces of `F_q^n` in canonical order, refusing to materialize
/// more than [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate(
    field: &Arc<FieldSpec>,
    n: usize,
    k: usize,
) -> Result<Vec<Subspace>, SubspaceError> {
    enumerate_with_limit(field, n, k, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_with_limit(
    field: &Arc<FieldSpec>,
    n: usize,
    k: usize,
    limit: usize,
) -> Result<Vec<Subspace>, SubspaceError> {
    if k > n {
        return Err(SubspaceError::InvalidDimension { n, k });
    }
    let total = count(field, n, k);
    match total.to_usize() {
        Some(c) if c <= limit => {
            let out: Vec<Subspace> = SubspaceIter::new(field, n, k)?.collect();
            debug_assert_eq!(out.len(), c);
            Ok(out)
        }
        _ => Err(SubspaceError::TooLarge {
            count: total,
            limit,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(make_field(q).unwrap())
    }

    /// Every vector of the span, by brute force over coefficient tuples.
    fn span_vectors(s: &Subspace) -> HashSet<Vec<FieldElement>> {
        let f = s.field();
        let q = f.order() as usize;
        let mut out = HashSet::new();
        for code in 0..q.pow(s.dim() as u32) {
            let mut v = vec![FieldElement::ZERO; s.ambient()];
            let mut c = code;
            for r in 0..s.dim() {
                let coef = f.element((c % q) as u64).unwrap();
                c /= q;
                for (x, &y) in v.iter_mut().zip(s.row(r)) {
                    *x = f.add(*x, f.mul(coef, y));
                }
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn canonicalize_examples() {
        let f2 = field(2);
        let s = Subspace::span(&f2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(s.to_row_major(), vec![1, 0, 0, 1]);
        let s = Subspace::span(&f2, &[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(s.to_row_major(), vec![1, 0, 1, 0, 1, 1]);
        assert_eq!(s.pivots(), &[0, 1]);
        let f5 = field(5);
        let s = Subspace::span(&f5, &[vec![2, 4]]).unwrap();
        assert_eq!(s.to_row_major(), vec![1, 2]);
        assert_eq!(Subspace::span(&f5, &[]), Err(SubspaceError::EmptyMatrix));
        assert_eq!(
            Subspace::span(&f5, &[vec![1], vec![1, 2]]),
            Err(SubspaceError::RaggedMatrix)
        );
        assert!(matches!(
            Subspace::span(&f5, &[vec![7]]),
            Err(SubspaceError::Field(_))
        ));
        let zero = Subspace::span(&f5, &[vec![0, 0, 0]]).unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn intersection_and_sum_examples() {
        let f2 = field(2);
        let e = |c: &[usize]| Subspace::coordinate(&f2, 4, c).unwrap();
        let a = e(&[0, 1]);
        assert_eq!(a.dim_intersection(&a).unwrap(), 2);
        assert_eq!(a.dim_intersection(&e(&[2, 3])).unwrap(), 0);
        assert_eq!(a.dim_intersection(&e(&[1, 2])).unwrap(), 1);
        assert_eq!(a.dim_sum(&a).unwrap(), 2);
        assert_eq!(a.dim_sum(&e(&[2, 3])).unwrap(), 4);
        assert_eq!(a.dim_sum(&e(&[1, 2])).unwrap(), 3);
        assert_eq!(a.intersection(&e(&[1, 2])).unwrap(), e(&[1]));
        assert_eq!(a.sum(&e(&[1, 2])).unwrap(), e(&[0, 1, 2]));

        let other = Subspace::coordinate(&f2, 5, &[0]).unwrap();
        assert_eq!(
            a.dim_intersection(&other),
            Err(SubspaceError::AmbientMismatch)
        );
        let f3 = Subspace::coordinate(&field(3), 4, &[0]).unwrap();
        assert_eq!(a.contains(&f3), Err(SubspaceError::AmbientMismatch));
    }

    #[test]
    fn contains_examples() {
        let f2 = field(2);
        let s = Subspace::coordinate(&f2, 3, &[0, 1]).unwrap();
        assert!(s.contains(&s).unwrap());
        assert!(s.contains(&Subspace::zero(&f2, 3)).unwrap());
        let diag = Subspace::span(&f2, &[vec![1, 1, 0]]).unwrap();
        assert!(s.contains(&diag).unwrap());
        assert!(!diag.contains(&s).unwrap());
        assert!(!s
            .contains(&Subspace::coordinate(&f2, 3, &[2]).unwrap())
            .unwrap());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(&field(2), 4, 2).unwrap().len(), 35);
        assert_eq!(enumerate(&field(3), 4, 2).unwrap().len(), 130);
        for q in [2, 3, 5] {
            let zero = enumerate(&field(q), 5, 0).unwrap();
            assert_eq!(zero.len(), 1);
            assert_eq!(zero[0].dim(), 0);
        }
        assert!(matches!(
            enumerate_with_limit(&field(2), 6, 3, 100),
            Err(SubspaceError::TooLarge { .. })
        ));
        assert!(matches!(
            enumerate(&field(2), 2, 3),
            Err(SubspaceError::InvalidDimension { .. })
        ));
    }

    #[test]
    fn enumeration_matches_span_dedup() {
        // all 2-subsets of nonzero vectors of F_2^4, deduplicated by span
        let f2 = field(2);
        let vectors: Vec<Vec<u64>> = (1..16u64)
            .map(|v| (0..4).map(|i| v >> i & 1).collect())
            .collect();
        let mut spans = HashSet::new();
        for (a, b) in vectors.iter().tuple_combinations() {
            let s = Subspace::span(&f2, &[a.clone(), b.clone()]).unwrap();
            if s.dim() == 2 {
                spans.insert(
                    span_vectors(&s)
                        .into_iter()
                        .collect::<std::collections::BTreeSet<_>>(),
                );
            }
        }
        assert_eq!(spans.len(), 35);
        let enumerated: HashSet<_> = enumerate(&f2, 4, 2)
            .unwrap()
            .iter()
            .map(|s| {
                span_vectors(s)
                    .into_iter()
                    .collect::<std::collections::BTreeSet<_>>()
            })
            .collect();
        assert_eq!(enumerated, spans);
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        for q in [2, 3, 4] {
            let f = field(q);
            for n in 0..=4 {
                for k in 0..=n {
                    let all = enumerate(&f, n, k).unwrap();
                    assert!(all.windows(2).all(|w| w[0] < w[1]));
                    for s in &all {
                        let again =
                            Subspace::span_elements(&f, s.rows().map(|r| r.to_vec()).collect());
                        if k > 0 {
                            assert_eq!(&again.unwrap(), s);
                        }
                    }
                    assert_eq!(all.len(), enumerate(&f, n, n - k).unwrap().len());
                }
            }
        }
    }

    #[test]
    fn extension_field_spans_are_closed() {
        let f4 = field(4);
        for s in enumerate(&f4, 3, 2).unwrap().iter().step_by(3) {
            let vs = span_vectors(s);
            assert_eq!(vs.len(), 16);
            for v in &vs {
                assert!(s.contains_vector(v).unwrap());
            }
        }
    }

    fn arb_matrix(q: u64, max_rows: usize, n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(0..q, n), 1..=max_rows)
    }

    proptest! {
        #[test]
        fn canonical_under_row_operations(rows in arb_matrix(3, 4, 5), seed in 0u64..1000) {
            let f = field(3);
            let s = Subspace::span(&f, &rows).unwrap();
            // invertible row operations: permute, scale by nonzero, add multiples
            let mut mixed = rows.clone();
            let h = mixed.len();
            mixed.rotate_left((seed as usize) % h);
            let scale = 1 + seed % 2;
            for x in mixed[0].iter_mut() { *x = (*x * scale) % 3; }
            if h > 1 {
                let add = mixed[1].clone();
                for (x, y) in mixed[0].iter_mut().zip(add) { *x = (*x + (seed % 3) * y) % 3; }
            }
            prop_assert_eq!(Subspace::span(&f, &mixed).unwrap(), s);
        }

        #[test]
        fn modular_law(a in arb_matrix(4, 3, 5), b in arb_matrix(4, 3, 5)) {
            let f = field(4);
            let a = Subspace::span(&f, &a).unwrap();
            let b = Subspace::span(&f, &b).unwrap();
            let cap = a.dim_intersection(&b).unwrap();
            prop_assert_eq!(cap, b.dim_intersection(&a).unwrap());
            prop_assert_eq!(a.dim() + b.dim(), cap + a.dim_sum(&b).unwrap());
            prop_assert_eq!(a.intersection(&b).unwrap().dim(), cap);
            prop_assert!(cap <= a.dim().min(b.dim()));
            prop_assert!(cap + 5 >= a.dim() + b.dim());
            let i = a.intersection(&b).unwrap();
            prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
        }
    }
}
