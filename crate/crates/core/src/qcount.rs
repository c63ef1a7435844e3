//! Exact counting for subspace families: Gaussian binomials and the degree,
//! independence number and treewidth formulas of generalized q-Kneser graphs.
//!
//! Everything here is integer arithmetic on [`Count`]. `q` is only required
//! to be at least 2; it does not have to be a prime power, since all of these
//! quantities are polynomial identities in `q`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Arbitrary-precision nonnegative integer.
pub type Count = BigUint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("q must be at least 2, got {0}")]
    BadQ(u64),
    #[error("top argument must be nonnegative, got {0}")]
    NegativeTop(i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

/// Parameters `(n, k, t, q)` of `K_q(n, k, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub q: u64,
}

impl Params {
    pub fn new(n: u32, k: u32, t: u32, q: u64) -> Result<Params, CountError> {
        let p = Params { n, k, t, q };
        p.validate()?;
        Ok(p)
    }

    /// Checks `q >= 2` and `1 <= t < k <= n`.
    pub fn validate(&self) -> Result<(), CountError> {
        if self.q < 2 {
            return Err(CountError::BadQ(self.q));
        }
        if !(1 <= self.t && self.t < self.k && self.k <= self.n) {
            return Err(CountError::InvalidParams(format!(
                "need 1 <= t < k <= n, got n={} k={} t={}",
                self.n, self.k, self.t
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{}({},{},{})", self.q, self.n, self.k, self.t)
    }
}

fn check_q(q: u64) -> Result<(), CountError> {
    if q < 2 {
        Err(CountError::BadQ(q))
    } else {
        Ok(())
    }
}

#[inline]
fn pow(q: u64, e: u64) -> Count {
    Count::from(q).pow(e as u32)
}

type MemoKey = (u32, u32, u64);

fn memo() -> &'static Mutex<HashMap<MemoKey, Count>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Count>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gaussian binomial coefficient `[a, b]_q`: the number of `b`-dimensional
/// subspaces of `F_q^a`. Zero when `b < 0` or `b > a`, one when `b = 0`.
pub fn gauss(a: i64, b: i64, q: u64) -> Result<Count, CountError> {
    check_q(q)?;
    if a < 0 {
        return Err(CountError::NegativeTop(a));
    }
    if b < 0 || b > a {
        return Ok(Count::zero());
    }
    let b = b.min(a - b);
    if b == 0 {
        return Ok(Count::one());
    }
    let key = (a as u32, b as u32, q);
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    // [a, j+1] = [a, j] * (q^(a-j) - 1) / (q^(j+1) - 1), each quotient exact
    let one = Count::one();
    let mut acc = Count::one();
    for j in 0..b as u64 {
        acc *= pow(q, a as u64 - j) - &one;
        acc /= pow(q, j + 1) - &one;
    }
    memo().lock().unwrap().insert(key, acc.clone());
    Ok(acc)
}

fn g(a: u32, b: u32, q: u64) -> Count {
    gauss(a as i64, b as i64, q).expect("q validated by caller")
}

/// Both recurrences `[m,i] = [m-1,i-1] + q^i [m-1,i]` and
/// `[m,i] (q^i - 1) = (q^m - 1) [m-1,i-1]`, checked exactly.
pub fn check_identity_l22(m: u32, i: u32, q: u64) -> Result<bool, CountError> {
    check_q(q)?;
    if !(1 <= i && i <= m) {
        return Err(CountError::InvalidParams(format!(
            "need m >= i >= 1, got m={m} i={i}"
        )));
    }
    let one = Count::one();
    let whole = g(m, i, q);
    let pascal = g(m - 1, i - 1, q) + pow(q, i as u64) * g(m - 1, i, q);
    let ratio_lhs = &whole * (pow(q, i as u64) - &one);
    let ratio_rhs = (pow(q, m as u64) - &one) * g(m - 1, i - 1, q);
    Ok(whole == pascal && ratio_lhs == ratio_rhs)
}

/// The growth bounds `q^(i(m-i)) <= [m,i] < q^(i(m-i+1))` (strict on the
/// left when `i < m`), together with `q^(m-i) < (q^m-1)/(q^i-1) < q^(m-i+1)`
/// for `i < m`, cross-multiplied into integer comparisons.
pub fn check_bounds_l22(m: u32, i: u32, q: u64) -> Result<bool, CountError> {
    check_q(q)?;
    if !(1 <= i && i <= m) {
        return Err(CountError::InvalidParams(format!(
            "need m >= i >= 1, got m={m} i={i}"
        )));
    }
    let (m64, i64_) = (m as u64, i as u64);
    let value = g(m, i, q);
    let low = pow(q, i64_ * (m64 - i64_));
    let high = pow(q, i64_ * (m64 - i64_ + 1));
    let mut ok = low <= value && value < high;
    if i < m {
        ok &= low < value;
        let one = Count::one();
        let num = pow(q, m64) - &one;
        let den = pow(q, i64_) - &one;
        // The reciprocal chain q^(i-m-1) < (q^i-1)/(q^m-1) < q^(i-m)
        // cross-multiplies to the same two comparisons.
        ok &= pow(q, m64 - i64_) * &den < num;
        ok &= num < pow(q, m64 - i64_ + 1) * &den;
    }
    Ok(ok)
}

/// Number of `i`-subspaces `Y` of `F_q^n` with `dim(X ∩ Y) = m`, for any
/// fixed `j`-subspace `X`: `q^((i-m)(j-m)) [n-j, i-m] [j, m]`.
pub fn intersect_count(n: u32, j: u32, i: u32, m: i64, q: u64) -> Result<Count, CountError> {
    check_q(q)?;
    if i > n || j > n {
        return Err(CountError::InvalidParams(format!(
            "need 0 <= i, j <= n, got n={n} j={j} i={i}"
        )));
    }
    let outer = gauss((n - j) as i64, i as i64 - m, q)?;
    let inner = gauss(j as i64, m, q)?;
    if outer.is_zero() || inner.is_zero() {
        return Ok(Count::zero());
    }
    // both factors nonzero imply 0 <= m <= min(i, j)
    let e = (i as u64 - m as u64) * (j as u64 - m as u64);
    Ok(pow(q, e) * outer * inner)
}

/// Common degree of the vertex-transitive graph `K_q(n,k,t)`:
/// `sum_{i<t} q^((k-i)^2) [n-k, k-i] [k, i]`.
pub fn degree_formula(p: &Params) -> Result<Count, CountError> {
    p.validate()?;
    Ok((0..p.t)
        .map(|i| intersect_count(p.n, p.k, p.k, i as i64, p.q).expect("validated"))
        .sum())
}

/// Independence number `[n-t, k-t]`, asserted only for `n >= 2k`.
pub fn alpha_formula(p: &Params) -> Result<Count, CountError> {
    p.validate()?;
    if p.n < 2 * p.k {
        return Err(CountError::OutOfRange(format!(
            "independence number formula needs n >= 2k, got n={} k={}",
            p.n, p.k
        )));
    }
    Ok(g(p.n - p.t, p.k - p.t, p.q))
}

/// `n >= 2t(k-t+1) + k + 1`, the range where the treewidth is exact.
pub fn theorem_range(p: &Params) -> bool {
    if p.t < 1 || p.t >= p.k {
        return false;
    }
    let (n, k, t) = (p.n as u64, p.k as u64, p.t as u64);
    n > 2 * t * (k - t + 1) + k
}

/// Exact treewidth `[n,k] - [n-t,k-t] - 1` inside [`theorem_range`].
pub fn tw_formula_qkneser(p: &Params) -> Result<Count, CountError> {
    p.validate()?;
    if !theorem_range(p) {
        return Err(CountError::OutOfRange(format!(
            "treewidth formula needs n >= 2t(k-t+1)+k+1 = {}, got n={}",
            2 * p.t * (p.k - p.t + 1) + p.k + 1,
            p.n
        )));
    }
    Ok(g(p.n, p.k, p.q) - g(p.n - p.t, p.k - p.t, p.q) - Count::one())
}

/// Treewidth of the complement of the Grassmann graph: exact except at
/// `(k, n) = (2, 4)`, where only a window is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwValue {
    Exact(Count),
    Window { lower: Count, upper: Count },
}

impl TwValue {
    pub fn contains(&self, w: &Count) -> bool {
        match self {
            TwValue::Exact(v) => v == w,
            TwValue::Window { lower, upper } => lower <= w && w <= upper,
        }
    }
}

impl fmt::Display for TwValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwValue::Exact(v) => write!(f, "{v}"),
            TwValue::Window { lower, upper } => write!(f, "[{lower},{upper}]"),
        }
    }
}

pub fn tw_formula_cograssmann(n: u32, k: u32, q: u64) -> Result<TwValue, CountError> {
    check_q(q)?;
    if k < 2 || n < k + 2 {
        return Err(CountError::OutOfRange(format!(
            "complement Grassmann treewidth needs k >= 2 and n >= k+2, got n={n} k={k}"
        )));
    }
    let one = Count::one();
    if (k, n) == (2, 4) {
        // [4,2] - [4,1] - 1 <= tw <= [4,2] - [3,1] - 1
        let v = g(4, 2, q);
        return Ok(TwValue::Window {
            lower: &v - g(4, 1, q) - &one,
            upper: v - g(3, 1, q) - one,
        });
    }
    Ok(TwValue::Exact(g(n, k, q) - g(n - k + 1, 1, q) - one))
}

/// Result of evaluating one of the proof inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub holds: bool,
    /// Whether the parameters satisfy the hypothesis the inequality is
    /// stated under. The value is computed either way.
    pub in_hypothesis: bool,
}

/// `q^((k-t)^2) [n-k, k-t] [k, t] > [n-t, k-t]`, stated for `n >= 2k`.
pub fn check_claim1(p: &Params) -> Result<ClaimOutcome, CountError> {
    p.validate()?;
    let lhs = intersect_count(p.n, p.k, p.k, p.t as i64, p.q)?;
    let rhs = g(p.n - p.t, p.k - p.t, p.q);
    Ok(ClaimOutcome {
        holds: lhs > rhs,
        in_hypothesis: p.n >= 2 * p.k,
    })
}

/// `[n-t-1, k-t-1] <= [k,t]^-2 (1/3) [n-t, k-t]`, evaluated as
/// `3 [k,t]^2 [n-t-1, k-t-1] <= [n-t, k-t]`; stated inside
/// [`theorem_range`].
pub fn check_claim2(p: &Params) -> Result<ClaimOutcome, CountError> {
    p.validate()?;
    let kt = g(p.k, p.t, p.q);
    let lhs = Count::from(3u32) * &kt * &kt * g(p.n - p.t - 1, p.k - p.t - 1, p.q);
    let rhs = g(p.n - p.t, p.k - p.t, p.q);
    Ok(ClaimOutcome {
        holds: lhs <= rhs,
        in_hypothesis: theorem_range(p),
    })
}

/// `degree + alpha < [n,k]` for `n >= 2k`.
pub fn check_degree_alpha_gap(p: &Params) -> Result<bool, CountError> {
    let delta = degree_formula(p)?;
    let alpha = alpha_formula(p)?;
    Ok(delta + alpha < g(p.n, p.k, p.q))
}

/// One line of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub params: Params,
    pub claim1: bool,
    /// `None` outside the treewidth range.
    pub claim2: Option<bool>,
    pub delta: Count,
    pub alpha: Count,
    pub tw: Option<Count>,
    pub gap: bool,
}

impl SweepRecord {
    /// All checks that apply to these parameters passed.
    pub fn all_hold(&self) -> bool {
        self.claim1 && self.claim2.unwrap_or(true) && self.gap
    }
}

impl fmt::Display for SweepRecord {
    /// `q,n,k,t,claim1,claim2,delta,alpha,tw`, with `-` for undefined fields.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        let claim2 = self.claim2.map_or("-".to_string(), |b| b.to_string());
        let tw = self.tw.as_ref().map_or("-".to_string(), |v| v.to_string());
        write!(
            f,
            "{},{},{},{},{},{},{},{},{}",
            p.q, p.n, p.k, p.t, self.claim1, claim2, self.delta, self.alpha, tw
        )
    }
}

pub fn sweep_record(p: &Params) -> Result<SweepRecord, CountError> {
    p.validate()?;
    if p.n < 2 * p.k {
        return Err(CountError::OutOfRange(format!(
            "sweep needs n >= 2k, got {p}"
        )));
    }
    let in_range = theorem_range(p);
    Ok(SweepRecord {
        params: *p,
        claim1: check_claim1(p)?.holds,
        claim2: if in_range {
            Some(check_claim2(p)?.holds)
        } else {
            None
        },
        delta: degree_formula(p)?,
        alpha: alpha_formula(p)?,
        tw: if in_range {
            Some(tw_formula_qkneser(p)?)
        } else {
            None
        },
        gap: check_degree_alpha_gap(p)?,
    })
}

/// Evaluates every `(q, n, k, t)` with `q` in `qs`, `1 <= t < k <= kmax` and
/// `2k <= n <= nmax`, ordered by `q`, then `k`, `t`, `n`.
pub fn sweep(qs: &[u64], kmax: u32, nmax: u32) -> Result<Vec<SweepRecord>, CountError> {
    let mut grid = Vec::new();
    for &q in qs {
        check_q(q)?;
        for k in 2..=kmax {
            for t in 1..k {
                for n in 2 * k..=nmax {
                    grid.push(Params { n, k, t, q });
                }
            }
        }
    }
    grid.par_iter().map(sweep_record).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    /// Independent route: q-Pascal triangle `[a,b] = [a-1,b-1] + q^b [a-1,b]`.
    fn pascal_table(max_a: usize, q: u64) -> Vec<Vec<Count>> {
        let mut t = vec![vec![Count::zero(); max_a + 1]; max_a + 1];
        for a in 0..=max_a {
            t[a][0] = Count::one();
            for b in 1..=a {
                t[a][b] = t[a - 1][b - 1].clone() + pow(q, b as u64) * &t[a - 1][b];
            }
        }
        t
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss(4, 2, 2).unwrap(), c(35));
        assert_eq!(gauss(7, 2, 2).unwrap(), c(2667));
        for a in 0..10 {
            assert_eq!(gauss(a, 0, 3).unwrap(), c(1));
            assert_eq!(gauss(a, -1, 3).unwrap(), c(0));
            assert_eq!(gauss(a, a + 1, 3).unwrap(), c(0));
        }
        assert_eq!(gauss(3, 1, 1), Err(CountError::BadQ(1)));
        assert_eq!(gauss(-1, 0, 2), Err(CountError::NegativeTop(-1)));
    }

    #[test]
    fn gauss_matches_pascal_and_is_symmetric() {
        for q in [2u64, 3, 4, 5, 6, 10] {
            let table = pascal_table(12, q);
            for a in 0..=12i64 {
                for b in 0..=a {
                    let v = gauss(a, b, q).unwrap();
                    assert_eq!(v, table[a as usize][b as usize], "[{a},{b}]_{q}");
                    assert_eq!(v, gauss(a, a - b, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_and_bounds_examples() {
        assert!(check_identity_l22(5, 2, 2).unwrap());
        assert!(check_identity_l22(3, 3, 2).unwrap());
        assert!(check_identity_l22(6, 1, 3).unwrap());
        assert_eq!(gauss(6, 1, 3).unwrap(), c(364));
        assert!(check_bounds_l22(4, 2, 2).unwrap());
        assert!(check_bounds_l22(3, 3, 5).unwrap());
        assert!(check_bounds_l22(5, 1, 2).unwrap());
        assert!(check_identity_l22(3, 0, 2).is_err());
        assert!(check_bounds_l22(2, 3, 2).is_err());
    }

    #[test]
    fn intersect_count_examples() {
        assert_eq!(intersect_count(4, 2, 2, 1, 2).unwrap(), c(18));
        assert_eq!(intersect_count(4, 2, 2, 2, 2).unwrap(), c(1));
        assert_eq!(intersect_count(4, 2, 2, 0, 2).unwrap(), c(16));
        let total: Count = (-1..=3)
            .map(|m| intersect_count(4, 2, 2, m, 2).unwrap())
            .sum();
        assert_eq!(total, c(35));
        assert!(intersect_count(4, 5, 2, 1, 2).is_err());
    }

    #[test]
    fn degree_examples() {
        let p = |n, k, t| Params::new(n, k, t, 2).unwrap();
        assert_eq!(degree_formula(&p(7, 2, 1)).unwrap(), c(2480));
        assert_eq!(degree_formula(&p(5, 2, 1)).unwrap(), c(112));
        assert_eq!(degree_formula(&p(4, 2, 1)).unwrap(), c(16));
    }

    #[test]
    fn alpha_examples() {
        let p = |n, k, t| Params::new(n, k, t, 2).unwrap();
        assert_eq!(alpha_formula(&p(4, 2, 1)).unwrap(), c(7));
        assert_eq!(alpha_formula(&p(7, 2, 1)).unwrap(), c(63));
        assert!(matches!(
            alpha_formula(&p(5, 3, 1)),
            Err(CountError::OutOfRange(_))
        ));
        assert!(Params::new(4, 2, 2, 2).is_err());
    }

    #[test]
    fn tw_examples() {
        let p = |n, k, t| Params::new(n, k, t, 2).unwrap();
        assert_eq!(tw_formula_qkneser(&p(7, 2, 1)).unwrap(), c(2603));
        assert_eq!(tw_formula_qkneser(&p(8, 2, 1)).unwrap(), c(10667));
        assert!(matches!(
            tw_formula_qkneser(&p(6, 2, 1)),
            Err(CountError::OutOfRange(_))
        ));

        assert_eq!(
            tw_formula_cograssmann(5, 2, 2).unwrap(),
            TwValue::Exact(c(139))
        );
        assert_eq!(
            tw_formula_cograssmann(4, 2, 2).unwrap(),
            TwValue::Window {
                lower: c(19),
                upper: c(27)
            }
        );
        assert_eq!(
            tw_formula_cograssmann(6, 3, 2).unwrap(),
            TwValue::Exact(c(1379))
        );
        assert!(tw_formula_cograssmann(4, 3, 2).is_err());
    }

    #[test]
    fn cograssmann_window_matches_closed_forms() {
        for q in 2..12u64 {
            let TwValue::Window { lower, upper } = tw_formula_cograssmann(4, 2, q).unwrap() else {
                panic!("expected window");
            };
            let (q2, q3, q4) = (pow(q, 2), pow(q, 3), pow(q, 4));
            assert_eq!(lower, &q4 + &q2 - c(1));
            assert_eq!(upper, q4 + q3 + q2 - c(1));
        }
    }

    #[test]
    fn theorem_range_boundary() {
        let p = |n, k, t| Params { n, k, t, q: 2 };
        assert!(theorem_range(&p(7, 2, 1)));
        assert!(!theorem_range(&p(6, 2, 1)));
        for k in 2..8 {
            for t in 1..k {
                let b = 2 * t * (k - t + 1) + k + 1;
                assert!(theorem_range(&p(b, k, t)));
                assert!(!theorem_range(&p(b - 1, k, t)));
            }
        }
    }

    #[test]
    fn claim_examples() {
        let p = |n, k, t, q| Params::new(n, k, t, q).unwrap();
        assert_eq!(
            check_claim1(&p(7, 2, 1, 2)).unwrap(),
            ClaimOutcome {
                holds: true,
                in_hypothesis: true
            }
        );
        assert!(check_claim1(&p(4, 2, 1, 2)).unwrap().holds);
        assert!(check_claim1(&p(6, 3, 2, 3)).unwrap().holds);
        // 3 * [2,1]^2 * [5,0] = 27 <= [6,1] = 63
        assert_eq!(
            check_claim2(&p(7, 2, 1, 2)).unwrap(),
            ClaimOutcome {
                holds: true,
                in_hypothesis: true
            }
        );
        // (9,3,1) sits just below the range boundary n = 10, and the
        // inequality indeed fails there: 3 * 7^2 * 127 = 18669 > 10795
        let c2 = check_claim2(&p(9, 3, 1, 2)).unwrap();
        assert_eq!(
            c2,
            ClaimOutcome {
                holds: false,
                in_hypothesis: false
            }
        );
        assert!(check_claim2(&p(10, 3, 1, 2)).unwrap().holds);
        let below = check_claim2(&p(5, 2, 1, 2)).unwrap();
        assert!(!below.in_hypothesis);
    }

    #[test]
    fn tw_formula_equals_vertices_minus_alpha() {
        for q in [2u64, 3, 4] {
            for k in 2..6 {
                for t in 1..k {
                    for n in 2 * k..20 {
                        let p = Params::new(n, k, t, q).unwrap();
                        if let Ok(tw) = tw_formula_qkneser(&p) {
                            let v = gauss(n as i64, k as i64, q).unwrap();
                            assert_eq!(tw + alpha_formula(&p).unwrap() + c(1), v);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sweep_record_format() {
        let rec = sweep_record(&Params::new(7, 2, 1, 2).unwrap()).unwrap();
        assert_eq!(rec.to_string(), "2,7,2,1,true,true,2480,63,2603");
        let rec = sweep_record(&Params::new(4, 2, 1, 2).unwrap()).unwrap();
        assert_eq!(rec.to_string(), "2,4,2,1,true,-,16,7,-");
        let all = sweep(&[2, 3], 3, 8).unwrap();
        assert!(all.iter().all(SweepRecord::all_hold));
        assert_eq!(
            all[0].params,
            Params {
                n: 4,
                k: 2,
                t: 1,
                q: 2
            }
        );
    }
}
