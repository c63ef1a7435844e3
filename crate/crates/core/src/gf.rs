//! Finite fields `GF(q)` with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q` by reading the coefficient vector
//! of the polynomial representative as base-`p` digits, constant term first.
//! For a prime field the encoding is the residue itself. Extension fields use
//! the fixed moduli in [`MODULI`], so encodings are reproducible.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("GF({0}) is not in the built-in field table")]
    Unsupported(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: u32 },
}

/// Largest order for which a field can be built.
pub const MAX_ORDER: u32 = 128;

/// Monic irreducible moduli for the supported proper prime powers, as
/// `(q, p, coefficients)` with the constant term first.
pub const MODULI: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1, 1]),                  // x^2 + x + 1
    (8, 2, &[1, 1, 0, 1]),               // x^3 + x + 1
    (16, 2, &[1, 1, 0, 0, 1]),           // x^4 + x + 1
    (32, 2, &[1, 0, 1, 0, 0, 1]),        // x^5 + x^2 + 1
    (64, 2, &[1, 1, 0, 1, 1, 0, 1]),     // x^6 + x^4 + x^3 + x + 1
    (128, 2, &[1, 1, 0, 0, 0, 0, 0, 1]), // x^7 + x + 1
    (9, 3, &[2, 2, 1]),                  // x^2 + 2x + 2
    (27, 3, &[1, 2, 0, 1]),              // x^3 + 2x + 1
    (81, 3, &[2, 0, 0, 2, 1]),           // x^4 + 2x^3 + 2
    (25, 5, &[2, 4, 1]),                 // x^2 + 4x + 2
    (125, 5, &[3, 3, 0, 1]),             // x^3 + 3x + 3
    (49, 7, &[3, 6, 1]),                 // x^2 + 6x + 3
    (121, 11, &[2, 7, 1]),               // x^2 + 7x + 2
];

/// An element of some `GF(q)`, stored by its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with precomputed operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `n = p^e` when `n` is a prime power.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        // no factor up to sqrt(n)
        return Some((n, 1));
    }
    let mut rest = n;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Builds `GF(q)`: every prime `q <= 128` and the prime powers listed in
/// [`MODULI`].
pub fn make_field(q: u64) -> Result<FieldSpec, GfError> {
    let (p, e) = prime_power_decomposition(q).ok_or(GfError::NotPrimePower(q))?;
    if q > MAX_ORDER as u64 {
        return Err(GfError::Unsupported(q));
    }
    let modulus: Vec<u32> = if e == 1 {
        vec![0, 1]
    } else {
        MODULI
            .iter()
            .find(|(order, _, _)| *order as u64 == q)
            .map(|(_, _, coeffs)| coeffs.to_vec())
            .ok_or(GfError::Unsupported(q))?
    };
    Ok(FieldSpec::from_modulus(p as u32, e, modulus))
}

impl FieldSpec {
    fn from_modulus(p: u32, e: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(e);
        let qs = q as usize;
        let digits: Vec<Vec<u32>> = (0..q).map(|a| to_digits(a, p, e)).collect();
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = from_digits(&sum, p) as u8;
                let prod = poly_mul_mod(&digits[a], &digits[b], &modulus, p);
                mul[a * qs + b] = from_digits(&prod, p) as u8;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        // inv[0] is a placeholder; `inv` rejects zero before the lookup.
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs)
                        .find(|&b| mul[a * qs + b] == 1)
                        .expect("modulus is irreducible") as u8
                }
            })
            .collect();
        FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, GfError> {
        if value < self.q as u64 {
            Ok(FieldElement(value as u8))
        } else {
            Err(GfError::ElementOutOfRange { value, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|a| FieldElement(a as u8))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::ElementOutOfRange {
                value: from_digits(coeffs, self.p.max(2)) as u64,
                q: self.q,
            });
        }
        Ok(FieldElement(from_digits(coeffs, self.p) as u8))
    }

    /// Polynomial coefficients of `a`, constant term first, length `e`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        to_digits(a.0 as u32, self.p, self.e)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn to_digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(a % p);
        a /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two residues in `Z_p[x] / (modulus)`; `modulus` is monic.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p * p - lead * m % p) % p;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}
