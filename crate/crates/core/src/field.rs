//! Arithmetic in `F_q` for `q = p^k`, `p` an odd prime.
//!
//! Elements are stored as their coefficient vector in the basis
//! `1, X, ..., X^{k-1}` packed into a base-`p` integer (`c_0` least
//! significant). That packed index is the canonical form: equality is
//! structural and the natural order on indices is the enumeration order
//! (`0, 1, 2, X, X+1, ...` for `F_9`).
//!
//! All operations go through precomputed `q x q` tables built once from
//! polynomial arithmetic modulo the field's modulus.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::{Limits, FIELD_SIZE_CEILING};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field of order {q} exceeds the configured cap {cap}")]
    TooLarge { q: u64, cap: u32 },
    #[error("modulus must be monic of degree {k} with coefficients below {p}")]
    BadModulus { p: u32, k: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("{0} is not a power of an odd prime")]
    NotPrimePower(u32),
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector does not describe an element of F_{q}")]
    BadCoefficients { q: u32 },
}

/// Polynomials over `F_p` as coefficient vectors, lowest degree first.
mod poly {
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        let p64 = p as u64;
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let lead = r[dr] as u64;
            let shift = dr - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p64;
                r[i + shift] = ((r[i + shift] as u64 + p64 - sub) % p64) as u32;
            }
        }
        r.truncate(dm.max(1));
        r.resize(dm.max(1), 0);
        r
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `tail` (`c_0` least significant).
    pub fn monic_from_tail(tail: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg + 1);
        let mut t = tail;
        for _ in 0..deg {
            out.push((t % p as u64) as u32);
            t /= p as u64;
        }
        out.push(1);
        out
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    /// Degree-1 divisors are exactly the roots.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for tail in 0..count {
                let g = monic_from_tail(tail, d, p);
                let r = rem_monic(f, &g, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d as u64 * d as u64 <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, `p` an odd prime.
pub fn odd_prime_power(q: u32) -> Result<(u32, u32), FieldError> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = (3..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    if !is_prime(p) {
        return Err(FieldError::NotPrimePower(q));
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p, k))
}

/// An element of some `F_q`, tagged with the identity of its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: u32,
    index: u16,
}

impl FieldElement {
    /// Position in the field's enumeration order.
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

/// A point of `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<FieldElement>,
}

impl Point {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// `F_{p^k}` with its modulus and arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    q: u32,
    id: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Serialized form of a [`FieldSpec`]: `{p, k, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    /// `k + 1` coefficients, lowest degree first.
    pub modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

/// The field with `p^k` elements, using the lexicographically least monic
/// irreducible modulus. Lexicographic order compares `c_{k-1}` first, down
/// to `c_0`. For `k = 1` the modulus is `X`, so arithmetic is plain mod `p`.
pub fn make_field(p: u32, k: u32) -> Result<FieldSpec, FieldError> {
    make_field_with(p, k, &Limits::default())
}

pub fn make_field_with(p: u32, k: u32, limits: &Limits) -> Result<FieldSpec, FieldError> {
    check_size(p, k, limits)?;
    let count = (p as u64).pow(k);
    let modulus = (0..count)
        .map(|tail| poly::monic_from_tail(tail, k as usize, p))
        .find(|f| k == 1 || poly::is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");
    Ok(FieldSpec::build(p, k, modulus))
}

/// `F_q` for an odd prime power `q`.
pub fn field_of_order(q: u32, limits: &Limits) -> Result<FieldSpec, FieldError> {
    let (p, k) = odd_prime_power(q)?;
    make_field_with(p, k, limits)
}

fn check_size(p: u32, k: u32, limits: &Limits) -> Result<u32, FieldError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(FieldError::NotOddPrime(p));
    }
    if k < 1 {
        return Err(FieldError::InvalidDegree(k));
    }
    let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    let cap = limits.max_q.min(FIELD_SIZE_CEILING);
    if q > cap as u64 {
        return Err(FieldError::TooLarge { q, cap });
    }
    Ok(q as u32)
}

impl FieldSpec {
    /// A field with an explicit modulus (`k + 1` coefficients, lowest
    /// degree first). The modulus must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32], limits: &Limits) -> Result<FieldSpec, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::InvalidDegree(0));
        }
        let k = (modulus.len() - 1) as u32;
        check_size(p, k, limits)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { p, k });
        }
        if k > 1 && !poly::is_irreducible(modulus, p) {
            return Err(FieldError::ReducibleModulus(p));
        }
        Ok(FieldSpec::build(p, k, modulus.to_vec()))
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(k);
        let qs = q as usize;
        let digits = |mut i: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let c = i % p;
                    i /= p;
                    c
                })
                .collect()
        };
        let pack = |c: &[u32]| -> u16 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16 };
        let elems: Vec<Vec<u32>> = (0..q).map(digits).collect();

        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in a..qs {
                let s: Vec<u32> = elems[a].iter().zip(&elems[b]).map(|(x, y)| (x + y) % p).collect();
                let prod = poly::rem_monic(&poly::mul(&elems[a], &elems[b], p), &modulus, p);
                let (s, prod) = (pack(&s), pack(&prod));
                add[a * qs + b] = s;
                add[b * qs + a] = s;
                mul[a * qs + b] = prod;
                mul[b * qs + a] = prod;
            }
        }
        let neg: Vec<u16> = elems
            .iter()
            .map(|c| pack(&c.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()))
            .collect();

        // Fermat: a^{q-2} = a^{-1}.
        let mut inv = vec![0u16; qs];
        for (a, slot) in inv.iter_mut().enumerate().skip(1) {
            let (mut base, mut exp, mut acc) = (a as u16, q - 2, 1u16);
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = mul[acc as usize * qs + base as usize];
                }
                base = mul[base as usize * qs + base as usize];
                exp >>= 1;
            }
            *slot = acc;
        }

        let id = modulus
            .iter()
            .chain([p, k].iter())
            .fold(0x811c_9dc5u32, |h, &x| (h ^ x).wrapping_mul(0x0100_0193));
        FieldSpec { p, k, modulus, q, id, add, mul, neg, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    pub(crate) fn elem(&self, index: u16) -> FieldElement {
        debug_assert!((index as u32) < self.q);
        FieldElement { field: self.id, index }
    }

    /// Element at a position of the enumeration order.
    pub fn element(&self, index: usize) -> Result<FieldElement, FieldError> {
        if index >= self.q as usize {
            return Err(FieldError::BadCoefficients { q: self.q });
        }
        Ok(self.elem(index as u16))
    }

    /// Element from `k` coefficients, lowest degree first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients { q: self.q });
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &d| acc * self.p + d);
        Ok(self.elem(idx as u16))
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.elem(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut i = a.index as u32;
        (0..self.k)
            .map(|_| {
                let c = i % self.p;
                i /= self.p;
                c
            })
            .collect()
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field == self.id && (a.index as u32) < self.q
    }

    fn check(&self, a: FieldElement) -> Result<usize, FieldError> {
        if self.contains(a) {
            Ok(a.index as usize)
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.elem(self.add[a * self.q as usize + b]))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.elem(self.neg[self.check(a)?]))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.elem(self.mul[a * self.q as usize + b]))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.elem(self.inv[a]))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> Result<FieldElement, FieldError> {
        let mut base = self.check(a)? as u16;
        let mut acc = 1u16;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            exp >>= 1;
        }
        Ok(self.elem(acc))
    }

    /// All `q` elements in enumeration order, zero first.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.q as u16).map(|i| self.elem(i)).collect()
    }

    /// `x_1^2 + ... + x_d^2`.
    pub fn norm(&self, x: &Point) -> Result<FieldElement, FieldError> {
        let mut acc = 0u16;
        for &c in &x.coords {
            let c = self.check(c)? as u16;
            acc = self.add_idx(acc, self.mul_idx(c, c));
        }
        Ok(self.elem(acc))
    }

    pub fn point(&self, coords: Vec<FieldElement>) -> Result<Point, FieldError> {
        for &c in &coords {
            self.check(c)?;
        }
        Ok(Point { coords })
    }

    pub fn point_sub(&self, x: &Point, y: &Point) -> Result<Point, FieldError> {
        if x.dim() != y.dim() {
            return Err(FieldError::SpecMismatch);
        }
        let coords = x.coords.iter().zip(&y.coords).map(|(&a, &b)| self.sub(a, b)).collect::<Result<_, _>>()?;
        Ok(Point { coords })
    }

    /// Renders an element as a polynomial in `X` (`2X+1`); plain integers
    /// for prime fields.
    pub fn format(&self, a: FieldElement) -> String {
        let coeffs = self.coeffs(a);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "X".to_string(),
                (1, c) => format!("{c}X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}X^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    #[inline]
    pub(crate) fn add_idx(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn neg_idx(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
}
