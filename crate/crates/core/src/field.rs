//! Arithmetic in `GF(p^k)`.
//!
//! Elements are encoded as integer codes in `[0, q)`: the code
//! `a_0 + a_1 p + ... + a_{k-1} p^{k-1}` stands for the residue class of
//! `a_0 + a_1 x + ... + a_{k-1} x^{k-1}` modulo the field's modulus. Code 0
//! is zero and code 1 is one in every field.
//!
//! The modulus of `GF(p^k)` is the monic irreducible polynomial of degree `k`
//! whose coefficient tuple `(a_0, a_1, ..., a_{k-1})` is lexicographically
//! smallest, so every construction of the same field yields the same
//! encoding.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, stored as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps a raw code. No range check; use [`FieldSpec::element`] for
    /// validated construction.
    #[inline]
    pub const fn new(code: u32) -> Fe {
        Fe(code)
    }

    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

struct LogTables {
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

/// A concrete finite field `GF(p^k)`.
///
/// Cheap to clone. Two specs compare equal iff they have the same `p` and
/// `k`, which (the modulus being deterministic) means identical encodings.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("k", &self.inner.k)
            .field("q", &self.inner.q)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    smallest_prime_factor(n) == Some(n)
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut f = 3u64;
    while f <= n / f {
        if n.is_multiple_of(f) {
            return Some(f);
        }
        f += 2;
    }
    Some(n)
}

/// Splits a field order `q` into `(p, k)` with `q = p^k` and `p` prime.
pub fn parse_order(q: u64) -> Result<(u64, u32)> {
    let p = smallest_prime_factor(q).ok_or(Error::NotPrimePower(q))?;
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, k))
}

impl FieldSpec {
    /// Builds `GF(p^k)`.
    pub fn new(p: u64, k: u32) -> Result<FieldSpec> {
        if k < 1 {
            return Err(Error::InvalidDegree(k));
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(k)))?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 {
            // GF(p)[x]/(x) is GF(p) itself
            vec![0, 1]
        } else {
            smallest_irreducible(p, k as usize)
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if k > 1 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    /// Builds the field of order `q`.
    pub fn from_order(q: u64) -> Result<FieldSpec> {
        let (p, k) = parse_order(q)?;
        FieldSpec::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients `a_0, ..., a_k` (monic, so `a_k = 1`). For prime
    /// fields this is the placeholder `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Validated element constructor.
    pub fn element(&self, code: u64) -> Result<Fe> {
        if code < u64::from(self.inner.q) {
            Ok(Fe(code as u32))
        } else {
            Err(Error::EntryOutOfRange {
                code,
                q: self.inner.q,
            })
        }
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.inner.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fe((a.0 + b.0) % p);
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x != 0 || y != 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fe((p - a.0) % p);
        }
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x != 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.inner.tables {
            None => Fe(((u64::from(a.0) * u64::from(b.0)) % u64::from(self.inner.p)) as u32),
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match &self.inner.tables {
            None => Ok(self.pow(a, u64::from(self.inner.p) - 2)),
            Some(t) => {
                let order = self.inner.q - 1;
                let l = t.log[a.0 as usize];
                Ok(Fe(t.exp[((order - l) % order) as usize]))
            }
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

// --- polynomials over GF(p), little-endian coefficient vectors ---

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % u64::from(p);
        }
    }
    let mut prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_reduce(&mut prod, modulus, p);
    prod.resize(k, 0);
    prod
}

/// Reduces `a` in place modulo a monic `m`; afterwards `a.len() < m.len()`
/// (or `a` is shorter already).
fn poly_reduce(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            let t = (u64::from(lead) * u64::from(c)) % u64::from(p);
            a[shift + i] = ((u64::from(a[shift + i]) + u64::from(p) - t) % u64::from(p)) as u32;
        }
    }
}

fn digits(mut code: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True iff the monic polynomial `f` (degree >= 1) has no monic factor of
/// degree `1..=deg/2`, found by exhaustive trial division.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for j in 1..=deg / 2 {
        let count = (p as u64).pow(j as u32);
        for t in 0..count {
            let mut g = digits(t as u32, p, j);
            g.push(1);
            let mut r = f.to_vec();
            poly_reduce(&mut r, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (by `(a_0, ..., a_{k-1})`) monic irreducible
/// polynomial of degree `k` over `GF(p)`.
pub(crate) fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u64).pow(k as u32);
    for t in 0..count {
        // a_0 is the most significant digit of t
        let mut f = vec![0u32; k + 1];
        let mut rest = t;
        for i in (0..k).rev() {
            f[i] = (rest % u64::from(p)) as u32;
            rest /= u64::from(p);
        }
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> LogTables {
    let (p, q, k) = (inner.p, inner.q, inner.k as usize);
    let order = q - 1;
    let slow_mul = |a: u32, b: u32| -> u32 {
        undigits(
            &poly_mul_mod(&digits(a, p, k), &digits(b, p, k), &inner.modulus, p),
            p,
        )
    };
    for g in 2..q {
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut x = 1u32;
        let mut generates = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                generates = false;
                break;
            }
            exp.push(x);
            x = slow_mul(x, g);
        }
        if !generates || x != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        exp.extend_from_within(..);
        return LogTables { exp, log };
    }
    unreachable!("the unit group of a finite field is cyclic")
}
