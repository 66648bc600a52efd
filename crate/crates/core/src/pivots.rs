//! Pivot sequences.
//!
//! A rank-`d` echelon form with `n` columns has its leading ones in columns
//! `s_1 < s_2 < ... < s_d` (1-based). The feasible tuples are exactly those
//! with `1 <= s_1 <= n-d+1` and `s_{i-1} < s_i <= n-d+i`. All echelon forms
//! sharing one such tuple form a stratum with `q^e(s)` members, where
//! `e(s) = d(n-d) + d(d+1)/2 - sum s_i` counts the free entries.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::counting::{check_prime_power, BigCount};
use crate::{Error, Result};

/// A strictly increasing tuple of 1-based pivot columns, valid for an
/// ambient dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PivotSeq {
    n: usize,
    s: Vec<usize>,
}

impl fmt::Display for PivotSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.s {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    if d > n {
        Err(Error::InvalidDimension { n, d })
    } else {
        Ok(())
    }
}

impl PivotSeq {
    /// Validates `s` against `n`.
    pub fn new(n: usize, s: Vec<usize>) -> Result<PivotSeq> {
        let d = s.len();
        check_dims(n, d)?;
        let mut prev = 0;
        for (i, &c) in s.iter().enumerate() {
            // 1-based row i+1 may not pivot later than column n-d+i+1
            if c <= prev || c > n - d + i + 1 {
                return Err(Error::InvalidPivots);
            }
            prev = c;
        }
        Ok(PivotSeq { n, s })
    }

    /// `(1, 2, ..., d)`: the stratum of largest size.
    pub fn leftmost(n: usize, d: usize) -> Result<PivotSeq> {
        check_dims(n, d)?;
        Ok(PivotSeq {
            n,
            s: (1..=d).collect(),
        })
    }

    /// `(n-d+1, ..., n)`: the single-element stratum.
    pub fn rightmost(n: usize, d: usize) -> Result<PivotSeq> {
        check_dims(n, d)?;
        Ok(PivotSeq {
            n,
            s: (n - d + 1..=n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.s.len()
    }

    pub fn columns(&self) -> &[usize] {
        &self.s
    }

    pub fn sum(&self) -> usize {
        self.s.iter().sum()
    }

    /// Number of free entries `e(s) = d(n-d) + d(d+1)/2 - sum s_i`.
    pub fn excess(&self) -> usize {
        let (n, d) = (self.n, self.d());
        d * (n - d) + d * (d + 1) / 2 - self.sum()
    }

    /// Free positions `(row, col)`, 0-based, in row-major order: in row `i`,
    /// every column right of the row's pivot that is not itself a pivot
    /// column. Row `i` contributes `n - d - (s_i - i)` of them.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        let mut is_pivot = alloc::vec![false; self.n];
        for &c in &self.s {
            is_pivot[c - 1] = true;
        }
        let mut out = Vec::with_capacity(self.excess());
        for (i, &c) in self.s.iter().enumerate() {
            out.extend((c..self.n).filter(|&j| !is_pivot[j]).map(|j| (i, j)));
        }
        out
    }
}

/// Lexicographic stream of all pivot sequences for `(n, d)`.
#[derive(Debug, Clone)]
pub struct PivotSequences {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for PivotSequences {
    type Item = PivotSeq;

    fn next(&mut self) -> Option<PivotSeq> {
        let cur = self.next.take()?;
        let (n, d) = (self.n, cur.len());
        // rightmost position that can still move right
        if let Some(i) = (0..d).rev().find(|&i| cur[i] < n - d + i + 1) {
            let mut succ = cur.clone();
            succ[i] += 1;
            for j in i + 1..d {
                succ[j] = succ[j - 1] + 1;
            }
            self.next = Some(succ);
        }
        Some(PivotSeq { n, s: cur })
    }
}

/// Every pivot sequence for `(n, d)`, once each, in lexicographic order.
/// There are `binomial(n, d)` of them; `d = 0` gives one empty sequence.
pub fn pivot_sequences(n: usize, d: usize) -> Result<PivotSequences> {
    check_dims(n, d)?;
    Ok(PivotSequences {
        n,
        next: Some((1..=d).collect()),
    })
}

/// Size of the stratum of echelon forms with pivots `s` over a field of
/// order `q`: `q^e(s)`.
pub fn stratum_size(s: &PivotSeq, q: u64) -> Result<BigCount> {
    check_prime_power(q)?;
    Ok(BigUint::from(q).pow(s.excess() as u32))
}
