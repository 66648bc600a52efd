//! Exact cardinality of `Gr(d, n)` over a field with `q` elements.
//!
//! Three independent routes:
//!
//! - the Gaussian product `prod (q^n - q^i) / prod (q^d - q^i)`, `0 <= i < d`;
//! - the pivot sum: one term `q^e(s)` per pivot sequence `s`;
//! - the coefficient polynomial `sum c_l q^(m-l)` with `m = d(n-d)`, where
//!   `c_l` counts the pivot sequences with `sum s_i = l + d(d+1)/2`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::parse_order;
use crate::pivots::pivot_sequences;
use crate::{Error, Result};

/// Exact nonnegative integer.
pub type BigCount = BigUint;

/// Above this many pivot sequences [`coeff_poly`] switches from streaming to
/// the partitions-in-a-box recurrence.
pub const STREAMING_LIMIT: u64 = 1 << 22;

pub(crate) fn check_prime_power(q: u64) -> Result<()> {
    parse_order(q).map(|_| ())
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    if d > n {
        Err(Error::InvalidDimension { n, d })
    } else {
        Ok(())
    }
}

/// `binomial(n, k)` by the multiplicative formula; every partial product is
/// itself a binomial coefficient, so each division is exact.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `|Gr(d, n)|` by the Gaussian product formula.
///
/// The whole numerator is formed first and divided once; the remainder is
/// checked to be zero.
pub fn count_gaussian(q: u64, n: usize, d: usize) -> Result<BigCount> {
    check_prime_power(q)?;
    check_dims(n, d)?;
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let qd = q.pow(d as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..d {
        num *= &qn - &qi;
        den *= &qd - &qi;
        qi *= &q;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian numerator not divisible by denominator");
    Ok(quot)
}

/// `|Gr(d, n)|` as the sum of stratum sizes over all pivot sequences.
pub fn count_pivot_sum(q: u64, n: usize, d: usize) -> Result<BigCount> {
    check_prime_power(q)?;
    let strata = pivot_sequences(n, d)?;
    let m = d * (n - d);
    let q = BigUint::from(q);
    let mut powers = Vec::with_capacity(m + 1);
    powers.push(BigUint::one());
    for i in 0..m {
        let next = &powers[i] * &q;
        powers.push(next);
    }
    Ok(strata.fold(BigUint::zero(), |acc, s| acc + &powers[s.excess()]))
}

/// `|Gr(d, n)|` as a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    n: usize,
    d: usize,
    /// `c_0, ..., c_m`; `c_l` multiplies `q^(m-l)`.
    coeffs: Vec<BigCount>,
}

impl QPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `m = d(n-d)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients, highest power first.
    pub fn coeffs(&self) -> &[BigCount] {
        &self.coeffs
    }

    /// Horner evaluation. Any `q` is accepted; `q = 1` gives `binomial(n, d)`.
    pub fn eval(&self, q: u64) -> BigCount {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc * q + c)
    }
}

/// Coefficients by bucketing every pivot sequence on `sum s_i`.
pub fn coeff_poly_streaming(n: usize, d: usize) -> Result<QPoly> {
    let strata = pivot_sequences(n, d)?;
    let m = d * (n - d);
    let base = d * (d + 1) / 2;
    let mut counts = vec![0u64; m + 1];
    for s in strata {
        counts[s.sum() - base] += 1;
    }
    Ok(QPoly {
        n,
        d,
        coeffs: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// Coefficients by counting partitions in a `d x (n-d)` box.
///
/// `s_i - i` is a nondecreasing sequence in `[0, n-d]`, so `c_l` is the
/// number of partitions of `l` into at most `d` parts of size at most
/// `n - d`. Uses `p(i, j) = p(i, j-1) + x^j p(i-1, j)`.
pub fn coeff_poly_recurrence(n: usize, d: usize) -> Result<QPoly> {
    check_dims(n, d)?;
    let w = n - d;
    let m = d * w;
    // row[j] = partitions with at most i parts, each <= j, as a coefficient vector
    let mut prev: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]; w + 1];
    for i in 1..=d {
        let mut row: Vec<Vec<BigUint>> = Vec::with_capacity(w + 1);
        row.push(vec![BigUint::one()]);
        for j in 1..=w {
            let mut poly = row[j - 1].clone();
            let shifted = &prev[j];
            poly.resize(poly.len().max(shifted.len() + j).min(i * j + 1), BigUint::zero());
            for (t, c) in shifted.iter().enumerate() {
                poly[t + j] += c;
            }
            row.push(poly);
        }
        prev = row;
    }
    let mut coeffs = prev.pop().expect("w + 1 >= 1 entries");
    coeffs.resize(m + 1, BigUint::zero());
    Ok(QPoly { n, d, coeffs })
}

/// Coefficient polynomial of `|Gr(d, n)|`.
pub fn coeff_poly(n: usize, d: usize) -> Result<QPoly> {
    check_dims(n, d)?;
    if binomial(n as u64, d as u64) <= BigUint::from(STREAMING_LIMIT) {
        coeff_poly_streaming(n, d)
    } else {
        coeff_poly_recurrence(n, d)
    }
}

pub fn eval_poly(p: &QPoly, q: u64) -> BigCount {
    p.eval(q)
}

/// Counting route selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Gaussian,
    #[default]
    PivotSum,
    Poly,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Gaussian, Method::PivotSum, Method::Poly];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Gaussian => "gaussian",
            Method::PivotSum => "pivot",
            Method::Poly => "poly",
        })
    }
}

/// Error for an unrecognized method name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of: gaussian, pivot, poly")
    }
}

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "gaussian" => Ok(Method::Gaussian),
            "pivot" => Ok(Method::PivotSum),
            "poly" => Ok(Method::Poly),
            _ => Err(UnknownMethod),
        }
    }
}

/// `|Gr(d, n)|` over a field of order `q` by the chosen route.
pub fn count(q: u64, n: usize, d: usize, method: Method) -> Result<BigCount> {
    match method {
        Method::Gaussian => count_gaussian(q, n, d),
        Method::PivotSum => count_pivot_sum(q, n, d),
        Method::Poly => {
            check_prime_power(q)?;
            Ok(coeff_poly(n, d)?.eval(q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn small(p: &QPoly) -> Vec<u64> {
        p.coeffs()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(count_gaussian(2, 4, 2).unwrap(), big(35));
        assert_eq!(count_gaussian(7, 5, 0).unwrap(), big(1));
        assert_eq!(count_gaussian(3, 3, 1).unwrap(), big(13));
        assert_eq!(count_gaussian(6, 4, 2), Err(Error::NotPrimePower(6)));
        assert_eq!(
            count_gaussian(2, 2, 3),
            Err(Error::InvalidDimension { n: 2, d: 3 })
        );
    }

    #[test]
    fn pivot_sum_examples() {
        // strata exponents 4,3,2,2,1,0
        assert_eq!(16 + 8 + 4 + 4 + 2 + 1, 35);
        assert_eq!(count_pivot_sum(2, 4, 2).unwrap(), big(35));
        assert_eq!(count_pivot_sum(9, 6, 6).unwrap(), big(1));
        assert_eq!(count_pivot_sum(2, 2, 1).unwrap(), big(3));
    }

    #[test]
    fn poly_examples() {
        assert_eq!(small(&coeff_poly(4, 2).unwrap()), vec![1, 1, 2, 1, 1]);
        assert_eq!(small(&coeff_poly(7, 1).unwrap()), vec![1; 7]);
        assert_eq!(small(&coeff_poly(3, 0).unwrap()), vec![1]);
        assert_eq!(coeff_poly(4, 2).unwrap().eval(2), big(35));
        assert_eq!(coeff_poly(5, 0).unwrap().eval(1234), big(1));
        assert_eq!(coeff_poly(4, 2).unwrap().degree(), 4);
    }

    #[test]
    fn q_one_is_binomial() {
        for n in 0..=14 {
            for d in 0..=n {
                assert_eq!(coeff_poly(n, d).unwrap().eval(1), binomial(n as u64, d as u64));
            }
        }
    }

    #[test]
    fn binomial_pascal() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
            assert_eq!(binomial(n, 0), big(1));
            assert_eq!(binomial(n, n), big(1));
            assert_eq!(binomial(n, n + 1), big(0));
        }
    }

    #[test]
    fn recurrence_matches_streaming() {
        for n in 0..=16 {
            for d in 0..=n {
                assert_eq!(
                    coeff_poly_recurrence(n, d).unwrap(),
                    coeff_poly_streaming(n, d).unwrap(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn large_n_uses_recurrence() {
        let p = coeff_poly(64, 32).unwrap();
        assert_eq!(p.degree(), 1024);
        assert_eq!(p.eval(1), binomial(64, 32));
        assert_eq!(p.eval(2), count_gaussian(2, 64, 32).unwrap());
    }

    #[test]
    fn methods_agree() {
        for m in Method::ALL {
            assert_eq!(count(2, 4, 2, m).unwrap(), big(35));
            assert_eq!(count(4, 3, 2, m), Ok(big(21)));
            assert_eq!(count(10, 3, 2, m), Err(Error::NotPrimePower(10)));
        }
        assert_eq!("pivot".parse::<Method>(), Ok(Method::PivotSum));
        assert!("fast".parse::<Method>().is_err());
        assert_eq!(Method::default(), Method::PivotSum);
    }

    #[test]
    fn counts_beyond_u64() {
        let c = count_gaussian(9, 20, 10).unwrap();
        assert!(c.bits() > 64);
        assert_eq!(count_pivot_sum(9, 20, 10).unwrap(), c);
    }
}
