//! Brute-force ground truth for small Grassmannians.
//!
//! Subspaces are found straight from the definition: every `d`-tuple of
//! vectors in `F^n` is expanded to all `q^d` of its linear combinations; the
//! tuple is independent iff those combinations are pairwise distinct, and
//! the sorted list of their encodings is the subspace's signature. Only field
//! addition and multiplication are used here: no row reduction, pivot
//! sequences or counting formulas.
//!
//! A vector `(v_0, ..., v_{n-1})` is encoded as `sum code(v_i) q^i`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::counting::{coeff_poly, count_gaussian, count_pivot_sum, BigCount};
use crate::field::{Fe, FieldSpec};
use crate::grassmannian::{canonicalize, enumerate_grassmannian, EnumLimit};
use crate::matrix::Mat;
use crate::{Error, Result};

/// Default cap on the number of raw `d`-tuples examined (`q^(dn)`).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Below this many vectors, vector addition and scaling are tabulated.
const TABLE_LIMIT: u64 = 1 << 10;

/// Encoded-vector arithmetic on `F^n`.
struct Vectors<'a> {
    field: &'a FieldSpec,
    n: usize,
    q: u64,
    size: u64,
    add: Vec<u64>,
    smul: Vec<u64>,
}

impl<'a> Vectors<'a> {
    fn new(field: &'a FieldSpec, n: usize) -> Option<Vectors<'a>> {
        let q = u64::from(field.order());
        let size = q.checked_pow(n as u32)?;
        let mut vs = Vectors {
            field,
            n,
            q,
            size,
            add: Vec::new(),
            smul: Vec::new(),
        };
        if size <= TABLE_LIMIT {
            let mut add = vec![0; (size * size) as usize];
            for u in 0..size {
                for v in 0..size {
                    add[(u * size + v) as usize] = vs.add_slow(u, v);
                }
            }
            let mut smul = vec![0; (q * size) as usize];
            for c in 0..q {
                for u in 0..size {
                    smul[(c * size + u) as usize] = vs.smul_slow(Fe::new(c as u32), u);
                }
            }
            vs.add = add;
            vs.smul = smul;
        }
        Some(vs)
    }

    fn decode(&self, mut code: u64) -> Vec<Fe> {
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push(Fe::new((code % self.q) as u32));
            code /= self.q;
        }
        out
    }

    fn encode(&self, v: &[Fe]) -> u64 {
        v.iter()
            .rev()
            .fold(0, |acc, e| acc * self.q + u64::from(e.code()))
    }

    fn add_slow(&self, u: u64, v: u64) -> u64 {
        let s: Vec<Fe> = self
            .decode(u)
            .into_iter()
            .zip(self.decode(v))
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        self.encode(&s)
    }

    fn smul_slow(&self, c: Fe, u: u64) -> u64 {
        let s: Vec<Fe> = self
            .decode(u)
            .into_iter()
            .map(|a| self.field.mul(c, a))
            .collect();
        self.encode(&s)
    }

    fn add(&self, u: u64, v: u64) -> u64 {
        if self.add.is_empty() {
            self.add_slow(u, v)
        } else {
            self.add[(u * self.size + v) as usize]
        }
    }

    fn smul(&self, c: u64, u: u64) -> u64 {
        if self.smul.is_empty() {
            self.smul_slow(Fe::new(c as u32), u)
        } else {
            self.smul[(c * self.size + u) as usize]
        }
    }

    /// All `q^k` combinations of the `k` given vectors, in generation order.
    fn combinations(&self, gens: &[u64], out: &mut Vec<u64>) {
        out.clear();
        out.push(0);
        for &g in gens {
            let len = out.len();
            for c in 1..self.q {
                let cg = self.smul(c, g);
                for i in 0..len {
                    let v = self.add(out[i], cg);
                    out.push(v);
                }
            }
        }
    }
}

/// Sorted encodings of every vector in the span of the rows of `rows`,
/// computed by expanding all combinations.
pub fn span_signature(rows: &Mat) -> Result<Vec<u64>> {
    let field = rows.field();
    let vs = Vectors::new(field, rows.cols()).ok_or_else(|| overflow_error(field, rows.cols()))?;
    let gens: Vec<u64> = rows.row_iter().map(|r| vs.encode(r)).collect();
    let mut all = Vec::new();
    vs.combinations(&gens, &mut all);
    all.sort_unstable();
    all.dedup();
    Ok(all)
}

fn overflow_error(field: &FieldSpec, n: usize) -> Error {
    Error::BudgetExceeded {
        tuples: BigUint::from(field.order()).pow(n as u32),
        budget: u64::MAX,
    }
}

/// The set of `d`-dimensional subspaces of `F^n`, as signatures.
#[derive(Debug, Clone)]
pub struct SubspaceSet {
    field: FieldSpec,
    n: usize,
    d: usize,
    members: BTreeSet<Vec<u64>>,
}

impl SubspaceSet {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Signatures in ascending order.
    pub fn members(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.members.iter()
    }

    /// Decodes a vector code back to its components.
    pub fn decode(&self, code: u64) -> Vec<Fe> {
        let q = u64::from(self.field.order());
        let mut code = code;
        (0..self.n)
            .map(|_| {
                let e = Fe::new((code % q) as u32);
                code /= q;
                e
            })
            .collect()
    }

    /// A matrix whose rows are all members of the signature.
    pub fn spanning_matrix(&self, signature: &[u64]) -> Mat {
        let entries: Vec<Fe> = signature.iter().flat_map(|&c| self.decode(c)).collect();
        Mat::from_flat(&self.field, signature.len(), self.n, entries)
            .expect("decoded codes are in range")
    }
}

/// Enumerates `Gr(d, n)` by brute force, refusing if `q^(dn)` exceeds
/// `budget`.
pub fn brute_force_subspaces(field: &FieldSpec, n: usize, d: usize, budget: u64) -> Result<SubspaceSet> {
    if d > n {
        return Err(Error::InvalidDimension { n, d });
    }
    let tuples = BigUint::from(field.order()).pow((d * n) as u32);
    if tuples > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { tuples, budget });
    }
    let mut members = BTreeSet::new();
    if d == 0 {
        members.insert(vec![0]);
        return Ok(SubspaceSet {
            field: field.clone(),
            n,
            d,
            members,
        });
    }
    let vs = Vectors::new(field, n).ok_or_else(|| overflow_error(field, n))?;
    let mut tuple = vec![0u64; d];
    let mut combos = Vec::with_capacity(1 << d);
    loop {
        vs.combinations(&tuple, &mut combos);
        combos.sort_unstable();
        if combos.windows(2).all(|w| w[0] != w[1]) && !members.contains(&combos) {
            members.insert(combos.clone());
        }
        // next tuple, odometer over d digits in base q^n
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(SubspaceSet {
                    field: field.clone(),
                    n,
                    d,
                    members,
                });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < vs.size {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Outcome of [`cross_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub q: u32,
    pub n: usize,
    pub d: usize,
    pub oracle: BigCount,
    pub gaussian: BigCount,
    pub pivot: BigCount,
    pub poly: BigCount,
    /// Number of subspaces yielded by [`enumerate_grassmannian`].
    pub enumerated: BigCount,
    /// Signature-to-canonical-form map is injective, preserves row spaces,
    /// and its image equals the enumeration output.
    pub bijection: bool,
}

impl CrossCheckReport {
    pub fn counts_agree(&self) -> bool {
        self.oracle == self.gaussian
            && self.oracle == self.pivot
            && self.oracle == self.poly
            && self.oracle == self.enumerated
    }

    pub fn passed(&self) -> bool {
        self.counts_agree() && self.bijection
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.counts_agree() { " = " } else { " vs " };
        write!(
            f,
            "{} q={} n={} d={} oracle/gaussian/pivot/poly: {}{sep}{}{sep}{}{sep}{}, enumerated {}, bijection {}",
            if self.passed() { "pass" } else { "fail" },
            self.q,
            self.n,
            self.d,
            self.oracle,
            self.gaussian,
            self.pivot,
            self.poly,
            self.enumerated,
            if self.bijection { "ok" } else { "fail" },
        )
    }
}

/// Certifies `Gr(d, n)` over `field`: oracle count against the three
/// formulas, and the canonical-form map against the stratified enumeration.
/// Mismatches are reported, not returned as errors.
pub fn cross_check(field: &FieldSpec, n: usize, d: usize, budget: u64) -> Result<CrossCheckReport> {
    let oracle = brute_force_subspaces(field, n, d, budget)?;
    let q = u64::from(field.order());

    let mut listed = BTreeSet::new();
    let mut enumerated = 0u64;
    let mut distinct = true;
    for w in enumerate_grassmannian(field, n, d, EnumLimit::UNBOUNDED)? {
        enumerated += 1;
        distinct &= w.dim() == d && w.canon().rows().is_rref();
        distinct &= listed.insert(w.canon().rows().to_codes());
    }

    let mut images = BTreeSet::new();
    let mut preserves = true;
    for sig in oracle.members() {
        let w = canonicalize(&oracle.spanning_matrix(sig));
        preserves &= w.dim() == d && span_signature(w.canon().rows())? == *sig;
        images.insert(w.canon().rows().to_codes());
    }
    let injective = images.len() == oracle.len();

    Ok(CrossCheckReport {
        q: field.order(),
        n,
        d,
        oracle: BigUint::from(oracle.len()),
        gaussian: count_gaussian(q, n, d)?,
        pivot: count_pivot_sum(q, n, d)?,
        poly: coeff_poly(n, d)?.eval(q),
        enumerated: BigUint::from(enumerated),
        bijection: distinct && preserves && injective && images == listed,
    })
}
