//! Canonical subspaces and stratified enumeration of `Gr(d, n)`.
//!
//! A subspace is represented by the nonzero rows of its unique row-reduced
//! echelon basis (a `d x n` matrix; [`EchelonForm::padded`] gives the square
//! `n x n` form with zero rows appended). Enumeration walks pivot sequences
//! in lexicographic order and, within each stratum, counts through the free
//! entries in base `q`: free positions in row-major order, last position
//! varying fastest, element codes ascending.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::counting::count_gaussian;
use crate::field::{Fe, FieldSpec};
use crate::matrix::{echelon_coordinates, Mat};
use crate::pivots::{pivot_sequences, stratum_size, PivotSeq, PivotSequences};
use crate::{Error, Result};

/// Default refusal threshold for enumerations.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Guard on the number of items an enumeration may yield.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimit {
    pub cap: u64,
    pub force: bool,
}

impl Default for EnumLimit {
    fn default() -> Self {
        EnumLimit {
            cap: DEFAULT_CAP,
            force: false,
        }
    }
}

impl EnumLimit {
    pub const UNBOUNDED: EnumLimit = EnumLimit {
        cap: u64::MAX,
        force: true,
    };

    pub fn with_cap(cap: u64) -> EnumLimit {
        EnumLimit { cap, force: false }
    }

    pub fn check(&self, size: &BigUint) -> Result<()> {
        if self.force || *size <= BigUint::from(self.cap) {
            Ok(())
        } else {
            Err(Error::EnumerationTooLarge {
                size: size.clone(),
                cap: self.cap,
            })
        }
    }
}

/// A rank-`d` row-reduced echelon matrix with `n` columns, stored without
/// zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonForm {
    rows: Mat,
    pivots: PivotSeq,
}

impl EchelonForm {
    /// Accepts `rows` if it is in row-reduced echelon form with no zero rows.
    pub fn new(rows: Mat) -> Result<EchelonForm> {
        if !rows.is_rref() {
            return Err(Error::InvalidPivots);
        }
        let mut cols = Vec::with_capacity(rows.rows());
        for i in 0..rows.rows() {
            let c = rows.leading_col(i).ok_or(Error::InvalidPivots)?;
            cols.push(c + 1);
        }
        let pivots = PivotSeq::new(rows.cols(), cols)?;
        Ok(EchelonForm { rows, pivots })
    }

    pub fn field(&self) -> &FieldSpec {
        self.rows.field()
    }

    pub fn n(&self) -> usize {
        self.rows.cols()
    }

    pub fn d(&self) -> usize {
        self.rows.rows()
    }

    pub fn rows(&self) -> &Mat {
        &self.rows
    }

    pub fn pivots(&self) -> &PivotSeq {
        &self.pivots
    }

    /// The `n x n` presentation: the `d` rows followed by `n - d` zero rows.
    pub fn padded(&self) -> Mat {
        self.rows.pad_rows(self.n() - self.d())
    }

    /// Free-entry values in enumeration order.
    pub fn free_values(&self) -> Vec<Fe> {
        self.pivots
            .free_positions()
            .into_iter()
            .map(|(i, j)| self.rows.get(i, j))
            .collect()
    }

    /// Position of this form within its stratum's enumeration order.
    pub fn stratum_index(&self) -> BigUint {
        let q = BigUint::from(self.field().order());
        self.free_values()
            .into_iter()
            .fold(BigUint::zero(), |acc, v| acc * &q + BigUint::from(v.code()))
    }
}

/// A subspace of `F^n`, identified by its canonical echelon form.
///
/// Two subspaces are equal iff their canonical matrices are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    canon: EchelonForm,
}

impl Subspace {
    /// The subspace spanned by the rows of `a`.
    pub fn span(a: &Mat) -> Subspace {
        let r = a.rref();
        let rows = r.rref.top_rows(r.rank);
        let pivots = PivotSeq::new(a.cols(), r.pivots).expect("rref pivots are increasing");
        Subspace {
            canon: EchelonForm { rows, pivots },
        }
    }

    pub fn canon(&self) -> &EchelonForm {
        &self.canon
    }

    pub fn into_canon(self) -> EchelonForm {
        self.canon
    }

    pub fn dim(&self) -> usize {
        self.canon.d()
    }

    pub fn ambient_dim(&self) -> usize {
        self.canon.n()
    }

    pub fn field(&self) -> &FieldSpec {
        self.canon.field()
    }

    /// Membership test: `v` lies in the subspace iff it equals the
    /// combination of the canonical rows weighted by its own pivot entries.
    pub fn contains(&self, v: &[Fe]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        for e in v {
            self.field().element(u64::from(e.code()))?;
        }
        Ok(echelon_coordinates(&self.canon.rows, self.canon.pivots.columns(), v).is_some())
    }

    /// Equality that rejects incomparable operands instead of answering
    /// `false`.
    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(self == other)
    }
}

impl From<EchelonForm> for Subspace {
    fn from(canon: EchelonForm) -> Self {
        Subspace { canon }
    }
}

/// The canonical form of the row space of `a`.
pub fn canonicalize(a: &Mat) -> Subspace {
    Subspace::span(a)
}

/// All echelon forms with a fixed pivot sequence.
#[derive(Debug, Clone)]
pub struct StratumIter {
    template: Mat,
    pivots: PivotSeq,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    q: u32,
    done: bool,
}

impl StratumIter {
    fn new(field: &FieldSpec, s: &PivotSeq) -> StratumIter {
        let mut template = Mat::zeros(field, s.d(), s.n());
        for (i, &c) in s.columns().iter().enumerate() {
            template.set(i, c - 1, Fe::ONE);
        }
        let free = s.free_positions();
        StratumIter {
            template,
            pivots: s.clone(),
            counter: vec![0; free.len()],
            free,
            q: field.order(),
            done: false,
        }
    }

    /// Repositions the iterator so the next item is the one at `index`
    /// within the stratum. Indices past the end exhaust the iterator.
    pub fn seek(&mut self, index: &BigUint) {
        let q = BigUint::from(self.q);
        let mut rest = index.clone();
        for slot in self.counter.iter_mut().rev() {
            *slot = (&rest % &q).to_u32().expect("digit below q");
            rest /= &q;
        }
        self.done = !rest.is_zero();
    }

    fn advance(&mut self) {
        for slot in self.counter.iter_mut().rev() {
            *slot += 1;
            if *slot < self.q {
                return;
            }
            *slot = 0;
        }
        self.done = true;
    }
}

impl Iterator for StratumIter {
    type Item = EchelonForm;

    fn next(&mut self) -> Option<EchelonForm> {
        if self.done {
            return None;
        }
        let mut rows = self.template.clone();
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            rows.set(i, j, Fe::new(v));
        }
        self.advance();
        Some(EchelonForm {
            rows,
            pivots: self.pivots.clone(),
        })
    }
}

/// Enumerates the stratum of echelon forms with pivots `s`: `q^e(s)` items.
pub fn enumerate_stratum(field: &FieldSpec, s: &PivotSeq, limit: EnumLimit) -> Result<StratumIter> {
    limit.check(&stratum_size(s, u64::from(field.order()))?)?;
    Ok(StratumIter::new(field, s))
}

/// Every `d`-dimensional subspace of `F^n`, once each.
#[derive(Debug, Clone)]
pub struct GrassmannianIter {
    field: FieldSpec,
    strata: PivotSequences,
    current: Option<StratumIter>,
}

impl Iterator for GrassmannianIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if let Some(form) = self.current.as_mut().and_then(Iterator::next) {
                return Some(Subspace { canon: form });
            }
            let s = self.strata.next()?;
            self.current = Some(StratumIter::new(&self.field, &s));
        }
    }
}

/// Enumerates `Gr(d, n)` over `field`, strata in lexicographic pivot order.
pub fn enumerate_grassmannian(
    field: &FieldSpec,
    n: usize,
    d: usize,
    limit: EnumLimit,
) -> Result<GrassmannianIter> {
    let strata = pivot_sequences(n, d)?;
    limit.check(&count_gaussian(u64::from(field.order()), n, d)?)?;
    Ok(GrassmannianIter {
        field: field.clone(),
        strata,
        current: None,
    })
}
