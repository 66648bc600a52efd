//! Dense matrices over a [`FieldSpec`] and row reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Fe, FieldSpec};
use crate::{Error, Result};

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}; {}x{}]", self.field, self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter()).finish()
    }
}

/// Writes one row per line, codes separated by single spaces.
impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let mut first = true;
            for e in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from row-major entries, validating every code.
    pub fn from_flat(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<Fe>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for e in &entries {
            field.element(u64::from(e.code()))?;
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of element codes. Column count is taken
    /// from the first row; an empty slice gives a `0 x 0` matrix.
    pub fn from_rows<R: AsRef<[u32]>>(field: &FieldSpec, rows: &[R]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Mat::from_rows_with_cols(field, cols, rows)
    }

    pub fn from_rows_with_cols<R: AsRef<[u32]>>(
        field: &FieldSpec,
        cols: usize,
        rows: &[R],
    ) -> Result<Mat> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::RaggedRows);
            }
            for &c in r {
                entries.push(field.element(u64::from(c))?);
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> {
        // chunks_exact(0) panics, and a 0-column matrix still has rows
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Rows as plain code vectors.
    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        self.row_iter()
            .map(|r| r.iter().map(|e| e.code()).collect())
            .collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, rhs.get(t, j))));
                }
            }
        }
        Ok(out)
    }

    /// Copy of the first `n` rows.
    pub fn top_rows(&self, n: usize) -> Mat {
        let n = n.min(self.rows);
        Mat {
            field: self.field.clone(),
            rows: n,
            cols: self.cols,
            entries: self.entries[..n * self.cols].to_vec(),
        }
    }

    /// Appends `extra` zero rows at the bottom.
    pub fn pad_rows(&self, extra: usize) -> Mat {
        let mut entries = self.entries.clone();
        entries.resize((self.rows + extra) * self.cols, Fe::ZERO);
        Mat {
            field: self.field.clone(),
            rows: self.rows + extra,
            cols: self.cols,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.entries.swap(a * c + j, b * c + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: Fe) {
        for j in 0..self.cols {
            let v = self.get(r, j);
            self.set(r, j, self.field.mul(v, s));
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: Fe, from_col: usize) {
        let f = self.field.clone();
        for j in from_col..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let t = self.get(target, j);
            self.set(target, j, f.sub(t, f.mul(factor, s)));
        }
    }

    /// Row-reduced echelon form.
    ///
    /// Forward sweep over columns left to right, taking as pivot the first
    /// remaining row with a nonzero entry; then back-substitution clears the
    /// entries above each pivot.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(r) = (next..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next, r);
            let inv = f.inv(m.get(next, col)).expect("pivot is nonzero");
            m.scale_row(next, inv);
            for below in next + 1..m.rows {
                let factor = m.get(below, col);
                if !factor.is_zero() {
                    m.sub_row_multiple(below, next, factor, col);
                }
            }
            pivots.push(col);
            next += 1;
        }
        for (i, &col) in pivots.iter().enumerate().rev() {
            for above in 0..i {
                let factor = m.get(above, col);
                if !factor.is_zero() {
                    m.sub_row_multiple(above, i, factor, col);
                }
            }
        }
        RrefResult {
            rank: pivots.len(),
            pivots: pivots.into_iter().map(|c| c + 1).collect(),
            rref: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Index of the first nonzero entry of row `i`, if any.
    pub fn leading_col(&self, i: usize) -> Option<usize> {
        self.row(i).iter().position(|e| !e.is_zero())
    }

    /// True iff `self` is in row-reduced echelon form: leading entries are
    /// 1, each pivot column is zero outside its pivot, pivot columns
    /// strictly increase and zero rows come last.
    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..self.rows {
            match self.leading_col(i) {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row || self.get(i, c) != Fe::ONE {
                        return false;
                    }
                    if last.is_some_and(|l| c <= l) {
                        return false;
                    }
                    if (0..self.rows).any(|r| r != i && !self.get(r, c).is_zero()) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }
}

/// Coordinates of `v` with respect to the first `pivots.len()` rows of the
/// reduced matrix `r`. `v` must already have `r.cols()` entries.
pub(crate) fn echelon_coordinates(r: &Mat, pivots: &[usize], v: &[Fe]) -> Option<Vec<Fe>> {
    let f = &r.field;
    let coords: Vec<Fe> = pivots.iter().map(|&k| v[k - 1]).collect();
    let mut acc = vec![Fe::ZERO; v.len()];
    for (i, &c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (a, &x) in acc.iter_mut().zip(r.row(i)) {
            *a = f.add(*a, f.mul(c, x));
        }
    }
    (acc == v).then_some(coords)
}

/// Output of [`Mat::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: Mat,
    pub rank: usize,
    /// Leading-entry columns in row order, 1-based.
    pub pivots: Vec<usize>,
}

impl RrefResult {
    /// The nonzero rows of the reduced matrix (`rank x cols`).
    pub fn basis(&self) -> Mat {
        self.rref.top_rows(self.rank)
    }

    fn check_vector(&self, v: &[Fe]) -> Result<()> {
        if v.len() != self.rref.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rref.cols,
                found: v.len(),
            });
        }
        for e in v {
            self.rref.field.element(u64::from(e.code()))?;
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the row space.
    ///
    /// A row-space member is `sum_i v[k_i] * row_i` where `k_i` are the pivot
    /// columns, so the candidate coordinates are read straight off `v` and
    /// then checked by reconstruction.
    pub fn coordinates(&self, v: &[Fe]) -> Result<Option<Vec<Fe>>> {
        self.check_vector(v)?;
        Ok(echelon_coordinates(&self.rref, &self.pivots, v))
    }

    pub fn contains(&self, v: &[Fe]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn m(q: u64, rows: &[&[u32]]) -> Mat {
        Mat::from_rows(&gf(q), rows).unwrap()
    }

    fn v(codes: &[u32]) -> Vec<Fe> {
        codes.iter().map(|&c| Fe::new(c)).collect()
    }

    #[test]
    fn rref_swap() {
        let r = m(2, &[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r.rref, m(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![1, 2]);
    }

    #[test]
    fn rref_identity_fixed() {
        for q in [2, 3, 4, 9] {
            let id = Mat::identity(&gf(q), 4);
            let r = id.rref();
            assert_eq!(r.rref, id);
            assert_eq!(r.rank, 4);
        }
    }

    #[test]
    fn rref_gf5_dependent() {
        let r = m(5, &[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.rref, m(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![1]);
    }

    #[test]
    fn rref_empty_matrices() {
        let f = gf(3);
        for (rows, cols) in [(0, 0), (0, 4), (3, 0)] {
            let a = Mat::zeros(&f, rows, cols);
            let r = a.rref();
            assert_eq!(r.rref, a);
            assert_eq!(r.rank, 0);
            assert!(r.pivots.is_empty());
            assert!(a.is_rref());
        }
    }

    #[test]
    fn is_rref_cases() {
        assert!(m(2, &[&[1, 0], &[0, 1]]).is_rref());
        assert!(!m(2, &[&[1, 1], &[0, 1]]).is_rref());
        assert!(!m(2, &[&[0, 0], &[1, 0]]).is_rref());
        assert!(!m(3, &[&[2, 0]]).is_rref());
        assert!(!m(3, &[&[0, 1], &[1, 0]]).is_rref());
        assert!(m(3, &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]).is_rref());
    }

    #[test]
    fn rank_cases() {
        assert_eq!(Mat::zeros(&gf(7), 3, 3).rank(), 0);
        assert_eq!(m(2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank(), 2);
        assert_eq!(Mat::identity(&gf(8), 5).rank(), 5);
    }

    #[test]
    fn coordinates_examples() {
        let r = m(2, &[&[1, 0, 1], &[0, 1, 1]]).rref();
        assert_eq!(r.coordinates(&v(&[1, 1, 0])).unwrap(), Some(v(&[1, 1])));
        assert_eq!(r.coordinates(&v(&[0, 0, 0])).unwrap(), Some(v(&[0, 0])));
        assert_eq!(r.coordinates(&v(&[0, 0, 1])).unwrap(), None);
        assert_eq!(
            r.coordinates(&v(&[1, 1])),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
        assert!(r.contains(&v(&[0, 0, 2])).is_err());
    }

    #[test]
    fn contains_examples() {
        let full = Mat::identity(&gf(3), 2).rref();
        for a in 0..3 {
            for b in 0..3 {
                assert!(full.contains(&v(&[a, b])).unwrap());
            }
        }
        let line = m(2, &[&[1, 0]]).rref();
        assert!(!line.contains(&v(&[0, 1])).unwrap());
        assert!(line.contains(&v(&[0, 0])).unwrap());
    }

    #[test]
    fn mul_shapes() {
        let f = gf(5);
        let a = m(5, &[&[1, 2, 3], &[4, 0, 1]]);
        assert_eq!(Mat::identity(&f, 2).mul(&a).unwrap(), a);
        assert!(a.mul(&a).is_err());
        assert_eq!(
            Mat::identity(&gf(2), 2).mul(&Mat::identity(&f, 2)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn construction_errors() {
        let f = gf(3);
        assert_eq!(
            Mat::from_rows(&f, &[vec![0u32, 1], vec![1]]),
            Err(Error::RaggedRows)
        );
        assert!(matches!(
            Mat::from_rows(&f, &[[3u32]]),
            Err(Error::EntryOutOfRange { code: 3, q: 3 })
        ));
    }

    #[test]
    fn display_text_format() {
        let a = m(5, &[&[1, 2], &[0, 4]]);
        assert_eq!(alloc::format!("{a}"), "1 2\n0 4\n");
    }
}
