//! Matrices of forms, their minors and Pfaffians.
//!
//! Sign conventions: a minor is the determinant of the selected rows and
//! columns taken in increasing index order. Maximal minors of a
//! `k x (k+1)` matrix are listed by deleted column, ascending, without an
//! alternating sign. Pfaffians expand along the first row with
//! `Pf([[0, a], [-a, 0]]) = a`; the `i`-th principal Pfaffian of an odd
//! skew matrix carries the sign `(-1)^i`, so the vector of principal
//! Pfaffians lies in the kernel of the matrix.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::FieldSpec;
use crate::ring::{Form, Ring, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Form>,
}

impl FormMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Form>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::Shape(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(FormMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn<F>(ring: Ring, rows: usize, cols: usize, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(usize, usize) -> Form,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FormMatrix::new(ring, rows, cols, entries)
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Form>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        FormMatrix::new(ring, nrows, ncols, rows.into_iter().flatten().collect())
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Form) {
        assert_eq!(value.ring(), self.ring);
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Form] {
        &self.entries
    }

    pub fn transpose(&self) -> FormMatrix {
        FormMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
            .expect("transpose keeps a valid shape")
    }

    pub fn submatrix(&self, rowset: &[usize], colset: &[usize]) -> Result<FormMatrix, AlgebraError> {
        self.check_indices(rowset, colset)?;
        FormMatrix::from_fn(self.ring, rowset.len(), colset.len(), |i, j| {
            self.get(rowset[i], colset[j]).clone()
        })
    }

    /// Grid of entry degrees; zero entries report their declared slot.
    pub fn degree_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).degree()).collect())
            .collect()
    }

    /// Whether the degree grid has the shape of a Hilbert-Burch degree
    /// matrix: `u[i][j] = b_i - a_j` for some integer vectors, with entries
    /// non-increasing along each row and non-decreasing down each column.
    pub fn has_hilbert_burch_degrees(&self) -> bool {
        is_hilbert_burch_grid(&self.degree_matrix())
    }

    /// Whether every entry is a linear form or zero.
    pub fn is_linear(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.degree() == 1)
    }

    fn check_indices(&self, rowset: &[usize], colset: &[usize]) -> Result<(), AlgebraError> {
        for &i in rowset {
            if i >= self.rows {
                return Err(AlgebraError::IndexOutOfRange { index: i, len: self.rows });
            }
        }
        for &j in colset {
            if j >= self.cols {
                return Err(AlgebraError::IndexOutOfRange { index: j, len: self.cols });
            }
        }
        Ok(())
    }

    /// Determinant of the square submatrix on `rowset x colset`.
    pub fn minor(&self, rowset: &[usize], colset: &[usize]) -> Result<Form, AlgebraError> {
        if rowset.len() != colset.len() {
            return Err(AlgebraError::NonSquare {
                rows: rowset.len(),
                cols: colset.len(),
            });
        }
        self.check_indices(rowset, colset)?;
        let k = rowset.len();
        if k == 0 {
            return Ok(self.ring.one());
        }
        let mut rows: Vec<usize> = rowset.to_vec();
        let mut cols: Vec<usize> = colset.to_vec();
        rows.sort_unstable();
        cols.sort_unstable();
        let layer = self.subset_determinants(&rows, &cols, k)?;
        Ok(layer
            .into_iter()
            .next()
            .map(|(_, f)| f)
            .expect("one full subset"))
    }

    pub fn determinant(&self) -> Result<Form, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(&idx, &idx)
    }

    /// The `k + 1` maximal minors of a `k x (k+1)` matrix, by deleted column.
    pub fn maximal_minors(&self) -> Result<Vec<Form>, AlgebraError> {
        if self.cols != self.rows + 1 {
            return Err(AlgebraError::Shape(format!(
                "maximal minors need a k x (k+1) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        let layer = self.subset_determinants(&rows, &cols, self.rows)?;
        let full = (1u32 << self.cols) - 1;
        Ok((0..self.cols)
            .map(|deleted| layer[&(full & !(1 << deleted))].clone())
            .collect())
    }

    /// Dynamic programme over column subsets: after step `s`, the table
    /// holds the determinant of the first `s` selected rows against every
    /// `s`-subset of the selected columns, each computed by Laplace
    /// expansion along its last row from the previous table.
    fn subset_determinants(
        &self,
        rows: &[usize],
        cols: &[usize],
        size: usize,
    ) -> Result<HashMap<u32, Form>, AlgebraError> {
        assert!(cols.len() < 32, "too many columns for subset enumeration");
        let n = cols.len();
        let mut table: HashMap<u32, Form> = HashMap::new();
        table.insert(0, self.ring.one());
        for s in 1..=size {
            let row = rows[s - 1];
            let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == s).collect();
            let prev = &table;
            let next: Result<Vec<(u32, Form)>, AlgebraError> = masks
                .par_iter()
                .map(|&mask| {
                    let mut acc: Option<Form> = None;
                    let mut pos = 0usize;
                    for j in 0..n {
                        if mask & (1 << j) == 0 {
                            continue;
                        }
                        let entry = self.get(row, cols[j]);
                        let sub = &prev[&(mask & !(1 << j))];
                        let mut term = entry.mul(sub);
                        if (s - 1 + pos) % 2 == 1 {
                            term = term.neg();
                        }
                        acc = Some(match acc {
                            None => term,
                            Some(a) => a.add(&term)?,
                        });
                        pos += 1;
                    }
                    Ok((mask, acc.expect("nonempty mask")))
                })
                .collect();
            table = next?.into_iter().collect();
        }
        Ok(table)
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            p: self.ring.modulus(),
            nvars: self.ring.nvars(),
            rows: self.rows,
            cols: self.cols,
            degrees: Some(self.degree_matrix()),
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_terms()).collect())
                .collect(),
        }
    }
}

pub fn is_hilbert_burch_grid(u: &[Vec<u32>]) -> bool {
    let rows = u.len();
    if rows == 0 {
        return false;
    }
    let cols = u[0].len();
    let get = |i: usize, j: usize| u[i][j] as i64;
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols && get(i, j) < get(i, j + 1) {
                return false;
            }
            if i + 1 < rows && get(i, j) > get(i + 1, j) {
                return false;
            }
            // additivity: u[i][j] - u[0][j] depends on i only
            if get(i, j) - get(0, j) != get(i, 0) - get(0, 0) {
                return false;
            }
        }
    }
    true
}

/// Odd- or even-size skew-symmetric matrix of forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFormMatrix {
    inner: FormMatrix,
}

impl SkewFormMatrix {
    pub fn new(matrix: FormMatrix) -> Result<Self, AlgebraError> {
        if matrix.rows != matrix.cols {
            return Err(AlgebraError::NonSquare {
                rows: matrix.rows,
                cols: matrix.cols,
            });
        }
        let n = matrix.rows;
        for i in 0..n {
            if !matrix.get(i, i).is_zero() {
                return Err(AlgebraError::NotSkewSymmetric { row: i, col: i });
            }
            for j in i + 1..n {
                if *matrix.get(i, j) != matrix.get(j, i).neg() {
                    return Err(AlgebraError::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SkewFormMatrix { inner: matrix })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.inner.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Form {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &FormMatrix {
        &self.inner
    }

    pub fn ring(&self) -> Ring {
        self.inner.ring
    }

    /// Replaces entry `(i, j)` and its mirror, keeping skew symmetry.
    pub fn set_pair(&mut self, i: usize, j: usize, value: Form) {
        assert_ne!(i, j, "diagonal of a skew matrix is fixed at zero");
        self.inner.set(j, i, value.neg());
        self.inner.set(i, j, value);
    }

    /// Pfaffian of the principal submatrix on the index set `mask`.
    pub fn pfaffian_of(&self, mask: u32) -> Result<Form, AlgebraError> {
        let mut memo = HashMap::new();
        self.pf(mask, &mut memo)
    }

    pub fn pfaffian(&self) -> Result<Form, AlgebraError> {
        assert!(self.size() < 32);
        self.pfaffian_of(((1u64 << self.size()) - 1) as u32)
    }

    /// For odd size: `(-1)^i * Pf(G without row and column i)` for each `i`.
    pub fn principal_pfaffians(&self) -> Result<Vec<Form>, AlgebraError> {
        let n = self.size();
        if n.is_multiple_of(2) {
            return Err(AlgebraError::Shape(format!(
                "principal Pfaffians need odd size, got {n}"
            )));
        }
        assert!(n < 32);
        let full = ((1u64 << n) - 1) as u32;
        let mut memo = HashMap::new();
        (0..n)
            .map(|i| {
                let pf = self.pf(full & !(1 << i), &mut memo)?;
                Ok(if i % 2 == 1 { pf.neg() } else { pf })
            })
            .collect()
    }

    fn pf(&self, mask: u32, memo: &mut HashMap<u32, Form>) -> Result<Form, AlgebraError> {
        if mask == 0 {
            return Ok(self.ring().one());
        }
        if mask.count_ones() % 2 == 1 {
            return Ok(self.ring().zero(0));
        }
        if let Some(f) = memo.get(&mask) {
            return Ok(f.clone());
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc: Option<Form> = None;
        let mut k = 0usize;
        for j in first + 1..self.size() {
            if rest & (1 << j) == 0 {
                continue;
            }
            let entry = self.get(first, j);
            let sign_negative = k % 2 == 1;
            k += 1;
            if entry.is_zero() {
                continue;
            }
            let sub = self.pf(rest & !(1 << j), memo)?;
            let mut term = entry.mul(&sub);
            if sign_negative {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        let result = acc.unwrap_or_else(|| self.ring().zero(0));
        memo.insert(mask, result.clone());
        Ok(result)
    }
}

/// Matrix document: `{p, nvars, rows, cols, degrees, entries}` where each
/// entry is a list of `[coefficient, [e0, ..., en]]` terms. `degrees` is
/// optional on input and always written on output; it carries the declared
/// degree of zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub p: u32,
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Vec<u32>>>,
    pub entries: Vec<Vec<Vec<Term>>>,
}

impl MatrixDocument {
    pub fn to_matrix(&self) -> Result<FormMatrix, AlgebraError> {
        let ring = Ring::new(FieldSpec::new(self.p)?, self.nvars)?;
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(AlgebraError::Format(format!(
                "entries do not form a {}x{} grid",
                self.rows, self.cols
            )));
        }
        if let Some(d) = &self.degrees {
            if d.len() != self.rows || d.iter().any(|r| r.len() != self.cols) {
                return Err(AlgebraError::Format("degree grid has the wrong shape".into()));
            }
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(self.cols);
            for (j, terms) in row.iter().enumerate() {
                let declared = self.degrees.as_ref().map(|d| d[i][j]);
                out.push(ring.form_from_terms(declared, terms)?);
            }
            rows.push(out);
        }
        FormMatrix::from_rows(ring, rows)
    }
}
