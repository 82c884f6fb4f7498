//! Matrix pairs whose determinantal curves meet in a Gorenstein scheme.
//!
//! The small matrix `N` is `(t-r) x (t-r+1)`; the big matrix `M` is
//! `t x (t+1)`. The last `t-r` columns of `M` hold `N^T` in their first
//! `t-r+1` rows and zeros below; the first `r+1` columns are free. With
//! general entries of a common degree `d`, the two sets of maximal minors
//! generate a codimension-3 Gorenstein ideal with `2t-2r+1` minimal
//! generators, realised as the principal Pfaffians of [`skew_matrix`].

use rand::Rng;

use crate::error::AlgebraError;
use crate::hilbert::IdealPresentation;
use crate::matforms::{FormMatrix, SkewFormMatrix};
use crate::ring::Ring;

/// Where the transposed small matrix sits inside the big one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    /// First column of the embedded block (`r + 1`).
    pub first_col: usize,
    /// Rows carrying `N^T` (`t - r + 1`); the rows below are zero there.
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPair {
    pub t: usize,
    pub r: usize,
    pub d: u32,
    pub small: FormMatrix,
    pub big: FormMatrix,
    pub embedding: Embedding,
}

fn check_params(t: usize, r: usize, d: u32) -> Result<(), AlgebraError> {
    if t < 2 || r < 1 || r + 1 > t || d < 1 {
        return Err(AlgebraError::Parameters(format!(
            "need t >= 2, 1 <= r <= t-1, d >= 1; got t={t}, r={r}, d={d}"
        )));
    }
    Ok(())
}

/// Pair with random linear entries.
pub fn build_linear_pair<R: Rng + ?Sized>(ring: Ring, t: usize, r: usize, rng: &mut R) -> Result<ConstructionPair, AlgebraError> {
    build_uniform_pair(ring, t, r, 1, rng)
}

/// Pair with random entries of degree `d`. The small matrix is drawn
/// first, row by row, then the free block of the big matrix.
pub fn build_uniform_pair<R: Rng + ?Sized>(
    ring: Ring,
    t: usize,
    r: usize,
    d: u32,
    rng: &mut R,
) -> Result<ConstructionPair, AlgebraError> {
    check_params(t, r, d)?;
    let s = t - r;
    let small = FormMatrix::from_fn(ring, s, s + 1, |_, _| ring.random_form(d, rng))?;
    let free = FormMatrix::from_fn(ring, t, r + 1, |_, _| ring.random_form(d, rng))?;
    embed(ring, t, r, d, small, &free)
}

/// Assembles a pair from an explicit small matrix and the free `t x (r+1)` block.
pub fn embed(
    ring: Ring,
    t: usize,
    r: usize,
    d: u32,
    small: FormMatrix,
    free: &FormMatrix,
) -> Result<ConstructionPair, AlgebraError> {
    check_params(t, r, d)?;
    let s = t - r;
    if small.rows() != s || small.cols() != s + 1 {
        return Err(AlgebraError::Shape(format!(
            "small matrix must be {}x{}, got {}x{}",
            s,
            s + 1,
            small.rows(),
            small.cols()
        )));
    }
    if free.rows() != t || free.cols() != r + 1 {
        return Err(AlgebraError::Shape(format!(
            "free block must be {}x{}, got {}x{}",
            t,
            r + 1,
            free.rows(),
            free.cols()
        )));
    }
    let big = FormMatrix::from_fn(ring, t, t + 1, |i, j| {
        if j <= r {
            free.get(i, j).clone()
        } else if i <= s {
            small.get(j - r - 1, i).clone()
        } else {
            ring.zero(d)
        }
    })?;
    let pair = ConstructionPair {
        t,
        r,
        d,
        small,
        big,
        embedding: Embedding { first_col: r + 1, rows: s + 1 },
    };
    pair.check_layout()?;
    Ok(pair)
}

impl ConstructionPair {
    pub fn ring(&self) -> Ring {
        self.big.ring()
    }

    /// Re-validates the embedded transpose and the zero block entrywise.
    pub fn check_layout(&self) -> Result<(), AlgebraError> {
        let (t, r) = (self.t, self.r);
        let s = t - r;
        if self.big.rows() != t || self.big.cols() != t + 1 {
            return Err(AlgebraError::Shape("big matrix has the wrong shape".into()));
        }
        for k in 0..s {
            for i in 0..t {
                let e = self.big.get(i, r + 1 + k);
                let ok = if i <= s { *e == *self.small.get(k, i) } else { e.is_zero() };
                if !ok {
                    return Err(AlgebraError::Shape(format!(
                        "embedded block mismatch at ({i}, {})",
                        r + 1 + k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Maximal minors of the small matrix: the ideal of the smaller curve.
    pub fn small_ideal(&self) -> Result<IdealPresentation, AlgebraError> {
        IdealPresentation::new(self.ring(), self.small.maximal_minors()?)
    }

    pub fn big_ideal(&self) -> Result<IdealPresentation, AlgebraError> {
        IdealPresentation::new(self.ring(), self.big.maximal_minors()?)
    }

    /// All maximal minors of both matrices: the ideal of the intersection.
    pub fn intersection_ideal(&self) -> Result<IdealPresentation, AlgebraError> {
        self.small_ideal()?.sum(&self.big_ideal()?)
    }
}

/// The `r x (r+1)` matrix whose maximal minors cut out the union of the two
/// curves. Its first row holds `F_1, ..., F_{r+1}`, where `F_i` is the
/// determinant of column `i` of the free block beside the embedded block,
/// both restricted to the first `t-r+1` rows; the remaining rows are the
/// bottom `r-1` rows of the free block.
pub fn union_matrix(pair: &ConstructionPair) -> Result<FormMatrix, AlgebraError> {
    let (t, r) = (pair.t, pair.r);
    if r == 0 {
        return Err(AlgebraError::DegenerateUnion);
    }
    let s = t - r;
    let top_rows: Vec<usize> = (0..=s).collect();
    let mut first_row = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let mut cols = vec![i];
        cols.extend(r + 1..=t);
        first_row.push(pair.big.minor(&top_rows, &cols)?);
    }
    let mut rows = vec![first_row];
    for i in s + 1..t {
        rows.push((0..=r).map(|j| pair.big.get(i, j).clone()).collect());
    }
    FormMatrix::from_rows(pair.ring(), rows)
}

/// Minimal generators of the intersection ideal: the `t-r+1` maximal minors
/// of the small matrix, then the `t-r` maximal minors of the big matrix
/// obtained by deleting one column of the embedded block.
pub fn gorenstein_generators(pair: &ConstructionPair) -> Result<IdealPresentation, AlgebraError> {
    let mut gens = pair.small.maximal_minors()?;
    let big_minors = pair.big.maximal_minors()?;
    gens.extend(big_minors.into_iter().skip(pair.r + 1));
    IdealPresentation::new(pair.ring(), gens)
}

/// The `(2t-2r+1)`-square skew matrix
///
/// ```text
/// [  G    N^T ]
/// [ -N     0  ]
/// ```
///
/// where `G` is `(t-r+1)`-square skew with `G[i][j]` the determinant of rows
/// `i`, `j` and the bottom `r-1` rows of the free block.
pub fn skew_matrix(pair: &ConstructionPair) -> Result<SkewFormMatrix, AlgebraError> {
    let (t, r, d) = (pair.t, pair.r, pair.d);
    let s = t - r;
    let n = s + 1;
    let size = n + s;
    let ring = pair.ring();
    let free_cols: Vec<usize> = (0..=r).collect();
    let mut g = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut rows = vec![i, j];
            rows.extend(s + 1..t);
            g[i][j] = Some(pair.big.minor(&rows, &free_cols)?);
        }
    }
    let gdeg = (r as u32 + 1) * d;
    let m = FormMatrix::from_fn(ring, size, size, |i, j| match (i < n, j < n) {
        (true, true) if i < j => g[i][j].clone().unwrap(),
        (true, true) if i > j => g[j][i].as_ref().unwrap().neg(),
        (true, true) => ring.zero(gdeg),
        (true, false) => pair.small.get(j - n, i).clone(),
        (false, true) => pair.small.get(i - n, j).neg(),
        (false, false) => ring.zero(0),
    })?;
    SkewFormMatrix::new(m)
}
