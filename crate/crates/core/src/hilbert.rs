//! Hilbert functions of graded quotients `R/I` from Macaulay-matrix ranks.
//!
//! The degree-`d` piece of `I = (g_1, ..., g_k)` is spanned by the products
//! `m * g_i` with `m` ranging over monomials of degree `d - deg g_i`. Its
//! dimension is the rank of those coefficient vectors, computed exactly
//! over `F_p` by [`RowReducer`]. No Gröbner bases are involved.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, HilbertError};
use crate::field::FieldSpec;
use crate::linalg::RowReducer;
use crate::ring::{Form, Monomial, Ring, Term};

/// A finite list of nonzero homogeneous generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    generators: Vec<Form>,
}

impl IdealPresentation {
    /// Zero forms are dropped; they generate nothing.
    pub fn new(ring: Ring, generators: Vec<Form>) -> Result<Self, AlgebraError> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealPresentation { ring, generators })
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Ideal generated by both lists.
    pub fn sum(&self, other: &IdealPresentation) -> Result<IdealPresentation, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        IdealPresentation::new(self.ring, gens)
    }

    pub fn with_generator(&self, g: Form) -> Result<IdealPresentation, AlgebraError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        IdealPresentation::new(self.ring, gens)
    }

    /// Generator degrees, sorted descending.
    pub fn degrees_desc(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.generators.iter().map(Form::degree).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn to_document(&self) -> IdealDocument {
        IdealDocument {
            p: self.ring.modulus(),
            nvars: self.ring.nvars(),
            generators: self.generators.iter().map(Form::to_terms).collect(),
        }
    }
}

/// Ideal document: `{p, nvars, generators: [[[c, [e..]], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDocument {
    pub p: u32,
    pub nvars: usize,
    pub generators: Vec<Vec<Term>>,
}

impl IdealDocument {
    pub fn to_ideal(&self) -> Result<IdealPresentation, AlgebraError> {
        let ring = Ring::new(FieldSpec::new(self.p)?, self.nvars)?;
        let gens = self
            .generators
            .iter()
            .map(|t| ring.form_from_terms(None, t))
            .collect::<Result<Vec<_>, _>>()?;
        IdealPresentation::new(ring, gens)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertProfile {
    pub nvars: usize,
    /// `HF(R/I)_d` for `d = 0..=cutoff`.
    pub values: Vec<u64>,
    pub cutoff: u32,
    /// Common value of the last three entries, when they agree.
    pub stabilized_value: Option<u64>,
    pub h_vector: Option<Vec<u64>>,
    /// Length of the zero-dimensional scheme, equal to `stabilized_value`.
    pub degree: Option<u64>,
}

impl HilbertProfile {
    pub fn is_stabilized(&self) -> bool {
        self.stabilized_value.is_some()
    }
}

/// Monomials of one degree with their row index in a Macaulay matrix.
struct MonomialIndex {
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    fn new(ring: Ring, d: u32) -> Self {
        let index = ring
            .monomials(d)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        MonomialIndex { index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

/// Feeds every monomial multiple of `gens` landing in degree `d` into `red`.
fn feed(red: &mut RowReducer, ring: Ring, idx: &MonomialIndex, gens: &[&Form], d: u32) {
    let mut buf: Vec<(usize, u32)> = Vec::new();
    for g in gens {
        if g.degree() > d || g.is_zero() {
            continue;
        }
        let shift = d - g.degree();
        for m in ring.monomials(shift) {
            if red.is_full() {
                return;
            }
            buf.clear();
            buf.extend(g.terms().iter().map(|&(t, c)| (idx.index[&t.mul(m)], c)));
            red.insert_sparse(&buf);
        }
    }
}

fn piece_rank(ring: Ring, gens: &[&Form], d: u32, idx: &MonomialIndex) -> usize {
    let mut red = RowReducer::new(ring.field(), idx.len());
    feed(&mut red, ring, idx, gens, d);
    red.rank()
}

/// `dim_F I_d`.
pub fn ideal_piece_dim(ideal: &IdealPresentation, d: u32) -> usize {
    let gens: Vec<&Form> = ideal.generators.iter().collect();
    let idx = MonomialIndex::new(ideal.ring, d);
    piece_rank(ideal.ring, &gens, d, &idx)
}

/// Hilbert function of `R/I` in degrees `0..=cutoff`. Degrees are
/// independent and are computed in parallel.
pub fn hilbert_function(ideal: &IdealPresentation, cutoff: u32) -> HilbertProfile {
    let ring = ideal.ring;
    let values: Vec<u64> = (0..=cutoff)
        .into_par_iter()
        .map(|d| {
            let total = ring.monomial_count(d) as u64;
            total - ideal_piece_dim(ideal, d) as u64
        })
        .collect();
    let n = values.len();
    let stabilized_value = (n >= 3 && values[n - 1] == values[n - 2] && values[n - 2] == values[n - 3])
        .then(|| values[n - 1]);
    HilbertProfile {
        nvars: ring.nvars(),
        values,
        cutoff,
        stabilized_value,
        h_vector: None,
        degree: stabilized_value,
    }
}

/// The h-vector of an ACM quotient of codimension `codim`: the Hilbert
/// function differenced `nvars - codim` times (once per dimension of `R/I`),
/// with trailing zeros stripped.
pub fn h_vector_from_profile(profile: &HilbertProfile, codim: usize) -> Result<Vec<u64>, HilbertError> {
    let nvars = profile.nvars;
    if codim > nvars {
        return Err(HilbertError::Codimension { codim, nvars });
    }
    let mut seq: Vec<i64> = profile.values.iter().map(|&v| v as i64).collect();
    for _ in 0..(nvars - codim) {
        let mut prev = 0i64;
        for v in seq.iter_mut() {
            let cur = *v;
            *v = cur - prev;
            prev = cur;
        }
    }
    if let Some(index) = seq.iter().position(|&v| v < 0) {
        return Err(HilbertError::NotAcm { index });
    }
    let n = seq.len();
    if n < 2 || seq[n - 1] != 0 || seq[n - 2] != 0 {
        return Err(HilbertError::ProfileTooShort);
    }
    while seq.last() == Some(&0) {
        seq.pop();
    }
    Ok(seq.into_iter().map(|v| v as u64).collect())
}

/// Degrees of a minimal generating set as `(degree, count)` pairs: in each
/// degree, `dim I_d - dim (R_1 * I_{d-1})`. The second term is the span of
/// the generators of lower degree, multiplied up to degree `d`.
pub fn minimal_generator_degrees(ideal: &IdealPresentation) -> Vec<(u32, usize)> {
    let ring = ideal.ring;
    let mut degrees: Vec<u32> = ideal.generators.iter().map(Form::degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .par_iter()
        .map(|&d| {
            let idx = MonomialIndex::new(ring, d);
            let lower: Vec<&Form> = ideal.generators.iter().filter(|g| g.degree() < d).collect();
            let all: Vec<&Form> = ideal.generators.iter().filter(|g| g.degree() <= d).collect();
            let below = piece_rank(ring, &lower, d, &idx);
            let full = piece_rank(ring, &all, d, &idx);
            (d, full - below)
        })
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// Whether two ideals have the same degree-`d` piece.
pub fn same_piece(a: &IdealPresentation, b: &IdealPresentation, d: u32) -> Result<bool, AlgebraError> {
    if a.ring != b.ring {
        return Err(AlgebraError::RingMismatch);
    }
    let ring = a.ring;
    let idx = MonomialIndex::new(ring, d);
    let ga: Vec<&Form> = a.generators.iter().collect();
    let gb: Vec<&Form> = b.generators.iter().collect();
    let ra = piece_rank(ring, &ga, d, &idx);
    let rb = piece_rank(ring, &gb, d, &idx);
    if ra != rb {
        return Ok(false);
    }
    let both: Vec<&Form> = ga.iter().chain(gb.iter()).copied().collect();
    Ok(piece_rank(ring, &both, d, &idx) == ra)
}

/// Whether the two ideals agree in every degree `0..=max_degree`.
pub fn same_ideal_up_to(
    a: &IdealPresentation,
    b: &IdealPresentation,
    max_degree: u32,
) -> Result<bool, AlgebraError> {
    let checks: Result<Vec<bool>, AlgebraError> =
        (0..=max_degree).into_par_iter().map(|d| same_piece(a, b, d)).collect();
    Ok(checks?.into_iter().all(|ok| ok))
}

/// Degree of a one-dimensional projective scheme (a curve): the stabilized
/// first difference of the Hilbert function, when the last three
/// differences agree.
pub fn curve_degree(profile: &HilbertProfile) -> Option<u64> {
    let v = &profile.values;
    let n = v.len();
    if n < 4 {
        return None;
    }
    let diffs: Vec<i64> = v[n - 4..].windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    (diffs[0] == diffs[1] && diffs[1] == diffs[2] && diffs[0] >= 0).then(|| diffs[0] as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matforms::FormMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p3() -> Ring {
        Ring::projective3(32003).unwrap()
    }

    fn twisted_cubic() -> IdealPresentation {
        let r = p3();
        let (x, y, z, t) = (r.var(0), r.var(1), r.var(2), r.var(3));
        let m = FormMatrix::from_rows(r, vec![vec![x, y.clone(), z.clone()], vec![y, z, t]]).unwrap();
        IdealPresentation::new(r, m.maximal_minors().unwrap()).unwrap()
    }

    #[test]
    fn linear_piece() {
        let r = p3();
        let i = IdealPresentation::new(r, vec![r.var(0), r.var(1)]).unwrap();
        assert_eq!(ideal_piece_dim(&i, 1), 2);
        assert_eq!(ideal_piece_dim(&i, 0), 0);
    }

    #[test]
    fn twisted_cubic_pieces() {
        let i = twisted_cubic();
        assert_eq!(ideal_piece_dim(&i, 1), 0);
        assert_eq!(ideal_piece_dim(&i, 2), 3);
        let hf = hilbert_function(&i, 8);
        let expected: Vec<u64> = (0..=8).map(|d| 3 * d + 1).collect();
        assert_eq!(hf.values, expected);
        assert!(!hf.is_stabilized());
        assert_eq!(h_vector_from_profile(&hf, 2).unwrap(), vec![1, 2]);
        assert_eq!(curve_degree(&hf), Some(3));
        assert_eq!(minimal_generator_degrees(&i), vec![(2, 3)]);
    }

    #[test]
    fn irrelevant_ideal() {
        let r = p3();
        let i = IdealPresentation::new(r, (0..4).map(|k| r.var(k)).collect()).unwrap();
        let hf = hilbert_function(&i, 5);
        assert_eq!(hf.values, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(hf.stabilized_value, Some(0));
        assert_eq!(h_vector_from_profile(&hf, 4).unwrap(), vec![1]);
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        let r = p3();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let i = IdealPresentation::new(r, vec![r.random_form(2, &mut rng), r.random_form(2, &mut rng)]).unwrap();
        assert_eq!(minimal_generator_degrees(&i), vec![(2, 2)]);
        let hf = hilbert_function(&i, 7);
        assert_eq!(curve_degree(&hf), Some(4));
        assert_eq!(h_vector_from_profile(&hf, 2).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn redundant_generators_are_not_minimal() {
        let r = p3();
        let x = r.var(0);
        let y = r.var(1);
        let i = IdealPresentation::new(r, vec![x.clone(), x.mul(&y), y.mul(&y)]).unwrap();
        assert_eq!(minimal_generator_degrees(&i), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn h_vector_errors() {
        let i = twisted_cubic();
        let hf = hilbert_function(&i, 6);
        // one difference is not enough for a curve
        assert_eq!(h_vector_from_profile(&hf, 3), Err(HilbertError::ProfileTooShort));
        assert!(matches!(h_vector_from_profile(&hf, 5), Err(HilbertError::Codimension { .. })));
        // a line with an embedded point: HF 1,3,4,5,... so the second difference dips negative
        let r = p3();
        let j = IdealPresentation::new(r, vec![r.var(0), r.var(1).mul(&r.var(1)), r.var(1).mul(&r.var(2))])
            .unwrap();
        let hf = hilbert_function(&j, 6);
        assert_eq!(&hf.values[..4], &[1, 3, 4, 5]);
        assert!(matches!(h_vector_from_profile(&hf, 2), Err(HilbertError::NotAcm { .. })));
    }

    #[test]
    fn span_comparison() {
        let r = p3();
        let (x, y) = (r.var(0), r.var(1));
        let a = IdealPresentation::new(r, vec![x.clone(), y.clone()]).unwrap();
        let b = IdealPresentation::new(r, vec![x.add(&y).unwrap(), x.sub(&y).unwrap()]).unwrap();
        let c = IdealPresentation::new(r, vec![x.clone(), r.var(2)]).unwrap();
        assert!(same_ideal_up_to(&a, &b, 3).unwrap());
        assert!(!same_piece(&a, &c, 1).unwrap());
    }
}
