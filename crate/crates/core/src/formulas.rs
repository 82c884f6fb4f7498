//! Closed forms: intersection bounds, curve degrees, Gorenstein h-vectors
//! and the shape of the minimal free resolution of the intersection ideal.
//!
//! Everything is exact integer arithmetic in `i128` with overflow checks.
//! Binomials vanish below the diagonal: `C(n, k) = 0` for `n < k`.

use serde::{Deserialize, Serialize};

use crate::error::FormulaError;

/// `C(n, k)`, zero when `n < k`, `k < 0` or `n < 0`.
pub fn binomial(n: i128, k: i128) -> Result<i128, FormulaError> {
    if k < 0 || n < 0 || n < k {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .ok_or(FormulaError::Overflow)?
            / (i + 1);
    }
    Ok(acc)
}

fn check_linear_range(t: i64, r: i64) -> Result<(), FormulaError> {
    if t < 2 || r < 0 || r > t - 1 {
        return Err(FormulaError::OutOfRange(format!(
            "need t >= 2 and 0 <= r <= t-1, got t={t}, r={r}"
        )));
    }
    Ok(())
}

fn check_construction_range(t: i64, r: i64, d: i64) -> Result<(), FormulaError> {
    if t < 2 || r < 1 || r > t - 1 || d < 1 {
        return Err(FormulaError::OutOfRange(format!(
            "need t >= 2, 1 <= r <= t-1, d >= 1, got t={t}, r={r}, d={d}"
        )));
    }
    Ok(())
}

/// `B(t, r) = 2 C(t+2-r, 3) + (r-1) C(t+1-r, 2)`.
pub fn bound_linear(t: i64, r: i64) -> Result<i128, FormulaError> {
    check_linear_range(t, r)?;
    let (t, r) = (t as i128, r as i128);
    let a = binomial(t + 2 - r, 3)?;
    let b = binomial(t + 1 - r, 2)?;
    Ok(2 * a + (r - 1) * b)
}

/// `B(d; t, r)`, the degree of the intersection for entries of degree `d`.
pub fn bound_uniform(d: i64, t: i64, r: i64) -> Result<i128, FormulaError> {
    check_linear_range(t, r)?;
    if d < 1 {
        return Err(FormulaError::OutOfRange(format!("need d >= 1, got {d}")));
    }
    let (d, t, r) = (d as i128, t as i128, r as i128);
    let c3 = |n: i128| binomial(n, 3);
    let terms = [
        c3(d * (2 * t - r + 1))?,
        -(t - r + 1) * c3(d * (t + 1))?,
        -(t - r) * c3(d * (t - r + 1))?,
        (t - r + 1) * c3(d * (t - r))?,
        (t - r) * c3(d * t)?,
    ];
    terms
        .iter()
        .try_fold(0i128, |acc, &x| acc.checked_add(x))
        .ok_or(FormulaError::Overflow)
}

/// Degree of the codimension-2 ACM scheme cut out by the maximal minors of a
/// `t x (t+1)` matrix of degree-`d` forms: `d^2 C(t+1, 2)`.
pub fn deg_acm(t: i64, d: i64) -> Result<i128, FormulaError> {
    if t < 1 || d < 1 {
        return Err(FormulaError::OutOfRange(format!("need t, d >= 1, got t={t}, d={d}")));
    }
    let d = d as i128;
    Ok(d * d * binomial(t as i128 + 1, 2)?)
}

/// h-vector of the intersection for linear entries: rises as `C(i+2, 2)`
/// up to index `t-r-2`, plateaus at `C(t-r+1, 2)` for `r+1` steps, then
/// mirrors around the socle degree `2t-r-2`.
pub fn h_vector_gorenstein(t: i64, r: i64) -> Result<Vec<u64>, FormulaError> {
    check_construction_range(t, r, 1)?;
    let socle = (2 * t - r - 2) as usize;
    let plateau = binomial((t - r + 1) as i128, 2)? as u64;
    let mut h = vec![0u64; socle + 1];
    for i in 0..=socle {
        let i64_ = i as i64;
        h[i] = if i64_ <= t - r - 2 {
            binomial(i as i128 + 2, 2)? as u64
        } else if i64_ < t {
            plateau
        } else {
            h[socle - i]
        };
    }
    Ok(h)
}

/// One summand `R(-twist)^rank` at homological position `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTerm {
    pub step: u32,
    pub twist: u32,
    pub rank: u32,
}

/// Shape of a minimal free resolution of `I`, steps `1..=codim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiShape {
    pub codim: u32,
    pub terms: Vec<BettiTerm>,
}

impl BettiShape {
    pub fn new(codim: u32, terms: Vec<BettiTerm>) -> Result<Self, FormulaError> {
        if let Some(bad) = terms.iter().find(|t| t.step == 0 || t.step > codim || t.rank == 0) {
            return Err(FormulaError::InconsistentShape(format!(
                "summand {bad:?} outside steps 1..={codim} or with zero rank"
            )));
        }
        // R/I has rank zero: 1 - m_1 + m_2 - ... = 0
        let alt: i64 = terms
            .iter()
            .map(|t| if t.step % 2 == 1 { -(t.rank as i64) } else { t.rank as i64 })
            .sum();
        if alt != -1 {
            return Err(FormulaError::InconsistentShape(format!(
                "alternating rank sum is {alt}, expected -1"
            )));
        }
        Ok(BettiShape { codim, terms })
    }

    /// Summands at one step, as `(twist, rank)` sorted by twist.
    pub fn step(&self, step: u32) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .terms
            .iter()
            .filter(|t| t.step == step)
            .map(|t| (t.twist, t.rank))
            .collect();
        v.sort_unstable();
        v
    }

    /// Numerator `1 + sum_i (-1)^i sum m z^a` of the Hilbert series.
    pub fn numerator(&self) -> Vec<i128> {
        let top = self.terms.iter().map(|t| t.twist).max().unwrap_or(0) as usize;
        let mut n = vec![0i128; top + 1];
        n[0] = 1;
        for t in &self.terms {
            let sign = if t.step % 2 == 1 { -1 } else { 1 };
            n[t.twist as usize] += sign * t.rank as i128;
        }
        n
    }
}

/// Expected minimal resolution of the intersection ideal for a pair with
/// entries of degree `d`:
///
/// ```text
/// 0 <- R(-dt)^(t-r) + R(-d(t-r))^(t-r+1)
///   <- R(-d(t+1))^(t-r+1) + R(-d(t-r+1))^(t-r)
///   <- R(-d(2t-r+1))
/// ```
pub fn expected_betti(t: i64, r: i64, d: i64) -> Result<BettiShape, FormulaError> {
    check_construction_range(t, r, d)?;
    let (t, r, d) = (t as u32, r as u32, d as u32);
    let s = t - r;
    let terms = vec![
        BettiTerm { step: 1, twist: d * t, rank: s },
        BettiTerm { step: 1, twist: d * s, rank: s + 1 },
        BettiTerm { step: 2, twist: d * (t + 1), rank: s + 1 },
        BettiTerm { step: 2, twist: d * (s + 1), rank: s },
        BettiTerm { step: 3, twist: d * (2 * t - r + 1), rank: 1 },
    ];
    BettiShape::new(3, terms)
}

/// Divides the Hilbert-series numerator by `(1 - z)^codim`. The quotient is
/// the h-vector; the division must be exact and the quotient non-negative.
/// Returns the h-vector (trailing zeros stripped) and its sum, the degree.
pub fn hilbert_from_resolution(shape: &BettiShape, codim: u32) -> Result<(Vec<u64>, i128), FormulaError> {
    let mut poly = shape.numerator();
    for _ in 0..codim {
        // q_k = sum_{i <= k} n_i; the total must vanish for exactness
        let mut acc = 0i128;
        for c in poly.iter_mut() {
            acc += *c;
            *c = acc;
        }
        if acc != 0 {
            return Err(FormulaError::InconsistentShape(format!(
                "numerator not divisible by (1-z)^{codim}"
            )));
        }
        while poly.last() == Some(&0) {
            poly.pop();
        }
    }
    if let Some(i) = poly.iter().position(|&c| c < 0) {
        return Err(FormulaError::NegativeEntry(i));
    }
    let degree = poly.iter().sum();
    Ok((poly.into_iter().map(|c| c as u64).collect(), degree))
}

/// Resolution of a `t x (t+1)` determinantal ideal with degree-`d` entries:
/// `0 <- R(-dt)^(t+1) <- R(-d(t+1))^t`.
pub fn determinantal_betti(t: u32, d: u32) -> Result<BettiShape, FormulaError> {
    BettiShape::new(
        2,
        vec![
            BettiTerm { step: 1, twist: d * t, rank: t + 1 },
            BettiTerm { step: 2, twist: d * (t + 1), rank: t },
        ],
    )
}
