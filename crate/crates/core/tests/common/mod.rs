//! Reference implementations used as oracles. They share no code with the
//! library beyond reading terms out of a `Form`.

#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use acmint_core::{Form, FormMatrix, Ring};
use proptest::prelude::*;

/// Polynomial as a map from exponent vectors to residues mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub p: u64,
    pub terms: BTreeMap<Vec<u32>, u64>,
}

impl Poly {
    pub fn zero(p: u64) -> Poly {
        Poly { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u64, nvars: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], 1);
        Poly { p, terms }
    }

    pub fn from_form(f: &Form) -> Poly {
        let p = f.ring().modulus() as u64;
        let mut out = Poly::zero(p);
        for (c, e) in f.to_terms() {
            out.add_term(e, c.rem_euclid(p as i64) as u64);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: u64) {
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.p);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), self.p - c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.p);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb % self.p);
            }
        }
        out
    }

    pub fn eval(&self, pt: &[u64]) -> u64 {
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut v = c;
            for (&x, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    v = v * x % self.p;
                }
            }
            acc = (acc + v) % self.p;
        }
        acc
    }
}

pub fn poly_matrix(m: &FormMatrix) -> Vec<Vec<Poly>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Poly::from_form(m.get(i, j))).collect())
        .collect()
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>], p: u64, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(p, nvars);
    }
    let mut acc = Poly::zero(p);
    for j in 0..n {
        let sub: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].mul(&cofactor_det(&sub, p, nvars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

/// Sum over perfect matchings of `0..n` with the crossing-number sign.
pub fn matching_pfaffian(m: &[Vec<Poly>], p: u64, nvars: usize) -> Poly {
    fn go(m: &[Vec<Poly>], left: &[usize], p: u64, nvars: usize) -> Poly {
        if left.is_empty() {
            return Poly::one(p, nvars);
        }
        let i = left[0];
        let mut acc = Poly::zero(p);
        for k in 1..left.len() {
            let j = left[k];
            let rest: Vec<usize> = left.iter().copied().filter(|&x| x != i && x != j).collect();
            let term = m[i][j].mul(&go(m, &rest, p, nvars));
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.add(&term.neg()) };
        }
        acc
    }
    if m.len() % 2 == 1 {
        return Poly::zero(p);
    }
    let all: Vec<usize> = (0..m.len()).collect();
    go(m, &all, p, nvars)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Hilbert function of `R/I` for a monomial ideal in `nvars` variables:
/// degree-`d` monomials not divisible by any generator.
pub fn monomial_hf(gens: &[Vec<u32>], nvars: usize, d: u32) -> u64 {
    fn walk(exps: &mut Vec<u32>, pos: usize, left: u32, gens: &[Vec<u32>], count: &mut u64) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            if !gens.iter().any(|g| g.iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
                *count += 1;
            }
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            walk(exps, pos + 1, left - e, gens, count);
        }
        exps[pos] = 0;
    }
    let mut count = 0;
    walk(&mut vec![0; nvars], 0, d, gens, &mut count);
    count
}

/// Strategy for a form of the given degree with arbitrary residues.
pub fn form_strategy(ring: Ring, degree: u32) -> impl Strategy<Value = Form> {
    let slots = ring.monomial_count(degree);
    let p = ring.modulus();
    prop::collection::vec(0..p, slots).prop_map(move |coeffs| {
        let terms: Vec<(i64, Vec<u32>)> = ring
            .monomials(degree)
            .into_iter()
            .zip(coeffs)
            .map(|(m, c)| (c as i64, m.exponents(ring.nvars())))
            .collect();
        ring.form_from_terms(Some(degree), &terms).unwrap()
    })
}

pub fn sparse_form_strategy(ring: Ring, degree: u32) -> impl Strategy<Value = Form> {
    let slots = ring.monomial_count(degree);
    let p = ring.modulus();
    prop::collection::vec((0..slots, 1..p), 0..6).prop_map(move |picks| {
        let mons = ring.monomials(degree);
        let terms: Vec<(i64, Vec<u32>)> = picks
            .into_iter()
            .map(|(k, c)| (c as i64, mons[k].exponents(ring.nvars())))
            .collect();
        ring.form_from_terms(Some(degree), &terms).unwrap()
    })
}
