//! Homogeneous forms over a prime field.
//!
//! A [`Ring`] fixes the field and the number of variables `n + 1`. A
//! [`Form`] is a homogeneous polynomial stored as a sorted list of
//! `(monomial, coefficient)` pairs with nonzero coefficients. Monomials are
//! packed eight bits per variable into a `u128`, so multiplication of
//! monomials is a single integer addition and the integer order is the
//! lexicographic order with `x0 > x1 > ...`.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::FieldSpec;

pub const MAX_VARIABLES: usize = 16;
pub const MAX_DEGREE: u32 = 255;

/// Ring context: coefficient field and number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    field: FieldSpec,
    nvars: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

#[derive(Clone)]
pub struct Form {
    ring: Ring,
    degree: u32,
    // Sorted by decreasing monomial; coefficients are nonzero residues.
    terms: Vec<(Monomial, u32)>,
}

/// Wire representation of a term: `[coefficient, [e0, ..., en]]`.
pub type Term = (i64, Vec<u32>);

impl Ring {
    pub fn new(field: FieldSpec, nvars: usize) -> Result<Self, AlgebraError> {
        if nvars == 0 || nvars > MAX_VARIABLES {
            return Err(AlgebraError::VariableCount(nvars));
        }
        Ok(Ring { field, nvars })
    }

    /// `F_p[x0, x1, x2, x3]`, the coordinate ring of projective 3-space.
    pub fn projective3(p: u32) -> Result<Self, AlgebraError> {
        Ring::new(FieldSpec::new(p)?, 4)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero(&self, degree: u32) -> Form {
        Form {
            ring: *self,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Form {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Form {
        let c = self.field.reduce(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial(0), c)]
        };
        Form {
            ring: *self,
            degree: 0,
            terms,
        }
    }

    /// The variable `x_i`.
    pub fn var(&self, i: usize) -> Form {
        assert!(i < self.nvars, "variable x{i} out of range");
        Form {
            ring: *self,
            degree: 1,
            terms: vec![(Monomial::unit(i), 1)],
        }
    }

    /// Number of monomials of degree `d`, i.e. `C(d + n, n)` for `n + 1` variables.
    pub fn monomial_count(&self, d: u32) -> usize {
        let n = self.nvars as u64 - 1;
        let mut acc: u64 = 1;
        for i in 1..=n {
            acc = acc * (d as u64 + i) / i;
        }
        acc as usize
    }

    /// All monomials of degree `d`, in decreasing lexicographic order.
    pub fn monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.monomial_count(d));
        let mut exps = vec![0u32; self.nvars];
        fill_monomials(&mut exps, 0, d, &mut out);
        out
    }

    /// A form of degree `d` whose every monomial gets an independent uniform
    /// coefficient. Deterministic in the state of `rng`.
    pub fn random_form<R: Rng + ?Sized>(&self, d: u32, rng: &mut R) -> Form {
        assert!(d <= MAX_DEGREE, "degree {d} exceeds {MAX_DEGREE}");
        let p = self.modulus();
        let terms = self
            .monomials(d)
            .into_iter()
            .filter_map(|m| {
                let c = rng.gen_range(0..p);
                (c != 0).then_some((m, c))
            })
            .collect();
        Form {
            ring: *self,
            degree: d,
            terms,
        }
    }

    /// A random linear combination of the variables.
    pub fn random_linear<R: Rng + ?Sized>(&self, rng: &mut R) -> Form {
        self.random_form(1, rng)
    }

    /// Builds a form from wire terms. Duplicate monomials are summed and zero
    /// coefficients dropped. When `degree` is `None` it is read off the terms
    /// (zero forms then get degree 0).
    pub fn form_from_terms(&self, degree: Option<u32>, terms: &[Term]) -> Result<Form, AlgebraError> {
        let mut raw = Vec::with_capacity(terms.len());
        let mut declared = degree;
        for (c, exps) in terms {
            let m = Monomial::from_exponents(exps, self.nvars)?;
            let deg = m.degree();
            match declared {
                None => declared = Some(deg),
                Some(d) if d != deg => {
                    return Err(AlgebraError::InhomogeneousTerm { declared: d, got: deg })
                }
                _ => {}
            }
            raw.push((m, self.field.reduce(*c)));
        }
        let degree = declared.unwrap_or(0);
        if degree > MAX_DEGREE {
            return Err(AlgebraError::DegreeTooLarge(degree));
        }
        Ok(Form {
            ring: *self,
            degree,
            terms: normalize(self.field, raw),
        })
    }
}

fn fill_monomials(exps: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(Monomial::pack(exps));
        exps[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill_monomials(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

fn normalize(field: FieldSpec, mut raw: Vec<(Monomial, u32)>) -> Vec<(Monomial, u32)> {
    raw.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
    let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
    for (m, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = field.add(last.1, c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

impl Monomial {
    #[inline]
    fn shift(i: usize) -> u32 {
        ((MAX_VARIABLES - 1 - i) * 8) as u32
    }

    fn pack(exps: &[u32]) -> Monomial {
        let mut v = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            v |= (e as u128) << Self::shift(i);
        }
        Monomial(v)
    }

    pub fn unit(i: usize) -> Monomial {
        Monomial(1u128 << Self::shift(i))
    }

    pub fn one() -> Monomial {
        Monomial(0)
    }

    pub fn from_exponents(exps: &[u32], nvars: usize) -> Result<Monomial, AlgebraError> {
        if exps.len() != nvars {
            return Err(AlgebraError::LengthMismatch {
                expected: nvars,
                got: exps.len(),
            });
        }
        let deg: u32 = exps.iter().sum();
        if deg > MAX_DEGREE {
            return Err(AlgebraError::DegreeTooLarge(deg));
        }
        Ok(Monomial::pack(exps))
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    /// Product of monomials. Callers keep the total degree within
    /// [`MAX_DEGREE`], which rules out carries between slots.
    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }
}

impl Form {
    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Declared degree. For a zero form this is only a slot annotation.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: Monomial) -> u32 {
        self.terms
            .binary_search_by(|probe| m.cmp(&probe.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Same form with a different declared degree slot. Only meaningful for zero forms.
    pub fn with_degree(mut self, degree: u32) -> Form {
        debug_assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }

    pub fn add(&self, other: &Form) -> Result<Form, AlgebraError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, AlgebraError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Form, negate: bool) -> Result<Form, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let f = self.ring.field;
        let rhs = |c: u32| if negate { f.neg(c) } else { c };
        if self.is_zero() {
            return Ok(Form {
                ring: self.ring,
                degree: other.degree,
                terms: other.terms.iter().map(|&(m, c)| (m, rhs(c))).collect(),
            });
        }
        if self.degree != other.degree {
            return Err(AlgebraError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, rhs(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, rhs(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, rhs(c))));
        Ok(Form {
            ring: self.ring,
            degree: self.degree,
            terms: out,
        })
    }

    pub fn neg(&self) -> Form {
        let f = self.ring.field;
        Form {
            ring: self.ring,
            degree: self.degree,
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Form {
        let f = self.ring.field;
        let s = s % f.modulus();
        if s == 0 {
            return self.ring.zero(self.degree);
        }
        Form {
            ring: self.ring,
            degree: self.degree,
            terms: self.terms.iter().map(|&(m, c)| (m, f.mul(c, s))).collect(),
        }
    }

    /// Product of two forms.
    ///
    /// Panics if the operands live in different rings or the product degree
    /// exceeds [`MAX_DEGREE`].
    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.ring, other.ring, "product of forms from different rings");
        let degree = self.degree + other.degree;
        assert!(degree <= MAX_DEGREE, "product degree {degree} exceeds {MAX_DEGREE}");
        if self.is_zero() || other.is_zero() {
            return self.ring.zero(degree);
        }
        let f = self.ring.field;
        let p = f.modulus() as u64;
        let mut raw: Vec<(Monomial, u64)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                raw.push((ma.mul(mb), ca as u64 * cb as u64 % p));
            }
        }
        raw.sort_unstable_by_key(|a| std::cmp::Reverse(a.0));
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        let mut iter = raw.into_iter().peekable();
        while let Some((m, mut acc)) = iter.next() {
            while let Some(&(m2, c2)) = iter.peek() {
                if m2 != m {
                    break;
                }
                acc += c2;
                iter.next();
            }
            let c = (acc % p) as u32;
            if c != 0 {
                terms.push((m, c));
            }
        }
        Form {
            ring: self.ring,
            degree,
            terms,
        }
    }

    /// Multiplies by a monomial of degree `mdeg`.
    pub fn mul_monomial(&self, m: Monomial, mdeg: u32) -> Form {
        let degree = self.degree + mdeg;
        assert!(degree <= MAX_DEGREE, "product degree {degree} exceeds {MAX_DEGREE}");
        Form {
            ring: self.ring,
            degree,
            terms: self.terms.iter().map(|&(t, c)| (t.mul(m), c)).collect(),
        }
    }

    /// Evaluates at a point given by `n + 1` residues.
    pub fn eval(&self, point: &[u32]) -> Result<u32, AlgebraError> {
        let n = self.ring.nvars;
        if point.len() != n {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let f = self.ring.field;
        let pt: Vec<u32> = point.iter().map(|&x| x % f.modulus()).collect();
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in pt.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Wire representation, coefficients as residues in `0..p`.
    pub fn to_terms(&self) -> Vec<Term> {
        let n = self.ring.nvars;
        self.terms
            .iter()
            .map(|&(m, c)| (c as i64, m.exponents(n)))
            .collect()
    }

    pub fn to_document(&self) -> FormDocument {
        FormDocument {
            p: self.ring.modulus(),
            nvars: self.ring.nvars,
            degree: self.degree,
            terms: self.to_terms(),
        }
    }
}

impl PartialEq for Form {
    /// Equality of term maps; the declared degree of a zero form is ignored.
    fn eq(&self, other: &Form) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Form {}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.degree, self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            let c = field.signed(c);
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut body = String::new();
            for i in 0..self.ring.nvars {
                match m.exponent(i) {
                    0 => {}
                    1 => body.push_str(&format!("x{i}")),
                    e => body.push_str(&format!("x{i}^{e}")),
                }
            }
            match (c.abs(), body.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{body}")?,
                (a, false) => write!(f, "{a}*{body}")?,
            }
        }
        Ok(())
    }
}

/// Standalone form document: header with modulus and variable count, then terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub p: u32,
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<Term>,
}

impl FormDocument {
    pub fn to_form(&self) -> Result<Form, AlgebraError> {
        let ring = Ring::new(FieldSpec::new(self.p)?, self.nvars)?;
        ring.form_from_terms(Some(self.degree), &self.terms)
    }
}
