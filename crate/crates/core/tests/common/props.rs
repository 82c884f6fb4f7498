//! Property bodies shared by the property tests and the acceptance run.

use acmint_core::harness::{matrix_from_tensor, tensor_from_u, tensor_from_w};
use acmint_core::hilbert::hilbert_function;
use acmint_core::{tensor_views, FieldSpec, Form, FormMatrix, IdealPresentation, Ring, SkewFormMatrix};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{cofactor_det, form_strategy, matching_pfaffian, monomial_hf, poly_matrix, sparse_form_strategy, Poly};

pub fn small_ring() -> Ring {
    Ring::new(FieldSpec::new(101).unwrap(), 3).unwrap()
}

pub fn p3_ring() -> Ring {
    Ring::projective3(32003).unwrap()
}

pub fn ring_axioms(a: &Form, b: &Form, c: &Form) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
    prop_assert_eq!(a.add(&b.add(c).unwrap()).unwrap(), a.add(b).unwrap().add(c).unwrap());
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
    prop_assert_eq!(a.mul(&b.add(c).unwrap()), a.mul(b).add(&a.mul(c)).unwrap());
    prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    prop_assert_eq!(a.sub(b).unwrap(), a.add(&b.neg()).unwrap());
    prop_assert_eq!(a.mul(&a.ring().one()), a.clone());
    prop_assert_eq!(Poly::from_form(&a.mul(b)), Poly::from_form(a).mul(&Poly::from_form(b)));
    prop_assert_eq!(
        Poly::from_form(&a.add(b).unwrap()),
        Poly::from_form(a).add(&Poly::from_form(b))
    );
    Ok(())
}

pub fn eval_homomorphism(a: &Form, b: &Form, pt: &[u32]) -> Result<(), TestCaseError> {
    let f = a.ring().field();
    let (ea, eb) = (a.eval(pt).unwrap(), b.eval(pt).unwrap());
    prop_assert_eq!(a.mul(b).eval(pt).unwrap(), f.mul(ea, eb));
    prop_assert_eq!(a.add(b).unwrap().eval(pt).unwrap(), f.add(ea, eb));
    let wide: Vec<u64> = pt.iter().map(|&x| x as u64).collect();
    prop_assert_eq!(ea as u64, Poly::from_form(a).eval(&wide));
    Ok(())
}

pub fn square_matrix(n: usize) -> impl Strategy<Value = FormMatrix> {
    let ring = p3_ring();
    prop::collection::vec(sparse_form_strategy(ring, 1), n * n)
        .prop_map(move |e| FormMatrix::new(ring, n, n, e).unwrap())
}

pub fn wide_matrix(k: usize) -> impl Strategy<Value = FormMatrix> {
    let ring = p3_ring();
    prop::collection::vec(sparse_form_strategy(ring, 1), k * (k + 1))
        .prop_map(move |e| FormMatrix::new(ring, k, k + 1, e).unwrap())
}

pub fn determinant_oracle(m: &FormMatrix) -> Result<(), TestCaseError> {
    let ring = m.ring();
    let p = ring.modulus() as u64;
    let expected = cofactor_det(&poly_matrix(m), p, ring.nvars());
    prop_assert_eq!(Poly::from_form(&m.determinant().unwrap()), expected);
    Ok(())
}

pub fn maximal_minor_oracle(m: &FormMatrix) -> Result<(), TestCaseError> {
    let ring = m.ring();
    let p = ring.modulus() as u64;
    let pm = poly_matrix(m);
    for (j, minor) in m.maximal_minors().unwrap().iter().enumerate() {
        let sub: Vec<Vec<Poly>> = pm
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        prop_assert_eq!(Poly::from_form(minor), cofactor_det(&sub, p, ring.nvars()));
    }
    Ok(())
}

/// Replacing row 0 by `x + y` adds the determinants.
pub fn row_multilinearity(m: &FormMatrix, x: &[Form], y: &[Form]) -> Result<(), TestCaseError> {
    let n = m.rows();
    let with_row = |row: &[Form]| {
        let mut out = m.clone();
        for (j, f) in row.iter().enumerate() {
            out.set(0, j, f.clone());
        }
        out.determinant().unwrap()
    };
    let sum: Vec<Form> = (0..n).map(|j| x[j].add(&y[j]).unwrap()).collect();
    prop_assert_eq!(with_row(&sum), with_row(x).add(&with_row(y)).unwrap());
    Ok(())
}

pub fn skew_from(upper: &[Form], n: usize) -> SkewFormMatrix {
    let ring = upper[0].ring();
    let mut k = 0;
    let mut m = FormMatrix::from_fn(ring, n, n, |_, _| ring.zero(1)).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, upper[k].clone());
            m.set(j, i, upper[k].neg());
            k += 1;
        }
    }
    SkewFormMatrix::new(m).unwrap()
}

pub fn pfaffian_oracle(g: &SkewFormMatrix) -> Result<(), TestCaseError> {
    let ring = g.ring();
    let p = ring.modulus() as u64;
    let n = g.size();
    let pm = poly_matrix(g.as_matrix());
    if n.is_multiple_of(2) {
        let pf = g.pfaffian().unwrap();
        prop_assert_eq!(Poly::from_form(&pf), matching_pfaffian(&pm, p, ring.nvars()));
        prop_assert_eq!(pf.mul(&pf), g.as_matrix().determinant().unwrap());
    } else {
        for (i, pf) in g.principal_pfaffians().unwrap().iter().enumerate() {
            let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let sub: Vec<Vec<Poly>> = keep.iter().map(|&a| keep.iter().map(|&b| pm[a][b].clone()).collect()).collect();
            let mut expected = matching_pfaffian(&sub, p, ring.nvars());
            if i % 2 == 1 {
                expected = expected.neg();
            }
            prop_assert_eq!(Poly::from_form(pf), expected);
        }
    }
    Ok(())
}

pub fn ideal_strategy(count: usize) -> impl Strategy<Value = (IdealPresentation, Form)> {
    let ring = small_ring();
    let gens = prop::collection::vec((1u32..=3).prop_flat_map(move |d| sparse_form_strategy(ring, d)), 1..=count);
    let extra = (1u32..=3).prop_flat_map(move |d| form_strategy(ring, d));
    (gens, extra).prop_map(move |(g, e)| (IdealPresentation::new(ring, g).unwrap(), e))
}

pub fn hf_monotone(ideal: &IdealPresentation, extra: &Form) -> Result<(), TestCaseError> {
    let before = hilbert_function(ideal, 7);
    let after = hilbert_function(&ideal.with_generator(extra.clone()).unwrap(), 7);
    for (d, (a, b)) in after.values.iter().zip(&before.values).enumerate() {
        prop_assert!(a <= b, "degree {}: {} > {}", d, a, b);
    }
    Ok(())
}

pub fn monomial_gens() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5)
        .prop_map(|gs| gs.into_iter().filter(|g| g.iter().sum::<u32>() > 0).collect())
}

pub fn monomial_hf_oracle(gens: &[Vec<u32>]) -> Result<(), TestCaseError> {
    let ring = small_ring();
    let forms: Vec<Form> = gens.iter().map(|e| ring.form_from_terms(None, &[(1, e.clone())]).unwrap()).collect();
    let ideal = IdealPresentation::new(ring, forms).unwrap();
    let hf = hilbert_function(&ideal, 8);
    for d in 0..=8u32 {
        prop_assert_eq!(hf.values[d as usize], monomial_hf(gens, 3, d), "degree {}", d);
    }
    Ok(())
}

pub fn tensor_round_trip(m: &FormMatrix) -> Result<(), TestCaseError> {
    let tv = tensor_views(m).unwrap();
    let (du, dv, dw) = tv.dims;
    prop_assert_eq!((du, dv, dw), (m.rows(), 4, m.cols()));
    prop_assert_eq!(&matrix_from_tensor(m.ring(), tv.dims, &tv.tensor).unwrap(), m);
    prop_assert_eq!(tensor_from_u(&tv.m_u).unwrap(), (tv.dims, tv.tensor.clone()));
    prop_assert_eq!(tensor_from_w(&tv.m_w).unwrap(), (tv.dims, tv.tensor.clone()));
    for u in 0..du {
        for v in 0..dv {
            for w in 0..dw {
                let c = tv.coefficient(u, v, w);
                let var = |n: usize, i: usize| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    e
                };
                let coeff_in = |f: &Form, n: usize, i: usize| {
                    f.to_terms().into_iter().find(|(_, e)| *e == var(n, i)).map_or(0, |(c, _)| c as u32)
                };
                prop_assert_eq!(coeff_in(m.get(u, w), 4, v), c);
                prop_assert_eq!(coeff_in(tv.m_u.get(v, w), du, u), c);
                prop_assert_eq!(coeff_in(tv.m_w.get(v, u), dw, w), c);
            }
        }
    }
    Ok(())
}

pub fn linear_matrix(t: usize) -> impl Strategy<Value = FormMatrix> {
    let ring = p3_ring();
    prop::collection::vec(form_strategy(ring, 1), t * (t + 1))
        .prop_map(move |e| FormMatrix::new(ring, t, t + 1, e).unwrap())
}
