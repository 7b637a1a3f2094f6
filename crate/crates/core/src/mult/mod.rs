//! Products in the affine Schur algebra at `q = 1`.
//!
//! [`multiply_oracle`] counts middle tuples directly and is the reference
//! for everything else. The closed forms in [`formulas`] and
//! [`doublecoset_product`] are independent routes checked against it.

mod doublecoset;
pub mod formulas;
mod table;

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational};

use crate::element::AlgebraElement;
use crate::error::{invalid, Error, Result};
use crate::matrix::{Composition, PeriodicMatrix};
use crate::weyl::{act, matrix_to_pair, pair_to_matrix, stabilizer, transporter, IndexTuple};

pub use doublecoset::doublecoset_product;
pub use table::{global_table, StructureTable};

/// `ξ_{i,j} · ξ_{k,l}` by counting the middle tuples `s` of the defining
/// structure constant.
pub fn multiply_oracle(xi1: (&IndexTuple, &IndexTuple), xi2: (&IndexTuple, &IndexTuple)) -> Result<AlgebraElement> {
    let (i, j) = xi1;
    let (k, l) = xi2;
    let r = i.len();
    if [j.len(), k.len(), l.len()].iter().any(|&len| len != r) {
        return Err(Error::LengthMismatch(r, k.len()));
    }
    let n = i.n();
    if [j.n(), k.n(), l.n()].iter().any(|&m| m != n) {
        return Err(invalid("all tuples must share the period n"));
    }
    let mut out = AlgebraElement::zero(n, r as u32);

    // Align the middle tuples: ξ_{k,l} = ξ_{j, l·w0}.
    let Some(w0) = transporter(k, j)?.into_iter().next() else {
        return Ok(out);
    };
    let l = act(l, &w0)?;
    let target = pair_to_matrix(j, &l)?;

    let middles: BTreeSet<IndexTuple> = stabilizer(i).iter().map(|g| act(j, g)).collect::<Result<_>>()?;

    // One representative q per orbit of (i, q).
    let mut reps: BTreeMap<PeriodicMatrix, IndexTuple> = BTreeMap::new();
    for s in &middles {
        for w in transporter(j, s)? {
            let q = act(&l, &w)?;
            reps.entry(pair_to_matrix(i, &q)?).or_insert(q);
        }
    }

    for (orbit, q) in reps {
        let mut count = 0i64;
        for s in &middles {
            if pair_to_matrix(s, &q)? == target {
                count += 1;
            }
        }
        out.add_term(orbit, BigRational::from_integer(count.into()));
    }
    Ok(out)
}

/// `e_A · e_B` through the orbit-counting oracle.
pub fn multiply_basis_oracle(a: &PeriodicMatrix, b: &PeriodicMatrix) -> Result<AlgebraElement> {
    if a.n() != b.n() || a.r() != b.r() {
        return Err(Error::ParameterMismatch(a.n(), a.r(), b.n(), b.r()));
    }
    if a.col_vector() != b.row_vector() {
        return Ok(AlgebraElement::zero(a.n(), a.r()));
    }
    let (i, j) = matrix_to_pair(a);
    let (k, l) = matrix_to_pair(b);
    multiply_oracle((&i, &j), (&k, &l))
}

/// Bilinear product, basis products served from the shared table.
pub fn multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    global_table().multiply(x, y)
}

/// `Σ_λ e_λ` over `Λ(n, r)`.
pub fn identity_element(n: u32, r: u32) -> Result<AlgebraElement> {
    if n == 0 {
        return Err(invalid("period n must be positive"));
    }
    let terms = Composition::all(n, r)
        .iter()
        .map(|lambda| (PeriodicMatrix::diag(lambda), BigRational::from_integer(1.into())))
        .collect::<Vec<_>>();
    AlgebraElement::from_terms(n, r, terms)
}

pub(crate) fn binomial(top: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for t in 0..k {
        acc = acc * BigInt::from(top - t) / BigInt::from(t + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn m(es: &[(i64, i64, u32)]) -> PeriodicMatrix {
        PeriodicMatrix::from_entries(2, es.iter().copied()).unwrap()
    }

    fn t(v: &[i64]) -> IndexTuple {
        IndexTuple::new(2, v.to_vec()).unwrap()
    }

    fn e(es: &[(i64, i64, u32)]) -> AlgebraElement {
        AlgebraElement::basis(m(es))
    }

    fn nu() -> AlgebraElement {
        e(&[(1, 1, 1), (2, 2, 1)])
    }

    fn lambda() -> AlgebraElement {
        e(&[(1, 1, 2)])
    }

    fn mu() -> AlgebraElement {
        e(&[(2, 2, 2)])
    }

    #[test]
    fn oracle_squares_t1_to_e_nu() {
        let p = multiply_oracle((&t(&[1, 2]), &t(&[2, 1])), (&t(&[2, 1]), &t(&[1, 2]))).unwrap();
        assert_eq!(p, nu());
    }

    #[test]
    fn oracle_reproduces_known_products() {
        let lhs = multiply_basis_oracle(&m(&[(1, 1, 1), (2, 1, 1)]), &m(&[(1, 1, 1), (1, 2, 1)])).unwrap();
        assert_eq!(lhs, &e(&[(1, 2, 1), (2, 1, 1)]) + &nu());

        let p = multiply_basis_oracle(&m(&[(2, 1, 2)]), &m(&[(1, 2, 2)])).unwrap();
        assert_eq!(p, mu());

        let two = BigRational::from_integer(2.into());
        let p = multiply_basis_oracle(&m(&[(1, 1, 1), (1, 2, 1)]), &m(&[(1, 1, 1), (2, 1, 1)])).unwrap();
        assert_eq!(p, lambda().scale(&two));
    }

    #[test]
    fn mismatched_middle_vanishes() {
        let p = multiply_basis_oracle(&m(&[(1, 2, 2)]), &m(&[(1, 1, 2)])).unwrap();
        assert!(p.is_zero());
        let p = multiply_oracle((&t(&[1, 2]), &t(&[1, 2])), (&t(&[1, 1]), &t(&[1, 1]))).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn identity_is_sum_of_idempotents() {
        let one = identity_element(2, 2).unwrap();
        assert_eq!(one, &(&lambda() + &mu()) + &nu());
        let x = &e(&[(1, 2, 1), (2, 3, 1)]) + &e(&[(1, 5, 2)]).scale(&BigRational::new(3.into(), 7.into()));
        assert_eq!(multiply(&one, &x).unwrap(), x);
        assert_eq!(multiply(&x, &one).unwrap(), x);
        assert_eq!(identity_element(1, 3).unwrap(), e3(&[(1, 1, 3)]));
        assert!(multiply(&lambda(), &mu()).unwrap().is_zero());
        assert_eq!(multiply(&lambda(), &lambda()).unwrap(), lambda());
    }

    fn e3(es: &[(i64, i64, u32)]) -> AlgebraElement {
        AlgebraElement::basis(PeriodicMatrix::from_entries(1, es.iter().copied()).unwrap())
    }

    #[test]
    fn parameter_mismatch_is_an_error() {
        let a = AlgebraElement::basis(PeriodicMatrix::from_entries(2, [(1, 1, 3)]).unwrap());
        assert!(multiply(&lambda(), &a).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::one());
        assert_eq!(binomial(4, 4), BigInt::one());
    }
}
