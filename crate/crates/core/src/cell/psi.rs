//! `ψ: B → Q[x1, x2, x2^-1]` with `ψ(e_{E11+E13}) = x1`,
//! `ψ(e_{2E13}) = x2` and `ψ(e_{2E31}) = x2^-1`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num::BigRational;

use super::window::{solve_blocked, window_schedule, Candidate, SpanOutcome};
use super::{lambda, m};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly2, Mono2};

static MONOMIALS: LazyLock<RwLock<HashMap<Mono2, AlgebraElement>>> = LazyLock::new(Default::default);

fn x1() -> AlgebraElement {
    AlgebraElement::basis(m(&[(1, 1, 1), (1, 3, 1)]))
}

/// `ψ^-1(x2^b) = e_{2E_{1,1+2b}}`.
fn x2_power(b: i64) -> AlgebraElement {
    AlgebraElement::basis(m(&[(1, 1 + 2 * b, 2)]))
}

/// `ψ^-1(x1^a x2^b)`, computed as `x2^b · x1^a` through the product table.
pub fn monomial_image(mono: Mono2) -> AlgebraElement {
    if let Some(hit) = MONOMIALS.read().unwrap().get(&mono) {
        return hit.clone();
    }
    let value = match (mono.x1, mono.x2) {
        (0, b) => x2_power(b),
        (a, 0) => &monomial_image(Mono2::new(a - 1, 0)) * &x1(),
        (a, b) => &x2_power(b) * &monomial_image(Mono2::new(a, 0)),
    };
    MONOMIALS.write().unwrap().entry(mono).or_insert_with(|| value.clone());
    value
}

pub fn psi_inverse(p: &LaurentPoly2) -> AlgebraElement {
    let mut out = AlgebraElement::zero(2, 2);
    for (mono, c) in p.terms() {
        out.add_scaled(&monomial_image(*mono), c);
    }
    out
}

/// The involution `ψ∘τ∘ψ^-1`: `x1 ↦ x1 x2^-1`, `x2 ↦ x2^-1`.
pub fn sigma_involution(p: &LaurentPoly2) -> LaurentPoly2 {
    p.map_monomials(|mono| Mono2::new(mono.x1, -(mono.x1 as i64) - mono.x2))
}

/// Monomials whose images have all columns in `[-w, w]`.
pub(crate) fn monomials_in_window(w: i64, margin: i64) -> Vec<Mono2> {
    let reach = w + margin;
    let mut out = Vec::new();
    for b in (-reach - 1) / 2..=reach / 2 {
        for a in 0.. {
            // the image spans columns 1 + 2b ..= 1 + 2a + 2b
            if 1 + 2 * (a as i64) + 2 * b > reach {
                break;
            }
            if (1 + 2 * b).abs() > reach {
                continue;
            }
            out.push(Mono2::new(a, b));
        }
    }
    out
}

fn monomial_candidates(w: i64) -> Vec<Candidate<Mono2>> {
    monomials_in_window(w, 2)
        .into_iter()
        .map(|mono| (mono, monomial_image(mono)))
        .filter(|(_, img)| img.fits_window(w))
        .map(|(key, image)| Candidate {
            key,
            sig: (lambda(), lambda()),
            image,
        })
        .collect()
}

/// The unique `p` with `ψ^-1(p) = x`, searched in windows up to `cap`.
pub fn psi(x: &AlgebraElement, cap: i64) -> Result<LaurentPoly2> {
    if (x.n(), x.r()) != (2, 2) {
        return Err(Error::ParameterMismatch(2, 2, x.n(), x.r()));
    }
    if x.terms()
        .any(|(a, _)| a.row_vector() != lambda() || a.col_vector() != lambda())
    {
        return Err(Error::OutOfSubspace("e_λ S e_λ"));
    }
    for w in window_schedule(x.col_radius(), cap) {
        match solve_blocked(&monomial_candidates(w), std::slice::from_ref(x)).remove(0) {
            SpanOutcome::Solution(sol) => return Ok(LaurentPoly2::from_terms(sol)),
            SpanOutcome::Inconsistent => continue,
            SpanOutcome::Underdetermined { rank, columns } => return Err(Error::Underdetermined { rank, columns }),
        }
    }
    Err(Error::Undecided(cap))
}

pub(crate) fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult::multiply_oracle;
    use crate::weyl::matrix_to_pair;

    fn mono(a: u32, b: i64) -> LaurentPoly2 {
        LaurentPoly2::monomial(Mono2::new(a, b), q(1))
    }

    fn oracle(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(2, 2);
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let (i, j) = matrix_to_pair(a);
                let (k, l) = matrix_to_pair(b);
                out.add_scaled(&multiply_oracle((&i, &j), (&k, &l)).unwrap(), &(c * d));
            }
        }
        out
    }

    #[test]
    fn generator_images() {
        assert_eq!(psi_inverse(&mono(1, 0)), x1());
        assert_eq!(psi_inverse(&mono(0, 1)), AlgebraElement::basis(m(&[(1, 3, 2)])));
        assert_eq!(psi_inverse(&mono(0, -1)), AlgebraElement::basis(m(&[(3, 1, 2)])));
        assert_eq!(psi_inverse(&LaurentPoly2::one()), AlgebraElement::idempotent(&lambda()));
        let unit = &LaurentPoly2::x2() * &LaurentPoly2::x2_inv();
        assert_eq!(psi_inverse(&unit), AlgebraElement::idempotent(&lambda()));
    }

    #[test]
    fn x1_squared_golden() {
        // x1² = e_{2E13} with multiplicity 2 plus the widest term
        let sq = psi_inverse(&mono(2, 0));
        let expected =
            &AlgebraElement::basis(m(&[(1, 3, 2)])).scale(&q(2)) + &AlgebraElement::basis(m(&[(1, 1, 1), (1, 5, 1)]));
        assert_eq!(sq, expected);
        assert_eq!(sq, oracle(&x1(), &x1()));
    }

    #[test]
    fn psi_inverse_is_multiplicative() {
        for (a, b, c, d) in [(1, 0, 0, 1), (2, -1, 1, 1), (0, -2, 3, 1), (1, 1, 2, -3)] {
            let lhs = psi_inverse(&mono(a + c, b + d));
            let rhs = oracle(&psi_inverse(&mono(a, b)), &psi_inverse(&mono(c, d)));
            assert_eq!(lhs, rhs, "x1^{a} x2^{b} * x1^{c} x2^{d}");
        }
    }

    #[test]
    fn psi_examples() {
        let e_lambda = AlgebraElement::idempotent(&lambda());
        assert_eq!(psi(&e_lambda, 8).unwrap(), LaurentPoly2::one());
        let x2_inv = AlgebraElement::basis(m(&[(3, 1, 2)]));
        assert_eq!(psi(&x2_inv, 8).unwrap(), LaurentPoly2::x2_inv());
        let shifted = AlgebraElement::basis(m(&[(1, 1, 1), (3, 1, 1)]));
        assert_eq!(psi(&shifted, 8).unwrap(), mono(1, -1));
        assert!(matches!(psi(&x1(), 0), Err(Error::Undecided(0))));
        assert!(psi(&AlgebraElement::idempotent(&super::super::mu()), 8).is_err());
    }

    #[test]
    fn psi_round_trip() {
        let p = &(&mono(3, -2).scale(&q(5)) - &mono(0, 1)) + &mono(2, 0).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(psi(&psi_inverse(&p), 12).unwrap(), p);
    }

    #[test]
    fn sigma_is_tau_through_psi() {
        assert_eq!(sigma_involution(&LaurentPoly2::x2()), LaurentPoly2::x2_inv());
        assert_eq!(sigma_involution(&LaurentPoly2::x1()), mono(1, -1));
        for (a, b) in [(0, 0), (1, 0), (0, 1), (2, -1), (3, 2)] {
            let p = mono(a, b);
            assert_eq!(sigma_involution(&sigma_involution(&p)), p);
            assert_eq!(
                psi_inverse(&p).tau(),
                psi_inverse(&sigma_involution(&p)),
                "x1^{a} x2^{b}"
            );
        }
    }
}
