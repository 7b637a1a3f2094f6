use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Composition, PeriodicMatrix};

/// A finite rational combination of basis elements `e_A`, all in `Θ(n, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: u32,
    r: u32,
    terms: BTreeMap<PeriodicMatrix, BigRational>,
}

impl AlgebraElement {
    pub fn zero(n: u32, r: u32) -> Self {
        Self {
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(a: PeriodicMatrix) -> Self {
        let (n, r) = (a.n(), a.r());
        let mut terms = BTreeMap::new();
        terms.insert(a, BigRational::one());
        Self { n, r, terms }
    }

    /// `e_λ`.
    pub fn idempotent(lambda: &Composition) -> Self {
        Self::basis(PeriodicMatrix::diag(lambda))
    }

    pub fn from_terms<I>(n: u32, r: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PeriodicMatrix, BigRational)>,
    {
        let mut out = Self::zero(n, r);
        for (a, c) in terms {
            out.check_matrix(&a)?;
            out.add_term(a, c);
        }
        Ok(out)
    }

    fn check_matrix(&self, a: &PeriodicMatrix) -> Result<()> {
        if a.n() != self.n || a.r() != self.r {
            return Err(Error::ParameterMismatch(self.n, self.r, a.n(), a.r()));
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.r != other.r {
            return Err(Error::ParameterMismatch(self.n, self.r, other.n, other.r));
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PeriodicMatrix, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &PeriodicMatrix) -> BigRational {
        self.terms.get(a).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c·e_A` in place; `A` must already match `(n, r)`.
    pub(crate) fn add_term(&mut self, a: PeriodicMatrix, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (a, x) in &other.terms {
            self.add_term(a.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n, self.r);
        out.add_scaled(self, c);
        out
    }

    /// Term-wise transpose; an anti-involution of the algebra.
    pub fn tau(&self) -> Self {
        Self {
            n: self.n,
            r: self.r,
            terms: self.terms.iter().map(|(a, c)| (a.transpose(), c.clone())).collect(),
        }
    }

    /// Largest `|column|` appearing in any term.
    pub fn col_radius(&self) -> i64 {
        self.terms.keys().map(|a| a.col_radius()).max().unwrap_or(0)
    }

    pub fn fits_window(&self, window: i64) -> bool {
        self.col_radius() <= window
    }

    /// Restriction to terms whose matrix satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&PeriodicMatrix) -> bool) -> Self {
        Self {
            n: self.n,
            r: self.r,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        Ok(out)
    }
}

impl From<PeriodicMatrix> for AlgebraElement {
    fn from(a: PeriodicMatrix) -> Self {
        Self::basis(a)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.check_same(rhs)
            .expect("subtracting elements of different algebras");
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&-BigRational::one())
    }
}

/// Product through the shared structure-constant table.
///
/// Panics if the operands live in different algebras; use
/// [`crate::multiply`] for a fallible product.
impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        crate::mult::multiply(self, rhs).expect("multiplying elements of different algebras")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "e[{a}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(es: &[(i64, i64, u32)]) -> PeriodicMatrix {
        PeriodicMatrix::from_entries(2, es.iter().copied()).unwrap()
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = AlgebraElement::basis(m(&[(1, 2, 1), (2, 1, 1)]));
        assert!((&a - &a).is_zero());
        let b = AlgebraElement::from_terms(2, 2, [(m(&[(1, 1, 2)]), q(0))]).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn tau_examples() {
        let t1 = AlgebraElement::basis(m(&[(1, 2, 1), (2, 1, 1)]));
        assert_eq!(t1.tau(), t1);
        let rho = AlgebraElement::basis(m(&[(1, 2, 1), (2, 3, 1)]));
        let rho_inv = AlgebraElement::basis(m(&[(2, 1, 1), (3, 2, 1)]));
        assert_eq!(rho.tau(), rho_inv);
        let x2 = AlgebraElement::basis(m(&[(1, 3, 2)]));
        assert_eq!(x2.tau(), AlgebraElement::basis(m(&[(3, 1, 2)])));
        let mixed =
            AlgebraElement::from_terms(2, 2, [(m(&[(1, 3, 2)]), q(3)), (m(&[(1, 2, 1), (2, 3, 1)]), q(-1))]).unwrap();
        assert_eq!(mixed.tau().tau(), mixed);
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let a = PeriodicMatrix::from_entries(2, [(1, 1, 3)]).unwrap();
        assert!(AlgebraElement::from_terms(2, 2, [(a, q(1))]).is_err());
    }
}
