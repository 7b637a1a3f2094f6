//! Exact rational Laurent polynomials in one variable `x`, and in `x1`
//! (nonnegative powers) and `x2` (any integer power).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

/// A commutative monoid of monomials.
pub trait Monomial: Clone + Ord + fmt::Debug {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

/// `x^k`, `k ∈ Z`.
impl Monomial for i64 {
    fn one() -> Self {
        0
    }

    fn mul(&self, other: &Self) -> Self {
        self + other
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            0 => Ok(()),
            1 => write!(f, "x"),
            k => write!(f, "x^{k}"),
        }
    }
}

/// `x1^a x2^b` with `a >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono2 {
    pub x1: u32,
    pub x2: i64,
}

impl Mono2 {
    pub const fn new(x1: u32, x2: i64) -> Self {
        Self { x1, x2 }
    }
}

impl Monomial for Mono2 {
    fn one() -> Self {
        Self::new(0, 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(self.x1 + other.x1, self.x2 + other.x2)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        match self.x1 {
            0 => {}
            1 => {
                write!(f, "x1")?;
                sep = "·";
            }
            a => {
                write!(f, "x1^{a}")?;
                sep = "·";
            }
        }
        match self.x2 {
            0 => Ok(()),
            1 => write!(f, "{sep}x2"),
            b => write!(f, "{sep}x2^{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<M: Monomial> {
    terms: BTreeMap<M, BigRational>,
}

pub type LaurentPoly1 = Laurent<i64>;
pub type LaurentPoly2 = Laurent<Mono2>;

impl<M: Monomial> Default for Laurent<M> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<M: Monomial> Laurent<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), BigRational::one())
    }

    pub fn monomial(m: M, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: M, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &M) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Applies a monomial substitution `m ↦ f(m)` linearly.
    pub fn map_monomials(&self, f: impl Fn(&M) -> M) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<M: Monomial> Add for &Laurent<M> {
    type Output = Laurent<M>;

    fn add(self, rhs: &Laurent<M>) -> Laurent<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<M: Monomial> Sub for &Laurent<M> {
    type Output = Laurent<M>;

    fn sub(self, rhs: &Laurent<M>) -> Laurent<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<M: Monomial> Neg for &Laurent<M> {
    type Output = Laurent<M>;

    fn neg(self) -> Laurent<M> {
        self.scale(&-BigRational::one())
    }
}

impl<M: Monomial> Mul for &Laurent<M> {
    type Output = Laurent<M>;

    fn mul(self, rhs: &Laurent<M>) -> Laurent<M> {
        let mut out = Laurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl<M: Monomial> fmt::Display for Laurent<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if *m == M::one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}·")?;
                }
                m.write(f)?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly1 {
    pub fn x() -> Self {
        Self::monomial(1, BigRational::one())
    }
}

impl LaurentPoly2 {
    pub fn x1() -> Self {
        Self::monomial(Mono2::new(1, 0), BigRational::one())
    }

    pub fn x2() -> Self {
        Self::monomial(Mono2::new(0, 1), BigRational::one())
    }

    pub fn x2_inv() -> Self {
        Self::monomial(Mono2::new(0, -1), BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn unit_x_is_invertible() {
        let x = LaurentPoly1::x();
        let x_inv = LaurentPoly1::monomial(-1, q(1));
        assert_eq!(&x * &x_inv, LaurentPoly1::one());
        assert_eq!(&LaurentPoly2::x2() * &LaurentPoly2::x2_inv(), LaurentPoly2::one());
    }

    #[test]
    fn binomial_square() {
        let p = &LaurentPoly2::x1() + &LaurentPoly2::x2();
        let sq = p.pow(2);
        assert_eq!(sq.coeff(&Mono2::new(1, 1)), q(2));
        assert_eq!(sq.len(), 3);
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn display() {
        let p = &(&LaurentPoly2::x1().pow(2) - &LaurentPoly2::x2().scale(&q(2))) + &LaurentPoly2::one();
        assert_eq!(p.to_string(), "1 - 2·x2 + x1^2");
        assert_eq!(LaurentPoly1::monomial(-3, q(-1)).to_string(), "-x^-3");
    }
}
