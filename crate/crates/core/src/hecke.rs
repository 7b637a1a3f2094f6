//! The rank-two affine Hecke algebra at `q = 1`, realized as the group
//! algebra of `W = S_2 ⋉ Z^2` and embedded into `e_ν S e_ν` for
//! `S = S(2, 2)`. The quotient map `S → S/J ≅ Q[x, x^-1]` lives here too.
//!
//! Generators: `T1 = (s, (0,0))`, `T2 = (s, (-1,1))`, `Tρ = (s, (-1,0))`
//! where `s` is the transposition. A group element `g` is sent to
//! `ξ_{i, i·g⁻¹}` with `i = (1, 2)`; the inverse makes the map multiplicative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{BigRational, One, Zero};

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly1;
use crate::matrix::{Composition, PeriodicMatrix};
use crate::mult::multiply;
use crate::weyl::{act, matrix_to_pair, pair_to_matrix, transporter, IndexTuple, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reflection {
    T1,
    T2,
}

pub fn t1() -> WeylElement {
    WeylElement::new(vec![1, 0], vec![0, 0]).unwrap()
}

pub fn t2() -> WeylElement {
    WeylElement::new(vec![1, 0], vec![-1, 1]).unwrap()
}

pub fn t_rho() -> WeylElement {
    WeylElement::new(vec![1, 0], vec![-1, 0]).unwrap()
}

impl Reflection {
    pub fn element(self) -> WeylElement {
        match self {
            Reflection::T1 => t1(),
            Reflection::T2 => t2(),
        }
    }
}

/// `g = Tρ^a · w'` with `w'` an alternating reflection word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub rho_power: i64,
    pub word: Vec<Reflection>,
}

pub fn rho_power(a: i64) -> WeylElement {
    let (base, count) = if a >= 0 { (t_rho(), a) } else { (t_rho().inverse(), -a) };
    (0..count).fold(WeylElement::identity(2), |acc, _| acc.compose(&base))
}

pub fn normal_form(g: &WeylElement) -> Result<NormalForm> {
    if g.rank() != 2 {
        return Err(Error::InvalidInput(format!(
            "rank {} group element, expected 2",
            g.rank()
        )));
    }
    // Tρ has shift sum -1 and the reflections have shift sum 0.
    let a = -g.shift_sum();
    let rest = rho_power(-a).compose(g);
    let k = rest.eps()[0];
    debug_assert_eq!(rest.eps()[1], -k);
    let pair = |first, second, times: i64| std::iter::repeat_n([first, second], times as usize).flatten();
    let word: Vec<Reflection> = if rest.sigma() == [0, 1] {
        // (T1 T2)^m = (id, (-m, m))
        if k <= 0 {
            pair(Reflection::T1, Reflection::T2, -k).collect()
        } else {
            pair(Reflection::T2, Reflection::T1, k).collect()
        }
    } else if k >= 0 {
        // (s, (k, -k)) = (T1 T2)^k T1
        pair(Reflection::T1, Reflection::T2, k)
            .chain([Reflection::T1])
            .collect()
    } else {
        // (T2 T1)^{|k|} T1 = (T2 T1)^{|k|-1} T2
        pair(Reflection::T2, Reflection::T1, -k - 1)
            .chain([Reflection::T2])
            .collect()
    };
    Ok(NormalForm { rho_power: a, word })
}

/// Finite rational combination of elements of `S_2 ⋉ Z^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    terms: BTreeMap<WeylElement, BigRational>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::group(WeylElement::identity(2))
    }

    pub fn group(g: WeylElement) -> Self {
        Self::from_terms([(g, BigRational::one())]).expect("rank-two element")
    }

    pub fn t1() -> Self {
        Self::group(t1())
    }

    pub fn t2() -> Self {
        Self::group(t2())
    }

    pub fn t_rho() -> Self {
        Self::group(t_rho())
    }

    pub fn t_rho_inv() -> Self {
        Self::group(t_rho().inverse())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (WeylElement, BigRational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (g, c) in terms {
            if g.rank() != 2 {
                return Err(Error::InvalidInput(format!(
                    "rank {} group element, expected 2",
                    g.rank()
                )));
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: WeylElement, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (g, x) in &self.terms {
            out.add_term(g.clone(), x * c);
        }
        out
    }
}

/// Group-algebra convolution.
pub fn hecke_multiply(a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (g, x) in &a.terms {
        for (h, y) in &b.terms {
            out.add_term(g.compose(h), x * y);
        }
    }
    out
}

impl Mul for &HeckeElement {
    type Output = HeckeElement;

    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        hecke_multiply(self, rhs)
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;

    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;

    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{g}")?;
        }
        Ok(())
    }
}

fn base_tuple() -> IndexTuple {
    IndexTuple::new(2, vec![1, 2]).unwrap()
}

pub fn nu() -> Composition {
    Composition::new(vec![1, 1]).unwrap()
}

/// Basis matrix of `φ(g)`.
pub fn phi_matrix(g: &WeylElement) -> PeriodicMatrix {
    let i = base_tuple();
    let j = act(&i, &g.inverse()).expect("rank-two element");
    pair_to_matrix(&i, &j).expect("same shape")
}

/// The embedding `H → e_ν S(2,2) e_ν`.
pub fn phi(h: &HeckeElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(2, 2);
    for (g, c) in &h.terms {
        out.add_term(phi_matrix(g), c.clone());
    }
    out
}

/// Inverse of [`phi`] on `e_ν S e_ν`.
pub fn phi_inverse(x: &AlgebraElement) -> Result<HeckeElement> {
    if (x.n(), x.r()) != (2, 2) {
        return Err(Error::ParameterMismatch(2, 2, x.n(), x.r()));
    }
    let nu = nu();
    let i = base_tuple();
    let mut out = HeckeElement::zero();
    for (a, c) in x.terms() {
        if a.row_vector() != nu || a.col_vector() != nu {
            return Err(Error::OutOfSubspace("e_ν S e_ν"));
        }
        let (rows, j) = matrix_to_pair(a);
        debug_assert_eq!(rows, i);
        // stabilizer of (1,2) is trivial, so the transporter is a singleton
        let w = transporter(&i, &j)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal(format!("no transporter for {a}")))?;
        out.add_term(w.inverse(), c.clone());
    }
    Ok(out)
}

/// Image of a group element in `Q[x, x^-1]`: `Tρ ↦ x`, `T1, T2 ↦ -1`.
pub fn group_quotient(g: &WeylElement) -> Result<LaurentPoly1> {
    let nf = normal_form(g)?;
    let sign = if nf.word.len() % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly1::monomial(
        nf.rho_power,
        BigRational::from_integer(sign.into()),
    ))
}

pub fn hecke_quotient(h: &HeckeElement) -> Result<LaurentPoly1> {
    let mut out = LaurentPoly1::zero();
    for (g, c) in &h.terms {
        out = &out + &group_quotient(g)?.scale(c);
    }
    Ok(out)
}

/// Image of `x ∈ S(2,2)` in `S/J ≅ Q[x, x^-1]`, computed as the image of
/// `e_ν x e_ν`.
pub fn quotient_image(x: &AlgebraElement) -> Result<LaurentPoly1> {
    if (x.n(), x.r()) != (2, 2) {
        return Err(Error::ParameterMismatch(2, 2, x.n(), x.r()));
    }
    let e_nu = AlgebraElement::idempotent(&nu());
    let corner = multiply(&multiply(&e_nu, x)?, &e_nu)?;
    hecke_quotient(&phi_inverse(&corner)?)
}

/// `x^a ↦ φ(Tρ^a)`: a section of the quotient map.
pub fn quotient_lift(p: &LaurentPoly1) -> AlgebraElement {
    let mut out = AlgebraElement::zero(2, 2);
    for (&a, c) in p.terms() {
        out.add_term(phi_matrix(&rho_power(a)), c.clone());
    }
    out
}
