//! Coordinates of `e_λ S` over `Π₁` and of `S e_λ` over `Π₂`.
//!
//! With `X_l = e_{E11+E1l}` and `Y_l = e_{E12+E1l}`, every basis element
//! `e_{E1i+E1j}` (`i <= j`) of `e_λ S` is `x2^k X_{j-2k}` for `i = 2k+1` or
//! `x2^{k-1} Y_{j-2k+2}` for `i = 2k`, and the `X`, `Y` satisfy
//!
//! ```text
//! X3 = x1 X1              Y4 = x1 Y2
//! X4 = x1 X2 - π2         Y5 = x1 Y3 - x2 π1
//! X5 = x1 X3 - 2 x2 X1    Y6 = x1 Y4 - 2 x2 Y2
//! X_l = x1 X_{l-2} - x2 X_{l-4}   (l >= 6, and l >= 7 for Y)
//! ```

use std::sync::{LazyLock, RwLock};

use num::{BigRational, One};

use super::psi::{monomial_image, monomials_in_window, psi_inverse, q, sigma_involution};
use super::window::{solve_blocked, window_schedule, Candidate, SpanOutcome};
use super::{lambda, pi1_elements, pi2_elements, signature};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly2, Mono2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `e_λ S = Σ B·π_m`
    Left,
    /// `S e_λ = Σ π′_m·B`
    Right,
}

/// Coordinates over `Π₁` (left) or `Π₂` (right), in the basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVector {
    pub side: Side,
    pub coords: [LaurentPoly2; 4],
}

impl CellVector {
    pub fn zero(side: Side) -> Self {
        Self {
            side,
            coords: Default::default(),
        }
    }

    pub fn unit(side: Side, m: usize) -> Self {
        let mut out = Self::zero(side);
        out.coords[m] = LaurentPoly2::one();
        out
    }

    /// Multiplies every coordinate by `p`.
    pub fn times(&self, p: &LaurentPoly2) -> Self {
        Self {
            side: self.side,
            coords: self.coords.clone().map(|c| &c * p),
        }
    }

    pub fn combine(&self, other: &Self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a = &*a + &b.scale(c);
        }
        out
    }

    /// The element these coordinates describe.
    pub fn recompose(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(2, 2);
        let (p1, p2) = (pi1_elements(), pi2_elements());
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = psi_inverse(c);
            let term = match self.side {
                Side::Left => &b * &p1[m],
                Side::Right => &p2[m] * &b,
            };
            out = &out + &term;
        }
        out
    }
}

fn x1() -> LaurentPoly2 {
    LaurentPoly2::x1()
}

fn x2_pow(k: i64) -> LaurentPoly2 {
    LaurentPoly2::monomial(Mono2::new(0, k), BigRational::one())
}

#[derive(Default)]
struct Recurrences {
    x: Vec<CellVector>,
    y: Vec<CellVector>,
}

static RECURRENCES: LazyLock<RwLock<Recurrences>> = LazyLock::new(Default::default);

fn left(m: usize) -> CellVector {
    CellVector::unit(Side::Left, m)
}

/// `x1·v - c·x2·w`
fn step(v: &CellVector, w: &CellVector, c: i64) -> CellVector {
    v.times(&x1()).combine(&w.times(&LaurentPoly2::x2()), &q(-c))
}

impl Recurrences {
    /// `X_l`, stored at index `l - 1`.
    fn x(&mut self, l: usize) -> CellVector {
        while self.x.len() < l {
            let k = self.x.len() + 1;
            let next = match k {
                1 => left(2),
                2 => left(0),
                3 => self.x[0].times(&x1()),
                4 => self.x[1].times(&x1()).combine(&left(1), &q(-1)),
                5 => step(&self.x[2], &self.x[0], 2),
                _ => step(&self.x[k - 3], &self.x[k - 5], 1),
            };
            self.x.push(next);
        }
        self.x[l - 1].clone()
    }

    /// `Y_l`, stored at index `l - 2`.
    fn y(&mut self, l: usize) -> CellVector {
        while self.y.len() + 1 < l {
            let k = self.y.len() + 2;
            let next = match k {
                2 => left(3),
                3 => left(1),
                4 => self.y[0].times(&x1()),
                5 => step(&self.y[1], &left(0), 1),
                6 => step(&self.y[2], &self.y[0], 2),
                _ => step(&self.y[k - 4], &self.y[k - 6], 1),
            };
            self.y.push(next);
        }
        self.y[l - 2].clone()
    }
}

/// Coordinates of `e_{E1i+E1j}` over `Π₁`.
fn basis_coordinates(i: i64, j: i64) -> CellVector {
    let (i, j) = (i.min(j), i.max(j));
    {
        let rec = RECURRENCES.read().unwrap();
        if let Some(v) = lookup(&rec, i, j) {
            return v;
        }
    }
    let mut rec = RECURRENCES.write().unwrap();
    if i.rem_euclid(2) == 1 {
        let k = (i - 1) / 2;
        rec.x((j - 2 * k) as usize).times(&x2_pow(k))
    } else {
        let k = i / 2;
        rec.y((j - 2 * k + 2) as usize).times(&x2_pow(k - 1))
    }
}

fn lookup(rec: &Recurrences, i: i64, j: i64) -> Option<CellVector> {
    if i.rem_euclid(2) == 1 {
        let k = (i - 1) / 2;
        rec.x.get((j - 2 * k - 1) as usize).map(|v| v.times(&x2_pow(k)))
    } else {
        let k = i / 2;
        rec.y.get((j - 2 * k) as usize).map(|v| v.times(&x2_pow(k - 1)))
    }
}

fn check_rows(x: &AlgebraElement) -> Result<()> {
    if (x.n(), x.r()) != (2, 2) {
        return Err(Error::ParameterMismatch(2, 2, x.n(), x.r()));
    }
    if x.terms().any(|(a, _)| a.row_vector() != lambda()) {
        return Err(Error::OutOfSubspace("e_λ S"));
    }
    Ok(())
}

/// Coordinates of `x ∈ e_λ S` over `Π₁`, by the recurrences.
pub fn pi1_decompose(x: &AlgebraElement) -> Result<CellVector> {
    check_rows(x)?;
    let mut out = CellVector::zero(Side::Left);
    for (a, c) in x.terms() {
        // row(A) = (2, 0): both units sit in row 1
        let cols: Vec<i64> = a
            .entries()
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.col, e.mult as usize))
            .collect();
        out = out.combine(&basis_coordinates(cols[0], cols[1]), c);
    }
    Ok(out)
}

/// Coordinates of `y ∈ S e_λ` over `Π₂`: `σ` applied to the `Π₁`
/// coordinates of `τ(y)`.
pub fn pi2_decompose(y: &AlgebraElement) -> Result<CellVector> {
    if y.terms().any(|(a, _)| a.col_vector() != lambda()) {
        return Err(Error::OutOfSubspace("S e_λ"));
    }
    let v = pi1_decompose(&y.tau())?;
    Ok(CellVector {
        side: Side::Right,
        coords: v.coords.map(|c| sigma_involution(&c)),
    })
}

pub(crate) fn left_candidates(w: i64) -> Vec<Candidate<(usize, Mono2)>> {
    let p1 = pi1_elements();
    let monos = monomials_in_window(w, 4);
    let mut out = Vec::new();
    for (m, pi) in p1.iter().enumerate() {
        for mono in &monos {
            let image = &monomial_image(*mono) * pi;
            if image.fits_window(w) {
                out.push(Candidate {
                    key: (m, *mono),
                    sig: (lambda(), signature(m)),
                    image,
                });
            }
        }
    }
    out
}

/// Independent route to [`pi1_decompose`]: exact solves against
/// `ψ^-1(x1^a x2^b)·π_m` in growing windows.
pub fn pi1_decompose_solver(targets: &[AlgebraElement], cap: i64) -> Vec<Result<CellVector>> {
    let mut out: Vec<Option<Result<CellVector>>> = targets.iter().map(|x| check_rows(x).err().map(Err)).collect();
    let radius = targets.iter().map(|x| x.col_radius()).max().unwrap_or(0);
    for w in window_schedule(radius.min(cap), cap) {
        let open: Vec<usize> = (0..targets.len())
            .filter(|&t| out[t].is_none() && targets[t].fits_window(w))
            .collect();
        if open.is_empty() {
            continue;
        }
        let batch: Vec<AlgebraElement> = open.iter().map(|&t| targets[t].clone()).collect();
        for (t, res) in open.into_iter().zip(solve_blocked(&left_candidates(w), &batch)) {
            out[t] = match res {
                SpanOutcome::Solution(sol) => {
                    let mut v = CellVector::zero(Side::Left);
                    for ((m, mono), c) in sol {
                        v.coords[m].add_term(mono, c);
                    }
                    Some(Ok(v))
                }
                SpanOutcome::Inconsistent => None,
                SpanOutcome::Underdetermined { rank, columns } => Some(Err(Error::Underdetermined { rank, columns })),
            };
        }
    }
    out.into_iter()
        .map(|o| o.unwrap_or(Err(Error::Undecided(cap))))
        .collect()
}
