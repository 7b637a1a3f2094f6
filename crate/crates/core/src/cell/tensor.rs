//! `S e_λ ⊗_B e_λ S` in the basis `π′_l ⊗ b ⊗ π_m` and the
//! multiplication map `α` onto `J`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use super::decompose::{pi1_decompose, pi2_decompose};
use super::psi::{monomial_image, monomials_in_window, psi_inverse, sigma_involution};
use super::window::{solve_blocked, window_schedule, Candidate, SpanOutcome};
use super::{pi1_elements, pi2_elements, signature};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly2, Mono2};

/// `coords[l][m]` is the coefficient of `π′_l ⊗ · ⊗ π_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellTensor {
    pub coords: [[LaurentPoly2; 4]; 4],
}

impl CellTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(l: usize, m: usize, p: LaurentPoly2) -> Self {
        let mut out = Self::zero();
        out.coords[l][m] = p;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, orow) in out.coords.iter_mut().zip(&other.coords) {
            for (p, q) in row.iter_mut().zip(orow) {
                *p = &*p + q;
            }
        }
        out
    }

    /// `s·t`, moving `s·π′_l` back onto `Π₂`.
    pub fn left_act(&self, s: &AlgebraElement) -> Result<Self> {
        let p2 = pi2_elements();
        let mut out = Self::zero();
        for (l, row) in self.coords.iter().enumerate() {
            if row.iter().all(|p| p.is_zero()) {
                continue;
            }
            let d = pi2_decompose(&(s * &p2[l]))?;
            for (k, dk) in d.coords.iter().enumerate() {
                for (m, p) in row.iter().enumerate() {
                    out.coords[k][m] = &out.coords[k][m] + &(dk * p);
                }
            }
        }
        Ok(out)
    }

    /// `t·s`, moving `π_m·s` back onto `Π₁`.
    pub fn right_act(&self, s: &AlgebraElement) -> Result<Self> {
        let p1 = pi1_elements();
        let mut out = Self::zero();
        for m in 0..4 {
            if self.coords.iter().all(|row| row[m].is_zero()) {
                continue;
            }
            let c = pi1_decompose(&(&p1[m] * s))?;
            for (k, ck) in c.coords.iter().enumerate() {
                for l in 0..4 {
                    out.coords[l][k] = &out.coords[l][k] + &(&self.coords[l][m] * ck);
                }
            }
        }
        Ok(out)
    }
}

/// `Σ π′_l · ψ^-1(t_lm) · π_m`.
pub fn alpha(t: &CellTensor) -> AlgebraElement {
    let (p1, p2) = (pi1_elements(), pi2_elements());
    let mut out = AlgebraElement::zero(2, 2);
    for (l, row) in t.coords.iter().enumerate() {
        for (m, p) in row.iter().enumerate() {
            if !p.is_zero() {
                out = &out + &(&(&p2[l] * &psi_inverse(p)) * &p1[m]);
            }
        }
    }
    out
}

/// `π′_l ⊗ b ⊗ π_m ↦ π_m ⊗ σ(b) ⊗ π′_l`, the swap matching `τ` under `α`.
pub fn f_involution(t: &CellTensor) -> CellTensor {
    f_with(t, sigma_involution)
}

pub(crate) fn f_with(t: &CellTensor, sigma: impl Fn(&LaurentPoly2) -> LaurentPoly2) -> CellTensor {
    let mut out = CellTensor::zero();
    for (l, row) in t.coords.iter().enumerate() {
        for (m, p) in row.iter().enumerate() {
            out.coords[m][l] = sigma(p);
        }
    }
    out
}

/// `(l, m, x1^a x2^b)` labelling `π′_l ⊗ x1^a x2^b ⊗ π_m`.
pub type OmegaKey = (usize, usize, Mono2);

static OMEGA: LazyLock<RwLock<HashMap<OmegaKey, AlgebraElement>>> = LazyLock::new(Default::default);

fn omega_image(key: OmegaKey) -> AlgebraElement {
    if let Some(hit) = OMEGA.read().unwrap().get(&key) {
        return hit.clone();
    }
    let (l, m, mono) = key;
    let value = &(&pi2_elements()[l] * &monomial_image(mono)) * &pi1_elements()[m];
    OMEGA.write().unwrap().entry(key).or_insert_with(|| value.clone());
    value
}

/// The elements `π′_l · ψ^-1(x1^a x2^b) · π_m` with all columns in
/// `[-w, w]`.
pub fn alpha_candidates(w: i64) -> Vec<(OmegaKey, AlgebraElement)> {
    let monos = monomials_in_window(w, 6);
    let mut out = Vec::new();
    for l in 0..4 {
        for m in 0..4 {
            for mono in &monos {
                let key = (l, m, *mono);
                let image = omega_image(key);
                if image.fits_window(w) {
                    out.push((key, image));
                }
            }
        }
    }
    out
}

pub(crate) fn candidates_for(images: Vec<(OmegaKey, AlgebraElement)>) -> Vec<Candidate<OmegaKey>> {
    images
        .into_iter()
        .map(|(key, image)| Candidate {
            key,
            sig: (signature(key.0), signature(key.1)),
            image,
        })
        .collect()
}

pub(crate) fn tensor_from(sol: Vec<(OmegaKey, num::BigRational)>) -> CellTensor {
    let mut t = CellTensor::zero();
    for ((l, m, mono), c) in sol {
        t.coords[l][m].add_term(mono, c);
    }
    t
}

/// Preimages under `α` of several targets using one window.
pub(crate) fn alpha_inverse_in_window(targets: &[AlgebraElement], w: i64) -> Vec<SpanOutcome<OmegaKey>> {
    solve_blocked(&candidates_for(alpha_candidates(w)), targets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// In `J`, with the unique tensor mapping onto it.
    Member(Box<CellTensor>),
    /// Not in the span of the candidates at the largest window.
    NotMember,
    /// The element does not fit the largest window.
    Undecided,
}

/// The unique `t` with `α(t) = x`, searched in windows up to `cap`.
pub fn alpha_inverse(x: &AlgebraElement, cap: i64) -> Result<Membership> {
    alpha_inverse_many(std::slice::from_ref(x), cap).remove(0)
}

/// [`alpha_inverse`] for several targets; each window is solved once for
/// every target that fits it and is still open.
pub fn alpha_inverse_many(targets: &[AlgebraElement], cap: i64) -> Vec<Result<Membership>> {
    let mut out: Vec<Option<Result<Membership>>> = targets
        .iter()
        .map(|x| {
            if (x.n(), x.r()) != (2, 2) {
                Some(Err(Error::ParameterMismatch(2, 2, x.n(), x.r())))
            } else if x.col_radius() > cap {
                Some(Ok(Membership::Undecided))
            } else {
                None
            }
        })
        .collect();
    let radius = targets
        .iter()
        .map(|x| x.col_radius())
        .filter(|&r| r <= cap)
        .min()
        .unwrap_or(cap);
    for w in window_schedule(radius, cap) {
        let open: Vec<usize> = (0..targets.len())
            .filter(|&t| out[t].is_none() && targets[t].fits_window(w))
            .collect();
        if open.is_empty() {
            continue;
        }
        let batch: Vec<AlgebraElement> = open.iter().map(|&t| targets[t].clone()).collect();
        for (t, res) in open.into_iter().zip(alpha_inverse_in_window(&batch, w)) {
            out[t] = match res {
                SpanOutcome::Solution(sol) => {
                    let tensor = tensor_from(sol);
                    if alpha(&tensor) == targets[t] {
                        Some(Ok(Membership::Member(Box::new(tensor))))
                    } else {
                        Some(Err(Error::Internal(format!(
                            "α certificate does not reproduce {}",
                            targets[t]
                        ))))
                    }
                }
                SpanOutcome::Inconsistent => None,
                SpanOutcome::Underdetermined { rank, columns } => Some(Err(Error::Underdetermined { rank, columns })),
            };
        }
    }
    out.into_iter()
        .map(|o| o.unwrap_or(Ok(Membership::NotMember)))
        .collect()
}

/// Membership of `x` in `J = S e_λ S` with column window `window`.
pub fn j_membership(x: &AlgebraElement, window: i64) -> Result<Membership> {
    alpha_inverse(x, window)
}
