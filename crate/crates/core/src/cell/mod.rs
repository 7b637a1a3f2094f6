//! The affine cellular structure of `S = S(2, 2)`.
//!
//! The ideal is `J = S e_λ S` with `λ = (2, 0)` and corner algebra
//! `B = e_λ S e_λ ≅ Q[x1, x2, x2^-1]`. `Π₁` and `Π₂` are free bases of
//! `e_λ S` and `S e_λ` over `B`; multiplication gives `α: S e_λ ⊗_B e_λ S → J`.
//!
//! Infinite-dimensional questions (membership in `J`, preimages under `ψ`
//! and `α`) are answered by exact solves over candidates whose images have
//! all columns in `[-W, W]`.

mod decompose;
mod psi;
mod tensor;
mod verify;
mod window;

use crate::element::AlgebraElement;
use crate::matrix::{Composition, PeriodicMatrix};

pub use decompose::{pi1_decompose, pi1_decompose_solver, pi2_decompose, CellVector, Side};
pub use psi::{monomial_image, psi, psi_inverse, sigma_involution};
pub use tensor::{
    alpha, alpha_candidates, alpha_inverse, alpha_inverse_many, f_involution, j_membership, CellTensor, Membership,
    OmegaKey,
};
pub use verify::{verify_cell_chain, CellReport, CheckResult, CheckStatus, Tamper, VerifyConfig};
pub use window::window_schedule;

pub fn lambda() -> Composition {
    Composition::new(vec![2, 0]).unwrap()
}

pub fn mu() -> Composition {
    Composition::new(vec![0, 2]).unwrap()
}

pub fn nu() -> Composition {
    Composition::new(vec![1, 1]).unwrap()
}

fn m(es: &[(i64, i64, u32)]) -> PeriodicMatrix {
    PeriodicMatrix::from_entries(2, es.iter().copied()).expect("n = 2")
}

/// `Π₁`, a basis of `e_λ S` as a left `B`-module, in the fixed order.
pub fn pi1() -> [PeriodicMatrix; 4] {
    [
        m(&[(1, 1, 1), (1, 2, 1)]),
        m(&[(1, 2, 1), (1, 3, 1)]),
        m(&[(1, 1, 2)]),
        m(&[(1, 2, 2)]),
    ]
}

/// `Π₂ = τ(Π₁)`, a basis of `S e_λ` as a right `B`-module.
pub fn pi2() -> [PeriodicMatrix; 4] {
    pi1().map(|a| a.transpose())
}

pub(crate) fn pi1_elements() -> [AlgebraElement; 4] {
    pi1().map(AlgebraElement::basis)
}

pub(crate) fn pi2_elements() -> [AlgebraElement; 4] {
    pi2().map(AlgebraElement::basis)
}

/// Row signature of `π′_l` (equivalently the column signature of `π_l`).
pub(crate) fn signature(l: usize) -> Composition {
    match l {
        0 | 1 => nu(),
        2 => lambda(),
        _ => mu(),
    }
}
