//! End-to-end certificate that `J = S e_λ S` is an affine cell ideal of
//! `S(2, 2)` with `S/J ≅ Q[x, x^-1]`.

use std::fmt;
use std::time::Instant;

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decompose::{left_candidates, pi1_decompose, pi1_decompose_solver};
use super::psi::q;
use super::tensor::{
    alpha, alpha_candidates, alpha_inverse_in_window, alpha_inverse_many, candidates_for, f_involution, f_with,
    tensor_from, CellTensor, Membership,
};
use super::window::{block_ranks, SpanOutcome};
use super::{lambda, mu, nu};
use crate::element::AlgebraElement;
use crate::error::Error;
use crate::hecke::{phi, quotient_image, quotient_lift, HeckeElement};
use crate::laurent::{LaurentPoly2, Mono2};
use crate::matrix::PeriodicMatrix;

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tamper {
    /// Use the identity in place of the transpose `τ`.
    Tau,
    /// Use the identity in place of `σ` inside `f`.
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub window: i64,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tamper: Option<Tamper>,
    #[serde(skip)]
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            window: 12,
            seed: 0,
            samples: 100,
            tamper: None,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub pass: bool,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub params: VerifyConfig,
}

impl CellReport {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn any_undecided(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Undecided)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "window {}  seed {}  samples {}", p.window, p.seed, p.samples)?;
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Undecided => "undecided",
            };
            writeln!(f, "  {:<10} {:<24} {}", status, c.name, c.detail)?;
        }
        write!(f, "overall: {}", if self.pass { "pass" } else { "not certified" })
    }
}

/// Running verdict of one check.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    undecided: Vec<String>,
}

impl Tally {
    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    fn undecided(&mut self, what: impl Into<String>) {
        self.undecided.push(what.into());
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.fail(what);
        }
    }

    fn finish(self, summary: String) -> (CheckStatus, String) {
        let first = |v: &[String]| v.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
        if !self.failures.is_empty() {
            let detail = format!(
                "{summary}; {} failure(s): {}",
                self.failures.len(),
                first(&self.failures)
            );
            (CheckStatus::Fail, detail)
        } else if !self.undecided.is_empty() {
            let detail = format!(
                "{summary}; {} undecided: {}",
                self.undecided.len(),
                first(&self.undecided)
            );
            (CheckStatus::Undecided, detail)
        } else {
            (CheckStatus::Pass, summary)
        }
    }
}

struct Ctx {
    cfg: VerifyConfig,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn tau(&self, x: &AlgebraElement) -> AlgebraElement {
        match self.cfg.tamper {
            Some(Tamper::Tau) => x.clone(),
            _ => x.tau(),
        }
    }

    fn f(&self, t: &CellTensor) -> CellTensor {
        match self.cfg.tamper {
            Some(Tamper::Sigma) => f_with(t, |p| p.clone()),
            _ => f_involution(t),
        }
    }

    fn small_coeff(&mut self) -> BigRational {
        let v = self.rng.gen_range(1..=3);
        q(if self.rng.gen_bool(0.5) { v } else { -v })
    }

    fn random_poly(&mut self) -> LaurentPoly2 {
        let terms = self.rng.gen_range(1..=2);
        let mut p = LaurentPoly2::zero();
        for _ in 0..terms {
            let mono = Mono2::new(self.rng.gen_range(0..=2), self.rng.gen_range(-2..=2));
            p.add_term(mono, self.small_coeff());
        }
        p
    }

    fn random_tensor(&mut self) -> CellTensor {
        let mut t = CellTensor::zero();
        for _ in 0..self.rng.gen_range(1..=3) {
            let (l, m) = (self.rng.gen_range(0..4), self.rng.gen_range(0..4));
            t.coords[l][m] = &t.coords[l][m] + &self.random_poly();
        }
        t
    }

    /// A basis matrix of `S(2, 2)` with columns in `-2..=3`.
    fn random_basis(&mut self) -> PeriodicMatrix {
        let mut unit = || (self.rng.gen_range(1..=2), self.rng.gen_range(-2..=3), 1);
        PeriodicMatrix::from_entries(2, [unit(), unit()]).expect("n = 2")
    }

    fn random_element(&mut self) -> AlgebraElement {
        let mut x = AlgebraElement::zero(2, 2);
        for _ in 0..self.rng.gen_range(1..=3) {
            let c = self.small_coeff();
            x = &x + &AlgebraElement::basis(self.random_basis()).scale(&c);
        }
        x
    }

    /// `u · e_λ · v` with `u ∈ S e_λ`, `v ∈ e_λ S` random basis elements.
    fn random_j_element(&mut self) -> AlgebraElement {
        let mut row_unit = || {
            let (i, j) = (self.rng.gen_range(-1..=2), self.rng.gen_range(-1..=2));
            AlgebraElement::basis(PeriodicMatrix::from_entries(2, [(1, i, 1), (1, j, 1)]).expect("n = 2"))
        };
        let (u, v) = (row_unit().tau(), row_unit());
        let e_lambda = AlgebraElement::idempotent(&lambda());
        &(&u * &e_lambda) * &v
    }
}

fn membership_label(res: &Result<Membership, Error>) -> &'static str {
    match res {
        Ok(Membership::Member(_)) => "member",
        Ok(Membership::NotMember) => "not a member",
        Ok(Membership::Undecided) => "undecided",
        Err(_) => "solver error",
    }
}

/// `τ` of each `Ω′` element inside the window decomposes back through `α`,
/// and the decomposition is `f` of the original tensor.
fn check_tau_stable(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    let kept: Vec<_> = alpha_candidates(w)
        .into_iter()
        .filter(|(_, img)| ctx.tau(img).fits_window(w))
        .collect();
    if kept.is_empty() {
        tally.undecided(format!("no Ω′ element has τ-image inside window {w}"));
        return tally.finish("0 Ω′ elements".into());
    }
    let targets: Vec<AlgebraElement> = kept.iter().map(|(_, img)| ctx.tau(img)).collect();
    for (((l, m, mono), _), res) in kept.iter().zip(alpha_inverse_in_window(&targets, w)) {
        let source = CellTensor::single(*l, *m, LaurentPoly2::monomial(*mono, q(1)));
        match res {
            SpanOutcome::Solution(sol) => {
                let t = tensor_from(sol);
                tally.require(
                    t == ctx.f(&source),
                    format!(
                        "τ(π′{} x1^{} x2^{} π{}) decomposes off f",
                        l + 1,
                        mono.x1,
                        mono.x2,
                        m + 1
                    ),
                );
            }
            SpanOutcome::Inconsistent => tally.fail(format!(
                "τ(π′{} x1^{} x2^{} π{}) not in J",
                l + 1,
                mono.x1,
                mono.x2,
                m + 1
            )),
            SpanOutcome::Underdetermined { rank, columns } => tally.fail(format!("Ω′ rank {rank} < {columns}")),
        }
    }
    tally.finish(format!(
        "{} Ω′ elements with τ-image in window {w} decompose back",
        kept.len()
    ))
}

fn check_ideal_certificates(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    let m = |es: &[(i64, i64, u32)]| {
        AlgebraElement::basis(PeriodicMatrix::from_entries(2, es.iter().copied()).expect("n = 2"))
    };
    let e_lambda = AlgebraElement::idempotent(&lambda());
    let e_mu = AlgebraElement::idempotent(&mu());
    let e_nu = AlgebraElement::idempotent(&nu());
    let t1_plus = &phi(&HeckeElement::t1()) + &e_nu;
    let t2_plus = &phi(&HeckeElement::t2()) + &e_nu;

    tally.require(
        &(&m(&[(2, 1, 2)]) * &e_lambda) * &m(&[(1, 2, 2)]) == e_mu,
        "e_{2E21} e_λ e_{2E12} ≠ e_μ",
    );
    tally.require(
        &m(&[(1, 1, 1), (2, 1, 1)]) * &m(&[(1, 1, 1), (1, 2, 1)]) == t1_plus,
        "e_{E11+E21} e_{E11+E12} ≠ T1 + e_ν",
    );
    let four = &(&m(&[(1, 1, 1), (1, 2, 1)]) * &t1_plus) * &m(&[(1, 1, 1), (2, 1, 1)]);
    tally.require(four == e_lambda.scale(&q(4)), "e_{E11+E12}(T1 + e_ν)e_{E11+E21} ≠ 4e_λ");
    let conj = &(&phi(&HeckeElement::t_rho_inv()) * &t1_plus) * &phi(&HeckeElement::t_rho());
    tally.require(conj == t2_plus, "Tρ^-1 (T1 + e_ν) Tρ ≠ T2 + e_ν");

    let targets = [e_mu, t1_plus, t2_plus, e_nu];
    let names = ["e_μ", "T1 + e_ν", "T2 + e_ν", "e_ν"];
    for (k, res) in alpha_inverse_many(&targets, w).into_iter().enumerate() {
        let expect_member = k < 3;
        match (&res, expect_member) {
            (Ok(Membership::Member(_)), true) | (Ok(Membership::NotMember), false) => {}
            (Ok(Membership::Undecided), _) => tally.undecided(format!("{} undecided at window {w}", names[k])),
            _ => tally.fail(format!("{} is {}", names[k], membership_label(&res))),
        }
    }
    tally.finish("e_μ, T1 + e_ν, T2 + e_ν ∈ J; e_ν ∉ J; 4e_λ ∈ (T1 + e_ν)".into())
}

fn check_freeness(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    let mut targets = Vec::new();
    for i in -w..=w {
        for j in i..=w {
            let a = PeriodicMatrix::from_entries(2, [(1, i, 1), (1, j, 1)]).expect("n = 2");
            targets.push(AlgebraElement::basis(a));
        }
    }
    let mut expected = Vec::new();
    for x in &targets {
        match pi1_decompose(x) {
            Ok(v) => {
                tally.require(v.recompose() == *x, format!("{x} does not re-multiply"));
                expected.push(Some(v));
            }
            Err(e) => {
                tally.fail(format!("{x}: {e}"));
                expected.push(None);
            }
        }
    }
    for ((x, res), v) in targets.iter().zip(pi1_decompose_solver(&targets, w)).zip(&expected) {
        match res {
            Ok(sol) => tally.require(
                Some(&sol) == v.as_ref(),
                format!("{x}: solver and recurrences disagree"),
            ),
            Err(Error::Undecided(_)) => tally.undecided(format!("{x}: solver undecided")),
            Err(e) => tally.fail(format!("{x}: {e}")),
        }
    }
    let ranks = block_ranks(&left_candidates(w));
    let columns: usize = ranks.iter().map(|r| r.2).sum();
    for (sig, rank, cols) in &ranks {
        tally.require(rank == cols, format!("rank {rank} < {cols} for col {}", sig.1));
    }
    tally.finish(format!(
        "{} elements e_(E1i+E1j), |i|,|j| ≤ {w}: recurrences re-multiply and match the solver; {columns} solver columns, full rank",
        targets.len()
    ))
}

/// The six independent families of `Ω′` (0-based `l`, `m`).
const OMEGA_GROUPS: [(&str, &[usize], &[usize]); 6] = [
    ("l,m∈{3,4}", &[2, 3], &[2, 3]),
    ("l,m∈{1,2}", &[0, 1], &[0, 1]),
    ("l=3,m∈{1,2}", &[2], &[0, 1]),
    ("l=4,m∈{1,2}", &[3], &[0, 1]),
    ("l∈{1,2},m=3", &[0, 1], &[2]),
    ("l∈{1,2},m=4", &[0, 1], &[3]),
];

fn check_omega_independence(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    let all = alpha_candidates(w);
    let mut parts = Vec::new();
    for (name, ls, ms) in OMEGA_GROUPS {
        let group: Vec<_> = all
            .iter()
            .filter(|((l, m, _), _)| ls.contains(l) && ms.contains(m))
            .cloned()
            .collect();
        let ranks = block_ranks(&candidates_for(group));
        let (rank, cols) = ranks.iter().fold((0, 0), |(r, c), x| (r + x.1, c + x.2));
        tally.require(rank == cols, format!("{name}: rank {rank} < {cols}"));
        parts.push(format!("{name}: {rank}/{cols}"));
    }
    tally.finish(format!("Ω′ ranks in window {w}: {}", parts.join(", ")))
}

fn check_diagram(ctx: &mut Ctx) -> (CheckStatus, String) {
    let mut tally = Tally::default();
    for k in 0..ctx.cfg.samples {
        let t = ctx.random_tensor();
        let lhs = ctx.tau(&alpha(&t));
        let rhs = alpha(&ctx.f(&t));
        tally.require(lhs == rhs, format!("sample {k}"));
    }
    tally.finish(format!("τ∘α = α∘f on {} random tensors", ctx.cfg.samples))
}

fn check_alpha_round_trip(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    let mut targets: Vec<AlgebraElement> = Vec::new();
    while targets.len() < ctx.cfg.samples {
        let mut j = ctx.random_j_element();
        let c = ctx.small_coeff();
        j = &j + &ctx.random_j_element().scale(&c);
        if !j.is_zero() {
            targets.push(j);
        }
    }
    let mut bimodule = 0;
    for (k, res) in alpha_inverse_many(&targets, w).into_iter().enumerate() {
        match res {
            // membership already re-checks α(t) = j
            Ok(Membership::Member(t)) => {
                if k < 10 {
                    let s = AlgebraElement::basis(ctx.random_basis());
                    let left = t.left_act(&s).map(|u| alpha(&u) == &s * &targets[k]);
                    let right = t.right_act(&s).map(|u| alpha(&u) == &targets[k] * &s);
                    tally.require(
                        left == Ok(true) && right == Ok(true),
                        format!("sample {k}: α not a bimodule map"),
                    );
                    bimodule += 1;
                }
            }
            Ok(Membership::Undecided) => tally.undecided(format!("sample {k} wider than window {w}")),
            other => tally.fail(format!("sample {k}: {}", membership_label(&other))),
        }
    }
    tally.finish(format!(
        "α(α^-1(j)) = j for {} random j = u e_λ v; bimodule law on {bimodule}",
        targets.len()
    ))
}

fn check_quotient(ctx: &mut Ctx) -> (CheckStatus, String) {
    let w = ctx.cfg.window;
    let mut tally = Tally::default();
    for k in 0..ctx.cfg.samples {
        let (x, y) = (ctx.random_element(), ctx.random_element());
        match (quotient_image(&(&x * &y)), quotient_image(&x), quotient_image(&y)) {
            (Ok(xy), Ok(qx), Ok(qy)) => tally.require(xy == &qx * &qy, format!("sample {k}: not multiplicative")),
            _ => tally.fail(format!("sample {k}: quotient map failed")),
        }
        let j = ctx.random_j_element();
        tally.require(
            quotient_image(&j).map(|p| p.is_zero()) == Ok(true),
            format!("sample {k}: J element survives"),
        );
    }
    let decomp = ctx.cfg.samples.min(25);
    let mut diffs = Vec::new();
    for k in 0..decomp {
        let x = ctx.random_element();
        match quotient_image(&x) {
            Ok(p) => diffs.push(&x - &quotient_lift(&p)),
            Err(e) => tally.fail(format!("direct-sum sample {k}: {e}")),
        }
    }
    for (k, res) in alpha_inverse_many(&diffs, w).into_iter().enumerate() {
        match res {
            Ok(Membership::Member(_)) => {}
            Ok(Membership::Undecided) => tally.undecided(format!("x - lift(x̄) for sample {k} wider than window {w}")),
            other => tally.fail(format!("x - lift(x̄) for sample {k}: {}", membership_label(&other))),
        }
    }
    tally.finish(format!(
        "S → Q[x, x^-1] multiplicative on {0} pairs, kills {0} elements of J; x - lift(x̄) ∈ J for {decomp} samples",
        ctx.cfg.samples
    ))
}

type Check = fn(&mut Ctx) -> (CheckStatus, String);

const CHECKS: [(&str, Check); 7] = [
    ("tau_stable_ideal", check_tau_stable),
    ("ideal_certificates", check_ideal_certificates),
    ("freeness", check_freeness),
    ("omega_independence", check_omega_independence),
    ("tau_alpha_diagram", check_diagram),
    ("alpha_round_trip", check_alpha_round_trip),
    ("quotient", check_quotient),
];

/// Runs every check; failures are recorded in the report, never raised.
pub fn verify_cell_chain(cfg: &VerifyConfig) -> CellReport {
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    };
    let mut checks = Vec::new();
    for (name, run) in CHECKS {
        let start = Instant::now();
        let (status, detail) = if cfg.window < 1 {
            (
                CheckStatus::Fail,
                format!("window must be positive, got {}", cfg.window),
            )
        } else {
            run(&mut ctx)
        };
        let millis = if cfg.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        checks.push(CheckResult {
            name: name.into(),
            status,
            pass: status == CheckStatus::Pass,
            detail,
            millis,
        });
    }
    CellReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
        params: cfg.clone(),
    }
}
