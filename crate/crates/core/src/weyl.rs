//! The extended affine Weyl group `S_r ⋉ Z^r` acting on integer `r`-tuples,
//! and the dictionary between orbits of tuple pairs and periodic matrices.
//!
//! Convention: `(i·(σ, ε))_t = i_{σ(t)} + n·ε_t`, with product
//! `(σ, ε)(σ', ε') = (σ∘σ', ε∘σ' + ε')`. This makes the action a right action.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::matrix::PeriodicMatrix;

/// An element of `I(Z, r)` together with the period `n` of the action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    n: u32,
    values: Vec<i64>,
}

impl IndexTuple {
    pub fn new(n: u32, values: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("period n must be positive"));
        }
        if values.is_empty() {
            return Err(invalid("index tuples need length r >= 1"));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn check(&self, other: &IndexTuple) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        if self.n != other.n {
            return Err(invalid(format!("periods differ: {} vs {}", self.n, other.n)));
        }
        Ok(())
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.values.iter().join(","))
    }
}

/// `(σ, ε) ∈ S_r ⋉ Z^r`; `sigma[t]` is the 0-based image `σ(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WeylJson", into = "WeylJson")]
pub struct WeylElement {
    sigma: Vec<usize>,
    eps: Vec<i64>,
}

impl WeylElement {
    pub fn new(sigma: Vec<usize>, eps: Vec<i64>) -> Result<Self> {
        if sigma.len() != eps.len() {
            return Err(Error::LengthMismatch(sigma.len(), eps.len()));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
                return Err(invalid(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(Self { sigma, eps })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            sigma: (0..r).collect(),
            eps: vec![0; r],
        }
    }

    pub fn shift(eps: Vec<i64>) -> Self {
        Self {
            sigma: (0..eps.len()).collect(),
            eps,
        }
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    pub fn is_identity(&self) -> bool {
        self.eps.iter().all(|&e| e == 0) && self.sigma.iter().enumerate().all(|(t, &s)| t == s)
    }

    /// `self · other` under the fixed composition law.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), other.rank(), "composing Weyl elements of different rank");
        let sigma = other.sigma.iter().map(|&t| self.sigma[t]).collect();
        let eps = other
            .sigma
            .iter()
            .zip(&other.eps)
            .map(|(&t, &e)| self.eps[t] + e)
            .collect();
        WeylElement { sigma, eps }
    }

    pub fn inverse(&self) -> WeylElement {
        let r = self.rank();
        let mut sigma = vec![0; r];
        for (t, &s) in self.sigma.iter().enumerate() {
            sigma[s] = t;
        }
        let eps = sigma.iter().map(|&t| -self.eps[t]).collect();
        WeylElement { sigma, eps }
    }

    /// Sign of the permutation part.
    pub fn sign(&self) -> i32 {
        let inversions = (0..self.rank())
            .tuple_combinations()
            .filter(|&(a, b)| self.sigma[a] > self.sigma[b])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn shift_sum(&self) -> i64 {
        self.eps.iter().sum()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "([{}],[{}])",
            self.sigma.iter().map(|s| s + 1).join(","),
            self.eps.iter().join(",")
        )
    }
}

#[derive(Serialize, Deserialize)]
struct WeylJson {
    sigma: Vec<usize>,
    eps: Vec<i64>,
}

impl TryFrom<WeylJson> for WeylElement {
    type Error = Error;

    fn try_from(j: WeylJson) -> Result<Self> {
        if j.sigma.contains(&0) {
            return Err(invalid("sigma is 1-based"));
        }
        WeylElement::new(j.sigma.into_iter().map(|s| s - 1).collect(), j.eps)
    }
}

impl From<WeylElement> for WeylJson {
    fn from(w: WeylElement) -> Self {
        WeylJson {
            sigma: w.sigma.into_iter().map(|s| s + 1).collect(),
            eps: w.eps,
        }
    }
}

/// Right action `i·w`.
pub fn act(i: &IndexTuple, w: &WeylElement) -> Result<IndexTuple> {
    if i.len() != w.rank() {
        return Err(Error::LengthMismatch(i.len(), w.rank()));
    }
    let n = i.n as i64;
    let values = w.sigma.iter().zip(&w.eps).map(|(&s, &e)| i.values[s] + n * e).collect();
    Ok(IndexTuple { n: i.n, values })
}

/// Every `w` with `k·w = s`, in lexicographic order of `σ`.
pub fn transporter(k: &IndexTuple, s: &IndexTuple) -> Result<Vec<WeylElement>> {
    k.check(s)?;
    let r = k.len();
    let n = k.n as i64;
    let mut out = Vec::new();
    for sigma in (0..r).permutations(r) {
        let eps: Option<Vec<i64>> = (0..r)
            .map(|t| {
                let d = s.values[t] - k.values[sigma[t]];
                (d % n == 0).then_some(d / n)
            })
            .collect();
        if let Some(eps) = eps {
            out.push(WeylElement { sigma, eps });
        }
    }
    Ok(out)
}

/// The finite stabilizer of `i`, identity first.
pub fn stabilizer(i: &IndexTuple) -> Vec<WeylElement> {
    transporter(i, i).expect("a tuple is compatible with itself")
}

/// The orbit invariant of `(i, j)`: `a[x][y] = #{s | i_s = x, j_s = y}`
/// after shifting each pair `(i_s, j_s)` diagonally into rows `1..=n`.
pub fn pair_to_matrix(i: &IndexTuple, j: &IndexTuple) -> Result<PeriodicMatrix> {
    i.check(j)?;
    PeriodicMatrix::from_entries(i.n, i.values.iter().zip(&j.values).map(|(&x, &y)| (x, y, 1)))
}

/// Canonical pair: entries listed row-major with multiplicity.
pub fn matrix_to_pair(a: &PeriodicMatrix) -> (IndexTuple, IndexTuple) {
    let mut i = Vec::with_capacity(a.r() as usize);
    let mut j = Vec::with_capacity(a.r() as usize);
    for e in a.entries() {
        for _ in 0..e.mult {
            i.push(e.row);
            j.push(e.col);
        }
    }
    let n = a.n();
    (IndexTuple { n, values: i }, IndexTuple { n, values: j })
}

pub fn pair_orbit_equal(p1: (&IndexTuple, &IndexTuple), p2: (&IndexTuple, &IndexTuple)) -> Result<bool> {
    Ok(pair_to_matrix(p1.0, p1.1)? == pair_to_matrix(p2.0, p2.1)?)
}

/// Tuples `k` and `s` lie in the same orbit.
pub fn same_orbit(k: &IndexTuple, s: &IndexTuple) -> bool {
    if k.check(s).is_err() {
        return false;
    }
    let n = k.n as i64;
    let residues = |t: &IndexTuple| -> Vec<i64> { t.values.iter().map(|v| v.rem_euclid(n)).sorted().collect() };
    residues(k) == residues(s)
}
