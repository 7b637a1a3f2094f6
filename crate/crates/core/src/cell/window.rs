use std::collections::{BTreeMap, HashMap};

use num::{BigRational, Zero};

use crate::element::AlgebraElement;
use crate::linalg::{rank, solve_unique_many, SolveOutcome, SparseSystem, SparseVector};
use crate::matrix::{Composition, PeriodicMatrix};

/// Windows tried for a target of column radius `radius`: doubling from
/// `max(radius, 1)` and ending exactly at `cap`. Empty when `radius > cap`.
pub fn window_schedule(radius: i64, cap: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut w = radius.max(1);
    while w < cap {
        out.push(w);
        w *= 2;
    }
    if radius <= cap {
        out.push(cap);
    }
    out
}

pub(crate) type Signature = (Composition, Composition);

pub(crate) fn term_signature(a: &PeriodicMatrix) -> Signature {
    (a.row_vector(), a.col_vector())
}

/// One candidate generator: a label, the signature all its image terms
/// share, and the image itself.
pub(crate) struct Candidate<K> {
    pub key: K,
    pub sig: Signature,
    pub image: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SpanOutcome<K> {
    Solution(Vec<(K, BigRational)>),
    Inconsistent,
    Underdetermined { rank: usize, columns: usize },
}

struct Block<'a, K> {
    cands: Vec<&'a Candidate<K>>,
    rows: HashMap<PeriodicMatrix, usize>,
    columns: Vec<SparseVector>,
}

impl<'a, K> Block<'a, K> {
    fn new(cands: Vec<&'a Candidate<K>>) -> Self {
        let mut rows = HashMap::new();
        let columns = cands
            .iter()
            .map(|c| {
                c.image
                    .terms()
                    .map(|(a, v)| {
                        let next = rows.len();
                        (*rows.entry(a.clone()).or_insert(next), v.clone())
                    })
                    .collect()
            })
            .collect();
        Self { cands, rows, columns }
    }

    fn rhs(&self, slice: &BTreeMap<PeriodicMatrix, BigRational>) -> Option<SparseVector> {
        slice
            .iter()
            .map(|(a, v)| self.rows.get(a).map(|&r| (r, v.clone())))
            .collect()
    }
}

/// `(rank, columns)` of the candidate images, one entry per signature.
pub(crate) fn block_ranks<K>(cands: &[Candidate<K>]) -> Vec<(Signature, usize, usize)> {
    let mut by_sig: BTreeMap<&Signature, Vec<&Candidate<K>>> = BTreeMap::new();
    for c in cands {
        by_sig.entry(&c.sig).or_default().push(c);
    }
    by_sig
        .into_iter()
        .map(|(sig, group)| {
            let block = Block::new(group);
            let columns = block.columns.len();
            let sys = SparseSystem::new(block.rows.len(), block.columns, SparseVector::new());
            (sig.clone(), rank(&sys), columns)
        })
        .collect()
}

/// Solves `target = Σ c_k · image_k` for every target, one elimination per
/// signature block. Terms of different signatures are independent, so each
/// block is solved on its own slice of every target.
pub(crate) fn solve_blocked<K: Clone>(cands: &[Candidate<K>], targets: &[AlgebraElement]) -> Vec<SpanOutcome<K>> {
    let mut by_sig: BTreeMap<&Signature, Vec<&Candidate<K>>> = BTreeMap::new();
    for c in cands {
        by_sig.entry(&c.sig).or_default().push(c);
    }
    let mut slices: Vec<BTreeMap<Signature, BTreeMap<PeriodicMatrix, BigRational>>> = Vec::new();
    let mut out: Vec<Option<SpanOutcome<K>>> = vec![None; targets.len()];
    let mut partial: Vec<Vec<(K, BigRational)>> = vec![Vec::new(); targets.len()];
    for (t, target) in targets.iter().enumerate() {
        let mut s: BTreeMap<Signature, BTreeMap<PeriodicMatrix, BigRational>> = BTreeMap::new();
        for (a, v) in target.terms() {
            s.entry(term_signature(a)).or_default().insert(a.clone(), v.clone());
        }
        if s.keys().any(|sig| !by_sig.contains_key(sig)) {
            out[t] = Some(SpanOutcome::Inconsistent);
        }
        slices.push(s);
    }

    let empty = BTreeMap::new();
    for (sig, group) in by_sig {
        let block = Block::new(group);
        let mut live = Vec::new();
        let mut rhs = Vec::new();
        for (t, s) in slices.iter().enumerate() {
            if out[t].is_some() {
                continue;
            }
            match block.rhs(s.get(sig).unwrap_or(&empty)) {
                Some(v) => {
                    live.push(t);
                    rhs.push(v);
                }
                None => out[t] = Some(SpanOutcome::Inconsistent),
            }
        }
        if live.is_empty() {
            continue;
        }
        let columns = block.columns.len();
        for (t, res) in live
            .into_iter()
            .zip(solve_unique_many(block.rows.len(), &block.columns, &rhs))
        {
            match res {
                SolveOutcome::Solution(x) => partial[t].extend(
                    block
                        .cands
                        .iter()
                        .zip(x)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(c, v)| (c.key.clone(), v)),
                ),
                SolveOutcome::Inconsistent => out[t] = Some(SpanOutcome::Inconsistent),
                SolveOutcome::Underdetermined { rank } => out[t] = Some(SpanOutcome::Underdetermined { rank, columns }),
            }
        }
    }
    out.into_iter()
        .zip(partial)
        .map(|(o, p)| o.unwrap_or(SpanOutcome::Solution(p)))
        .collect()
}
