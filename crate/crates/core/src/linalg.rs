//! Exact sparse linear systems over the rationals.
//!
//! Rows are cleared to integers and reduced fraction-free: each update is
//! `row ← p·row − a·pivot_row` followed by division by the row content.
//! Pivot rows are chosen by fewest nonzeros.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Zero};

/// Sparse column or right-hand side, keyed by row index.
pub type SparseVector = BTreeMap<usize, BigRational>;

#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    rows: usize,
    columns: Vec<SparseVector>,
    rhs: SparseVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<BigRational>),
    Inconsistent,
    Underdetermined { rank: usize },
}

impl SparseSystem {
    pub fn new(rows: usize, columns: Vec<SparseVector>, rhs: SparseVector) -> Self {
        let rows = columns
            .iter()
            .chain(std::iter::once(&rhs))
            .filter_map(|c| c.keys().next_back())
            .map(|&k| k + 1)
            .fold(rows, usize::max);
        Self { rows, columns, rhs }
    }

    pub fn from_dense(a: &[Vec<i64>], b: &[i64]) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        let columns = (0..cols)
            .map(|c| {
                a.iter()
                    .enumerate()
                    .filter(|(_, row)| row[c] != 0)
                    .map(|(r, row)| (r, BigRational::from_integer(row[c].into())))
                    .collect()
            })
            .collect();
        let rhs = b
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(r, &x)| (r, BigRational::from_integer(x.into())))
            .collect();
        Self::new(a.len(), columns, rhs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn rhs(&self) -> &SparseVector {
        &self.rhs
    }

    /// `A·x` for a candidate solution.
    pub fn apply(&self, x: &[BigRational]) -> SparseVector {
        let mut out = SparseVector::new();
        for (col, xc) in self.columns.iter().zip(x) {
            if xc.is_zero() {
                continue;
            }
            for (&r, v) in col {
                let slot = out.entry(r).or_insert_with(BigRational::zero);
                *slot += v * xc;
                if slot.is_zero() {
                    out.remove(&r);
                }
            }
        }
        out
    }
}

type IntRow = BTreeMap<usize, BigInt>;

struct Echelon {
    /// `(column, row index)` of every pivot, in column order.
    pivots: Vec<(usize, usize)>,
    rows: Vec<IntRow>,
    used: Vec<bool>,
}

fn to_int_rows(rows: usize, columns: &[&SparseVector]) -> Vec<IntRow> {
    let mut rational: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); rows];
    for (c, col) in columns.iter().enumerate() {
        for (&r, v) in col.iter() {
            if !v.is_zero() {
                rational[r].insert(c, v.clone());
            }
        }
    }
    rational
        .into_iter()
        .map(|row| {
            let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut out: IntRow = row
                .into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
                .collect();
            remove_content(&mut out);
            out
        })
        .collect()
}

fn remove_content(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// `row ← p·row − a·pivot`, eliminating column `c`.
fn eliminate(row: &mut IntRow, pivot: &IntRow, c: usize) {
    let p = &pivot[&c];
    let a = row[&c].clone();
    let g = p.gcd(&a);
    let (p, a) = (p / &g, a / &g);
    for v in row.values_mut() {
        *v *= &p;
    }
    for (k, v) in pivot {
        let slot = row.entry(*k).or_insert_with(BigInt::zero);
        *slot -= &a * v;
    }
    row.retain(|_, v| !v.is_zero());
    remove_content(row);
}

/// Gauss–Jordan over the first `pivot_cols` columns.
fn reduce(mut rows: Vec<IntRow>, pivot_cols: usize) -> Echelon {
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(r, row)| !used[*r] && row.contains_key(&c))
            .min_by_key(|(_, row)| row.len())
            .map(|(r, _)| r);
        let Some(p) = best else { continue };
        used[p] = true;
        pivots.push((c, p));
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != p && row.contains_key(&c) {
                eliminate(row, &pivot, c);
            }
        }
    }
    Echelon { pivots, rows, used }
}

/// Exact rank of the coefficient matrix (right-hand side ignored).
pub fn rank(sys: &SparseSystem) -> usize {
    let cols: Vec<&SparseVector> = sys.columns.iter().collect();
    reduce(to_int_rows(sys.rows, &cols), cols.len()).pivots.len()
}

/// Solves against one right-hand side; a solution is returned only if unique.
pub fn solve_unique(sys: &SparseSystem) -> SolveOutcome {
    solve_unique_many(sys.rows, &sys.columns, std::slice::from_ref(&sys.rhs)).remove(0)
}

/// Solves `A·x = b` for several right-hand sides with one elimination.
pub fn solve_unique_many(rows: usize, columns: &[SparseVector], rhs: &[SparseVector]) -> Vec<SolveOutcome> {
    let rows = columns
        .iter()
        .chain(rhs)
        .filter_map(|c| c.keys().next_back())
        .map(|&k| k + 1)
        .fold(rows, usize::max);
    let k = columns.len();
    let all: Vec<&SparseVector> = columns.iter().chain(rhs).collect();
    let ech = reduce(to_int_rows(rows, &all), k);
    let rank = ech.pivots.len();

    (0..rhs.len())
        .map(|b| {
            let col = k + b;
            let inconsistent = ech
                .rows
                .iter()
                .zip(&ech.used)
                .any(|(row, &used)| !used && row.contains_key(&col));
            if inconsistent {
                return SolveOutcome::Inconsistent;
            }
            if rank < k {
                return SolveOutcome::Underdetermined { rank };
            }
            let mut x = vec![BigRational::zero(); k];
            for &(c, r) in &ech.pivots {
                let row = &ech.rows[r];
                if let Some(v) = row.get(&col) {
                    x[c] = BigRational::new(v.clone(), row[&c].clone());
                }
            }
            SolveOutcome::Solution(x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn identity_system_returns_rhs() {
        let sys = SparseSystem::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[4, -2, 7]);
        assert_eq!(solve_unique(&sys), SolveOutcome::Solution(vec![q(4), q(-2), q(7)]));
        assert_eq!(rank(&sys), 3);
    }

    #[test]
    fn one_by_two_is_underdetermined() {
        let sys = SparseSystem::from_dense(&[vec![1, 1]], &[1]);
        assert_eq!(solve_unique(&sys), SolveOutcome::Underdetermined { rank: 1 });
    }

    #[test]
    fn inconsistent_detected() {
        let sys = SparseSystem::from_dense(&[vec![1, 1], vec![2, 2]], &[1, 3]);
        assert_eq!(solve_unique(&sys), SolveOutcome::Inconsistent);
        let sys = SparseSystem::from_dense(&[vec![1], vec![0]], &[1, 1]);
        assert_eq!(solve_unique(&sys), SolveOutcome::Inconsistent);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let sys = SparseSystem::from_dense(&[vec![0, 0], vec![0, 0]], &[0, 0]);
        assert_eq!(rank(&sys), 0);
    }

    #[test]
    fn rational_solution() {
        let sys = SparseSystem::from_dense(&[vec![2, 1], vec![1, 3]], &[1, 0]);
        let SolveOutcome::Solution(x) = solve_unique(&sys) else {
            panic!()
        };
        assert_eq!(
            x,
            vec![
                BigRational::new(3.into(), 5.into()),
                BigRational::new((-1).into(), 5.into())
            ]
        );
        assert_eq!(sys.apply(&x), *sys.rhs());
    }

    #[test]
    fn overdetermined_consistent() {
        let sys = SparseSystem::from_dense(&[vec![1, 0], vec![0, 1], vec![1, 1]], &[2, 3, 5]);
        assert_eq!(solve_unique(&sys), SolveOutcome::Solution(vec![q(2), q(3)]));
    }

    #[test]
    fn many_right_hand_sides() {
        let a = SparseSystem::from_dense(&[vec![1, 2], vec![3, 4], vec![0, 0]], &[0, 0, 0]);
        let rhs: Vec<SparseVector> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(r, &v)| (r, q(v)))
                    .collect()
            })
            .collect();
        let out = solve_unique_many(3, a.columns(), &rhs);
        assert_eq!(
            out[0],
            SolveOutcome::Solution(vec![q(-2), BigRational::new(3.into(), 2.into())])
        );
        assert_eq!(
            out[1],
            SolveOutcome::Solution(vec![q(1), BigRational::new((-1).into(), 2.into())])
        );
        assert_eq!(out[2], SolveOutcome::Inconsistent);
    }
}
