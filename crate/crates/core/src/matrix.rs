//! Periodic matrices indexing the standard basis, and compositions.
//!
//! A periodic matrix satisfies `a[i][j] = a[i + n][j + n]`, so it is stored by
//! its representative rows `1..=n` only. Every column index is kept as an
//! unbounded integer.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// One period `(λ_1, ..., λ_n)` of a periodic composition of `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("a composition needs period n >= 1"));
        }
        Ok(Self { parts })
    }

    pub fn n(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn r(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` for any integer `i`, read periodically.
    pub fn part(&self, i: i64) -> u32 {
        let n = self.parts.len() as i64;
        self.parts[(i - 1).rem_euclid(n) as usize]
    }

    /// All of `Λ(n, r)` in lexicographically decreasing order.
    pub fn all(n: u32, r: u32) -> Vec<Composition> {
        fn go(n: usize, r: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if prefix.len() + 1 == n {
                prefix.push(r);
                out.push(Composition { parts: prefix.clone() });
                prefix.pop();
                return;
            }
            for first in (0..=r).rev() {
                prefix.push(first);
                go(n, r - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n as usize, r, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A single representative entry: `a[row][col] = mult` with `1 <= row <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub row: i64,
    pub col: i64,
    pub mult: u32,
}

/// Canonical representative of a matrix in `Θ(n, r)`.
///
/// Entries are sorted by `(row, col)` with rows in `1..=n` and no zero
/// multiplicities, so structural equality is matrix equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicMatrix {
    n: u32,
    r: u32,
    entries: Vec<Entry>,
}

/// Shift `(i, j)` along the diagonal so that `i` lands in `1..=n`.
pub(crate) fn reduce_index(n: u32, i: i64, j: i64) -> (i64, i64) {
    let n = n as i64;
    let row = (i - 1).rem_euclid(n) + 1;
    (row, j - (i - row))
}

impl PeriodicMatrix {
    /// Builds a matrix from arbitrary `(i, j, a)` triples; rows are reduced
    /// into `1..=n` and repeated positions are summed.
    pub fn from_entries<I>(n: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64, u32)>,
    {
        if n == 0 {
            return Err(invalid("period n must be positive"));
        }
        let mut acc: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        for (i, j, a) in entries {
            if a == 0 {
                continue;
            }
            *acc.entry(reduce_index(n, i, j)).or_insert(0) += a;
        }
        Ok(Self::from_reduced(n, acc))
    }

    fn from_reduced(n: u32, acc: BTreeMap<(i64, i64), u32>) -> Self {
        let entries: Vec<Entry> = acc
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .map(|((row, col), mult)| Entry { row, col, mult })
            .collect();
        let r = entries.iter().map(|e| e.mult).sum();
        Self { n, r, entries }
    }

    /// `E^△_{i,j}`; requires `1 <= i <= n`.
    pub fn unit(n: u32, i: i64, j: i64) -> Result<Self> {
        if i < 1 || i > n as i64 {
            return Err(invalid(format!("row index {i} outside 1..={n}")));
        }
        Self::from_entries(n, [(i, j, 1)])
    }

    pub fn diag(lambda: &Composition) -> Self {
        let n = lambda.n();
        let acc = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(k, &p)| ((k as i64 + 1, k as i64 + 1), p))
            .collect();
        Self::from_reduced(n, acc)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// `a[i][j]` for arbitrary integers `i`, `j`.
    pub fn get(&self, i: i64, j: i64) -> u32 {
        let (row, col) = reduce_index(self.n, i, j);
        self.entries
            .binary_search_by(|e| (e.row, e.col).cmp(&(row, col)))
            .map(|k| self.entries[k].mult)
            .unwrap_or(0)
    }

    pub fn row_vector(&self) -> Composition {
        let mut parts = vec![0; self.n as usize];
        for e in &self.entries {
            parts[(e.row - 1) as usize] += e.mult;
        }
        Composition { parts }
    }

    pub fn col_vector(&self) -> Composition {
        let n = self.n as i64;
        let mut parts = vec![0; self.n as usize];
        for e in &self.entries {
            parts[(e.col - 1).rem_euclid(n) as usize] += e.mult;
        }
        Composition { parts }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|e| e.row == e.col)
    }

    /// Entry-wise transpose, re-reduced to representative rows.
    pub fn transpose(&self) -> Self {
        let acc = self
            .entries
            .iter()
            .map(|e| (reduce_index(self.n, e.col, e.row), e.mult))
            .collect();
        Self::from_reduced(self.n, acc)
    }

    /// Adds signed multiples of unit matrices; `None` if an entry would go
    /// negative.
    pub fn add_signed(&self, deltas: &[(i64, i64, i64)]) -> Option<Self> {
        let mut acc: BTreeMap<(i64, i64), i64> = self.entries.iter().map(|e| ((e.row, e.col), e.mult as i64)).collect();
        for &(i, j, d) in deltas {
            *acc.entry(reduce_index(self.n, i, j)).or_insert(0) += d;
        }
        if acc.values().any(|&v| v < 0) {
            return None;
        }
        let acc = acc.into_iter().map(|(k, v)| (k, v as u32)).collect();
        Some(Self::from_reduced(self.n, acc))
    }

    /// Shifts every column by `by`.
    pub fn shift_columns(&self, by: i64) -> Self {
        Self {
            n: self.n,
            r: self.r,
            entries: self.entries.iter().map(|e| Entry { col: e.col + by, ..*e }).collect(),
        }
    }

    /// Largest `|j|` over representative entries, 0 for the empty matrix.
    pub fn col_radius(&self) -> i64 {
        self.entries.iter().map(|e| e.col.abs()).max().unwrap_or(0)
    }

    pub fn is_upper(&self) -> bool {
        self.entries.iter().all(|e| e.row <= e.col)
    }

    pub fn is_lower(&self) -> bool {
        self.entries.iter().all(|e| e.row >= e.col)
    }

    /// Degree on triangular matrices: `Σ a[i][j] (j - i)` over representative
    /// rows. Upper and lower formulas coincide on this expression.
    pub fn grade(&self) -> Result<i64> {
        if !self.is_upper() && !self.is_lower() {
            return Err(Error::NotTriangular);
        }
        Ok(self.entries.iter().map(|e| e.mult as i64 * (e.col - e.row)).sum())
    }
}

impl fmt::Display for PeriodicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if e.mult > 1 {
                write!(f, "{}", e.mult)?;
            }
            write!(f, "E[{},{}]", e.row, e.col)?;
        }
        Ok(())
    }
}
