//! Closed-form products by the Chevalley-type generators `B_m`, `C_m` (on
//! either side) and by the loop generators `D_m` (on the left).

use num::BigRational;

use crate::element::AlgebraElement;
use crate::error::{invalid, Result};
use crate::matrix::{Composition, PeriodicMatrix};

use super::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `B_m`: moves mass from row (column) `h + 1` to `h`.
    Up,
    /// `C_m`: moves mass from row (column) `h` to `h + 1`.
    Down,
}

fn check_h(a: &PeriodicMatrix, h: i64) -> Result<()> {
    if h < 1 || h > a.n() as i64 {
        return Err(invalid(format!("h = {h} outside 1..={}", a.n())));
    }
    Ok(())
}

/// `(u, a[row][u])` for every nonzero entry of the integer row `row`.
fn row_support(a: &PeriodicMatrix, row: i64) -> Vec<(i64, u32)> {
    let n = a.n() as i64;
    let rep = (row - 1).rem_euclid(n) + 1;
    a.entries()
        .iter()
        .filter(|e| e.row == rep)
        .map(|e| (e.col + (row - rep), e.mult))
        .collect()
}

/// `(u, a[u][col])` for every nonzero entry of the integer column `col`.
fn col_support(a: &PeriodicMatrix, col: i64) -> Vec<(i64, u32)> {
    let n = a.n() as i64;
    a.entries()
        .iter()
        .filter(|e| (e.col - col).rem_euclid(n) == 0)
        .map(|e| (e.row + (col - e.col), e.mult))
        .collect()
}

/// All `t` with `Σ t_k = m` and `t_k <= caps[k]`.
fn bounded_compositions(caps: &[u32], m: u32) -> Vec<Vec<u32>> {
    fn go(caps: &[u32], m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&cap, rest)) = caps.split_first() else {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let room: u32 = rest.iter().sum();
        let lo = m.saturating_sub(room);
        for t in lo..=cap.min(m) {
            prefix.push(t);
            go(rest, m - t, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(caps, m, &mut Vec::new(), &mut out);
    out
}

fn factor(lambda: &Composition, deltas: &[(i64, i64, i64)]) -> Result<PeriodicMatrix> {
    PeriodicMatrix::diag(lambda)
        .add_signed(deltas)
        .ok_or_else(|| invalid("generator would have a negative entry"))
}

/// The left generator: `B_m` (up) or `C_m` (down) for `λ = row(A)`.
pub fn chevalley_left_factor(h: i64, m: u32, dir: Direction, lambda: &Composition) -> Result<PeriodicMatrix> {
    let m = m as i64;
    match dir {
        Direction::Up => factor(lambda, &[(h, h + 1, m), (h + 1, h + 1, -m)]),
        Direction::Down => factor(lambda, &[(h, h, -m), (h + 1, h, m)]),
    }
}

/// The right generator: `B_m` (up) or `C_m` (down) for `λ = col(A)`.
pub fn chevalley_right_factor(h: i64, m: u32, dir: Direction, lambda: &Composition) -> Result<PeriodicMatrix> {
    let m = m as i64;
    match dir {
        Direction::Up => factor(lambda, &[(h, h + 1, m), (h, h, -m)]),
        Direction::Down => factor(lambda, &[(h + 1, h + 1, -m), (h + 1, h, m)]),
    }
}

/// `D_m = diag(λ) - E_{h,h} + E_{h,h+mn}`.
pub fn loop_factor(h: i64, m: i64, lambda: &Composition) -> Result<PeriodicMatrix> {
    if m == 0 {
        return Err(invalid("loop generator needs m != 0"));
    }
    let n = lambda.n() as i64;
    factor(lambda, &[(h, h, -1), (h, h + m * n, 1)])
}

fn sum_over_shifts(
    a: &PeriodicMatrix,
    support: &[(i64, u32)],
    m: u32,
    coeff: impl Fn(i64, u32) -> u32,
    delta: impl Fn(i64, i64) -> [(i64, i64, i64); 2],
) -> Result<AlgebraElement> {
    let caps: Vec<u32> = support.iter().map(|&(_, c)| c).collect();
    let mut out = AlgebraElement::zero(a.n(), a.r());
    for t in bounded_compositions(&caps, m) {
        let mut c = num::BigInt::from(1);
        let mut deltas = Vec::with_capacity(2 * t.len());
        for (&(u, _), &tu) in support.iter().zip(&t) {
            if tu == 0 {
                continue;
            }
            c *= binomial(coeff(u, tu) + tu, tu);
            deltas.extend(delta(u, tu as i64));
        }
        let shifted = a
            .add_signed(&deltas)
            .ok_or_else(|| invalid("shift left the nonnegative cone"))?;
        out.add_term(shifted, BigRational::from_integer(c));
    }
    Ok(out)
}

/// `e_{B_m} · e_A` (up) or `e_{C_m} · e_A` (down) as a finite sum.
pub fn chevalley_left(h: i64, m: u32, dir: Direction, a: &PeriodicMatrix) -> Result<AlgebraElement> {
    check_h(a, h)?;
    chevalley_left_factor(h, m, dir, &a.row_vector())?;
    match dir {
        Direction::Up => sum_over_shifts(
            a,
            &row_support(a, h + 1),
            m,
            |u, _| a.get(h, u),
            |u, t| [(h, u, t), (h + 1, u, -t)],
        ),
        Direction::Down => sum_over_shifts(
            a,
            &row_support(a, h),
            m,
            |u, _| a.get(h + 1, u),
            |u, t| [(h, u, -t), (h + 1, u, t)],
        ),
    }
}

/// `e_A · e_{B_m}` (up) or `e_A · e_{C_m}` (down) as a finite sum.
pub fn chevalley_right(h: i64, m: u32, dir: Direction, a: &PeriodicMatrix) -> Result<AlgebraElement> {
    check_h(a, h)?;
    chevalley_right_factor(h, m, dir, &a.col_vector())?;
    match dir {
        Direction::Up => sum_over_shifts(
            a,
            &col_support(a, h),
            m,
            |u, _| a.get(u, h + 1),
            |u, t| [(u, h + 1, t), (u, h, -t)],
        ),
        Direction::Down => sum_over_shifts(
            a,
            &col_support(a, h + 1),
            m,
            |u, _| a.get(u, h),
            |u, t| [(u, h + 1, -t), (u, h, t)],
        ),
    }
}

/// `e_{D_m} · e_A = Σ_{u: a[h][u] >= 1} (a[h][u+mn] + 1) e_{A + E_{h,u+mn} - E_{h,u}}`.
pub fn loop_left(h: i64, m: i64, a: &PeriodicMatrix) -> Result<AlgebraElement> {
    check_h(a, h)?;
    loop_factor(h, m, &a.row_vector())?;
    let shift = m * a.n() as i64;
    let mut out = AlgebraElement::zero(a.n(), a.r());
    for (u, _) in row_support(a, h) {
        let c = a.get(h, u + shift) + 1;
        let moved = a
            .add_signed(&[(h, u + shift, 1), (h, u, -1)])
            .expect("row h has mass at u");
        out.add_term(moved, BigRational::from_integer(c.into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult::multiply_basis_oracle;

    fn m(es: &[(i64, i64, u32)]) -> PeriodicMatrix {
        PeriodicMatrix::from_entries(2, es.iter().copied()).unwrap()
    }

    fn e(es: &[(i64, i64, u32)]) -> AlgebraElement {
        AlgebraElement::basis(m(es))
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn left_down_examples() {
        let a = m(&[(1, 2, 2)]);
        assert_eq!(
            chevalley_left_factor(1, 2, Direction::Down, &a.row_vector()).unwrap(),
            m(&[(2, 1, 2)])
        );
        assert_eq!(chevalley_left(1, 2, Direction::Down, &a).unwrap(), e(&[(2, 2, 2)]));

        let a = m(&[(1, 1, 1), (1, 2, 1)]);
        assert_eq!(
            chevalley_left_factor(1, 1, Direction::Down, &a.row_vector()).unwrap(),
            m(&[(1, 1, 1), (2, 1, 1)])
        );
        assert_eq!(
            chevalley_left(1, 1, Direction::Down, &a).unwrap(),
            &e(&[(1, 2, 1), (2, 1, 1)]) + &e(&[(1, 1, 1), (2, 2, 1)])
        );
    }

    #[test]
    fn right_up_examples() {
        let a = m(&[(2, 1, 2)]);
        assert_eq!(
            chevalley_right_factor(1, 2, Direction::Up, &a.col_vector()).unwrap(),
            m(&[(1, 2, 2)])
        );
        assert_eq!(chevalley_right(1, 2, Direction::Up, &a).unwrap(), e(&[(2, 2, 2)]));

        let a = m(&[(1, 1, 1), (2, 1, 1)]);
        assert_eq!(
            chevalley_right(1, 1, Direction::Up, &a).unwrap(),
            &e(&[(1, 2, 1), (2, 1, 1)]) + &e(&[(1, 1, 1), (2, 2, 1)])
        );
    }

    #[test]
    fn zero_shift_is_identity() {
        let a = m(&[(1, 2, 1), (2, 5, 1)]);
        for dir in [Direction::Up, Direction::Down] {
            assert_eq!(chevalley_left(1, 0, dir, &a).unwrap(), AlgebraElement::basis(a.clone()));
            assert_eq!(
                chevalley_right(2, 0, dir, &a).unwrap(),
                AlgebraElement::basis(a.clone())
            );
        }
    }

    #[test]
    fn loop_examples() {
        assert_eq!(loop_left(1, 1, &m(&[(1, 1, 2)])).unwrap(), e(&[(1, 1, 1), (1, 3, 1)]));
        assert_eq!(
            loop_left(1, 1, &m(&[(1, 1, 1), (1, 3, 1)])).unwrap(),
            &e(&[(1, 3, 2)]).scale(&q(2)) + &e(&[(1, 1, 1), (1, 5, 1)])
        );
        assert_eq!(
            loop_left(1, 1, &m(&[(1, 1, 1), (1, 4, 1)])).unwrap(),
            &e(&[(1, 3, 1), (1, 4, 1)]) + &e(&[(1, 1, 1), (1, 6, 1)])
        );
        assert!(loop_left(1, 0, &m(&[(1, 1, 2)])).is_err());
        assert!(loop_left(2, 1, &m(&[(1, 1, 2)])).is_err());
    }

    #[test]
    fn formulas_match_oracle_on_known_cases() {
        let a = m(&[(1, 1, 1), (1, 3, 1)]);
        let d = loop_factor(1, 1, &a.row_vector()).unwrap();
        assert_eq!(loop_left(1, 1, &a).unwrap(), multiply_basis_oracle(&d, &a).unwrap());
        let a = m(&[(1, 2, 2)]);
        let c = chevalley_left_factor(1, 2, Direction::Down, &a.row_vector()).unwrap();
        assert_eq!(
            chevalley_left(1, 2, Direction::Down, &a).unwrap(),
            multiply_basis_oracle(&c, &a).unwrap()
        );
    }

    #[test]
    fn rejects_missing_generator() {
        // row 2 of A is empty, so B_1 = diag(λ) + E_{1,2} - E_{2,2} does not exist.
        assert!(chevalley_left(1, 1, Direction::Up, &m(&[(1, 1, 2)])).is_err());
        assert!(chevalley_left(3, 1, Direction::Up, &m(&[(1, 1, 2)])).is_err());
    }

    #[test]
    fn bounded_compositions_enumerate_exactly() {
        assert_eq!(bounded_compositions(&[2, 1], 2), vec![vec![1, 1], vec![2, 0]]);
        assert!(bounded_compositions(&[1, 1], 3).is_empty());
        assert_eq!(bounded_compositions(&[], 0), vec![Vec::<u32>::new()]);
    }
}
