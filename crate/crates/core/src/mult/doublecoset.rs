use std::collections::BTreeSet;

use num::BigRational;

use crate::element::AlgebraElement;
use crate::error::{invalid, Result};
use crate::weyl::{act, pair_to_matrix, stabilizer, IndexTuple, WeylElement};

fn fixes(w: &WeylElement, t: &IndexTuple) -> bool {
    act(t, w).map(|x| &x == t).unwrap_or(false)
}

/// `ξ_{i,j} ξ_{j,l} = Σ_δ [S_{i,lδ} : S_{i,j,lδ}] ξ_{i,lδ}`, with `δ` over
/// representatives of `S_{j,l} \ S_j / S_{i,j}` and `S_x` the stabilizer of
/// `x`. Both operands must share the middle tuple `j`.
pub fn doublecoset_product(xi1: (&IndexTuple, &IndexTuple), xi2: (&IndexTuple, &IndexTuple)) -> Result<AlgebraElement> {
    let (i, j) = xi1;
    let (j2, l) = xi2;
    if j != j2 {
        return Err(invalid(format!("middle tuples differ: {j} vs {j2}")));
    }
    pair_to_matrix(i, j)?;
    pair_to_matrix(j, l)?;

    let stab_j = stabilizer(j);
    let left: Vec<&WeylElement> = stab_j.iter().filter(|w| fixes(w, l)).collect();
    let right: Vec<&WeylElement> = stab_j.iter().filter(|w| fixes(w, i)).collect();

    let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
    let mut out = AlgebraElement::zero(i.n(), i.len() as u32);
    for delta in &stab_j {
        if seen.contains(delta) {
            continue;
        }
        for a in &left {
            for b in &right {
                seen.insert(a.compose(delta).compose(b));
            }
        }
        let q = act(l, delta)?;
        let stab_iq: Vec<WeylElement> = stabilizer(i).into_iter().filter(|w| fixes(w, &q)).collect();
        let stab_ijq = stab_iq.iter().filter(|w| fixes(w, j)).count();
        let index = (stab_iq.len() / stab_ijq) as i64;
        out.add_term(pair_to_matrix(i, &q)?, BigRational::from_integer(index.into()));
    }
    Ok(out)
}
