use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::element::AlgebraElement;
use crate::error::Result;
use crate::matrix::PeriodicMatrix;

use super::multiply_basis_oracle;

/// Fill-once cache of basis products `e_A · e_B`.
///
/// Concurrent fills of the same key are allowed; they compute the same value.
#[derive(Default)]
pub struct StructureTable {
    products: RwLock<HashMap<(PeriodicMatrix, PeriodicMatrix), AlgebraElement>>,
}

static GLOBAL: LazyLock<StructureTable> = LazyLock::new(StructureTable::default);

pub fn global_table() -> &'static StructureTable {
    &GLOBAL
}

impl StructureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.products.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, a: &PeriodicMatrix, b: &PeriodicMatrix) -> Option<AlgebraElement> {
        self.products.read().unwrap().get(&(a.clone(), b.clone())).cloned()
    }

    pub fn basis_product(&self, a: &PeriodicMatrix, b: &PeriodicMatrix) -> Result<AlgebraElement> {
        if a.col_vector() != b.row_vector() {
            return multiply_basis_oracle(a, b);
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.products.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let value = multiply_basis_oracle(a, b)?;
        self.products
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        x.check_same(y)?;
        let mut out = AlgebraElement::zero(x.n(), x.r());
        for (a, ca) in x.terms() {
            let col = a.col_vector();
            for (b, cb) in y.terms() {
                if b.row_vector() != col {
                    continue;
                }
                let p = self.basis_product(a, b)?;
                out.add_scaled(&p, &(ca * cb));
            }
        }
        Ok(out)
    }
}
