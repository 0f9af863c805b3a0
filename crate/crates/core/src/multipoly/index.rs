use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::exactla::SparseVec;

/// Column registry: monomial <-> dense column number, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct MonomialIndex {
    columns: FxHashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.columns.get(m).copied()
    }

    pub fn register(&mut self, m: &Monomial) -> usize {
        if let Some(&col) = self.columns.get(m) {
            return col;
        }
        let col = self.monomials.len();
        self.columns.insert(m.clone(), col);
        self.monomials.push(m.clone());
        col
    }

    pub fn monomial(&self, col: usize) -> Option<&Monomial> {
        self.monomials.get(col)
    }
}

/// Coefficients of `p` as a sparse vector in the index's column order.
pub fn coeff_vector(p: &MPoly, index: &MonomialIndex) -> Result<SparseVec> {
    let entries = p
        .terms()
        .iter()
        .map(|(m, c)| {
            index
                .get(m)
                .map(|col| (col, c.clone()))
                .ok_or_else(|| Error::UnindexedMonomial(m.display(p.particles()).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_entries(entries))
}

/// Like [`coeff_vector`], adding unseen monomials as new columns.
pub fn coeff_vector_registering(p: &MPoly, index: &mut MonomialIndex) -> SparseVec {
    SparseVec::from_entries(p.terms().iter().map(|(m, c)| (index.register(m), c.clone())).collect())
}

/// Inverse of [`coeff_vector`].
pub fn from_coeff_vector(v: &SparseVec, index: &MonomialIndex, n: usize, d: usize) -> Result<MPoly> {
    let terms = v
        .entries()
        .iter()
        .map(|(col, c)| {
            index
                .monomial(*col)
                .cloned()
                .map(|m| (m, BigInt::clone(c)))
                .ok_or(Error::ColumnSpaceMismatch { column: *col, columns: index.len() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MPoly::from_terms(n, d, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::VarIndex;
    use proptest::prelude::*;

    #[test]
    fn zero_is_empty_vector() {
        let v = coeff_vector(&MPoly::zero(2, 1), &MonomialIndex::new()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn difference_vector() {
        let t1 = MPoly::var(2, 1, VarIndex::new(0, 0));
        let t2 = MPoly::var(2, 1, VarIndex::new(0, 1));
        let mut index = MonomialIndex::new();
        index.register(&t1.terms()[0].0);
        index.register(&t2.terms()[0].0);
        let v = coeff_vector(&t1.sub(&t2).unwrap(), &index).unwrap();
        assert_eq!(v.entries(), &[(0, BigInt::from(1)), (1, BigInt::from(-1))]);
    }

    #[test]
    fn unindexed_monomial_is_an_error() {
        let t1 = MPoly::var(2, 1, VarIndex::new(0, 0));
        let err = coeff_vector(&t1, &MonomialIndex::new()).unwrap_err();
        assert_eq!(err, Error::UnindexedMonomial("t1".into()));
    }

    proptest! {
        #[test]
        fn round_trip(terms in proptest::collection::vec((proptest::collection::vec(0u32..4, 6), -20i64..20), 0..12)) {
            let p = MPoly::from_terms(3, 2, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), BigInt::from(c))));
            let mut index = MonomialIndex::new();
            let v = coeff_vector_registering(&p, &mut index);
            prop_assert_eq!(from_coeff_vector(&v, &index, 3, 2).unwrap(), p);
        }
    }
}
