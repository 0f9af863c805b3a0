use num_bigint::BigInt;
use num_traits::One;

use super::{MPoly, Monomial, VarIndex};
use crate::error::{Error, Result};

/// `prod_{i<j} (x_{c,i} - x_{c,j})` in the variables of coordinate `c`.
pub fn vandermonde(c: usize, n: usize, d: usize) -> MPoly {
    let mut acc = MPoly::one(n, d);
    for i in 0..n {
        for j in i + 1..n {
            let factor = MPoly::var(n, d, VarIndex::new(c, i))
                .sub(&MPoly::var(n, d, VarIndex::new(c, j)))
                .expect("same space");
            acc = acc.mul(&factor).expect("same space");
        }
    }
    acc
}

/// The highest-grade fermion shape: one Vandermonde form per coordinate.
/// Only antisymmetric for odd `d`, so even `d` is rejected.
pub fn source_shape(n: usize, d: usize) -> Result<MPoly> {
    if d.is_multiple_of(2) {
        return Err(Error::OddDimensionRequired(d));
    }
    let mut acc = MPoly::one(n, d);
    for c in 0..d {
        acc = acc.mul(&vandermonde(c, n, d))?;
    }
    Ok(acc)
}

/// `e_j` in the `N` variables of coordinate `c`.
pub fn elementary_symmetric(c: usize, j: usize, n: usize, d: usize) -> MPoly {
    assert!(c < d, "coordinate {c} out of range for d = {d}");
    let mut terms = Vec::new();
    let mut subset: Vec<usize> = (0..j).collect();
    if j > n {
        return MPoly::zero(n, d);
    }
    loop {
        let mut m = Monomial::one(n * d);
        for &i in &subset {
            m.exponents_mut()[c * n + i] = 1;
        }
        terms.push((m, BigInt::one()));
        // next j-subset in lexicographic order
        let Some(pos) = (0..j).rev().find(|&p| subset[p] < n - j + p) else {
            break;
        };
        subset[pos] += 1;
        for q in pos + 1..j {
            subset[q] = subset[q - 1] + 1;
        }
    }
    MPoly::from_terms(n, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::degree_d;

    #[test]
    fn small_vandermondes() {
        assert_eq!(vandermonde(0, 2, 1).to_string(), "+t1 -t2");
        let v3 = vandermonde(0, 3, 1);
        assert_eq!(v3.len(), 6);
        assert_eq!(v3.homogeneous_grade(), Some(3));
        assert_eq!(vandermonde(1, 1, 3), MPoly::one(1, 3));
    }

    #[test]
    fn product_grades_add() {
        let p = vandermonde(0, 3, 3).mul(&vandermonde(1, 3, 3)).unwrap();
        assert_eq!(p.homogeneous_grade(), Some(6));
    }

    #[test]
    fn source_shape_examples() {
        let s = source_shape(3, 3).unwrap();
        assert_eq!(s.homogeneous_grade(), Some(9));
        assert!(s.is_antisymmetric());
        let s2 = source_shape(2, 3).unwrap();
        assert_eq!(s2.homogeneous_grade(), Some(3));
        assert_eq!(s2.to_string(), "+t1 u1 v1 -t1 u1 v2 -t1 u2 v1 +t1 u2 v2 -t2 u1 v1 +t2 u1 v2 +t2 u2 v1 -t2 u2 v2");
        assert_eq!(source_shape(1, 5).unwrap(), MPoly::one(1, 5));
        assert_eq!(source_shape(3, 2).unwrap_err(), Error::OddDimensionRequired(2));
    }

    #[test]
    fn source_shape_structure() {
        for n in 1..=4 {
            for d in [1, 3] {
                let s = source_shape(n, d).unwrap();
                assert!(s.is_antisymmetric(), "N={n} d={d}");
                assert_eq!(s.homogeneous_grade(), Some(degree_d(d, n)));
                // no monomial has two equal particle columns
                assert!(s.terms().iter().all(|(m, _)| {
                    let cols: Vec<_> = (0..n).map(|i| m.particle_column(n, d, i)).collect();
                    (0..n).all(|i| (i + 1..n).all(|j| cols[i] != cols[j]))
                }));
                let lead = &s.leading_term().unwrap().1;
                assert!(lead == &BigInt::one() || lead == &-BigInt::one());
            }
        }
    }

    #[test]
    fn even_dimension_product_is_symmetric() {
        let p = vandermonde(0, 3, 2).mul(&vandermonde(1, 3, 2)).unwrap();
        assert!(p.is_symmetric());
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_symmetric(0, 1, 3, 1).to_string(), "+t1 +t2 +t3");
        assert_eq!(elementary_symmetric(1, 3, 3, 2).to_string(), "+u1 u2 u3");
        assert_eq!(elementary_symmetric(0, 2, 2, 1).to_string(), "+t1 t2");
        assert_eq!(elementary_symmetric(0, 2, 4, 1).len(), 6);
    }
}
