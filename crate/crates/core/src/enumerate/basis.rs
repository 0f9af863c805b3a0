use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::span::{span_rows, GenMonomial};
use crate::error::{Error, Result};
use crate::exactla::{SparseIntMatrix, SparseVec};
use crate::multipoly::{coeff_vector_registering, MPoly, MonomialIndex};

/// A polynomial in the elementary symmetric generators.
pub type SymPoly = BTreeMap<GenMonomial, BigInt>;

/// Coordinates of an antisymmetric polynomial over the shapes:
/// `denominator * psi = sum_i components[i] * shapes[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    pub denominator: BigInt,
    pub components: Vec<SymPoly>,
}

impl ModuleVector {
    pub fn zero(len: usize) -> Self {
        ModuleVector { denominator: BigInt::from(1), components: vec![SymPoly::new(); len] }
    }

    /// Indices of the nonzero components.
    pub fn support(&self) -> Vec<usize> {
        self.components.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(i, _)| i).collect()
    }
}

/// Solves `psi = sum_i Phi_i * shapes[i]` for symmetric `Phi_i`.
///
/// `bound` is the highest grade at which the shapes are known to generate
/// everything.
pub fn express_in_basis(psi: &MPoly, shapes: &[MPoly], bound: usize) -> Result<ModuleVector> {
    let (n, d) = (psi.particles(), psi.dimension());
    if psi.is_zero() {
        return Ok(ModuleVector::zero(shapes.len()));
    }
    let grade = psi.homogeneous_grade().ok_or(Error::NotHomogeneous)?;
    if grade > bound {
        return Err(Error::OutOfRange { grade, bound });
    }
    if !psi.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    for s in shapes {
        if s.particles() != n || s.dimension() != d {
            return Err(Error::DimensionMismatch(n, d, s.particles(), s.dimension()));
        }
    }

    let rows = span_rows(n, d, shapes, &[grade]).pop().unwrap_or_default();
    let mut index = MonomialIndex::new();
    let target = coeff_vector_registering(&psi.filter_terms(|m| m.is_ordered_representative(n, d)), &mut index);
    let vectors: Vec<SparseVec> = rows.iter().map(|r| coeff_vector_registering(&r.poly, &mut index)).collect();

    // each row carries a unit tag recording which product it came from
    let k = index.len();
    let r = rows.len();
    let mut matrix = SparseIntMatrix::new(k + r + 1).with_pivot_bound(k);
    for (i, v) in vectors.into_iter().enumerate() {
        let mut entries = v.into_entries();
        entries.push((k + i, BigInt::from(1)));
        matrix.try_extend(SparseVec::from_entries(entries))?;
    }
    let mut entries = target.into_entries();
    entries.push((k + r, BigInt::from(1)));
    let reduced = matrix.reduce(&SparseVec::from_entries(entries))?;

    // reduced = scale * target - sum_j x_j * row_j
    let v = reduced.vector();
    if v.entries().iter().any(|(c, _)| *c < k) {
        return Err(Error::NotInSpan { grade });
    }
    let mut scale = v.get(k + r).cloned().ok_or_else(|| Error::Internal("lost target tag".into()))?;
    let mut coeffs: Vec<(usize, BigInt)> =
        v.entries().iter().filter(|(c, _)| *c >= k && *c < k + r).map(|(c, x)| (c - k, -x)).collect();
    if scale.is_negative() {
        scale = -scale;
        coeffs.iter_mut().for_each(|(_, x)| *x = -&*x);
    }
    let g = coeffs.iter().fold(scale.clone(), |g, (_, x)| g.gcd(x));
    let mut out = ModuleVector { denominator: &scale / &g, components: vec![SymPoly::new(); shapes.len()] };
    for (j, x) in coeffs {
        let row = &rows[j];
        let x = x / &g;
        if !x.is_zero() {
            *out.components[row.shape].entry(row.gen.clone()).or_default() += x;
        }
    }
    Ok(out)
}

/// `sum_i components[i] * shapes[i]`, divided by the denominator.
pub fn assemble(vector: &ModuleVector, shapes: &[MPoly]) -> Result<MPoly> {
    let Some(first) = shapes.first() else {
        return Err(Error::InvalidArgument("no shapes to assemble from".into()));
    };
    let (n, d) = (first.particles(), first.dimension());
    if vector.components.len() != shapes.len() {
        return Err(Error::InvalidArgument(format!(
            "{} components for {} shapes",
            vector.components.len(),
            shapes.len()
        )));
    }
    let mut acc = MPoly::zero(n, d);
    for (phi, shape) in vector.components.iter().zip(shapes) {
        for (gen, c) in phi {
            let term = gen.expand(n, d).scale(c).mul(shape)?;
            acc = acc.add(&term)?;
        }
    }
    acc.div_exact(&vector.denominator)
        .ok_or_else(|| Error::Internal(format!("sum is not divisible by {}", vector.denominator)))
}
