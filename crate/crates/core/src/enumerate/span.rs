//! Explicit module spans: rows `m(e) * Psi` for monomials `m(e)` in the
//! elementary symmetric generators of every coordinate.
//!
//! Rows are antisymmetric, so each is stored by its coefficients on the
//! ordered-representative monomials only (strictly decreasing particle
//! columns); this restriction is injective on antisymmetric polynomials and
//! leaves every rank unchanged.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::coinvariant::CoinvariantReducer;
use crate::error::{Error, Result};
use crate::exactla::{SparseIntMatrix, SparseVec};
use crate::multipoly::{coeff_vector_registering, coordinate_letter, elementary_symmetric, MPoly, MonomialIndex};
use crate::qseries::{degree_d, shape_poly, state_count_series, Statistics};

/// Exponents of the generators `e_j` of coordinate `c`, stored at slot
/// `c * N + (j - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GenMonomial(pub SmallVec<[u32; 16]>);

impl GenMonomial {
    pub fn one(n: usize, d: usize) -> Self {
        GenMonomial(SmallVec::from_elem(0, n * d))
    }

    /// Grade of the expanded product.
    pub fn weight(&self, n: usize) -> usize {
        self.0.iter().enumerate().map(|(slot, &e)| (slot % n + 1) * e as usize).sum()
    }

    /// Multiplies out the generators.
    pub fn expand(&self, n: usize, d: usize) -> MPoly {
        let mut acc = MPoly::one(n, d);
        for (slot, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let gen = elementary_symmetric(slot / n, slot % n + 1, n, d);
            for _ in 0..e {
                acc = acc.mul(&gen).expect("same space");
            }
        }
        acc
    }

    pub fn display(&self, n: usize) -> GenDisplay<'_> {
        GenDisplay { gen: self, n }
    }
}

pub struct GenDisplay<'a> {
    gen: &'a GenMonomial,
    n: usize,
}

impl fmt::Display for GenDisplay<'_> {
    /// `e1[t]^2 e3[u]`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, &e) in self.gen.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "e{}[{}]", slot % self.n + 1, coordinate_letter(slot / self.n))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// One row of a module span: `gen * shapes[shape]`, restricted to ordered
/// representatives.
#[derive(Debug, Clone)]
pub struct SpanRow {
    pub shape: usize,
    pub gen: GenMonomial,
    pub poly: MPoly,
}

/// All rows `m(e) * Psi` with grade in `grades`, grouped by grade and in a
/// deterministic order (shape index, then generator depth-first order).
pub(crate) fn span_rows(n: usize, d: usize, shapes: &[MPoly], grades: &[usize]) -> Vec<Vec<SpanRow>> {
    let Some(&max_grade) = grades.iter().max() else {
        return Vec::new();
    };
    let generators: Vec<(usize, MPoly)> = (0..n * d)
        .map(|slot| (slot % n + 1, elementary_symmetric(slot / n, slot % n + 1, n, d)))
        .collect();
    let per_shape: Vec<Vec<(usize, SpanRow)>> = shapes
        .par_iter()
        .enumerate()
        .map(|(idx, psi)| {
            let mut out = Vec::new();
            let Some(h) = psi.homogeneous_grade() else {
                return out;
            };
            if h > max_grade {
                return out;
            }
            let mut gen = GenMonomial::one(n, d);
            dfs(n, d, idx, psi.clone(), h, 0, &mut gen, &generators, grades, max_grade, &mut out);
            out
        })
        .collect();
    let mut grouped: Vec<Vec<SpanRow>> = vec![Vec::new(); grades.len()];
    for rows in per_shape {
        for (slot, row) in rows {
            grouped[slot].push(row);
        }
    }
    grouped
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    n: usize,
    d: usize,
    shape: usize,
    poly: MPoly,
    grade: usize,
    start: usize,
    gen: &mut GenMonomial,
    generators: &[(usize, MPoly)],
    grades: &[usize],
    max_grade: usize,
    out: &mut Vec<(usize, SpanRow)>,
) {
    if let Some(slot) = grades.iter().position(|&g| g == grade) {
        let restricted = poly.filter_terms(|m| m.is_ordered_representative(n, d));
        out.push((slot, SpanRow { shape, gen: gen.clone(), poly: restricted }));
    }
    for (k, (weight, e)) in generators.iter().enumerate().skip(start) {
        if grade + weight > max_grade {
            continue;
        }
        let child = poly.mul(e).expect("same space");
        gen.0[k] += 1;
        dfs(n, d, shape, child, grade + weight, k, gen, generators, grades, max_grade, out);
        gen.0[k] -= 1;
    }
}

/// Rows of `m(e) * Psi` at one grade, over lazily registered columns.
#[derive(Debug, Clone)]
pub struct ModuleSpan {
    pub grade: usize,
    pub matrix: SparseIntMatrix,
    pub index: MonomialIndex,
    pub labels: Vec<(usize, GenMonomial)>,
}

impl ModuleSpan {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn from_rows(grade: usize, rows: Vec<SpanRow>) -> Self {
        let mut index = MonomialIndex::new();
        let mut matrix = SparseIntMatrix::unbounded();
        let mut labels = Vec::with_capacity(rows.len());
        for row in rows {
            let v = coeff_vector_registering(&row.poly, &mut index);
            matrix.push_row(v).expect("unbounded column space");
            labels.push((row.shape, row.gen));
        }
        ModuleSpan { grade, matrix, index, labels }
    }
}

/// The span at grade `g` of `m(e) * Psi` over the given shapes, with
/// `deg m(e) + grade(Psi) = g`. Shapes above `g` contribute nothing.
pub fn module_span_matrix(g: usize, shapes: &[MPoly], n: usize, d: usize) -> ModuleSpan {
    let rows = span_rows(n, d, shapes, &[g]).pop().unwrap_or_default();
    ModuleSpan::from_rows(g, rows)
}

/// Outcome of the completeness check at one grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeCheck {
    pub grade: usize,
    /// Number of antisymmetric states at this grade.
    pub states: usize,
    /// Shapes of this grade, and how many the shape polynomial asks for.
    pub shapes: usize,
    pub expected_shapes: usize,
    /// Rank of the shapes' images in the coinvariant quotient.
    pub quotient_rank: usize,
    /// Rank of the explicit module span, when it was small enough to build.
    pub explicit_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub grades: Vec<GradeCheck>,
    /// Rank of all shapes in the coinvariant quotient; `N!^(d-1)` means they
    /// generate the whole antisymmetric module.
    pub quotient_rank: usize,
}

impl CompletenessReport {
    /// Highest grade whose explicit span was built, if any.
    pub fn explicit_bound(&self) -> Option<usize> {
        self.grades.iter().filter(|g| g.explicit_rank.is_some()).map(|g| g.grade).max()
    }
}

/// Checks that the shapes freely generate the antisymmetric polynomials.
///
/// Two routes are used. The quotient route reduces every shape modulo the
/// symmetric generators and requires the images to have rank `N!^(d-1)`,
/// with the right count per grade; by graded Nakayama this proves that the
/// shapes generate everything. The explicit route builds the span of
/// `m(e) * Psi` at every grade with at most `explicit_limit` states and
/// compares its rank with the state count.
pub fn verify_completeness(n: usize, d: usize, shapes: &[MPoly], explicit_limit: usize) -> Result<CompletenessReport> {
    for s in shapes {
        if s.homogeneous_grade().is_none() {
            return Err(Error::NotHomogeneous);
        }
        if !s.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
    }
    let top = degree_d(d, n);
    let states = state_count_series(n, d, top);
    let poly = shape_poly(n, d, Statistics::Fermion);
    let reducer = CoinvariantReducer::new(n, d);
    let images: Vec<SparseVec> = shapes.par_iter().map(|s| reducer.normal_form(s)).collect();

    let mut total = SparseIntMatrix::new(reducer.quotient_dimension());
    let mut grades = Vec::with_capacity(top + 1);
    for g in 0..=top {
        let mut m = SparseIntMatrix::new(reducer.quotient_dimension());
        let mut count = 0;
        for (s, img) in shapes.iter().zip(&images) {
            if s.homogeneous_grade() == Some(g) {
                count += 1;
                m.try_extend(img.clone())?;
                total.try_extend(img.clone())?;
            }
        }
        grades.push(GradeCheck {
            grade: g,
            states: to_usize(states.coeff(g).expect("within truncation")),
            shapes: count,
            expected_shapes: to_usize(&poly.coeff(g)),
            quotient_rank: m.rank(),
            explicit_rank: None,
        });
    }

    let explicit: Vec<usize> = grades.iter().filter(|c| c.states <= explicit_limit).map(|c| c.grade).collect();
    let rows = span_rows(n, d, shapes, &explicit);
    let ranks: Vec<usize> = rows
        .into_par_iter()
        .zip(explicit.par_iter())
        .map(|(rows, &g)| ModuleSpan::from_rows(g, rows).rank())
        .collect();
    for (&g, rank) in explicit.iter().zip(ranks) {
        grades[g].explicit_rank = Some(rank);
    }

    for c in &grades {
        if c.quotient_rank != c.expected_shapes {
            return Err(Error::Incomplete { grade: c.grade, rank: c.quotient_rank, expected: c.expected_shapes });
        }
        if let Some(rank) = c.explicit_rank {
            if rank != c.states {
                return Err(Error::Incomplete { grade: c.grade, rank, expected: c.states });
            }
        }
    }
    Ok(CompletenessReport { grades, quotient_rank: total.rank() })
}

fn to_usize(v: &BigInt) -> usize {
    v.to_usize().expect("count fits in usize")
}
