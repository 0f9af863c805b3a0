//! Fraction-free incremental rank over the integers.
//!
//! [`SparseIntMatrix`] keeps a row echelon form built one row at a time.
//! Every stored echelon row has zeros in the pivot columns of all rows
//! stored before it, so a candidate is reduced by walking the rows whose
//! pivots it touches in insertion order. Eliminations use the integer
//! combination `a*v - c*row` divided by its gcd, never a fraction.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Sparse integer vector: `(column, value)` sorted by column, no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sorts, merges repeated columns and drops zeros.
    pub fn from_entries(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_unstable_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (col, v) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == col => *acc += v,
                _ => out.push((col, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(values: &[T]) -> Self {
        Self::from_entries(values.iter().cloned().map(Into::into).enumerate().collect())
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, BigInt)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, col: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn max_column(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn make_primitive(&mut self) {
        let g = self.content();
        if !g.is_zero() && !g.is_one() {
            for (_, v) in &mut self.entries {
                *v /= &g;
            }
        }
    }

    /// `a*self - b*other`.
    fn combine(&self, a: &BigInt, other: &SparseVec, b: &BigInt) -> SparseVec {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            let ord = match (x.get(i), y.get(j)) {
                (Some((ci, _)), Some((cj, _))) => ci.cmp(cj),
                (Some(_), None) => Less,
                _ => Greater,
            };
            match ord {
                Less => {
                    out.push((x[i].0, a * &x[i].1));
                    i += 1;
                }
                Greater => {
                    out.push((y[j].0, -(b * &y[j].1)));
                    j += 1;
                }
                Equal => {
                    let v = a * &x[i].1 - b * &y[j].1;
                    if !v.is_zero() {
                        out.push((x[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseVec { entries: out }
    }
}

/// Outcome of [`SparseIntMatrix::try_extend`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Extended,
    InSpan,
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    row: SparseVec,
}

/// A candidate partially reduced against the first `upto` echelon rows.
#[derive(Debug, Clone)]
pub struct Reduced {
    vec: SparseVec,
    upto: usize,
}

impl Reduced {
    pub fn vector(&self) -> &SparseVec {
        &self.vec
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }
}

/// Rows over a shared column space, plus the echelon state used for exact
/// rank and span-membership decisions.
#[derive(Debug, Clone)]
pub struct SparseIntMatrix {
    columns: usize,
    pivot_bound: usize,
    rows: Vec<SparseVec>,
    echelon: Vec<EchelonRow>,
    pivot_row: FxHashMap<usize, usize>,
}

impl SparseIntMatrix {
    /// Empty matrix over columns `0..columns`.
    pub fn new(columns: usize) -> Self {
        SparseIntMatrix {
            columns,
            pivot_bound: usize::MAX,
            rows: Vec::new(),
            echelon: Vec::new(),
            pivot_row: FxHashMap::default(),
        }
    }

    /// Column space that grows with whatever columns are observed.
    pub fn unbounded() -> Self {
        Self::new(usize::MAX)
    }

    /// Columns at or beyond `bound` ride along but are never chosen as
    /// pivots; rank is then the rank of the leading block.
    pub fn with_pivot_bound(mut self, bound: usize) -> Self {
        self.pivot_bound = bound;
        self
    }

    pub fn from_rows(columns: usize, rows: impl IntoIterator<Item = SparseVec>) -> Result<Self> {
        let mut m = Self::new(columns);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    fn check_columns(&self, v: &SparseVec) -> Result<()> {
        match v.max_column() {
            Some(col) if col >= self.columns => Err(Error::ColumnSpaceMismatch { column: col, columns: self.columns }),
            _ => Ok(()),
        }
    }

    /// Reduces `v` against the current echelon rows without changing the
    /// matrix. The result may be finished later with [`Self::commit`], even
    /// after more rows were added.
    pub fn reduce(&self, v: &SparseVec) -> Result<Reduced> {
        self.check_columns(v)?;
        Ok(self.reduce_from(Reduced { vec: v.clone(), upto: 0 }))
    }

    fn reduce_from(&self, mut r: Reduced) -> Reduced {
        let end = self.echelon.len();
        if r.upto >= end || r.vec.is_zero() {
            r.upto = end;
            return r;
        }
        let lo = r.upto;
        let mut heap: BinaryHeap<Reverse<usize>> = r
            .vec
            .entries
            .iter()
            .filter_map(|(c, _)| self.pivot_row.get(c).copied())
            .filter(|&i| i >= lo && i < end)
            .map(Reverse)
            .collect();
        let mut last = None;
        while let Some(Reverse(i)) = heap.pop() {
            if last == Some(i) {
                continue;
            }
            last = Some(i);
            let er = &self.echelon[i];
            let Some(c) = r.vec.get(er.pivot).cloned() else {
                continue;
            };
            let a = er.row.get(er.pivot).expect("pivot entry present");
            let g = a.gcd(&c);
            let mut next = r.vec.combine(&(a / &g), &er.row, &(&c / &g));
            next.make_primitive();
            // entries introduced by this row may hit later pivots
            for (col, _) in &er.row.entries {
                if let Some(&j) = self.pivot_row.get(col) {
                    if j > i && j < end {
                        heap.push(Reverse(j));
                    }
                }
            }
            r.vec = next;
            if r.vec.is_zero() {
                break;
            }
        }
        r.upto = end;
        r
    }

    /// Finishes a reduction and stores it as a new echelon row if nonzero in
    /// the pivot-eligible columns; `original` is recorded only in that case.
    fn insert(&mut self, r: Reduced, original: Option<SparseVec>) -> Extension {
        let r = self.reduce_from(r);
        let pivot = r
            .vec
            .entries
            .iter()
            .filter(|(c, _)| *c < self.pivot_bound)
            .min_by(|(ca, va), (cb, vb)| va.abs().cmp(&vb.abs()).then(ca.cmp(cb)))
            .map(|(c, _)| *c);
        let Some(pivot) = pivot else {
            return Extension::InSpan;
        };
        if let Some(row) = original {
            self.rows.push(row);
        }
        self.pivot_row.insert(pivot, self.echelon.len());
        self.echelon.push(EchelonRow { pivot, row: r.vec });
        Extension::Extended
    }

    /// Adds `v` iff it is independent of the current rows over the rationals.
    pub fn try_extend(&mut self, v: SparseVec) -> Result<Extension> {
        let r = self.reduce(&v)?;
        Ok(self.insert(r, Some(v)))
    }

    /// Completes a [`Reduced`] computed from an earlier snapshot. Equivalent
    /// to `try_extend` of the original vector.
    pub fn commit(&mut self, r: Reduced, original: SparseVec) -> Extension {
        self.insert(r, Some(original))
    }

    /// Appends a row unconditionally; the rank grows only if it is new.
    pub fn push_row(&mut self, v: SparseVec) -> Result<Extension> {
        let r = self.reduce(&v)?;
        self.rows.push(v);
        Ok(self.insert(r, None))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        let r = self.reduce(v)?;
        Ok(r.vec.entries.iter().all(|(c, _)| *c >= self.pivot_bound))
    }
}

/// Exact rank of a list of rows.
pub fn rank_of(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut m = SparseIntMatrix::unbounded();
    for r in rows {
        m.push_row(r).expect("unbounded column space");
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(values: &[i64]) -> SparseVec {
        SparseVec::from_dense(values)
    }

    #[test]
    fn empty_plus_nonzero_extends() {
        let mut m = SparseIntMatrix::new(3);
        assert_eq!(m.try_extend(v(&[0, 2, 0])).unwrap(), Extension::Extended);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn zero_vector_is_in_span() {
        let mut m = SparseIntMatrix::new(3);
        assert_eq!(m.try_extend(SparseVec::zero()).unwrap(), Extension::InSpan);
        m.try_extend(v(&[1, 1, 1])).unwrap();
        assert_eq!(m.try_extend(SparseVec::zero()).unwrap(), Extension::InSpan);
        assert_eq!(m.rows().len(), 1);
    }

    #[test]
    fn full_rank_absorbs() {
        let mut m = SparseIntMatrix::from_rows(2, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(m.try_extend(v(&[3, -7])).unwrap(), Extension::InSpan);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rows().len(), 2);
    }

    #[test]
    fn rank_examples() {
        let id: Vec<_> = (0..5).map(|i| SparseVec::from_entries(vec![(i, BigInt::from(1))])).collect();
        assert_eq!(rank_of(id), 5);
        assert_eq!(rank_of([v(&[2, 3]), v(&[2, 3])]), 1);
        assert_eq!(rank_of([v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]), 2);
    }

    #[test]
    fn column_space_mismatch() {
        let mut m = SparseIntMatrix::new(2);
        let err = m.try_extend(v(&[0, 0, 1])).unwrap_err();
        assert_eq!(err, Error::ColumnSpaceMismatch { column: 2, columns: 2 });
    }

    #[test]
    fn snapshot_reduction_then_commit() {
        let mut m = SparseIntMatrix::new(3);
        m.try_extend(v(&[1, 1, 0])).unwrap();
        let early = m.reduce(&v(&[2, 1, -1])).unwrap();
        m.try_extend(v(&[0, 1, 1])).unwrap();
        // [2,1,-1] = 2*[1,1,0] - [0,1,1]
        assert_eq!(m.commit(early, v(&[2, 1, -1])), Extension::InSpan);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn pivot_bound_keeps_tags() {
        // rows carry tag columns 2 and 3; target (3, 5 | 0 0)
        let mut m = SparseIntMatrix::new(5).with_pivot_bound(2);
        m.try_extend(v(&[1, 0, 1, 0, 0])).unwrap();
        m.try_extend(v(&[1, 1, 0, 1, 0])).unwrap();
        let r = m.reduce(&v(&[3, 5, 0, 0, 1])).unwrap();
        let out = r.vector();
        assert!(out.entries().iter().all(|(c, _)| *c >= 2));
        // s*target = c0*row0 + c1*row1 with tags giving -c
        let s = out.get(4).unwrap().clone();
        let c0 = -out.get(2).cloned().unwrap_or_default();
        let c1 = -out.get(3).cloned().unwrap_or_default();
        assert_eq!(&s * 3, &c0 + &c1);
        assert_eq!(&s * 5, c1);
    }

    #[test]
    fn intermediate_growth_stays_integral() {
        // Hilbert-like integer matrix, full rank
        let rows: Vec<_> = (1..=6).map(|i| v(&(1..=6).map(|j| 720 / (i + j)).collect::<Vec<i64>>())).collect();
        assert_eq!(rank_of(rows), 6);
    }

    proptest! {
        #[test]
        fn rank_is_order_invariant(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 0..8), seed in 0usize..100) {
            let vs: Vec<_> = rows.iter().map(|r| v(r)).collect();
            let mut shuffled = vs.clone();
            let len = shuffled.len();
            if len > 1 {
                shuffled.rotate_left(seed % len);
                shuffled.swap(0, len - 1);
            }
            prop_assert_eq!(rank_of(vs), rank_of(shuffled));
        }

        #[test]
        fn rank_equals_successful_extensions(rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), 0..8)) {
            let mut m = SparseIntMatrix::new(4);
            let mut extended = 0;
            for r in &rows {
                if m.try_extend(v(r)).unwrap() == Extension::Extended {
                    extended += 1;
                }
            }
            prop_assert_eq!(m.rank(), extended);
            prop_assert_eq!(m.rows().len(), extended);
        }

        #[test]
        fn membership_of_combinations(a in -5i64..5, b in -5i64..5) {
            let r0 = v(&[1, 2, 0, 3]);
            let r1 = v(&[0, 1, 4, -1]);
            let m = SparseIntMatrix::from_rows(4, [r0, r1]).unwrap();
            let combo = v(&[a, 2 * a + b, 4 * b, 3 * a - b]);
            prop_assert!(m.contains(&combo).unwrap());
            prop_assert!(!m.contains(&v(&[0, 0, 0, 1])).unwrap());
        }
    }
}
