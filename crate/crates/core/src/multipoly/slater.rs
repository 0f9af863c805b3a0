use num_bigint::BigInt;
use smallvec::SmallVec;

use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::qseries::shell_filling_grade;

/// Exponents of one particle across the `d` coordinates.
pub type Tuple = SmallVec<[u32; 8]>;

/// A set of `N` pairwise-distinct `d`-tuples, labeling one antisymmetrized
/// monomial. Rows are kept in strictly decreasing lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlaterIndex {
    rows: Vec<Tuple>,
}

impl SlaterIndex {
    pub fn new(mut rows: Vec<Tuple>) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("Slater rows of unequal length".into()));
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("Slater rows must be pairwise distinct".into()));
        }
        Ok(SlaterIndex { rows })
    }

    pub fn rows(&self) -> &[Tuple] {
        &self.rows
    }

    pub fn grade(&self) -> usize {
        self.rows.iter().flatten().map(|&e| e as usize).sum()
    }

    /// Particle `i` carries row `i`; this monomial has coefficient `+1` in
    /// [`antisymmetrize`] and is the only ordered representative there.
    pub fn leading_monomial(&self, d: usize) -> Monomial {
        let n = self.rows.len();
        let mut m = Monomial::one(n * d);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                m.exponents_mut()[c * n + i] = e;
            }
        }
        m
    }

    /// Reads the Slater label back from an ordered representative monomial.
    pub fn from_representative(m: &Monomial, n: usize, d: usize) -> Option<Self> {
        if !m.is_ordered_representative(n, d) {
            return None;
        }
        let rows = (0..n).map(|i| m.particle_column(n, d, i)).collect();
        Some(SlaterIndex { rows })
    }
}

/// `sum_sigma sgn(sigma) prod_i x_{sigma(i)}^{row_i}`: the formal Slater
/// determinant of the rows.
pub fn antisymmetrize(index: &SlaterIndex, d: usize) -> MPoly {
    let n = index.rows.len();
    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, 1, &mut |sigma, sign| {
        let mut m = Monomial::one(n * d);
        for (i, row) in index.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                m.exponents_mut()[c * n + sigma[i]] = e;
            }
        }
        terms.push((m, BigInt::from(sign)));
    });
    MPoly::from_terms(n, d, terms)
}

fn permutations(perm: &mut [usize], k: usize, sign: i32, visit: &mut impl FnMut(&[usize], i32)) {
    if k + 1 >= perm.len() {
        visit(perm, sign);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, if i == k { sign } else { -sign }, visit);
        perm.swap(k, i);
    }
}

/// All Slater labels of `N` particles in `d` coordinates at grade `g`, in
/// lexicographic order of their row lists, largest first.
pub fn slater_basis(n: usize, d: usize, g: usize) -> Vec<SlaterIndex> {
    let mut out = Vec::new();
    if n == 0 {
        if g == 0 {
            out.push(SlaterIndex { rows: Vec::new() });
        }
        return out;
    }
    // all d-tuples with sum <= g, decreasing
    let mut tuples = Vec::new();
    let mut cur: Tuple = SmallVec::from_elem(0, d);
    all_tuples(&mut cur, 0, g as u32, &mut tuples);
    tuples.sort_unstable_by(|a, b| b.cmp(a));
    let sums: Vec<usize> = tuples.iter().map(|t| t.iter().map(|&e| e as usize).sum()).collect();
    let floor: Vec<usize> = (0..=n).map(|k| shell_filling_grade(d, k)).collect();
    let mut chosen = Vec::with_capacity(n);
    choose(&tuples, &sums, &floor, 0, n, g, &mut chosen, &mut out);
    out
}

fn all_tuples(cur: &mut Tuple, c: usize, budget: u32, out: &mut Vec<Tuple>) {
    if c == cur.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..=budget {
        cur[c] = e;
        all_tuples(cur, c + 1, budget - e, out);
    }
    cur[c] = 0;
}

#[allow(clippy::too_many_arguments)]
fn choose(
    tuples: &[Tuple],
    sums: &[usize],
    floor: &[usize],
    start: usize,
    left: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SlaterIndex>,
) {
    if left == 0 {
        if budget == 0 {
            let rows = chosen.iter().map(|&i| tuples[i].clone()).collect();
            out.push(SlaterIndex { rows });
        }
        return;
    }
    if budget < floor[left] {
        return;
    }
    for i in start..tuples.len() {
        if tuples.len() - i < left {
            break;
        }
        if sums[i] > budget || budget - sums[i] < floor[left - 1] {
            continue;
        }
        chosen.push(i);
        choose(tuples, sums, floor, i + 1, left - 1, budget - sums[i], chosen, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::vandermonde;
    use crate::qseries::state_count_series;
    use num_traits::ToPrimitive;
    use smallvec::smallvec;

    fn idx(rows: &[&[u32]]) -> SlaterIndex {
        SlaterIndex::new(rows.iter().map(|r| Tuple::from_slice(r)).collect()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let p = antisymmetrize(&idx(&[&[0], &[1]]), 1);
        assert_eq!(p.to_string(), "+t1 -t2");
    }

    #[test]
    fn three_rows_one_dimension_is_vandermonde() {
        let p = antisymmetrize(&idx(&[&[0], &[1], &[2]]), 1);
        let v = vandermonde(0, 3, 1);
        assert!(p == v || p == v.neg());
    }

    #[test]
    fn grade_two_in_three_dimensions() {
        let s = idx(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let p = antisymmetrize(&s, 3);
        assert_eq!(p.homogeneous_grade(), Some(2));
        assert_eq!(p.len(), 6);
        assert!(p.is_antisymmetric());
        assert_eq!(p.coeff(&s.leading_monomial(3)), Some(&BigInt::from(1)));
        assert_eq!(slater_basis(3, 3, 2).len(), 3);
        assert!(slater_basis(3, 3, 2).contains(&s));
    }

    #[test]
    fn duplicate_rows_rejected() {
        assert!(SlaterIndex::new(vec![smallvec![1, 0], smallvec![1, 0]]).is_err());
    }

    #[test]
    fn empty_when_infeasible() {
        assert!(slater_basis(2, 1, 0).is_empty());
        assert_eq!(slater_basis(0, 3, 0).len(), 1);
    }

    #[test]
    fn basis_is_sorted_and_unique() {
        let b = slater_basis(3, 2, 5);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn basis_sizes_match_state_counts() {
        for (n, d) in [(1, 3), (2, 3), (3, 3), (1, 1), (2, 1), (3, 1), (4, 1)] {
            let top = crate::qseries::degree_d(d, n).max(4);
            let z = state_count_series(n, d, top);
            for g in 0..=top {
                let expected = z.coeff(g).unwrap().to_usize().unwrap();
                assert_eq!(slater_basis(n, d, g).len(), expected, "N={n} d={d} g={g}");
            }
        }
    }

    #[test]
    fn representative_round_trip() {
        for s in slater_basis(3, 2, 4) {
            let m = s.leading_monomial(2);
            assert_eq!(SlaterIndex::from_representative(&m, 3, 2), Some(s));
        }
    }
}
