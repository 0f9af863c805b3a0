//! Normal forms modulo the ideal generated by the elementary symmetric
//! polynomials of every coordinate.
//!
//! For one coordinate the ideal `(e_1, ..., e_N)` has the lex Groebner basis
//! `h_{i+1}(x_i, ..., x_{N-1})`, `i = 0..N`, whose leading monomials are
//! `x_i^(i+1)`. The standard monomials are the Artin monomials with
//! `a_i <= i`; there are `N!` of them and none above degree `N(N-1)/2`.
//! Coordinates use disjoint variables, so the quotient of the full ring is
//! the tensor product and a monomial reduces coordinate by coordinate.
//!
//! An antisymmetric polynomial has zero normal form exactly when it lies in
//! the symmetric-generator span of lower-grade antisymmetric polynomials,
//! which makes the normal form a complete test for "new shape".

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::exactla::SparseVec;
use crate::multipoly::{MPoly, Monomial};

type Exps = SmallVec<[u32; 8]>;
type Reduction = Vec<(u32, BigInt)>;

/// Precomputed one-coordinate reductions plus the tensor-product assembly.
#[derive(Debug, Clone)]
pub struct CoinvariantReducer {
    n: usize,
    d: usize,
    top_degree: usize,
    artin_count: u64,
    table: FxHashMap<Exps, Reduction>,
}

impl CoinvariantReducer {
    pub fn new(n: usize, d: usize) -> Self {
        let top_degree = n * n.saturating_sub(1) / 2;
        let artin_count = (1..=n as u64).product::<u64>();
        let tails = groebner_tails(n);
        let mut table = FxHashMap::default();
        let mut cur: Exps = SmallVec::from_elem(0, n);
        let mut all = Vec::new();
        enumerate_exps(&mut cur, 0, top_degree as u32, &mut all);
        for a in all {
            reduce_memo(&a, &tails, &mut table);
        }
        CoinvariantReducer { n, d, top_degree, artin_count, table }
    }

    /// Number of Artin monomials, `N!`.
    pub fn artin_count(&self) -> u64 {
        self.artin_count
    }

    /// Dimension of the full quotient, `N!^d`; columns of [`Self::normal_form`]
    /// lie in `0..quotient_dimension`.
    pub fn quotient_dimension(&self) -> usize {
        (self.artin_count as usize).pow(self.d as u32)
    }

    /// Normal form of a single-coordinate monomial, as `(Artin index, coeff)`.
    pub fn reduce_coordinate(&self, exps: &[u32]) -> &[(u32, BigInt)] {
        debug_assert_eq!(exps.len(), self.n);
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if deg > self.top_degree {
            return &[];
        }
        &self.table[exps]
    }

    /// Coefficients of the normal form of `p` on the tensor Artin basis.
    pub fn normal_form(&self, p: &MPoly) -> SparseVec {
        let (n, d) = (self.n, self.d);
        assert_eq!((p.particles(), p.dimension()), (n, d), "reducer built for another space");
        // key: (index over reduced coordinates, exponents still to reduce)
        let mut layer: FxHashMap<(u64, Monomial), BigInt> = FxHashMap::default();
        for (m, c) in p.terms() {
            *layer.entry((0, m.clone())).or_default() += c;
        }
        for c in 0..d {
            let mut next: FxHashMap<(u64, Monomial), BigInt> = FxHashMap::default();
            for ((prefix, m), coeff) in layer {
                if coeff.is_zero() {
                    continue;
                }
                let part = &m.exponents()[c * n..(c + 1) * n];
                let reduced = self.reduce_coordinate(part);
                if reduced.is_empty() {
                    continue;
                }
                let mut rest = m.clone();
                rest.exponents_mut()[c * n..(c + 1) * n].fill(0);
                for (idx, k) in reduced {
                    let key = (prefix * self.artin_count + *idx as u64, rest.clone());
                    *next.entry(key).or_default() += &coeff * k;
                }
            }
            layer = next;
        }
        SparseVec::from_entries(layer.into_iter().map(|((idx, _), v)| (idx as usize, v)).collect())
    }
}

/// Artin index `sum_i a_i * i!` of a standard monomial.
fn artin_index(a: &[u32]) -> u32 {
    let mut idx = 0u32;
    let mut weight = 1u32;
    for (i, &e) in a.iter().enumerate() {
        if i > 0 {
            weight *= i as u32;
        }
        idx += e * weight;
    }
    idx
}

/// For each `i`, the monomials of `h_{i+1}(x_i..x_{N-1})` other than the
/// leading `x_i^(i+1)`, as full-length exponent vectors.
fn groebner_tails(n: usize) -> Vec<Vec<Exps>> {
    (0..n)
        .map(|i| {
            let k = (i + 1) as u32;
            let mut out = Vec::new();
            let mut cur: Exps = SmallVec::from_elem(0, n);
            homogeneous(&mut cur, i, k, &mut out);
            out.retain(|e| e[i] != k);
            out
        })
        .collect()
}

fn homogeneous(cur: &mut Exps, pos: usize, left: u32, out: &mut Vec<Exps>) {
    let n = cur.len();
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        homogeneous(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

fn enumerate_exps(cur: &mut Exps, pos: usize, budget: u32, out: &mut Vec<Exps>) {
    if pos == cur.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..=budget {
        cur[pos] = e;
        enumerate_exps(cur, pos + 1, budget - e, out);
    }
    cur[pos] = 0;
}

fn reduce_memo(a: &Exps, tails: &[Vec<Exps>], memo: &mut FxHashMap<Exps, Reduction>) -> Reduction {
    if let Some(r) = memo.get(a) {
        return r.clone();
    }
    let result = match a.iter().enumerate().position(|(i, &e)| e as usize > i) {
        None => vec![(artin_index(a), BigInt::one())],
        Some(i) => {
            // x_i^(i+1) = -(other terms of h_{i+1}(x_i..x_{N-1})) in the quotient
            let mut acc: FxHashMap<u32, BigInt> = FxHashMap::default();
            let mut base = a.clone();
            base[i] -= (i + 1) as u32;
            for tail in &tails[i] {
                let next: Exps = base.iter().zip(tail.iter()).map(|(x, y)| x + y).collect();
                for (idx, c) in reduce_memo(&next, tails, memo) {
                    *acc.entry(idx).or_default() -= c;
                }
            }
            let mut r: Reduction = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            r.sort_unstable_by_key(|(i, _)| *i);
            r
        }
    };
    memo.insert(a.clone(), result.clone());
    result
}
