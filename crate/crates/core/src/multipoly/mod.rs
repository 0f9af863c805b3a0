//! Sparse multivariate polynomials over the `d * N` formal variables.
//!
//! Variable `(coordinate c, particle i)` lives at exponent slot `c * N + i`
//! (coordinate-major, particle-minor). Terms are kept sorted by the
//! lexicographic order on exponent vectors, so two equal polynomials have
//! identical term lists and the leading term is the last one.

mod builders;
mod index;
mod slater;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use builders::{elementary_symmetric, source_shape, vandermonde};
pub use index::{coeff_vector, coeff_vector_registering, from_coeff_vector, MonomialIndex};
pub use slater::{antisymmetrize, slater_basis, SlaterIndex, Tuple};

const COORDINATE_LETTERS: &[u8] = b"tuvwxyzabcdefghijklmnopqrs";

/// Letter naming coordinate `c`: `t, u, v, w, ...`.
pub fn coordinate_letter(c: usize) -> char {
    COORDINATE_LETTERS
        .get(c)
        .map(|&b| b as char)
        .unwrap_or_else(|| panic!("no letter for coordinate {c}"))
}

pub fn coordinate_from_letter(letter: char) -> Option<usize> {
    COORDINATE_LETTERS.iter().position(|&b| b as char == letter)
}

pub const MAX_COORDINATES: usize = COORDINATE_LETTERS.len();

/// One formal variable: the `coordinate`-th component of particle `particle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarIndex {
    pub coordinate: usize,
    pub particle: usize,
}

impl VarIndex {
    pub fn new(coordinate: usize, particle: usize) -> Self {
        VarIndex { coordinate, particle }
    }

    pub fn slot(self, n: usize) -> usize {
        self.coordinate * n + self.particle
    }
}

/// Exponent vector over all `d * N` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 16]>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, vars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn grade(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Total degree in each coordinate separately.
    pub fn multidegree(&self, n: usize, d: usize) -> SmallVec<[usize; 8]> {
        (0..d)
            .map(|c| self.0[c * n..(c + 1) * n].iter().map(|&e| e as usize).sum())
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// The exponents of particle `i` across coordinates, as a `d`-tuple.
    pub fn particle_column(&self, n: usize, d: usize, i: usize) -> SmallVec<[u32; 8]> {
        (0..d).map(|c| self.0[c * n + i]).collect()
    }

    /// True when the particle columns are strictly decreasing. Every
    /// antisymmetric polynomial is fixed by its coefficients on these
    /// monomials, which are the leading monomials of the Slater basis.
    pub fn is_ordered_representative(&self, n: usize, d: usize) -> bool {
        (1..n).all(|i| {
            let a = (0..d).map(|c| self.0[c * n + i - 1]);
            let b = (0..d).map(|c| self.0[c * n + i]);
            a.cmp(b) == std::cmp::Ordering::Greater
        })
    }

    fn permuted(&self, n: usize, d: usize, sigma: &[usize]) -> Monomial {
        let mut out = Monomial::one(n * d);
        for c in 0..d {
            for (i, &target) in sigma.iter().enumerate() {
                out.0[c * n + target] = self.0[c * n + i];
            }
        }
        out
    }

    fn swapped(&self, n: usize, d: usize, i: usize, j: usize) -> Monomial {
        let mut out = self.clone();
        for c in 0..d {
            out.0.swap(c * n + i, c * n + j);
        }
        out
    }

    pub fn display(&self, n: usize) -> MonomialDisplay<'_> {
        MonomialDisplay { mono: self, n }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    n: usize,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}{}", coordinate_letter(slot / self.n), slot % self.n + 1)?;
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

/// Sparse polynomial with big-integer coefficients in `N` particles times
/// `d` coordinates. Never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    d: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl MPoly {
    pub fn zero(n: usize, d: usize) -> Self {
        MPoly { n, d, terms: Vec::new() }
    }

    pub fn constant(n: usize, d: usize, c: impl Into<BigInt>) -> Self {
        MPoly::from_terms(n, d, [(Monomial::one(n * d), c.into())])
    }

    pub fn one(n: usize, d: usize) -> Self {
        MPoly::constant(n, d, 1)
    }

    pub fn var(n: usize, d: usize, v: VarIndex) -> Self {
        assert!(v.coordinate < d && v.particle < n, "variable {v:?} out of range");
        let mut m = Monomial::one(n * d);
        m.0[v.slot(n)] = 1;
        MPoly::from_terms(n, d, [(m, BigInt::one())])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(n: usize, d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), n * d);
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(n, d, acc)
    }

    pub(crate) fn from_map(n: usize, d: usize, acc: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MPoly { n, d, terms }
    }

    /// Terms already sorted, merged and nonzero.
    pub(crate) fn from_sorted_unchecked(n: usize, d: usize, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { n, d, terms }
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&BigInt> {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    /// The grade shared by every term, if there is one. `None` for zero.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let g = self.terms.first()?.0.grade();
        self.terms.iter().all(|(m, _)| m.grade() == g).then_some(g)
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| m.grade()).max()
    }

    fn check_same_space(&self, other: &MPoly) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::DimensionMismatch(self.n, self.d, other.n, other.d));
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_space(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_space(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        let rhs = |c: &BigInt| if negate { -c } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Greater => {
                        out.push((mb.clone(), rhs(cb)));
                        b.next();
                    }
                    Equal => {
                        let c = ca + rhs(cb);
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((m, c)), None) => {
                    out.push((m.clone(), c.clone()));
                    a.next();
                }
                (None, Some((m, c))) => {
                    out.push((m.clone(), rhs(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        MPoly::from_sorted_unchecked(self.n, self.d, out)
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_space(other)?;
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(self.terms.len().saturating_mul(other.terms.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Ok(MPoly::from_map(self.n, self.d, acc))
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n, self.d);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        MPoly::from_sorted_unchecked(self.n, self.d, terms)
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect();
        MPoly::from_sorted_unchecked(self.n, self.d, terms)
    }

    /// Exact division by an integer; `None` if some coefficient is not a
    /// multiple of `c`.
    pub fn div_exact(&self, c: &BigInt) -> Option<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(MPoly::from_sorted_unchecked(self.n, self.d, terms))
    }

    /// Gcd of all coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits `self = sign * content * normal` with `normal` primitive and of
    /// positive leading coefficient. `None` for zero.
    pub fn normalize(&self) -> Option<(MPoly, BigInt, i8)> {
        let (_, lead) = self.leading_term()?;
        let sign: i8 = if lead.is_negative() { -1 } else { 1 };
        let content = self.content();
        let divisor = if sign < 0 { -&content } else { content.clone() };
        let normal = self.div_exact(&divisor).expect("content divides every coefficient");
        Some((normal, content, sign))
    }

    /// Relabels particles: particle `i` becomes `sigma[i]` in every coordinate.
    pub fn permute_particles(&self, sigma: &[usize]) -> Result<MPoly> {
        let mut seen = vec![false; self.n];
        if sigma.len() != self.n {
            return Err(Error::InvalidArgument(format!("permutation of length {} for N = {}", sigma.len(), self.n)));
        }
        for &s in sigma {
            if s >= self.n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(MPoly::from_terms(
            self.n,
            self.d,
            self.terms.iter().map(|(m, c)| (m.permuted(self.n, self.d, sigma), c.clone())),
        ))
    }

    /// Swap particles `i` and `j`.
    pub fn transpose(&self, i: usize, j: usize) -> MPoly {
        MPoly::from_terms(
            self.n,
            self.d,
            self.terms.iter().map(|(m, c)| (m.swapped(self.n, self.d, i, j), c.clone())),
        )
    }

    /// True iff every adjacent transposition negates the polynomial.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(m, c)| {
                let image = m.swapped(self.n, self.d, i, i + 1);
                self.coeff(&image).is_some_and(|other| other == &-c)
            })
        })
    }

    /// True iff every adjacent transposition fixes the polynomial.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(m, c)| {
                let image = m.swapped(self.n, self.d, i, i + 1);
                self.coeff(&image).is_some_and(|other| other == c)
            })
        })
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> MPoly {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect();
        MPoly::from_sorted_unchecked(self.n, self.d, terms)
    }
}

impl fmt::Display for MPoly {
    /// Canonical text: terms from the leading one down, `+3·t1^2 u2 -t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if c.is_negative() { "-" } else { "+" })?;
            let mag = c.abs();
            let constant = m.grade() == 0;
            if constant {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.display(self.n))?;
            } else {
                write!(f, "{mag}·{}", m.display(self.n))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[N={}, d={}]({self})", self.n, self.d)
    }
}
