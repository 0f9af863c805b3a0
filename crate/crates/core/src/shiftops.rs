//! Shift letters and symmetrized words.
//!
//! An up-shift of amount `m` on variable `x_{c,k}` multiplies every monomial
//! by `x_{c,k}^m`; a down-shift divides by it and drops the monomials whose
//! exponent is smaller than `m`. A [`Word`] is a product of letters, all
//! attached to the same particle; its symmetrized action sums the word over
//! every particle, so it commutes with particle permutations and maps
//! antisymmetric polynomials to antisymmetric polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::multipoly::{coordinate_from_letter, coordinate_letter, MPoly, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub coordinate: usize,
    pub direction: Direction,
    pub amount: u32,
}

impl Letter {
    pub fn up(coordinate: usize, amount: u32) -> Self {
        assert!(amount >= 1, "shift amount must be positive");
        Letter { coordinate, direction: Direction::Up, amount }
    }

    pub fn down(coordinate: usize, amount: u32) -> Self {
        assert!(amount >= 1, "shift amount must be positive");
        Letter { coordinate, direction: Direction::Down, amount }
    }

    pub fn signed_amount(&self) -> i64 {
        match self.direction {
            Direction::Up => self.amount as i64,
            Direction::Down => -(self.amount as i64),
        }
    }

    /// Action on one exponent; `None` when a down-shift annihilates it.
    fn shift(&self, e: u32) -> Option<u32> {
        match self.direction {
            Direction::Up => Some(e.checked_add(self.amount).expect("exponent overflow")),
            Direction::Down => e.checked_sub(self.amount),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Up => '+',
            Direction::Down => '-',
        };
        write!(f, "{}[{sign}{}]", coordinate_letter(self.coordinate), self.amount)
    }
}

/// Letters written left to right and applied right to left, like operator
/// composition. All letters act on the same particle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_coordinate(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.coordinate).max()
    }

    /// A lone down-shift of amount one; its symmetrized form kills every
    /// shape.
    pub fn is_unit_lowering(&self) -> bool {
        matches!(self.letters.as_slice(), [l] if l.direction == Direction::Down && l.amount == 1)
    }

    /// Image of a monomial under the word at particle `k`.
    pub fn act_on(&self, m: &Monomial, n: usize, k: usize) -> Option<Monomial> {
        let mut out = m.clone();
        let exps = out.exponents_mut();
        for l in self.letters.iter().rev() {
            let slot = l.coordinate * n + k;
            exps[slot] = l.shift(exps[slot])?;
        }
        Some(out)
    }
}

/// Sum of signed amounts: Up counts positive, Down negative.
pub fn word_net_grade(word: &Word) -> i64 {
    word.letters.iter().map(Letter::signed_amount).sum()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the compact form `v[+1]v[-2]`; the empty string is the empty
    /// word.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::WordSyntax(s.to_string());
        let mut letters = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let mut chars = rest.chars();
            let coordinate = chars.next().and_then(coordinate_from_letter).ok_or_else(bad)?;
            let body = chars.as_str().strip_prefix('[').ok_or_else(bad)?;
            let close = body.find(']').ok_or_else(bad)?;
            let (amount, tail) = (&body[..close], &body[close + 1..]);
            let direction = match amount.as_bytes().first() {
                Some(b'+') => Direction::Up,
                Some(b'-') => Direction::Down,
                _ => return Err(bad()),
            };
            let digits = &amount[1..];
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let amount: u32 = digits.parse().map_err(|_| bad())?;
            if amount == 0 {
                return Err(bad());
            }
            letters.push(Letter { coordinate, direction, amount });
            rest = tail;
        }
        Ok(Word { letters })
    }
}

/// A word summed over all particles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymWord {
    pub word: Word,
}

impl SymWord {
    pub fn new(word: Word) -> Self {
        SymWord { word }
    }

    pub fn net_grade(&self) -> i64 {
        word_net_grade(&self.word)
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl FromStr for SymWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(SymWord::new)
    }
}

/// One letter at particle `k`, linear over the terms of `p`.
pub fn apply_letter_at(letter: Letter, k: usize, p: &MPoly) -> MPoly {
    apply_word_at(&Word::new(vec![letter]), k, p)
}

/// The word at particle `k`, without symmetrization.
pub fn apply_word_at(word: &Word, k: usize, p: &MPoly) -> MPoly {
    let n = p.particles();
    assert!(k < n, "particle {k} out of range for N = {n}");
    MPoly::from_terms(
        n,
        p.dimension(),
        p.terms().iter().filter_map(|(m, c)| word.act_on(m, n, k).map(|m2| (m2, c.clone()))),
    )
}

/// `sum_k W_k p`, the word applied at every particle.
pub fn apply_symword(w: &SymWord, p: &MPoly) -> MPoly {
    let n = p.particles();
    if let Some(c) = w.word.max_coordinate() {
        assert!(c < p.dimension(), "word uses coordinate {c} beyond d = {}", p.dimension());
    }
    let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    acc.reserve(p.len());
    for (m, c) in p.terms() {
        for k in 0..n {
            if let Some(image) = w.word.act_on(m, n, k) {
                *acc.entry(image).or_default() += c;
            }
        }
    }
    MPoly::from_map(n, p.dimension(), acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{source_shape, vandermonde, VarIndex};

    const T: usize = 0;
    const U: usize = 1;
    const V: usize = 2;

    fn w(s: &str) -> SymWord {
        s.parse().unwrap()
    }

    #[test]
    fn up_down_do_not_commute() {
        let one = MPoly::one(1, 1);
        let up_then_down = apply_letter_at(Letter::down(T, 1), 0, &apply_letter_at(Letter::up(T, 1), 0, &one));
        let down_then_up = apply_letter_at(Letter::up(T, 1), 0, &apply_letter_at(Letter::down(T, 1), 0, &one));
        assert_eq!(up_then_down, one);
        assert!(down_then_up.is_zero());
    }

    #[test]
    fn column_shift_on_two_by_two_determinant() {
        // | t1^2 u1^3 v1   t2^2 u2^3 v2 |
        // | t1 u1^2        t2 u2^2      |
        let (n, d) = (2, 3);
        let var = |c, i| MPoly::var(n, d, VarIndex::new(c, i));
        let pow = |c, i, e: u32| (0..e).fold(MPoly::one(n, d), |acc, _| acc.mul(&var(c, i)).unwrap());
        let a11 = pow(T, 0, 2).mul(&pow(U, 0, 3)).unwrap().mul(&var(V, 0)).unwrap();
        let a12 = pow(T, 1, 2).mul(&pow(U, 1, 3)).unwrap().mul(&var(V, 1)).unwrap();
        let a21 = var(T, 0).mul(&pow(U, 0, 2)).unwrap();
        let a22 = var(T, 1).mul(&pow(U, 1, 2)).unwrap();
        let det = a11.mul(&a22).unwrap().sub(&a12.mul(&a21).unwrap()).unwrap();
        let shifted = apply_letter_at(Letter::down(V, 1), 0, &det);
        assert_eq!(shifted.to_string(), "+t1^2 t2 u1^3 u2^2");
    }

    #[test]
    fn insufficient_exponent_annihilates() {
        let t1 = MPoly::var(2, 1, VarIndex::new(T, 0));
        assert!(apply_letter_at(Letter::down(T, 2), 0, &t1).is_zero());
    }

    #[test]
    fn symmetrized_unit_lowering_kills_vandermonde() {
        let delta = vandermonde(T, 3, 1);
        assert!(apply_symword(&w("t[-1]"), &delta).is_zero());
    }

    #[test]
    fn caption_step_lands_at_grade_seven() {
        let s = source_shape(3, 3).unwrap();
        let out = apply_symword(&w("u[-1]t[-1]"), &s);
        assert!(!out.is_zero());
        assert!(out.is_antisymmetric());
        assert_eq!(out.homogeneous_grade(), Some(7));
    }

    #[test]
    fn zero_stays_zero() {
        assert!(apply_symword(&w("v[+1]v[-2]"), &MPoly::zero(3, 3)).is_zero());
    }

    #[test]
    fn net_grades() {
        assert_eq!(w("v[+1]v[-2]").net_grade(), -1);
        assert_eq!(w("v[-1]u[-1]t[-2]").net_grade(), -4);
        assert_eq!(SymWord::default().net_grade(), 0);
    }

    #[test]
    fn serialization_round_trip() {
        for s in ["u[-1]t[-2]", "v[+1]v[-2]", "", "w[+12]t[-3]"] {
            assert_eq!(s.parse::<Word>().unwrap().to_string(), s);
        }
        let word = Word::new(vec![Letter::down(U, 1), Letter::down(T, 2)]);
        assert_eq!(word.to_string(), "u[-1]t[-2]");
        for bad in ["u", "u[1]", "u[-0]", "T[-1]", "u[-1", "u[-x]", "u[-1]]"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }
}
