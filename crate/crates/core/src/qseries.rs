//! Univariate generating functions in the grade variable `q`.
//!
//! Everything here is exact integer arithmetic; the only floating-point value
//! produced is [`shape_entropy`], taken from an exact coefficient at the end.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Particle statistics; selects the sign pattern of the shape recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistics {
    Fermion,
    Boson,
}

/// Dense polynomial in `q` with big-integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`; the last stored coefficient is
/// nonzero, so the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = QPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    /// `c * q^power`
    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        QPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^power`, zero past the degree.
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// Value at `q = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)))
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)))
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c))
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact polynomial division. A nonzero remainder is an arithmetic bug in
    /// the caller, reported as [`Error::Internal`].
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let lead = &divisor.coeffs[dd];
        let Some(nd) = self.degree() else {
            return Ok(QPoly::zero());
        };
        if nd < dd {
            return Err(Error::Internal(format!("inexact division: {self} / {divisor}")));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Internal(format!("inexact division: {self} / {divisor}")));
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal(format!("inexact division: {self} / {divisor}")));
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Divide every coefficient by `n`, failing unless all divisions are exact.
    pub fn div_exact_scalar(&self, n: &BigInt) -> Result<QPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::Internal(format!("{self} is not divisible by {n}")));
            }
            out.push(q);
        }
        Ok(QPoly::from_coeffs(out))
    }
}

impl fmt::Display for QPoly {
    /// Ascending powers: `3q^2 + 10q^3 + 6q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match power {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("q")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Power series in `q` truncated after `q^truncation`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn one(truncation: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); truncation + 1];
        coeffs[0] = BigInt::one();
        QSeries { coeffs }
    }

    pub fn from_poly(p: &QPoly, truncation: usize) -> Self {
        QSeries {
            coeffs: (0..=truncation).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^power`; `None` beyond the truncation order.
    pub fn coeff(&self, power: usize) -> Option<&BigInt> {
        self.coeffs.get(power)
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let t = self.truncation().min(other.truncation());
        let mut out = vec![BigInt::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }

    /// Multiply in place by `1 / (1 - q^k)`.
    fn mul_geometric(&mut self, k: usize) {
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] += prev;
        }
    }
}

/// `C^N_k(q) = (1-q^N)...(1-q^(N-k+1)) / (1-q^k)`, an exact polynomial of
/// degree `k(2N-k-1)/2`.
pub fn c_poly(n: usize, k: usize) -> Result<QPoly> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("C^N_k needs 1 <= k <= N, got N={n}, k={k}")));
    }
    let one_minus = |p: usize| QPoly::one().sub(&QPoly::monomial(1, p));
    let numerator = ((n - k + 1)..=n).fold(QPoly::one(), |acc, p| acc.mul(&one_minus(p)));
    numerator.div_exact(&one_minus(k))
}

type ShapeTable = HashMap<(usize, Statistics), Vec<QPoly>>;

fn shape_cache() -> &'static Mutex<ShapeTable> {
    static CACHE: OnceLock<Mutex<ShapeTable>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shape polynomial `P_d(N, q)` from the alternating recursion
/// `N P(N) = sum_k (+-1)^(k+1) C^N_k^d P(N-k)`, with `P(0) = P(1) = 1`.
///
/// Lower values are memoized per `(d, statistics)`, so successive calls
/// cost one recursion step each.
pub fn shape_poly(n: usize, d: usize, stats: Statistics) -> QPoly {
    let mut cache = shape_cache().lock().unwrap_or_else(|e| e.into_inner());
    let table = cache.entry((d, stats)).or_insert_with(|| vec![QPoly::one(), QPoly::one()]);
    while table.len() <= n {
        let m = table.len();
        let mut sum = QPoly::zero();
        for k in 1..=m {
            let term = c_poly(m, k)
                .expect("C^N_k is an exact polynomial")
                .pow(d as u32)
                .mul(&table[m - k]);
            let negative = stats == Statistics::Fermion && k % 2 == 0;
            sum = if negative { sum.sub(&term) } else { sum.add(&term) };
        }
        let next = sum
            .div_exact_scalar(&BigInt::from(m))
            .expect("shape recursion divides exactly by N");
        table.push(next);
    }
    table[n].clone()
}

/// `D(d, N) = d N (N-1) / 2`, the grade of the source shape.
pub fn degree_d(d: usize, n: usize) -> usize {
    d * n * n.saturating_sub(1) / 2
}

/// Lowest power present in the fermion shape polynomial.
pub fn ground_grade(d: usize, n: usize) -> usize {
    shape_poly(n, d, Statistics::Fermion)
        .low_degree()
        .expect("fermion shape polynomial is nonzero")
}

/// Minimal total grade of `N` pairwise-distinct `d`-tuples of nonnegative
/// integers: fill shells of equal tuple sum from the bottom.
pub fn shell_filling_grade(d: usize, n: usize) -> usize {
    let mut remaining = n;
    let mut total = 0;
    let mut shell = 0;
    while remaining > 0 {
        // number of d-tuples with sum `shell`
        let size = binomial(shell + d - 1, d - 1);
        let take = remaining.min(size);
        total += take * shell;
        remaining -= take;
        shell += 1;
    }
    total
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k.min(n));
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Z_E(N, q) = prod_{k=1}^N 1/(1-q^k)`, truncated.
pub fn ze_series(n: usize, truncation: usize) -> QSeries {
    let mut s = QSeries::one(truncation);
    for k in 1..=n {
        s.mul_geometric(k);
    }
    s
}

/// `Z_d(N, q) = Z_E^d P_d(N, q)` for fermions, truncated. The coefficient at
/// `q^g` counts `N`-fermion states of grade `g`.
pub fn state_count_series(n: usize, d: usize, truncation: usize) -> QSeries {
    let mut s = QSeries::from_poly(&shape_poly(n, d, Statistics::Fermion), truncation);
    for _ in 0..d {
        for k in 1..=n {
            s.mul_geometric(k);
        }
    }
    s
}

/// Odd `d`: the fermion coefficients over `q^G..q^D` equal the boson
/// coefficients over `q^(D-G)..q^0`.
pub fn mirror_check(n: usize, d: usize) -> Result<bool> {
    if d.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("mirror check needs odd d, got {d}")));
    }
    let fermion = shape_poly(n, d, Statistics::Fermion);
    let boson = shape_poly(n, d, Statistics::Boson);
    let top = degree_d(d, n);
    let low = ground_grade(d, n);
    if fermion.degree() != Some(top) || boson.degree() != Some(top - low) {
        return Ok(false);
    }
    Ok((0..=top - low).all(|i| fermion.coeff(low + i) == boson.coeff(top - low - i)))
}

/// Even `d`: the fermion coefficients over `q^G..q^(D-G)` read the same in
/// both directions, with nothing outside that window.
pub fn palindrome_check(n: usize, d: usize) -> Result<bool> {
    if d % 2 == 1 {
        return Err(Error::InvalidArgument(format!("palindrome check needs even d, got {d}")));
    }
    let fermion = shape_poly(n, d, Statistics::Fermion);
    let top = degree_d(d, n);
    let low = ground_grade(d, n);
    if low > top - low || fermion.degree() != Some(top - low) {
        return Ok(false);
    }
    let span = top - 2 * low;
    Ok((0..=span).all(|i| fermion.coeff(low + i) == fermion.coeff(low + span - i)))
}

/// Natural log of the fermion shape-polynomial coefficient at `grade`.
pub fn shape_entropy(n: usize, d: usize, grade: usize) -> Result<f64> {
    let c = shape_poly(n, d, Statistics::Fermion).coeff(grade);
    if !c.is_positive() {
        return Err(Error::NoShapeAtGrade { n, d, grade });
    }
    Ok(c.to_f64().unwrap_or(f64::INFINITY).ln())
}
