//! Exact roots of unity and matrices whose entries are scaled roots of unity.
//!
//! An [`ExactPhase`] stores the number of turns as a reduced fraction in
//! `[0, 1)`, so multiplication is addition of fractions modulo one and
//! equality is structural. Half-integer powers of `q = exp(2πi/d)` never need
//! a square root: `q^(k/2)` is simply `k/(2d)` turns.
//!
//! [`PhaseMatrix`] holds a square array of optional phases together with a
//! symbolic amplitude (`1` or `1/√dim`). Products of monomial matrices (one
//! phase per row and column) stay exact; anything else falls back to dense
//! complex floating point.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, MulAssign};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

/// A root of unity `exp(2πi · turns)`.
///
/// `turns` is kept as `num/den` with `0 <= num < den` and `gcd(num, den) = 1`,
/// which makes the derived `Eq` and `Hash` exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPhase {
    num: i64,
    den: i64,
}

impl ExactPhase {
    pub const ONE: ExactPhase = ExactPhase { num: 0, den: 1 };
    pub const MINUS_ONE: ExactPhase = ExactPhase { num: 1, den: 2 };
    pub const I: ExactPhase = ExactPhase { num: 1, den: 4 };
    pub const MINUS_I: ExactPhase = ExactPhase { num: 3, den: 4 };

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        let n = num.rem_euclid(den);
        let g = n.gcd(&den);
        let (n, d) = (n / g, den / g);
        ExactPhase {
            num: i64::try_from(n).expect("phase numerator overflow"),
            den: i64::try_from(d).expect("phase denominator overflow"),
        }
    }

    /// `exp(2πi · num/den)`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Domain(format!(
                "phase denominator must be positive, got {den}"
            )));
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    /// `exp(2πi · t)` for a rational number of turns.
    pub fn from_turns(t: Rational64) -> Self {
        Self::from_i128(*t.numer() as i128, *t.denom() as i128)
    }

    /// `q^exponent` with `q = exp(2πi/d)`.
    pub fn root_of_unity(d: usize, exponent: Rational64) -> Self {
        Self::from_i128(
            *exponent.numer() as i128,
            *exponent.denom() as i128 * d as i128,
        )
    }

    /// `q^k` with `q = exp(2πi/d)` and integer `k`.
    pub fn q_pow(d: usize, k: i64) -> Self {
        Self::from_i128(k as i128, d as i128)
    }

    /// `exp(iπ · x)`.
    pub fn half_turns(x: Rational64) -> Self {
        Self::from_i128(*x.numer() as i128, 2 * *x.denom() as i128)
    }

    pub fn turns(&self) -> Rational64 {
        Rational64::new_raw(self.num, self.den)
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// Complex conjugate, which for a unit phase is also the inverse.
    pub fn conj(&self) -> Self {
        Self::from_i128(-(self.num as i128), self.den as i128)
    }

    pub fn negated(&self) -> Self {
        *self * Self::MINUS_ONE
    }

    /// Exponent `e` such that `self = q^e` for `q = exp(2πi/d)`, reduced to `[0, d)`.
    pub fn exponent_of_q(&self, d: usize) -> Rational64 {
        self.turns() * Rational64::from_integer(d as i64)
    }

    pub fn to_complex(&self) -> Complex64 {
        // Quarter turns are returned without rounding so that exact zeros survive.
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            (n, d) => Complex64::from_polar(1.0, std::f64::consts::TAU * n as f64 / d as f64),
        }
    }
}

impl Default for ExactPhase {
    fn default() -> Self {
        Self::ONE
    }
}

impl fmt::Debug for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPhase({}/{})", self.num, self.den)
    }
}

impl fmt::Display for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Mul for ExactPhase {
    type Output = ExactPhase;

    fn mul(self, rhs: ExactPhase) -> ExactPhase {
        let den = self.den as i128 * rhs.den as i128 / (self.den as i128).gcd(&(rhs.den as i128));
        let num = self.num as i128 * (den / self.den as i128) + rhs.num as i128 * (den / rhs.den as i128);
        Self::from_i128(num, den)
    }
}

impl MulAssign for ExactPhase {
    fn mul_assign(&mut self, rhs: ExactPhase) {
        *self = *self * rhs;
    }
}

impl std::iter::Product for ExactPhase {
    fn product<I: Iterator<Item = ExactPhase>>(iter: I) -> Self {
        iter.fold(ExactPhase::ONE, |a, b| a * b)
    }
}

/// `exp(2πi · num/den)` in canonical form.
pub fn phase_from_fraction(num: i64, den: i64) -> Result<ExactPhase> {
    ExactPhase::new(num, den)
}

/// A real parameter that is either an exact rational or a float.
///
/// Rational values keep every construction on the exact phase path; floats
/// route to dense complex matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Real {
    Rational(Rational64),
    Float(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            Real::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match self {
            Real::Rational(r) => Some(*r),
            Real::Float(_) => None,
        }
    }
}

impl From<Rational64> for Real {
    fn from(r: Rational64) -> Self {
        Real::Rational(r)
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::Rational(Rational64::from_integer(n))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{r}"),
            Real::Float(x) => write!(f, "{x}"),
        }
    }
}

/// A formal sum of roots of unity with an exact zero test.
///
/// The sum is written as an integer polynomial in `ζ = exp(2πi/N)`, `N` the
/// lcm of the term denominators, and reduced modulo the `N`-th cyclotomic
/// polynomial. The powers `1, ζ, …, ζ^(φ(N)-1)` are linearly independent over
/// the rationals, so the remainder vanishes iff the sum is zero and is constant
/// iff the sum is an integer.
#[derive(Debug, Clone, Default)]
pub struct PhaseSum {
    terms: Vec<ExactPhase>,
}

impl PhaseSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, p: ExactPhase) {
        self.terms.push(p);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().map(ExactPhase::to_complex).sum()
    }

    fn reduced(&self) -> Vec<i64> {
        let n = self
            .terms
            .iter()
            .fold(1i64, |acc, p| acc.lcm(&p.denom())) as usize;
        let mut poly = vec![0i64; n];
        for p in &self.terms {
            poly[(p.numer() * (n as i64 / p.denom())) as usize] += 1;
        }
        let rem = poly_rem(&poly, &cyclotomic(n));
        trim(rem)
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().is_empty()
    }

    /// The exact integer value of the sum, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        match self.reduced().as_slice() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        }
    }
}

impl FromIterator<ExactPhase> for PhaseSum {
    fn from_iter<I: IntoIterator<Item = ExactPhase>>(iter: I) -> Self {
        PhaseSum {
            terms: iter.into_iter().collect(),
        }
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

// Remainder of `a` modulo the monic polynomial `m` (coefficients low to high).
fn poly_rem(a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, c) in m.iter().enumerate() {
            r[shift + i] -= lead * c;
        }
        r = trim(r);
    }
    r
}

// Exact quotient of `a` by the monic polynomial `m`.
fn poly_div(a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let mut q = vec![0i64; r.len().saturating_sub(dm)];
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        q[shift] = lead;
        for (i, c) in m.iter().enumerate() {
            r[shift + i] -= lead * c;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact cyclotomic division");
    q
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub(crate) fn cyclotomic(n: usize) -> Vec<i64> {
    let mut table: HashMap<usize, Vec<i64>> = HashMap::new();
    for e in (1..=n).filter(|e| n.is_multiple_of(*e)) {
        let mut p = vec![0i64; e + 1];
        p[0] = -1;
        p[e] = 1;
        for f in (1..e).filter(|f| e % f == 0) {
            p = poly_div(&p, &table[&f]);
        }
        table.insert(e, p);
    }
    table.remove(&n).unwrap()
}

/// Symbolic amplitude shared by every nonzero entry of a [`PhaseMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Amplitude {
    One,
    InvSqrtDim,
}

impl Amplitude {
    pub fn value(self, dim: usize) -> f64 {
        match self {
            Amplitude::One => 1.0,
            Amplitude::InvSqrtDim => 1.0 / (dim as f64).sqrt(),
        }
    }

    fn times(self, other: Amplitude) -> Option<Amplitude> {
        match (self, other) {
            (Amplitude::One, a) | (a, Amplitude::One) => Some(a),
            (Amplitude::InvSqrtDim, Amplitude::InvSqrtDim) => None,
        }
    }
}

/// Square matrix with entries that are either exactly zero or
/// `amplitude · phase`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseMatrix {
    dim: usize,
    amplitude: Amplitude,
    entries: Vec<Option<ExactPhase>>,
}

/// Result of multiplying two phase matrices.
#[derive(Debug, Clone)]
pub enum MatrixProduct {
    Exact(PhaseMatrix),
    Complex(ComplexMatrix),
}

impl MatrixProduct {
    pub fn into_complex(self) -> ComplexMatrix {
        match self {
            MatrixProduct::Exact(m) => m.to_complex(),
            MatrixProduct::Complex(m) => m,
        }
    }

    pub fn exact(self) -> Option<PhaseMatrix> {
        match self {
            MatrixProduct::Exact(m) => Some(m),
            MatrixProduct::Complex(_) => None,
        }
    }
}

impl PhaseMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, amplitude: Amplitude, entries: Vec<Option<ExactPhase>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(PhaseMatrix {
            dim,
            amplitude,
            entries,
        })
    }

    pub fn from_fn(
        dim: usize,
        amplitude: Amplitude,
        mut f: impl FnMut(usize, usize) -> Option<ExactPhase>,
    ) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        PhaseMatrix {
            dim,
            amplitude,
            entries,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, Amplitude::One, |r, c| (r == c).then_some(ExactPhase::ONE))
    }

    pub fn diagonal(phases: &[ExactPhase]) -> Self {
        Self::from_fn(phases.len(), Amplitude::One, |r, c| (r == c).then(|| phases[r]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitude(&self) -> Amplitude {
        self.amplitude
    }

    pub fn get(&self, row: usize, col: usize) -> Option<ExactPhase> {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Option<ExactPhase>] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Option<ExactPhase>] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<Option<ExactPhase>> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    /// True when every row and every column holds exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let mut col_count = vec![0usize; self.dim];
        for r in 0..self.dim {
            let mut row_count = 0;
            for (c, e) in self.row(r).iter().enumerate() {
                if e.is_some() {
                    row_count += 1;
                    col_count[c] += 1;
                }
            }
            if row_count != 1 {
                return false;
            }
        }
        col_count.iter().all(|&n| n == 1)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, self.amplitude, |r, c| self.get(c, r).map(|p| p.conj()))
    }

    pub fn scaled(&self, phase: ExactPhase) -> Self {
        PhaseMatrix {
            dim: self.dim,
            amplitude: self.amplitude,
            entries: self.entries.iter().map(|e| e.map(|p| p * phase)).collect(),
        }
    }

    /// Row `n` of the result is row `dim - 1 - n` of `self`.
    pub fn reverse_rows(&self) -> Self {
        Self::from_fn(self.dim, self.amplitude, |r, c| self.get(self.dim - 1 - r, c))
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let scale = self.amplitude.value(self.dim);
        ComplexMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.get(r, c)
                .map_or(Complex64::new(0.0, 0.0), |p| p.to_complex() * scale)
        })
    }

    /// Matrix product, exact whenever every result entry has at most one term
    /// and the amplitudes compose to `1` or `1/√dim`.
    pub fn mul(&self, rhs: &PhaseMatrix) -> Result<MatrixProduct> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let n = self.dim;
        if let Some(amplitude) = self.amplitude.times(rhs.amplitude) {
            let mut entries = Vec::with_capacity(n * n);
            let mut monomial = true;
            'outer: for r in 0..n {
                for c in 0..n {
                    let mut term = None;
                    for k in 0..n {
                        if let (Some(a), Some(b)) = (self.get(r, k), rhs.get(k, c)) {
                            if term.is_some() {
                                monomial = false;
                                break 'outer;
                            }
                            term = Some(a * b);
                        }
                    }
                    entries.push(term);
                }
            }
            if monomial {
                return Ok(MatrixProduct::Exact(PhaseMatrix {
                    dim: n,
                    amplitude,
                    entries,
                }));
            }
        }
        Ok(MatrixProduct::Complex(self.to_complex() * rhs.to_complex()))
    }

    /// Like [`PhaseMatrix::mul`] but fails instead of leaving the exact path.
    pub fn mul_exact(&self, rhs: &PhaseMatrix) -> Result<PhaseMatrix> {
        self.mul(rhs)?.exact().ok_or(Error::NotMonomial)
    }

    /// Integer power of a unit-amplitude matrix, kept exact.
    pub fn pow(&self, n: u32) -> Result<PhaseMatrix> {
        let mut acc = PhaseMatrix::identity(self.dim);
        for _ in 0..n {
            acc = acc.mul_exact(self)?;
        }
        Ok(acc)
    }

    /// Diagonal of the matrix as an exact sum, ignoring the amplitude.
    pub fn trace_sum(&self) -> PhaseSum {
        (0..self.dim).filter_map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.trace_sum().to_complex() * self.amplitude.value(self.dim)
    }

    /// Rounds a complex matrix back onto the exact path.
    ///
    /// Every entry must be within `tol` of zero or of `amplitude · exp(2πi k/den)`
    /// for some integer `k`.
    pub fn snap(m: &ComplexMatrix, amplitude: Amplitude, den: i64, tol: f64) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let dim = m.nrows();
        let scale = amplitude.value(dim);
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = m[(r, c)];
                if z.norm() < tol {
                    entries.push(None);
                    continue;
                }
                let k = (z.arg() / std::f64::consts::TAU * den as f64).round() as i64;
                let p = ExactPhase::new(k, den).ok()?;
                if (p.to_complex() * scale - z).norm() > tol {
                    return None;
                }
                entries.push(Some(p));
            }
        }
        Some(PhaseMatrix {
            dim,
            amplitude,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn fraction_examples() {
        assert_eq!(phase_from_fraction(0, 1).unwrap(), ExactPhase::ONE);
        assert_eq!(phase_from_fraction(1, 2).unwrap(), ExactPhase::MINUS_ONE);
        // 7/6 mod 1 = 1/6
        let p = phase_from_fraction(7, 6).unwrap();
        assert_eq!((p.numer(), p.denom()), (1, 6));
        let p = phase_from_fraction(-1, 3).unwrap();
        assert_eq!((p.numer(), p.denom()), (2, 3));
        assert!(phase_from_fraction(1, 0).is_err());
        assert!(phase_from_fraction(1, -3).is_err());
    }

    #[test]
    fn mul_examples() {
        let third = ExactPhase::new(1, 3).unwrap();
        let two_thirds = ExactPhase::new(2, 3).unwrap();
        assert_eq!(third * two_thirds, ExactPhase::ONE);
        assert_eq!(ExactPhase::I * ExactPhase::I, ExactPhase::MINUS_ONE);
        // 1/6 + 1/2 = 2/3
        let sixth = ExactPhase::new(1, 6).unwrap();
        assert_eq!(sixth * ExactPhase::MINUS_ONE, two_thirds);
    }

    #[test]
    fn pow_examples() {
        for d in 1..20 {
            assert!(ExactPhase::q_pow(d, 1).pow(d as i64).is_one());
        }
        assert_eq!(ExactPhase::new(1, 3).unwrap().pow(-1), ExactPhase::new(2, 3).unwrap());
        // 7 mod 5 = 2
        assert_eq!(ExactPhase::new(1, 5).unwrap().pow(7), ExactPhase::new(2, 5).unwrap());
    }

    #[test]
    fn to_complex_examples() {
        assert_eq!(ExactPhase::ONE.to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(ExactPhase::I.to_complex(), Complex64::new(0.0, 1.0));
        let z = ExactPhase::new(1, 3).unwrap().to_complex();
        assert!((z - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn half_exponents_widen_denominator() {
        // q^(1/2) for d = 3 is a sixth of a turn
        let p = ExactPhase::root_of_unity(3, r(1, 2));
        assert_eq!((p.numer(), p.denom()), (1, 6));
        assert_eq!(ExactPhase::half_turns(r(1, 1)), ExactPhase::MINUS_ONE);
        assert_eq!(ExactPhase::half_turns(r(1, 2)), ExactPhase::I);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phase_sums() {
        let full: PhaseSum = (0..5).map(|k| ExactPhase::q_pow(5, k)).collect();
        assert!(full.is_zero());
        let mut s: PhaseSum = (0..6).map(|k| ExactPhase::q_pow(6, 2 * k)).collect();
        assert!(s.is_zero());
        s.push(ExactPhase::ONE);
        assert_eq!(s.as_integer(), Some(1));
        // 1 + ω + ω² = 0 but 1 + ω is not an integer
        let partial: PhaseSum = (0..2).map(|k| ExactPhase::q_pow(3, k)).collect();
        assert_eq!(partial.as_integer(), None);
        // i + (-i) + 1 + 1
        let t: PhaseSum = [ExactPhase::I, ExactPhase::MINUS_I, ExactPhase::ONE, ExactPhase::ONE]
            .into_iter()
            .collect();
        assert_eq!(t.as_integer(), Some(2));
        assert_eq!(PhaseSum::new().as_integer(), Some(0));
    }

    #[test]
    fn monomial_products_stay_exact() {
        let d = 3;
        let x = PhaseMatrix::from_fn(d, Amplitude::One, |r, c| {
            (c == (r + 1) % d).then_some(ExactPhase::ONE)
        });
        let prod = x.mul(&x.adjoint()).unwrap().exact().unwrap();
        assert_eq!(prod, PhaseMatrix::identity(d));
        assert!(x.is_monomial());
    }

    #[test]
    fn dense_products_fall_back() {
        let f = PhaseMatrix::from_fn(2, Amplitude::InvSqrtDim, |r, c| {
            Some(ExactPhase::q_pow(2, (r * c) as i64))
        });
        assert!(matches!(f.mul(&f).unwrap(), MatrixProduct::Complex(_)));
        assert!(f.mul_exact(&f).is_err());
        let g = PhaseMatrix::identity(3);
        assert!(matches!(
            f.mul(&g),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn snap_roundtrip() {
        let m = PhaseMatrix::from_fn(4, Amplitude::InvSqrtDim, |r, c| {
            (r != c).then(|| ExactPhase::q_pow(8, (r * 3 + c) as i64))
        });
        let back = PhaseMatrix::snap(&m.to_complex(), Amplitude::InvSqrtDim, 8, 1e-12).unwrap();
        assert_eq!(back, m);
    }
}
