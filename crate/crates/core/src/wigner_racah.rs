//! Wigner 3-jm symbols, Clebsch-Gordan coefficients in the `{j², j_z}` and
//! `{j², v_00}` schemes, and the `f̄` symbol.
//!
//! Angular momenta are [`HalfInt`] values stored as doubled integers.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use once_cell::sync::Lazy;

use crate::linalg::ComplexMatrix;
use crate::phase::ExactPhase;
use crate::{Error, Result};

/// A half-integer `n/2`, stored as `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_doubled(two: i32) -> Self {
        HalfInt(two)
    }

    pub fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `2j + 1`.
    pub fn multiplicity(self) -> usize {
        (self.0 + 1) as usize
    }

    /// `-j, -j+1, …, j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        (0..=self.0.max(-1)).map(move |k| HalfInt(-self.0 + 2 * k))
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1`, `3/2` or `-1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidHalfInteger(format!("cannot parse {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, "2")) => n.trim().parse::<i32>().map(HalfInt).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s.parse::<i32>().map(HalfInt::from_int).map_err(|_| bad()),
        }
    }
}

const MAX_FACTORIAL: usize = 400;

static LOG_FACTORIAL: Lazy<Vec<f64>> = Lazy::new(|| {
    let mut t = vec![0.0; MAX_FACTORIAL + 1];
    for n in 1..=MAX_FACTORIAL {
        t[n] = t[n - 1] + (n as f64).ln();
    }
    t
});

fn ln_fact(two_n: i32) -> f64 {
    LOG_FACTORIAL[(two_n / 2) as usize]
}

fn check_jm(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.0 < 0 {
        return Err(Error::InvalidHalfInteger(format!("negative j = {j}")));
    }
    if m.0.abs() > j.0 || (j.0 - m.0) % 2 != 0 {
        return Err(Error::InvalidHalfInteger(format!("m = {m} is not a projection of j = {j}")));
    }
    if j.0 as usize > MAX_FACTORIAL {
        return Err(Error::InvalidHalfInteger(format!("j = {j} too large")));
    }
    Ok(())
}

/// True when `j3` is reachable by coupling `j1` and `j2`.
pub fn triangle(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    j3.0 >= (j1.0 - j2.0).abs() && j3.0 <= j1.0 + j2.0 && (j1.0 + j2.0 + j3.0) % 2 == 0
}

/// Wigner 3-jm symbol from the Racah sum.
pub fn wigner_3jm(j: [HalfInt; 3], m: [HalfInt; 3]) -> Result<f64> {
    for k in 0..3 {
        check_jm(j[k], m[k])?;
    }
    let [j1, j2, j3] = j.map(HalfInt::doubled);
    let [m1, m2, m3] = m.map(HalfInt::doubled);
    if m1 + m2 + m3 != 0 || !triangle(j[0], j[1], j[2]) {
        return Ok(0.0);
    }
    let ln_delta = ln_fact(j1 + j2 - j3) + ln_fact(j1 - j2 + j3) + ln_fact(-j1 + j2 + j3) - ln_fact(j1 + j2 + j3 + 2);
    let ln_norm = ln_fact(j1 + m1) + ln_fact(j1 - m1) + ln_fact(j2 + m2) + ln_fact(j2 - m2) + ln_fact(j3 + m3)
        + ln_fact(j3 - m3);
    // doubled bounds for the summation index t
    let t_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let t_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    let mut t = t_min;
    while t <= t_max {
        let ln_den = ln_fact(t)
            + ln_fact(j3 - j2 + t + m1)
            + ln_fact(j3 - j1 + t - m2)
            + ln_fact(j1 + j2 - j3 - t)
            + ln_fact(j1 - t - m1)
            + ln_fact(j2 - t + m2);
        let sign = if (t / 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (0.5 * (ln_delta + ln_norm) - ln_den).exp();
        t += 2;
    }
    let phase_exp = (j1 - j2 - m3) / 2;
    let sign = if phase_exp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * sum)
}

/// `⟨j1 m1 j2 m2 | J M⟩ = (-1)^(j1-j2+M) √(2J+1) (j1 j2 J; m1 m2 -M)`.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<f64> {
    let w = wigner_3jm([j1, j2, j], [m1, m2, -m])?;
    let e = (j1.0 - j2.0 + m.0) / 2;
    let sign = if e.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * ((j.0 + 1) as f64).sqrt() * w)
}

fn check_alpha(j: HalfInt, alpha: usize) -> Result<()> {
    if j.0 < 0 || alpha >= j.multiplicity() {
        return Err(Error::InvalidHalfInteger(format!("α = {alpha} out of range for j = {j}")));
    }
    Ok(())
}

// q_j^(sign · (j+m) α)
fn weight(j: HalfInt, m: HalfInt, alpha: usize, sign: i64) -> ExactPhase {
    let jpm = ((j.0 + m.0) / 2) as i64;
    ExactPhase::q_pow(j.multiplicity(), sign * jpm * alpha as i64)
}

fn norm3(j: [HalfInt; 3]) -> f64 {
    1.0 / ((j[0].multiplicity() * j[1].multiplicity() * j[2].multiplicity()) as f64).sqrt()
}

/// Clebsch-Gordan coefficient `(j1 j2 α1 α2 | j3 α3)` in the `{j², v_00}` scheme.
pub fn cg_alpha(j1: HalfInt, j2: HalfInt, alpha1: usize, alpha2: usize, j3: HalfInt, alpha3: usize) -> Result<Complex64> {
    check_alpha(j1, alpha1)?;
    check_alpha(j2, alpha2)?;
    check_alpha(j3, alpha3)?;
    if !triangle(j1, j2, j3) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for m1 in j1.projections() {
        for m2 in j2.projections() {
            let m3 = HalfInt(m1.0 + m2.0);
            if m3.0.abs() > j3.0 {
                continue;
            }
            let c = cg(j1, m1, j2, m2, j3, m3)?;
            let w = weight(j1, m1, alpha1, -1) * weight(j2, m2, alpha2, -1) * weight(j3, m3, alpha3, 1);
            sum += w.to_complex() * c;
        }
    }
    Ok(sum * norm3([j1, j2, j3]))
}

/// The `f̄` symbol: the 3-jm symbol transformed with weights `q_k^(-(j_k+m_k)α_k)`.
pub fn fbar(j: [HalfInt; 3], alpha: [usize; 3]) -> Result<Complex64> {
    for k in 0..3 {
        check_alpha(j[k], alpha[k])?;
    }
    if !triangle(j[0], j[1], j[2]) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for m1 in j[0].projections() {
        for m2 in j[1].projections() {
            let m3 = HalfInt(-m1.0 - m2.0);
            if m3.0.abs() > j[2].0 {
                continue;
            }
            let w3 = wigner_3jm(j, [m1, m2, m3])?;
            let w = weight(j[0], m1, alpha[0], -1) * weight(j[1], m2, alpha[1], -1) * weight(j[2], m3, alpha[2], -1);
            sum += w.to_complex() * w3;
        }
    }
    Ok(sum * norm3(j))
}

/// `(-1)^(j1+j2+j3) q1^(-α1) q2^(-α2) q3^(-α3)`, the factor relating `conj(f̄)` to `f̄`.
pub fn fbar_conjugation_factor(j: [HalfInt; 3], alpha: [usize; 3]) -> Complex64 {
    let sign = if ((j[0].0 + j[1].0 + j[2].0) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let p: ExactPhase = (0..3)
        .map(|k| ExactPhase::q_pow(j[k].multiplicity(), -(alpha[k] as i64)))
        .product();
    p.to_complex() * sign
}

/// `⟨j, m | j α; 00⟩ = q^((j+m)α) / √(2j+1)`.
pub fn basis_change_coeff(j: HalfInt, m: HalfInt, alpha: usize) -> Result<Complex64> {
    check_jm(j, m)?;
    check_alpha(j, alpha)?;
    Ok(weight(j, m, alpha, 1).to_complex() / (j.multiplicity() as f64).sqrt())
}

/// Rows indexed by `m = j, j-1, …, -j`, columns by `α`.
pub fn basis_change_matrix(j: HalfInt) -> Result<ComplexMatrix> {
    let k = j.multiplicity();
    let mut out = ComplexMatrix::zeros(k, k);
    for n in 0..k {
        let m = HalfInt(j.0 - 2 * n as i32);
        for alpha in 0..k {
            out[(n, alpha)] = basis_change_coeff(j, m, alpha)?;
        }
    }
    Ok(out)
}

/// `(j1 j2 α1 α2 | j3 α3)` for all `α` at once, obtained by transforming the
/// standard Clebsch-Gordan array with the basis-change matrices. Indexed as
/// `[(α1 · (2j2+1) + α2, α3)]`.
pub fn cg_alpha_by_basis_change(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Result<ComplexMatrix> {
    let (k1, k2, k3) = (j1.multiplicity(), j2.multiplicity(), j3.multiplicity());
    let mut c = ComplexMatrix::zeros(k1 * k2, k3);
    if triangle(j1, j2, j3) {
        for n1 in 0..k1 {
            for n2 in 0..k2 {
                for n3 in 0..k3 {
                    let m = |j: HalfInt, n: usize| HalfInt(j.0 - 2 * n as i32);
                    let (m1, m2, m3) = (m(j1, n1), m(j2, n2), m(j3, n3));
                    if m1.0 + m2.0 == m3.0 {
                        c[(n1 * k2 + n2, n3)] = Complex64::new(cg(j1, m1, j2, m2, j3, m3)?, 0.0);
                    }
                }
            }
        }
    }
    let u12 = basis_change_matrix(j1)?.kronecker(&basis_change_matrix(j2)?);
    let u3 = basis_change_matrix(j3)?;
    Ok(u12.transpose().map(|z| z.conj()) * c * u3)
}

/// Parses `"1,1/2,3/2"` into half-integers.
pub fn parse_half_ints(s: &str) -> Result<Vec<HalfInt>> {
    s.split(',').map(str::parse).collect()
}

/// Rational view of a half-integer.
pub fn as_rational(j: HalfInt) -> Rational64 {
    Rational64::new(j.0 as i64, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(two: i32) -> HalfInt {
        HalfInt::from_doubled(two)
    }

    #[test]
    fn parsing() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), h(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), h(-1));
        assert_eq!("2".parse::<HalfInt>().unwrap(), h(4));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert_eq!(parse_half_ints("1,1/2,3/2").unwrap(), vec![h(2), h(1), h(3)]);
        assert_eq!(h(3).to_string(), "3/2");
        assert_eq!(h(-4).to_string(), "-2");
    }

    #[test]
    fn selection_rules() {
        assert_eq!(wigner_3jm([h(2), h(2), h(2)], [h(2), h(0), h(0)]).unwrap(), 0.0);
        assert_eq!(wigner_3jm([h(0), h(0), h(4)], [h(0), h(0), h(0)]).unwrap(), 0.0);
        assert!(wigner_3jm([h(2), h(2), h(0)], [h(1), h(-1), h(0)]).is_err());
        assert!(wigner_3jm([h(2), h(2), h(0)], [h(4), h(-4), h(0)]).is_err());
    }

    #[test]
    fn known_values() {
        assert!((wigner_3jm([h(0); 3], [h(0); 3]).unwrap() - 1.0).abs() < 1e-15);
        let v = wigner_3jm([h(2), h(2), h(0)], [h(2), h(-2), h(0)]).unwrap();
        assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        // (1/2 1/2 1; 1/2 -1/2 0) = 1/√6
        let v = wigner_3jm([h(1), h(1), h(2)], [h(1), h(-1), h(0)]).unwrap();
        assert!((v - 1.0 / 6f64.sqrt()).abs() < 1e-14);
        // (1 1 1; 1 0 -1) = -1/√6
        let v = wigner_3jm([h(2), h(2), h(2)], [h(2), h(0), h(-2)]).unwrap();
        assert!((v + 1.0 / 6f64.sqrt()).abs() < 1e-14);
        // ⟨1/2 1/2 1/2 -1/2 | 0 0⟩ = 1/√2
        let c = cg(h(1), h(1), h(1), h(-1), h(0), h(0)).unwrap();
        assert!((c - 1.0 / 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn orthogonality() {
        for j1 in 0..=4 {
            for j2 in 0..=4 {
                let (j1, j2) = (h(j1), h(j2));
                let mut js: Vec<HalfInt> = Vec::new();
                let mut j = (j1.0 - j2.0).abs();
                while j <= j1.0 + j2.0 {
                    js.push(h(j));
                    j += 2;
                }
                for &ja in &js {
                    for &jb in &js {
                        for ma in ja.projections() {
                            for mb in jb.projections() {
                                let mut s = 0.0;
                                for m1 in j1.projections() {
                                    for m2 in j2.projections() {
                                        let a = wigner_3jm([j1, j2, ja], [m1, m2, ma]).unwrap();
                                        let b = wigner_3jm([j1, j2, jb], [m1, m2, mb]).unwrap();
                                        s += (ja.0 + 1) as f64 * a * b;
                                    }
                                }
                                let expected = if ja == jb && ma == mb { 1.0 } else { 0.0 };
                                assert!((s - expected).abs() < 1e-10);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn basis_change() {
        for two_j in 0..8 {
            let j = h(two_j);
            let u = basis_change_matrix(j).unwrap();
            assert!(crate::linalg::unitarity_residual(&u) < 1e-12);
            for m in j.projections() {
                let c = basis_change_coeff(j, m, 0).unwrap();
                assert!((c - Complex64::new(1.0 / (j.multiplicity() as f64).sqrt(), 0.0)).norm() < 1e-15);
            }
        }
        // j = 1/2: |α=1⟩ has components -1 on m = 1/2 and +1 on m = -1/2
        let c = basis_change_coeff(h(1), h(1), 1).unwrap();
        assert!((c + Complex64::new(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cg_alpha_routes_agree() {
        let z = cg_alpha(h(0), h(0), 0, 0, h(2), 0).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
        for (a, b, c) in [(1, 1, 0), (1, 1, 2), (2, 2, 4), (2, 1, 3), (4, 2, 2)] {
            let (j1, j2, j3) = (h(a), h(b), h(c));
            let table = cg_alpha_by_basis_change(j1, j2, j3).unwrap();
            for a1 in 0..j1.multiplicity() {
                for a2 in 0..j2.multiplicity() {
                    for a3 in 0..j3.multiplicity() {
                        let direct = cg_alpha(j1, j2, a1, a2, j3, a3).unwrap();
                        let via = table[(a1 * j2.multiplicity() + a2, a3)];
                        assert!((direct - via).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn fbar_all_zero() {
        let v = fbar([h(0); 3], [0; 3]).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fbar_conjugation() {
        let j = [h(2), h(2), h(2)];
        for a1 in 0..3 {
            for a2 in 0..3 {
                for a3 in 0..3 {
                    let f = fbar(j, [a1, a2, a3]).unwrap();
                    let rhs = fbar_conjugation_factor(j, [a1, a2, a3]) * f;
                    assert!((f.conj() - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fbar_conjugation_with_positive_exponents_fails() {
        let mut failures = 0;
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    let j = [h(a), h(b), h(c)];
                    if !triangle(j[0], j[1], j[2]) {
                        continue;
                    }
                    let sign = if ((a + b + c) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    for a1 in 0..j[0].multiplicity() {
                        for a2 in 0..j[1].multiplicity() {
                            for a3 in 0..j[2].multiplicity() {
                                let al = [a1, a2, a3];
                                let f = fbar(j, al).unwrap();
                                let pos: ExactPhase =
                                    (0..3).map(|k| ExactPhase::q_pow(j[k].multiplicity(), al[k] as i64)).product();
                                if (f.conj() - pos.to_complex() * sign * f).norm() > 1e-10 {
                                    failures += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn fbar_permutations() {
        let j = [h(2), h(1), h(1)];
        for a0 in 0..3 {
            for a1 in 0..2 {
                for a2 in 0..2 {
                    let f = fbar(j, [a0, a1, a2]).unwrap();
                    let cyc = fbar([j[1], j[2], j[0]], [a1, a2, a0]).unwrap();
                    let swap = fbar([j[1], j[0], j[2]], [a1, a0, a2]).unwrap();
                    assert!((f - cyc).norm() < 1e-12);
                    // j1 + j2 + j3 = 2
                    assert!((f - swap).norm() < 1e-12);
                }
            }
        }
        let j = [h(2), h(2), h(2)];
        for a in 0..27usize {
            let al = [a / 9, (a / 3) % 3, a % 3];
            let f = fbar(j, al).unwrap();
            let swap = fbar(j, [al[0], al[2], al[1]]).unwrap();
            let cyc = fbar(j, [al[2], al[0], al[1]]).unwrap();
            assert!((f + swap).norm() < 1e-12);
            assert!((f - cyc).norm() < 1e-12);
        }
    }
}
