//! Quadratic discrete Fourier transform matrices `F_ra`, `H_ra`, `D_ra`.
//!
//! With `q = exp(2πi/d)`, every entry is `q^e / √d` where the exponent `e` is
//! an affine function of `r` with rational coefficients. For rational `r`
//! the matrices are built exactly; a float `r` yields dense complex matrices.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::linalg::{unitarity_residual, ComplexMatrix, ComplexVector};
use crate::phase::{Amplitude, ExactPhase, PhaseMatrix, Real};
use crate::{Error, Result};

/// Dimension `d`, real parameter `r` and integer `a` (reduced mod `d`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QdftParams {
    pub d: usize,
    pub r: Real,
    pub a: usize,
}

impl QdftParams {
    pub fn new(d: usize, r: impl Into<Real>, a: i64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension must be at least 2, got {d}")));
        }
        let r = r.into();
        if let Real::Float(x) = r {
            if !x.is_finite() {
                return Err(Error::Domain(format!("r must be finite, got {x}")));
            }
        }
        Ok(QdftParams {
            d,
            r,
            a: a.rem_euclid(d as i64) as usize,
        })
    }

    pub fn exact(d: usize, r: Rational64, a: i64) -> Result<Self> {
        Self::new(d, r, a)
    }

    fn rational_r(&self) -> Result<Rational64> {
        self.r
            .as_rational()
            .ok_or_else(|| Error::Domain("exact construction needs a rational r".into()))
    }
}

/// Exponent of `q` of the form `constant + slope · r`.
#[derive(Debug, Clone, Copy)]
struct Exponent {
    constant: Rational64,
    slope: Rational64,
}

impl Exponent {
    fn exact(self, d: usize, r: Rational64) -> ExactPhase {
        ExactPhase::root_of_unity(d, self.constant + self.slope * r)
    }

    fn complex(self, d: usize, r: Real) -> Complex64 {
        match r {
            Real::Rational(r) => self.exact(d, r).to_complex(),
            Real::Float(x) => {
                let e = ratio_f64(self.constant) + ratio_f64(self.slope) * x;
                Complex64::from_polar(1.0, std::f64::consts::TAU * e / d as f64)
            }
        }
    }
}

fn ratio_f64(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

// n(d-n)a/2 + nm + r[(d-1)²/4 - n(d-1)/2]
fn fra_exponent(d: usize, a: usize, n: usize, m: usize) -> Exponent {
    let (d, a, n, m) = (d as i64, a as i64, n as i64, m as i64);
    Exponent {
        constant: rat(n * (d - n) * a, 2) + rat(n * m, 1),
        slope: rat((d - 1) * (d - 1), 4) - rat(n * (d - 1), 2),
    }
}

// m(d-m)a/2 + r[(d-1)²/4 - m(d-1)/2]
fn dra_exponent(d: usize, a: usize, m: usize) -> Exponent {
    fra_exponent(d, a, m, 0)
}

fn hra_exponent(d: usize, a: usize, n: usize, alpha: usize) -> Exponent {
    let (di, ai, ni, al) = (d as i64, a as i64, n as i64, alpha as i64);
    Exponent {
        constant: rat((di - 1 - ni) * (ni + 1) * ai, 2) + rat((di - 1 - ni) * al, 1),
        slope: rat((di - 1) * (di - 1), 4) - rat((di - 1 - ni) * (di - 1), 2),
    }
}

fn exact_dense(
    p: &QdftParams,
    f: impl Fn(usize, usize, usize, usize) -> Exponent,
) -> Result<PhaseMatrix> {
    let r = p.rational_r()?;
    Ok(PhaseMatrix::from_fn(p.d, Amplitude::InvSqrtDim, |n, m| {
        Some(f(p.d, p.a, n, m).exact(p.d, r))
    }))
}

fn complex_dense(p: &QdftParams, f: impl Fn(usize, usize, usize, usize) -> Exponent) -> ComplexMatrix {
    let scale = 1.0 / (p.d as f64).sqrt();
    ComplexMatrix::from_fn(p.d, p.d, |n, m| f(p.d, p.a, n, m).complex(p.d, p.r) * scale)
}

/// `(F_ra)_nm = q^(n(d-n)a/2 + (d-1)²r/4 + n[m - (d-1)r/2]) / √d`.
pub fn fra_matrix(p: &QdftParams) -> Result<PhaseMatrix> {
    exact_dense(p, fra_exponent)
}

/// `F_ra` for any real `r`.
pub fn fra_complex(p: &QdftParams) -> ComplexMatrix {
    complex_dense(p, fra_exponent)
}

/// `H_ra`, whose column `α` is the basis vector `|aα; r⟩`.
pub fn hra_matrix(p: &QdftParams) -> Result<PhaseMatrix> {
    exact_dense(p, hra_exponent)
}

pub fn hra_complex(p: &QdftParams) -> ComplexMatrix {
    complex_dense(p, hra_exponent)
}

/// Diagonal `D_ra` with `F_ra = D_ra · F_00`.
pub fn dra_matrix(p: &QdftParams) -> Result<PhaseMatrix> {
    let r = p.rational_r()?;
    let diag: Vec<ExactPhase> = (0..p.d).map(|m| dra_exponent(p.d, p.a, m).exact(p.d, r)).collect();
    Ok(PhaseMatrix::diagonal(&diag))
}

pub fn dra_complex(p: &QdftParams) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..p.d).map(|m| dra_exponent(p.d, p.a, m).complex(p.d, p.r)).collect();
    crate::linalg::diagonal(&diag)
}

fn check_len(d: usize, v: &ComplexVector) -> Result<()> {
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    Ok(())
}

/// `y_n = Σ_m (F_ra)_mn x_m`.
pub fn forward(x: &ComplexVector, p: &QdftParams) -> Result<ComplexVector> {
    check_len(p.d, x)?;
    Ok(fra_complex(p).transpose() * x)
}

/// `x_m = Σ_n conj((F_ra)_mn) y_n`.
pub fn inverse(y: &ComplexVector, p: &QdftParams) -> Result<ComplexVector> {
    check_len(p.d, y)?;
    Ok(fra_complex(p).map(|z| z.conj()) * y)
}

/// Returns `(Σ conj(y_n) y'_n, Σ conj(x_m) x'_m)`.
pub fn parseval_check(x: &ComplexVector, x2: &ComplexVector, p: &QdftParams) -> Result<(Complex64, Complex64)> {
    check_len(p.d, x)?;
    check_len(p.d, x2)?;
    let y = forward(x, p)?;
    let y2 = forward(x2, p)?;
    Ok((y.dotc(&y2), x.dotc(x2)))
}

/// Arguments of `S(u, v, w) = Σ_{k=0}^{|w|-1} exp(iπ(uk² + vk)/w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSumArgs {
    pub u: i64,
    pub v: Real,
    pub w: i64,
}

/// Direct summation of the generalized quadratic Gauss sum.
pub fn gauss_sum(g: &GaussSumArgs) -> Result<Complex64> {
    if g.w == 0 {
        return Err(Error::Domain("Gauss sum needs w != 0".into()));
    }
    let terms = (0..g.w.abs()).map(|k| match g.v {
        Real::Rational(v) => {
            let x = (Rational64::from_integer(g.u * k * k) + v * k) / g.w;
            ExactPhase::half_turns(x).to_complex()
        }
        Real::Float(v) => {
            let x = (g.u as f64 * (k * k) as f64 + v * k as f64) / g.w as f64;
            Complex64::from_polar(1.0, std::f64::consts::PI * x)
        }
    });
    Ok(terms.sum())
}

/// Trace of `F_ra` through a single Gauss sum:
/// `exp(iπ(d-1)²r/(2d)) · S(2-a, d(a-r)+r, d) / √d`.
pub fn trace_fra(p: &QdftParams) -> Complex64 {
    let d = p.d as i64;
    let a = p.a as i64;
    let (v, prefactor) = match p.r {
        Real::Rational(r) => (
            Real::Rational(Rational64::from_integer(d) * (Rational64::from_integer(a) - r) + r),
            ExactPhase::half_turns(r * ((d - 1) * (d - 1)) / (2 * d)).to_complex(),
        ),
        Real::Float(r) => (
            Real::Float(d as f64 * (a as f64 - r) + r),
            Complex64::from_polar(1.0, std::f64::consts::PI * r * ((d - 1) * (d - 1)) as f64 / (2 * d) as f64),
        ),
    };
    let s = gauss_sum(&GaussSumArgs { u: 2 - a, v, w: d }).expect("d >= 2");
    prefactor * s / (p.d as f64).sqrt()
}

/// Trace of `F_ra` summed from its diagonal.
pub fn trace_fra_direct(p: &QdftParams) -> Complex64 {
    fra_complex(p).trace()
}

/// `det F_0a = exp(iπ(d²-1)a/6) · det F`, with `det F` taken numerically.
pub fn det_fra(d: usize, a: usize) -> Result<Complex64> {
    let f = fra_complex(&QdftParams::new(d, 0, 0)?);
    let phase = ExactPhase::half_turns(Rational64::new(((d * d - 1) * a) as i64, 6));
    Ok(phase.to_complex() * f.determinant())
}

/// LU determinant of `F_ra`.
pub fn det_fra_direct(p: &QdftParams) -> Complex64 {
    fra_complex(p).determinant()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardReport {
    pub unitarity_residual: f64,
    pub modulus_residual: f64,
    pub is_hadamard: bool,
}

/// Unitary with every entry of modulus `1/√d`, both within `1e-10`.
pub fn is_generalized_hadamard(m: &ComplexMatrix) -> HadamardReport {
    if !m.is_square() || m.nrows() == 0 {
        return HadamardReport {
            unitarity_residual: f64::INFINITY,
            modulus_residual: f64::INFINITY,
            is_hadamard: false,
        };
    }
    let target = 1.0 / (m.nrows() as f64).sqrt();
    let unitarity = unitarity_residual(m);
    let modulus = m.iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max);
    HadamardReport {
        unitarity_residual: unitarity,
        modulus_residual: modulus,
        is_hadamard: unitarity < 1e-10 && modulus < 1e-10,
    }
}

/// Checks both row recursions of `F_ra` exactly; for `r = 0` also the cyclic
/// form `(F_0a)_{n⊖1, α} = q^((d-1)a/2 - α + na) (F_0a)_{nα}`.
pub fn symmetry_relations_check(p: &QdftParams) -> Result<bool> {
    let f = fra_matrix(p)?;
    let r = p.rational_r()?;
    let d = p.d;
    let di = d as i64;
    let base = (Rational64::from_integer(di - 1) * (r + p.a as i64)) / 2;
    let corner = ExactPhase::half_turns(-r * (di - 1));
    for alpha in 0..d {
        let g = ExactPhase::root_of_unity(d, base - alpha as i64);
        if f.get(d - 1, alpha) != f.get(0, alpha).map(|x| x * g * corner) {
            return Ok(false);
        }
        for n in 1..d {
            let s = ExactPhase::root_of_unity(d, base - alpha as i64 + (n * p.a) as i64);
            if f.get(n - 1, alpha) != f.get(n, alpha).map(|x| x * s) {
                return Ok(false);
            }
        }
        if r == Rational64::from_integer(0) {
            for n in 0..d {
                let s = ExactPhase::root_of_unity(d, base - alpha as i64 + (n * p.a) as i64);
                if f.get((n + d - 1) % d, alpha) != f.get(n, alpha).map(|x| x * s) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
