//! The Weyl pair `(X, Z)`, the unitary `V_ra = P_r X Z^a`, generalized Pauli
//! operators `u_ab = X^a Z^b`, the Pauli group and sine-algebra generators.
//!
//! `X` sends `|n⟩` to `|n-1⟩` (indices mod `d`), so `X_{n,n+1} = 1`.

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::linalg::{self, max_abs_diff, off_diagonal_residual, ComplexMatrix};
use crate::phase::{Amplitude, ExactPhase, PhaseMatrix, PhaseSum, Real};
use crate::qdft::{fra_matrix, hra_complex, QdftParams};
use crate::{Error, Result};

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {d}")));
    }
    Ok(())
}

fn modd(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// Cyclic shift with `X|n⟩ = |n-1⟩`.
pub fn x_matrix(d: usize) -> PhaseMatrix {
    PhaseMatrix::from_fn(d, Amplitude::One, |r, c| (c == (r + 1) % d).then_some(ExactPhase::ONE))
}

/// `Z = diag(1, q, …, q^(d-1))`.
pub fn z_matrix(d: usize) -> PhaseMatrix {
    let diag: Vec<_> = (0..d).map(|n| ExactPhase::q_pow(d, n as i64)).collect();
    PhaseMatrix::diagonal(&diag)
}

/// `P_r = diag(1, …, 1, exp(iπ(d-1)r))`.
pub fn pr_matrix(d: usize, r: Rational64) -> PhaseMatrix {
    let mut diag = vec![ExactPhase::ONE; d];
    diag[d - 1] = ExactPhase::half_turns(r * (d as i64 - 1));
    PhaseMatrix::diagonal(&diag)
}

/// `V_ra`: `q^(na)` at `(n-1, n)` for `n = 1..d-1` and `exp(iπ(d-1)r)` at `(d-1, 0)`.
pub fn vra_matrix(d: usize, r: Rational64, a: usize) -> PhaseMatrix {
    let corner = ExactPhase::half_turns(r * (d as i64 - 1));
    PhaseMatrix::from_fn(d, Amplitude::One, |row, col| {
        if col == row + 1 {
            Some(ExactPhase::q_pow(d, (col * a) as i64))
        } else if row == d - 1 && col == 0 {
            Some(corner)
        } else {
            None
        }
    })
}

/// `V_ra` for any real `r`.
pub fn vra_complex(d: usize, r: Real, a: usize) -> ComplexMatrix {
    match r {
        Real::Rational(r) => vra_matrix(d, r, a).to_complex(),
        Real::Float(x) => {
            let mut m = vra_matrix(d, Rational64::from_integer(0), a).to_complex();
            m[(d - 1, 0)] = Complex64::from_polar(1.0, std::f64::consts::PI * (d as f64 - 1.0) * x);
            m
        }
    }
}

/// Eigenvalue of `V_ra` on `|aα; r⟩`: `q^((d-1)(r+a)/2 - α)`.
pub fn vra_eigenvalue(d: usize, r: Rational64, a: usize, alpha: usize) -> ExactPhase {
    let e = Rational64::from_integer(d as i64 - 1) * (r + a as i64) / 2 - alpha as i64;
    ExactPhase::root_of_unity(d, e)
}

/// `H_ra† V_ra H_ra`, diagonal up to rounding.
pub fn diagonalize_vra(d: usize, r: Real, a: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let h = hra_complex(&QdftParams::new(d, r, a as i64)?);
    Ok(h.adjoint() * vra_complex(d, r, a) * h)
}

/// Residuals of the conjugated matrix against `q^((d-1)(r+a)/2) diag(q^-α)`:
/// returns `(off-diagonal, diagonal)`.
pub fn diagonalization_residual(d: usize, r: Rational64, a: usize) -> Result<(f64, f64)> {
    let m = diagonalize_vra(d, Real::Rational(r), a)?;
    let diag = (0..d)
        .map(|alpha| (m[(alpha, alpha)] - vra_eigenvalue(d, r, a, alpha).to_complex()).norm())
        .fold(0.0, f64::max);
    Ok((off_diagonal_residual(&m), diag))
}

/// Index `(a, b)` of `u_ab = X^a Z^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex {
    pub a: usize,
    pub b: usize,
}

impl PauliIndex {
    pub fn new(a: i64, b: i64, d: usize) -> Self {
        PauliIndex { a: modd(a, d), b: modd(b, d) }
    }
}

/// `u_ab = X^a Z^b`, with `(u_ab)_{n, n+a} = q^(b(n+a))`.
pub fn u_ab(d: usize, idx: PauliIndex) -> PhaseMatrix {
    let (a, b) = (idx.a % d, idx.b % d);
    PhaseMatrix::from_fn(d, Amplitude::One, |r, c| {
        (c == (r + a) % d).then(|| ExactPhase::q_pow(d, (b * c) as i64))
    })
}

fn xm(d: usize, m: i64) -> PhaseMatrix {
    u_ab(d, PauliIndex::new(m, 0, d))
}

fn zn(d: usize, n: i64) -> PhaseMatrix {
    u_ab(d, PauliIndex::new(0, n, d))
}

/// `X^m Z^n = q^(mn) Z^n X^m`, `X^d = Z^d = I` (exact) and `F† X F = Z` (to `1e-10`).
pub fn weyl_relation_check(d: usize, m: i64, n: i64) -> Result<bool> {
    check_dim(d)?;
    let lhs = xm(d, m).mul_exact(&zn(d, n))?;
    let rhs = zn(d, n).mul_exact(&xm(d, m))?.scaled(ExactPhase::q_pow(d, m * n));
    let id = PhaseMatrix::identity(d);
    let cyclic = x_matrix(d).pow(d as u32)? == id && z_matrix(d).pow(d as u32)? == id;
    let f = fra_matrix(&QdftParams::new(d, 0, 0)?)?.to_complex();
    let conj = f.adjoint() * x_matrix(d).to_complex() * &f;
    let dft = max_abs_diff(&conj, &z_matrix(d).to_complex()) < 1e-10;
    Ok(lhs == rhs && cyclic && dft)
}

/// Largest deviation of `tr(u_ab† u_a'b')` from `d δ_aa' δ_bb'` over all `d⁴` pairs.
///
/// Traces are evaluated as exact sums of roots of unity, so the result is
/// `0.0` whenever the identity holds.
pub fn pauli_trace_orthogonality(d: usize) -> Result<f64> {
    check_dim(d)?;
    let ops: Vec<(PauliIndex, PhaseMatrix)> = (0..d)
        .flat_map(|a| (0..d).map(move |b| PauliIndex { a, b }))
        .map(|i| (i, u_ab(d, i)))
        .collect();
    let worst = ops
        .par_iter()
        .map(|(i, u)| {
            let ua = u.adjoint();
            ops.iter()
                .map(|(j, v)| {
                    let expected = if i == j { d as i64 } else { 0 };
                    let tr = ua.mul_exact(v).expect("monomial").trace_sum();
                    trace_deviation(&tr, expected)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

pub(crate) fn trace_deviation(tr: &PhaseSum, expected: i64) -> f64 {
    match tr.as_integer() {
        Some(t) => (t - expected).abs() as f64,
        None => (tr.to_complex() - Complex64::new(expected as f64, 0.0)).norm().max(f64::MIN_POSITIVE),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorReport {
    /// `[u, u'] = (q^(-ba') - q^(-ab')) u_{a+a', b+b'}` holds exactly.
    pub commutator_ok: bool,
    /// `{u, u'} = (q^(-ba') + q^(-ab')) u_{a+a', b+b'}` holds exactly.
    pub anticommutator_ok: bool,
    pub commutes: bool,
    pub anticommutes: bool,
    /// The vanishing pattern agrees with `ab' - ba' ≡ 0` and `≡ d/2` (mod `d`).
    pub selection_rule_ok: bool,
}

/// Commutator and anticommutator of two generalized Pauli operators.
///
/// Both products `u u'` and `u' u` are monomial, so each is compared exactly
/// to its predicted multiple of `u_{a+a', b+b'}`; the (anti)commutator is then
/// that difference (sum) of phases times the same matrix.
pub fn uab_commutators(d: usize, i: PauliIndex, j: PauliIndex) -> Result<CommutatorReport> {
    check_dim(d)?;
    let (u, v) = (u_ab(d, i), u_ab(d, j));
    let sum = u_ab(d, PauliIndex::new((i.a + j.a) as i64, (i.b + j.b) as i64, d));
    let p1 = ExactPhase::q_pow(d, -((i.b * j.a) as i64));
    let p2 = ExactPhase::q_pow(d, -((i.a * j.b) as i64));
    let uv = u.mul_exact(&v)?;
    let vu = v.mul_exact(&u)?;
    let products_ok = uv == sum.scaled(p1) && vu == sum.scaled(p2);

    // numerical cross-check of the linear combinations
    let s = sum.to_complex();
    let (uc, vc) = (u.to_complex(), v.to_complex());
    let comm_ok = max_abs_diff(&linalg::commutator(&uc, &vc), &(&s * (p1.to_complex() - p2.to_complex()))) < 1e-12;
    let anti_ok = max_abs_diff(&linalg::anticommutator(&uc, &vc), &(&s * (p1.to_complex() + p2.to_complex()))) < 1e-12;

    let commutes = p1 == p2;
    let anticommutes = p1 == p2.negated();
    let sympl = modd((i.a * j.b) as i64 - (i.b * j.a) as i64, d);
    let rule = commutes == (sympl == 0) && anticommutes == (d.is_multiple_of(2) && sympl == d / 2);
    Ok(CommutatorReport {
        commutator_ok: products_ok && comm_ok,
        anticommutator_ok: products_ok && anti_ok,
        commutes,
        anticommutes,
        selection_rule_ok: rule,
    })
}

/// `w_abc = q^a X^b Z^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliGroupElement {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl PauliGroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: usize) -> Self {
        PauliGroupElement { a: modd(a, d), b: modd(b, d), c: modd(c, d) }
    }

    pub fn identity() -> Self {
        PauliGroupElement { a: 0, b: 0, c: 0 }
    }

    pub fn matrix(&self, d: usize) -> PhaseMatrix {
        u_ab(d, PauliIndex { a: self.b, b: self.c }).scaled(ExactPhase::q_pow(d, self.a as i64))
    }
}

/// `(a, b, c)(a', b', c') = (a + a' - cb', b + b', c + c')`.
pub fn pauli_compose(d: usize, g: PauliGroupElement, h: PauliGroupElement) -> PauliGroupElement {
    PauliGroupElement::new(
        g.a as i64 + h.a as i64 - (g.c * h.b) as i64,
        (g.b + h.b) as i64,
        (g.c + h.c) as i64,
        d,
    )
}

pub fn pauli_inverse(d: usize, g: PauliGroupElement) -> PauliGroupElement {
    PauliGroupElement::new(-(g.a as i64) - (g.b * g.c) as i64, -(g.b as i64), -(g.c as i64), d)
}

/// Group commutator `g h g⁻¹ h⁻¹`.
pub fn pauli_commutator(d: usize, g: PauliGroupElement, h: PauliGroupElement) -> PauliGroupElement {
    let gh = pauli_compose(d, g, h);
    let ghg = pauli_compose(d, gh, pauli_inverse(d, g));
    pauli_compose(d, ghg, pauli_inverse(d, h))
}

/// All `d³` group elements in lexicographic order.
pub fn pauli_group(d: usize) -> Vec<PauliGroupElement> {
    let mut out = Vec::with_capacity(d * d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                out.push(PauliGroupElement { a, b, c });
            }
        }
    }
    out
}

/// Elements commuting with the whole group, found by brute force.
pub fn pauli_center(d: usize) -> Vec<PauliGroupElement> {
    let all = pauli_group(d);
    all.iter()
        .copied()
        .filter(|&g| all.iter().all(|&h| pauli_compose(d, g, h) == pauli_compose(d, h, g)))
        .collect()
}

/// Unreduced pair `(n₁, n₂)` labelling `T_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SineIndex {
    pub n1: i64,
    pub n2: i64,
}

impl SineIndex {
    pub fn new(n1: i64, n2: i64) -> Self {
        SineIndex { n1, n2 }
    }

    pub fn cross(&self, other: &SineIndex) -> i64 {
        self.n1 * other.n2 - self.n2 * other.n1
    }

    pub fn add(&self, other: &SineIndex) -> SineIndex {
        SineIndex::new(self.n1 + other.n1, self.n2 + other.n2)
    }
}

/// `T_n = q^(n₁n₂/2) Z^n₁ X^n₂`.
pub fn t_matrix(d: usize, s: SineIndex) -> PhaseMatrix {
    let x = modd(s.n2, d);
    let half = ExactPhase::root_of_unity(d, Rational64::new(s.n1 * s.n2, 2));
    PhaseMatrix::from_fn(d, Amplitude::One, |r, c| {
        (c == (r + x) % d).then(|| ExactPhase::q_pow(d, s.n1 * r as i64) * half)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineReport {
    /// `T_m T_n = q^(-m×n/2) T_{m+n}` exactly.
    pub product_exact: bool,
    /// Largest deviation of `[T_m, T_n]` from `-2i sin(π m×n/d) T_{m+n}`.
    pub commutator_residual: f64,
}

pub fn sine_commutator_check(d: usize, m: SineIndex, n: SineIndex) -> Result<SineReport> {
    check_dim(d)?;
    let (tm, tn) = (t_matrix(d, m), t_matrix(d, n));
    let tsum = t_matrix(d, m.add(&n));
    let x = m.cross(&n);
    let product_exact = tm.mul_exact(&tn)? == tsum.scaled(ExactPhase::root_of_unity(d, Rational64::new(-x, 2)));
    let coeff = Complex64::new(0.0, -2.0 * (std::f64::consts::PI * x as f64 / d as f64).sin());
    let comm = linalg::commutator(&tm.to_complex(), &tn.to_complex());
    let residual = max_abs_diff(&comm, &(tsum.to_complex() * coeff));
    Ok(SineReport { product_exact, commutator_residual: residual })
}

/// `X` carries the regular representation of the cyclic group: the Fourier
/// vectors form a unitary eigenbasis with eigenvalues the `d`-th roots of
/// unity, each once. Checked both numerically and through the exact character
/// traces `tr X^k = d δ_k0`.
pub fn regular_representation_check(d: usize) -> Result<bool> {
    check_dim(d)?;
    let x = x_matrix(d).to_complex();
    let norm = 1.0 / (d as f64).sqrt();
    let v = ComplexMatrix::from_fn(d, d, |n, k| ExactPhase::q_pow(d, (k * n) as i64).to_complex() * norm);
    let lambda = linalg::diagonal(&(0..d).map(|k| ExactPhase::q_pow(d, k as i64).to_complex()).collect::<Vec<_>>());
    let spectrum_ok = linalg::unitarity_residual(&v) < 1e-10 && max_abs_diff(&(&x * &v), &(&v * lambda)) < 1e-10;
    let mut traces_ok = true;
    let mut power = PhaseMatrix::identity(d);
    for k in 0..d {
        let expected = if k == 0 { d as i64 } else { 0 };
        traces_ok &= power.trace_sum().as_integer() == Some(expected);
        power = power.mul_exact(&x_matrix(d))?;
    }
    Ok(spectrum_ok && traces_ok)
}
