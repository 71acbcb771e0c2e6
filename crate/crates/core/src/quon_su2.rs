//! Two quon algebras at `q = exp(2πi/k)`, the operators `h` and `v_ra` on
//! their `k²`-dimensional tensor space, and the resulting `su(2)` generators.
//!
//! Tensor states `|n₁, n₂)` sit at index `n₁·k + n₂`. The spin-`j` subspace
//! `ε(j)` (`2j + 1 = k`) is spanned by `|j+m, j-m)`, and its computational
//! label is `n = j - m`, so `|j, j⟩` is index 0.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::linalg::{self, max_abs_diff, ComplexMatrix, ComplexVector};
use crate::phase::{Amplitude, ExactPhase, PhaseMatrix};
use crate::{Error, Result};

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("quon dimension must be at least 2, got {k}")));
    }
    Ok(())
}

/// `[n]_q = 1 + q + … + q^(n-1)`, with `[0]_q = 1`.
pub fn q_number(n: usize, k: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    (0..n).map(|i| ExactPhase::q_pow(k, i as i64).to_complex()).sum()
}

/// `[n]_q! = [1]_q [2]_q … [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize, k: usize) -> Complex64 {
    (1..=n).map(|i| q_number(i, k)).product()
}

/// Ladder and number operators of the quon algebras `A_q(x)` and `A_q(y)`.
#[derive(Debug, Clone)]
pub struct QuonRep {
    pub k: usize,
    pub q: ExactPhase,
    pub x_plus: ComplexMatrix,
    pub x_minus: ComplexMatrix,
    pub n_x: ComplexMatrix,
    pub y_plus: ComplexMatrix,
    pub y_minus: ComplexMatrix,
    pub n_y: ComplexMatrix,
}

/// Residuals of the defining relations of one quon algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuonRelations {
    pub q_commutator: f64,
    pub number_raising: f64,
    pub number_lowering: f64,
    pub raising_nilpotent: f64,
    pub lowering_nilpotent: f64,
}

impl QuonRelations {
    pub fn max(&self) -> f64 {
        [
            self.q_commutator,
            self.number_raising,
            self.number_lowering,
            self.raising_nilpotent,
            self.lowering_nilpotent,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn relations(k: usize, q: Complex64, plus: &ComplexMatrix, minus: &ComplexMatrix, n: &ComplexMatrix) -> QuonRelations {
    let id = ComplexMatrix::identity(k, k);
    let zero = ComplexMatrix::zeros(k, k);
    let qcomm = minus * plus - plus * minus * q;
    let pow = |m: &ComplexMatrix| (1..k).fold(m.clone(), |acc, _| acc * m);
    QuonRelations {
        q_commutator: max_abs_diff(&qcomm, &id),
        number_raising: max_abs_diff(&linalg::commutator(n, plus), plus),
        number_lowering: max_abs_diff(&linalg::commutator(n, minus), &(-minus)),
        raising_nilpotent: max_abs_diff(&pow(plus), &zero),
        lowering_nilpotent: max_abs_diff(&pow(minus), &zero),
    }
}

impl QuonRep {
    pub fn x_relations(&self) -> QuonRelations {
        relations(self.k, self.q.to_complex(), &self.x_plus, &self.x_minus, &self.n_x)
    }

    pub fn y_relations(&self) -> QuonRelations {
        relations(self.k, self.q.to_complex(), &self.y_plus, &self.y_minus, &self.n_y)
    }
}

/// `x₊|n) = |n+1)`, `x₋|n) = [n]|n-1)`, `y₊|n) = [n+1]|n+1)`, `y₋|n) = |n-1)`.
pub fn quon_rep(k: usize) -> Result<QuonRep> {
    check_k(k)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let up = |coef: &dyn Fn(usize) -> Complex64| {
        ComplexMatrix::from_fn(k, k, |r, c| if r == c + 1 { coef(c) } else { zero })
    };
    let down = |coef: &dyn Fn(usize) -> Complex64| {
        ComplexMatrix::from_fn(k, k, |r, c| if c == r + 1 { coef(c) } else { zero })
    };
    let number = ComplexMatrix::from_fn(k, k, |r, c| if r == c { Complex64::new(r as f64, 0.0) } else { zero });
    Ok(QuonRep {
        k,
        q: ExactPhase::q_pow(k, 1),
        x_plus: up(&|_| one),
        x_minus: down(&|n| q_number(n, k)),
        n_x: number.clone(),
        y_plus: up(&|n| q_number(n + 1, k)),
        y_minus: down(&|_| one),
        n_y: number,
    })
}

fn tensor_diag(k: usize, f: impl Fn(usize, usize) -> Complex64) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..k * k).map(|i| f(i / k, i % k)).collect();
    linalg::diagonal(&entries)
}

/// `h = √(N_x (N_y + 1))`, diagonal on the tensor space.
pub fn build_h(k: usize) -> Result<ComplexMatrix> {
    check_k(k)?;
    Ok(tensor_diag(k, |n1, n2| Complex64::new(((n1 * (n2 + 1)) as f64).sqrt(), 0.0)))
}

/// `v_ra = s_x s_y` with
/// `s_x = q^(a(N_x+N_y)/2) x₊ + e^(iφ/2) (x₋)^(k-1) / [k-1]!` and
/// `s_y = y₋ q^(-a(N_x-N_y)/2) + e^(iφ/2) (y₊)^(k-1) / [k-1]!`, `φ = π(k-1)r`.
pub fn build_vra_quonic(k: usize, r: Rational64, a: usize) -> Result<ComplexMatrix> {
    let rep = quon_rep(k)?;
    let id = ComplexMatrix::identity(k, k);
    let pow = |m: &ComplexMatrix, e: usize| (0..e).fold(id.clone(), |acc, _| acc * m);
    let half_phi = ExactPhase::half_turns(r * (k as i64 - 1) / 2).to_complex();
    let tail = half_phi / q_factorial(k - 1, k);
    let a = (a % k) as i64;
    let sum_phase = tensor_diag(k, |n1, n2| {
        ExactPhase::root_of_unity(k, Rational64::new(a * (n1 + n2) as i64, 2)).to_complex()
    });
    let diff_phase = tensor_diag(k, |n1, n2| {
        ExactPhase::root_of_unity(k, Rational64::new(-a * (n1 as i64 - n2 as i64), 2)).to_complex()
    });
    let s_x = sum_phase * rep.x_plus.kronecker(&id) + pow(&rep.x_minus, k - 1).kronecker(&id) * tail;
    let s_y = id.kronecker(&rep.y_minus) * diff_phase + id.kronecker(&pow(&rep.y_plus, k - 1)) * tail;
    Ok(s_x * s_y)
}

/// Tensor index of the computational state `n` of `ε(j)`.
pub fn epsilon_index(k: usize, n: usize) -> usize {
    (k - 1 - n) * k + n
}

/// Matrix of `op` on `ε(j)` in the computational labelling.
///
/// Fails with [`Error::NotStable`] when some image leaves `ε(j)` by more than `1e-12`.
pub fn restrict_to_j(op: &ComplexMatrix, two_j: usize) -> Result<ComplexMatrix> {
    let k = two_j + 1;
    if op.nrows() != k * k || op.ncols() != k * k {
        return Err(Error::DimensionMismatch { expected: k * k, found: op.nrows() });
    }
    let inside: Vec<usize> = (0..k).map(|n| epsilon_index(k, n)).collect();
    let mut leak = 0.0f64;
    for &col in &inside {
        for row in 0..k * k {
            if !inside.contains(&row) {
                leak = leak.max(op[(row, col)].norm());
            }
        }
    }
    if leak > 1e-12 {
        return Err(Error::NotStable(leak));
    }
    Ok(ComplexMatrix::from_fn(k, k, |r, c| op[(inside[r], inside[c])]))
}

/// A state `|j, m⟩` stored with doubled labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularState {
    two_j: u32,
    two_m: i32,
}

impl AngularState {
    pub fn new(two_j: u32, two_m: i32) -> Result<Self> {
        let j = two_j as i32;
        if two_j == 0 || two_m.abs() > j || (j - two_m) % 2 != 0 {
            return Err(Error::InvalidHalfInteger(format!("j = {two_j}/2, m = {two_m}/2")));
        }
        Ok(AngularState { two_j, two_m })
    }

    pub fn from_index(two_j: u32, n: usize) -> Result<Self> {
        Self::new(two_j, two_j as i32 - 2 * n as i32)
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn two_m(&self) -> i32 {
        self.two_m
    }

    /// `n = j - m`.
    pub fn index(&self) -> usize {
        ((self.two_j as i32 - self.two_m) / 2) as usize
    }
}

/// `j₊ = h v_ra`, `j₋ = v_ra† h`, `j_z = (h² - v_ra† h² v_ra)/2`, restricted to `ε(j)`.
#[derive(Debug, Clone)]
pub struct Su2Triple {
    pub two_j: usize,
    pub r: Rational64,
    pub a: usize,
    pub j_plus: ComplexMatrix,
    pub j_minus: ComplexMatrix,
    pub j_z: ComplexMatrix,
}

impl Su2Triple {
    /// Residuals of `[j_z, j₊] = j₊`, `[j_z, j₋] = -j₋`, `[j₊, j₋] = 2 j_z`.
    pub fn closure_residual(&self) -> f64 {
        let (p, m, z) = (&self.j_plus, &self.j_minus, &self.j_z);
        max_abs_diff(&linalg::commutator(z, p), p)
            .max(max_abs_diff(&linalg::commutator(z, m), &(-m)))
            .max(max_abs_diff(&linalg::commutator(p, m), &(z * Complex64::new(2.0, 0.0))))
    }

    /// `j² = j₊ j₋ + j_z (j_z - 1)`.
    pub fn casimir(&self) -> ComplexMatrix {
        let k = self.two_j + 1;
        &self.j_plus * &self.j_minus + &self.j_z * (&self.j_z - ComplexMatrix::identity(k, k))
    }
}

pub fn su2_generators(two_j: usize, r: Rational64, a: usize) -> Result<Su2Triple> {
    if two_j == 0 {
        return Err(Error::InvalidHalfInteger("j must be at least 1/2".into()));
    }
    let k = two_j + 1;
    let h = build_h(k)?;
    let v = build_vra_quonic(k, r, a)?;
    let h2 = &h * &h;
    let jp = &h * &v;
    let jm = v.adjoint() * &h;
    let jz = (&h2 - v.adjoint() * &h2 * &v) * Complex64::new(0.5, 0.0);
    Ok(Su2Triple {
        two_j,
        r,
        a: a % k,
        j_plus: restrict_to_j(&jp, two_j)?,
        j_minus: restrict_to_j(&jm, two_j)?,
        j_z: restrict_to_j(&jz, two_j)?,
    })
}

/// Common eigenvectors of `j²` and `v_ra` as the columns of a phase matrix:
/// component `m` of vector `α` is `q^((j+m)(j-m+1)a/2 - jmr + (j+m)α) / √(2j+1)`.
pub fn eigenbasis(two_j: usize, r: Rational64, a: usize) -> PhaseMatrix {
    let k = two_j + 1;
    PhaseMatrix::from_fn(k, Amplitude::InvSqrtDim, |n, alpha| {
        // doubled labels: 2(j+m) = 2(2j - n), 2(j-m+1) = 2(n + 1), 2m = 2j - 2n
        let jpm = (two_j - n) as i64;
        let jmm1 = (n + 1) as i64;
        let two_m = two_j as i64 - 2 * n as i64;
        let e = Rational64::new(jpm * jmm1 * a as i64, 2) - r * (two_j as i64 * two_m) / 4
            + Rational64::from_integer(jpm * alpha as i64);
        Some(ExactPhase::root_of_unity(k, e))
    })
}

/// `q^(j(r+a) - α)`.
pub fn eigenvalue(two_j: usize, r: Rational64, a: usize, alpha: usize) -> ExactPhase {
    let e = (r + a as i64) * two_j as i64 / 2 - alpha as i64;
    ExactPhase::root_of_unity(two_j + 1, e)
}

/// Largest `‖v_ra ψ_α - λ_α ψ_α‖∞` over `α`, using the quonic `v_ra`.
pub fn eigen_equation_residual(two_j: usize, r: Rational64, a: usize) -> Result<f64> {
    let v = restrict_to_j(&build_vra_quonic(two_j + 1, r, a)?, two_j)?;
    let basis = eigenbasis(two_j, r, a).to_complex();
    let mut worst = 0.0f64;
    for alpha in 0..=two_j {
        let psi: ComplexVector = basis.column(alpha).into_owned();
        let lhs = &v * &psi;
        let rhs = &psi * eigenvalue(two_j, r, a, alpha).to_complex();
        worst = worst.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(worst)
}

/// Closed form of `⟨jα; ra | jβ; sa⟩`:
/// `q^(j(β-α)) sin(πx) / ((2j+1) sin(πx/(2j+1)))` with `x = j(s-r) + α - β`.
///
/// When `x` is a multiple `c(2j+1)` the ratio is replaced by its limit `(-1)^(2jc)`.
pub fn overlap_same_a(two_j: usize, r: Rational64, s: Rational64, alpha: usize, beta: usize) -> Complex64 {
    let k = (two_j + 1) as i64;
    let x = (s - r) * two_j as i64 / 2 + alpha as i64 - beta as i64;
    let phase = ExactPhase::root_of_unity(two_j + 1, Rational64::new(two_j as i64 * (beta as i64 - alpha as i64), 2));
    let ratio = if (x / k).is_integer() {
        let c = (x / k).to_integer();
        if (c * two_j as i64) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    } else {
        let xf = *x.numer() as f64 / *x.denom() as f64;
        let pi = std::f64::consts::PI;
        (pi * xf).sin() / ((pi * xf / k as f64).sin() * k as f64)
    };
    phase.to_complex() * ratio
}

/// `⟨jα; ra | jβ; sa⟩` from the eigenvectors.
pub fn overlap_direct(two_j: usize, r: Rational64, s: Rational64, a: usize, alpha: usize, beta: usize) -> Complex64 {
    let u = eigenbasis(two_j, r, a).to_complex();
    let v = eigenbasis(two_j, s, a).to_complex();
    u.column(alpha).dotc(&v.column(beta))
}

/// Residual of `P v_ra P† = e^(-iφ) v_ra` with `P = diag(e^(-imφ))`, `φ = 2πp/(2j+1)`.
pub fn pseudo_invariance_residual(two_j: usize, r: Rational64, a: usize, p: i64) -> Result<f64> {
    let k = two_j + 1;
    let v = restrict_to_j(&build_vra_quonic(k, r, a)?, two_j)?;
    let diag: Vec<Complex64> = (0..k)
        .map(|n| {
            let two_m = two_j as i64 - 2 * n as i64;
            ExactPhase::root_of_unity(k, Rational64::new(-p * two_m, 2)).to_complex()
        })
        .collect();
    let pm = linalg::diagonal(&diag);
    let lhs = &pm * &v * pm.adjoint();
    let rhs = &v * ExactPhase::q_pow(k, -p).to_complex();
    Ok(max_abs_diff(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_pauli::vra_matrix;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn q_numbers() {
        for k in 2..8 {
            assert_eq!(q_number(1, k), Complex64::new(1.0, 0.0));
            assert_eq!(q_number(0, k), Complex64::new(1.0, 0.0));
            assert_eq!(q_factorial(0, k), Complex64::new(1.0, 0.0));
            assert_eq!(q_factorial(1, k), Complex64::new(1.0, 0.0));
        }
        let e = ExactPhase::new(1, 6).unwrap().to_complex();
        assert!(close(q_number(2, 3), e, 1e-15));
        assert!(close(q_factorial(2, 3), e, 1e-15));
        // [k]_q = 0
        assert!(q_number(5, 5).norm() < 1e-14);
    }

    #[test]
    fn quon_representation() {
        let rep = quon_rep(2).unwrap();
        let lower = ComplexMatrix::from_row_slice(
            2,
            2,
            &[0.0, 0.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0)),
        );
        assert_eq!(rep.x_plus, lower);
        for k in 2..9 {
            let rep = quon_rep(k).unwrap();
            for n in 0..k {
                assert_eq!(rep.n_x[(n, n)], Complex64::new(n as f64, 0.0));
            }
            assert!(rep.x_relations().max() < 1e-13, "k={k}");
            assert!(rep.y_relations().max() < 1e-13, "k={k}");
            assert_eq!(rep.x_relations().raising_nilpotent, 0.0);
            assert_eq!(rep.y_relations().lowering_nilpotent, 0.0);
        }
        let rep = quon_rep(3).unwrap();
        assert!(close(rep.x_minus[(1, 2)], q_number(2, 3), 1e-15));
        assert!(quon_rep(1).is_err());
    }

    #[test]
    fn h_diagonal() {
        let h = build_h(3).unwrap();
        let at = |n1: usize, n2: usize| h[(n1 * 3 + n2, n1 * 3 + n2)].re;
        assert_eq!(at(0, 2), 0.0);
        assert_eq!(at(1, 0), 1.0);
        assert_eq!(at(2, 1), 2.0);
    }

    #[test]
    fn vra_action_k2() {
        let v = build_vra_quonic(2, r(0, 1), 0).unwrap();
        let col = |n1: usize, n2: usize| v.column(n1 * 2 + n2).into_owned();
        let ket = |n1: usize, n2: usize| {
            let mut e = ComplexVector::zeros(4);
            e[n1 * 2 + n2] = Complex64::new(1.0, 0.0);
            e
        };
        assert!((col(1, 1) - ket(0, 0)).norm() < 1e-14);
        assert!((col(0, 0) - ket(1, 1)).norm() < 1e-14);
        assert!((col(1, 0) - ket(0, 1)).norm() < 1e-14);
        assert!((col(0, 1) - ket(1, 0)).norm() < 1e-14);
    }

    #[test]
    fn vra_action_k3_a1() {
        let v = build_vra_quonic(3, r(0, 1), 1).unwrap();
        // v|0,2) = q²|1,1)
        let q2 = ExactPhase::q_pow(3, 2).to_complex();
        assert!(close(v[(4, 2)], q2, 1e-14));
    }

    #[test]
    fn vra_power() {
        for k in 2..7 {
            for a in 0..k {
                for rr in [r(0, 1), r(1, 1), r(1, 3)] {
                    let v = build_vra_quonic(k, rr, a).unwrap();
                    let vk = (1..k).fold(v.clone(), |acc, _| acc * &v);
                    let scalar = ExactPhase::half_turns((rr + a as i64) * (k as i64 - 1)).to_complex();
                    let expected = ComplexMatrix::identity(k * k, k * k) * scalar;
                    assert!(max_abs_diff(&vk, &expected) < 1e-12, "k={k} a={a} r={rr}");
                }
            }
        }
        // e^(iφ_r) alone is right when (k-1)a is even
        let v = build_vra_quonic(3, r(1, 1), 2).unwrap();
        let v3 = &v * &v * &v;
        let phi = ExactPhase::half_turns(r(2, 1)).to_complex();
        assert!(max_abs_diff(&v3, &(ComplexMatrix::identity(9, 9) * phi)) < 1e-12);
    }

    #[test]
    fn corner_table_holds_for_a_zero() {
        for k in 2..6 {
            for rr in [r(0, 1), r(1, 2)] {
                let v = build_vra_quonic(k, rr, 0).unwrap();
                let half = ExactPhase::half_turns(rr * (k as i64 - 1) / 2).to_complex();
                for n2 in 1..k {
                    assert!(close(v[(n2 - 1, (k - 1) * k + n2)], half, 1e-13));
                }
                for n1 in 0..k - 1 {
                    assert!(close(v[((n1 + 1) * k + k - 1, n1 * k)], half, 1e-13));
                }
                assert!(close(v[(k - 1, (k - 1) * k)], half * half, 1e-13));
            }
        }
    }

    #[test]
    fn restriction() {
        let k = 4;
        let h = restrict_to_j(&build_h(k).unwrap(), 3).unwrap();
        for n in 0..k {
            let two_m = 3 - 2 * n as i64;
            let jpm = (3 + two_m) as f64 / 2.0;
            let jmm = (3 - two_m) as f64 / 2.0;
            assert!((h[(n, n)].re - (jpm * (jmm + 1.0)).sqrt()).abs() < 1e-14);
        }
        let id = restrict_to_j(&ComplexMatrix::identity(16, 16), 3).unwrap();
        assert_eq!(id, ComplexMatrix::identity(4, 4));
        let mut leaky = ComplexMatrix::identity(16, 16);
        leaky[(0, epsilon_index(4, 0))] = Complex64::new(0.1, 0.0);
        assert!(matches!(restrict_to_j(&leaky, 3), Err(Error::NotStable(_))));
    }

    #[test]
    fn restricted_v_is_direct_v() {
        for k in 2..9 {
            for a in 0..k {
                for rr in [r(0, 1), r(1, 1), r(1, 3)] {
                    let quonic = restrict_to_j(&build_vra_quonic(k, rr, a).unwrap(), k - 1).unwrap();
                    let direct = vra_matrix(k, rr, a).to_complex();
                    assert!(max_abs_diff(&quonic, &direct) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spin_half_standard_ladder() {
        let t = su2_generators(1, r(0, 1), 0).unwrap();
        let c = |x: f64| Complex64::new(x, 0.0);
        let jp = ComplexMatrix::from_row_slice(2, 2, &[c(0.), c(1.), c(0.), c(0.)]);
        assert!(max_abs_diff(&t.j_plus, &jp) < 1e-14);
        assert!(max_abs_diff(&t.j_minus, &jp.adjoint()) < 1e-14);
        let jz = ComplexMatrix::from_row_slice(2, 2, &[c(0.5), c(0.), c(0.), c(-0.5)]);
        assert!(max_abs_diff(&t.j_z, &jz) < 1e-14);
    }

    #[test]
    fn generator_examples() {
        let t = su2_generators(2, r(0, 1), 2).unwrap();
        for n in 0..3 {
            assert!(close(t.j_z[(n, n)], Complex64::new(1.0 - n as f64, 0.0), 1e-13));
        }
        let t = su2_generators(2, r(0, 1), 1).unwrap();
        // j₊|1,0⟩ = q√2 |1,1⟩
        let q = ExactPhase::q_pow(3, 1).to_complex();
        assert!(close(t.j_plus[(0, 1)], q * 2f64.sqrt(), 1e-13));
        assert!(max_abs_diff(&t.j_minus, &t.j_plus.adjoint()) < 1e-13);
        assert!(max_abs_diff(&t.j_z, &t.j_z.adjoint()) < 1e-13);
    }

    #[test]
    fn closure_and_casimir() {
        for two_j in 1..8 {
            for a in 0..=two_j {
                for rr in [r(0, 1), r(1, 2)] {
                    let t = su2_generators(two_j, rr, a).unwrap();
                    assert!(t.closure_residual() < 1e-10);
                    let j = two_j as f64 / 2.0;
                    let k = two_j + 1;
                    let expected = ComplexMatrix::identity(k, k) * Complex64::new(j * (j + 1.0), 0.0);
                    assert!(max_abs_diff(&t.casimir(), &expected) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn spin_half_bases() {
        let b00 = eigenbasis(1, r(0, 1), 0);
        assert_eq!(b00.column(0), vec![Some(ExactPhase::ONE), Some(ExactPhase::ONE)]);
        assert_eq!(b00.column(1), vec![Some(ExactPhase::MINUS_ONE), Some(ExactPhase::ONE)]);
        let b01 = eigenbasis(1, r(0, 1), 1);
        // i(|+⟩ - i|-⟩)/√2 and -i(|+⟩ + i|-⟩)/√2
        assert_eq!(b01.column(0), vec![Some(ExactPhase::I), Some(ExactPhase::ONE)]);
        assert_eq!(b01.column(1), vec![Some(ExactPhase::MINUS_I), Some(ExactPhase::ONE)]);
    }

    #[test]
    fn spin_one_b00() {
        let b = eigenbasis(2, r(0, 1), 0);
        // rows are m = 1, 0, -1; vector α has q^(α(1+m))
        for alpha in 0..3 {
            let col = b.column(alpha);
            assert_eq!(col[2], Some(ExactPhase::ONE));
            assert_eq!(col[1], Some(ExactPhase::q_pow(3, alpha as i64)));
            assert_eq!(col[0], Some(ExactPhase::q_pow(3, 2 * alpha as i64)));
        }
    }

    #[test]
    fn eigenbasis_orthonormal() {
        let b = eigenbasis(3, r(1, 2), 2).to_complex();
        assert!(linalg::unitarity_residual(&b) < 1e-12);
    }

    #[test]
    fn eigenvalues() {
        for two_j in 1..8 {
            for a in 0..=two_j {
                for rr in [r(0, 1), r(1, 1), r(1, 3)] {
                    assert!(eigen_equation_residual(two_j, rr, a).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn overlaps() {
        assert!(close(overlap_same_a(2, r(0, 1), r(0, 1), 1, 1), Complex64::new(1.0, 0.0), 1e-15));
        assert!(overlap_same_a(2, r(0, 1), r(0, 1), 0, 1).norm() < 1e-15);
        let closed = overlap_same_a(2, r(0, 1), r(1, 2), 0, 0);
        let direct = overlap_direct(2, r(0, 1), r(1, 2), 0, 0, 0);
        assert!(close(closed, direct, 1e-12));
    }

    #[test]
    fn overlap_modulus_without_phase() {
        // the bare sine ratio matches in modulus but not in phase
        let (two_j, rr, s, alpha, beta) = (2, r(0, 1), r(1, 2), 0, 1);
        let direct = overlap_direct(two_j, rr, s, 0, alpha, beta);
        let x = 0.5 - 1.0;
        let pi = std::f64::consts::PI;
        let bare = (pi * x).sin() / (3.0 * (pi * x / 3.0).sin());
        assert!((direct.norm() - bare.abs()).abs() < 1e-12);
        assert!((direct - Complex64::new(bare, 0.0)).norm() > 0.1);
    }

    #[test]
    fn pseudo_invariance() {
        for two_j in 1..6 {
            for a in 0..=two_j {
                for p in 0..=two_j as i64 {
                    assert!(pseudo_invariance_residual(two_j, r(1, 3), a, p).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn angular_states() {
        let s = AngularState::new(3, 3).unwrap();
        assert_eq!(s.index(), 0);
        assert_eq!(AngularState::new(3, -3).unwrap().index(), 3);
        assert_eq!(AngularState::from_index(4, 2).unwrap().two_m(), 0);
        assert!(AngularState::new(3, 2).is_err());
        assert!(AngularState::new(2, 4).is_err());
    }
}
