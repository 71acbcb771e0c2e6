//! Mutually unbiased bases: the complete prime-dimensional sets built from
//! `H_ra`, the five-basis `d = 4` tensor construction, composite-dimension
//! triples, and the commuting-class partition of the generalized Pauli set.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::linalg::{unitarity_residual, ComplexMatrix, ComplexVector};
use crate::phase::{Amplitude, MatrixProduct, PhaseMatrix, Real};
use crate::qdft::{fra_matrix, gauss_sum, hra_matrix, is_generalized_hadamard, GaussSumArgs, HadamardReport, QdftParams};
use crate::weyl_pauli::{trace_deviation, u_ab, PauliIndex};
use crate::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn require_prime(p: usize) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    Computational,
    Quadratic { r: Rational64, a: usize },
    W { a: usize, b: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Computational => write!(f, "computational"),
            BasisLabel::Quadratic { r, a } => write!(f, "B(r={r}, a={a})"),
            BasisLabel::W { a, b } => write!(f, "W{a}{b}"),
        }
    }
}

/// An orthonormal basis stored as the columns of a matrix.
#[derive(Debug, Clone)]
pub struct Basis {
    pub label: BasisLabel,
    exact: Option<PhaseMatrix>,
    vectors: ComplexMatrix,
}

impl Basis {
    pub fn from_exact(label: BasisLabel, m: PhaseMatrix) -> Self {
        Basis { label, vectors: m.to_complex(), exact: Some(m) }
    }

    pub fn from_complex(label: BasisLabel, vectors: ComplexMatrix) -> Self {
        Basis { label, exact: None, vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    /// Column `i` is basis vector `i`.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn exact(&self) -> Option<&PhaseMatrix> {
        self.exact.as_ref()
    }

    pub fn vector(&self, i: usize) -> ComplexVector {
        self.vectors.column(i).into_owned()
    }

    pub fn orthonormality_residual(&self) -> f64 {
        unitarity_residual(&self.vectors)
    }
}

#[derive(Debug, Clone)]
pub struct MubSet {
    pub dim: usize,
    pub bases: Vec<Basis>,
    pub declared_complete: bool,
}

/// Deviation table entry for one pair of bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDeviation {
    pub first: usize,
    pub second: usize,
    pub deviation: f64,
}

impl MubSet {
    pub fn pairwise_deviations(&self) -> Vec<PairDeviation> {
        let pairs: Vec<(usize, usize)> = (0..self.bases.len())
            .flat_map(|i| (i + 1..self.bases.len()).map(move |j| (i, j)))
            .collect();
        pairs
            .par_iter()
            .map(|&(i, j)| PairDeviation {
                first: i,
                second: j,
                deviation: unbiasedness(&self.bases[i], &self.bases[j]).expect("same dimension"),
            })
            .collect()
    }

    pub fn max_deviation(&self) -> f64 {
        self.pairwise_deviations().iter().map(|p| p.deviation).fold(0.0, f64::max)
    }

    pub fn max_orthonormality_residual(&self) -> f64 {
        self.bases.iter().map(Basis::orthonormality_residual).fold(0.0, f64::max)
    }
}

/// Largest `| |⟨u|v⟩| - 1/√d |` over vectors `u ∈ b1`, `v ∈ b2`.
pub fn unbiasedness(b1: &Basis, b2: &Basis) -> Result<f64> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch { expected: b1.dim(), found: b2.dim() });
    }
    let target = 1.0 / (b1.dim() as f64).sqrt();
    let g = b1.vectors.adjoint() * &b2.vectors;
    Ok(g.iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max))
}

fn quadratic_basis(d: usize, r: Rational64, a: usize) -> Result<Basis> {
    let h = hra_matrix(&QdftParams::exact(d, r, a as i64)?)?;
    Ok(Basis::from_exact(BasisLabel::Quadratic { r, a }, h))
}

fn computational(d: usize) -> Basis {
    Basis::from_exact(BasisLabel::Computational, PhaseMatrix::identity(d))
}

/// `B_r0, …, B_r(p-1)` followed by the computational basis.
pub fn mub_prime(p: usize, r: Rational64) -> Result<MubSet> {
    require_prime(p)?;
    let mut bases = (0..p).map(|a| quadratic_basis(p, r, a)).collect::<Result<Vec<_>>>()?;
    bases.push(computational(p));
    Ok(MubSet { dim: p, bases, declared_complete: true })
}

/// `B_0a`, `B_0(a+1)` and the computational basis, unbiased in every dimension.
pub fn three_mub(d: usize, a: usize) -> Result<MubSet> {
    let r = Rational64::from_integer(0);
    Ok(MubSet {
        dim: d,
        bases: vec![quadratic_basis(d, r, a % d)?, quadratic_basis(d, r, (a + 1) % d)?, computational(d)],
        declared_complete: false,
    })
}

/// `⟨aα; r | bβ; r⟩ = S(a-b, -(a-b)p - 2(α-β), p) / p`, which does not depend on `r`.
pub fn gauss_inner_product(p: usize, a: usize, alpha: usize, b: usize, beta: usize) -> Result<Complex64> {
    require_prime(p)?;
    if a % p == b % p {
        return Err(Error::Domain("Gauss-sum route needs a != b".into()));
    }
    let u = a as i64 - b as i64;
    let v = -u * p as i64 - 2 * (alpha as i64 - beta as i64);
    let s = gauss_sum(&GaussSumArgs { u, v: Real::from(v), w: p as i64 })?;
    Ok(s / p as f64)
}

/// `⟨aα; r | bβ; r⟩` from the columns of `H_ra` and `H_rb`.
pub fn direct_inner_product(d: usize, r: Rational64, a: usize, alpha: usize, b: usize, beta: usize) -> Result<Complex64> {
    let ha = hra_matrix(&QdftParams::exact(d, r, a as i64)?)?.to_complex();
    let hb = hra_matrix(&QdftParams::exact(d, r, b as i64)?)?.to_complex();
    Ok(ha.column(alpha).dotc(&hb.column(beta)))
}

/// `F_ra† F_rb` and its Hadamard verdict. Any `d ≥ 2` is accepted so that
/// composite dimensions can serve as counterexamples.
pub fn product_hadamard(d: usize, r: Rational64, a: usize, b: usize) -> Result<(MatrixProduct, HadamardReport)> {
    let fa = fra_matrix(&QdftParams::exact(d, r, a as i64)?)?;
    let fb = fra_matrix(&QdftParams::exact(d, r, b as i64)?)?;
    let prod = fa.adjoint().mul(&fb)?;
    let report = match &prod {
        MatrixProduct::Exact(m) => is_generalized_hadamard(&m.to_complex()),
        MatrixProduct::Complex(m) => is_generalized_hadamard(m),
    };
    Ok((prod, report))
}

fn kron_columns(u: &ComplexMatrix, i: usize, v: &ComplexMatrix, j: usize) -> ComplexVector {
    let d = u.nrows();
    ComplexVector::from_fn(d * d, |idx, _| u[(idx / d, i)] * v[(idx % d, j)])
}

fn w_basis(a: usize, b: usize) -> Result<Basis> {
    let zero = Rational64::from_integer(0);
    let ha = hra_matrix(&QdftParams::exact(2, zero, a as i64)?)?.to_complex();
    let hb = hra_matrix(&QdftParams::exact(2, zero, b as i64)?)?.to_complex();
    let ket = |al: usize, be: usize| kron_columns(&ha, al, &hb, be);
    let cols: Vec<ComplexVector> = if a == b {
        vec![ket(0, 0), ket(0, 1), ket(1, 0), ket(1, 1)]
    } else {
        let lambda = Complex64::new(0.5, -0.5);
        let mu = Complex64::new(0.5, 0.5);
        vec![
            ket(0, 0) * lambda + ket(1, 1) * mu,
            ket(0, 0) * mu + ket(1, 1) * lambda,
            ket(0, 1) * lambda + ket(1, 0) * mu,
            ket(0, 1) * mu + ket(1, 0) * lambda,
        ]
    };
    let m = ComplexMatrix::from_columns(&cols);
    let label = BasisLabel::W { a, b };
    Ok(match PhaseMatrix::snap(&m, Amplitude::InvSqrtDim, 4, 1e-12) {
        Some(exact) => Basis::from_exact(label, exact),
        None => Basis::from_complex(label, m),
    })
}

/// Computational basis, then `W_00`, `W_11`, `W_01`, `W_10` in dimension 4.
pub fn mub_dim4() -> Result<MubSet> {
    Ok(MubSet {
        dim: 4,
        bases: vec![computational(4), w_basis(0, 0)?, w_basis(1, 1)?, w_basis(0, 1)?, w_basis(1, 0)?],
        declared_complete: true,
    })
}

/// `|det A|` with `A_kl` the amplitude of `|k⟩ ⊗ |l⟩`.
pub fn entanglement_det(state: &ComplexVector, d: usize) -> Result<f64> {
    if state.len() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, found: state.len() });
    }
    let a = ComplexMatrix::from_fn(d, d, |k, l| state[k * d + l]);
    Ok(a.determinant().norm())
}

/// A set of `p - 1` pairwise commuting generalized Pauli operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingClass {
    pub label: usize,
    pub members: Vec<PauliIndex>,
}

/// `V_0 = {X^0 Z^a}`, `V_1 = {X^a Z^0}`, `V_(k+1) = {X^a Z^(ka)}` for `k = 1..p-1`,
/// members listed by increasing `a`.
pub fn commuting_classes(p: usize) -> Result<Vec<CommutingClass>> {
    require_prime(p)?;
    let mut classes = vec![
        CommutingClass { label: 0, members: (1..p).map(|a| PauliIndex { a: 0, b: a }).collect() },
        CommutingClass { label: 1, members: (1..p).map(|a| PauliIndex { a, b: 0 }).collect() },
    ];
    for k in 1..p {
        classes.push(CommutingClass {
            label: k + 1,
            members: (1..p).map(|a| PauliIndex { a, b: (k * a) % p }).collect(),
        });
    }
    Ok(classes)
}

/// True when every pair of members commutes, checked by exact matrix products.
pub fn class_is_abelian(p: usize, class: &CommutingClass) -> bool {
    let mats: Vec<PhaseMatrix> = class.members.iter().map(|&i| u_ab(p, i)).collect();
    mats.iter().enumerate().all(|(i, u)| {
        mats[i + 1..]
            .iter()
            .all(|v| u.mul_exact(v).ok() == v.mul_exact(u).ok())
    })
}

/// Largest eigenvector residual of the columns of `H_0a` (or the computational
/// basis when `a == p`) under every member of the class `V_(a+1)` (or `V_0`).
pub fn class_eigenvector_residual(p: usize, a: usize) -> Result<f64> {
    let classes = commuting_classes(p)?;
    let (basis, class) = if a == p {
        (PhaseMatrix::identity(p).to_complex(), &classes[0])
    } else {
        let h = hra_matrix(&QdftParams::exact(p, Rational64::from_integer(0), a as i64)?)?;
        (h.to_complex(), &classes[a + 1])
    };
    let mut worst = 0.0f64;
    for &idx in &class.members {
        let u = u_ab(p, idx).to_complex();
        for col in 0..p {
            let v: ComplexVector = basis.column(col).into_owned();
            let uv = &u * &v;
            let lambda = v.dotc(&uv);
            worst = worst.max((uv - v * lambda).norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionReport {
    pub disjoint_cover: bool,
    pub abelian: bool,
    pub independent: bool,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint_cover && self.abelian && self.independent
    }
}

/// The `p + 1` classes partition the non-identity Pauli operators, each class
/// is abelian, and the `p² - 1` operators are trace-orthogonal (exactly).
pub fn sl_partition_check(p: usize) -> Result<PartitionReport> {
    let classes = commuting_classes(p)?;
    let mut seen = BTreeSet::new();
    let mut disjoint = true;
    for c in &classes {
        disjoint &= c.members.len() == p - 1;
        for &m in &c.members {
            disjoint &= seen.insert(m);
        }
    }
    let expected: BTreeSet<PauliIndex> = (0..p)
        .flat_map(|a| (0..p).map(move |b| PauliIndex { a, b }))
        .filter(|i| (i.a, i.b) != (0, 0))
        .collect();
    let disjoint_cover = disjoint && seen == expected;
    let abelian = classes.par_iter().all(|c| class_is_abelian(p, c));
    let ops: Vec<(PauliIndex, PhaseMatrix)> = expected.iter().map(|&i| (i, u_ab(p, i))).collect();
    let independent = ops.par_iter().all(|(i, u)| {
        let ua = u.adjoint();
        ops.iter().all(|(j, v)| {
            let tr = ua.mul_exact(v).expect("monomial").trace_sum();
            trace_deviation(&tr, if i == j { p as i64 } else { 0 }) == 0.0
        })
    });
    Ok(PartitionReport { disjoint_cover, abelian, independent })
}

/// Equality of two vectors up to a global phase, aligned on the entry of
/// largest modulus of `u`.
pub fn equal_up_to_phase(u: &ComplexVector, v: &ComplexVector, tol: f64) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some((i, _)) = u.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())) else {
        return true;
    };
    if u[i].norm() < tol {
        return v.iter().all(|z| z.norm() < tol);
    }
    if v[i].norm() < tol {
        return false;
    }
    let phase = (v[i] / u[i]) / (v[i] / u[i]).norm();
    u.iter().zip(v.iter()).all(|(a, b)| (a * phase - b).norm() < tol)
}
