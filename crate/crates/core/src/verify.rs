//! Invariant sweeps over every module, shared by the CLI and the test suites.
//!
//! Each check evaluates one identity over a grid of parameter tuples (in
//! parallel) and records the worst residual. Exact checks report `0` or `1`
//! against a tolerance of `0`. Results are listed in a fixed order regardless
//! of scheduling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::linalg::{max_abs_diff, unitarity_residual, ComplexMatrix, ComplexVector};
use crate::mub::{
    class_eigenvector_residual, direct_inner_product, entanglement_det, gauss_inner_product, is_prime, mub_dim4,
    mub_prime, sl_partition_check, three_mub,
};
use crate::phase::{ExactPhase, PhaseMatrix};
use crate::qdft::{
    det_fra, det_fra_direct, dra_matrix, fra_complex, fra_matrix, forward, inverse, parseval_check,
    symmetry_relations_check, trace_fra, trace_fra_direct, QdftParams,
};
use crate::quon_su2::{
    build_vra_quonic, eigen_equation_residual, overlap_direct, overlap_same_a, pseudo_invariance_residual, quon_rep,
    restrict_to_j, su2_generators,
};
use crate::weyl_pauli::{
    diagonalization_residual, pauli_compose, pauli_trace_orthogonality, regular_representation_check,
    sine_commutator_check, uab_commutators, vra_matrix, weyl_relation_check, x_matrix, z_matrix,
    PauliGroupElement, PauliIndex, SineIndex,
};
use crate::wigner_racah::{cg_alpha, cg_alpha_by_basis_change, fbar, fbar_conjugation_factor, wigner_3jm, HalfInt};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Weyl,
    Qdft,
    Su2,
    Mub,
    Wigner,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Weyl => "weyl",
            Suite::Qdft => "qdft",
            Suite::Su2 => "su2",
            Suite::Mub => "mub",
            Suite::Wigner => "wigner",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "weyl" => Ok(Suite::Weyl),
            "qdft" => Ok(Suite::Qdft),
            "su2" => Ok(Suite::Su2),
            "mub" => Ok(Suite::Mub),
            "wigner" => Ok(Suite::Wigner),
            other => Err(Error::Domain(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub d_max: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { suite: Suite::All, d_max: 8, seed: 20_090_525 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn float_check<T: Sync>(
    suite: Suite,
    name: &str,
    cases: &[T],
    tolerance: f64,
    f: impl Fn(&T) -> f64 + Sync + Send,
) -> CheckResult {
    let worst = cases
        .par_iter()
        .map(|c| {
            let r = f(c);
            if r.is_nan() {
                f64::INFINITY
            } else {
                r
            }
        })
        .reduce(|| 0.0, f64::max);
    CheckResult {
        suite,
        name: name.to_string(),
        cases: cases.len(),
        max_residual: worst,
        tolerance,
        passed: worst <= tolerance,
    }
}

fn exact_check<T: Sync>(suite: Suite, name: &str, cases: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> CheckResult {
    float_check(suite, name, cases, 0.0, |c| if f(c) { 0.0 } else { 1.0 })
}

fn rationals(list: &[(i64, i64)]) -> Vec<Rational64> {
    list.iter().map(|&(n, d)| Rational64::new(n, d)).collect()
}

fn grid_dar(dims: impl Iterator<Item = usize>, rs: &[Rational64]) -> Vec<(usize, usize, Rational64)> {
    let mut out = Vec::new();
    for d in dims {
        for a in 0..d {
            for &r in rs {
                out.push((d, a, r));
            }
        }
    }
    out
}

fn params(d: usize, r: Rational64, a: usize) -> QdftParams {
    QdftParams::exact(d, r, a as i64).expect("valid parameters")
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> ComplexVector {
    ComplexVector::from_fn(d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> ComplexVector {
    let v = random_vector(rng, d);
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Runs the requested suites.
pub fn run(config: VerifyConfig) -> VerifyReport {
    let d_max = config.d_max.max(2);
    let mut checks = Vec::new();
    let wants = |s: Suite| config.suite == Suite::All || config.suite == s;
    if wants(Suite::Weyl) {
        checks.extend(weyl_suite(d_max, config.seed));
    }
    if wants(Suite::Qdft) {
        checks.extend(qdft_suite(d_max, config.seed));
    }
    if wants(Suite::Su2) {
        checks.extend(su2_suite(d_max));
    }
    if wants(Suite::Mub) {
        checks.extend(mub_suite(d_max, config.seed));
    }
    if wants(Suite::Wigner) {
        checks.extend(wigner_suite(d_max));
    }
    VerifyReport { config, checks }
}

const EXHAUSTIVE_D: usize = 8;

fn weyl_suite(d_max: usize, seed: u64) -> Vec<CheckResult> {
    let s = Suite::Weyl;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5745_594c);
    let dims = 2..=d_max;
    let mut out = Vec::new();

    let mut mn = Vec::new();
    for d in dims.clone() {
        if d <= EXHAUSTIVE_D {
            for m in 0..d as i64 {
                for n in 0..d as i64 {
                    mn.push((d, m, n));
                }
            }
        } else {
            for _ in 0..64 {
                mn.push((d, rng.gen_range(-(d as i64)..2 * d as i64), rng.gen_range(-(d as i64)..2 * d as i64)));
            }
        }
    }
    out.push(exact_check(s, "X^m Z^n = q^mn Z^n X^m, cyclicity, DFT conjugation", &mn, |&(d, m, n)| {
        weyl_relation_check(d, m, n).unwrap_or(false)
    }));

    let rs = rationals(&[(0, 1), (1, 1), (1, 4)]);
    let grid = grid_dar(dims.clone(), &rs);
    out.push(exact_check(s, "V_ra Z = q Z V_ra", &grid, |&(d, a, r)| {
        let v = vra_matrix(d, r, a);
        let z = z_matrix(d);
        v.mul_exact(&z).ok() == z.mul_exact(&v).ok().map(|m| m.scaled(ExactPhase::q_pow(d, 1)))
    }));
    out.push(exact_check(s, "V_ra X = q^-a (P_r X P_r† X†) X V_ra", &grid, |&(d, a, r)| {
        x_relation_general(d, r, a).unwrap_or(false)
    }));
    let trivial_corner: Vec<_> = grid.iter().copied().filter(|&(d, _, r)| corner_is_trivial(d, r)).collect();
    out.push(exact_check(s, "V_ra X = q^-a X V_ra where exp(iπ(d-1)r) = 1", &trivial_corner, |&(d, a, r)| {
        x_relation(d, r, a).unwrap_or(false)
    }));

    out.push(exact_check(s, "V_ra = P_r X Z^a and (V_ra)^d = exp(iπ(d-1)(r+a)) I", &grid, |&(d, a, r)| {
        let v = vra_matrix(d, r, a);
        let pxz = crate::weyl_pauli::pr_matrix(d, r)
            .mul_exact(&x_matrix(d))
            .and_then(|m| m.mul_exact(&z_matrix(d).pow(a as u32)?));
        let scalar = ExactPhase::half_turns((r + a as i64) * (d as i64 - 1));
        pxz.ok() == Some(v.clone()) && v.pow(d as u32).ok() == Some(PhaseMatrix::identity(d).scaled(scalar))
    }));

    let mut vmzn = Vec::new();
    for (d, a, r) in grid_dar(2..=d_max.min(EXHAUSTIVE_D), &rs) {
        for m in 0..=d as u32 {
            vmzn.push((d, a, r, m));
        }
    }
    out.push(exact_check(s, "(V_ra)^m Z^n = q^mn Z^n (V_ra)^m and power law", &vmzn, |&(d, a, r, m)| {
        let vm = vra_matrix(d, r, a).pow(m).unwrap();
        let vr0m = vra_matrix(d, r, 0).pow(m).unwrap();
        let law = vr0m
            .mul_exact(&z_matrix(d).pow(a as u32 * m).unwrap())
            .unwrap()
            .scaled(ExactPhase::root_of_unity(d, Rational64::new(-((m * (m.max(1) - 1)) as i64) * a as i64, 2)));
        let ok_law = vm == law;
        let ok_comm = (0..d as u32).all(|n| {
            let zn = z_matrix(d).pow(n).unwrap();
            vm.mul_exact(&zn).unwrap() == zn.mul_exact(&vm).unwrap().scaled(ExactPhase::q_pow(d, (m * n) as i64))
        });
        ok_law && ok_comm
    }));

    let nil: Vec<(usize, Rational64)> = dims.clone().flat_map(|d| rs.iter().map(move |&r| (d, r))).collect();
    out.push(exact_check(s, "exp(-iπ(d-1)r) (V_r0)^d = Z^d = I", &nil, |&(d, r)| {
        let id = PhaseMatrix::identity(d);
        let v = vra_matrix(d, r, 0).pow(d as u32).unwrap();
        v.scaled(ExactPhase::half_turns(-r * (d as i64 - 1))) == id && z_matrix(d).pow(d as u32).unwrap() == id
    }));

    let ds: Vec<usize> = dims.clone().collect();
    out.push(float_check(s, "tr(u_ab† u_a'b') = d δ δ (exact trace sums)", &ds, 0.0, |&d| {
        pauli_trace_orthogonality(d).unwrap_or(f64::INFINITY)
    }));

    let mut comm = Vec::new();
    for d in dims.clone() {
        if d <= EXHAUSTIVE_D {
            for a in 0..d {
                for b in 0..d {
                    for a2 in 0..d {
                        for b2 in 0..d {
                            comm.push((d, PauliIndex { a, b }, PauliIndex { a: a2, b: b2 }));
                        }
                    }
                }
            }
        } else {
            for _ in 0..200 {
                let mut idx = || PauliIndex { a: rng.gen_range(0..d), b: rng.gen_range(0..d) };
                comm.push((d, idx(), idx()));
            }
        }
    }
    out.push(exact_check(s, "commutator and anticommutator of u_ab", &comm, |&(d, i, j)| {
        uab_commutators(d, i, j)
            .map(|r| r.commutator_ok && r.anticommutator_ok && r.selection_rule_ok)
            .unwrap_or(false)
    }));

    let mut triples = Vec::new();
    for d in dims.clone() {
        for _ in 0..200 {
            let mut g = || PauliGroupElement {
                a: rng.gen_range(0..d),
                b: rng.gen_range(0..d),
                c: rng.gen_range(0..d),
            };
            triples.push((d, g(), g(), g()));
        }
    }
    out.push(exact_check(s, "Pauli group composition law matches matrix products", &triples, |&(d, g, h, k)| {
        let gh = pauli_compose(d, g, h);
        let ghk = pauli_compose(d, gh, k);
        let m = g.matrix(d).mul_exact(&h.matrix(d)).and_then(|x| x.mul_exact(&k.matrix(d)));
        m.ok() == Some(ghk.matrix(d)) && pauli_compose(d, g, pauli_compose(d, h, k)) == ghk
    }));

    let mut sine = Vec::new();
    for d in dims.clone() {
        if d <= EXHAUSTIVE_D {
            for m1 in -2..=2 {
                for m2 in -2..=2 {
                    for n1 in -2..=2 {
                        for n2 in -2..=2 {
                            sine.push((d, SineIndex::new(m1, m2), SineIndex::new(n1, n2)));
                        }
                    }
                }
            }
        } else {
            for _ in 0..200 {
                let mut si = || SineIndex::new(rng.gen_range(-20..20), rng.gen_range(-20..20));
                sine.push((d, si(), si()));
            }
        }
    }
    out.push(exact_check(s, "T_m T_n = q^(-m×n/2) T_(m+n)", &sine, |&(d, m, n)| {
        sine_commutator_check(d, m, n).map(|r| r.product_exact).unwrap_or(false)
    }));
    out.push(float_check(s, "[T_m, T_n] = -2i sin(π m×n/d) T_(m+n)", &sine, 1e-12, |&(d, m, n)| {
        sine_commutator_check(d, m, n).map(|r| r.commutator_residual).unwrap_or(f64::INFINITY)
    }));

    out.push(exact_check(s, "X carries the regular representation", &ds, |&d| {
        regular_representation_check(d).unwrap_or(false)
    }));

    let rs2 = rationals(&[(0, 1), (1, 2)]);
    let diag = grid_dar(dims, &rs2);
    out.push(float_check(s, "H_ra† V_ra H_ra diagonal with eigenvalues q^((d-1)(r+a)/2-α)", &diag, 1e-10, |&(d, a, r)| {
        diagonalization_residual(d, r, a).map(|(o, g)| o.max(g)).unwrap_or(f64::INFINITY)
    }));
    out
}

fn qdft_suite(d_max: usize, seed: u64) -> Vec<CheckResult> {
    let s = Suite::Qdft;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5144_4654);
    let dims = 2..=d_max;
    let mut out = Vec::new();

    let rs = rationals(&[(0, 1), (1, 2), (1, 1), (2, 3)]);
    let grid = grid_dar(dims.clone(), &rs);
    out.push(float_check(s, "F_ra unitary", &grid, 1e-10, |&(d, a, r)| {
        unitarity_residual(&fra_complex(&params(d, r, a)))
    }));
    out.push(exact_check(s, "F_ra = D_ra F exactly", &grid, |&(d, a, r)| {
        let f = fra_matrix(&params(d, Rational64::from_integer(0), 0)).unwrap();
        dra_matrix(&params(d, r, a)).unwrap().mul_exact(&f).ok() == fra_matrix(&params(d, r, a)).ok()
    }));
    out.push(exact_check(s, "H_ra rows are reversed F_ra rows", &grid, |&(d, a, r)| {
        let p = params(d, r, a);
        crate::qdft::hra_matrix(&p).ok() == fra_matrix(&p).ok().map(|f| f.reverse_rows())
    }));

    let r01 = rationals(&[(0, 1), (1, 1)]);
    let sym = grid_dar(2..=d_max.min(12), &r01);
    out.push(exact_check(s, "row symmetry relations of F_ra", &sym, |&(d, a, r)| {
        symmetry_relations_check(&params(d, r, a)).unwrap_or(false)
    }));

    let ds: Vec<usize> = (2..=d_max.min(16)).collect();
    out.push(float_check(s, "F^4 = I", &ds, 1e-10, |&d| {
        let f = fra_complex(&params(d, Rational64::from_integer(0), 0));
        let f2 = &f * &f;
        max_abs_diff(&(&f2 * &f2), &ComplexMatrix::identity(d, d))
    }));

    let rt = rationals(&[(0, 1), (1, 2), (1, 1)]);
    let tgrid = grid_dar(dims.clone(), &rt);
    out.push(float_check(s, "trace via Gauss sum equals direct trace", &tgrid, 1e-10, |&(d, a, r)| {
        let p = params(d, r, a);
        (trace_fra(&p) - trace_fra_direct(&p)).norm()
    }));

    let dgrid = grid_dar(2..=d_max.min(10), &rt);
    out.push(float_check(s, "det F_ra = exp(iπ(d²-1)a/6) det F", &dgrid, 1e-9, |&(d, a, r)| {
        (det_fra(d, a).unwrap() - det_fra_direct(&params(d, r, a))).norm()
    }));

    let mut signals = Vec::new();
    for d in dims {
        for _ in 0..8 {
            let a1 = rng.gen_range(0..d);
            let a2 = rng.gen_range(0..d);
            let r1 = Rational64::new(rng.gen_range(-6..6), rng.gen_range(1..5));
            let r2 = Rational64::new(rng.gen_range(-6..6), rng.gen_range(1..5));
            signals.push((d, a1, r1, a2, r2, random_vector(&mut rng, d), random_vector(&mut rng, d)));
        }
    }
    out.push(float_check(s, "Parseval sums agree and do not depend on (r, a)", &signals, 1e-12, |c| {
        let (d, a1, r1, a2, r2, x, x2) = c;
        let (l1, rhs) = parseval_check(x, x2, &params(*d, *r1, *a1)).unwrap();
        let (l2, _) = parseval_check(x, x2, &params(*d, *r2, *a2)).unwrap();
        (l1 - rhs).norm().max((l2 - rhs).norm())
    }));
    out.push(float_check(s, "inverse(forward(x)) = x", &signals, 1e-12, |c| {
        let (d, a1, r1, _, _, x, _) = c;
        let p = params(*d, *r1, *a1);
        let back = inverse(&forward(x, &p).unwrap(), &p).unwrap();
        (back - x).camax()
    }));
    out
}

fn su2_suite(d_max: usize) -> Vec<CheckResult> {
    let s = Suite::Su2;
    let mut out = Vec::new();
    let kmax_small = d_max.min(8);
    let kmax = d_max.min(12);

    let ks: Vec<usize> = (2..=kmax_small).collect();
    out.push(float_check(s, "quon algebra relations", &ks, 1e-13, |&k| {
        let rep = quon_rep(k).unwrap();
        rep.x_relations().max().max(rep.y_relations().max())
    }));

    let rs = rationals(&[(0, 1), (1, 1), (1, 3)]);
    let grid = grid_dar(2..=kmax_small, &rs);
    out.push(float_check(s, "restricted quonic v_ra equals V_ra", &grid, 1e-12, |&(k, a, r)| {
        let v = restrict_to_j(&build_vra_quonic(k, r, a).unwrap(), k - 1).unwrap();
        max_abs_diff(&v, &vra_matrix(k, r, a).to_complex())
    }));
    out.push(float_check(s, "v_ra eigenvalue equation", &grid, 1e-12, |&(k, a, r)| {
        eigen_equation_residual(k - 1, r, a).unwrap()
    }));
    out.push(float_check(s, "quonic (v_ra)^k = exp(iπ(k-1)(r+a)) I", &grid, 1e-12, |&(k, a, r)| {
        let v = build_vra_quonic(k, r, a).unwrap();
        let vk = (1..k).fold(v.clone(), |acc, _| acc * &v);
        let scalar = ExactPhase::half_turns((r + a as i64) * (k as i64 - 1)).to_complex();
        max_abs_diff(&vk, &(ComplexMatrix::identity(k * k, k * k) * scalar))
    }));
    out.push(exact_check(s, "eigenbasis equals the columns of H_ra", &grid, |&(k, a, r)| {
        Some(crate::quon_su2::eigenbasis(k - 1, r, a)) == crate::qdft::hra_matrix(&params(k, r, a)).ok()
    }));
    let pgrid: Vec<(usize, usize, Rational64, i64)> =
        grid.iter().flat_map(|&(k, a, r)| (0..k as i64).map(move |p| (k, a, r, p))).collect();
    out.push(float_check(s, "P v_ra P† = exp(-iφ) v_ra", &pgrid, 1e-12, |&(k, a, r, p)| {
        pseudo_invariance_residual(k - 1, r, a, p).unwrap()
    }));

    let rs2 = rationals(&[(0, 1), (1, 2)]);
    let sgrid = grid_dar(2..=kmax, &rs2);
    out.push(float_check(s, "su(2) commutation relations", &sgrid, 1e-10, |&(k, a, r)| {
        su2_generators(k - 1, r, a).unwrap().closure_residual()
    }));
    out.push(float_check(s, "Casimir equals j(j+1) I", &sgrid, 1e-10, |&(k, a, r)| {
        let t = su2_generators(k - 1, r, a).unwrap();
        let j = (k - 1) as f64 / 2.0;
        max_abs_diff(&t.casimir(), &(ComplexMatrix::identity(k, k) * Complex64::new(j * (j + 1.0), 0.0)))
    }));
    out.push(float_check(s, "j₋ = j₊† and j_z Hermitian", &sgrid, 1e-12, |&(k, a, r)| {
        let t = su2_generators(k - 1, r, a).unwrap();
        max_abs_diff(&t.j_minus, &t.j_plus.adjoint()).max(max_abs_diff(&t.j_z, &t.j_z.adjoint()))
    }));

    let rs3 = rationals(&[(0, 1), (1, 2), (1, 1)]);
    let mut ov = Vec::new();
    for two_j in 1..=6usize.min(d_max.saturating_sub(1).max(1)) {
        for a in 0..=two_j {
            for &r in &rs3 {
                for &sv in &rs3 {
                    for alpha in 0..=two_j {
                        for beta in 0..=two_j {
                            ov.push((two_j, a, r, sv, alpha, beta));
                        }
                    }
                }
            }
        }
    }
    out.push(float_check(s, "sine-ratio overlap equals direct inner product", &ov, 1e-10, |&(tj, a, r, sv, al, be)| {
        (overlap_same_a(tj, r, sv, al, be) - overlap_direct(tj, r, sv, a, al, be)).norm()
    }));
    out
}

fn mub_suite(d_max: usize, seed: u64) -> Vec<CheckResult> {
    let s = Suite::Mub;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4d55_4253);
    let mut out = Vec::new();
    let primes: Vec<usize> = (2..=d_max).filter(|&p| is_prime(p as u64)).collect();
    let rs = rationals(&[(0, 1), (1, 1), (1, 2)]);
    let pr: Vec<(usize, Rational64)> = primes.iter().flat_map(|&p| rs.iter().map(move |&r| (p, r))).collect();

    out.push(float_check(s, "complete MUB sets in prime dimension", &pr, 1e-10, |&(p, r)| {
        let set = mub_prime(p, r).unwrap();
        if set.bases.len() != p + 1 {
            return f64::INFINITY;
        }
        set.max_deviation()
    }));
    out.push(float_check(s, "MUB bases orthonormal", &pr, 1e-12, |&(p, r)| {
        mub_prime(p, r).unwrap().max_orthonormality_residual()
    }));

    let mut tuples = Vec::new();
    for &p in &primes {
        for _ in 0..500 {
            let a = rng.gen_range(0..p);
            let b = (a + rng.gen_range(1..p)) % p;
            let r = rs[rng.gen_range(0..rs.len())];
            tuples.push((p, r, a, rng.gen_range(0..p), b, rng.gen_range(0..p)));
        }
    }
    out.push(float_check(s, "Gauss-sum inner product equals direct inner product", &tuples, 1e-10, |&(p, r, a, al, b, be)| {
        let g = gauss_inner_product(p, a, al, b, be).unwrap();
        let d = direct_inner_product(p, r, a, al, b, be).unwrap();
        (g - d).norm().max((g.norm() - 1.0 / (p as f64).sqrt()).abs())
    }));

    let composite: Vec<(usize, usize)> = [6usize, 10]
        .iter()
        .filter(|&&d| d <= d_max)
        .flat_map(|&d| (0..d).map(move |a| (d, a)))
        .collect();
    out.push(float_check(s, "B_0a, B_0(a+1), computational are three MUBs", &composite, 1e-10, |&(d, a)| {
        three_mub(d, a).unwrap().max_deviation()
    }));

    if d_max >= 4 {
        out.push(float_check(s, "five MUBs in dimension 4", &[()], 1e-12, |_| {
            let set = mub_dim4().unwrap();
            let mut worst = set.max_deviation();
            for (k, b) in set.bases[1..].iter().enumerate() {
                let target = if k < 2 { 0.0 } else { 0.5 };
                for i in 0..4 {
                    worst = worst.max((entanglement_det(&b.vector(i), 2).unwrap() - target).abs());
                }
            }
            worst
        }));
    }

    out.push(exact_check(s, "commuting classes partition the Pauli operators", &primes, |&p| {
        sl_partition_check(p).map(|r| r.passed()).unwrap_or(false)
    }));
    let cls: Vec<(usize, usize)> = primes.iter().flat_map(|&p| (0..=p).map(move |a| (p, a))).collect();
    out.push(float_check(s, "MUB vectors are common eigenvectors of their class", &cls, 1e-10, |&(p, a)| {
        class_eigenvector_residual(p, a).unwrap()
    }));

    let mut states = Vec::new();
    for d in [2usize, 3] {
        for _ in 0..1000 {
            states.push((d, random_unit(&mut rng, d * d)));
        }
    }
    out.push(float_check(s, "|det A| <= d^(-d/2)", &states, 1e-12, |(d, v)| {
        let bound = (*d as f64).powf(-(*d as f64) / 2.0);
        (entanglement_det(v, *d).unwrap() - bound).max(0.0)
    }));
    out
}

fn wigner_suite(_d_max: usize) -> Vec<CheckResult> {
    let s = Suite::Wigner;
    let mut out = Vec::new();
    let h = HalfInt::from_doubled;

    let mut pairs = Vec::new();
    for j1 in 0..=6 {
        for j2 in 0..=6 {
            pairs.push((h(j1), h(j2)));
        }
    }
    out.push(float_check(s, "3-jm orthogonality", &pairs, 1e-10, |&(j1, j2)| {
        let mut js = Vec::new();
        let mut j = (j1.doubled() - j2.doubled()).abs();
        while j <= j1.doubled() + j2.doubled() {
            js.push(h(j));
            j += 2;
        }
        let mut worst = 0.0f64;
        for &ja in &js {
            for &jb in &js {
                for ma in ja.projections() {
                    for mb in jb.projections() {
                        let mut sum = 0.0;
                        for m1 in j1.projections() {
                            for m2 in j2.projections() {
                                let x = wigner_3jm([j1, j2, ja], [m1, m2, ma]).unwrap();
                                let y = wigner_3jm([j1, j2, jb], [m1, m2, mb]).unwrap();
                                sum += ja.multiplicity() as f64 * x * y;
                            }
                        }
                        let expected = if ja == jb && ma == mb { 1.0 } else { 0.0 };
                        worst = worst.max((sum - expected).abs());
                    }
                }
            }
        }
        worst
    }));

    let triples = fbar_triples(4);
    out.push(float_check(s, "f̄ column permutations", &triples, 1e-10, |&j| {
        let sign = if ((j[0].doubled() + j[1].doubled() + j[2].doubled()) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let mut worst = 0.0f64;
        for al in alphas(j) {
            let f = fbar(j, al).unwrap();
            let cyc = fbar([j[1], j[2], j[0]], [al[1], al[2], al[0]]).unwrap();
            let swap = fbar([j[1], j[0], j[2]], [al[1], al[0], al[2]]).unwrap();
            worst = worst.max((cyc - f).norm()).max((swap - f * sign).norm());
        }
        worst
    }));
    out.push(float_check(s, "f̄ complex conjugation", &triples, 1e-10, |&j| {
        alphas(j)
            .into_iter()
            .map(|al| {
                let f = fbar(j, al).unwrap();
                (f.conj() - fbar_conjugation_factor(j, al) * f).norm()
            })
            .fold(0.0, f64::max)
    }));
    out.push(float_check(s, "cg_alpha equals the basis-changed Clebsch-Gordan array", &triples, 1e-10, |&j| {
        let table = cg_alpha_by_basis_change(j[0], j[1], j[2]).unwrap();
        let k2 = j[1].multiplicity();
        alphas(j)
            .into_iter()
            .map(|al| {
                let c = cg_alpha(j[0], j[1], al[0], al[1], j[2], al[2]).unwrap();
                (c - table[(al[0] * k2 + al[1], al[2])]).norm()
            })
            .fold(0.0, f64::max)
    }));
    out
}

/// `exp(iπ(d-1)r) = 1`, the case where `P_r` commutes with `X`.
pub fn corner_is_trivial(d: usize, r: Rational64) -> bool {
    ExactPhase::half_turns(r * (d as i64 - 1)) == ExactPhase::ONE
}

/// `V_ra X = q^-a X V_ra` evaluated exactly.
pub fn x_relation(d: usize, r: Rational64, a: usize) -> Result<bool> {
    let (v, x) = (vra_matrix(d, r, a), x_matrix(d));
    Ok(v.mul_exact(&x)? == x.mul_exact(&v)?.scaled(ExactPhase::q_pow(d, -(a as i64))))
}

/// `V_ra X = q^-a D X V_ra` with the diagonal `D = P_r X P_r† X†`, valid for every `r`.
pub fn x_relation_general(d: usize, r: Rational64, a: usize) -> Result<bool> {
    let (v, x) = (vra_matrix(d, r, a), x_matrix(d));
    let p = crate::weyl_pauli::pr_matrix(d, r);
    let dr = p.mul_exact(&x)?.mul_exact(&p.adjoint())?.mul_exact(&x.adjoint())?;
    Ok(v.mul_exact(&x)? == dr.mul_exact(&x)?.mul_exact(&v)?.scaled(ExactPhase::q_pow(d, -(a as i64))))
}

/// All coupled triples with doubled labels up to `two_max`.
pub fn fbar_triples(two_max: i32) -> Vec<[HalfInt; 3]> {
    let mut out = Vec::new();
    for a in 0..=two_max {
        for b in 0..=two_max {
            for c in 0..=two_max {
                let j = [HalfInt::from_doubled(a), HalfInt::from_doubled(b), HalfInt::from_doubled(c)];
                if crate::wigner_racah::triangle(j[0], j[1], j[2]) {
                    out.push(j);
                }
            }
        }
    }
    out
}

fn alphas(j: [HalfInt; 3]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..j[0].multiplicity() {
        for b in 0..j[1].multiplicity() {
            for c in 0..j[2].multiplicity() {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke() {
        let report = run(VerifyConfig { suite: Suite::All, d_max: 3, seed: 1 });
        for c in &report.checks {
            assert!(c.passed, "{} failed: {}", c.name, c.max_residual);
        }
        assert!(report.checks.len() > 20);
    }

    #[test]
    fn deterministic_order() {
        let cfg = VerifyConfig { suite: Suite::Weyl, d_max: 4, seed: 7 };
        let a: Vec<String> = run(cfg).checks.into_iter().map(|c| c.name).collect();
        let b: Vec<String> = run(cfg).checks.into_iter().map(|c| c.name).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn x_relation_needs_trivial_corner() {
        let one = Rational64::from_integer(1);
        assert!(!corner_is_trivial(2, one));
        assert!(!x_relation(2, one, 0).unwrap());
        assert!(x_relation_general(2, one, 0).unwrap());
        assert!(x_relation(3, one, 2).unwrap());
        assert!(x_relation(4, Rational64::from_integer(0), 3).unwrap());
    }

    #[test]
    fn suite_names() {
        for s in [Suite::All, Suite::Weyl, Suite::Qdft, Suite::Su2, Suite::Mub, Suite::Wigner] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
