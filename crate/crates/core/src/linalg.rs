//! Dense complex matrices and a few residual measures.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entrywise modulus of `a - b`; infinite when the shapes differ.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |(M†M - I)_ij|`.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let g = m.adjoint() * m;
    max_abs_diff(&g, &ComplexMatrix::identity(m.nrows(), m.ncols()))
}

pub fn off_diagonal_residual(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for ((r, c), z) in m.iter().enumerate().map(|(i, z)| ((i % m.nrows(), i / m.nrows()), z)) {
        if r != c {
            worst = worst.max(z.norm());
        }
    }
    worst
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

pub fn diagonal(entries: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&ComplexVector::from_column_slice(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals() {
        let i = ComplexMatrix::identity(3, 3);
        assert_eq!(unitarity_residual(&i), 0.0);
        assert_eq!(off_diagonal_residual(&i), 0.0);
        let mut m = i.clone();
        m[(0, 2)] = cx(0.0, 0.5);
        assert_eq!(off_diagonal_residual(&m), 0.5);
        assert_eq!(max_abs_diff(&m, &i), 0.5);
        assert!(max_abs_diff(&i, &ComplexMatrix::identity(2, 2)).is_infinite());
    }

    #[test]
    fn pauli_anticommute() {
        let x = ComplexMatrix::from_row_slice(2, 2, &[cx(0., 0.), cx(1., 0.), cx(1., 0.), cx(0., 0.)]);
        let z = diagonal(&[cx(1., 0.), cx(-1., 0.)]);
        assert_eq!(max_abs(&anticommutator(&x, &z)), 0.0);
        assert_eq!(max_abs(&commutator(&x, &x)), 0.0);
    }
}
