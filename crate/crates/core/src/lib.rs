//! Quadratic discrete Fourier transforms, Weyl pairs, generalized Pauli
//! operators and mutually unbiased bases.
//!
//! Constructions that only involve roots of unity are carried out exactly with
//! [`phase::ExactPhase`] and [`phase::PhaseMatrix`]; norms, determinants,
//! eigenvalues and Wigner symbols use dense `f64` complex linear algebra.
//!
//! ```
//! use num_rational::Rational64;
//! use quadft::qdft::{fra_matrix, QdftParams};
//!
//! let p = QdftParams::exact(6, Rational64::from_integer(0), 2).unwrap();
//! let f = fra_matrix(&p).unwrap();
//! assert_eq!(f.dim(), 6);
//! ```

mod error;
pub mod linalg;
pub mod mub;
pub mod phase;
pub mod qdft;
pub mod quon_su2;
pub mod verify;
pub mod weyl_pauli;
pub mod wigner_racah;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use phase::{phase_from_fraction, Amplitude, ExactPhase, MatrixProduct, PhaseMatrix, PhaseSum, Real};
