//! Exactly-solvable quantum mechanics of the omega-family oscillators
//! (harmonic, free, inverted) and SUSY/Darboux partner construction for the
//! inverted oscillator.
//!
//! The crate is organized around six layers:
//!
//! * [`specfun`] — complex 1F1, log-gamma and Hermite polynomials;
//! * [`oscillator`] — closed-form solutions of the stationary Schrodinger
//!   equation for omega in {1, 0, i}, their asymptotics, Dirac normalization
//!   and windowed inner products;
//! * [`ladder`] — factorization operators and the four Hermite ladders;
//! * [`susy`] — first- and second-order Darboux transformations, including
//!   the non-singular complex case;
//! * [`algebra`] — the intertwining operator B+, transformed eigenfunctions
//!   and the polynomial ladder algebra of the partner Hamiltonian;
//! * [`diagnostics`] — machine-readable verification suites.

mod dd;
pub mod algebra;
pub mod diagnostics;
pub mod error;
pub mod jet;
pub mod ladder;
pub mod oscillator;
pub mod quad;
pub mod specfun;
pub mod susy;
pub mod wave;

pub use diagnostics::{CheckResult, DiagnosticReport};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use oscillator::{Combo, OscillatorKind, SolutionSpec};
pub use specfun::SeriesControl;
pub use wave::{WaveEval, WaveFunction};
