//! Exact operator algebra and finite-volume spectra for the extended
//! Nicolai supersymmetric fermion lattice model.
//!
//! * [`car`]: normal-ordered polynomials in fermion creation and
//!   annihilation operators, with products, adjoints, grading, shifts and
//!   graded commutators.
//! * [`model`]: supercharges, local Hamiltonians, superderivations and the
//!   witness operators `O_k` with `δ_g(O_k) = g`.
//! * [`fock`]: sparse matrix representation on the Fock space of a finite
//!   site window, operator norms and vector-state expectations.
//! * [`spectra`]: ground energies per fermion-number sector, energy-density
//!   scans and the finite-volume SUSY-breaking bound.
//!
//! Data-parallel loops go through [`exec`]; with the `parallel` feature
//! disabled every loop runs sequentially.

pub mod car;
pub mod coeff;
pub mod exec;
pub mod fock;
pub mod model;
pub mod spectra;

pub use car::{CarPolynomial, Interval, Monomial, Parity, SiteIndex};
pub use coeff::{Coeff, Exact};
pub use exec::Execution;
