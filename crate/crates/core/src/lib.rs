//! Numerical laboratory for random-unitary ensembles built from basis
//! permutations, binary phases and Clifford unitaries.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor`]: dense complex operators with register layouts.
//! * [`symgroup`]: partitions, characters, the permutation representation and
//!   the exact Haar twirl.
//! * [`ensembles`]: samplers and enumerators for Haar, Clifford, permutation,
//!   phase, k-wise independent and keyed families.
//! * [`moments`]: twirling channels, the distinct subspace and superoperators.
//! * [`verify`]: experiments checking identities and finite-dimension bounds.
//! * [`runner`]: the experiment registry, suites and report files.
//!
//! Operator algebra is generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix it to `f64`, which is what the
//! tolerances in [`verify`] assume.

pub mod ensembles;
pub mod error;
pub mod moments;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod seed;
pub mod symgroup;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;
pub use seed::Seed;

pub type C64 = num_complex::Complex<f64>;
pub type Operator = tensor::ComplexOperator<f64>;
pub type State = tensor::RegisterState<f64>;
pub type Isometry = ensembles::Isometry<f64>;
pub type Ensemble = dyn ensembles::UnitaryEnsemble<f64>;
pub type Channel = moments::MomentChannel<f64>;
