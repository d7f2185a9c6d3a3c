//! Dense complex linear algebra over composite registers.

mod dump;
mod linalg;
mod operator;
mod state;

pub use dump::{read_operator, write_operator};
pub use linalg::{apply_local, random_hermitian, random_unit_vector};
pub use operator::{ComplexOperator, MAX_DIM};
pub use state::{Layout, Register, RegisterState, StateRepr};

/// Tolerance for operator identities.
pub const OP_TOL: f64 = 1e-10;

/// Tolerance for scalar identities.
pub const SCALAR_TOL: f64 = 1e-12;

/// Product of register dimensions, guarded against overflow.
pub fn total_dim(dims: &[usize]) -> usize {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX)
}

/// Splits a flat index into per-register digits (register 0 most significant).
pub fn unflatten(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

pub fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}
