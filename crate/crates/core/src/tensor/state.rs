use num_complex::Complex;
use rand::Rng;

use super::{random_unit_vector, total_dim, ComplexOperator, OP_TOL, SCALAR_TOL};
use crate::error::{Error, Result};
use crate::scalar::{abs, cone, sqrt, Real};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub dim: usize,
}

/// Named registers, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    registers: Vec<Register>,
}

impl Layout {
    pub fn new<S: Into<String>>(registers: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let registers: Vec<Register> = registers
            .into_iter()
            .map(|(name, dim)| Register { name: name.into(), dim })
            .collect();
        for (i, r) in registers.iter().enumerate() {
            if r.dim == 0 {
                return Err(Error::Layout(format!("register '{}' has dimension 0", r.name)));
            }
            if registers[..i].iter().any(|q| q.name == r.name) {
                return Err(Error::Layout(format!("duplicate register name '{}'", r.name)));
            }
        }
        Ok(Self { registers })
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn dims(&self) -> Vec<usize> {
        self.registers.iter().map(|r| r.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        total_dim(&self.dims())
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.registers
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| Error::Layout(format!("no register named '{name}'")))
    }

    pub fn positions(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.position(n)).collect()
    }

    pub fn concat(&self, other: &Layout) -> Result<Layout> {
        Layout::new(
            self.registers
                .iter()
                .chain(&other.registers)
                .map(|r| (r.name.clone(), r.dim)),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateRepr<T: Real> {
    Pure(Vec<Complex<T>>),
    Mixed(ComplexOperator<T>),
}

/// A pure or mixed state over a named register layout.
///
/// The `normalized` flag records whether unit norm / unit trace was checked
/// at construction; unnormalised vectors (such as projected states) are
/// allowed with the flag cleared.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterState<T: Real> {
    layout: Layout,
    repr: StateRepr<T>,
    normalized: bool,
}

impl<T: Real> RegisterState<T> {
    pub fn pure(layout: Layout, amplitudes: Vec<Complex<T>>, normalized: bool) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for layout of dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        if normalized {
            let n2: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
            if abs(n2 - T::one()) > T::lit(2.0 * SCALAR_TOL) {
                return Err(Error::InvalidParameter(format!("state has squared norm {n2}, expected 1")));
            }
        }
        Ok(Self { layout, repr: StateRepr::Pure(amplitudes), normalized })
    }

    pub fn mixed(layout: Layout, rho: ComplexOperator<T>, normalized: bool) -> Result<Self> {
        let dims = layout.dims();
        if rho.dims_out() != dims.as_slice() || rho.dims_in() != dims.as_slice() {
            return Err(Error::Layout(format!(
                "density of layout {:?} x {:?} for registers {dims:?}",
                rho.dims_out(),
                rho.dims_in()
            )));
        }
        let tol = T::lit(OP_TOL);
        let (ev, _) = rho.eigenvalues_hermitian()?;
        if ev[0] < -tol {
            return Err(Error::InvalidParameter(format!("density has negative eigenvalue {}", ev[0])));
        }
        if normalized && abs(rho.trace().re - T::one()) > tol {
            return Err(Error::InvalidParameter(format!("density has trace {}", rho.trace())));
        }
        Ok(Self { layout, repr: StateRepr::Mixed(rho), normalized })
    }

    /// Computational basis state `|index>`.
    pub fn basis(layout: Layout, index: usize) -> Result<Self> {
        let n = layout.total_dim();
        if index >= n {
            return Err(Error::OutOfRange { what: "basis index", value: index, range: "[0, dim)" });
        }
        let mut v = vec![Complex::new(T::zero(), T::zero()); n];
        v[index] = cone();
        Self::pure(layout, v, true)
    }

    pub fn random_pure<R: Rng + ?Sized>(layout: Layout, rng: &mut R) -> Result<Self> {
        let v = random_unit_vector(layout.total_dim(), rng);
        Self::pure(layout, v, true)
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn repr(&self) -> &StateRepr<T> {
        &self.repr
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitudes(&self) -> Option<&[Complex<T>]> {
        match &self.repr {
            StateRepr::Pure(v) => Some(v),
            StateRepr::Mixed(_) => None,
        }
    }

    /// The density operator (`|psi><psi|` for pure states).
    pub fn density(&self) -> Result<ComplexOperator<T>> {
        match &self.repr {
            StateRepr::Pure(v) => ComplexOperator::outer(&self.layout.dims(), v, v),
            StateRepr::Mixed(rho) => Ok(rho.clone()),
        }
    }

    /// 2-norm for pure states, trace for mixed ones.
    pub fn norm(&self) -> T {
        match &self.repr {
            StateRepr::Pure(v) => sqrt(v.iter().map(|z| z.norm_sqr()).sum::<T>()),
            StateRepr::Mixed(rho) => rho.trace().re,
        }
    }
}
