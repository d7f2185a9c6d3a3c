use num_complex::Complex;
use rand::Rng;

use super::operator::{offsets, strides};
use super::{total_dim, ComplexOperator};
use crate::error::{Error, Result};
use crate::scalar::{czero, sqrt, Real};

/// Applies `gate` to the registers `regs` (in that order) of the row index of
/// a `(prod dims) x ncols` row-major block.
///
/// With `ncols = 1` this is the action of a local gate on a state vector.
pub fn apply_local<T: Real>(
    data: &mut [Complex<T>],
    dims: &[usize],
    ncols: usize,
    regs: &[usize],
    gate: &ComplexOperator<T>,
) -> Result<()> {
    let (sub_dims, rest) = split_registers(dims, regs)?;
    let k = total_dim(&sub_dims);
    if gate.rows() != k || gate.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "gate of size {}x{} on registers {regs:?} of {dims:?}",
            gate.rows(),
            gate.cols()
        )));
    }
    if data.len() != total_dim(dims) * ncols {
        return Err(Error::DimensionMismatch(format!(
            "block of {} entries for layout {dims:?} with {ncols} columns",
            data.len()
        )));
    }
    let st = strides(dims);
    let sub_off = offsets(&sub_dims, regs, &st);
    let rest_dims: Vec<usize> = rest.iter().map(|&r| dims[r]).collect();
    let rest_off = offsets(&rest_dims, &rest, &st);
    let g = gate.entries();
    let mut gathered = vec![czero::<T>(); k * ncols];
    for &base in &rest_off {
        for (a, &o) in sub_off.iter().enumerate() {
            let row = (base + o) * ncols;
            gathered[a * ncols..(a + 1) * ncols].copy_from_slice(&data[row..row + ncols]);
        }
        for (a, &o) in sub_off.iter().enumerate() {
            let row = (base + o) * ncols;
            let out = &mut data[row..row + ncols];
            out.iter_mut().for_each(|x| *x = czero());
            for b in 0..k {
                let coef = g[a * k + b];
                if coef == czero() {
                    continue;
                }
                for (x, y) in out.iter_mut().zip(&gathered[b * ncols..(b + 1) * ncols]) {
                    *x += coef * y;
                }
            }
        }
    }
    Ok(())
}

fn split_registers(dims: &[usize], regs: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut seen = vec![false; dims.len()];
    for &r in regs {
        if r >= dims.len() || std::mem::replace(&mut seen[r], true) {
            return Err(Error::Layout(format!("register list {regs:?} invalid for layout {dims:?}")));
        }
    }
    let sub_dims = regs.iter().map(|&r| dims[r]).collect();
    let rest = (0..dims.len()).filter(|&i| !seen[i]).collect();
    Ok((sub_dims, rest))
}

impl<T: Real> ComplexOperator<T> {
    /// `G X G^dagger` with `G` acting on the listed registers of a square
    /// layout and identity elsewhere.
    pub fn conjugate_local(&self, regs: &[usize], gate: &ComplexOperator<T>) -> Result<Self> {
        if self.dims_out() != self.dims_in() {
            return Err(Error::Layout(format!(
                "local conjugation needs a square layout, got {:?} x {:?}",
                self.dims_out(),
                self.dims_in()
            )));
        }
        let dims = self.dims_out().to_vec();
        let n = self.rows();
        let mut x = self.clone();
        apply_local(x.entries_mut(), &dims, n, regs, gate)?;
        let mut y = x.adjoint();
        apply_local(y.entries_mut(), &dims, n, regs, gate)?;
        Ok(y.adjoint())
    }

    /// `G X` with `G` acting on the listed output registers.
    pub fn left_mul_local(&self, regs: &[usize], gate: &ComplexOperator<T>) -> Result<Self> {
        let dims = self.dims_out().to_vec();
        let n = self.cols();
        let mut x = self.clone();
        apply_local(x.entries_mut(), &dims, n, regs, gate)?;
        Ok(x)
    }
}

/// Uniformly random unit vector (normalised complex Gaussian).
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex<T>> {
    let mut v: Vec<Complex<T>> = (0..n)
        .map(|_| Complex::new(T::std_normal(rng), T::std_normal(rng)))
        .collect();
    let norm = sqrt(v.iter().map(|z| z.norm_sqr()).sum::<T>());
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<ComplexOperator<T>> {
    let n = total_dim(dims);
    let mut m = ComplexOperator::zeros(dims, dims)?;
    for i in 0..n {
        m.set(i, i, Complex::new(T::std_normal(rng), T::zero()));
        for j in i + 1..n {
            let z = Complex::new(T::std_normal(rng), T::std_normal(rng)) * T::lit(std::f64::consts::FRAC_1_SQRT_2);
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    Ok(m)
}
