use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;

use super::{total_dim, unflatten, OP_TOL};
use crate::error::{Error, Result};
use crate::scalar::{abs, cone, creal, czero, fmax, Real};

/// Largest supported matrix side.
pub const MAX_DIM: usize = 4096;

/// A dense complex matrix carrying the register layout of its output (rows)
/// and input (columns) spaces.
///
/// Entries are stored row-major. Register 0 is the most significant digit of
/// the flat row/column index.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexOperator<T: Real> {
    dims_out: Vec<usize>,
    dims_in: Vec<usize>,
    entries: Vec<Complex<T>>,
}

fn check_side(dims: &[usize]) -> Result<usize> {
    if dims.contains(&0) {
        return Err(Error::Layout(format!("zero-dimensional register in {dims:?}")));
    }
    let n = total_dim(dims);
    if n > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: n, limit: MAX_DIM });
    }
    Ok(n)
}

impl<T: Real> ComplexOperator<T> {
    pub fn new(dims_out: Vec<usize>, dims_in: Vec<usize>, entries: Vec<Complex<T>>) -> Result<Self> {
        let r = check_side(&dims_out)?;
        let c = check_side(&dims_in)?;
        if r * c != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "layout {dims_out:?} x {dims_in:?} needs {} entries, got {}",
                r * c,
                entries.len()
            )));
        }
        Ok(Self { dims_out, dims_in, entries })
    }

    /// Square operator on a single layout.
    pub fn square(dims: Vec<usize>, entries: Vec<Complex<T>>) -> Result<Self> {
        Self::new(dims.clone(), dims, entries)
    }

    pub fn zeros(dims_out: &[usize], dims_in: &[usize]) -> Result<Self> {
        let r = check_side(dims_out)?;
        let c = check_side(dims_in)?;
        Ok(Self {
            dims_out: dims_out.to_vec(),
            dims_in: dims_in.to_vec(),
            entries: vec![czero(); r * c],
        })
    }

    pub fn identity(dims: &[usize]) -> Result<Self> {
        let mut m = Self::zeros(dims, dims)?;
        let n = m.rows();
        for i in 0..n {
            m.entries[i * n + i] = cone();
        }
        Ok(m)
    }

    pub fn from_fn(
        dims_out: &[usize],
        dims_in: &[usize],
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Result<Self> {
        let mut m = Self::zeros(dims_out, dims_in)?;
        let c = m.cols();
        for (k, e) in m.entries.iter_mut().enumerate() {
            *e = f(k / c, k % c);
        }
        Ok(m)
    }

    pub fn diagonal(dims: &[usize], diag: &[Complex<T>]) -> Result<Self> {
        let mut m = Self::zeros(dims, dims)?;
        let n = m.rows();
        if diag.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for dimension {n}",
                diag.len()
            )));
        }
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        Ok(m)
    }

    /// `|ket><bra|` on the given square layout.
    pub fn outer(dims: &[usize], ket: &[Complex<T>], bra: &[Complex<T>]) -> Result<Self> {
        let n = check_side(dims)?;
        if ket.len() != n || bra.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "outer product of lengths {} and {} on dimension {n}",
                ket.len(),
                bra.len()
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for k in ket {
            for b in bra {
                entries.push(k * b.conj());
            }
        }
        Ok(Self { dims_out: dims.to_vec(), dims_in: dims.to_vec(), entries })
    }

    /// The matrix unit `|r><c|`.
    pub fn unit(dims: &[usize], r: usize, c: usize) -> Result<Self> {
        let mut m = Self::zeros(dims, dims)?;
        let n = m.rows();
        if r >= n || c >= n {
            return Err(Error::OutOfRange { what: "basis index", value: r.max(c), range: "[0, dim)" });
        }
        m.entries[r * n + c] = cone();
        Ok(m)
    }

    pub fn dims_out(&self) -> &[usize] {
        &self.dims_out
    }

    pub fn dims_in(&self) -> &[usize] {
        &self.dims_in
    }

    pub fn rows(&self) -> usize {
        total_dim(&self.dims_out)
    }

    pub fn cols(&self) -> usize {
        total_dim(&self.dims_in)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.entries[r * self.cols() + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        let cols = self.cols();
        self.entries[r * cols + c] = v;
    }

    /// Relabels the layout without touching entries; total sizes must agree.
    pub fn with_layout(mut self, dims_out: Vec<usize>, dims_in: Vec<usize>) -> Result<Self> {
        if total_dim(&dims_out) != self.rows() || total_dim(&dims_in) != self.cols() {
            return Err(Error::Layout(format!(
                "cannot relabel {:?} x {:?} as {dims_out:?} x {dims_in:?}",
                self.dims_out, self.dims_in
            )));
        }
        check_side(&dims_out)?;
        check_side(&dims_in)?;
        self.dims_out = dims_out;
        self.dims_in = dims_in;
        Ok(self)
    }

    fn require_square_layout(&self) -> Result<()> {
        if self.dims_out != self.dims_in {
            return Err(Error::Layout(format!(
                "expected a square layout, got {:?} x {:?}",
                self.dims_out, self.dims_in
            )));
        }
        Ok(())
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.dims_out != other.dims_out || self.dims_in != other.dims_in {
            return Err(Error::DimensionMismatch(format!(
                "{:?} x {:?} vs {:?} x {:?}",
                self.dims_out, self.dims_in, other.dims_out, other.dims_in
            )));
        }
        Ok(())
    }

    /// Kronecker product; the layouts are concatenated.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut dims_out = self.dims_out.clone();
        dims_out.extend_from_slice(&other.dims_out);
        let mut dims_in = self.dims_in.clone();
        dims_in.extend_from_slice(&other.dims_in);
        let (r1, c1) = (self.rows(), self.cols());
        let (r2, c2) = (other.rows(), other.cols());
        let mut out = Self::zeros(&dims_out, &dims_in)?;
        let cols = c1 * c2;
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.entries[i1 * c1 + j1];
                if a == czero() {
                    continue;
                }
                for i2 in 0..r2 {
                    let row = (i1 * r2 + i2) * cols + j1 * c2;
                    let src = &other.entries[i2 * c2..(i2 + 1) * c2];
                    for (dst, b) in out.entries[row..row + c2].iter_mut().zip(src) {
                        *dst = a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product `self * other`.
    ///
    /// The inner layouts must agree, except that a single-register side is
    /// accepted against any layout of the same total dimension.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        let inner_ok = self.dims_in == other.dims_out
            || ((self.dims_in.len() == 1 || other.dims_out.len() == 1) && self.cols() == other.rows());
        if !inner_ok {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {:?} x {:?} by {:?} x {:?}",
                self.dims_out, self.dims_in, other.dims_out, other.dims_in
            )));
        }
        let (n, k, m) = (self.rows(), self.cols(), other.cols());
        let mut entries = vec![czero(); n * m];
        let row_kernel = |(i, out_row): (usize, &mut [Complex<T>])| {
            let a_row = &self.entries[i * k..(i + 1) * k];
            for (p, &a) in a_row.iter().enumerate() {
                if a == czero() {
                    continue;
                }
                let b_row = &other.entries[p * m..(p + 1) * m];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        };
        if n * k * m >= 1 << 18 {
            entries.par_chunks_mut(m).enumerate().for_each(row_kernel);
        } else {
            entries.chunks_mut(m).enumerate().for_each(row_kernel);
        }
        Ok(Self { dims_out: self.dims_out.clone(), dims_in: other.dims_in.clone(), entries })
    }

    pub fn adjoint(&self) -> Self {
        let (r, c) = (self.rows(), self.cols());
        let mut entries = vec![czero(); r * c];
        for i in 0..r {
            for j in 0..c {
                entries[j * r + i] = self.entries[i * c + j].conj();
            }
        }
        Self { dims_out: self.dims_in.clone(), dims_in: self.dims_out.clone(), entries }
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows(), self.cols());
        let mut entries = vec![czero(); r * c];
        for i in 0..r {
            for j in 0..c {
                entries[j * r + i] = self.entries[i * c + j];
            }
        }
        Self { dims_out: self.dims_in.clone(), dims_in: self.dims_out.clone(), entries }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|e| *e *= s);
        out
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(creal(s))
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Complex<T>, other: &Self) -> Result<()> {
        self.require_same_shape(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(cone(), other)?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(-cone::<T>(), other)?;
        Ok(out)
    }

    pub fn trace(&self) -> Complex<T> {
        let n = self.rows().min(self.cols());
        let c = self.cols();
        (0..n).fold(czero(), |acc, i| acc + self.entries[i * c + i])
    }

    /// Traces out every register not listed in `keep` (which must be
    /// strictly increasing register positions).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        self.require_square_layout()?;
        let dims = &self.dims_out;
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::Layout(format!(
                "keep set {keep:?} is not an increasing subset of 0..{}",
                dims.len()
            )));
        }
        let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
        let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
        let n = self.rows();
        let nk = total_dim(&kept_dims);

        // Flat index of each (kept, traced) digit combination.
        let strides = strides(dims);
        let kept_offsets = offsets(&kept_dims, keep, &strides);
        let traced_offsets = offsets(&traced_dims, &traced, &strides);

        let mut out = vec![czero(); nk * nk];
        for (a, &ra) in kept_offsets.iter().enumerate() {
            for (b, &rb) in kept_offsets.iter().enumerate() {
                let mut acc = czero();
                for &t in &traced_offsets {
                    acc += self.entries[(ra + t) * n + rb + t];
                }
                out[a * nk + b] = acc;
            }
        }
        let kept_dims = if kept_dims.is_empty() { vec![1] } else { kept_dims };
        Self::square(kept_dims, out)
    }

    /// Reorders registers (both sides): new register `j` is old register
    /// `order[j]`.
    pub fn permute_registers(&self, order: &[usize]) -> Result<Self> {
        self.require_square_layout()?;
        let dims = &self.dims_out;
        let mut seen = vec![false; dims.len()];
        if order.len() != dims.len() || order.iter().any(|&o| o >= dims.len() || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::Layout(format!("{order:?} is not a register permutation of {dims:?}")));
        }
        let new_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
        let old_strides = strides(dims);
        let n = self.rows();
        let map: Vec<usize> = {
            let mut digits = vec![0; dims.len()];
            (0..n)
                .map(|idx| {
                    unflatten(idx, &new_dims, &mut digits);
                    digits.iter().zip(order).map(|(&x, &o)| x * old_strides[o]).sum()
                })
                .collect()
        };
        let mut out = vec![czero(); n * n];
        for (i, &oi) in map.iter().enumerate() {
            for (j, &oj) in map.iter().enumerate() {
                out[i * n + j] = self.entries[oi * n + oj];
            }
        }
        Self::square(new_dims, out)
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, e| fmax(m, e.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |m, (a, b)| fmax(m, (a - b).norm())))
    }

    pub fn frobenius_norm(&self) -> T {
        num_traits::Float::sqrt(self.entries.iter().map(|e| e.norm_sqr()).sum::<T>())
    }

    /// `max |X - X^dagger|` entrywise.
    pub fn hermitian_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let n = self.rows();
        let mut m = T::zero();
        for i in 0..n {
            for j in i..n {
                m = fmax(m, (self.entries[i * n + j] - self.entries[j * n + i].conj()).norm());
            }
        }
        m
    }

    /// `(X + X^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows();
        let half = T::lit(0.5);
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = (self.entries[i * n + j] + self.entries[j * n + i].conj()) * half;
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_residual() <= tol
    }

    /// `max |V^dagger V - I|` entrywise.
    pub fn isometry_residual(&self) -> T {
        let (r, c) = (self.rows(), self.cols());
        let mut worst = T::zero();
        for a in 0..c {
            for b in a..c {
                let mut acc = czero::<T>();
                for i in 0..r {
                    acc += self.entries[i * c + a].conj() * self.entries[i * c + b];
                }
                if a == b {
                    acc -= cone();
                }
                worst = fmax(worst, acc.norm());
            }
        }
        worst
    }

    pub fn is_isometry(&self, tol: T) -> bool {
        self.rows() >= self.cols() && self.isometry_residual() <= tol
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let (r, c) = (self.rows(), self.cols());
        if v.len() != c {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {c} columns", v.len())));
        }
        Ok((0..r)
            .map(|i| {
                self.entries[i * c..(i + 1) * c]
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `U X U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    /// Hilbert-Schmidt inner product `Tr(self^dagger other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>> {
        self.require_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex<T>> {
        DMatrix::from_row_slice(self.rows(), self.cols(), &self.entries)
    }

    pub fn from_nalgebra(dims_out: Vec<usize>, dims_in: Vec<usize>, m: &DMatrix<Complex<T>>) -> Result<Self> {
        let (r, c) = m.shape();
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(m[(i, j)]);
            }
        }
        Self::new(dims_out, dims_in, entries)
    }

    fn hermitian_checked(&self) -> Result<(DMatrix<Complex<T>>, T)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let residual = self.hermitian_residual();
        let scale = fmax(T::one(), self.max_abs());
        if residual > T::lit(OP_TOL) * scale {
            return Err(Error::NotHermitian { residual: residual.to_f64() });
        }
        Ok((self.hermitian_part().to_nalgebra(), residual))
    }

    /// Eigenvalues of a Hermitian operator in ascending order.
    ///
    /// The input is symmetrised first; the asymmetry residual is returned
    /// alongside.
    pub fn eigenvalues_hermitian(&self) -> Result<(Vec<T>, T)> {
        let (m, residual) = self.hermitian_checked()?;
        let mut ev: Vec<T> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Ok((ev, residual))
    }

    pub fn min_eig_hermitian(&self) -> Result<T> {
        Ok(self.eigenvalues_hermitian()?.0[0])
    }

    pub fn singular_values(&self) -> Vec<T> {
        self.to_nalgebra().singular_values().iter().copied().collect()
    }

    /// Schatten 1-norm.
    ///
    /// Hermitian inputs go through the symmetric eigensolver; everything else
    /// through the SVD.
    pub fn trace_norm(&self) -> T {
        if self.is_square() {
            let scale = fmax(T::one(), self.max_abs());
            if self.hermitian_residual() <= T::lit(1e-13) * scale {
                let m = self.hermitian_part().to_nalgebra();
                return m.symmetric_eigenvalues().iter().map(|&x| abs(x)).sum();
            }
        }
        self.singular_values().into_iter().sum()
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Flat offsets of all digit combinations on the registers `positions`.
pub(crate) fn offsets(sub_dims: &[usize], positions: &[usize], strides: &[usize]) -> Vec<usize> {
    let n = total_dim(sub_dims);
    let mut digits = vec![0; sub_dims.len()];
    (0..n)
        .map(|idx| {
            unflatten(idx, sub_dims, &mut digits);
            digits.iter().zip(positions).map(|(&x, &p)| x * strides[p]).sum()
        })
        .collect()
}

impl<T: Real> Add for &ComplexOperator<T> {
    type Output = ComplexOperator<T>;

    fn add(self, rhs: Self) -> ComplexOperator<T> {
        self.try_add(rhs).expect("operator shapes differ")
    }
}

impl<T: Real> Sub for &ComplexOperator<T> {
    type Output = ComplexOperator<T>;

    fn sub(self, rhs: Self) -> ComplexOperator<T> {
        self.try_sub(rhs).expect("operator shapes differ")
    }
}

impl<T: Real> Mul for &ComplexOperator<T> {
    type Output = ComplexOperator<T>;

    fn mul(self, rhs: Self) -> ComplexOperator<T> {
        self.matmul(rhs).expect("operator shapes differ")
    }
}

impl<T: Real> Neg for &ComplexOperator<T> {
    type Output = ComplexOperator<T>;

    fn neg(self) -> ComplexOperator<T> {
        self.scale(-cone::<T>())
    }
}
