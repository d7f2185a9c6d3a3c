use nalgebra::DMatrix;
use num_complex::Complex;

use super::{Isometry, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::LabRng;
use crate::tensor::ComplexOperator;

/// Haar-random `d x d` unitary: QR of a complex Ginibre matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<T: Real>(d: usize, rng: &mut LabRng) -> ComplexOperator<T> {
    let z = DMatrix::from_fn(d, d, |_, _| Complex::new(T::std_normal(rng), T::std_normal(rng)));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = rjj.norm();
        let ph = if n > T::zero() { rjj / n } else { Complex::new(T::one(), T::zero()) };
        for i in 0..d {
            q[(i, j)] *= ph;
        }
    }
    ComplexOperator::from_nalgebra(vec![d], vec![d], &q).expect("haar dimension within limits")
}

/// Haar-random isometry `C^{d_in} -> C^{d_out}`: pad the input with `|0>`
/// on a `d_out / d_in` dimensional factor, then apply a Haar unitary.
pub fn haar_isometry<T: Real>(d_in: usize, d_out: usize, rng: &mut LabRng) -> Result<ComplexOperator<T>> {
    if d_in == 0 || d_in > d_out || !d_out.is_multiple_of(d_in) {
        return Err(Error::InvalidParameter(format!(
            "isometry {d_in} -> {d_out} needs d_in dividing d_out"
        )));
    }
    let u = haar_unitary::<T>(d_out, rng);
    let pad = d_out / d_in;
    let mut v = ComplexOperator::zeros(&[d_out], &[d_in])?;
    for j in 0..d_in {
        for i in 0..d_out {
            v.set(i, j, u.get(i, j * pad));
        }
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct HaarEnsemble {
    pub d: usize,
}

impl<T: Real> UnitaryEnsemble<T> for HaarEnsemble {
    fn descriptor(&self) -> String {
        format!("haar(d={})", self.d)
    }

    fn dim_in(&self) -> usize {
        self.d
    }

    fn dim_out(&self) -> usize {
        self.d
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        Isometry::Dense(haar_unitary(self.d, rng))
    }
}

#[derive(Clone, Debug)]
pub struct HaarIsometryEnsemble {
    pub d_in: usize,
    pub d_out: usize,
}

impl HaarIsometryEnsemble {
    pub fn new(d_in: usize, d_out: usize) -> Result<Self> {
        if d_in == 0 || d_in > d_out || !d_out.is_multiple_of(d_in) {
            return Err(Error::InvalidParameter(format!(
                "isometry {d_in} -> {d_out} needs d_in dividing d_out"
            )));
        }
        Ok(Self { d_in, d_out })
    }

    /// A unitary `U` on `C^{d_out}` whose restriction to `|psi> ⊗ |+...+>`
    /// is distributed as a Haar isometry. A Haar unitary serves, since
    /// `U (I ⊗ H)` is again Haar.
    pub fn sample_plus_extension<T: Real>(&self, rng: &mut LabRng) -> Isometry<T> {
        Isometry::Dense(haar_unitary(self.d_out, rng))
    }
}

impl<T: Real> UnitaryEnsemble<T> for HaarIsometryEnsemble {
    fn descriptor(&self) -> String {
        format!("haar-isometry(d_in={}, d_out={})", self.d_in, self.d_out)
    }

    fn dim_in(&self) -> usize {
        self.d_in
    }

    fn dim_out(&self) -> usize {
        self.d_out
    }

    fn sample_with(&self, rng: &mut LabRng) -> Isometry<T> {
        Isometry::Dense(haar_isometry(self.d_in, self.d_out, rng).expect("shape validated in new"))
    }
}

