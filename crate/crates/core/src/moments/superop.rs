use super::MomentChannel;
use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::tensor::{ComplexOperator, MAX_DIM};

/// Matrix of a channel on `L((C^d)^{⊗t})` in the row-major matrix-unit
/// basis: column `r*N + c` is the image of `|r><c|`, flattened row-major.
pub fn superoperator_matrix<T: Real>(c: &MomentChannel<T>) -> Result<ComplexOperator<T>> {
    let n = c.d().checked_pow(c.t() as u32).unwrap_or(usize::MAX);
    let nn = n.saturating_mul(n);
    if nn > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: nn, limit: MAX_DIM });
    }
    let dims = vec![c.d(); c.t()];
    let mut s = ComplexOperator::zeros(&[n, n], &[n, n])?;
    for r in 0..n {
        for col in 0..n {
            let mut unit = ComplexOperator::zeros(&dims, &dims)?;
            unit.set(r, col, cone());
            let img = c.apply(&unit)?;
            for (k, v) in img.entries().iter().enumerate() {
                s.set(k, r * n + col, *v);
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct AmplificationReport {
    pub m: usize,
    /// `max |(M_X - M_H)^m - (M_X^m - M_H)|` entrywise.
    pub residual: f64,
    /// Spectral norm of `(M_X - M_H)^m`.
    pub power_norm: f64,
    /// `||M_X - M_H||^m` in the spectral norm.
    pub norm_power: f64,
}

fn power<T: Real>(a: &ComplexOperator<T>, m: usize) -> Result<ComplexOperator<T>> {
    let mut out = a.clone();
    for _ in 1..m {
        out = out.matmul(a)?;
    }
    Ok(out)
}

fn spectral_norm<T: Real>(a: &ComplexOperator<T>) -> f64 {
    a.singular_values().into_iter().fold(0.0, |m, s| m.max(Real::to_f64(s)))
}

/// Checks `(M_X - M_Haar)^{∘m} = M_X^{∘m} - M_Haar` on superoperator
/// matrices, which holds because the Haar twirl absorbs any twirl on either
/// side.
pub fn amplification_identity_check<T: Real>(x: &MomentChannel<T>, m: usize) -> Result<AmplificationReport> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mx = superoperator_matrix(x)?;
    let mh = superoperator_matrix(&MomentChannel::haar(x.d(), x.t()))?;
    let diff = mx.try_sub(&mh)?;
    let lhs = power(&diff, m)?;
    let rhs = power(&mx, m)?.try_sub(&mh)?;
    let residual = Real::to_f64(lhs.max_abs_diff(&rhs)?);
    Ok(AmplificationReport {
        m,
        residual,
        power_norm: spectral_norm(&lhs),
        norm_power: spectral_norm(&diff).powi(m as i32),
    })
}
