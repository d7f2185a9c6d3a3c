use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::moments::{epsilon_star, max_deficiency, pf_twirl_exact};
use crate::symgroup::haar_twirl_exact;
use crate::State;

use super::states::distinct_outside_weight;

/// Weight outside the distinct subspace tolerated as numerical noise.
const SUPPORT_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct RelativeErrorReport {
    pub d: usize,
    pub t: usize,
    /// `max_λ 1/(1 - deficiency_λ) - 1`.
    pub epsilon_star: Ratio<i128>,
    /// Minimum eigenvalue of `(1 + ε*) M_Haar(φ) - M_PF(φ)`.
    pub min_eig: f64,
    /// `||M_Haar(φ) - M_PF(φ)||_1`.
    pub distance: f64,
    /// `2 max_λ deficiency_λ`, the bound on `distance`.
    pub distance_bound: f64,
}

impl RelativeErrorReport {
    pub fn epsilon_star_f64(&self) -> f64 {
        *self.epsilon_star.numer() as f64 / *self.epsilon_star.denom() as f64
    }
}

/// Certifies `M_PF(φ) <= (1 + ε*) M_Haar(φ)` for a distinct-supported `φ`
/// and measures `||M_Haar(φ) - M_PF(φ)||_1`.
///
/// On distinct-supported inputs the PF twirl lives on the distinct
/// subspace, and in each Schur-Weyl block it exceeds the Haar twirl by at
/// most the factor `1/(1 - deficiency_λ)`.
pub fn relative_error_certificate(phi: &State, d: usize, t: usize) -> Result<RelativeErrorReport> {
    let outside = distinct_outside_weight(phi, d, t)?;
    if outside > SUPPORT_TOL {
        return Err(Error::NotDistinctSupported { outside });
    }
    let eps = epsilon_star(d, t)?;
    let def = max_deficiency(d, t)?;
    let rho = phi.density()?;
    let haar = haar_twirl_exact(&rho, d, t)?;
    let pf = pf_twirl_exact(&rho, d, t)?;
    let eps_f = *eps.numer() as f64 / *eps.denom() as f64;
    let cert = haar.scale_real(1.0 + eps_f).try_sub(&pf)?.hermitian_part();
    let min_eig = cert.min_eig_hermitian()?;
    let distance = haar.try_sub(&pf)?.trace_norm();
    Ok(RelativeErrorReport {
        d,
        t,
        epsilon_star: eps,
        min_eig,
        distance,
        distance_bound: 2.0 * (*def.numer() as f64 / *def.denom() as f64),
    })
}
