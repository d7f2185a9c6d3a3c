use num_complex::Complex;

use crate::ensembles::{haar_unitary, CliffordEnsemble, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::moments::{apply_tensor_power, conjugate_tensor_power, distinct_mask, mc_scalar, twirl_exact_enum};
use crate::seed::{rng, Seed};
use crate::symgroup::haar_twirl_exact;
use crate::tensor::{RegisterState, StateRepr};
use crate::{Operator, State, C64};

use super::states::twirl_layout;

#[derive(Clone, Debug)]
pub struct OverlapReport {
    pub n: usize,
    pub t: usize,
    pub samples: usize,
    pub mean: f64,
    pub stderr: f64,
    /// `1 - t(t-1)/(d+1)`.
    pub bound: f64,
}

/// Lower bound on `Tr[Λ M_C(ρ)]`.
///
/// The Clifford twirl agrees with the Haar twirl on the second moment, and
/// the weight outside the distinct subspace is at most the sum over the
/// `t(t-1)/2` pairs of registers of the weight on the diagonal
/// `{x_i = x_j}`, each at most `d / (d(d+1)/2) = 2/(d+1)`.
pub fn clifford_overlap_bound(d: usize, t: usize) -> f64 {
    1.0 - (t * t.saturating_sub(1)) as f64 / (d + 1) as f64
}

fn check_state(rho: &State, d: usize, t: usize) -> Result<usize> {
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    let total = rho.layout().total_dim();
    if !total.is_multiple_of(n) {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {total} is not on {t} registers of dimension {d}"
        )));
    }
    Ok(total / n)
}

fn distinct_weight(diag: impl Iterator<Item = f64>, mask: &[bool], env: usize) -> f64 {
    diag.enumerate().filter(|(i, _)| mask[i / env]).map(|(_, w)| w).sum()
}

/// Monte-Carlo estimate of `Tr[(Λ ⊗ I) E_C (C^{⊗t} ⊗ I) ρ (C^{⊗t} ⊗ I)^dagger]`.
pub fn clifford_distinct_overlap(rho: &State, n: usize, t: usize, samples: usize, seed: Seed) -> Result<OverlapReport> {
    let e = CliffordEnsemble::new(n)?;
    let d = 1usize << n;
    let env = check_state(rho, d, t)?;
    let mask = distinct_mask(d, t);
    let est = match rho.repr() {
        StateRepr::Pure(v) => mc_scalar(samples, seed, |r| {
            let c = UnitaryEnsemble::<f64>::sample_with(&e, r);
            let y = apply_tensor_power(v, &c, d, t).expect("shape checked");
            distinct_weight(y.iter().map(|z| z.norm_sqr()), &mask, env)
        }),
        StateRepr::Mixed(m) => mc_scalar(samples, seed, |r| {
            let c = UnitaryEnsemble::<f64>::sample_with(&e, r);
            let y = conjugate_tensor_power(m, &c, d, t).expect("shape checked");
            distinct_weight((0..y.rows()).map(|i| y.get(i, i).re), &mask, env)
        }),
    };
    Ok(OverlapReport {
        n,
        t,
        samples: est.samples,
        mean: est.mean,
        stderr: est.stderr,
        bound: clifford_overlap_bound(d, t),
    })
}

/// The same overlap with the Clifford group enumerated (`n <= 2`).
pub fn clifford_distinct_overlap_exact(rho: &State, n: usize, t: usize) -> Result<f64> {
    let e = CliffordEnsemble::new(n)?;
    let d = 1usize << n;
    let env = check_state(rho, d, t)?;
    let out = twirl_exact_enum(&e, t, &rho.density()?)?;
    let mask = distinct_mask(d, t);
    Ok(distinct_weight((0..out.rows()).map(|i| out.get(i, i).re), &mask, env))
}

/// `max |M_C(X) - M_Haar(X)|` entrywise with the Clifford group enumerated.
pub fn clifford_design_residual(n: usize, t: usize, x: &Operator) -> Result<f64> {
    let e = CliffordEnsemble::new(n)?;
    let d = 1usize << n;
    let c = twirl_exact_enum(&e, t, x)?;
    let h = haar_twirl_exact(x, d, t)?;
    c.max_abs_diff(&h)
}

fn product_state(d: usize, t: usize, psi: &[C64]) -> Result<State> {
    let mut v = vec![Complex::new(1.0, 0.0)];
    for _ in 0..t {
        v = v.iter().flat_map(|a| psi.iter().map(move |b| a * b)).collect();
    }
    RegisterState::pure(twirl_layout(d, t, 1)?, v, true)
}

/// Inputs concentrated near the symmetric subspace, where the overlap bound
/// is tight: `|0>^{⊗t}`, `|+>^{⊗t}`, `|ψ>^{⊗t}` for a Bell state and for a
/// Haar-random `ψ`, and the symmetric superposition `sum_x |x>^{⊗t}`.
pub fn adversarial_probes(n: usize, t: usize, seed: Seed) -> Result<Vec<(String, State)>> {
    let d = 1usize << n;
    let zero = |i: usize| C64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0);
    let basis0: Vec<C64> = (0..d).map(zero).collect();
    let plus = vec![C64::new(1.0 / (d as f64).sqrt(), 0.0); d];
    let mut bell = vec![C64::new(0.0, 0.0); d];
    bell[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    bell[d - 1] = bell[0];
    let u: Operator = haar_unitary(d, &mut rng(seed));
    let random: Vec<C64> = (0..d).map(|i| u.get(i, 0)).collect();
    let n_total = d.pow(t as u32);
    let mut diag = vec![C64::new(0.0, 0.0); n_total];
    let stride: usize = (0..t).map(|i| d.pow(i as u32)).sum();
    for x in 0..d {
        diag[x * stride] = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    Ok(vec![
        (format!("zero^{t}"), product_state(d, t, &basis0)?),
        (format!("plus^{t}"), product_state(d, t, &plus)?),
        (format!("bell^{t}"), product_state(d, t, &bell)?),
        (format!("haar^{t}"), product_state(d, t, &random)?),
        ("sym-diagonal".to_string(), RegisterState::pure(twirl_layout(d, t, 1)?, diag, true)?),
    ])
}
