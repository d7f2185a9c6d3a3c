use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::moments::distinct_mask;
use crate::tensor::{ComplexOperator, Layout, RegisterState, StateRepr};
use crate::{Operator, State, C64};

/// Layout `A1..At` (each of dimension `d`) followed by `E` when `env > 1`.
pub fn twirl_layout(d: usize, t: usize, env: usize) -> Result<Layout> {
    let mut regs: Vec<(String, usize)> = (1..=t).map(|i| (format!("A{i}"), d)).collect();
    if env > 1 {
        regs.push(("E".into(), env));
    }
    Layout::new(regs)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Gaussian-random pure state on `(C^d)^{⊗t} ⊗ C^env` whose twirled part
/// is supported on distinct tuples.
pub fn random_distinct_state<R: Rng + ?Sized>(d: usize, t: usize, env: usize, rng: &mut R) -> Result<State> {
    let mask = distinct_mask(d, t);
    let env = env.max(1);
    let mut v: Vec<C64> = Vec::with_capacity(mask.len() * env);
    for &m in &mask {
        for _ in 0..env {
            v.push(if m { gaussian(rng) } else { C64::new(0.0, 0.0) });
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    RegisterState::pure(twirl_layout(d, t, env)?, v, true)
}

/// `Λ G Λ` for a complex Gaussian matrix `G` on `(C^d)^{⊗t}`.
pub fn random_distinct_operator<R: Rng + ?Sized>(d: usize, t: usize, rng: &mut R) -> Result<Operator> {
    let mask = distinct_mask(d, t);
    let n = mask.len();
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            entries.push(if mask[r] && mask[c] { gaussian(rng) } else { C64::new(0.0, 0.0) });
        }
    }
    ComplexOperator::square(vec![d; t], entries)
}

/// `|Ω> = N^{-1/2} sum_i |i>|i>` on `(C^d)^{⊗t} ⊗ C^{d^t}`.
pub fn maximally_entangled(d: usize, t: usize) -> Result<State> {
    let n = d.pow(t as u32);
    let mut v = vec![C64::new(0.0, 0.0); n * n];
    let a = 1.0 / (n as f64).sqrt();
    for i in 0..n {
        v[i * n + i] = C64::new(a, 0.0);
    }
    RegisterState::pure(twirl_layout(d, t, n)?, v, true)
}

/// `Tr[(I - Λ) ⊗ I_E ρ]` for a state on `(C^d)^{⊗t} ⊗ C^E`.
pub fn distinct_outside_weight(state: &State, d: usize, t: usize) -> Result<f64> {
    let mask = distinct_mask(d, t);
    let total = state.layout().total_dim();
    if !total.is_multiple_of(mask.len()) {
        return Err(Error::DimensionMismatch(format!("state of dimension {total} is not on (C^{d})^{{⊗{t}}} ⊗ E")));
    }
    let env = total / mask.len();
    let diag = |i: usize| -> f64 {
        match state.repr() {
            StateRepr::Pure(v) => v[i].norm_sqr(),
            StateRepr::Mixed(rho) => rho.get(i, i).re,
        }
    };
    Ok((0..total).filter(|&i| !mask[i / env]).map(diag).sum())
}

/// `||a - b||_1 / 2`.
pub fn trace_distance(a: &Operator, b: &Operator) -> Result<f64> {
    Ok(0.5 * a.try_sub(b)?.trace_norm())
}
