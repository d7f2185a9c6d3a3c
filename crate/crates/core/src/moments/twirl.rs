use num_complex::Complex;
use rayon::prelude::*;

use super::mc::{mc_average, McEstimate};
use crate::ensembles::{Isometry, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::{czero, Real};
use crate::seed::Seed;
use crate::tensor::{apply_local, unflatten, ComplexOperator};

/// Work limit (scalar multiply-adds) for exact enumeration.
pub const ENUM_BUDGET: u128 = 1_000_000_000;

/// Splits a flat dimension into `d^t` twirled and `E` environment parts.
fn split_dims(total: usize, d: usize, t: usize) -> Result<(usize, usize)> {
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    if d == 0 || !total.is_multiple_of(n) {
        return Err(Error::DimensionMismatch(format!(
            "dimension {total} is not a multiple of d^t = {d}^{t}"
        )));
    }
    Ok((n, total / n))
}

fn check_square_unitary<T: Real>(u: &Isometry<T>, d: usize) -> Result<()> {
    if u.dim_in() != d || u.dim_out() != d {
        return Err(Error::DimensionMismatch(format!(
            "expected a {d}x{d} unitary, got {}x{}",
            u.dim_out(),
            u.dim_in()
        )));
    }
    Ok(())
}

/// Monomial `U^{⊗t}` as `(perm, phase)` on `d^t` indices.
fn monomial_power<T: Real>(perm: &[usize], phases: &[Complex<T>], d: usize, t: usize) -> (Vec<usize>, Vec<Complex<T>>) {
    let n = d.pow(t as u32);
    let dims = vec![d; t];
    let mut digits = vec![0; t];
    let mut bp = Vec::with_capacity(n);
    let mut bf = Vec::with_capacity(n);
    for a in 0..n {
        unflatten(a, &dims, &mut digits);
        let mut idx = 0;
        let mut ph = Complex::new(T::one(), T::zero());
        for &x in &digits {
            idx = idx * d + perm[x];
            ph *= phases[x];
        }
        bp.push(idx);
        bf.push(ph);
    }
    (bp, bf)
}

/// `acc += w (U^{⊗t} ⊗ I) X (U^{⊗t} ⊗ I)^dagger`.
fn accumulate_conjugated<T: Real>(
    acc: &mut [Complex<T>],
    x: &ComplexOperator<T>,
    u: &Isometry<T>,
    d: usize,
    t: usize,
    w: T,
) -> Result<()> {
    let rows = x.rows();
    let (n, e) = split_dims(rows, d, t)?;
    match u {
        Isometry::Monomial { perm, phases } => {
            let (bp, bf) = monomial_power(perm, phases, d, t);
            let xe = x.entries();
            for a in 0..n {
                let fa = bf[a] * w;
                for i in 0..e {
                    let r = a * e + i;
                    let out_r = bp[a] * e + i;
                    for b in 0..n {
                        let fab = fa * bf[b].conj();
                        let src = &xe[r * rows + b * e..r * rows + b * e + e];
                        let dst = &mut acc[out_r * rows + bp[b] * e..out_r * rows + bp[b] * e + e];
                        for (o, v) in dst.iter_mut().zip(src) {
                            *o += fab * v;
                        }
                    }
                }
            }
        }
        Isometry::Dense(_) => {
            let y = conjugate_tensor_power(x, u, d, t)?;
            for (o, v) in acc.iter_mut().zip(y.entries()) {
                *o += *v * w;
            }
        }
    }
    Ok(())
}

/// `(U^{⊗t} ⊗ I_E) X (U^{⊗t} ⊗ I_E)^dagger`, where `X` lives on
/// `(C^d)^{⊗t} ⊗ C^E`. The layout of `X` is preserved.
pub fn conjugate_tensor_power<T: Real>(
    x: &ComplexOperator<T>,
    u: &Isometry<T>,
    d: usize,
    t: usize,
) -> Result<ComplexOperator<T>> {
    check_square_unitary(u, d)?;
    if !x.is_square() {
        return Err(Error::NotSquare { rows: x.rows(), cols: x.cols() });
    }
    let (_, e) = split_dims(x.rows(), d, t)?;
    match u {
        Isometry::Monomial { .. } => {
            let mut out = ComplexOperator::zeros(x.dims_out(), x.dims_in())?;
            accumulate_conjugated(out.entries_mut(), x, u, d, t, T::one())?;
            Ok(out)
        }
        Isometry::Dense(g) => {
            let mut dims = vec![d; t];
            dims.push(e);
            let g = g.clone().with_layout(vec![d], vec![d])?;
            let mut y = x.clone().with_layout(dims.clone(), dims)?;
            for j in 0..t {
                y = y.conjugate_local(&[j], &g)?;
            }
            y.with_layout(x.dims_out().to_vec(), x.dims_in().to_vec())
        }
    }
}

/// `(U^{⊗t} ⊗ I_E) |v>`.
pub fn apply_tensor_power<T: Real>(v: &[Complex<T>], u: &Isometry<T>, d: usize, t: usize) -> Result<Vec<Complex<T>>> {
    check_square_unitary(u, d)?;
    let (n, e) = split_dims(v.len(), d, t)?;
    match u {
        Isometry::Monomial { perm, phases } => {
            let (bp, bf) = monomial_power(perm, phases, d, t);
            let mut out = vec![czero(); v.len()];
            for a in 0..n {
                for i in 0..e {
                    out[bp[a] * e + i] = bf[a] * v[a * e + i];
                }
            }
            Ok(out)
        }
        Isometry::Dense(g) => {
            let mut dims = vec![d; t];
            dims.push(e);
            let g = g.clone().with_layout(vec![d], vec![d])?;
            let mut out = v.to_vec();
            for j in 0..t {
                apply_local(&mut out, &dims, 1, &[j], &g)?;
            }
            Ok(out)
        }
    }
}

fn enumeration_size<T: Real>(e: &dyn UnitaryEnsemble<T>) -> Result<(u128, bool)> {
    let card = e
        .cardinality()
        .ok_or_else(|| Error::NotEnumerable(e.descriptor()))?;
    let monomial = matches!(e.element(0), Some(Isometry::Monomial { .. }));
    Ok((card, monomial))
}

fn check_budget(ops: u128) -> Result<()> {
    if ops > ENUM_BUDGET {
        return Err(Error::BudgetExceeded { ops, limit: ENUM_BUDGET });
    }
    Ok(())
}

/// Splits `0..card` into a fixed number of contiguous ranges so the
/// reduction order does not depend on the thread count.
fn index_chunks(card: u128) -> Vec<(u128, u128)> {
    let chunks = card.min(64);
    (0..chunks)
        .map(|c| (card * c / chunks, card * (c + 1) / chunks))
        .collect()
}

fn sum_in_order<T: Real>(parts: Vec<Vec<Complex<T>>>) -> Vec<Complex<T>> {
    parts
        .into_iter()
        .reduce(|mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        })
        .expect("at least one chunk")
}

/// Exact average of `(U^{⊗t} ⊗ I) X (U^{⊗t} ⊗ I)^dagger` over an enumerable
/// ensemble.
pub fn twirl_exact_enum<T: Real>(
    e: &dyn UnitaryEnsemble<T>,
    t: usize,
    x: &ComplexOperator<T>,
) -> Result<ComplexOperator<T>> {
    let d = e.dim_in();
    let (card, monomial) = enumeration_size(e)?;
    split_dims(x.rows(), d, t)?;
    let n2 = (x.rows() as u128).pow(2);
    let per = if monomial { n2 } else { n2 * (2 * (t as u128) * (d as u128) + 1) };
    check_budget(card.saturating_mul(per))?;
    let w = T::one() / T::lit(card as f64);
    let len = x.entries().len();
    let parts = index_chunks(card)
        .into_par_iter()
        .map(|(lo, hi)| -> Result<Vec<Complex<T>>> {
            let mut acc = vec![czero(); len];
            for i in lo..hi {
                let u = e.element(i).expect("index below cardinality");
                accumulate_conjugated(&mut acc, x, &u, d, t, w)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexOperator::new(x.dims_out().to_vec(), x.dims_in().to_vec(), sum_in_order(parts))
}

/// Exact twirl of the pure state `|v><v|` on `(C^d)^{⊗t} ⊗ C^E`, returned
/// as a density operator on `dims`.
pub fn twirl_exact_enum_pure<T: Real>(
    e: &dyn UnitaryEnsemble<T>,
    t: usize,
    v: &[Complex<T>],
    dims: &[usize],
) -> Result<ComplexOperator<T>> {
    let (card, _) = enumeration_size(e)?;
    let len = v.len();
    check_budget(card.saturating_mul((len as u128).pow(2)))?;
    let w = T::one() / T::lit(card as f64);
    let parts = index_chunks(card)
        .into_par_iter()
        .map(|(lo, hi)| -> Result<Vec<Complex<T>>> {
            let mut acc = vec![czero(); len * len];
            for i in lo..hi {
                let u = e.element(i).expect("index below cardinality");
                let y = apply_tensor_power(v, &u, e.dim_in(), t)?;
                for (r, &yr) in y.iter().enumerate() {
                    if yr == czero() {
                        continue;
                    }
                    let yr = yr * w;
                    for (o, yc) in acc[r * len..(r + 1) * len].iter_mut().zip(&y) {
                        *o += yr * yc.conj();
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexOperator::new(dims.to_vec(), dims.to_vec(), sum_in_order(parts))
}

/// Monte-Carlo twirl with per-entry standard errors.
pub fn twirl_mc<T: Real>(
    e: &dyn UnitaryEnsemble<T>,
    t: usize,
    x: &ComplexOperator<T>,
    samples: usize,
    seed: Seed,
) -> Result<McEstimate<T>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let d = e.dim_in();
    split_dims(x.rows(), d, t)?;
    check_square_unitary(&e.sample(seed), d)?;
    Ok(mc_average(samples, seed, x.entries().len(), |r| {
        let u = e.sample_with(r);
        conjugate_tensor_power(x, &u, d, t)
            .expect("shapes checked before sampling")
            .into_entries()
    }))
}

/// Monte-Carlo twirl of a pure state, as a density-operator estimate.
pub fn twirl_mc_pure<T: Real>(
    e: &dyn UnitaryEnsemble<T>,
    t: usize,
    v: &[Complex<T>],
    samples: usize,
    seed: Seed,
) -> Result<McEstimate<T>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let d = e.dim_in();
    split_dims(v.len(), d, t)?;
    check_square_unitary(&e.sample(seed), d)?;
    let len = v.len();
    Ok(mc_average(samples, seed, len * len, |r| {
        let u = e.sample_with(r);
        let y = apply_tensor_power(v, &u, d, t).expect("shapes checked before sampling");
        let mut out = Vec::with_capacity(len * len);
        for a in &y {
            for b in &y {
                out.push(a * b.conj());
            }
        }
        out
    }))
}
