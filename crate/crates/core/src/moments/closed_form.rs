//! Exact twirls over the full permutation and phase families, without
//! enumerating the groups.

use std::collections::HashMap;

use num_complex::Complex;

use super::distinct::is_distinct;
use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Real};
use crate::symgroup::{perm_index_map, Permutation};
use crate::tensor::{unflatten, ComplexOperator};

fn split(x: &ComplexOperator<impl Real>, d: usize, t: usize) -> Result<(usize, usize)> {
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    if !x.is_square() || d == 0 || !x.rows().is_multiple_of(n) {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {}x{} is not (d^t * E)-square for d = {d}, t = {t}",
            x.rows(),
            x.cols()
        )));
    }
    Ok((n, x.rows() / n))
}

fn all_digits(d: usize, t: usize) -> Vec<Vec<usize>> {
    let n = d.pow(t as u32);
    let dims = vec![d; t];
    (0..n)
        .map(|a| {
            let mut v = vec![0; t];
            unflatten(a, &dims, &mut v);
            v
        })
        .collect()
}

/// Average over all `2^d` phase functions of
/// `(F^{⊗t} ⊗ I) X (F^{⊗t} ⊗ I)^dagger`.
///
/// The entry `(a, b)` picks up `prod_i (-1)^{f(a_i) + f(b_i)}`, whose average
/// is 1 if every value occurs an even number of times in `a ++ b` and 0
/// otherwise; equivalently, the values occurring an odd number of times in
/// `a` and in `b` coincide.
pub fn phase_twirl_exact<T: Real>(x: &ComplexOperator<T>, d: usize, t: usize) -> Result<ComplexOperator<T>> {
    let (n, e) = split(x, d, t)?;
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let class: Vec<usize> = all_digits(d, t)
        .into_iter()
        .map(|mut a| {
            a.sort_unstable();
            let mut odd = Vec::new();
            let mut i = 0;
            while i < a.len() {
                let run = a[i..].iter().take_while(|&&v| v == a[i]).count();
                if run % 2 == 1 {
                    odd.push(a[i]);
                }
                i += run;
            }
            let next = ids.len();
            *ids.entry(odd).or_insert(next)
        })
        .collect();
    let rows = x.rows();
    let mut out = x.clone();
    let oe = out.entries_mut();
    for a in 0..n {
        for b in 0..n {
            if class[a] == class[b] {
                continue;
            }
            for i in 0..e {
                let base = (a * e + i) * rows + b * e;
                oe[base..base + e].iter_mut().for_each(|z| *z = czero());
            }
        }
    }
    Ok(out)
}

/// Average over all `d!` basis permutations of
/// `(P^{⊗t} ⊗ I) X (P^{⊗t} ⊗ I)^dagger`.
///
/// A uniform permutation maps the pair `(a, b)` uniformly onto the pairs with
/// the same equality pattern among the `2t` entries of `a ++ b`; there are
/// `d!/(d-k)!` of them when the pattern has `k` distinct values. The output
/// block at `(a, b)` is the mean of the input blocks over that class.
pub fn perm_twirl_exact<T: Real>(x: &ComplexOperator<T>, d: usize, t: usize) -> Result<ComplexOperator<T>> {
    let (n, e) = split(x, d, t)?;
    let digits = all_digits(d, t);
    let rows = x.rows();
    let xe = x.entries();
    let pattern = |a: usize, b: usize| -> (u64, usize) {
        let mut seen: Vec<usize> = Vec::with_capacity(2 * t);
        let mut key = 0u64;
        for &v in digits[a].iter().chain(&digits[b]) {
            let l = match seen.iter().position(|&s| s == v) {
                Some(p) => p,
                None => {
                    seen.push(v);
                    seen.len() - 1
                }
            };
            key = key * 16 + l as u64;
        }
        (key, seen.len())
    };
    if 2 * t > 16 {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=8" });
    }
    let mut sums: HashMap<u64, Vec<Complex<T>>> = HashMap::new();
    let mut keys = vec![(0u64, 0usize); n * n];
    for a in 0..n {
        for b in 0..n {
            let (key, k) = pattern(a, b);
            keys[a * n + b] = (key, k);
            let block = sums.entry(key).or_insert_with(|| vec![czero(); e * e]);
            for i in 0..e {
                let base = (a * e + i) * rows + b * e;
                for (s, v) in block[i * e..(i + 1) * e].iter_mut().zip(&xe[base..base + e]) {
                    *s += v;
                }
            }
        }
    }
    let mut out = ComplexOperator::zeros(x.dims_out(), x.dims_in())?;
    let oe = out.entries_mut();
    for a in 0..n {
        for b in 0..n {
            let (key, k) = keys[a * n + b];
            let size: f64 = (0..k).map(|i| (d - i) as f64).product();
            let inv = T::one() / T::lit(size);
            let block = &sums[&key];
            for i in 0..e {
                let base = (a * e + i) * rows + b * e;
                for (o, s) in oe[base..base + e].iter_mut().zip(&block[i * e..(i + 1) * e]) {
                    *o = *s * inv;
                }
            }
        }
    }
    Ok(out)
}

/// Exact twirl over the full `PF` family: the phase average followed by the
/// permutation average.
pub fn pf_twirl_exact<T: Real>(x: &ComplexOperator<T>, d: usize, t: usize) -> Result<ComplexOperator<T>> {
    perm_twirl_exact(&phase_twirl_exact(x, d, t)?, d, t)
}

fn check_tuple(tuple: &[usize], d: usize, t: usize) -> Result<()> {
    if tuple.len() != t {
        return Err(Error::DimensionMismatch(format!("tuple {tuple:?} does not have length {t}")));
    }
    if let Some(&bad) = tuple.iter().find(|&&v| v >= d) {
        return Err(Error::OutOfRange { what: "tuple entry", value: bad, range: "[0, d)" });
    }
    if !is_distinct(tuple) {
        return Err(Error::NonDistinct(tuple.to_vec()));
    }
    Ok(())
}

/// `E_{PF} (PF)^{⊗t} |x><y| (PF)^{⊗t, dagger}` for distinct tuples: equal to
/// `Λ R_sigma / Tr Λ` when `y = x_sigma` (that is, `y_i = x_{sigma(i)}`),
/// and zero when `y` is not a rearrangement of `x`.
pub fn pf_twirl_closed_form<T: Real>(x: &[usize], y: &[usize], d: usize, t: usize) -> Result<ComplexOperator<T>> {
    check_tuple(x, d, t)?;
    check_tuple(y, d, t)?;
    let dims = vec![d; t];
    let mut out = ComplexOperator::zeros(&dims, &dims)?;
    let sigma: Option<Vec<usize>> = y.iter().map(|v| x.iter().position(|u| u == v)).collect();
    let Some(sigma) = sigma else {
        return Ok(out);
    };
    let sigma = Permutation::new(sigma)?;
    let trace: f64 = (0..t).map(|i| (d - i) as f64).product();
    let val = cone::<T>() * (T::one() / T::lit(trace));
    let mut digits = vec![0; t];
    for (b, a) in perm_index_map(&sigma, d).into_iter().enumerate() {
        unflatten(a, &dims, &mut digits);
        if is_distinct(&digits) {
            out.set(a, b, val);
        }
    }
    Ok(out)
}
