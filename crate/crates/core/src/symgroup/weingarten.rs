use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::schur::MAX_REP_T;
use super::{all_permutations, perm_index_map};
use crate::error::{Error, Result};
use crate::scalar::{czero, Real};
use crate::tensor::ComplexOperator;

/// `G[pi][sigma] = Tr(R_pi^dagger R_sigma) = d^{#cycles(pi^{-1} sigma)}`,
/// indexed by `all_permutations(t)`.
pub fn gram_matrix(d: usize, t: usize) -> Vec<Vec<BigInt>> {
    let perms = all_permutations(t);
    let inv: Vec<_> = perms.iter().map(|p| p.inverse()).collect();
    inv.iter()
        .map(|pi_inv| {
            perms
                .iter()
                .map(|s| BigInt::from(d).pow(pi_inv.compose(s).num_cycles() as u32))
                .collect()
        })
        .collect()
}

/// The exact inverse of the Gram matrix (the Weingarten matrix), row-major.
///
/// The Gram matrix is invertible iff `d >= t`; smaller `d` is rejected.
pub fn weingarten_exact(d: usize, t: usize) -> Result<Vec<BigRational>> {
    if t == 0 || t > MAX_REP_T {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=5" });
    }
    if d < t {
        return Err(Error::GramSingular { d, t });
    }
    let g = gram_matrix(d, t);
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.into_iter().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::GramSingular { d, t })?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Ok(a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect())
}

/// Floating-point Weingarten matrix, cached per `(d, t)`.
pub fn weingarten_matrix(d: usize, t: usize) -> Result<Arc<Vec<f64>>> {
    type Cache = Mutex<HashMap<(usize, usize), Arc<Vec<f64>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(w) = cache.lock().expect("cache lock").get(&(d, t)) {
        return Ok(w.clone());
    }
    let w: Vec<f64> = weingarten_exact(d, t)?
        .iter()
        .map(|q| q.to_f64().expect("finite rational"))
        .collect();
    let w = Arc::new(w);
    cache.lock().expect("cache lock").insert((d, t), w.clone());
    Ok(w)
}

/// `E_{U ~ Haar} (U^{⊗t} ⊗ I) X (U^{⊗t} ⊗ I)^dagger`, computed as the
/// Hilbert-Schmidt projection onto `span{R_pi} ⊗ L(E)`.
///
/// `X` acts on `(C^d)^{⊗t} ⊗ E`: the leading `d^t` factor of the flat index
/// is twirled, any trailing factor is an untouched environment.
pub fn haar_twirl_exact<T: Real>(x: &ComplexOperator<T>, d: usize, t: usize) -> Result<ComplexOperator<T>> {
    if d == 0 {
        return Err(Error::OutOfRange { what: "d", value: d, range: ">= 1" });
    }
    let w = weingarten_matrix(d, t)?;
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    let rows = x.rows();
    if !x.is_square() || !rows.is_multiple_of(n) {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {}x{} is not (d^t * E)-square for d = {d}, t = {t}",
            rows,
            x.cols()
        )));
    }
    let e = rows / n;
    let perms = all_permutations(t);
    let maps: Vec<Vec<usize>> = perms.iter().map(|p| perm_index_map(p, d)).collect();
    let xe = x.entries();

    // c_sigma = Tr_A[(R_sigma^dagger ⊗ I) X]
    let coeffs: Vec<Vec<Complex<T>>> = maps
        .iter()
        .map(|map| {
            let mut c = vec![czero::<T>(); e * e];
            for (a, &ma) in map.iter().enumerate() {
                for i in 0..e {
                    let row = &xe[(ma * e + i) * rows + a * e..(ma * e + i) * rows + a * e + e];
                    for (cj, v) in c[i * e..(i + 1) * e].iter_mut().zip(row) {
                        *cj += v;
                    }
                }
            }
            c
        })
        .collect();

    let k = perms.len();
    let mut out = ComplexOperator::zeros(x.dims_out(), x.dims_in())?;
    let oe = out.entries_mut();
    for (p, map) in maps.iter().enumerate() {
        let mut y = vec![czero::<T>(); e * e];
        for (s, c) in coeffs.iter().enumerate() {
            let wps = T::lit(w[p * k + s]);
            for (yv, cv) in y.iter_mut().zip(c) {
                *yv += *cv * wps;
            }
        }
        for (a, &ma) in map.iter().enumerate() {
            for i in 0..e {
                let base = (ma * e + i) * rows + a * e;
                for (o, yv) in oe[base..base + e].iter_mut().zip(&y[i * e..(i + 1) * e]) {
                    *o += yv;
                }
            }
        }
    }
    Ok(out)
}
