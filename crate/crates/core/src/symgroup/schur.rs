use num_complex::Complex;

use super::{all_permutations, character_table, factorial, specht_dim, weyl_dim, Partition, Permutation};
use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::tensor::{unflatten, ComplexOperator, MAX_DIM};

/// Largest `t` for which explicit `d^t x d^t` permutation operators are built.
pub const MAX_REP_T: usize = 5;

/// One Schur-Weyl block `P_lambda = W_lambda ⊗ V_lambda` of
/// `(C^d)^{\otimes t}`.
#[derive(Clone, Debug)]
pub struct SchurBlock<T: Real> {
    pub partition: Partition,
    pub weyl_dim: u128,
    pub specht_dim: u128,
    pub projector: ComplexOperator<T>,
}

fn check_rep_size(d: usize, t: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::OutOfRange { what: "d", value: d, range: ">= 2" });
    }
    if t == 0 || t > MAX_REP_T {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=5" });
    }
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    if n > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: n, limit: MAX_DIM });
    }
    Ok(n)
}

/// Index form of `R_pi`: `R_pi |a> = |map[a]>`, where the tensor factor in
/// position `j` moves to position `pi(j)`.
pub fn perm_index_map(pi: &Permutation, d: usize) -> Vec<usize> {
    let t = pi.len();
    let n = d.pow(t as u32);
    let dims = vec![d; t];
    let mut a = vec![0; t];
    let mut b = vec![0; t];
    (0..n)
        .map(|idx| {
            unflatten(idx, &dims, &mut a);
            for j in 0..t {
                b[pi.apply(j)] = a[j];
            }
            b.iter().fold(0, |acc, &x| acc * d + x)
        })
        .collect()
}

/// The permutation operator `R_pi` on `(C^d)^{\otimes t}`; `R_pi R_sigma = R_{pi sigma}`.
pub fn perm_rep<T: Real>(pi: &Permutation, d: usize) -> Result<ComplexOperator<T>> {
    let t = pi.len();
    check_rep_size(d, t)?;
    let dims = vec![d; t];
    let mut m = ComplexOperator::zeros(&dims, &dims)?;
    for (a, b) in perm_index_map(pi, d).into_iter().enumerate() {
        m.set(b, a, cone());
    }
    Ok(m)
}

/// `1_{P_lambda} = dim(V_lambda)/t! * sum_pi chi_lambda(pi) R_pi`.
pub fn isotypic_projector<T: Real>(lambda: &Partition, d: usize) -> Result<SchurBlock<T>> {
    let t = lambda.size();
    check_rep_size(d, t)?;
    let table = character_table(t)?;
    let li = table.index_of(lambda).expect("every partition of t is tabulated");
    let dv = specht_dim(lambda);
    let dw = weyl_dim(lambda, d);
    let dims = vec![d; t];
    let mut p = ComplexOperator::<T>::zeros(&dims, &dims)?;
    let scale = dv as f64 / factorial(t) as f64;
    for pi in all_permutations(t) {
        let ci = table.index_of(&pi.cycle_type()).expect("cycle types are partitions of t");
        let chi = table.values()[li][ci];
        if chi == 0 {
            continue;
        }
        let coef = T::lit(scale * chi as f64);
        for (a, b) in perm_index_map(&pi, d).into_iter().enumerate() {
            let e = p.get(b, a);
            p.set(b, a, e + Complex::new(coef, T::zero()));
        }
    }
    let tr = Real::to_f64(p.trace().re);
    let expected = (dw * dv) as f64;
    debug_assert!(
        (tr - expected).abs() <= 1e-8 * expected.max(1.0),
        "trace {tr} of the isotypic projector differs from {expected}"
    );
    Ok(SchurBlock { partition: lambda.clone(), weyl_dim: dw, specht_dim: dv, projector: p })
}

/// All blocks for `partitions(t)` in order.
pub fn schur_blocks<T: Real>(d: usize, t: usize) -> Result<Vec<SchurBlock<T>>> {
    super::partitions(t)?
        .iter()
        .map(|l| isotypic_projector(l, d))
        .collect()
}
