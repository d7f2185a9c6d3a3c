use num_complex::Complex;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::symgroup::{content_product, isotypic_projector, partitions, specht_dim, weyl_dim, Partition};
use crate::tensor::{unflatten, ComplexOperator, MAX_DIM};

pub fn is_distinct(tuple: &[usize]) -> bool {
    tuple.iter().enumerate().all(|(i, x)| !tuple[..i].contains(x))
}

/// All tuples in `distinct(d, t)`, in increasing flat-index order.
pub fn distinct_tuples(d: usize, t: usize) -> Vec<Vec<usize>> {
    let n = d.pow(t as u32);
    let dims = vec![d; t];
    let mut digits = vec![0; t];
    (0..n)
        .filter_map(|a| {
            unflatten(a, &dims, &mut digits);
            is_distinct(&digits).then(|| digits.clone())
        })
        .collect()
}

/// `mask[a]` is true iff basis tuple `a` of `(C^d)^{⊗t}` has distinct entries.
pub fn distinct_mask(d: usize, t: usize) -> Vec<bool> {
    let n = d.pow(t as u32);
    let dims = vec![d; t];
    let mut digits = vec![0; t];
    (0..n)
        .map(|a| {
            unflatten(a, &dims, &mut digits);
            is_distinct(&digits)
        })
        .collect()
}

fn check_size(d: usize, t: usize) -> Result<usize> {
    let n = d.checked_pow(t as u32).unwrap_or(usize::MAX);
    if n > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: n, limit: MAX_DIM });
    }
    Ok(n)
}

/// The projector `Λ` onto `span{|x> : x in distinct(d, t)}`.
pub fn distinct_projector<T: Real>(d: usize, t: usize) -> Result<ComplexOperator<T>> {
    check_size(d, t)?;
    let diag: Vec<Complex<T>> = distinct_mask(d, t)
        .into_iter()
        .map(|m| if m { cone() } else { Complex::new(T::zero(), T::zero()) })
        .collect();
    ComplexOperator::diagonal(&vec![d; t], &diag)
}

#[derive(Clone, Debug)]
pub struct DistinctBlock {
    pub partition: Partition,
    pub weyl_dim: u128,
    pub specht_dim: u128,
    /// `prod_{(i,j) in lambda} (d + j - i) = t! dim(W) / dim(V)`.
    pub content_product: u128,
    /// `Tr[Λ 1_{P_lambda}]`, computed from the explicit projectors.
    pub block_trace: f64,
    /// `dim(V)^2 Tr Λ / t!`.
    pub block_trace_predicted: Ratio<i128>,
    /// `1 - Tr Λ / content_product`.
    pub deficiency: Ratio<i128>,
}

impl DistinctBlock {
    pub fn deficiency_f64(&self) -> f64 {
        ratio_f64(&self.deficiency)
    }
}

pub(crate) fn ratio_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Distinct-subspace data for `(C^d)^{⊗t}`.
#[derive(Clone, Debug)]
pub struct DistinctData<T: Real> {
    pub d: usize,
    pub t: usize,
    pub lambda: ComplexOperator<T>,
    /// `d! / (d - t)!`.
    pub trace_lambda: u128,
    pub blocks: Vec<DistinctBlock>,
}

impl<T: Real> DistinctData<T> {
    pub fn max_deficiency(&self) -> Ratio<i128> {
        self.blocks
            .iter()
            .map(|b| b.deficiency)
            .max()
            .expect("at least one partition")
    }

    /// `max_lambda 1 / (1 - deficiency) - 1`.
    pub fn epsilon_star(&self) -> Ratio<i128> {
        let tr = self.trace_lambda as i128;
        self.blocks
            .iter()
            .map(|b| Ratio::new(b.content_product as i128, tr) - 1)
            .max()
            .expect("at least one partition")
    }
}

fn falling(d: usize, t: usize) -> u128 {
    (0..t).map(|i| (d - i) as u128).product()
}

pub fn distinct_data<T: Real>(d: usize, t: usize) -> Result<DistinctData<T>> {
    if d < t {
        return Err(Error::GramSingular { d, t });
    }
    check_size(d, t)?;
    let lambda = distinct_projector::<T>(d, t)?;
    let mask = distinct_mask(d, t);
    let tr = falling(d, t);
    let t_fact: i128 = (1..=t as i128).product();
    let blocks = partitions(t)?
        .into_iter()
        .map(|p| {
            let block = isotypic_projector::<T>(&p, d)?;
            let block_trace: f64 = mask
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(a, _)| Real::to_f64(block.projector.get(a, a).re))
                .sum();
            let dv = specht_dim(&p);
            let cp = content_product(&p, d);
            Ok(DistinctBlock {
                weyl_dim: weyl_dim(&p, d),
                specht_dim: dv,
                content_product: cp,
                block_trace,
                block_trace_predicted: Ratio::new((dv * dv * tr) as i128, t_fact),
                deficiency: Ratio::from_integer(1) - Ratio::new(tr as i128, cp as i128),
                partition: p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistinctData { d, t, lambda, trace_lambda: tr, blocks })
}

/// `max_lambda prod(d + j - i) / (d!/(d-t)!) - 1`, exactly, without building
/// any operator (valid for any `d >= t`, `t <= 8`).
pub fn epsilon_star(d: usize, t: usize) -> Result<Ratio<i128>> {
    if d < t {
        return Err(Error::GramSingular { d, t });
    }
    let tr = falling(d, t) as i128;
    Ok(partitions(t)?
        .iter()
        .map(|p| Ratio::new(content_product(p, d) as i128, tr) - 1)
        .max()
        .expect("at least one partition"))
}

/// `max_lambda deficiency(lambda)`, exactly, from the content products.
pub fn max_deficiency(d: usize, t: usize) -> Result<Ratio<i128>> {
    if d < t {
        return Err(Error::GramSingular { d, t });
    }
    let tr = falling(d, t) as i128;
    Ok(partitions(t)?
        .iter()
        .map(|p| Ratio::from_integer(1) - Ratio::new(tr, content_product(p, d) as i128))
        .max()
        .expect("at least one partition"))
}
