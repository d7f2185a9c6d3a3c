use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::uniform_permutation;
use crate::error::{Error, Result};
use crate::seed::LabRng;
use crate::symgroup::{all_permutations, factorial};

type PermSampler = Arc<dyn Fn(&mut LabRng) -> Vec<usize> + Send + Sync>;

#[derive(Clone)]
pub enum PermSupport {
    /// Uniform over all of `S_N`.
    Uniform,
    /// Explicit permutations with nonnegative weights (normalised on use).
    Weighted(Vec<(Vec<usize>, f64)>),
    /// Sampling only.
    Sampler(PermSampler),
}

impl fmt::Debug for PermSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermSupport::Uniform => f.write_str("Uniform"),
            PermSupport::Weighted(v) => write!(f, "Weighted({} permutations)", v.len()),
            PermSupport::Sampler(_) => f.write_str("Sampler"),
        }
    }
}

/// A distribution over permutations of `[N]`.
#[derive(Clone, Debug)]
pub struct PermDistribution {
    pub domain: usize,
    /// Order `t` the distribution claims approximate independence for.
    pub order: usize,
    pub declared_delta: f64,
    pub support: PermSupport,
}

impl PermDistribution {
    pub fn weighted(domain: usize, order: usize, entries: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        for (p, w) in &entries {
            let mut seen = vec![false; domain];
            if p.len() != domain || p.iter().any(|&y| y >= domain || std::mem::replace(&mut seen[y], true)) {
                return Err(Error::NotBijective(domain));
            }
            if !(*w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter(format!("weight {w} is not a finite nonnegative number")));
            }
        }
        if entries.iter().map(|e| e.1).sum::<f64>() <= 0.0 {
            return Err(Error::InvalidParameter("weights sum to zero".into()));
        }
        Ok(Self { domain, order, declared_delta: f64::NAN, support: PermSupport::Weighted(entries) })
    }

    pub fn sampled(domain: usize, order: usize, declared_delta: f64, sampler: PermSampler) -> Self {
        Self { domain, order, declared_delta, support: PermSupport::Sampler(sampler) }
    }

    pub fn is_enumerable(&self) -> bool {
        !matches!(self.support, PermSupport::Sampler(_))
    }

    pub fn sample(&self, rng: &mut LabRng) -> Vec<usize> {
        match &self.support {
            PermSupport::Uniform => uniform_permutation(self.domain, rng),
            PermSupport::Weighted(entries) => {
                let total: f64 = entries.iter().map(|e| e.1).sum();
                let mut u = rng.random::<f64>() * total;
                for (p, w) in entries {
                    if u < *w {
                        return p.clone();
                    }
                    u -= w;
                }
                entries.iter().rev().find(|e| e.1 > 0.0).expect("positive total weight").0.clone()
            }
            PermSupport::Sampler(f) => {
                let p = f(rng);
                assert_eq!(p.len(), self.domain, "sampler returned a map on the wrong domain");
                p
            }
        }
    }
}

/// The uniform distribution on `S_N`, which is exactly `t`-wise independent
/// for every `t`.
pub fn exact_twise_perm(domain: usize) -> PermDistribution {
    PermDistribution { domain, order: domain, declared_delta: 0.0, support: PermSupport::Uniform }
}

/// `max |Pr[pi(x_i) = y_i for all i] - 1/(N (N-1) ... (N-t+1))|` over
/// distinct `x`- and `y`-tuples of length `t`.
pub fn kwise_perm_delta(dist: &PermDistribution, t: usize) -> Result<f64> {
    let n = dist.domain;
    if !(1..=8).contains(&n) {
        return Err(Error::OutOfRange { what: "N", value: n, range: "1..=8" });
    }
    if !(1..=3.min(n)).contains(&t) {
        return Err(Error::OutOfRange { what: "t", value: t, range: "1..=min(3, N)" });
    }
    let tuples: Vec<Vec<usize>> = distinct_tuples(n, t);
    let index = |tup: &[usize]| tup.iter().fold(0, |acc, &x| acc * n + x);
    let size = n.pow(t as u32);
    let falling: u128 = (0..t).map(|i| (n - i) as u128).product();

    match &dist.support {
        PermSupport::Sampler(_) => Err(Error::NotEnumerable("sampled permutation distribution".into())),
        PermSupport::Uniform => {
            // Integer counts keep the uniform case exact.
            let mut counts = vec![0u128; size * size];
            let mut y = vec![0; t];
            for p in all_permutations(n) {
                for x in &tuples {
                    for (yi, &xi) in y.iter_mut().zip(x) {
                        *yi = p.apply(xi);
                    }
                    counts[index(x) * size + index(&y)] += 1;
                }
            }
            let total = factorial(n);
            let mut worst = 0.0f64;
            for x in &tuples {
                for y in &tuples {
                    let c = counts[index(x) * size + index(y)];
                    let num = (c * falling).abs_diff(total);
                    worst = worst.max(num as f64 / (total * falling) as f64);
                }
            }
            Ok(worst)
        }
        PermSupport::Weighted(entries) => {
            let total: f64 = entries.iter().map(|e| e.1).sum();
            let mut probs = vec![0.0f64; size * size];
            let mut y = vec![0; t];
            for (p, w) in entries {
                for x in &tuples {
                    for (yi, &xi) in y.iter_mut().zip(x) {
                        *yi = p[xi];
                    }
                    probs[index(x) * size + index(&y)] += w / total;
                }
            }
            let target = 1.0 / falling as f64;
            let mut worst = 0.0f64;
            for x in &tuples {
                for y in &tuples {
                    worst = worst.max((probs[index(x) * size + index(y)] - target).abs());
                }
            }
            Ok(worst)
        }
    }
}

pub(crate) fn distinct_tuples(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, t, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, t, &mut cur, &mut out);
    out
}
