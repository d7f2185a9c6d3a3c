use num_complex::Complex;
use rayon::prelude::*;

use crate::scalar::{czero, sqrt, Real};
use crate::seed::{rng, split, LabRng, Seed};

/// Samples per parallel task. Task `i` draws from `split(seed, i)`, so the
/// result depends only on the seed and sample count.
pub const MC_CHUNK: usize = 256;

/// Entrywise running mean and variance (Welford), mergeable with Chan's
/// formula. The variance of a complex entry is `Var(re) + Var(im)`.
#[derive(Clone, Debug)]
pub struct Accumulator<T: Real> {
    n: u64,
    mean: Vec<Complex<T>>,
    m2: Vec<T>,
}

impl<T: Real> Accumulator<T> {
    pub fn new(len: usize) -> Self {
        Self { n: 0, mean: vec![czero(); len], m2: vec![T::zero(); len] }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn push(&mut self, x: &[Complex<T>]) {
        assert_eq!(x.len(), self.mean.len(), "accumulator length mismatch");
        self.n += 1;
        let inv = T::one() / T::lit(self.n as f64);
        for ((m, s), &v) in self.mean.iter_mut().zip(&mut self.m2).zip(x) {
            let delta = v - *m;
            *m += delta * inv;
            let delta2 = v - *m;
            *s += delta.re * delta2.re + delta.im * delta2.im;
        }
    }

    pub fn merge(&mut self, other: &Self) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other.clone();
            return;
        }
        let (na, nb) = (T::lit(self.n as f64), T::lit(other.n as f64));
        let n = na + nb;
        for ((m, s), (mb, sb)) in self.mean.iter_mut().zip(&mut self.m2).zip(other.mean.iter().zip(&other.m2)) {
            let delta = *mb - *m;
            *m += delta * (nb / n);
            *s += *sb + delta.norm_sqr() * na * nb / n;
        }
        self.n += other.n;
    }

    pub fn mean(&self) -> &[Complex<T>] {
        &self.mean
    }

    /// Standard error of each entry of the mean.
    pub fn stderr(&self) -> Vec<T> {
        if self.n < 2 {
            return vec![T::infinity(); self.mean.len()];
        }
        let n = T::lit(self.n as f64);
        self.m2.iter().map(|&s| sqrt(s / (n - T::one()) / n)).collect()
    }
}

/// Monte-Carlo estimate of a vector-valued mean.
#[derive(Clone, Debug)]
pub struct McEstimate<T: Real> {
    pub samples: usize,
    pub mean: Vec<Complex<T>>,
    pub stderr: Vec<T>,
    pub max_stderr: T,
    /// Means of the even- and odd-numbered tasks, for split-half noise
    /// estimates of nonlinear functionals.
    pub half_means: (Vec<Complex<T>>, Vec<Complex<T>>),
}

fn chunk_sizes(samples: usize) -> Vec<usize> {
    let chunk = MC_CHUNK.min(samples.div_ceil(2)).max(1);
    let mut sizes = vec![chunk; samples / chunk];
    if !samples.is_multiple_of(chunk) {
        sizes.push(samples % chunk);
    }
    sizes
}

/// Averages `f` over `samples` draws, in parallel and reproducibly.
pub fn mc_average<T: Real, F>(samples: usize, seed: Seed, len: usize, f: F) -> McEstimate<T>
where
    F: Fn(&mut LabRng) -> Vec<Complex<T>> + Sync,
{
    let sizes = chunk_sizes(samples.max(1));
    let parts: Vec<Accumulator<T>> = sizes
        .par_iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut r = rng(split(seed, i as u64));
            let mut acc = Accumulator::new(len);
            for _ in 0..m {
                acc.push(&f(&mut r));
            }
            acc
        })
        .collect();
    let mut all = Accumulator::new(len);
    let mut even = Accumulator::new(len);
    let mut odd = Accumulator::new(len);
    for (i, p) in parts.iter().enumerate() {
        all.merge(p);
        if i % 2 == 0 {
            even.merge(p);
        } else {
            odd.merge(p);
        }
    }
    let stderr = all.stderr();
    let max_stderr = stderr.iter().fold(T::zero(), |m, &s| if s > m { s } else { m });
    McEstimate {
        samples: all.count() as usize,
        mean: all.mean,
        stderr,
        max_stderr,
        half_means: (even.mean, odd.mean),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McScalar {
    pub samples: usize,
    pub mean: f64,
    pub stderr: f64,
}

pub fn mc_scalar<F>(samples: usize, seed: Seed, f: F) -> McScalar
where
    F: Fn(&mut LabRng) -> f64 + Sync,
{
    let est = mc_average::<f64, _>(samples, seed, 1, |r| vec![Complex::new(f(r), 0.0)]);
    McScalar { samples: est.samples, mean: est.mean[0].re, stderr: est.stderr[0] }
}
