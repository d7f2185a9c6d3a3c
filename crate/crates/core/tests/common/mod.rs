//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use num_complex::Complex;
use pfclab::seed::{rng, LabRng};
use pfclab::tensor::ComplexOperator;
use pfclab::{Operator, C64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn random_matrix(dims: &[usize], r: &mut LabRng) -> Operator {
    let n: usize = dims.iter().product();
    let e = (0..n * n).map(|_| c(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)).collect();
    ComplexOperator::square(dims.to_vec(), e).unwrap()
}

pub fn seeded(seed: u64) -> LabRng {
    rng(seed)
}

/// Dense `n x n` matrix from an operator, row-major.
pub fn dense(a: &Operator) -> Vec<Vec<C64>> {
    (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j)).collect()).collect()
}

pub fn naive_matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); m]; n];
    for i in 0..n {
        for j in 0..m {
            for l in 0..k {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

pub fn naive_kron(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn naive_adjoint(a: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let (n, m) = (a.len(), a[0].len());
    (0..m).map(|j| (0..n).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<C64>> {
    (0..n).map(|i| (0..n).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect()
}

pub fn max_diff(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

pub fn max_diff_op(a: &Operator, b: &[Vec<C64>]) -> f64 {
    max_diff(&dense(a), b)
}

/// `U^{⊗t} ⊗ I_env` by repeated Kronecker products.
pub fn tensor_power_env(u: &[Vec<C64>], t: usize, env: usize) -> Vec<Vec<C64>> {
    let mut out = identity(1);
    for _ in 0..t {
        out = naive_kron(&out, u);
    }
    naive_kron(&out, &identity(env))
}

/// `sum_k w_k U_k X U_k^dagger` with the `U_k` given densely.
pub fn naive_twirl(us: &[Vec<Vec<C64>>], t: usize, x: &Operator) -> Vec<Vec<C64>> {
    let d = us[0].len();
    let n = d.pow(t as u32);
    let env = x.rows() / n;
    let xd = dense(x);
    let w = 1.0 / us.len() as f64;
    let mut acc = vec![vec![c(0.0, 0.0); x.rows()]; x.rows()];
    for u in us {
        let big = tensor_power_env(u, t, env);
        let y = naive_matmul(&naive_matmul(&big, &xd), &naive_adjoint(&big));
        for (ar, yr) in acc.iter_mut().zip(&y) {
            for (a, v) in ar.iter_mut().zip(yr) {
                *a += v * w;
            }
        }
    }
    acc
}

/// All permutations of `0..n` by Heap's algorithm (order irrelevant).
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Dense matrix of `|x> -> s(x) |π(x)>`.
pub fn monomial(perm: &[usize], signs: &[f64]) -> Vec<Vec<C64>> {
    let n = perm.len();
    let mut m = vec![vec![c(0.0, 0.0); n]; n];
    for x in 0..n {
        m[perm[x]][x] = c(signs[x], 0.0);
    }
    m
}

/// Number of permutations of `0..t` with the given number of cycles.
pub fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for i in 0..p.len() {
        if !seen[i] {
            count += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    count
}

/// Trace norm via the eigenvalues of `A^dagger A` computed by nalgebra.
pub fn trace_norm_oracle(a: &Operator) -> f64 {
    let m = nalgebra::DMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j));
    m.singular_values().iter().sum()
}
