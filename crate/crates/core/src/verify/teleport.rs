use std::collections::BTreeSet;

use num_complex::Complex;
use rand::seq::index::sample;

use crate::ensembles::haar_unitary;
use crate::seed::LabRng;
use crate::error::{Error, Result};
use crate::tensor::{random_unit_vector, unflatten, ComplexOperator, MAX_DIM, OP_TOL};
use crate::{Operator, C64};

/// Inputs of the generalized gate-teleportation identity.
#[derive(Clone, Debug)]
pub struct TeleportSpec {
    pub t: usize,
    /// Dimension `D` of every register.
    pub dim: usize,
    /// Interleaving unitaries `A_1..A_t`.
    pub a: Vec<Operator>,
    /// Query unitaries `U_1..U_t`.
    pub u: Vec<Operator>,
    pub psi: Vec<C64>,
    /// The index set `S ⊆ [D]^t`.
    pub set: Vec<Vec<usize>>,
}

impl TeleportSpec {
    pub fn new(dim: usize, a: Vec<Operator>, u: Vec<Operator>, psi: Vec<C64>, set: Vec<Vec<usize>>) -> Result<Self> {
        let t = a.len();
        if t == 0 || u.len() != t {
            return Err(Error::InvalidParameter(format!("{} interleaving and {} query unitaries", t, u.len())));
        }
        if set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        for g in a.iter().chain(&u) {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!("{}x{} unitary for D = {dim}", g.rows(), g.cols())));
            }
            if !g.is_isometry(OP_TOL) {
                return Err(Error::InvalidParameter("teleportation gates must be unitary".into()));
            }
        }
        if psi.len() != dim {
            return Err(Error::DimensionMismatch(format!("state of dimension {} for D = {dim}", psi.len())));
        }
        let mut seen = BTreeSet::new();
        for x in &set {
            if x.len() != t || x.iter().any(|&v| v >= dim) {
                return Err(Error::InvalidParameter(format!("index tuple {x:?} is not in [{dim}]^{t}")));
            }
            if !seen.insert(x.clone()) {
                return Err(Error::InvalidParameter(format!("index tuple {x:?} repeated")));
            }
        }
        Ok(Self { t, dim, a, u, psi, set })
    }

    /// Haar-random gates and state, and a uniformly random `S` of the
    /// given size.
    pub fn random(t: usize, dim: usize, set_size: usize, rng: &mut LabRng) -> Result<Self> {
        let mut draw = |_| haar_unitary(dim, &mut *rng);
        let a: Vec<Operator> = (0..t).map(&mut draw).collect();
        let u: Vec<Operator> = (0..t).map(&mut draw).collect();
        let psi = random_unit_vector(dim, rng);
        let n = dim.pow(t as u32);
        let dims = vec![dim; t];
        let set = sample(rng, n, set_size.clamp(1, n))
            .into_iter()
            .map(|i| {
                let mut x = vec![0; t];
                unflatten(i, &dims, &mut x);
                x
            })
            .collect();
        Self::new(dim, a, u, psi, set)
    }
}

/// `E(φ)` for `φ = (⊗_i I ⊗ U_i) |Ω_S><Ω_S| (⊗_i I ⊗ U_i)^dagger`, built by
/// contracting the maximally entangled bras with `|ψ><ψ| ⊗ φ` on registers
/// `C_0, C_1, C_1', ..., C_t, C_t'`.
pub fn gate_teleport(spec: &TeleportSpec) -> Result<Operator> {
    let (t, dd) = (spec.t, spec.dim);
    let total = dd.checked_pow(2 * t as u32 + 1).unwrap_or(usize::MAX);
    if total > MAX_DIM {
        return Err(Error::DimensionOverflow { dim: total, limit: MAX_DIM });
    }
    let m = dd.pow(2 * t as u32);
    let mut omega = vec![C64::new(0.0, 0.0); m];
    for x in &spec.set {
        let mut part = vec![C64::new(1.0, 0.0)];
        for (i, &xi) in x.iter().enumerate() {
            let mut pair = vec![C64::new(0.0, 0.0); dd * dd];
            for c in 0..dd {
                pair[xi * dd + c] = spec.u[i].get(c, xi);
            }
            part = part.iter().flat_map(|p| pair.iter().map(move |q| p * q)).collect();
        }
        omega.iter_mut().zip(&part).for_each(|(o, p)| *o += p);
    }
    let reg_dims = vec![dd; 2 * t];
    let phi = ComplexOperator::outer(&reg_dims, &omega, &omega)?;
    let psi = ComplexOperator::outer(&[dd], &spec.psi, &spec.psi)?;
    let input = psi.kron(&phi)?;

    let in_dims = vec![dd; 2 * t + 1];
    let mut idx = vec![0; 2 * t + 1];
    let k = ComplexOperator::from_fn(&[dd], &in_dims.clone(), |o, col| {
        unflatten(col, &in_dims, &mut idx);
        // idx = (c_0, c_1, c_1', ..., c_t, c_t')
        if idx[0] != idx[1] {
            return Complex::new(0.0, 0.0);
        }
        let mut v = spec.a[t - 1].get(o, idx[2 * t]);
        for i in 1..t {
            v *= spec.a[i - 1].get(idx[2 * i + 1], idx[2 * i]);
        }
        v
    })?;
    k.matmul(&input)?.matmul(&k.adjoint())
}

/// `sum_{x in S} A_t U_t |x_t><x_t| ... A_1 U_1 |x_1><x_1| ψ>`.
pub fn teleport_rhs(spec: &TeleportSpec) -> Vec<C64> {
    let dd = spec.dim;
    let mut out = vec![C64::new(0.0, 0.0); dd];
    for x in &spec.set {
        let mut coeff = spec.psi[x[0]];
        let mut v = vec![C64::new(0.0, 0.0); dd];
        for (i, &xi) in x.iter().enumerate() {
            if i > 0 {
                coeff = v[xi];
            }
            // v = A_i U_i |x_i> coeff
            let col: Vec<C64> = (0..dd).map(|r| spec.u[i].get(r, xi) * coeff).collect();
            v = spec.a[i].apply(&col).expect("square gate of dimension D");
        }
        out.iter_mut().zip(&v).for_each(|(o, p)| *o += p);
    }
    out
}

/// Entrywise residual between [`gate_teleport`] and the projector onto
/// [`teleport_rhs`].
pub fn verify_teleport_identity(spec: &TeleportSpec) -> Result<f64> {
    let lhs = gate_teleport(spec)?;
    let v = teleport_rhs(spec);
    let rhs = ComplexOperator::outer(&[spec.dim], &v, &v)?;
    lhs.max_abs_diff(&rhs)
}
