use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::ensembles::{haar_unitary, HaarIsometryEnsemble, PriEnsemble};
use crate::error::{Error, Result};
use crate::moments::{epsilon_star, mc_average};
use crate::seed::{rng, split, LabRng, Seed};
use crate::tensor::{apply_local, random_unit_vector, ComplexOperator, Layout, RegisterState, MAX_DIM, OP_TOL};
use crate::{Isometry, Operator, State, C64};

use super::states::trace_distance;

/// Isometries `A -> A ⊗ B` queried through a unitary `U` on `A ⊗ B` with
/// the `B` input fixed to `|+...+>`.
pub trait QueryEnsemble: Send + Sync {
    fn descriptor(&self) -> String;
    fn input_dim(&self) -> usize;
    fn output_dim(&self) -> usize;
    fn sample_extension(&self, rng: &mut LabRng) -> Isometry;
}

impl QueryEnsemble for PriEnsemble {
    fn descriptor(&self) -> String {
        crate::ensembles::UnitaryEnsemble::<f64>::descriptor(self)
    }

    fn input_dim(&self) -> usize {
        1 << (self.n - self.s)
    }

    fn output_dim(&self) -> usize {
        1 << self.n
    }

    fn sample_extension(&self, rng: &mut LabRng) -> Isometry {
        self.sample_plus_extension(rng)
    }
}

impl QueryEnsemble for HaarIsometryEnsemble {
    fn descriptor(&self) -> String {
        crate::ensembles::UnitaryEnsemble::<f64>::descriptor(self)
    }

    fn input_dim(&self) -> usize {
        self.d_in
    }

    fn output_dim(&self) -> usize {
        self.d_out
    }

    fn sample_extension(&self, rng: &mut LabRng) -> Isometry {
        self.sample_plus_extension(rng)
    }
}

/// A `t`-query algorithm on registers `A, B_1..B_t, R`: query `i` acts on
/// `A B_i`, each `B_i` starts in `|+>^{⊗s}`, and `A_i` acts on everything
/// after query `i`.
#[derive(Clone, Debug)]
pub struct AdaptiveCircuit {
    pub t: usize,
    pub a_dim: usize,
    pub s: usize,
    pub r_dim: usize,
    /// `|A_0>` on `A ⊗ R`.
    pub initial: Vec<C64>,
    pub unitaries: Vec<Operator>,
}

impl AdaptiveCircuit {
    pub fn new(a_dim: usize, s: usize, r_dim: usize, initial: Vec<C64>, unitaries: Vec<Operator>) -> Result<Self> {
        let t = unitaries.len();
        if t == 0 {
            return Err(Error::InvalidParameter("an adaptive circuit needs at least one query".into()));
        }
        let total = a_dim
            .checked_mul(r_dim)
            .and_then(|x| x.checked_mul(1usize.checked_shl((s * t) as u32)?))
            .filter(|&x| x <= MAX_DIM)
            .ok_or(Error::DimensionOverflow { dim: usize::MAX, limit: MAX_DIM })?;
        if initial.len() != a_dim * r_dim {
            return Err(Error::DimensionMismatch(format!(
                "initial state of dimension {} on A ⊗ R of dimension {}",
                initial.len(),
                a_dim * r_dim
            )));
        }
        let norm: f64 = initial.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!("initial state has squared norm {norm}")));
        }
        for a in &unitaries {
            if a.rows() != total || a.cols() != total {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} interleaving unitary on a workspace of dimension {total}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !a.is_isometry(OP_TOL) {
                return Err(Error::InvalidParameter("interleaving operators must be unitary".into()));
            }
        }
        Ok(Self { t, a_dim, s, r_dim, initial, unitaries })
    }

    /// Haar-random interleavings and initial state.
    pub fn random(a_dim: usize, s: usize, r_dim: usize, t: usize, seed: Seed) -> Result<Self> {
        let mut r = rng(seed);
        let initial = random_unit_vector(a_dim * r_dim, &mut r);
        let total = a_dim * r_dim * (1usize << (s * t));
        if total > MAX_DIM {
            return Err(Error::DimensionOverflow { dim: total, limit: MAX_DIM });
        }
        let unitaries = (0..t).map(|_| haar_unitary(total, &mut r)).collect();
        Self::new(a_dim, s, r_dim, initial, unitaries)
    }

    pub fn b_dim(&self) -> usize {
        1 << self.s
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.a_dim];
        dims.extend(std::iter::repeat_n(self.b_dim(), self.t));
        dims.push(self.r_dim);
        dims
    }

    pub fn layout(&self) -> Result<Layout> {
        let mut regs = vec![("A".to_string(), self.a_dim)];
        regs.extend((1..=self.t).map(|i| (format!("B{i}"), self.b_dim())));
        regs.push(("R".to_string(), self.r_dim));
        Layout::new(regs)
    }

    /// `|A_0>_{AR} ⊗ |+>_{B_1..B_t}` in layout order, with `Λ` applied to
    /// the `B` registers when `distinct` is set.
    pub fn initial_state(&self, distinct: bool) -> Vec<C64> {
        let (b, t) = (self.b_dim(), self.t);
        let nb = b.pow(t as u32);
        let amp = 1.0 / (nb as f64).sqrt();
        let bdims = vec![b; t];
        let mut digits = vec![0; t];
        let plus: Vec<f64> = (0..nb)
            .map(|j| {
                crate::tensor::unflatten(j, &bdims, &mut digits);
                let mut sorted = digits.clone();
                sorted.sort_unstable();
                let collision = sorted.windows(2).any(|w| w[0] == w[1]);
                if distinct && collision {
                    0.0
                } else {
                    amp
                }
            })
            .collect();
        let mut out = Vec::with_capacity(self.a_dim * nb * self.r_dim);
        for a in 0..self.a_dim {
            for &p in &plus {
                for r in 0..self.r_dim {
                    out.push(self.initial[a * self.r_dim + r] * p);
                }
            }
        }
        out
    }

    fn run(&self, u: &Isometry, distinct: bool) -> Result<Vec<C64>> {
        let q = self.a_dim * self.b_dim();
        if u.dim_in() != q || u.dim_out() != q {
            return Err(Error::Layout(format!(
                "query unitary {}x{} on A ⊗ B of dimension {q}",
                u.dim_out(),
                u.dim_in()
            )));
        }
        let gate = u.to_dense().with_layout(vec![q], vec![q])?;
        let dims = self.dims();
        let mut v = self.initial_state(distinct);
        for (i, a) in self.unitaries.iter().enumerate() {
            apply_local(&mut v, &dims, 1, &[0, 1 + i], &gate)?;
            v = a.apply(&v)?;
        }
        Ok(v)
    }
}

/// `|A(V)> = A_t U_{A B_t} ... A_1 U_{A B_1} (|A_0> ⊗ |+>)`, with `u` the
/// unitary extension of the queried isometry.
pub fn adaptive_state(c: &AdaptiveCircuit, u: &Isometry) -> Result<State> {
    RegisterState::pure(c.layout()?, c.run(u, false)?, true)
}

/// `|A(V)_Λ>`: the same circuit with `Λ` on the `B` part of the initial
/// state. Unnormalized, with squared norm `distinct_plus_weight(s, t)`.
pub fn adaptive_state_distinct(c: &AdaptiveCircuit, u: &Isometry) -> Result<State> {
    RegisterState::pure(c.layout()?, c.run(u, true)?, false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlusWeight {
    /// `||Λ |+>^{⊗st}||^2 = prod_{i<t} (1 - i/2^s)`.
    pub exact: BigRational,
    pub weight: f64,
    /// Set when `t > 2^s`, where no distinct tuple exists.
    pub exceeds: bool,
}

pub fn distinct_plus_weight(s: usize, t: usize) -> PlusWeight {
    let q = BigInt::from(1u8) << s;
    let exact = (0..t).fold(BigRational::from_integer(1.into()), |acc, i| {
        let term = BigRational::new((&q - BigInt::from(i)).max(BigInt::from(0)), q.clone());
        acc * term
    });
    let weight = exact.to_f64().unwrap_or(0.0);
    let exceeds = BigInt::from(t) > q;
    PlusWeight { exact, weight, exceeds }
}

#[derive(Clone, Debug)]
pub struct GapEstimate {
    pub distance: f64,
    /// Split-half noise of `distance`.
    pub noise: f64,
}

fn ensemble_average(
    e: &dyn QueryEnsemble,
    c: &AdaptiveCircuit,
    distinct: bool,
    samples: usize,
    seed: Seed,
) -> Result<(Operator, Operator, Operator)> {
    let dims = c.dims();
    let n: usize = dims.iter().product();
    c.run(&e.sample_extension(&mut rng(seed)), distinct)?;
    let est = mc_average::<f64, _>(samples, seed, n * n, |r| {
        let v = c.run(&e.sample_extension(r), distinct).expect("shapes checked");
        let mut out = Vec::with_capacity(n * n);
        for a in &v {
            out.extend(v.iter().map(|b| a * b.conj()));
        }
        out
    });
    let op = |x: Vec<Complex<f64>>| ComplexOperator::square(dims.clone(), x);
    Ok((op(est.mean)?, op(est.half_means.0)?, op(est.half_means.1)?))
}

fn gap(
    ev: &dyn QueryEnsemble,
    eh: &dyn QueryEnsemble,
    c: &AdaptiveCircuit,
    distinct: bool,
    (ens_samples, haar_samples): (usize, usize),
    seed: Seed,
) -> Result<GapEstimate> {
    let (me, e0, e1) = ensemble_average(ev, c, distinct, ens_samples, split(seed, 0))?;
    let (mh, h0, h1) = ensemble_average(eh, c, distinct, haar_samples, split(seed, 1))?;
    Ok(GapEstimate {
        distance: trace_distance(&me, &mh)?,
        noise: 0.5 * (trace_distance(&e0, &e1)? + trace_distance(&h0, &h1)?),
    })
}

#[derive(Clone, Debug)]
pub struct AdaptiveAdvantage {
    pub ensemble: String,
    pub measured: GapEstimate,
    /// `2 √(1 - w)`: moving both averaged states to their `Λ`-projected
    /// versions costs at most `√(1 - w)` in trace distance each.
    pub leakage: f64,
    /// `ε*` at `d = output_dim`.
    pub epsilon_star: f64,
    /// `leakage + 2 ε*`.
    pub bound: f64,
}

/// Trace distance between `E_V |A(V)><A(V)|` under `ev` and under Haar
/// isometries of the same shape, with the assembled upper bound.
pub fn adaptive_advantage(
    ev: &dyn QueryEnsemble,
    c: &AdaptiveCircuit,
    haar_samples: usize,
    ens_samples: usize,
    seed: Seed,
) -> Result<AdaptiveAdvantage> {
    if ev.input_dim() != c.a_dim || ev.output_dim() != c.a_dim * c.b_dim() {
        return Err(Error::Layout(format!(
            "ensemble maps {} -> {}, circuit queries {} -> {}",
            ev.input_dim(),
            ev.output_dim(),
            c.a_dim,
            c.a_dim * c.b_dim()
        )));
    }
    let haar = HaarIsometryEnsemble::new(ev.input_dim(), ev.output_dim())?;
    let measured = gap(ev, &haar, c, false, (ens_samples, haar_samples), seed)?;
    let w = distinct_plus_weight(c.s, c.t).weight;
    let leakage = 2.0 * (1.0 - w).max(0.0).sqrt();
    let eps = epsilon_star(ev.output_dim(), c.t)?;
    let eps = *eps.numer() as f64 / *eps.denom() as f64;
    Ok(AdaptiveAdvantage {
        ensemble: ev.descriptor(),
        measured,
        leakage,
        epsilon_star: eps,
        bound: leakage + 2.0 * eps,
    })
}

/// Trace distance between the averaged `Λ`-projected states under a
/// candidate ensemble and under Haar isometries. Candidates for a
/// distinct-input adaptive analysis of unitaries plug in here; the harness
/// only reports the measured gap.
pub fn distinct_gap(
    candidate: &dyn QueryEnsemble,
    c: &AdaptiveCircuit,
    samples: usize,
    seed: Seed,
) -> Result<GapEstimate> {
    let haar = HaarIsometryEnsemble::new(candidate.input_dim(), candidate.output_dim())?;
    gap(candidate, &haar, c, true, (samples, samples), seed)
}
