use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::closed_form::pf_twirl_exact;
use super::twirl::{twirl_exact_enum, twirl_exact_enum_pure, twirl_mc, twirl_mc_pure};
use crate::ensembles::{CliffordEnsemble, UnitaryEnsemble};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::Seed;
use crate::symgroup::haar_twirl_exact;
use crate::tensor::ComplexOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelMode {
    MonteCarlo { samples: usize, seed: Seed },
    ExactEnum,
    ClosedFormHaar,
    /// Exact `PF` twirl through the phase-parity and permutation-orbit
    /// averages; exact for every input, not only distinct-supported ones.
    ClosedFormPf,
}

impl fmt::Display for ChannelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelMode::MonteCarlo { samples, seed } => write!(f, "monte-carlo(samples={samples}, seed={seed})"),
            ChannelMode::ExactEnum => f.write_str("exact-enum"),
            ChannelMode::ClosedFormHaar => f.write_str("closed-form-haar"),
            ChannelMode::ClosedFormPf => f.write_str("closed-form-pf"),
        }
    }
}

/// One twirl in a composite channel.
#[derive(Clone)]
pub struct Stage<T: Real> {
    pub mode: ChannelMode,
    pub ensemble: Option<Arc<dyn UnitaryEnsemble<T>>>,
}

/// The t-th moment channel of an ensemble, or a composition of such
/// channels applied in `stages` order.
///
/// All stages act on the leading `(C^d)^{⊗t}` factor of the input; any
/// trailing factor is an untouched environment.
#[derive(Clone)]
pub struct MomentChannel<T: Real> {
    d: usize,
    t: usize,
    stages: Vec<Stage<T>>,
}

/// Outputs built from the even- and odd-numbered sample chunks.
pub type Halves<T> = (ComplexOperator<T>, ComplexOperator<T>);

impl<T: Real> MomentChannel<T> {
    pub fn identity(d: usize, t: usize) -> Self {
        Self { d, t, stages: Vec::new() }
    }

    pub fn haar(d: usize, t: usize) -> Self {
        Self { d, t, stages: vec![Stage { mode: ChannelMode::ClosedFormHaar, ensemble: None }] }
    }

    pub fn pf(d: usize, t: usize) -> Self {
        Self { d, t, stages: vec![Stage { mode: ChannelMode::ClosedFormPf, ensemble: None }] }
    }

    pub fn exact(ensemble: Arc<dyn UnitaryEnsemble<T>>, t: usize) -> Self {
        Self { d: ensemble.dim_in(), t, stages: vec![Stage { mode: ChannelMode::ExactEnum, ensemble: Some(ensemble) }] }
    }

    pub fn monte_carlo(ensemble: Arc<dyn UnitaryEnsemble<T>>, t: usize, samples: usize, seed: Seed) -> Self {
        Self {
            d: ensemble.dim_in(),
            t,
            stages: vec![Stage { mode: ChannelMode::MonteCarlo { samples, seed }, ensemble: Some(ensemble) }],
        }
    }

    /// `M_PFC = M_PF ∘ M_C`: the Clifford twirl (exact for `n <= 2`, sampled
    /// otherwise) followed by the exact `PF` twirl.
    pub fn pfc(n: usize, t: usize, samples: usize, seed: Seed) -> Result<Self> {
        let c: Arc<dyn UnitaryEnsemble<T>> = Arc::new(CliffordEnsemble::new(n)?);
        let first = if c.cardinality().is_some() {
            Self::exact(c, t)
        } else {
            Self::monte_carlo(c, t, samples, seed)
        };
        first.then(Self::pf(1 << n, t))
    }

    /// `next ∘ self`.
    pub fn then(mut self, next: Self) -> Result<Self> {
        if self.d != next.d || self.t != next.t {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose channels on (d={}, t={}) and (d={}, t={})",
                self.d, self.t, next.d, next.t
            )));
        }
        self.stages.extend(next.stages);
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn stages(&self) -> &[Stage<T>] {
        &self.stages
    }

    pub fn is_exact(&self) -> bool {
        !self.stages.iter().any(|s| matches!(s.mode, ChannelMode::MonteCarlo { .. }))
    }

    pub fn descriptor(&self) -> String {
        if self.stages.is_empty() {
            return format!("identity(d={}, t={})", self.d, self.t);
        }
        let parts: Vec<String> = self
            .stages
            .iter()
            .map(|s| match &s.ensemble {
                Some(e) => format!("{}[{}]", s.mode, e.descriptor()),
                None => format!("{}(d={})", s.mode, self.d),
            })
            .collect();
        format!("{} (t={})", parts.join(" then "), self.t)
    }

    fn apply_stage(&self, stage: &Stage<T>, x: &ComplexOperator<T>) -> Result<ComplexOperator<T>> {
        let (d, t) = (self.d, self.t);
        match (stage.mode, &stage.ensemble) {
            (ChannelMode::ClosedFormHaar, _) => haar_twirl_exact(x, d, t),
            (ChannelMode::ClosedFormPf, _) => pf_twirl_exact(x, d, t),
            (ChannelMode::ExactEnum, Some(e)) => twirl_exact_enum(e.as_ref(), t, x),
            (ChannelMode::MonteCarlo { samples, seed }, Some(e)) => {
                let est = twirl_mc(e.as_ref(), t, x, samples, seed)?;
                ComplexOperator::new(x.dims_out().to_vec(), x.dims_in().to_vec(), est.mean)
            }
            (mode, None) => Err(Error::InvalidParameter(format!("{mode} stage without an ensemble"))),
        }
    }

    pub fn apply(&self, x: &ComplexOperator<T>) -> Result<ComplexOperator<T>> {
        self.stages
            .iter()
            .try_fold(x.clone(), |acc, s| self.apply_stage(s, &acc))
    }

    /// Applies the channel to `|v><v|`, using the pure-state path for an
    /// enumerated or sampled first stage.
    pub fn apply_pure(&self, v: &[Complex<T>], dims: &[usize]) -> Result<ComplexOperator<T>> {
        let Some((first, rest)) = self.stages.split_first() else {
            return ComplexOperator::outer(dims, v, v);
        };
        let start = match (first.mode, &first.ensemble) {
            (ChannelMode::ExactEnum, Some(e)) => twirl_exact_enum_pure(e.as_ref(), self.t, v, dims)?,
            (ChannelMode::MonteCarlo { samples, seed }, Some(e)) => {
                let est = twirl_mc_pure(e.as_ref(), self.t, v, samples, seed)?;
                ComplexOperator::square(dims.to_vec(), est.mean)?
            }
            _ => self.apply_stage(first, &ComplexOperator::outer(dims, v, v)?)?,
        };
        rest.iter().try_fold(start, |acc, s| self.apply_stage(s, &acc))
    }

    /// Applies the channel to `|v><v|` and, when the first stage is
    /// Monte-Carlo, also returns the outputs built from the even- and
    /// odd-numbered sample chunks alone.
    pub fn apply_pure_split(
        &self,
        v: &[Complex<T>],
        dims: &[usize],
    ) -> Result<(ComplexOperator<T>, Option<Halves<T>>)> {
        let Some((first, rest)) = self.stages.split_first() else {
            return Ok((ComplexOperator::outer(dims, v, v)?, None));
        };
        let (ChannelMode::MonteCarlo { samples, seed }, Some(e)) = (first.mode, &first.ensemble) else {
            return Ok((self.apply_pure(v, dims)?, None));
        };
        let est = twirl_mc_pure(e.as_ref(), self.t, v, samples, seed)?;
        let finish = |entries: Vec<Complex<T>>| -> Result<ComplexOperator<T>> {
            let start = ComplexOperator::square(dims.to_vec(), entries)?;
            rest.iter().try_fold(start, |acc, s| self.apply_stage(s, &acc))
        };
        let (even, odd) = est.half_means;
        Ok((finish(est.mean)?, Some((finish(even)?, finish(odd)?))))
    }
}
