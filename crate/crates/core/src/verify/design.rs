use std::sync::Arc;

use crate::ensembles::KeyedPfcEnsemble;
use crate::error::{Error, Result};
use crate::moments::{max_deficiency, MomentChannel};
use crate::seed::{rng, split, Seed};
use crate::symgroup::haar_twirl_exact;
use crate::tensor::{RegisterState, StateRepr};
use crate::{Channel, Ensemble, State};

use super::states::{maximally_entangled, trace_distance, twirl_layout};

#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub label: String,
    /// Trace distance between the channel output and the Haar twirl.
    pub distance: f64,
    /// Split-half noise estimate of `distance`; 0 for exact channels.
    pub noise: f64,
}

#[derive(Clone, Debug)]
pub struct DesignErrorReport {
    pub channel: String,
    pub d: usize,
    pub t: usize,
    pub exact: bool,
    pub probes: Vec<ProbeResult>,
    /// Max over probes: a lower bound on the diamond distance (in trace
    /// distance units), not the diamond distance itself.
    pub lower_bound: f64,
    /// Noise of the maximizing probe.
    pub noise: f64,
}

/// Upper bounds on the PFC design error, in trace distance.
///
/// With `δ = t(t-1)/(d+1)` the Clifford twirl leaves weight at most `δ`
/// outside the distinct subspace, so by gentle measurement projecting onto
/// it moves the state by at most `√δ`. Both twirls are contractive and the
/// Haar twirl absorbs the Clifford twirl, so
/// `T(M_PFC(ρ), M_Haar(ρ)) <= 2√δ + max_λ deficiency`.
///
/// Returns `(2√δ + 2 max_λ deficiency, 2√δ + max_λ deficiency)`; the first
/// is the looser form that charges the deficiency twice.
pub fn pfc_design_bounds(d: usize, t: usize) -> Result<(f64, f64)> {
    let delta = (t * t.saturating_sub(1)) as f64 / (d + 1) as f64;
    let def = max_deficiency(d, t)?;
    let def = *def.numer() as f64 / *def.denom() as f64;
    Ok((2.0 * delta.sqrt() + 2.0 * def, 2.0 * delta.sqrt() + def))
}

/// The maximally entangled probe on `(C^d)^{⊗t} ⊗ C^{d^t}` and `random`
/// Haar-random pure probes on the same space.
pub fn standard_probes(d: usize, t: usize, random: usize, seed: Seed) -> Result<Vec<(String, State)>> {
    let n = d.pow(t as u32);
    let mut probes = vec![("max-entangled".to_string(), maximally_entangled(d, t)?)];
    for i in 0..random {
        let mut r = rng(split(seed, i as u64));
        probes.push((format!("purified-{i}"), RegisterState::random_pure(twirl_layout(d, t, n)?, &mut r)?));
    }
    Ok(probes)
}

fn probe_distance(channel: &Channel, label: &str, probe: &State) -> Result<ProbeResult> {
    let (d, t) = (channel.d(), channel.t());
    let dims = probe.layout().dims();
    let (out, halves) = match probe.repr() {
        StateRepr::Pure(v) => channel.apply_pure_split(v, &dims)?,
        StateRepr::Mixed(rho) if channel.is_exact() => (channel.apply(rho)?, None),
        StateRepr::Mixed(_) => {
            return Err(Error::InvalidParameter("sampled channels take pure probes only".into()));
        }
    };
    let haar = haar_twirl_exact(&probe.density()?, d, t)?;
    let distance = trace_distance(&out, &haar)?;
    let noise = match halves {
        Some((even, odd)) => 0.5 * trace_distance(&even, &odd)?,
        None => 0.0,
    };
    Ok(ProbeResult { label: label.to_string(), distance, noise })
}

/// Probe-maximized distance between `channel` and the Haar twirl.
pub fn design_error(channel: &Channel, probes: &[(String, State)]) -> Result<DesignErrorReport> {
    if probes.is_empty() {
        return Err(Error::InvalidParameter("design error needs at least one probe".into()));
    }
    let results = probes
        .iter()
        .map(|(label, p)| probe_distance(channel, label, p))
        .collect::<Result<Vec<_>>>()?;
    let best = results
        .iter()
        .max_by(|a, b| a.distance.total_cmp(&b.distance))
        .expect("nonempty");
    Ok(DesignErrorReport {
        channel: channel.descriptor(),
        d: channel.d(),
        t: channel.t(),
        exact: channel.is_exact(),
        lower_bound: best.distance,
        noise: best.noise,
        probes: results,
    })
}

/// Trace distance between the `t`-fold twirl of `probe` under `channel`
/// and under the Haar measure.
pub fn nonadaptive_advantage(channel: &Channel, label: &str, probe: &State) -> Result<ProbeResult> {
    probe_distance(channel, label, probe)
}

#[derive(Clone, Debug)]
pub struct KeyedGap {
    pub keyed: ProbeResult,
    pub random: ProbeResult,
    /// Trace distance between the keyed and fully random twirl outputs.
    pub gap: f64,
    pub gap_noise: f64,
}

/// Runs the keyed PFC stand-in and the fully random PFC ensemble on the
/// same probe and records how far apart their twirls are.
pub fn keyed_vs_random(n: usize, t: usize, probe: &State, samples: usize, seed: Seed) -> Result<KeyedGap> {
    let keyed_e: Arc<Ensemble> = Arc::new(KeyedPfcEnsemble::new(n)?);
    let keyed = MomentChannel::monte_carlo(keyed_e, t, samples, seed);
    let random = MomentChannel::pfc(n, t, samples, split(seed, 1))?;
    let StateRepr::Pure(v) = probe.repr() else {
        return Err(Error::InvalidParameter("keyed comparison takes a pure probe".into()));
    };
    let dims = probe.layout().dims();
    let (k_out, k_halves) = keyed.apply_pure_split(v, &dims)?;
    let (r_out, _) = random.apply_pure_split(v, &dims)?;
    let gap = trace_distance(&k_out, &r_out)?;
    let gap_noise = match k_halves {
        Some((even, odd)) => 0.5 * trace_distance(&even, &odd)?,
        None => 0.0,
    };
    Ok(KeyedGap {
        keyed: probe_distance(&keyed, "keyed", probe)?,
        random: probe_distance(&random, "random", probe)?,
        gap,
        gap_noise,
    })
}
