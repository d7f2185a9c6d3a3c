//! Experiments: design-error probes, the Clifford distinct overlap,
//! relative-error certificates, gate teleportation and query harnesses.
//!
//! Every bound attached to a measured value is a finite-dimension bound,
//! documented next to the function that assembles it.

mod adaptive;
mod design;
mod kwise;
mod overlap;
mod relative;
mod states;
mod teleport;

pub use adaptive::{
    adaptive_advantage, adaptive_state, adaptive_state_distinct, distinct_gap, distinct_plus_weight,
    AdaptiveAdvantage, AdaptiveCircuit, PlusWeight, QueryEnsemble,
};
pub use design::{
    design_error, keyed_vs_random, nonadaptive_advantage, pfc_design_bounds, standard_probes, DesignErrorReport,
    KeyedGap, ProbeResult,
};
pub use kwise::{kwise_exhaustive_check, kwise_substitution, KWiseCheck, SubstitutionReport};
pub use overlap::{
    adversarial_probes, clifford_design_residual, clifford_distinct_overlap, clifford_distinct_overlap_exact,
    clifford_overlap_bound, OverlapReport,
};
pub use relative::{relative_error_certificate, RelativeErrorReport};
pub use states::{
    distinct_outside_weight, maximally_entangled, random_distinct_operator, random_distinct_state, trace_distance,
    twirl_layout,
};
pub use teleport::{gate_teleport, teleport_rhs, verify_teleport_identity, TeleportSpec};
