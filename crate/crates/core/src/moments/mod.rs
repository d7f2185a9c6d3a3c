//! Twirling channels, the distinct subspace, and superoperators.

mod channel;
mod closed_form;
mod distinct;
mod mc;
mod superop;
mod twirl;

pub use channel::{ChannelMode, Halves, MomentChannel, Stage};
pub use closed_form::{pf_twirl_closed_form, pf_twirl_exact, perm_twirl_exact, phase_twirl_exact};
pub use distinct::{
    distinct_data, distinct_mask, distinct_projector, distinct_tuples, epsilon_star, is_distinct, max_deficiency, DistinctBlock,
    DistinctData,
};
pub use mc::{mc_average, mc_scalar, Accumulator, McEstimate, McScalar, MC_CHUNK};
pub use superop::{amplification_identity_check, superoperator_matrix, AmplificationReport};
pub use twirl::{
    apply_tensor_power, conjugate_tensor_power, twirl_exact_enum, twirl_exact_enum_pure, twirl_mc, twirl_mc_pure,
    ENUM_BUDGET,
};
