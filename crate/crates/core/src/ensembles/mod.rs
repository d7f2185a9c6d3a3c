//! Samplers and enumerators for the unitary and isometry families.

mod clifford;
mod families;
mod gf2n;
mod haar;
mod keyed;
mod kwise;
mod permdist;
mod pri;
mod unitary;

pub use clifford::{clifford, symplectic_form, CliffordEnsemble, Pauli, MAX_CLIFFORD_QUBITS};
pub use families::{
    pfc, pfc_sample, perm_operator, phase_operator, PermutationEnsemble, PhaseEnsemble, PolyPhaseEnsemble,
};
pub use gf2n::{irreducible_poly, Gf2n};
pub use haar::{haar_isometry, haar_unitary, HaarEnsemble, HaarIsometryEnsemble};
pub use keyed::{keyed_prf, keyed_prp, FeistelPrp, KeyedPfcEnsemble, NOT_SECURE};
pub use kwise::{kwise_poly_family, KWiseFunctionFamily};
pub use permdist::{exact_twise_perm, kwise_perm_delta, PermDistribution, PermSupport};
pub use pri::{plus_extension, pri_isometry, PriEnsemble, PriKeys};
pub use unitary::{
    uniform_permutation, Exactness, FiniteEnsemble, IdentityEnsemble, Isometry, ProductEnsemble, UnitaryEnsemble,
};
