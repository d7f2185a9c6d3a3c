//! Symmetric groups, their characters, and Schur-Weyl duality on
//! `(C^d)^{\otimes t}`.

mod characters;
mod partition;
mod perm;
mod schur;
mod weingarten;

pub use characters::{character, character_table, CharacterTable};
pub use partition::{content_product, partitions, specht_dim, weyl_dim, Partition, MAX_T};
pub use perm::{all_permutations, factorial, Permutation};
pub use schur::{isotypic_projector, perm_index_map, perm_rep, schur_blocks, SchurBlock};
pub use weingarten::{gram_matrix, haar_twirl_exact, weingarten_exact, weingarten_matrix};
