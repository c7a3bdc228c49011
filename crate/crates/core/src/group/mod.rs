//! Finite-group engine: permutations, enumerated permutation groups,
//! quotients, automorphisms, semidirect products, and abelian duals.

pub mod abelian;
pub mod auto;
pub mod catalog;
pub mod perm;
pub mod permgroup;
pub mod smith;
pub mod table;

pub use abelian::{abelian_dual, abelianization, coordinatize, AbelianGroup, CharacterOf};
pub use auto::{extend_automorphism, semidirect, AutoMap};
pub use perm::Perm;
pub use permgroup::{generate, is_normal, orbits_classical, quotient_data, PermGroup, Quotient, DEFAULT_CAP};
pub use table::TableGroup;
