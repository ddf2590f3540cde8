//! Finite quandles, their displacement groups and congruences, and the
//! classification of non-affine connected quandles of order p³.

pub mod arith;
pub mod classify;
pub mod construct;
pub mod error;
pub mod group;
pub mod oracle;
pub mod pcgroup;
pub mod perm;
pub mod quandle;

pub use construct::{
    affine_cyclic, affine_quandle, connectedness_frattini, coset_iso, coset_quandle,
    minimal_representation, AutUniverse, CosetSpec, PcCoset,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use pcgroup::{
    aut_fix, aut_induced, aut_twisted_subgroup, pc_aut, pc_make, pc_mul, pc_pow, pc_to_perm,
    FamilyTag, GroupAut, GroupFamily, PcElement, PcGroup,
};
pub use perm::{
    action_profile, center, close_group, compose, frattini_p_group, lower_central_series,
    stabilizer, Perm, PermGroup,
};
pub use quandle::{quandle_from_table, Congruence, Predicates, Quandle};
