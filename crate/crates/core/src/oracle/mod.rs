//! Brute-force ground truth: small quandle censuses, quandle isomorphism
//! search and exhaustive automorphism groups.

mod auts;
mod census;
mod iso;

pub use auts::{aut_bruteforce, AUT_SEARCH_CAP};
pub use census::{
    affine_quandles, canonical_quandle, census, enumerate_quandles, Census, ENUMERATION_CAP,
};
pub use iso::{iso_bruteforce, ISO_SEARCH_CAP};
