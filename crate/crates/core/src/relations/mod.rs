//! From measured bitstrings to sr-pairs, and from sr-pairs to a factor of `N`.

mod gf2;
mod solve;
mod srpair;

pub use gf2::{left_nullspace, BitRow};
pub use solve::{try_factor, FactorResult, RelationSet};
pub use srpair::{bitstring_to_candidate, exponents_to_uv, verify_sr_pair, SrPair};
