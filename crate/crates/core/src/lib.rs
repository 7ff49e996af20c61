//! Integer factoring by smooth-relation search on prime lattices, with the
//! rounding step of Babai's algorithm handed to a fixed-angle, single-layer
//! QAOA circuit. The circuit runs on an exact statevector emulator.
//!
//! The pipeline, module by module:
//!
//! * [`numtheory`]: factor bases, trial-division smoothness, gcd.
//! * [`lattice`]: prime lattice and target, exact LLL, Babai, the QUBO.
//! * [`qaoa`]: circuit compilation, emulation, sampling, angle training.
//! * [`relations`]: candidates to sr-pairs, GF(2) nullspace, congruence of squares.
//! * [`pipeline`]: the factoring loop, replay of recorded runs, collection benchmarks.
//!
//! The guide under `book/` walks through each stage; its code listings are
//! compiled as doctests of this crate.

pub mod error;
pub mod lattice;
pub mod numtheory;
pub mod pipeline;
pub mod qaoa;
pub mod relations;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/qubo.md")]
    mod qubo {}
    #[doc = include_str!("../../../book/src/qaoa.md")]
    mod qaoa {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
}
