//! Relative Picard groups of curves with modulus.

pub mod arith;
pub mod curve;
pub mod local_units;
pub mod modulus;
pub mod pair;
pub mod picard;
pub mod picard_q;
pub mod report;
pub mod syntax;
pub mod verify;
