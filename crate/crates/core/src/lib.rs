//! Toric modular forms: exact q-expansions from fans and degree functions.

pub mod arith;
pub mod forms;
pub mod generators;
pub mod geom;
pub mod hecke;
pub mod verify;
