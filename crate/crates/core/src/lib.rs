//! Two-dimensional picture languages: tiling systems, strictly locally
//! testable languages, comma-free picture codes and local alphabet
//! reduction.

pub mod cli;
pub mod codes;
pub mod grid;
pub mod lang;
pub mod reduce;
