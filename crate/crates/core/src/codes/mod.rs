//! Comma-free word codes, obligation words and comma-free picture codes.

mod bounds;
mod closure;
mod family;
mod picture;
mod search;
mod words;

use thiserror::Error;

use crate::grid::GridError;
use crate::lang::LangError;

pub use bounds::{choose_k, is_prime, numerosity_lower_bound, NumerosityBound};
pub use closure::{closure_minus_forbidden, closure_tileset, encoded_local_tileset, DEFAULT_TILE_BUDGET};
#[cfg(test)]
pub(crate) use family::tests as family_tests;
pub use family::{family_count, generate_picture_code, CodeFamilySpec, GeneratedCode};
pub use picture::{code_occurrences, is_comma_free_brute_force, is_comma_free_picture_code, PictureCode};
pub use search::{find_comma_free_word_code, search_comma_free_picture_code, WordCodeSearch};
pub use words::{
    eastman_count, is_comma_free_word_code, is_obligation_word, make_obligation_word, ObligationWord, WordCode,
};

/// Default node budget for exhaustive code searches.
pub const DEFAULT_CODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("{0}")]
    Domain(String),
    #[error("no comma-free code of {target} words of length {k}: {reason}")]
    Infeasible { k: usize, target: usize, reason: String },
    #[error("budget of {budget} exceeded: {required} {what} required")]
    Budget { budget: u64, required: u128, what: &'static str },
    #[error("code has {available} pictures but {needed} are needed")]
    Insufficient { needed: usize, available: usize },
}
