//! Compositions, packed words, set compositions and permutations, with the
//! shuffle and quasi-shuffle products.
//!
//! Enumerations are returned in lexicographic order and multisets are maps
//! to multiplicities, so all output is reproducible.

mod composition;
mod permutation;
mod words;

use thiserror::Error;

pub use composition::{coarsenings, compositions_of, quasi_shuffle, shuffle, Composition, Multiset};
pub use permutation::{all_permutations, two_factorizations, Permutation};
pub use words::{ordered_bell, pack, packed_words, set_compositions, PackedWord, Parity, SetComposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("word {0} is not packed")]
    NotPacked(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("invalid set composition: {0}")]
    InvalidSetComposition(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
