//! Free-group words, cyclic words and reduced sequences.

mod alphabet;
mod cyclic;
mod sequence;
mod word;

pub use alphabet::{Alphabet, Gen, A, A1, A2, B, B2, T, T1, X, Y};
pub use cyclic::{cyclic_core, cyclic_reduce, least_rotation, CyclicWord};
pub use sequence::{
    double_coset_split, hnn_normalize, split_to_arc_form, term_multiset, AmalgamSequence, AmalgamTerm,
    Factor, FillingVerdict, HnnSequence, HnnTerm, ReducedSequence, Violation,
};
pub use word::{reduce, Letter, Sign, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("word reduces to the identity")]
    EmptyWord,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator {0:?} is not part of this presentation")]
    ForeignGenerator(Gen),
    #[error("element has no stable letter after pinching")]
    NotInHnnForm,
    #[error("not in arc form: {0}")]
    NotArcForm(String),
}
