//! Difference sets and relative difference sets in finite abelian groups,
//! antipodal covers of `K_{k,k}`, coset graphs of linear codes and the
//! codeword-to-line maps over `GF(q)` and `Z₄`.

pub mod code;
pub mod cover;
pub mod diffset;

pub use code::{code_to_lines, coset_character_sums, coset_graph, coset_spectrum, Alphabet, CodeLineVariant, CosetGraph, LinearCode, MAX_CODEWORDS,
    MAX_COSETS,
};
pub use cover::{array_spectrum, distance_census, rds_cover_graph, tank_trap_cover, tank_trap_graph, CensusFailure, Graph, GraphWithSpectrum, IntersectionArray};
pub use diffset::{
    classify_difference_set, diffset_lines, galois_ring_rds, rds_to_mubs, semifield_rds, singer_difference_set, DiffSetInput,
    DifferenceSetKind, DifferenceSetReport, SUBGROUP_SEARCH_LIMIT,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GgcError {
    #[error("element index {0} is outside the group")]
    BadElement(usize),
    #[error("subset repeats element {0}")]
    RepeatedElement(usize),
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("D generates a subgroup of order {span} in a group of order {order}")]
    DoesNotGenerate { span: usize, order: usize },
    #[error("not a semi-regular relative difference set: {0}")]
    NotSemiRegular(String),
    #[error("distance-regularity fails: {0}")]
    NotDistanceRegular(CensusFailure),
    #[error("not an antipodal 4-diameter cover: {0}")]
    NotCover(String),
    #[error("{0} exceeds the enumeration limit")]
    TooLarge(String),
    #[error("invalid code: {0}")]
    BadCode(String),
    #[error("{variant} hypothesis fails at codeword {witness:?}: {reason}")]
    Hypothesis { variant: CodeLineVariant, witness: Vec<u32>, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] finite_algebra::AlgebraError),
    #[error(transparent)]
    LineSet(#[from] lineset_core::LineSetError),
    #[error(transparent)]
    Mub(#[from] mub_constructions::MubError),
}
