//! Computable algebra of free-group endomorphisms: freely reduced words,
//! Fox free derivatives and the Magnus representation, truncated Magnus
//! expansions with Lyndon-basis Lie coordinates, free nilpotent quotients
//! and their automorphisms, Johnson homomorphisms with their refinements,
//! and a fixed-point solver for acyclic equation systems over free nilpotent
//! coefficient groups.
//!
//! All values are immutable and all operations are pure functions, so the
//! whole crate is thread-safe without synchronization.

pub mod acyclic;
pub mod error;
pub mod foxrep;
pub mod groupring;
pub mod intmat;
pub mod johnson;
pub mod magnus;
pub mod nilpotent;
pub mod words;

pub use error::{Error, Result};
pub use foxrep::{
    automorphism_obstruction, crossed_check, fox_derivative, is_two_connected, magnus_rep,
};
pub use groupring::{GRMatrix, GroupRingElem, LaurentMatrix, LaurentPoly};
pub use johnson::{filtration_level, johnson, refined_johnson, JohnsonValue, RefinedJohnsonValue};
pub use magnus::{
    coset_series, in_gamma, lcs_degree, lie_coordinates, lyndon_words, magnus, witt_rank,
    LcsDegree, LieVector, TruncSeries,
};
pub use nilpotent::{AutNk, NkElement};
pub use words::{boundary_word, parse_word, Endomorphism, Letter, ReducedWord};
