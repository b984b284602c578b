//! From-below Boolean matrix factorization by greedy selection of formal
//! concepts.
//!
//! A Boolean matrix `I` is approximated by the max-min product of an object
//! factor matrix `A` and an attribute factor matrix `B` with `A ∘ B ≤ I`.
//! Every factor is a formal concept of `I`, i.e. a maximal all-ones
//! rectangle. Three greedy strategies are provided:
//!
//! * [`grecon3`]: lazily loads size-ordered concepts and indexes cells
//!   incrementally; the fastest and leanest of the concept-based variants.
//! * [`grecon2`]: indexes every concept's cells up front.
//! * [`grecond`]: grows each factor attribute by attribute without
//!   enumerating concepts.
//!
//! GreCon3 and GreCon2 pick the same factors when fed the same
//! [`ConceptStream`]; [`oracle`] holds the brute-force references used to
//! check that.

pub mod bitmatrix;
pub mod cli;
pub mod concepts;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod grecon2;
pub mod grecon3;
pub mod grecond;
pub mod io;
pub mod oracle;

pub use bitmatrix::{AttributeSet, BitSet, BooleanMatrix, IndexSet, ObjectSet};
pub use concepts::{canonical_stream, enumerate_concepts, ConceptStream, FormalConcept};
pub use error::{BmfError, Result};
pub use factorization::{Factorization, RunStats};
pub use grecon2::grecon2_factorize;
pub use grecon3::{grecon3_factorize, grecon3_factorize_with, Grecon3Options};
pub use grecond::grecond_factorize;
pub use oracle::{brute_force_concepts, naive_grecon};
