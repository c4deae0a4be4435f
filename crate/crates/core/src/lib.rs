//! Exact integer Schubert calculus on flag manifolds `G/P`.
//!
//! Everything is driven by a Cartan matrix and a subset `K` of the simple
//! roots. From those the crate enumerates the minimal coset representatives
//! `W(P;G)` with their lexicographically minimal reduced words, evaluates
//! characteristic numbers through the triangular operator of a structure
//! matrix, derives degree-bounded presentations of `H*(G/P)` and Schubert
//! polynomials in special Schubert classes. The [`oracle`] module is an
//! independent type-A check built on Littlewood–Richardson tableaux.

pub mod cache;
pub mod cartan;
pub mod characteristics;
pub mod classes;
pub mod cli;
pub mod error;
pub mod num;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod snf;
pub mod weyl;

pub use cartan::{CartanMatrix, Series};
pub use characteristics::{
    characteristic, expand_product, multiply_schubert, structure_matrix, triangular_operator, ProductCalculator,
    SchubertExpansion, StructureMatrix,
};
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use presentation::{
    expansion_matrix, find_generators, find_relations, schubert_polynomials, ExpansionMatrix,
    GeneratorSet, Presentation, SchubertPolynomial,
};
pub use snf::{integer_diagonalize, IntMatrix, Snf};
pub use weyl::{
    element_of_word, enumerate_cosets, simple_reflection, CosetEntry, CosetIndex, CosetTable,
    Limits, ReducedWord, WeylElement,
};
