//! Finite Krasner (m,n)-hyperrings: table validation, hyperideal lattices,
//! reduction and expansion maps, primary-type classifiers, products,
//! localizations, and an exhaustive checker for theorems about them.
//!
//! ```
//! use krasner::corpus;
//!
//! let h = corpus::three_element_example();
//! let u = h.element("u").unwrap();
//! assert_eq!(h.eval_f(&[u, u]).unwrap(), h.subset(&[h.zero(), u]));
//! ```

pub mod analytic;
pub mod classify;
pub mod construct;
pub mod corpus;
pub mod document;
pub mod harness;
pub mod hyperring;
pub mod lattice;
pub mod maps;
pub mod subset;

pub use classify::{Classification, ClassifyError, Condition, SMode, Verdict};
pub use hyperring::{validate, Axiom, AxiomViolation, Candidate, FiniteHyperring, HyperringError, ValidationReport};
pub use lattice::{IdealLattice, IdealViolation, LatticeError};
pub use maps::{DeltaId, IdealMap, MapError, MapKind, PhiId};
pub use subset::{ElementId, Subset, MAX_CARRIER};

// Book chapters, so their snippets run under `cargo test`.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/structures.md")]
pub mod book_structures {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/hyperideals.md")]
pub mod book_hyperideals {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/maps.md")]
pub mod book_maps {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/classes.md")]
pub mod book_classes {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod book_constructions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/analytic.md")]
pub mod book_analytic {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/theorems.md")]
pub mod book_theorems {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}
