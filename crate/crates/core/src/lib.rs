//! Computational tools for integrals of finite groups: groups `H` whose
//! commutator subgroup is isomorphic to a given finite group `G`.
//!
//! The crate provides Cayley-table groups ([`GroupTable`]), abelian
//! structure theory, isomorphism and automorphism search, central
//! extensions via normalized 2-cocycles, enumeration of small groups, and
//! the integrability decision procedure built on top of them.

pub mod abelian;
pub mod cohomology;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod group;
pub mod integrability;
pub mod iso;
pub mod perm;

pub use abelian::{AbelianType, CyclicSum};
pub use cohomology::{reduce_integral, CentralCocycle, Reduction, ReductionReport};
pub use enumeration::{CatalogEntry, EnumerationConfig, Enumerator, Provenance};
pub use error::{Error, Result};
pub use group::{GroupTable, Hom, Subset};
pub use integrability::{bound, decide, DecisionOutcome, LemmaReport, Verdict};
pub use iso::{isomorphic, Fingerprint};
