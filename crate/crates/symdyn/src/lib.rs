//! Computable symbolic dynamics on finitely generated groups.
//!
//! Everything here works with *finite truncations*: balls in a Cayley graph,
//! windows of configurations, step-indexed pattern enumerators, and finite
//! prefixes of inverse-limit chains. Infinite objects (subshifts, effective
//! dynamical systems, universal systems) are represented by the data that
//! generates them, and every verdict produced about them is a statement about
//! a finite window that is re-checkable by brute force.
//!
//! Module map:
//! - [`group`]: the three supported group families (`Z`, `Z^d`, `F_r`),
//!   normal forms, and the canonical bijection `nu: N -> G`.
//! - [`pattern`]: finitely supported patterns, their word coding, translation
//!   and the level-embedding used by the universal constructions.
//! - [`subshift`]: forbidden-pattern sources, locally admissible windows,
//!   exact emptiness deciders for `Z` and free groups, the compactness
//!   semi-decider, and periodic-point search.
//! - [`blockcode`]: sliding block codes, composition, morphism checking,
//!   exact surjectivity over `Z`, and pullbacks to free groups.
//! - [`chain`]: chains of subshifts with factor maps, truncated inverse-limit
//!   points, orbit-space truncations and the diagonal construction.
//! - [`universal`]: the pruned universal-system builder, the tuple catalog
//!   with descendants/heights, and the clopen-partition factor search.
//! - [`config`]: serde-backed file formats for all of the above.

pub mod blockcode;
pub mod chain;
pub mod config;
pub mod error;
pub mod graph;
pub mod group;
pub mod limits;
pub mod pattern;
pub mod subshift;
pub mod universal;

pub use error::Error;
pub use group::{Ball, GroupContext, GroupElement, GroupKind};
pub use limits::Limits;
pub use pattern::{Alphabet, Pattern, PatternCode, Site};
pub use subshift::{AdmissibilityCertificate, ForbiddenSource, Subshift, Verdict};

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
