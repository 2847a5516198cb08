//! Numerical semigroups attached to star-shaped (Seifert) resolution graphs.
//!
//! The crate computes the semigroup `S_Γ = {ℓ : N(ℓ) ≥ 0}` of a graph,
//! classifies generator systems by flatness, builds canonical graphs for flat
//! semigroups, and writes any graph semigroup as a flat semigroup divided by
//! an integer, with a certificate that can be re-checked independently.
//!
//! All arithmetic is exact: checked `i128` integers and rationals, with
//! overflow reported as an error.

pub mod arith;
pub mod decomposition;
pub mod error;
pub mod flat_rep;
pub mod flatness;
pub mod format;
pub mod linalg;
pub mod seifert;
pub mod semigroup;

pub use decomposition::{decompose, flat_quotient, QuotientCertificate};
pub use error::{Error, Result};
pub use flat_rep::{canonical_representative, CanonicalRepresentative};
pub use flatness::{classify, FlatPresentation, FlatnessClass};
pub use seifert::{semigroup_of_graph, SSRGraph, SeifertLeg};
pub use semigroup::{build_semigroup, GeneratorSet, NumericalSemigroup, Submonoid};
