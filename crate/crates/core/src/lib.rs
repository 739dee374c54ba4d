//! Finite, exactly checkable models of centralizers and normalizers of
//! minimal Cantor systems.
//!
//! Infinite objects are replaced by finite shadows at a chosen depth:
//!
//! * Cantor-set actions by actions of finite groups on finite letter sets
//!   ([`group`], [`tower`], [`action`]).
//! * Generalized substitutions `a ↦ (s₁·a)(s₂·a)…(s_d·a)` and their S-adic
//!   languages, cut at a length horizon `L` and a composition depth `K`
//!   ([`substitution`], [`language`], [`metric`]).
//! * Letterwise lifts of commuting maps to shift-commuting maps, normalizer
//!   classification and the centralizer embedding ([`automorphism`],
//!   [`normalizer`], [`embedding`]).
//! * The realization constructions: block hierarchies, product systems,
//!   profinite and direct-product realizations ([`constructions`]).
//! * Scenario configs, the brute-force language oracle and JSON reports
//!   ([`scenario`]).
//!
//! Every verdict is computed with integer or exact rational arithmetic.

pub mod action;
pub mod automorphism;
pub mod constructions;
pub mod embedding;
pub mod group;
pub mod language;
pub mod metric;
pub mod normalizer;
pub mod scenario;
pub mod substitution;
pub mod tower;
pub mod word;

pub use action::{build_action, stabilizer_and_cosets, ActionError, ActionKind, GroupAction};
pub use automorphism::{lift_letter_map, AutomorphismError, LetterMap, SlidingAutomorphism};
pub use group::{build_group, AssocCheck, Elem, FiniteGroup, GroupError, GroupSpec};
pub use language::{generate_language, Budget, Language, SubshiftError};
pub use metric::AlphabetMetric;
pub use normalizer::{classify_normalizer, NormalizerVerdict};
pub use substitution::{Substitution, SubstitutionSequence};
pub use tower::QuotientTower;
pub use word::{Letter, Word};
