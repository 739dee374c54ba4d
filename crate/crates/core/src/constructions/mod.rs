//! Realization constructions: the product-system normalizer, block
//! hierarchies for finite quotients, the profinite and direct-product
//! realizations, and the S-adic embedding pipeline.

mod direct_product;
mod fibered;
mod hierarchy;
mod pipeline;
mod profinite;

use thiserror::Error;

use crate::action::ActionError;
use crate::automorphism::AutomorphismError;
use crate::group::{Elem, GroupError};
use crate::language::SubshiftError;
use crate::word::Letter;

pub use direct_product::{
    build_direct_product, pair_map, product_generators, ComponentSystem, DirectProductReport,
};
pub use fibered::{
    build_fibered_system, build_product_normalizer, verify_product_relations, FiberedSystem,
    ProductRelations, ProductSystem, StateSpace,
};
pub use hierarchy::{
    build_block_hierarchy, hierarchy_checks, BlockHierarchy, ClaimCheck, HierarchyCaps,
    HierarchyChecks, HierarchyLevel,
};
pub use pipeline::{run_sadic_embedding, Horizons, SadicReport};
pub use profinite::{
    build_profinite_realization, classify_translation_family, conjugations, right_translations,
    ProfiniteReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("component modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("{what}: {needed} exceeds the enumeration cap {cap} and no sampling seed was given")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: usize,
    },
    #[error("level {level}: an invariant {target}-dense marker set needs {needed} markers, cap is {cap}; smallest density within the cap is {best}")]
    MarkerCap {
        level: usize,
        target: String,
        needed: usize,
        cap: usize,
        best: String,
    },
    #[error("action is not faithful: elements {0} and {1} act identically")]
    NotFaithful(Elem, Elem),
    #[error("hierarchy needs at least one level")]
    NoLevels,
    #[error("density for level {level} must lie in (0, 1], got {value}")]
    BadDensity { level: usize, value: String },
    #[error("depth {requested} exceeds tower height {height}")]
    DepthOutOfRange { requested: usize, height: usize },
    #[error("component map `{label}` is not equivariant at letter {letter}")]
    ComponentNotEquivariant { label: String, letter: Letter },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
}
