//! Constraint networks as distributed relations, their satisfaction contexts,
//! and the concept lattices of those contexts.
//!
//! The pieces, bottom up:
//!
//! - [`order`], [`context`], [`lattice`]: order-theoretic formal contexts,
//!   derivation, lectic concept enumeration, meets and joins.
//! - [`relation`], [`network`]: sorted domains, tuples, relations, natural
//!   join, signatures, distributed relations, satisfaction contexts.
//! - [`flow`]: domain morphisms and direct/inverse images of relations.
//! - [`interior`]: solution sets and the relational interior.
//! - [`participation`]: emphasized suborders and participation contexts.
//! - [`io`]: file formats.

pub mod context;
pub mod error;
pub mod flow;
pub mod interior;
pub mod io;
pub mod lattice;
pub mod network;
pub mod order;
pub mod participation;
pub mod relation;

pub use context::{
    context_direct_image, context_inverse_image, Concept, ContextViolation, FormalContext,
    ObjectMap,
};
pub use error::{Cap, Error, Result, DEFAULT_CAP};
pub use flow::{
    direct_image, inverse_image, projection_morphism, DomainMorphism, Family, MorphismViolation,
};
pub use interior::{equivalent, interior, isolated_tuples, project_solution, solution_set};
pub use lattice::ConceptLattice;
pub use network::{
    as_single_sorted, satisfaction_context, to_context, ContainmentCandidate, DistributedRelation,
    NetworkViolation, Signature, TupleMode,
};
pub use order::Poset;
pub use participation::{
    attribute_concept, object_concept, participation_context, solution_indicator_context,
    SubLattice,
};
pub use relation::{
    natural_join, project_tuple, projective_containment, tuple_leq, Arity, Relation, SortedDomain,
    Tuple,
};
