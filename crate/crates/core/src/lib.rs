//! Delta-matroids over small ground sets.
//!
//! Set systems are stored as sorted families of bitmasks. On top of that the
//! crate provides the symmetric exchange check, the twist/dual/minor
//! operations, the binary delta-matroid `D(C)` of a symmetric GF(2) matrix
//! and its inverse, twist polynomials, and an intersection-graph classifier
//! for delta-matroids whose twist polynomial has a single term.

pub mod classify;
pub mod error;
pub mod gf2;
pub mod ops;
pub mod set_system;
pub mod twist_poly;

pub use classify::{
    census, component_shape, connected_components, cross_check, predicts_monomial, run_verify, verify_lemmas, verify_order,
    ComponentShape, CrossCheck, ShapeKind, VerificationReport,
};
pub use error::{Error, Result};
pub use gf2::{
    delta_matroid_of_matrix, intersection_graph, is_normal_binary, principal_nonsingular, reconstruct_matrix,
    Gf2SymMatrix, LoopyGraph,
};
pub use set_system::{
    parse_set_system, symmetric_difference, DeltaMatroid, DmFlags, ExchangeWitness, GroundSet, ParsedSetSystem,
    SetSystem, SubsetMask, LATTICE_CAP, MAX_GROUND,
};
pub use twist_poly::{
    is_monomial, normalize, restriction_width_table, twist_polynomial, twist_polynomial_fast, twist_polynomial_naive,
    RestrictionWidthTable, TwistPolynomial,
};
