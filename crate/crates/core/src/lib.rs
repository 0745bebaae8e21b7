//! Icosahedrally symmetric rational maps on the Riemann sphere.
//!
//! The crate builds the icosahedral invariant trio (F, H, T) in exact
//! arithmetic, the basic equivariants and the degree-31 map family, runs the
//! search that isolates the two soccer-ball maps with sixty critical
//! 2-periodic points, iterates them, renders their basins, and assembles the
//! quintic resolvent attached to the five tetrahedral subgroups.

pub mod config;
pub mod context;
pub mod dynamics;
pub mod equivariants;
pub mod error;
pub mod forms;
pub mod group;
pub mod poly;
pub mod render;
pub mod resolvent;
pub mod search;

pub use config::RunConfig;
pub use context::Context;
pub use dynamics::{EdgeAnchor, TwoCycle};
pub use equivariants::{ComplexMap, EquivariantMap, Equivariants, MapFamilyCoefficients, RationalMap};
pub use error::{IcosaError, Result};
pub use forms::{
    hessian_det, jacobian_det, normalize_to_match, BivariateForm, CanonicalInvariants,
    ComplexForm, RationalForm, Q,
};
pub use group::{GroupElement, IcosaGroup, Mirror, Orbit, OrbitLabel, ProjectivePoint};
pub use search::{Polyhedron, ResidualPolynomial, RootCensus, SpecialMapSolution};
