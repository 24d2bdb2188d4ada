//! Exact GIT stability computations for curves with nodes, cusps and tacnodes.
//!
//! The crate is organised by task:
//!
//! * [`curve_model`] holds the decorated dual graph and the stability predicates.
//! * [`families`] builds the explicit rosary configurations and their torus actions.
//! * [`ideal_engine`] computes degree slices of ideals and Hilbert–Mumford indices.
//! * [`chow_multiplicity`] assembles multiplicity bounds for Chow instability.
//! * [`basin_calculus`] handles versal weights, basins and closed-orbit representatives.
//! * [`divisor_classes`] does exact arithmetic with tautological divisor classes.
//! * [`golden`] pins reference values and runs them as a reproducible check.

pub mod basin_calculus;
pub mod chow_multiplicity;
pub mod curve_model;
pub mod divisor_classes;
pub mod error;
pub mod families;
pub mod golden;
pub mod ideal_engine;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
