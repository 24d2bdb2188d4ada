//! Decorated dual graphs and the combinatorial stability predicates.

mod chains;
mod graph;
mod isomorphism;
mod rosary;
mod stability;
mod subcurves;

pub use chains::{find_all_chains, find_elliptic_chains, find_weak_elliptic_chains, ChainRecord, ChainShape};
pub use graph::{
    Branch, Component, ComponentId, ComponentSet, CurveGraph, GraphBuilder, Intersection, Mark,
    SingularityKind,
};
pub use isomorphism::isomorphic;
pub use rosary::{
    aut_torus_rank, closed_rosary, find_rosaries, has_infinite_automorphisms, open_rosaries, AutomorphismWitness,
    RosaryRecord, RosaryShape,
};
pub use stability::{
    classify, stability_report, stability_report_with_cap, GenusOneContact, StabilityFlags,
    StabilityReport,
};
pub use subcurves::{
    contact_multiplicity, contact_points, find_elliptic_bridges, find_elliptic_tails,
    minimal_elliptic_bridges, DEFAULT_COMPONENT_CAP,
};

/// Arithmetic genus (the graph is connected by construction).
pub fn arithmetic_genus(g: &CurveGraph) -> i64 {
    g.arithmetic_genus()
}
