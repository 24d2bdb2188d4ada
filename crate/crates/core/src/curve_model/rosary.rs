//! Open and closed rosaries, and the automorphism tests built on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::{ComponentId, CurveGraph, SingularityKind};
use super::stability::classify;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RosaryShape {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosaryRecord {
    pub shape: RosaryShape,
    pub length: usize,
    /// Beads in order; a broken bead contributes both of its halves.
    pub beads: Vec<ComponentId>,
    /// Tacnodes joining consecutive beads (intersection indices).
    pub tacnodes: Vec<usize>,
    /// Nodal attachments of an open rosary (possibly equal), or the nodes breaking beads of a
    /// closed one.
    pub nodes: Vec<usize>,
    /// Halves of each broken bead.
    pub broken_beads: Vec<[ComponentId; 2]>,
}

/// The two non-self intersections of a smooth rational component, if it has exactly two.
fn bead_edges(g: &CurveGraph, id: ComponentId) -> Option<[usize; 2]> {
    let c = g.component(id)?;
    if !c.is_smooth_rational() {
        return None;
    }
    let inc = g.incident(id);
    if inc.len() != 2 || inc.iter().any(|&k| g.intersections()[k].is_self()) {
        return None;
    }
    Some([inc[0], inc[1]])
}

fn kind(g: &CurveGraph, k: usize) -> SingularityKind {
    g.intersections()[k].kind
}

/// Maximal open rosaries of length at least two.
pub fn open_rosaries(g: &CurveGraph) -> Vec<RosaryRecord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in g.components() {
        let Some(edges) = bead_edges(g, c.id) else { continue };
        let (p, first) = match (kind(g, edges[0]), kind(g, edges[1])) {
            (SingularityKind::Node, SingularityKind::Tacnode) => (edges[0], edges[1]),
            (SingularityKind::Tacnode, SingularityKind::Node) => (edges[1], edges[0]),
            _ => continue,
        };
        let mut beads = vec![c.id];
        let mut tacnodes = vec![];
        let mut via = first;
        let mut cur = c.id;
        let q = loop {
            if beads.len() > g.components().len() {
                break None;
            }
            let next = g.intersections()[via].other(cur).unwrap();
            let Some(ne) = bead_edges(g, next) else { break None };
            tacnodes.push(via);
            beads.push(next);
            let out_edge = if ne[0] == via { ne[1] } else { ne[0] };
            cur = next;
            match kind(g, out_edge) {
                SingularityKind::Node => break Some(out_edge),
                SingularityKind::Tacnode => via = out_edge,
            }
        };
        let Some(q) = q else { continue };
        let key: BTreeSet<ComponentId> = beads.iter().copied().collect();
        if !seen.insert(key) {
            continue;
        }
        out.push(RosaryRecord {
            shape: RosaryShape::Open,
            length: beads.len(),
            beads,
            tacnodes,
            nodes: vec![p, q],
            broken_beads: vec![],
        });
    }
    out
}

/// The curve as a closed rosary, possibly with broken beads.
pub fn closed_rosary(g: &CurveGraph) -> Option<RosaryRecord> {
    let comps = g.components();
    if comps.len() < 2 || comps.iter().any(|c| bead_edges(g, c.id).is_none()) {
        return None;
    }
    if g.intersections().len() != comps.len() || !g.has_tacnodes() {
        return None;
    }
    // connected with every vertex of degree two: walk the cycle
    let start = comps[0].id;
    let mut order = vec![start];
    let mut edges_in_order = vec![];
    let mut via = bead_edges(g, start).unwrap()[1];
    let mut cur = start;
    loop {
        edges_in_order.push(via);
        let next = g.intersections()[via].other(cur).unwrap();
        if next == start {
            break;
        }
        let ne = bead_edges(g, next).unwrap();
        via = if ne[0] == via { ne[1] } else { ne[0] };
        cur = next;
        order.push(next);
    }
    if order.len() != comps.len() {
        return None;
    }
    let nodes: Vec<usize> =
        edges_in_order.iter().copied().filter(|&k| kind(g, k) == SingularityKind::Node).collect();
    // no bead may carry two nodes
    for &c in &order {
        let e = bead_edges(g, c).unwrap();
        if kind(g, e[0]) == SingularityKind::Node && kind(g, e[1]) == SingularityKind::Node {
            return None;
        }
    }
    let tacnodes =
        edges_in_order.iter().copied().filter(|&k| kind(g, k) == SingularityKind::Tacnode).collect();
    let broken_beads = nodes
        .iter()
        .map(|&k| {
            let x = &g.intersections()[k];
            [x.ends[0].0, x.ends[1].0]
        })
        .collect();
    Some(RosaryRecord {
        shape: RosaryShape::Closed,
        length: comps.len() - nodes.len(),
        beads: order,
        tacnodes,
        nodes,
        broken_beads,
    })
}

/// The closed rosary if the curve is one, otherwise every maximal open rosary.
pub fn find_rosaries(g: &CurveGraph) -> Vec<RosaryRecord> {
    match closed_rosary(g) {
        Some(r) => vec![r],
        None => open_rosaries(g),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismWitness {
    pub infinite: bool,
    pub witness: Option<RosaryRecord>,
}

/// Infinite automorphisms: an open rosary of length at least two, or an unbroken closed rosary of
/// odd genus.
pub fn has_infinite_automorphisms(g: &CurveGraph) -> Result<AutomorphismWitness> {
    let genus = g.arithmetic_genus();
    if genus < 4 {
        return Err(Error::GenusTooSmall { genus, min: 4 });
    }
    if !classify(g)?.c_semistable {
        return Err(Error::Hypothesis("curve is not c-semistable".into()));
    }
    if let Some(r) = open_rosaries(g).into_iter().next() {
        return Ok(AutomorphismWitness { infinite: true, witness: Some(r) });
    }
    if let Some(r) = closed_rosary(g) {
        if r.broken_beads.is_empty() && r.length % 2 == 0 {
            return Ok(AutomorphismWitness { infinite: true, witness: Some(r) });
        }
    }
    Ok(AutomorphismWitness { infinite: false, witness: None })
}

/// Rank of the identity component of the automorphism group of a c-semistable curve: one factor
/// per open rosary and one for an unbroken closed rosary of odd genus.
pub fn aut_torus_rank(g: &CurveGraph) -> Result<usize> {
    if !classify(g)?.c_semistable {
        return Err(Error::Hypothesis("curve is not c-semistable".into()));
    }
    let closed = closed_rosary(g).map_or(0, |r| usize::from(r.broken_beads.is_empty() && r.length % 2 == 0));
    Ok(open_rosaries(g).len() + closed)
}
