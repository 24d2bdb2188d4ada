//! Bitmask machinery for connected subcurves.

use super::graph::{ComponentId, ComponentSet, CurveGraph, SingularityKind};
use crate::{Error, Result};

/// Default component cap for the exhaustive subcurve searches.
pub const DEFAULT_COMPONENT_CAP: usize = 24;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Edge {
    pub kind: SingularityKind,
    pub a: usize,
    pub b: usize,
}

/// Index-based view of a graph: component positions become bits of a `u64`.
pub(crate) struct Topology<'a> {
    pub graph: &'a CurveGraph,
    pub n: usize,
    pub local: Vec<i64>,
    pub edges: Vec<Edge>,
    pub adj: Vec<u64>,
}

impl<'a> Topology<'a> {
    pub fn new(graph: &'a CurveGraph, cap: usize) -> Result<Self> {
        let n = graph.components().len();
        let cap = cap.min(63);
        if n > cap {
            return Err(Error::TooManyComponents { count: n, cap });
        }
        let local = graph
            .components()
            .iter()
            .map(|c| (c.geometric_genus + c.cusp_count) as i64)
            .collect();
        let mut adj = vec![0u64; n];
        let edges: Vec<Edge> = graph
            .intersections()
            .iter()
            .map(|x| {
                let a = graph.position(x.ends[0].0).unwrap();
                let b = graph.position(x.ends[1].0).unwrap();
                if a != b {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
                Edge { kind: x.kind, a, b }
            })
            .collect();
        Ok(Topology { graph, n, local, edges, adj })
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn id(&self, i: usize) -> ComponentId {
        self.graph.components()[i].id
    }

    pub fn to_set(&self, mask: u64) -> ComponentSet {
        (0..self.n).filter(|&i| mask >> i & 1 == 1).map(|i| self.id(i)).collect()
    }

    pub fn mask_of(&self, set: &ComponentSet) -> Result<u64> {
        let mut m = 0;
        for id in set {
            let i = self
                .graph
                .position(*id)
                .ok_or_else(|| Error::InvalidSubcurve(format!("unknown component {id}")))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    fn inside(e: &Edge, mask: u64) -> bool {
        mask >> e.a & 1 == 1 && mask >> e.b & 1 == 1
    }

    /// Connectivity of `mask`, ignoring edge `skip`.
    pub fn connected(&self, mask: u64, skip: Option<usize>) -> bool {
        if mask == 0 {
            return false;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut grown = seen;
            for (k, e) in self.edges.iter().enumerate() {
                if Some(k) == skip || !Self::inside(e, mask) {
                    continue;
                }
                if seen >> e.a & 1 == 1 || seen >> e.b & 1 == 1 {
                    grown |= 1 << e.a | 1 << e.b;
                }
            }
            if grown == seen {
                return seen == mask;
            }
            seen = grown;
        }
    }

    /// Arithmetic genus of a connected subcurve, ignoring edge `skip`.
    pub fn genus(&self, mask: u64, skip: Option<usize>) -> i64 {
        let mut total: i64 = (0..self.n).filter(|&i| mask >> i & 1 == 1).map(|i| self.local[i]).sum();
        for (k, e) in self.edges.iter().enumerate() {
            if Some(k) != skip && Self::inside(e, mask) {
                total += e.kind.delta() as i64;
            }
        }
        total - (mask.count_ones() as i64 - 1)
    }

    /// Edges with exactly one end in `mask`.
    pub fn boundary(&self, mask: u64) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| {
                let e = &self.edges[k];
                (mask >> e.a & 1) != (mask >> e.b & 1)
            })
            .collect()
    }

    /// Every nonempty connected subset, each exactly once.
    pub fn connected_subsets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for v in 0..self.n {
            let above = !((1u64 << v << 1).wrapping_sub(1));
            let above = if v == 63 { 0 } else { above };
            self.extend(1 << v, self.adj[v] & above, above, &mut out);
        }
        out
    }

    fn extend(&self, sub: u64, ext: u64, above: u64, out: &mut Vec<u64>) {
        out.push(sub);
        let closed = self.neighbourhood(sub) | sub;
        let mut rest = ext;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let fresh = self.adj[w] & !closed & above;
            self.extend(sub | 1 << w, rest | fresh, above, out);
        }
    }

    fn neighbourhood(&self, mask: u64) -> u64 {
        (0..self.n).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | self.adj[i])
    }

    /// Proper connected subcurves of arithmetic genus one.
    pub fn genus_one(&self) -> Vec<u64> {
        let full = self.full();
        self.connected_subsets()
            .into_iter()
            .filter(|&m| m != full && self.genus(m, None) == 1)
            .collect()
    }

    pub fn contact(&self, mask: u64) -> (u32, u32) {
        let b = self.boundary(mask);
        let weighted = b.iter().map(|&k| self.edges[k].kind.delta()).sum();
        (b.len() as u32, weighted)
    }
}

fn checked_mask(t: &Topology, sub: &ComponentSet) -> Result<u64> {
    let m = t.mask_of(sub)?;
    if m == 0 {
        return Err(Error::InvalidSubcurve("empty".into()));
    }
    if m == t.full() {
        return Err(Error::InvalidSubcurve("not a proper subcurve".into()));
    }
    if !t.connected(m, None) {
        return Err(Error::InvalidSubcurve("disconnected".into()));
    }
    Ok(m)
}

/// Branch-weighted count of intersections joining `sub` to its complement (node 1, tacnode 2).
pub fn contact_multiplicity(g: &CurveGraph, sub: &ComponentSet) -> Result<u32> {
    let t = Topology::new(g, 63)?;
    let m = checked_mask(&t, sub)?;
    Ok(t.contact(m).1)
}

/// Number of distinct intersection points joining `sub` to its complement.
pub fn contact_points(g: &CurveGraph, sub: &ComponentSet) -> Result<u32> {
    let t = Topology::new(g, 63)?;
    let m = checked_mask(&t, sub)?;
    Ok(t.contact(m).0)
}

fn genus_one_with_boundary(g: &CurveGraph, nodes: usize) -> Result<Vec<ComponentSet>> {
    let t = Topology::new(g, DEFAULT_COMPONENT_CAP)?;
    let mut out: Vec<ComponentSet> = t
        .genus_one()
        .into_iter()
        .filter(|&m| {
            let b = t.boundary(m);
            b.len() == nodes && b.iter().all(|&k| t.edges[k].kind == SingularityKind::Node)
        })
        .map(|m| t.to_set(m))
        .collect();
    out.sort();
    Ok(out)
}

/// Connected genus-one subcurves meeting the rest in exactly one node.
pub fn find_elliptic_tails(g: &CurveGraph) -> Result<Vec<ComponentSet>> {
    genus_one_with_boundary(g, 1)
}

/// Connected genus-one subcurves meeting the rest in exactly two nodes.
pub fn find_elliptic_bridges(g: &CurveGraph) -> Result<Vec<ComponentSet>> {
    genus_one_with_boundary(g, 2)
}

/// Bridges that contain no smaller bridge.
pub fn minimal_elliptic_bridges(g: &CurveGraph) -> Result<Vec<ComponentSet>> {
    let all = find_elliptic_bridges(g)?;
    Ok(all
        .iter()
        .filter(|b| !all.iter().any(|o| o != *b && o.is_subset(b)))
        .cloned()
        .collect())
}
