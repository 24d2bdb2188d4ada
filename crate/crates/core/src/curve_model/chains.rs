//! Elliptic chains: genus-one links joined at tacnodes.

use serde::{Deserialize, Serialize};

use super::graph::{ComponentSet, CurveGraph, SingularityKind};
use super::subcurves::{Topology, DEFAULT_COMPONENT_CAP};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainShape {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub shape: ChainShape,
    /// True when the `p` attachment is a tacnode.
    pub weak: bool,
    pub length: usize,
    /// The links `E_1, …, E_r` in order from `p` to `q`.
    pub links: Vec<ComponentSet>,
    /// Intersection indices of the images of `p` and `q` (equal for closed chains).
    pub attachments: [usize; 2],
}

impl ChainRecord {
    pub fn support(&self) -> ComponentSet {
        self.links.iter().flatten().copied().collect()
    }
}

struct Search<'t, 'g> {
    t: &'t Topology<'g>,
    subsets: Vec<u64>,
}

impl Search<'_, '_> {
    /// Splits `rest` into genus-one links starting at `start` and ending at `finish`.
    fn links(&self, rest: u64, start: usize, finish: usize, skip: Option<usize>) -> Option<Vec<u64>> {
        for &e in &self.subsets {
            if e & !rest != 0 || e >> start & 1 == 0 {
                continue;
            }
            if !self.t.connected(e, skip) || self.t.genus(e, skip) != 1 {
                continue;
            }
            if e == rest {
                if e >> finish & 1 == 1 {
                    return Some(vec![e]);
                }
                continue;
            }
            if e >> finish & 1 == 1 {
                continue;
            }
            let inner: Vec<usize> = self
                .t
                .boundary(e)
                .into_iter()
                .filter(|&k| Some(k) != skip)
                .filter(|&k| {
                    let x = &self.t.edges[k];
                    rest >> x.a & 1 == 1 && rest >> x.b & 1 == 1
                })
                .collect();
            if inner.len() != 1 || self.t.edges[inner[0]].kind != SingularityKind::Tacnode {
                continue;
            }
            let x = &self.t.edges[inner[0]];
            let next = if e >> x.a & 1 == 1 { x.b } else { x.a };
            if let Some(mut tail) = self.links(rest & !e, next, finish, skip) {
                tail.insert(0, e);
                return Some(tail);
            }
        }
        None
    }

    /// ω_{C'}(p+q) has positive degree on every component of the chain.
    fn ample(&self, s: u64, skip: Option<usize>, ends: [usize; 2]) -> bool {
        (0..self.t.n).filter(|&i| s >> i & 1 == 1).all(|i| {
            let c = &self.t.graph.components()[i];
            let mut d = 2 * c.geometric_genus as i64 - 2 + 2 * c.cusp_count as i64;
            for (k, x) in self.t.edges.iter().enumerate() {
                if Some(k) == skip {
                    continue;
                }
                let inside = s >> x.a & 1 == 1 && s >> x.b & 1 == 1;
                if inside {
                    d += x.kind.delta() as i64 * ((x.a == i) as i64 + (x.b == i) as i64);
                }
            }
            d += ends.iter().filter(|&&e| e == i).count() as i64;
            d > 0
        })
    }
}

/// All open and closed chains, strong and weak, one record per image.
pub fn find_all_chains(g: &CurveGraph) -> Result<Vec<ChainRecord>> {
    let t = Topology::new(g, DEFAULT_COMPONENT_CAP)?;
    let subsets = t.connected_subsets();
    let search = Search { t: &t, subsets };
    let full = t.full();
    let mut out = Vec::new();

    let mut open: Vec<u64> = search.subsets.iter().copied().filter(|&m| m != full).collect();
    open.sort_unstable();
    for s in open {
        let b = t.boundary(s);
        if b.len() != 2 {
            continue;
        }
        let genus = t.genus(s, None);
        if genus < 1 || genus % 2 == 0 {
            continue;
        }
        let kinds = [t.edges[b[0]].kind, t.edges[b[1]].kind];
        let (p, q, weak) = match kinds {
            [SingularityKind::Node, SingularityKind::Node] => (b[0], b[1], false),
            [SingularityKind::Tacnode, SingularityKind::Node] => (b[0], b[1], true),
            [SingularityKind::Node, SingularityKind::Tacnode] => (b[1], b[0], true),
            _ => continue,
        };
        let end_in = |k: usize| {
            let x = &t.edges[k];
            if s >> x.a & 1 == 1 {
                x.a
            } else {
                x.b
            }
        };
        let (start, finish) = (end_in(p), end_in(q));
        if !search.ample(s, None, [start, finish]) {
            continue;
        }
        if let Some(links) = search.links(s, start, finish, None) {
            out.push(ChainRecord {
                shape: ChainShape::Open,
                weak,
                length: links.len(),
                links: links.iter().map(|&m| t.to_set(m)).collect(),
                attachments: [p, q],
            });
        }
    }

    let genus = g.arithmetic_genus();
    for weak in [false, true] {
        let kind = if weak { SingularityKind::Tacnode } else { SingularityKind::Node };
        for (k, x) in t.edges.iter().enumerate() {
            if x.kind != kind {
                continue;
            }
            let cut = genus - kind.delta() as i64;
            if cut < 1 || cut % 2 == 0 || !t.connected(full, Some(k)) {
                continue;
            }
            if !search.ample(full, Some(k), [x.a, x.b]) {
                continue;
            }
            let found = search
                .links(full, x.a, x.b, Some(k))
                .or_else(|| search.links(full, x.b, x.a, Some(k)));
            if let Some(links) = found {
                out.push(ChainRecord {
                    shape: ChainShape::Closed,
                    weak,
                    length: links.len(),
                    links: links.iter().map(|&m| t.to_set(m)).collect(),
                    attachments: [k, k],
                });
                break;
            }
        }
    }
    Ok(out)
}

/// Chains attached at two nodes, open or closed.
pub fn find_elliptic_chains(g: &CurveGraph) -> Result<Vec<ChainRecord>> {
    Ok(find_all_chains(g)?.into_iter().filter(|c| !c.weak).collect())
}

/// Chains with a tacnodal attachment, open or closed.
pub fn find_weak_elliptic_chains(g: &CurveGraph) -> Result<Vec<ChainRecord>> {
    Ok(find_all_chains(g)?.into_iter().filter(|c| c.weak).collect())
}

#[cfg(test)]
mod tests {
    use super::super::graph::GraphBuilder;
    use super::*;

    fn attached_rosary(len: usize) -> CurveGraph {
        let mut b = GraphBuilder::new();
        let d = b.component(3, 0);
        let beads: Vec<_> = (0..len).map(|_| b.component(0, 0)).collect();
        b.node(d, beads[0]);
        for w in beads.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        b.node(beads[len - 1], d);
        b.build().unwrap()
    }

    #[test]
    fn even_rosary_is_a_chain() {
        let g = attached_rosary(4);
        let chains = find_elliptic_chains(&g).unwrap();
        let whole: ComponentSet = (1..=4).collect();
        let rec = chains.iter().find(|c| c.support() == whole).expect("rosary chain");
        assert_eq!(rec.length, 2);
        assert_eq!(rec.shape, ChainShape::Open);
    }

    #[test]
    fn odd_rosary_is_weak_only() {
        let g = attached_rosary(3);
        let whole: ComponentSet = (1..=3).collect();
        assert!(find_elliptic_chains(&g).unwrap().iter().all(|c| c.support() != whole));
        let weak = find_weak_elliptic_chains(&g).unwrap();
        assert!(!weak.is_empty());
        assert!(weak.iter().all(|c| c.length == 1));
    }

    #[test]
    fn nodal_curve_has_no_chains_except_bridges() {
        let mut b = GraphBuilder::new();
        let a = b.component(2, 0);
        let c = b.component(3, 0);
        b.node(a, c);
        b.node(a, c);
        let g = b.build().unwrap();
        assert!(find_all_chains(&g).unwrap().is_empty());
    }

    #[test]
    fn closed_weak_chain() {
        // E1 = E2 closed up through a second tacnode; cutting it leaves a chain of length two
        let mut b = GraphBuilder::new();
        let e1 = b.component(1, 0);
        let e2 = b.component(1, 0);
        b.tacnode(e1, e2);
        b.tacnode(e2, e1);
        let g = b.build().unwrap();
        assert_eq!(g.arithmetic_genus(), 5);
        let weak = find_weak_elliptic_chains(&g).unwrap();
        assert_eq!(weak.len(), 1);
        assert_eq!(weak[0].shape, ChainShape::Closed);
        assert_eq!(weak[0].length, 2);
    }
}
