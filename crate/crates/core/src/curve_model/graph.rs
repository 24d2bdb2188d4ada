//! Decorated dual graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type ComponentId = u32;

/// A sorted set of component ids.
pub type ComponentSet = BTreeSet<ComponentId>;

/// An irreducible component: geometric genus plus ordinary cusps (unibranch, so not edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: ComponentId,
    #[serde(rename = "genus")]
    pub geometric_genus: u32,
    #[serde(rename = "cusps", default)]
    pub cusp_count: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Component {
    pub fn new(id: ComponentId, geometric_genus: u32, cusp_count: u32) -> Self {
        Component { id, geometric_genus, cusp_count, label: None }
    }

    /// Smooth rational: genus zero, no cusps.
    pub fn is_smooth_rational(&self) -> bool {
        self.geometric_genus == 0 && self.cusp_count == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularityKind {
    Node,
    Tacnode,
}

impl SingularityKind {
    pub fn delta(self) -> u32 {
        match self {
            SingularityKind::Node => 1,
            SingularityKind::Tacnode => 2,
        }
    }
}

/// One analytic branch of an intersection: (component id, branch slot).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Branch(pub ComponentId, pub u32);

impl Branch {
    pub fn component(self) -> ComponentId {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub kind: SingularityKind,
    pub ends: [Branch; 2],
}

impl Intersection {
    pub fn is_self(&self) -> bool {
        self.ends[0].0 == self.ends[1].0
    }

    pub fn touches(&self, id: ComponentId) -> bool {
        self.ends[0].0 == id || self.ends[1].0 == id
    }

    /// The component on the other side of `id`, if the intersection touches it.
    pub fn other(&self, id: ComponentId) -> Option<ComponentId> {
        if self.ends[0].0 == id {
            Some(self.ends[1].0)
        } else if self.ends[1].0 == id {
            Some(self.ends[0].0)
        } else {
            None
        }
    }
}

/// A smooth marked point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark(pub ComponentId, pub String);

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    components: Vec<Component>,
    #[serde(default)]
    intersections: Vec<Intersection>,
    #[serde(default)]
    marks: Vec<Mark>,
}

/// A connected decorated dual graph. Construction validates every invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct CurveGraph {
    components: Vec<Component>,
    intersections: Vec<Intersection>,
    marks: Vec<Mark>,
}

impl TryFrom<GraphDoc> for CurveGraph {
    type Error = Error;
    fn try_from(d: GraphDoc) -> Result<Self> {
        CurveGraph::new(d.components, d.intersections, d.marks)
    }
}

impl From<CurveGraph> for GraphDoc {
    fn from(g: CurveGraph) -> Self {
        GraphDoc { components: g.components, intersections: g.intersections, marks: g.marks }
    }
}

impl CurveGraph {
    pub fn new(
        mut components: Vec<Component>,
        intersections: Vec<Intersection>,
        marks: Vec<Mark>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidGraph("no components".into()));
        }
        components.sort_by_key(|c| c.id);
        for w in components.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidGraph(format!("duplicate component id {}", w[0].id)));
            }
        }
        let ids: BTreeSet<ComponentId> = components.iter().map(|c| c.id).collect();
        let mut used = BTreeSet::new();
        for x in &intersections {
            for b in x.ends {
                if !ids.contains(&b.0) {
                    return Err(Error::InvalidGraph(format!("unknown component {}", b.0)));
                }
                if !used.insert(b) {
                    return Err(Error::InvalidGraph(format!(
                        "branch slot {} of component {} used twice",
                        b.1, b.0
                    )));
                }
            }
        }
        for m in &marks {
            if !ids.contains(&m.0) {
                return Err(Error::InvalidGraph(format!("mark on unknown component {}", m.0)));
            }
        }
        let g = CurveGraph { components, intersections, marks };
        let pieces = g.piece_count();
        if pieces != 1 {
            return Err(Error::Disconnected(pieces));
        }
        Ok(g)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn intersections(&self) -> &[Intersection] {
        &self.intersections
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn component(&self, id: ComponentId) -> Option<&Component> {
        self.position(id).map(|i| &self.components[i])
    }

    pub fn position(&self, id: ComponentId) -> Option<usize> {
        self.components.binary_search_by_key(&id, |c| c.id).ok()
    }

    pub fn component_ids(&self) -> ComponentSet {
        self.components.iter().map(|c| c.id).collect()
    }

    pub fn has_tacnodes(&self) -> bool {
        self.intersections.iter().any(|x| x.kind == SingularityKind::Tacnode)
    }

    pub fn has_cusps(&self) -> bool {
        self.components.iter().any(|c| c.cusp_count > 0)
    }

    pub fn tacnode_count(&self) -> usize {
        self.intersections.iter().filter(|x| x.kind == SingularityKind::Tacnode).count()
    }

    /// Indices of intersections with a branch on `id` (self-intersections appear once).
    pub fn incident(&self, id: ComponentId) -> Vec<usize> {
        (0..self.intersections.len()).filter(|&i| self.intersections[i].touches(id)).collect()
    }

    pub fn arithmetic_genus(&self) -> i64 {
        let local: i64 =
            self.components.iter().map(|c| (c.geometric_genus + c.cusp_count) as i64).sum();
        let delta: i64 = self.intersections.iter().map(|x| x.kind.delta() as i64).sum();
        local + delta - (self.components.len() as i64 - 1)
    }

    /// Degree of the dualizing sheaf on one component.
    pub fn dualizing_degree(&self, id: ComponentId) -> i64 {
        let c = self.component(id).expect("known component");
        let mut d = 2 * c.geometric_genus as i64 - 2 + 2 * c.cusp_count as i64;
        for x in &self.intersections {
            for b in x.ends {
                if b.0 == id {
                    d += x.kind.delta() as i64;
                }
            }
        }
        d
    }

    fn piece_count(&self) -> usize {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for x in &self.intersections {
            let a = self.position(x.ends[0].0).unwrap();
            let b = self.position(x.ends[1].0).unwrap();
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    pub fn next_id(&self) -> ComponentId {
        self.components.last().map(|c| c.id + 1).unwrap_or(0)
    }
}

/// Incremental construction with automatic branch slots.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    components: Vec<Component>,
    intersections: Vec<(SingularityKind, ComponentId, ComponentId)>,
    marks: Vec<Mark>,
    next_id: ComponentId,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fresh component with the next unused id.
    pub fn component(&mut self, genus: u32, cusps: u32) -> ComponentId {
        let id = self.next_id;
        self.push(Component::new(id, genus, cusps));
        id
    }

    pub fn labelled(&mut self, genus: u32, cusps: u32, label: &str) -> ComponentId {
        let id = self.component(genus, cusps);
        self.components.last_mut().unwrap().label = Some(label.to_string());
        id
    }

    /// Keeps the component's own id.
    pub fn push(&mut self, c: Component) {
        self.next_id = self.next_id.max(c.id + 1);
        self.components.push(c);
    }

    pub fn join(&mut self, kind: SingularityKind, a: ComponentId, b: ComponentId) -> usize {
        self.intersections.push((kind, a, b));
        self.intersections.len() - 1
    }

    pub fn node(&mut self, a: ComponentId, b: ComponentId) -> usize {
        self.join(SingularityKind::Node, a, b)
    }

    pub fn tacnode(&mut self, a: ComponentId, b: ComponentId) -> usize {
        self.join(SingularityKind::Tacnode, a, b)
    }

    pub fn mark(&mut self, id: ComponentId, label: &str) {
        self.marks.push(Mark(id, label.to_string()));
    }

    pub fn build(self) -> Result<CurveGraph> {
        let mut slots: BTreeMap<ComponentId, u32> = BTreeMap::new();
        let mut next = |id: ComponentId| {
            let s = slots.entry(id).or_insert(0);
            *s += 1;
            Branch(id, *s - 1)
        };
        let intersections = self
            .intersections
            .iter()
            .map(|&(kind, a, b)| {
                let ea = next(a);
                let eb = next(b);
                Intersection { kind, ends: [ea, eb] }
            })
            .collect();
        CurveGraph::new(self.components, intersections, self.marks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosary(len: u32) -> CurveGraph {
        let mut b = GraphBuilder::new();
        let d = b.component(3, 0);
        let beads: Vec<_> = (0..len).map(|_| b.component(0, 0)).collect();
        b.node(d, beads[0]);
        for w in beads.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        b.node(beads[len as usize - 1], d);
        b.build().unwrap()
    }

    #[test]
    fn genus_of_smooth_curve() {
        let mut b = GraphBuilder::new();
        b.component(5, 0);
        assert_eq!(b.build().unwrap().arithmetic_genus(), 5);
    }

    #[test]
    fn attached_rosary_adds_its_genus_plus_one() {
        // open rosary of length 3 has genus 2; two nodal attachments add one loop
        assert_eq!(rosary(3).arithmetic_genus(), 3 + 2 + 1);
    }

    #[test]
    fn disconnected_is_rejected() {
        let mut b = GraphBuilder::new();
        b.component(2, 0);
        b.component(2, 0);
        assert_eq!(b.build().unwrap_err(), Error::Disconnected(2));
    }

    #[test]
    fn duplicate_slot_is_rejected() {
        let comps = vec![Component::new(0, 1, 0), Component::new(1, 1, 0)];
        let x = Intersection { kind: SingularityKind::Node, ends: [Branch(0, 0), Branch(1, 0)] };
        let y = Intersection { kind: SingularityKind::Node, ends: [Branch(0, 0), Branch(1, 1)] };
        assert!(matches!(CurveGraph::new(comps, vec![x, y], vec![]), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut g = rosary(2);
        g = CurveGraph::new(
            g.components().to_vec(),
            g.intersections().to_vec(),
            vec![Mark(0, "p".into())],
        )
        .unwrap();
        let s = g.to_json();
        assert!(s.contains("\"tacnode\""));
        let back = CurveGraph::from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_field_names() {
        let doc = r#"{"components":[{"id":0,"genus":1,"cusps":0},{"id":1,"genus":0,"cusps":1}],
            "intersections":[{"kind":"node","ends":[[0,0],[1,0]]}],"marks":[[1,"q"]]}"#;
        let g = CurveGraph::from_json(doc).unwrap();
        assert_eq!(g.arithmetic_genus(), 2);
        assert_eq!(g.marks()[0].1, "q");
    }

    #[test]
    fn dualizing_degree_counts_weighted_branches() {
        let g = rosary(3);
        assert_eq!(g.dualizing_degree(1), -2 + 1 + 2);
        assert_eq!(g.dualizing_degree(2), -2 + 2 + 2);
    }
}
