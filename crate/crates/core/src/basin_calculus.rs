//! Torus weights on versal deformation spaces, basins of attraction read combinatorially, and the
//! closed-orbit representatives of c- and h-equivalence classes.
//!
//! A basin is described by which singularities of the fixed curve may be smoothed: every versal
//! parameter of a singularity must have positive weight for its smoothings to flow into the fixed
//! point. Weights of a local parameter are weights of coordinate ratios, so a parameter `s/t` on a
//! component mapped by monomials `s^a t^b` has weight `(r_k - r_l)/(a_k - a_l)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::curve_model::{
    classify, find_weak_elliptic_chains, minimal_elliptic_bridges, open_rosaries,
    ChainRecord, ChainShape, Component, ComponentId, ComponentSet, CurveGraph, GraphBuilder, Mark,
    SingularityKind,
};
use crate::families::{torus_generators, Configuration, FixedPoint, Mode, OneParamSubgroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "at", content = "index")]
pub enum SingularityRef {
    /// Index into the graph's intersection list.
    Intersection(usize),
    /// The cusp on a component.
    Cusp(ComponentId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VersalKind {
    Node,
    Tacnode,
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersalWeights {
    pub singularity: SingularityRef,
    pub kind: VersalKind,
    /// Node: `c_0`. Tacnode: `(c_0, c_1, c_2)` of `y² = x⁴ + c_2 x² + c_1 x + c_0`. Cusp: `(a, b)`
    /// of `y² = x³ + a x + b`.
    pub parameter_weights: Vec<i64>,
}

impl VersalWeights {
    pub fn smoothable(&self) -> bool {
        self.parameter_weights.iter().all(|&w| w > 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasinVerdict {
    Smoothable,
    Frozen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityVerdict {
    pub weights: VersalWeights,
    pub verdict: BasinVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasinReport {
    pub rho: Vec<i64>,
    pub singularities: Vec<SingularityVerdict>,
    /// The fixed curve with every smoothable singularity smoothed.
    pub generic: CurveGraph,
    /// Number of partial smoothings, `2^k` for `k` smoothable singularities.
    pub lattice_size: u64,
}

impl BasinReport {
    pub fn smoothable(&self) -> Vec<SingularityRef> {
        self.singularities
            .iter()
            .filter(|s| s.verdict == BasinVerdict::Smoothable)
            .map(|s| s.weights.singularity)
            .collect()
    }
}

/// `u` with `r_k = u·a_k + const` on every coordinate of the component's map.
fn component_slope(c: &Configuration, rho: &OneParamSubgroup, id: ComponentId) -> Result<i64> {
    if let Mode::SplitWithD { d_component, .. } = &c.mode {
        if *d_component == id {
            return Ok(0);
        }
    }
    let map = c
        .parametrization
        .map(id)
        .ok_or_else(|| Error::InvalidParameter(format!("component {id} has no parametrization")))?;
    let t0 = &map.terms[0];
    let other = map
        .terms
        .iter()
        .find(|t| t.exponents.0 != t0.exponents.0)
        .ok_or_else(|| Error::InvalidParameter(format!("component {id} is mapped to a point")))?;
    let dr = rho.weights[other.coordinate] - rho.weights[t0.coordinate];
    let da = other.exponents.0 as i64 - t0.exponents.0 as i64;
    if dr % da != 0 {
        return Err(Error::IncompatibleAction(format!(
            "component {id}: the action needs a fractional reparametrization"
        )));
    }
    let u = dr / da;
    let base = rho.weights[t0.coordinate] - u * t0.exponents.0 as i64;
    for t in &map.terms {
        if rho.weights[t.coordinate] != base + u * t.exponents.0 as i64 {
            return Err(Error::NotAutomorphism(format!("weights do not preserve component {id}")));
        }
    }
    Ok(u)
}

fn check_rho(c: &Configuration, rho: &OneParamSubgroup) -> Result<()> {
    let n = c.total_coordinates();
    if rho.len() != n {
        return Err(Error::CoordinateMismatch(format!("{} weights for {n} coordinates", rho.len())));
    }
    if let Mode::SplitWithD { attachments, d_coordinates, .. } = &c.mode {
        let mut ws = attachments.iter().chain(d_coordinates).map(|&i| rho.weights[i]);
        if let Some(w0) = ws.next() {
            if ws.any(|w| w != w0) {
                return Err(Error::NotAutomorphism(
                    "the remainder curve is not acted on by a single weight".into(),
                ));
            }
        }
    }
    Ok(())
}

fn branch_weight(c: &Configuration, rho: &OneParamSubgroup, b: crate::curve_model::Branch) -> Result<i64> {
    let u = component_slope(c, rho, b.0)?;
    if u == 0 && c.branch_point(b).is_none() {
        return Ok(0);
    }
    match c.branch_point(b) {
        Some(FixedPoint::SZero) => Ok(u),
        Some(FixedPoint::TZero) => Ok(-u),
        None => Err(Error::InvalidParameter(format!(
            "branch {:?} is not at a torus-fixed point",
            b
        ))),
    }
}

/// Weight of the local parameter at the cusp of a component.
fn cusp_parameter_weight(c: &Configuration, rho: &OneParamSubgroup, id: ComponentId) -> Result<i64> {
    let map = c
        .parametrization
        .map(id)
        .ok_or_else(|| Error::InvalidParameter(format!("component {id} has no parametrization")))?;
    let u = component_slope(c, rho, id)?;
    // multiplicity of the branch at each fixed point: smallest positive order of a coordinate ratio
    let mult = |orders: Vec<u32>| {
        let lo = *orders.iter().min().unwrap();
        orders.iter().map(|o| o - lo).filter(|&o| o > 0).min().unwrap_or(0)
    };
    let at_s = mult(map.terms.iter().map(|t| t.exponents.0).collect());
    let at_t = mult(map.terms.iter().map(|t| t.exponents.1).collect());
    match (at_s >= 2, at_t >= 2) {
        (true, false) => Ok(u),
        (false, true) => Ok(-u),
        _ => Err(Error::Unsupported(format!("cannot locate a single cusp on component {id}"))),
    }
}

pub fn versal_weights(c: &Configuration, rho: &OneParamSubgroup, s: SingularityRef) -> Result<VersalWeights> {
    check_rho(c, rho)?;
    match s {
        SingularityRef::Intersection(k) => {
            let x = c
                .graph
                .intersections()
                .get(k)
                .ok_or_else(|| Error::InvalidParameter(format!("no intersection {k}")))?;
            let w1 = branch_weight(c, rho, x.ends[0])?;
            let w2 = branch_weight(c, rho, x.ends[1])?;
            match x.kind {
                SingularityKind::Node => Ok(VersalWeights {
                    singularity: s,
                    kind: VersalKind::Node,
                    parameter_weights: vec![w1 + w2],
                }),
                SingularityKind::Tacnode => {
                    if w1 != w2 {
                        return Err(Error::IncompatibleAction(format!(
                            "tacnode {k}: branch weights {w1} and {w2} differ"
                        )));
                    }
                    Ok(VersalWeights {
                        singularity: s,
                        kind: VersalKind::Tacnode,
                        parameter_weights: vec![4 * w1, 3 * w1, 2 * w1],
                    })
                }
            }
        }
        SingularityRef::Cusp(id) => {
            let comp = c
                .graph
                .component(id)
                .ok_or_else(|| Error::InvalidParameter(format!("no component {id}")))?;
            if comp.cusp_count == 0 {
                return Err(Error::InvalidParameter(format!("component {id} has no cusp")));
            }
            let w = cusp_parameter_weight(c, rho, id)?;
            Ok(VersalWeights { singularity: s, kind: VersalKind::Cusp, parameter_weights: vec![4 * w, 6 * w] })
        }
    }
}

/// Every singularity of a graph, intersections first.
pub fn singularities(g: &CurveGraph) -> Vec<SingularityRef> {
    let mut out: Vec<_> = (0..g.intersections().len()).map(SingularityRef::Intersection).collect();
    out.extend(g.components().iter().filter(|c| c.cusp_count > 0).map(|c| SingularityRef::Cusp(c.id)));
    out
}

pub fn basin_membership(c: &Configuration, rho: &OneParamSubgroup) -> Result<BasinReport> {
    let mut verdicts = vec![];
    for s in singularities(&c.graph) {
        let w = versal_weights(c, rho, s)?;
        let verdict = if w.smoothable() { BasinVerdict::Smoothable } else { BasinVerdict::Frozen };
        verdicts.push(SingularityVerdict { weights: w, verdict });
    }
    if verdicts.iter().all(|v| v.weights.parameter_weights.iter().all(|&w| w == 0)) {
        return Err(Error::TrivialAction(
            "every versal parameter has weight zero; the basin is the fixed locus".into(),
        ));
    }
    let smooth: Vec<_> = verdicts
        .iter()
        .filter(|v| v.verdict == BasinVerdict::Smoothable)
        .map(|v| v.weights.singularity)
        .collect();
    let generic = smooth_singularities(&c.graph, &smooth)?;
    let lattice_size = 1u64.checked_shl(smooth.len() as u32).unwrap_or(u64::MAX);
    Ok(BasinReport { rho: rho.weights.clone(), singularities: verdicts, generic, lattice_size })
}

/// `Π ρ_i^{e_i}` over the configuration's torus generators.
pub fn product_subgroup(c: &Configuration, exponents: &[i64]) -> Result<OneParamSubgroup> {
    OneParamSubgroup::product(&torus_generators(c), exponents)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSmoothing {
    pub smoothed: Vec<SingularityRef>,
    pub graph: CurveGraph,
}

/// Every partial smoothing of the smoothable singularities, in subset order.
pub fn partial_smoothings(g: &CurveGraph, report: &BasinReport, cap: usize) -> Result<Vec<PartialSmoothing>> {
    let s = report.smoothable();
    if s.len() > cap {
        return Err(Error::TooManyComponents { count: s.len(), cap });
    }
    (0u64..1 << s.len())
        .map(|mask| {
            let chosen: Vec<_> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            Ok(PartialSmoothing { graph: smooth_singularities(g, &chosen)?, smoothed: chosen })
        })
        .collect()
}

/// Combinatorial type of a generic smoothing of the given singularities.
pub fn smooth_singularities(g: &CurveGraph, which: &[SingularityRef]) -> Result<CurveGraph> {
    let ids: Vec<ComponentId> = g.components().iter().map(|c| c.id).collect();
    let mut parent: BTreeMap<ComponentId, ComponentId> = ids.iter().map(|&i| (i, i)).collect();
    fn find(p: &mut BTreeMap<ComponentId, ComponentId>, x: ComponentId) -> ComponentId {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    let mut smoothed_edges = BTreeSet::new();
    let mut smoothed_cusps: BTreeMap<ComponentId, u32> = BTreeMap::new();
    for s in which {
        match *s {
            SingularityRef::Intersection(k) => {
                let x = g
                    .intersections()
                    .get(k)
                    .ok_or_else(|| Error::InvalidParameter(format!("no intersection {k}")))?;
                smoothed_edges.insert(k);
                let (a, b) = (find(&mut parent, x.ends[0].0), find(&mut parent, x.ends[1].0));
                let (lo, hi) = (a.min(b), a.max(b));
                parent.insert(hi, lo);
            }
            SingularityRef::Cusp(id) => {
                let c = g.component(id).ok_or_else(|| Error::InvalidParameter(format!("no component {id}")))?;
                let n = smoothed_cusps.entry(id).or_insert(0);
                if *n >= c.cusp_count {
                    return Err(Error::InvalidParameter(format!("component {id} has no cusp left")));
                }
                *n += 1;
            }
        }
    }
    // group the components; the new component keeps the smallest id of its class
    let mut classes: BTreeMap<ComponentId, Vec<&Component>> = BTreeMap::new();
    for c in g.components() {
        let r = find(&mut parent, c.id);
        classes.entry(r).or_default().push(c);
    }
    let mut extra: BTreeMap<ComponentId, i64> = BTreeMap::new();
    for &k in &smoothed_edges {
        let x = &g.intersections()[k];
        *extra.entry(find(&mut parent, x.ends[0].0)).or_default() += x.kind.delta() as i64;
    }
    let mut b = GraphBuilder::new();
    for (root, members) in &classes {
        let genus: i64 = members.iter().map(|c| c.geometric_genus as i64).sum::<i64>()
            + extra.get(root).copied().unwrap_or(0)
            - (members.len() as i64 - 1)
            + members.iter().map(|c| smoothed_cusps.get(&c.id).copied().unwrap_or(0) as i64).sum::<i64>();
        let cusps: u32 = members.iter().map(|c| c.cusp_count - smoothed_cusps.get(&c.id).copied().unwrap_or(0)).sum();
        let label = if members.iter().all(|c| c.label.is_some()) {
            Some(members.iter().map(|c| c.label.clone().unwrap()).collect::<Vec<_>>().join("+"))
        } else {
            None
        };
        b.push(Component { id: *root, geometric_genus: genus as u32, cusp_count: cusps, label });
    }
    for (k, x) in g.intersections().iter().enumerate() {
        if !smoothed_edges.contains(&k) {
            let (a, c) = (find(&mut parent, x.ends[0].0), find(&mut parent, x.ends[1].0));
            b.join(x.kind, a, c);
        }
    }
    for Mark(id, label) in g.marks() {
        let r = find(&mut parent, *id);
        b.mark(r, label);
    }
    b.build()
}

/// Mutable list form of a graph used by the rewriting steps below.
#[derive(Clone, Debug)]
struct Surgery {
    components: BTreeMap<ComponentId, Component>,
    edges: Vec<(SingularityKind, ComponentId, ComponentId)>,
    marks: Vec<Mark>,
    next: ComponentId,
}

impl Surgery {
    fn of(g: &CurveGraph) -> Self {
        Surgery {
            components: g.components().iter().map(|c| (c.id, c.clone())).collect(),
            edges: g.intersections().iter().map(|x| (x.kind, x.ends[0].0, x.ends[1].0)).collect(),
            marks: g.marks().to_vec(),
            next: g.next_id(),
        }
    }

    fn add(&mut self, genus: u32, label: &str) -> ComponentId {
        let id = self.next;
        self.next += 1;
        self.components.insert(
            id,
            Component { id, geometric_genus: genus, cusp_count: 0, label: Some(label.to_string()) },
        );
        id
    }

    fn remove(&mut self, set: &ComponentSet) {
        for id in set {
            self.components.remove(id);
        }
        self.edges.retain(|e| !set.contains(&e.1) && !set.contains(&e.2));
        self.marks.retain(|m| !set.contains(&m.0));
    }

    fn incident(&self, id: ComponentId) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.edges[k].1 == id || self.edges[k].2 == id).collect()
    }

    /// Contracts smooth rational components with at most two nodal branches, repeatedly.
    fn contract_unstable_rational(&mut self, keep: &ComponentSet) {
        loop {
            let victim = self.components.values().find_map(|c| {
                if !c.is_smooth_rational() || keep.contains(&c.id) || self.marks.iter().any(|m| m.0 == c.id) {
                    return None;
                }
                let inc = self.incident(c.id);
                let ok = inc.len() <= 2
                    && inc.iter().all(|&k| {
                        let e = self.edges[k];
                        e.0 == SingularityKind::Node && e.1 != e.2
                    });
                ok.then_some((c.id, inc))
            });
            let Some((id, inc)) = victim else { return };
            let others: Vec<ComponentId> = inc
                .iter()
                .map(|&k| {
                    let e = self.edges[k];
                    if e.1 == id { e.2 } else { e.1 }
                })
                .collect();
            self.remove(&[id].into_iter().collect());
            if let [a, b] = others[..] {
                self.edges.push((SingularityKind::Node, a, b));
            }
        }
    }

    fn build(&self) -> Result<CurveGraph> {
        let mut b = GraphBuilder::new();
        for c in self.components.values() {
            b.push(c.clone());
        }
        for &(k, x, y) in &self.edges {
            b.join(k, x, y);
        }
        for Mark(id, l) in &self.marks {
            b.mark(*id, l);
        }
        b.build()
    }
}

/// Intersections with exactly one end in `set`.
fn boundary(g: &CurveGraph, set: &ComponentSet) -> Vec<usize> {
    g.intersections()
        .iter()
        .enumerate()
        .filter(|(_, x)| set.contains(&x.ends[0].0) != set.contains(&x.ends[1].0))
        .map(|(k, _)| k)
        .collect()
}

/// The end of intersection `k` lying outside `set`.
fn outside_end(g: &CurveGraph, set: &ComponentSet, k: usize) -> ComponentId {
    let x = &g.intersections()[k];
    if set.contains(&x.ends[0].0) { x.ends[1].0 } else { x.ends[0].0 }
}

fn strictly_c_semistable(g: &CurveGraph) -> Result<bool> {
    let f = classify(g)?;
    Ok(f.c_semistable && !f.c_stable)
}

fn strictly_h_semistable(g: &CurveGraph) -> Result<bool> {
    let f = classify(g)?;
    Ok(f.h_semistable && !f.h_stable)
}

/// Every tacnode lies in an open rosary, every open rosary has length two, and the only elliptic
/// bridges are those rosaries.
pub fn is_c_closed_orbit(g: &CurveGraph) -> bool {
    let Ok(true) = strictly_c_semistable(g) else { return false };
    let ros = open_rosaries(g);
    if ros.iter().any(|r| r.length != 2) {
        return false;
    }
    let in_rosary: BTreeSet<usize> = ros.iter().flat_map(|r| r.tacnodes.iter().copied()).collect();
    let all_tacnodes = g
        .intersections()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.kind == SingularityKind::Tacnode)
        .all(|(k, _)| in_rosary.contains(&k));
    let supports: BTreeSet<ComponentSet> = ros.iter().map(|r| r.beads.iter().copied().collect()).collect();
    let Ok(bridges) = crate::curve_model::find_elliptic_bridges(g) else { return false };
    all_tacnodes && bridges.iter().all(|b| supports.contains(b))
}

/// A closed rosary of odd genus, or every weak elliptic chain lies inside the length-three open
/// rosaries.
pub fn is_h_closed_orbit(g: &CurveGraph) -> bool {
    let Ok(true) = strictly_h_semistable(g) else { return false };
    if let Some(r) = crate::curve_model::closed_rosary(g) {
        if r.broken_beads.is_empty() && r.length % 2 == 0 {
            return true;
        }
    }
    let covered: ComponentSet = open_rosaries(g)
        .iter()
        .filter(|r| r.length == 3)
        .flat_map(|r| r.beads.iter().copied())
        .collect();
    let Ok(weak) = find_weak_elliptic_chains(g) else { return false };
    weak.iter().all(|c| c.support().is_subset(&covered))
}

/// Pseudostable reduction of a c-semistable curve: tacnodes become elliptic bridges, then rational
/// components meeting the rest in fewer than three points are contracted.
pub fn pseudostable_reduction(g: &CurveGraph) -> Result<CurveGraph> {
    let mut s = Surgery::of(g);
    let tacs: Vec<usize> = (0..s.edges.len()).filter(|&k| s.edges[k].0 == SingularityKind::Tacnode).collect();
    let mut fresh = vec![];
    for &k in &tacs {
        let (_, a, b) = s.edges[k];
        let e = s.add(1, "E");
        fresh.push((a, e, b));
    }
    let tac_set: BTreeSet<usize> = tacs.into_iter().collect();
    s.edges = s.edges.iter().enumerate().filter(|(k, _)| !tac_set.contains(k)).map(|(_, e)| *e).collect();
    for (a, e, b) in fresh {
        s.edges.push((SingularityKind::Node, a, e));
        s.edges.push((SingularityKind::Node, e, b));
    }
    s.contract_unstable_rational(&ComponentSet::new());
    s.build()
}

fn disjoint(sets: &[ComponentSet]) -> bool {
    let mut seen = ComponentSet::new();
    sets.iter().all(|s| s.iter().all(|id| seen.insert(*id)))
}

/// Removes each subcurve and glues in a chain of `count` open rosaries of `length` beads, joined
/// end to end by nodes; the boundary points of the subcurve become nodes on the chain's end beads.
fn replace_by_rosaries(g: &CurveGraph, subs: &[(ComponentSet, usize)], length: usize) -> Result<Surgery> {
    if !disjoint(&subs.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>()) {
        return Err(Error::Hypothesis("subcurves to replace overlap".into()));
    }
    let mut s = Surgery::of(g);
    let all: ComponentSet = subs.iter().flat_map(|(x, _)| x.iter().copied()).collect();
    s.remove(&all);
    // (subcurve, boundary edge) -> bead carrying that point
    let mut attach: BTreeMap<(usize, usize), ComponentId> = BTreeMap::new();
    let mut edges = BTreeSet::new();
    for (i, (sub, count)) in subs.iter().enumerate() {
        let bd = boundary(g, sub);
        if bd.len() != 2 {
            return Err(Error::Hypothesis(format!("subcurve {sub:?} meets the rest in {} points", bd.len())));
        }
        let mut prev: Option<ComponentId> = None;
        let mut first = None;
        for j in 0..*count {
            let beads: Vec<_> = (1..=length).map(|b| s.add(0, &format!("R{}.{}.L{b}", i + 1, j + 1))).collect();
            for w in beads.windows(2) {
                s.edges.push((SingularityKind::Tacnode, w[0], w[1]));
            }
            if let Some(p) = prev {
                s.edges.push((SingularityKind::Node, p, beads[0]));
            }
            first.get_or_insert(beads[0]);
            prev = Some(beads[length - 1]);
        }
        attach.insert((i, bd[0]), first.unwrap());
        attach.insert((i, bd[1]), prev.unwrap());
        edges.extend(bd);
    }
    for k in edges {
        let x = &g.intersections()[k];
        let end = |c: ComponentId| match subs.iter().position(|(sub, _)| sub.contains(&c)) {
            Some(i) => attach[&(i, k)],
            None => c,
        };
        s.edges.push((SingularityKind::Node, end(x.ends[0].0), end(x.ends[1].0)));
    }
    Ok(s)
}

/// Replaces every genus-one subcurve of an elliptic bridge by an open rosary of length two.
/// Curves with tacnodes are first taken to their pseudostable reduction.
pub fn c_closed_orbit_rep(g: &CurveGraph) -> Result<CurveGraph> {
    if !strictly_c_semistable(g)? {
        return Err(Error::Hypothesis("c-stable or unstable input".into()));
    }
    if is_c_closed_orbit(g) {
        return Ok(g.clone());
    }
    let ps = if g.has_tacnodes() { pseudostable_reduction(g)? } else { g.clone() };
    let bridges = minimal_elliptic_bridges(&ps)?;
    let subs: Vec<_> = bridges.into_iter().map(|b| (b, 1)).collect();
    replace_by_rosaries(&ps, &subs, 2)?.build()
}

/// Maximal weak elliptic chains, chosen greedily: longest first, then smallest component id.
fn maximal_weak_chains(g: &CurveGraph) -> Result<Vec<ChainRecord>> {
    let mut all = find_weak_elliptic_chains(g)?;
    all.retain(|c| c.shape == ChainShape::Open);
    all.sort_by(|a, b| {
        b.support().len().cmp(&a.support().len()).then_with(|| a.support().cmp(&b.support()))
    });
    let mut used = ComponentSet::new();
    let mut out = vec![];
    for c in all {
        let sup = c.support();
        if sup.is_disjoint(&used) {
            used.extend(sup.iter().copied());
            out.push(c);
        }
    }
    Ok(out)
}

fn closed_rosary_graph(len: usize) -> Result<CurveGraph> {
    let mut b = GraphBuilder::new();
    let beads: Vec<_> = (1..=len).map(|j| b.labelled(0, 0, &format!("L{j}"))).collect();
    for i in 0..len {
        b.tacnode(beads[i], beads[(i + 1) % len]);
    }
    b.build()
}

/// Replaces each maximal weak elliptic chain of length `l` by `l` open rosaries of length three,
/// then contracts rational components left between two former tacnodes. A closed weak elliptic
/// chain of length `r` becomes a closed rosary of length `2r`.
pub fn h_closed_orbit_rep(g: &CurveGraph) -> Result<CurveGraph> {
    if !strictly_h_semistable(g)? {
        return Err(Error::Hypothesis("h-stable or not h-semistable input".into()));
    }
    if is_h_closed_orbit(g) {
        return Ok(g.clone());
    }
    let all = g.component_ids();
    if let Some(c) = find_weak_elliptic_chains(g)?
        .into_iter()
        .find(|c| c.shape == ChainShape::Closed && c.support() == all)
    {
        return closed_rosary_graph(2 * c.length);
    }
    let chains = maximal_weak_chains(g)?;
    let subs: Vec<_> = chains.iter().map(|c| (c.support(), c.length)).collect();
    let mut s = replace_by_rosaries(g, &subs, 3)?;
    let fresh: ComponentSet = s.components.keys().copied().filter(|id| !g.component_ids().contains(id)).collect();
    s.contract_unstable_rational(&fresh);
    let rep = s.build()?;
    if !is_h_closed_orbit(&rep) {
        return Err(Error::Hypothesis("replacement did not reach a closed orbit".into()));
    }
    Ok(rep)
}

/// One generic c-semistable curve per subset of the genus-one bridge subcurves: each chosen
/// subcurve is contracted to a tacnode, with a rational component inserted wherever two contracted
/// subcurves met.
pub fn enumerate_c_replacements(g: &CurveGraph) -> Result<Vec<CurveGraph>> {
    if !classify(g)?.pseudostable {
        return Err(Error::Hypothesis("input is not pseudostable".into()));
    }
    let bridges = minimal_elliptic_bridges(g)?;
    if !disjoint(&bridges) {
        return Err(Error::Hypothesis("elliptic bridges overlap".into()));
    }
    if bridges.len() > 16 {
        return Err(Error::TooManyComponents { count: bridges.len(), cap: 16 });
    }
    let n = bridges.len();
    let mut out = vec![];
    for mask in 0u32..1 << n {
        let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let contracted: ComponentSet = chosen.iter().flat_map(|&i| bridges[i].iter().copied()).collect();
        let mut s = Surgery::of(g);
        s.remove(&contracted);
        let mut separators: BTreeMap<usize, ComponentId> = BTreeMap::new();
        for &i in &chosen {
            let bd = boundary(g, &bridges[i]);
            let mut ends = vec![];
            for &k in &bd {
                let y = outside_end(g, &bridges[i], k);
                if contracted.contains(&y) {
                    let p = *separators.entry(k).or_insert_with(|| s.add(0, "P1"));
                    ends.push(p);
                } else {
                    ends.push(y);
                }
            }
            s.edges.push((SingularityKind::Tacnode, ends[0], ends[1]));
        }
        out.push(s.build()?);
    }
    Ok(out)
}

/// Local-parameter weights at the two nodal ends of each rosary block.
pub fn rosary_end_weights(c: &Configuration, rho: &OneParamSubgroup) -> Result<Vec<[i64; 2]>> {
    check_rho(c, rho)?;
    c.rosaries
        .iter()
        .map(|block| {
            let first = block.beads[0];
            let last = *block.beads.last().unwrap();
            let end = |k: usize, bead: ComponentId| -> Result<i64> {
                let x = &c.graph.intersections()[k];
                let b = if x.ends[0].0 == bead { x.ends[0] } else { x.ends[1] };
                branch_weight(c, rho, b)
            };
            Ok([end(block.junctions[0], first)?, end(*block.junctions.last().unwrap(), last)?])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::isomorphic;
    use crate::families::{canonical_1ps, Family};

    fn bridge_chain(n: usize) -> CurveGraph {
        let mut b = GraphBuilder::new();
        let mut prev = b.labelled(2, 0, "C1");
        for i in 0..n {
            let e = b.labelled(1, 0, &format!("E{}", i + 1));
            b.node(prev, e);
            prev = e;
        }
        let c2 = b.labelled(2, 0, "C2");
        b.node(prev, c2);
        b.build().unwrap()
    }

    #[test]
    fn open_rosary_weights() {
        let c = Configuration::build(&Family::OpenRosary { g: 7, r: 4 }).unwrap();
        let rho = canonical_1ps(&c).unwrap();
        let js = &c.rosaries[0].junctions;
        let w = |k| versal_weights(&c, &rho, SingularityRef::Intersection(k)).unwrap().parameter_weights;
        assert_eq!(w(js[0]), vec![-1]);
        for i in 1..=4 {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(w(js[i]), vec![4 * sign, 3 * sign, 2 * sign]);
        }
    }

    #[test]
    fn tacnodal_tail_weights() {
        let c = Configuration::build(&Family::TacnodalTail { g: 6 }).unwrap();
        let rho = canonical_1ps(&c).unwrap();
        let r = basin_membership(&c, &rho).unwrap();
        let ws: Vec<_> = r.singularities.iter().map(|s| s.weights.parameter_weights.clone()).collect();
        assert_eq!(ws, vec![vec![-4, -3, -2], vec![1], vec![4, 6]]);
        assert_eq!(r.lattice_size, 4);
    }

    #[test]
    fn trivial_and_foreign_actions() {
        let c = Configuration::build(&Family::ClosedRosary { r: 4 }).unwrap();
        let flat = OneParamSubgroup::new(vec![3; 12]);
        assert!(matches!(basin_membership(&c, &flat), Err(Error::TrivialAction(_))));
        let mut w = vec![0; 12];
        w[1] = 5;
        assert!(matches!(basin_membership(&c, &OneParamSubgroup::new(w)), Err(Error::NotAutomorphism(_))));
        assert!(matches!(basin_membership(&c, &OneParamSubgroup::new(vec![0; 5])), Err(Error::CoordinateMismatch(_))));
    }

    #[test]
    fn smoothing_keeps_genus() {
        let c = Configuration::build(&Family::BrokenBead { r: 5 }).unwrap();
        let all = singularities(&c.graph);
        let smooth = smooth_singularities(&c.graph, &all).unwrap();
        assert_eq!(smooth.components().len(), 1);
        assert_eq!(smooth.arithmetic_genus(), c.graph.arithmetic_genus());
    }

    #[test]
    fn replacements_count() {
        for n in 0..4 {
            let g = bridge_chain(n);
            assert_eq!(enumerate_c_replacements(&g).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn c_rep_of_bridge() {
        let rep = c_closed_orbit_rep(&bridge_chain(1)).unwrap();
        assert!(is_c_closed_orbit(&rep));
        assert_eq!(open_rosaries(&rep).len(), 1);
        assert!(isomorphic(&rep, &c_closed_orbit_rep(&rep).unwrap()));
        let mut b = GraphBuilder::new();
        b.component(4, 0);
        assert!(c_closed_orbit_rep(&b.build().unwrap()).is_err());
    }
}
