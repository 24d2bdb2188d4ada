//! Explicit rosary configurations, their monomial parametrizations and torus actions.

use serde::{Deserialize, Serialize};

use crate::curve_model::{Branch, ComponentId, CurveGraph, GraphBuilder};
use crate::rational::{q, serde_q, Q};
use crate::{Error, Result};

/// One coordinate of a component map: `x_coordinate = coefficient · s^a t^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coordinate: usize,
    pub exponents: (u32, u32),
    #[serde(with = "serde_q")]
    pub coefficient: Q,
}

impl Term {
    pub fn unit(coordinate: usize, a: u32, b: u32) -> Self {
        Term { coordinate, exponents: (a, b), coefficient: q(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMap {
    pub component: ComponentId,
    pub degree: u32,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ParametrizationDoc")]
pub struct Parametrization {
    pub num_coordinates: usize,
    pub components: Vec<ComponentMap>,
}

#[derive(Deserialize)]
struct ParametrizationDoc {
    num_coordinates: usize,
    components: Vec<ComponentMap>,
}

impl TryFrom<ParametrizationDoc> for Parametrization {
    type Error = Error;
    fn try_from(d: ParametrizationDoc) -> Result<Self> {
        Parametrization::new(d.num_coordinates, d.components)
    }
}

impl Parametrization {
    pub fn new(num_coordinates: usize, components: Vec<ComponentMap>) -> Result<Self> {
        for c in &components {
            let mut seen = std::collections::BTreeSet::new();
            for t in &c.terms {
                if t.exponents.0 + t.exponents.1 != c.degree {
                    return Err(Error::InvalidParameter(format!(
                        "component {}: term of degree {} in a map of degree {}",
                        c.component,
                        t.exponents.0 + t.exponents.1,
                        c.degree
                    )));
                }
                if t.coordinate >= num_coordinates {
                    return Err(Error::CoordinateMismatch(format!(
                        "coordinate {} out of range {}",
                        t.coordinate, num_coordinates
                    )));
                }
                if !seen.insert(t.coordinate) {
                    return Err(Error::InvalidParameter(format!(
                        "component {}: coordinate {} assigned twice",
                        c.component, t.coordinate
                    )));
                }
                if t.coefficient == q(0) {
                    return Err(Error::InvalidParameter("zero coefficient".into()));
                }
            }
        }
        Ok(Parametrization { num_coordinates, components })
    }

    pub fn total_degree(&self) -> u32 {
        self.components.iter().map(|c| c.degree).sum()
    }

    pub fn map(&self, id: ComponentId) -> Option<&ComponentMap> {
        self.components.iter().find(|c| c.component == id)
    }
}

/// Integer weights `r_i`, acting by `x_i ↦ t^{r_i} x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneParamSubgroup {
    pub weights: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(weights: Vec<i64>) -> Self {
        OneParamSubgroup { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn shifted(&self, k: i64) -> Self {
        OneParamSubgroup::new(self.weights.iter().map(|w| w + k).collect())
    }

    /// Product `Π ρ_i^{e_i}` of subgroups of a common torus.
    pub fn product(gens: &[OneParamSubgroup], exponents: &[i64]) -> Result<Self> {
        if gens.len() != exponents.len() {
            return Err(Error::InvalidParameter(format!(
                "{} exponents for {} generators",
                exponents.len(),
                gens.len()
            )));
        }
        let n = gens.first().map(|g| g.len()).unwrap_or(0);
        let mut w = vec![0i64; n];
        for (g, &e) in gens.iter().zip(exponents) {
            if g.len() != n {
                return Err(Error::CoordinateMismatch("generators of different lengths".into()));
            }
            for (acc, x) in w.iter_mut().zip(&g.weights) {
                *acc += e * x;
            }
        }
        Ok(OneParamSubgroup::new(w))
    }
}

/// Which torus-fixed point of `P^1` a branch sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPoint {
    /// `s = 0`, local parameter `s/t`.
    SZero,
    /// `t = 0`, local parameter `t/s`.
    TZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub branch: Branch,
    pub at: FixedPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    OpenRosary { g: u32, r: u32 },
    MultiRosary { g: u32, lengths: Vec<u32> },
    ClosedRosary { r: u32 },
    BrokenBead { r: u32 },
    TacnodalTail { g: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Mode {
    FullyParametrized,
    /// An abstract remainder `D` carried only by its genus and attachment coordinates.
    SplitWithD {
        genus: u32,
        d_component: ComponentId,
        d_genus: u32,
        /// Coordinates where the parametrized block meets `D`.
        attachments: Vec<usize>,
        /// Coordinates used only by `D`.
        d_coordinates: Vec<usize>,
    },
}

/// One rosary block inside a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosaryBlock {
    pub beads: Vec<ComponentId>,
    /// Intersection indices `a_0, …, a_ℓ` from the `p` end to the `q` end.
    pub junctions: Vec<usize>,
    pub coordinates: std::ops::Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub family: Family,
    pub graph: CurveGraph,
    pub mode: Mode,
    pub parametrization: Parametrization,
    pub branch_points: Vec<BranchPoint>,
    pub rosaries: Vec<RosaryBlock>,
}

impl Configuration {
    pub fn genus(&self) -> u32 {
        self.graph.arithmetic_genus() as u32
    }

    /// `N + 1 = 3g − 3`.
    pub fn total_coordinates(&self) -> usize {
        3 * self.genus() as usize - 3
    }

    pub fn is_split(&self) -> bool {
        matches!(self.mode, Mode::SplitWithD { .. })
    }

    pub fn branch_point(&self, b: Branch) -> Option<FixedPoint> {
        self.branch_points.iter().find(|p| p.branch == b).map(|p| p.at)
    }

    pub fn build(family: &Family) -> Result<Configuration> {
        match family {
            Family::OpenRosary { g, r } => build_open_rosary_config(*g, *r),
            Family::MultiRosary { g, lengths } => build_multi_rosary_config(*g, lengths),
            Family::ClosedRosary { r } => build_closed_rosary_config(*r),
            Family::BrokenBead { r } => build_broken_bead_config(*r),
            Family::TacnodalTail { g } => build_tacnodal_tail_config(*g),
        }
    }
}

fn quartic(o: usize) -> Vec<Term> {
    vec![Term::unit(o, 3, 1), Term::unit(o + 1, 4, 0), Term::unit(o + 2, 2, 2), Term::unit(o + 3, 1, 3), Term::unit(o + 4, 0, 4)]
}

fn map(component: ComponentId, degree: u32, terms: Vec<Term>) -> ComponentMap {
    ComponentMap { component, degree, terms }
}

/// Records the branch points of intersection `k` in the order its ends were added.
fn mark_branches(g: &CurveGraph, k: usize, at: [Option<FixedPoint>; 2], out: &mut Vec<BranchPoint>) {
    for (end, p) in g.intersections()[k].ends.iter().zip(at) {
        if let Some(p) = p {
            out.push(BranchPoint { branch: *end, at: p });
        }
    }
}

use FixedPoint::{SZero, TZero};

/// Open rosary of length `r + 1` attached at two nodes to an abstract curve of genus `g − r − 1`.
pub fn build_open_rosary_config(g: u32, r: u32) -> Result<Configuration> {
    if g < 4 {
        return Err(Error::InvalidParameter(format!("genus {g} < 4")));
    }
    if r < 1 || r > g - 2 {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= g-2, got r = {r}, g = {g}")));
    }
    let mut c = build_multi_rosary_config(g, &[r + 1])?;
    c.family = Family::OpenRosary { g, r };
    Ok(c)
}

/// Several open rosaries of the given lengths, each attached at two nodes to one abstract curve.
pub fn build_multi_rosary_config(g: u32, lengths: &[u32]) -> Result<Configuration> {
    if lengths.is_empty() || lengths.iter().any(|&l| l < 2) {
        return Err(Error::InvalidParameter("rosary lengths must be at least two".into()));
    }
    let used: u32 = lengths.iter().sum();
    if used > g {
        return Err(Error::InvalidParameter(format!("rosaries need genus {used} > {g}")));
    }
    let d_genus = g - used;
    let k = lengths.len() as u32;
    if 2 * d_genus + 2 * k <= 2 {
        return Err(Error::InvalidParameter("the remainder would not be stable".into()));
    }
    let mut b = GraphBuilder::new();
    let d = b.labelled(d_genus, 0, "D");
    let mut bead_ids = vec![];
    for (i, &l) in lengths.iter().enumerate() {
        let beads: Vec<_> = (1..=l)
            .map(|j| {
                let label = if k == 1 { format!("L{j}") } else { format!("R{}.L{j}", i + 1) };
                b.labelled(0, 0, &label)
            })
            .collect();
        bead_ids.push(beads);
    }
    let mut junction_ids = vec![];
    for beads in &bead_ids {
        let mut js = vec![b.node(d, beads[0])];
        for w in beads.windows(2) {
            js.push(b.tacnode(w[0], w[1]));
        }
        js.push(b.node(beads[beads.len() - 1], d));
        junction_ids.push(js);
    }
    let graph = b.build()?;

    let mut maps = vec![];
    let mut points = vec![];
    let mut blocks = vec![];
    let mut attachments = vec![];
    let mut o = 0usize;
    for (beads, js) in bead_ids.iter().zip(&junction_ids) {
        let r = beads.len() - 1;
        maps.push(map(beads[0], 2, vec![Term::unit(o, 2, 0), Term::unit(o + 1, 1, 1), Term::unit(o + 2, 0, 2)]));
        for j in 2..=r {
            maps.push(map(beads[j - 1], 4, quartic(o + 3 * j - 5)));
        }
        maps.push(map(
            beads[r],
            2,
            vec![Term::unit(o + 3 * r - 2, 1, 1), Term::unit(o + 3 * r - 1, 2, 0), Term::unit(o + 3 * r, 0, 2)],
        ));
        mark_branches(&graph, js[0], [None, Some(TZero)], &mut points);
        for &k in &js[1..=r] {
            mark_branches(&graph, k, [Some(SZero), Some(TZero)], &mut points);
        }
        mark_branches(&graph, js[r + 1], [Some(SZero), None], &mut points);
        attachments.push(o);
        attachments.push(o + 3 * r);
        blocks.push(RosaryBlock { beads: beads.clone(), junctions: js.clone(), coordinates: o..o + 3 * r + 1 });
        o += 3 * r + 1;
    }
    let total = 3 * g as usize - 3;
    let d_only = 3 * d_genus as usize + 2 * k as usize - 3;
    debug_assert_eq!(o + d_only, total);
    let parametrization = Parametrization::new(o, maps)?;
    Ok(Configuration {
        family: Family::MultiRosary { g, lengths: lengths.to_vec() },
        graph,
        mode: Mode::SplitWithD { genus: g, d_component: d, d_genus, attachments, d_coordinates: (o..total).collect() },
        parametrization,
        branch_points: points,
        rosaries: blocks,
    })
}

/// Closed rosary of length `r` (genus `r + 1`), fully parametrized in `3r` coordinates.
pub fn build_closed_rosary_config(r: u32) -> Result<Configuration> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("closed rosary needs r >= 3, got {r}")));
    }
    let r = r as usize;
    let mut b = GraphBuilder::new();
    let beads: Vec<_> = (1..=r).map(|j| b.labelled(0, 0, &format!("L{j}"))).collect();
    let js: Vec<_> = (0..r).map(|i| b.tacnode(beads[i], beads[(i + 1) % r])).collect();
    let graph = b.build()?;
    let mut maps: Vec<_> = (1..r).map(|i| map(beads[i - 1], 4, quartic(3 * i - 3))).collect();
    maps.push(map(
        beads[r - 1],
        4,
        vec![
            Term::unit(0, 1, 3),
            Term::unit(1, 0, 4),
            Term::unit(3 * r - 3, 3, 1),
            Term::unit(3 * r - 2, 4, 0),
            Term::unit(3 * r - 1, 2, 2),
        ],
    ));
    let mut points = vec![];
    for &k in &js {
        mark_branches(&graph, k, [Some(SZero), Some(TZero)], &mut points);
    }
    Ok(Configuration {
        family: Family::ClosedRosary { r: r as u32 },
        graph,
        mode: Mode::FullyParametrized,
        parametrization: Parametrization::new(3 * r, maps)?,
        branch_points: points,
        rosaries: vec![],
    })
}

/// Closed rosary of odd length `r` with one bead broken into two conics.
pub fn build_broken_bead_config(r: u32) -> Result<Configuration> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidParameter(format!("broken bead needs odd r >= 3, got {r}")));
    }
    let r = r as usize;
    let mut b = GraphBuilder::new();
    let comps: Vec<_> = (0..=r).map(|j| b.labelled(0, 0, &format!("L{j}"))).collect();
    let mut js = vec![b.node(comps[0], comps[1])];
    for i in 1..r {
        js.push(b.tacnode(comps[i], comps[i + 1]));
    }
    js.push(b.tacnode(comps[r], comps[0]));
    let graph = b.build()?;
    let mut maps = vec![
        map(comps[0], 2, vec![Term::unit(0, 1, 1), Term::unit(1, 2, 0), Term::unit(2, 0, 2)]),
        map(comps[1], 2, vec![Term::unit(2, 2, 0), Term::unit(3, 1, 1), Term::unit(4, 0, 2)]),
    ];
    for i in 2..r {
        maps.push(map(comps[i], 4, quartic(3 * i - 3)));
    }
    maps.push(map(
        comps[r],
        4,
        vec![
            Term::unit(0, 1, 3),
            Term::unit(1, 0, 4),
            Term::unit(3 * r - 3, 3, 1),
            Term::unit(3 * r - 2, 4, 0),
            Term::unit(3 * r - 1, 2, 2),
        ],
    ));
    let mut points = vec![];
    for &k in &js {
        mark_branches(&graph, k, [Some(SZero), Some(TZero)], &mut points);
    }
    Ok(Configuration {
        family: Family::BrokenBead { r: r as u32 },
        graph,
        mode: Mode::FullyParametrized,
        parametrization: Parametrization::new(3 * r, maps)?,
        branch_points: points,
        rosaries: vec![],
    })
}

/// Cuspidal rational `E` meeting a conic `R` in a tacnode, `R` meeting an abstract curve of genus
/// `g − 2` in a node.
pub fn build_tacnodal_tail_config(g: u32) -> Result<Configuration> {
    if g < 4 {
        return Err(Error::InvalidParameter(format!("genus {g} < 4")));
    }
    let mut b = GraphBuilder::new();
    let e = b.labelled(0, 1, "E");
    let rr = b.labelled(0, 0, "R");
    let d = b.labelled(g - 2, 0, "D");
    let p = b.tacnode(e, rr);
    let qn = b.node(rr, d);
    let graph = b.build()?;
    let maps = vec![
        map(e, 4, vec![Term::unit(0, 4, 0), Term::unit(1, 2, 2), Term::unit(2, 1, 3), Term::unit(3, 0, 4)]),
        map(rr, 2, vec![Term::unit(2, 1, 1), Term::unit(3, 2, 0), Term::unit(4, 0, 2)]),
    ];
    let mut points = vec![];
    mark_branches(&graph, p, [Some(SZero), Some(TZero)], &mut points);
    mark_branches(&graph, qn, [Some(SZero), None], &mut points);
    let total = 3 * g as usize - 3;
    Ok(Configuration {
        family: Family::TacnodalTail { g },
        graph,
        mode: Mode::SplitWithD { genus: g, d_component: d, d_genus: g - 2, attachments: vec![4], d_coordinates: (5..total).collect() },
        parametrization: Parametrization::new(5, maps)?,
        branch_points: points,
        rosaries: vec![],
    })
}

const OPEN_PATTERN: [i64; 6] = [2, 1, 0, 2, 3, 4];

fn open_block_weights(len: usize) -> impl Iterator<Item = i64> {
    (0..len).map(|i| OPEN_PATTERN[i % 6])
}

/// The weight vector used for the index computations of each family.
pub fn canonical_1ps(c: &Configuration) -> Result<OneParamSubgroup> {
    let n = c.total_coordinates();
    let w: Vec<i64> = match &c.family {
        Family::OpenRosary { .. } | Family::MultiRosary { .. } => {
            let mut w = vec![2; n];
            for block in &c.rosaries {
                for (i, x) in block.coordinates.clone().zip(open_block_weights(block.coordinates.len())) {
                    w[i] = x;
                }
            }
            w
        }
        Family::ClosedRosary { r } => {
            if r % 2 == 1 {
                return Err(Error::Unsupported(format!(
                    "closed rosary of length {r} has finite automorphisms"
                )));
            }
            (0..n).map(|i| [3, 4, 2, 1, 0, 2][i % 6]).collect()
        }
        Family::BrokenBead { .. } => {
            let mut w = vec![1, 0, 2];
            w.extend((3..n).map(|i| [1, 0, 2, 3, 4, 2][(i - 3) % 6]));
            w
        }
        Family::TacnodalTail { .. } => {
            let mut w = vec![0, 2, 3, 4];
            w.resize(n, 2);
            w
        }
    };
    Ok(OneParamSubgroup::new(w))
}

/// Generators of the identity component of the automorphism torus.
pub fn torus_generators(c: &Configuration) -> Vec<OneParamSubgroup> {
    let n = c.total_coordinates();
    match &c.family {
        Family::OpenRosary { .. } | Family::MultiRosary { .. } => c
            .rosaries
            .iter()
            .map(|block| {
                let mut w = vec![2; n];
                for (i, x) in block.coordinates.clone().zip(open_block_weights(block.coordinates.len())) {
                    w[i] = x;
                }
                OneParamSubgroup::new(w)
            })
            .collect(),
        Family::ClosedRosary { r } if r % 2 == 1 => vec![],
        _ => canonical_1ps(c).into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::classify;

    #[test]
    fn open_rosary_shapes() {
        let c = build_open_rosary_config(5, 2).unwrap();
        assert_eq!(c.parametrization.num_coordinates, 7);
        assert_eq!(c.genus(), 5);
        assert_eq!(c.total_coordinates(), 12);
        assert!(build_open_rosary_config(5, 4).is_err());
        assert!(build_open_rosary_config(4, 1).is_ok());
        let w = canonical_1ps(&c).unwrap().weights;
        assert_eq!(&w[..7], &[2, 1, 0, 2, 3, 4, 2]);
        assert!(w[7..].iter().all(|&x| x == 2));
    }

    #[test]
    fn fully_parametrized_degrees() {
        for r in [3u32, 4, 5, 6, 7, 8] {
            let c = build_closed_rosary_config(r).unwrap();
            assert_eq!(c.parametrization.total_degree(), 4 * c.genus() - 4);
            assert_eq!(c.parametrization.num_coordinates, c.total_coordinates());
            if r % 2 == 1 {
                let b = build_broken_bead_config(r).unwrap();
                assert_eq!(b.genus(), r + 1);
                assert_eq!(b.parametrization.total_degree(), 4 * b.genus() - 4);
            }
        }
        assert!(build_closed_rosary_config(2).is_err());
        assert!(build_broken_bead_config(4).is_err());
    }

    #[test]
    fn broken_bead_weights() {
        let c = build_broken_bead_config(5).unwrap();
        let w = canonical_1ps(&c).unwrap().weights;
        assert_eq!(w, vec![1, 0, 2, 1, 0, 2, 3, 4, 2, 1, 0, 2, 3, 4, 2]);
        assert_eq!(w.iter().sum::<i64>(), 6 * 5 - 3);
    }

    #[test]
    fn classification_of_families() {
        let open = build_open_rosary_config(6, 3).unwrap();
        let f = classify(&open.graph).unwrap();
        assert!(f.c_semistable && !f.h_semistable);
        let odd_len = build_open_rosary_config(6, 2).unwrap();
        let f = classify(&odd_len.graph).unwrap();
        assert!(f.c_semistable && f.h_semistable && !f.h_stable);
        let broken = build_broken_bead_config(5).unwrap();
        let f = classify(&broken.graph).unwrap();
        assert!(f.c_semistable && !f.h_semistable);
    }

    #[test]
    fn generator_counts() {
        let c = build_multi_rosary_config(9, &[2, 2, 2]).unwrap();
        assert_eq!(torus_generators(&c).len(), 3);
        assert_eq!(torus_generators(&build_closed_rosary_config(6).unwrap()).len(), 1);
        assert!(torus_generators(&build_closed_rosary_config(5).unwrap()).is_empty());
    }

    #[test]
    fn configuration_round_trips_through_json() {
        let c = build_broken_bead_config(3).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Configuration = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parametrization_rejects_mixed_degrees() {
        let bad = map(0, 2, vec![Term::unit(0, 2, 0), Term::unit(1, 2, 1)]);
        assert!(Parametrization::new(2, vec![bad]).is_err());
        let out = map(0, 2, vec![Term::unit(3, 2, 0)]);
        assert!(matches!(Parametrization::new(2, vec![out]), Err(Error::CoordinateMismatch(_))));
    }
}
