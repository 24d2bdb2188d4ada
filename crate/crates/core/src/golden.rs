//! Pinned reference values and the runner that checks the engine against them.
//!
//! Every check produces a canonical text value; the pinned value for the same id lives in
//! `fixtures/expectations.json` and is compared as a string. Items come out sorted by id.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::basin_calculus::{
    basin_membership, c_closed_orbit_rep, enumerate_c_replacements, h_closed_orbit_rep, is_c_closed_orbit,
    is_h_closed_orbit, product_subgroup, SingularityRef,
};
use crate::chow_multiplicity::{certify_unstable, ChowCase, MultiplicityCertificate, Verdict};
use crate::curve_model::{classify, isomorphic, stability_report, ChainRecord, ChainShape, CurveGraph, SingularityKind};
use crate::divisor_classes::{
    asymptotic_polarization, canonical_alpha_class, epsilon_of_m, lambda_n, moriwaki_decomposition,
    pseudostable_pullback, viehweg_class, DivisorClass,
};
use crate::families::{canonical_1ps, Configuration, Family, OneParamSubgroup};
use crate::ideal_engine::{evaluate_slice, extrapolate_index, hilbert_index, index_table, Monomial, MonomialOrder};
use crate::rational::{fmt_q, frac, q, Q};
use crate::{Error, Result};

/// Graph documents shipped with the crate.
pub const FIXTURES: &[(&str, &str)] = &[
    ("bridge", include_str!("../fixtures/graphs/bridge.json")),
    ("bridge_length_two", include_str!("../fixtures/graphs/bridge_length_two.json")),
    ("bridge_rep", include_str!("../fixtures/graphs/bridge_rep.json")),
    ("closed_rosary_four", include_str!("../fixtures/graphs/closed_rosary_four.json")),
    ("closed_weak_chain", include_str!("../fixtures/graphs/closed_weak_chain.json")),
    ("closed_weak_chain_rep", include_str!("../fixtures/graphs/closed_weak_chain_rep.json")),
    ("h_example_bridge_p1", include_str!("../fixtures/graphs/h_example_bridge_p1.json")),
    ("h_example_bridge_p1_rep", include_str!("../fixtures/graphs/h_example_bridge_p1_rep.json")),
    ("h_example_pure", include_str!("../fixtures/graphs/h_example_pure.json")),
    ("h_example_pure_rep", include_str!("../fixtures/graphs/h_example_pure_rep.json")),
    ("rosary_three", include_str!("../fixtures/graphs/rosary_three.json")),
    ("smooth", include_str!("../fixtures/graphs/smooth.json")),
    ("tacnodal_tail", include_str!("../fixtures/graphs/tacnodal_tail.json")),
    ("three_rosaries", include_str!("../fixtures/graphs/three_rosaries.json")),
];

const DEFAULT_EXPECTATIONS: &str = include_str!("../fixtures/expectations.json");

pub fn fixture(name: &str) -> Result<CurveGraph> {
    let (_, doc) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no fixture named {name:?}")))?;
    CurveGraph::from_json(doc)
}

/// Pinned values keyed by item id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Expectations(pub BTreeMap<String, String>);

impl Expectations {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("expectations: {e}")))
    }

    pub fn pinned() -> Self {
        Self::from_json(DEFAULT_EXPECTATIONS).expect("bundled expectations parse")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub id: String,
    pub group: String,
    pub actual: String,
    pub expected: Option<String>,
    pub pass: bool,
    /// First differing token on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub engine_version: String,
    pub items: Vec<CheckItem>,
    pub passed: usize,
    pub failed: usize,
}

impl RunManifest {
    pub fn ok(&self) -> bool {
        self.failed == 0 && !self.items.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            if it.pass {
                out.push_str(&format!("PASS {}  {}\n", it.id, it.actual));
            } else {
                out.push_str(&format!("FAIL {}  {}\n", it.id, it.mismatch.as_deref().unwrap_or("")));
            }
        }
        out.push_str(&format!(
            "engine {}: {} passed, {} failed\n",
            self.engine_version, self.passed, self.failed
        ));
        out
    }
}

/// The first position where two values differ, quoting both tokens exactly.
pub fn first_difference(expected: &str, actual: &str) -> Option<String> {
    if expected == actual {
        return None;
    }
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.split_whitespace().collect(), actual.split_whitespace().collect());
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i).copied().unwrap_or("<end>"), a.get(i).copied().unwrap_or("<end>"));
        if x != y {
            return Some(format!("expected {x} got {y}"));
        }
    }
    Some(format!("expected {expected:?} got {actual:?}"))
}

fn selected(id: &str, only: &[String]) -> bool {
    only.is_empty() || only.iter().any(|p| id == p || id.starts_with(&format!("{p}/")))
}

fn group_selected(group: &str, only: &[String]) -> bool {
    only.is_empty() || only.iter().any(|p| p.split('/').next() == Some(group))
}

type Producer = fn() -> Vec<(String, String)>;

const GROUPS: &[(&str, Producer)] = &[
    ("basin", basin_items),
    ("chow", chow_items),
    ("classify", classify_items),
    ("closed-orbit", closed_orbit_items),
    ("divisor", divisor_items),
    ("hs-cr-1br", broken_bead_items),
    ("hs-o-ros", open_rosary_items),
    ("hss-c-ros", closed_rosary_items),
    ("interp", interpolation_items),
    ("replacements", replacement_items),
];

pub fn group_names() -> Vec<&'static str> {
    GROUPS.iter().map(|(g, _)| *g).collect()
}

/// Runs the selected items. Pinned ids that are selected but not produced count as failures.
pub fn run_paper_check(only: &[String], expectations: &Expectations, source: &str) -> RunManifest {
    let mut actual: BTreeMap<String, String> = BTreeMap::new();
    for (group, produce) in GROUPS {
        if group_selected(group, only) {
            actual.extend(produce().into_iter().filter(|(id, _)| selected(id, only)));
        }
    }
    let ids: BTreeSet<String> = actual
        .keys()
        .cloned()
        .chain(expectations.0.keys().filter(|id| selected(id, only)).cloned())
        .collect();
    let items: Vec<CheckItem> = ids
        .into_iter()
        .map(|id| {
            let got = actual.get(&id).cloned().unwrap_or_else(|| "<not produced>".into());
            let expected = expectations.0.get(&id).cloned();
            let mismatch = match &expected {
                Some(e) => first_difference(e, &got),
                None => Some("no pinned value".into()),
            };
            CheckItem {
                group: id.split('/').next().unwrap_or("").to_string(),
                id,
                actual: got,
                expected,
                pass: mismatch.is_none(),
                mismatch,
            }
        })
        .collect();
    let passed = items.iter().filter(|i| i.pass).count();
    let mut parameters = BTreeMap::new();
    parameters.insert("only".to_string(), only.join(","));
    parameters.insert("expectations".to_string(), source.to_string());
    RunManifest {
        command: "paper-check".into(),
        parameters,
        engine_version: env!("CARGO_PKG_VERSION").into(),
        failed: items.len() - passed,
        passed,
        items,
    }
}

fn value<T>(r: Result<T>, f: impl FnOnce(T) -> String) -> String {
    match r {
        Ok(v) => f(v),
        Err(e) => format!("error: {e}"),
    }
}

fn index_line(c: &Configuration, m: u32) -> String {
    value(canonical_1ps(c).and_then(|rho| hilbert_index(c, &rho, m)), |r| {
        format!("weight_sum={} average={} mu={}", fmt_q(&r.weight_sum), fmt_q(&r.average), fmt_q(&r.mu))
    })
}

/// Compares an engine initial set with a reference set and reports the differences.
fn set_comparison(engine: &[Monomial], reference: &BTreeSet<Monomial>) -> String {
    let engine: BTreeSet<&Monomial> = engine.iter().collect();
    let list = |v: Vec<String>| if v.is_empty() { "none".to_string() } else { v.join(",") };
    let missing: Vec<String> = reference.iter().filter(|m| !engine.contains(m)).map(|m| m.to_string()).collect();
    let extra: Vec<String> =
        engine.iter().filter(|m| !reference.contains(**m)).map(|m| m.to_string()).collect();
    format!("count={} missing={} extra={}", engine.len(), list(missing), list(extra))
}

fn initial_line(c: &Configuration, block_len: usize, reference: BTreeSet<Monomial>) -> String {
    value(
        canonical_1ps(c).and_then(|rho| {
            let ord = MonomialOrder::new(OneParamSubgroup::new(rho.weights[..block_len].to_vec()));
            evaluate_slice(&c.parametrization, 2, &ord)
        }),
        |s| set_comparison(&s.initial_monomials(), &reference),
    )
}

fn pair(i: usize, j: usize) -> Monomial {
    Monomial::new(vec![i, j])
}

/// Degree-two initial monomials of the open rosary block on `x_0..x_{3r}`, as a closed formula.
/// Terms whose indices leave the block are dropped.
pub fn open_rosary_reference_initial(r: usize) -> BTreeSet<Monomial> {
    let top = 3 * r;
    let mut s = BTreeSet::new();
    for k in 2..=top {
        s.insert(pair(0, k));
    }
    for i in 1..=top.saturating_sub(5) {
        for k in i + 5..=top {
            s.insert(pair(i, k));
        }
    }
    for j in 1..r {
        let t = 3 * j;
        for (a, b) in [
            (t - 1, t + 3),
            (t, t + 3),
            (t, t + 4),
            (t, t + 2),
            (t - 1, t + 2),
            (t - 2, t + 1),
            (t - 2, t),
            (t - 2, t + 2),
        ] {
            if b <= top {
                s.insert(pair(a, b));
            }
        }
    }
    s
}

/// Degree-two initial monomials of the closed rosary of length `r` on `x_0..x_{3r−1}`.
pub fn closed_rosary_reference_initial(r: usize) -> BTreeSet<Monomial> {
    let top = 3 * r - 1;
    let mut s = BTreeSet::new();
    s.insert(pair(0, 0));
    for k in 5..=top {
        s.insert(pair(0, k));
    }
    for k in 5..=3 * r - 4 {
        s.insert(pair(1, k));
    }
    s.insert(pair(1, 3 * r - 2));
    for i in 2..=3 * r - 6 {
        for k in i + 5..=top {
            s.insert(pair(i, k));
        }
    }
    for j in 1..r {
        let t = 3 * j;
        for (a, b) in [(t - 3, t - 1), (t - 3, t), (t - 2, t + 1), (t - 2, t + 2), (t - 1, t + 1), (t - 1, t + 2)] {
            s.insert(pair(a, b));
        }
    }
    for j in 1..r - 1 {
        let t = 3 * j;
        s.insert(pair(t - 1, t + 3));
        s.insert(pair(t, t + 4));
    }
    s
}

/// Degree-two initial monomials of the closed rosary with a broken bead, odd `r`.
pub fn broken_bead_reference_initial(r: usize) -> BTreeSet<Monomial> {
    let top = 3 * r - 1;
    let mut s = BTreeSet::new();
    s.insert(pair(0, 0));
    for k in 3..=top {
        s.insert(pair(0, k));
    }
    for k in 3..=3 * r - 4 {
        s.insert(pair(1, k));
    }
    s.insert(pair(1, 3 * r - 2));
    for k in 4..=top {
        s.insert(pair(2, k));
    }
    for j in 1..=r - 2 {
        let t = 3 * j;
        for k in t + 2..=top {
            s.insert(pair(t, k));
        }
        for k in t + 4..=top {
            s.insert(pair(t + 1, k));
            s.insert(pair(t + 2, k));
        }
    }
    s
}

const OPEN_CASES: [(u32, u32); 5] = [(5, 2), (6, 2), (6, 3), (7, 4), (8, 5)];

fn open_rosary_items() -> Vec<(String, String)> {
    let mut out = vec![];
    for (g, r) in OPEN_CASES {
        let c = Configuration::build(&Family::OpenRosary { g, r });
        for m in [2, 3] {
            let v = match &c {
                Ok(c) => index_line(c, m),
                Err(e) => format!("error: {e}"),
            };
            out.push((format!("hs-o-ros/g{g}-r{r}/m{m}"), v));
        }
    }
    for r in [2u32, 3, 4] {
        let v = match Configuration::build(&Family::OpenRosary { g: r + 3, r }) {
            Ok(c) => initial_line(&c, 3 * r as usize + 1, open_rosary_reference_initial(r as usize)),
            Err(e) => format!("error: {e}"),
        };
        out.push((format!("hs-o-ros/r{r}/initial2"), v));
    }
    out
}

fn closed_rosary_items() -> Vec<(String, String)> {
    let mut out = vec![];
    for r in [4u32, 6, 8] {
        let c = match Configuration::build(&Family::ClosedRosary { r }) {
            Ok(c) => c,
            Err(e) => {
                out.push((format!("hss-c-ros/r{r}/m2"), format!("error: {e}")));
                continue;
            }
        };
        for m in [2, 3] {
            let v = value(canonical_1ps(&c).and_then(|rho| hilbert_index(&c, &rho, m)), |x| {
                format!("mu={} standard={}", fmt_q(&x.mu), x.standard_count)
            });
            out.push((format!("hss-c-ros/r{r}/m{m}"), v));
        }
        out.push((
            format!("hss-c-ros/r{r}/initial2"),
            initial_line(&c, 3 * r as usize, closed_rosary_reference_initial(r as usize)),
        ));
    }
    out
}

fn broken_bead_items() -> Vec<(String, String)> {
    let mut out = vec![];
    for r in [3u32, 5, 7] {
        let c = match Configuration::build(&Family::BrokenBead { r }) {
            Ok(c) => c,
            Err(e) => {
                out.push((format!("hs-cr-1br/r{r}/m2"), format!("error: {e}")));
                continue;
            }
        };
        out.push((format!("hs-cr-1br/r{r}/m2"), index_line(&c, 2)));
        out.push((format!("hs-cr-1br/r{r}/m3"), index_line(&c, 3)));
        let table = canonical_1ps(&c).and_then(|rho| index_table(&c, &rho, &[2, 3], &Default::default()));
        out.push((
            format!("hs-cr-1br/r{r}/extrapolate"),
            value(table.clone(), |t| {
                let v: Vec<String> =
                    (2..=6).map(|m| fmt_q(&extrapolate_index(&t[0].mu, &t[1].mu, m))).collect();
                format!("mu={}", v.join(","))
            }),
        ));
        out.push((
            format!("hs-cr-1br/r{r}/chow-sign"),
            value(table, |t| t[0].chow_sign.map_or("none".into(), |s| s.to_string())),
        ));
        if r == 3 {
            out.push((
                format!("hs-cr-1br/r{r}/initial2"),
                initial_line(&c, 3 * r as usize, broken_bead_reference_initial(r as usize)),
            ));
        }
    }
    out
}

fn interpolation_items() -> Vec<(String, String)> {
    let cases = [
        ("c-ros-r4", Family::ClosedRosary { r: 4 }),
        ("c-ros-r6", Family::ClosedRosary { r: 6 }),
        ("cr-1br-r3", Family::BrokenBead { r: 3 }),
        ("cr-1br-r5", Family::BrokenBead { r: 5 }),
    ];
    cases
        .into_iter()
        .map(|(name, fam)| {
            let v = value(
                Configuration::build(&fam).and_then(|c| {
                    let rho = canonical_1ps(&c)?;
                    index_table(&c, &rho, &[2, 3, 4], &Default::default())
                }),
                |t| {
                    let ex = extrapolate_index(&t[0].mu, &t[1].mu, 4);
                    format!("mu4={} extrapolated={}", fmt_q(&t[2].mu), fmt_q(&ex))
                },
            );
            (format!("interp/{name}"), v)
        })
        .collect()
}

fn certificate_line(c: &MultiplicityCertificate) -> String {
    let verdict = match c.verdict {
        Verdict::Unstable => "unstable",
        Verdict::Inconclusive => "inconclusive",
    };
    format!("lower_bound={} threshold={} verdict={verdict}", fmt_q(&c.lower_bound), fmt_q(&c.threshold))
}

fn chow_items() -> Vec<(String, String)> {
    let mut cases = vec![
        ("cusp".to_string(), ChowCase::NonOrdinaryCusp { g: 5 }),
        ("tacnode-s3".to_string(), ChowCase::HigherTacnode { g: 5, s: 3 }),
        ("multiple-2".to_string(), ChowCase::MultipleComponent { g: 5, multiplicity: 2 }),
    ];
    for g in 4..=20 {
        cases.push((format!("tail-g{g:02}"), ChowCase::GenusOneTacnodeTail { g }));
    }
    cases
        .into_iter()
        .map(|(name, case)| (format!("chow/{name}"), value(certify_unstable(&case), |c| certificate_line(&c))))
        .collect()
}

fn kind_name(k: SingularityKind) -> &'static str {
    match k {
        SingularityKind::Node => "node",
        SingularityKind::Tacnode => "tacnode",
    }
}

/// Label of a singularity: `a{i}` for rosary junctions, otherwise its kind.
pub fn singularity_label(c: &Configuration, s: SingularityRef) -> String {
    match s {
        SingularityRef::Cusp(_) => "cusp".into(),
        SingularityRef::Intersection(k) => {
            for (b, block) in c.rosaries.iter().enumerate() {
                if let Some(i) = block.junctions.iter().position(|&j| j == k) {
                    return if c.rosaries.len() == 1 { format!("a{i}") } else { format!("b{b}.a{i}") };
                }
            }
            match c.family {
                Family::ClosedRosary { .. } => format!("a{}", k + 1),
                Family::BrokenBead { .. } => format!("a{k}"),
                _ => kind_name(c.graph.intersections()[k].kind).into(),
            }
        }
    }
}

/// Versal weights of every singularity under `rho`, labelled.
pub fn versal_summary(c: &Configuration, rho: &OneParamSubgroup) -> Result<String> {
    let report = basin_membership(c, rho)?;
    let parts: Vec<String> = report
        .singularities
        .iter()
        .map(|v| {
            let w: Vec<String> = v.weights.parameter_weights.iter().map(|x| x.to_string()).collect();
            format!("{}={}", singularity_label(c, v.weights.singularity), w.join(","))
        })
        .collect();
    Ok(parts.join(" "))
}

fn chain_name(c: &ChainRecord) -> String {
    let closed = if c.shape == ChainShape::Closed { "closed-" } else { "" };
    let weak = if c.weak { "weak-" } else { "" };
    format!("{closed}{weak}elliptic-chain length={}", c.length)
}

/// Component genera, singularity counts and the longest (weak) elliptic chain.
pub fn describe_curve(g: &CurveGraph) -> Result<String> {
    let report = stability_report(g)?;
    let mut genera: Vec<u32> = g.components().iter().map(|c| c.geometric_genus).collect();
    genera.sort_unstable();
    let genera: Vec<String> = genera.iter().map(|x| x.to_string()).collect();
    let nodes = g.intersections().iter().filter(|x| x.kind == SingularityKind::Node).count();
    let cusps: u32 = g.components().iter().map(|c| c.cusp_count).sum();
    let best = report
        .chains
        .iter()
        .chain(&report.weak_chains)
        .max_by_key(|c| (c.length, c.shape == ChainShape::Closed, !c.weak));
    Ok(format!(
        "genera={} nodes={nodes} tacnodes={} cusps={cusps} chain={}",
        genera.join(","),
        g.tacnode_count(),
        best.map_or("none".into(), chain_name)
    ))
}

fn basin_case(c: &Configuration, rho: &OneParamSubgroup) -> (String, String) {
    let weights = value(versal_summary(c, rho), |s| s);
    let generic = value(basin_membership(c, rho).and_then(|r| describe_curve(&r.generic)), |s| s);
    (weights, generic)
}

fn basin_items() -> Vec<(String, String)> {
    let mut out = vec![];
    let mut push = |name: &str, fam: Family, exps: Option<Vec<i64>>, invert: bool| {
        let res = Configuration::build(&fam).and_then(|c| {
            let mut rho = match &exps {
                Some(e) => product_subgroup(&c, e)?,
                None => canonical_1ps(&c)?,
            };
            if invert {
                rho = OneParamSubgroup::new(rho.weights.iter().map(|w| -w).collect());
            }
            Ok(basin_case(&c, &rho))
        });
        let suffix = if invert { "-inverse" } else { "" };
        match res {
            Ok((w, g)) => {
                out.push((format!("basin/{name}/weights{suffix}"), w));
                out.push((format!("basin/{name}/generic{suffix}"), g));
            }
            Err(e) => out.push((format!("basin/{name}/weights{suffix}"), format!("error: {e}"))),
        }
    };
    for (g, r) in [(5, 1), (6, 2), (6, 3), (7, 4)] {
        push(&format!("o-ros-g{g}-r{r}"), Family::OpenRosary { g, r }, None, false);
    }
    push("o-ros-g6-r2", Family::OpenRosary { g: 6, r: 2 }, None, true);
    push("o-ros-g6-r3", Family::OpenRosary { g: 6, r: 3 }, None, true);
    push("c-ros-r4", Family::ClosedRosary { r: 4 }, None, false);
    push("c-ros-r6", Family::ClosedRosary { r: 6 }, None, false);
    push("cr-1br-r3", Family::BrokenBead { r: 3 }, None, false);
    push("cr-1br-r5", Family::BrokenBead { r: 5 }, None, false);
    push("tacnodal-tail-g5", Family::TacnodalTail { g: 5 }, None, false);
    push("multi-g8-l2-l2-e1-1", Family::MultiRosary { g: 8, lengths: vec![2, 2] }, Some(vec![1, 1]), false);
    push("multi-g8-l2-l2-e1-m1", Family::MultiRosary { g: 8, lengths: vec![2, 2] }, Some(vec![1, -1]), false);
    out
}

fn class_line(r: Result<DivisorClass>) -> String {
    value(r, |c| c.to_string())
}

fn divisor_items() -> Vec<(String, String)> {
    let mut out = vec![
        ("divisor/lambda-2-g5".to_string(), class_line(lambda_n(2, 5))),
        ("divisor/lambda-3-g5".to_string(), class_line(lambda_n(3, 5))),
        ("divisor/viehweg-n2-m3-g5".to_string(), class_line(viehweg_class(2, 3, 5))),
        ("divisor/viehweg-n2-m7-g10".to_string(), class_line(viehweg_class(2, 7, 10))),
        ("divisor/viehweg-n1-m2-g4".to_string(), class_line(viehweg_class(1, 2, 4))),
        ("divisor/asymptotic-n1-g9".to_string(), class_line(asymptotic_polarization(1, 9))),
        ("divisor/asymptotic-n2-g5".to_string(), class_line(asymptotic_polarization(2, 5))),
        ("divisor/canonical-alpha-7_10-g5".to_string(), class_line(canonical_alpha_class(&frac(7, 10), 5))),
        ("divisor/logdisc-alpha-7_10-g6".to_string(), class_line(pseudostable_pullback(&frac(7, 10), 6))),
    ];
    out.push((
        "divisor/slope-n2-m7".to_string(),
        value(viehweg_class(2, 7, 10), |c| {
            let d = c.delta_total().unwrap_or_else(|| q(0));
            fmt_q(&(-&c.lambda / d))
        }),
    ));
    for m in [1i64, 10, 100] {
        out.push((format!("divisor/epsilon-m{m:03}"), value(epsilon_of_m(m), |e| fmt_q(&e))));
    }
    for g in [4u32, 5, 12, 30] {
        out.push((
            format!("divisor/moriwaki-g{g:02}"),
            value(moriwaki_decomposition(g), |d| {
                let rest: Vec<String> = d.delta_rest.iter().map(fmt_q).collect();
                format!(
                    "a={} lambda={} delta_1={} rest={} identity={} positive={}",
                    fmt_q(&d.moriwaki),
                    fmt_q(&d.lambda),
                    fmt_q(&d.delta_1),
                    if rest.is_empty() { "none".into() } else { rest.join(",") },
                    d.identity_holds,
                    d.all_positive
                )
            }),
        ));
    }
    out
}

fn flags_line(g: &CurveGraph) -> String {
    value(classify(g), |f| {
        let b = |x: bool| if x { "1" } else { "0" };
        format!(
            "dm={} ps={} css={} cst={} hss={} hst={}",
            b(f.dm_stable),
            b(f.pseudostable),
            b(f.c_semistable),
            b(f.c_stable),
            b(f.h_semistable),
            b(f.h_stable)
        )
    })
}

fn classify_items() -> Vec<(String, String)> {
    FIXTURES
        .iter()
        .map(|(name, _)| (format!("classify/{name}"), value(fixture(name), |g| flags_line(&g))))
        .collect()
}

fn rep_line(
    name: &str,
    rep: fn(&CurveGraph) -> Result<CurveGraph>,
    pred: fn(&CurveGraph) -> bool,
    target: Option<&str>,
) -> String {
    value(
        fixture(name).and_then(|g| {
            let r = rep(&g)?;
            let again = rep(&r)?;
            let matches = match target {
                Some(t) => isomorphic(&r, &fixture(t)?).to_string(),
                None => "n/a".into(),
            };
            Ok(format!(
                "closed={} idempotent={} matches-fixture={matches} {}",
                pred(&r),
                isomorphic(&r, &again),
                describe_curve(&r)?
            ))
        }),
        |s| s,
    )
}

fn closed_orbit_items() -> Vec<(String, String)> {
    let c_cases: [(&str, Option<&str>); 3] =
        [("bridge", Some("bridge_rep")), ("bridge_length_two", None), ("three_rosaries", Some("three_rosaries"))];
    let h_cases: [(&str, Option<&str>); 4] = [
        ("h_example_bridge_p1", Some("h_example_bridge_p1_rep")),
        ("h_example_pure", Some("h_example_pure_rep")),
        ("closed_weak_chain", Some("closed_weak_chain_rep")),
        ("rosary_three", Some("rosary_three")),
    ];
    let mut out = vec![];
    for (name, target) in c_cases {
        out.push((format!("closed-orbit/c/{name}"), rep_line(name, c_closed_orbit_rep, is_c_closed_orbit, target)));
    }
    for (name, target) in h_cases {
        out.push((format!("closed-orbit/h/{name}"), rep_line(name, h_closed_orbit_rep, is_h_closed_orbit, target)));
    }
    for name in ["three_rosaries", "rosary_three", "closed_rosary_four", "bridge"] {
        out.push((
            format!("closed-orbit/predicates/{name}"),
            value(fixture(name), |g| format!("c={} h={}", is_c_closed_orbit(&g), is_h_closed_orbit(&g))),
        ));
    }
    out
}

fn replacement_items() -> Vec<(String, String)> {
    ["bridge", "bridge_length_two"]
        .into_iter()
        .map(|name| {
            let v = value(
                fixture(name).and_then(|g| {
                    let reps = enumerate_c_replacements(&g)?;
                    let mut distinct: Vec<&CurveGraph> = vec![];
                    for r in &reps {
                        if !distinct.iter().any(|d| isomorphic(d, r)) {
                            distinct.push(r);
                        }
                    }
                    let mut kinds: Vec<String> = reps.iter().map(describe_curve).collect::<Result<_>>()?;
                    kinds.sort();
                    Ok(format!("count={} distinct={} | {}", reps.len(), distinct.len(), kinds.join(" | ")))
                }),
                |s| s,
            );
            (format!("replacements/{name}"), v)
        })
        .collect()
}

/// Exact rational of the `key=value` token in a check value, for tests that compare fields.
pub fn field(line: &str, key: &str) -> Option<Q> {
    line.split_whitespace()
        .find_map(|t| t.strip_prefix(&format!("{key}=")))
        .and_then(|v| crate::rational::parse_q(v).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_counts() {
        for r in [3usize, 5, 7] {
            assert_eq!(closed_rosary_reference_initial(r + 1).len(), (9 * (r + 1) * (r + 1) - 11 * (r + 1)) / 2 - 1);
        }
        assert!(broken_bead_reference_initial(3).contains(&pair(0, 0)));
    }

    #[test]
    fn differences_quote_tokens() {
        assert_eq!(first_difference("mu=0 a=1", "mu=0 a=1"), None);
        assert_eq!(first_difference("mu=-1", "mu=-2").unwrap(), "expected mu=-1 got mu=-2");
        assert!(first_difference("a", "a b").unwrap().contains("<end>"));
    }

    #[test]
    fn selection_by_prefix() {
        let only = vec!["hs-cr-1br".to_string()];
        assert!(selected("hs-cr-1br/r3/m2", &only));
        assert!(!selected("hs-cr-1br2/x", &only));
        assert!(group_selected("hs-cr-1br", &only));
        assert!(!group_selected("chow", &only));
    }

    #[test]
    fn fixtures_parse() {
        for (name, _) in FIXTURES {
            fixture(name).unwrap();
        }
    }
}
