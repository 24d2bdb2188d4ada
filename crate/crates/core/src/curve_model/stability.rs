//! The stability notions: Deligne–Mumford, pseudo-, c- and h-(semi)stability.

use serde::{Deserialize, Serialize};

use super::chains::{find_all_chains, ChainRecord};
use super::graph::{ComponentId, ComponentSet, CurveGraph, SingularityKind};
use super::subcurves::{Topology, DEFAULT_COMPONENT_CAP};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityFlags {
    pub dm_stable: bool,
    pub pseudostable: bool,
    pub c_semistable: bool,
    pub c_stable: bool,
    pub h_semistable: bool,
    pub h_stable: bool,
}

/// A genus-one subcurve with both contact counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusOneContact {
    pub components: ComponentSet,
    /// Distinct intersection points with the rest.
    pub points: u32,
    /// Branch-weighted count (tacnode counts twice).
    pub weighted: u32,
}

/// Flags together with the subcurves that decided them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub genus: i64,
    pub flags: StabilityFlags,
    /// Components on which the dualizing sheaf has nonpositive degree.
    pub non_ample: Vec<ComponentId>,
    pub elliptic_tails: Vec<ComponentSet>,
    pub elliptic_bridges: Vec<ComponentSet>,
    pub genus_one: Vec<GenusOneContact>,
    pub chains: Vec<ChainRecord>,
    pub weak_chains: Vec<ChainRecord>,
}

pub fn classify(g: &CurveGraph) -> Result<StabilityFlags> {
    Ok(stability_report(g)?.flags)
}

pub fn stability_report(g: &CurveGraph) -> Result<StabilityReport> {
    stability_report_with_cap(g, DEFAULT_COMPONENT_CAP)
}

pub fn stability_report_with_cap(g: &CurveGraph, cap: usize) -> Result<StabilityReport> {
    let genus = g.arithmetic_genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus, min: 2 });
    }
    let t = Topology::new(g, cap)?;
    let non_ample: Vec<ComponentId> = g
        .components()
        .iter()
        .filter(|c| g.dualizing_degree(c.id) <= 0)
        .map(|c| c.id)
        .collect();
    let ample = non_ample.is_empty();

    let mut genus_one = Vec::new();
    let mut tails = Vec::new();
    let mut bridges = Vec::new();
    for m in t.genus_one() {
        let (points, weighted) = t.contact(m);
        let b = t.boundary(m);
        let all_nodes = b.iter().all(|&k| t.edges[k].kind == SingularityKind::Node);
        let set = t.to_set(m);
        if all_nodes && points == 1 {
            tails.push(set.clone());
        }
        if all_nodes && points == 2 {
            bridges.push(set.clone());
        }
        genus_one.push(GenusOneContact { components: set, points, weighted });
    }
    tails.sort();
    bridges.sort();
    genus_one.sort_by(|a, b| a.components.cmp(&b.components));

    let (weak_chains, chains): (Vec<_>, Vec<_>) =
        find_all_chains(g)?.into_iter().partition(|c| c.weak);

    let tac = g.has_tacnodes();
    let cusp = g.has_cusps();
    let g1_points = genus_one.iter().all(|s| s.points >= 2);
    let g1_weighted = genus_one.iter().all(|s| s.weighted >= 3);

    let dm_stable = !tac && !cusp && ample;
    let pseudostable = !tac && ample && g1_points;
    let c_semistable = ample && g1_points;
    let c_stable = c_semistable && !tac && bridges.is_empty();
    let h_semistable = c_semistable && g1_weighted && chains.is_empty();
    let h_stable = h_semistable && weak_chains.is_empty();

    Ok(StabilityReport {
        genus,
        flags: StabilityFlags { dm_stable, pseudostable, c_semistable, c_stable, h_semistable, h_stable },
        non_ample,
        elliptic_tails: tails,
        elliptic_bridges: bridges,
        genus_one,
        chains,
        weak_chains,
    })
}

#[cfg(test)]
mod tests {
    use super::super::graph::GraphBuilder;
    use super::*;

    #[test]
    fn smooth_curve_is_stable_everywhere() {
        let mut b = GraphBuilder::new();
        b.component(5, 0);
        let f = classify(&b.build().unwrap()).unwrap();
        assert!(f.dm_stable && f.pseudostable && f.c_semistable && f.c_stable);
        assert!(f.h_semistable && f.h_stable);
    }

    #[test]
    fn bridge_is_c_semistable_not_c_stable() {
        let mut b = GraphBuilder::new();
        let c1 = b.component(2, 0);
        let e = b.component(1, 0);
        let c2 = b.component(2, 0);
        b.node(c1, e);
        b.node(e, c2);
        let f = classify(&b.build().unwrap()).unwrap();
        assert!(f.pseudostable && f.c_semistable && f.dm_stable);
        assert!(!f.c_stable);
        // a bridge meets the rest in two points counting multiplicity
        assert!(!f.h_semistable);
    }

    #[test]
    fn tacnodal_tail_is_not_c_semistable() {
        let mut b = GraphBuilder::new();
        let c = b.component(3, 0);
        let e = b.component(1, 0);
        b.tacnode(c, e);
        let r = stability_report(&b.build().unwrap()).unwrap();
        assert!(!r.flags.c_semistable);
        assert_eq!(r.genus_one[0].points, 1);
        assert_eq!(r.genus_one[0].weighted, 2);
    }

    #[test]
    fn elliptic_tail_kills_pseudostability() {
        let mut b = GraphBuilder::new();
        let c = b.component(3, 0);
        let e = b.component(1, 0);
        b.node(c, e);
        let f = classify(&b.build().unwrap()).unwrap();
        assert!(f.dm_stable);
        assert!(!f.pseudostable && !f.c_semistable);
    }

    #[test]
    fn rational_tail_is_not_ample() {
        let mut b = GraphBuilder::new();
        let c = b.component(3, 0);
        let r = b.component(0, 0);
        b.node(c, r);
        let rep = stability_report(&b.build().unwrap()).unwrap();
        assert_eq!(rep.non_ample, vec![1]);
        assert!(!rep.flags.dm_stable);
    }

    #[test]
    fn genus_one_is_rejected() {
        let mut b = GraphBuilder::new();
        b.component(1, 0);
        assert!(matches!(classify(&b.build().unwrap()), Err(Error::GenusTooSmall { .. })));
    }
}
