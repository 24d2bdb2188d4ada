#![allow(dead_code)]

use rand::Rng;

use gitcurve_core::curve_model::{classify, CurveGraph, GraphBuilder};

/// A random connected graph with at most `max` components, or `None` when it is not a valid
/// classification input.
pub fn random_graph<R: Rng>(rng: &mut R, max: usize) -> Option<CurveGraph> {
    let n = rng.gen_range(1..=max);
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (0..n)
        .map(|_| {
            let genus = match rng.gen_range(0..20) {
                0..=9 => 0,
                10..=14 => 1,
                15..=18 => 2,
                _ => 3,
            };
            let cusps = u32::from(rng.gen_range(0..10) == 0);
            b.component(genus, cusps)
        })
        .collect();
    let join = |b: &mut GraphBuilder, x, y, rng: &mut R| {
        if rng.gen_range(0..5) == 0 {
            b.tacnode(x, y);
        } else {
            b.node(x, y);
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        join(&mut b, ids[i], ids[j], rng);
    }
    for _ in 0..rng.gen_range(0..3) {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        join(&mut b, ids[x], ids[y], rng);
    }
    let g = b.build().ok()?;
    classify(&g).ok()?;
    Some(g)
}

/// `C_0 − E − … − E − C_1 − …`: genus-two curves on a path joined by chains of elliptic
/// bridges, `counts[i]` of them between `C_i` and `C_{i+1}`.
pub fn bridge_fixture(counts: &[usize]) -> CurveGraph {
    let mut b = GraphBuilder::new();
    let mut prev = b.component(2, 0);
    for &k in counts {
        for _ in 0..k {
            let e = b.component(1, 0);
            b.node(prev, e);
            prev = e;
        }
        let c = b.component(2, 0);
        b.node(prev, c);
        prev = c;
    }
    b.build().unwrap()
}
