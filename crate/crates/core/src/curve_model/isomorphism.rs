//! Isomorphism of decorated dual graphs (ids and branch slots ignored).

use std::collections::BTreeMap;

use super::graph::{CurveGraph, SingularityKind};

type Signature = (u32, u32, Vec<(SingularityKind, bool)>, Vec<String>);

fn signatures(g: &CurveGraph) -> Vec<Signature> {
    g.components()
        .iter()
        .map(|c| {
            let mut inc: Vec<_> = g
                .incident(c.id)
                .into_iter()
                .map(|k| (g.intersections()[k].kind, g.intersections()[k].is_self()))
                .collect();
            inc.sort();
            let mut marks: Vec<String> =
                g.marks().iter().filter(|m| m.0 == c.id).map(|m| m.1.clone()).collect();
            marks.sort();
            (c.geometric_genus, c.cusp_count, inc, marks)
        })
        .collect()
}

/// Edge multiplicities between component positions, per kind.
fn multiplicities(g: &CurveGraph) -> BTreeMap<(usize, usize, SingularityKind), usize> {
    let mut m = BTreeMap::new();
    for x in g.intersections() {
        let a = g.position(x.ends[0].0).unwrap();
        let b = g.position(x.ends[1].0).unwrap();
        let key = (a.min(b), a.max(b), x.kind);
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

pub fn isomorphic(a: &CurveGraph, b: &CurveGraph) -> bool {
    let n = a.components().len();
    if n != b.components().len() || a.intersections().len() != b.intersections().len() {
        return false;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut xs = sa.clone();
    let mut ys = sb.clone();
    xs.sort();
    ys.sort();
    if xs != ys {
        return false;
    }
    let (ma, mb) = (multiplicities(a), multiplicities(b));
    let count = |m: &BTreeMap<(usize, usize, SingularityKind), usize>, i: usize, j: usize, k| {
        m.get(&(i.min(j), i.max(j), k)).copied().unwrap_or(0)
    };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn search(
        i: usize,
        n: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || !ok(image, i, j) {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if search(i + 1, n, image, used, ok) {
                return true;
            }
            used[j] = false;
            image[i] = usize::MAX;
        }
        false
    }

    let ok = |image: &[usize], i: usize, j: usize| {
        if sa[i] != sb[j] {
            return false;
        }
        for kind in [SingularityKind::Node, SingularityKind::Tacnode] {
            if count(&ma, i, i, kind) != count(&mb, j, j, kind) {
                return false;
            }
            for (v, &w) in image.iter().enumerate().take(i) {
                if count(&ma, i, v, kind) != count(&mb, j, w, kind) {
                    return false;
                }
            }
        }
        true
    };
    search(0, n, &mut image, &mut used, &ok)
}

#[cfg(test)]
mod tests {
    use super::super::graph::GraphBuilder;
    use super::*;

    #[test]
    fn relabelled_path_is_isomorphic() {
        let mut b = GraphBuilder::new();
        let x = b.component(2, 0);
        let y = b.component(0, 0);
        let z = b.component(1, 1);
        b.node(x, y);
        b.tacnode(y, z);
        let g1 = b.build().unwrap();

        let mut b = GraphBuilder::new();
        let z = b.component(1, 1);
        let y = b.component(0, 0);
        let x = b.component(2, 0);
        b.tacnode(z, y);
        b.node(y, x);
        let g2 = b.build().unwrap();
        assert!(isomorphic(&g1, &g2));
    }

    #[test]
    fn kinds_matter() {
        let mut b = GraphBuilder::new();
        let x = b.component(2, 0);
        let y = b.component(2, 0);
        b.node(x, y);
        let g1 = b.build().unwrap();
        let mut b = GraphBuilder::new();
        let x = b.component(2, 0);
        let y = b.component(2, 0);
        b.tacnode(x, y);
        assert!(!isomorphic(&g1, &b.build().unwrap()));
    }
}
