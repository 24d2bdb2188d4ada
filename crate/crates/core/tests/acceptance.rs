//! The acceptance criteria, one line each. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gitcurve_core::basin_calculus::{
    basin_membership, c_closed_orbit_rep, enumerate_c_replacements, h_closed_orbit_rep, is_c_closed_orbit,
    is_h_closed_orbit, versal_weights, SingularityRef,
};
use gitcurve_core::chow_multiplicity::{certify_unstable, ChowCase, Verdict};
use gitcurve_core::curve_model::{classify, find_elliptic_bridges, isomorphic, CurveGraph, GraphBuilder};
use gitcurve_core::divisor_classes::{
    canonical_alpha_class, epsilon_of_m, lambda_n, moriwaki_decomposition, proportional, viehweg_class,
    DivisorClass,
};
use gitcurve_core::families::{canonical_1ps, Configuration, Family, OneParamSubgroup};
use gitcurve_core::golden::{broken_bead_reference_initial, fixture, run_paper_check, Expectations, FIXTURES};
use gitcurve_core::ideal_engine::{
    evaluate_slice, extrapolate_index, hilbert_index, index_table, IndexReport, MonomialOrder,
};
use gitcurve_core::rational::{frac, q, Q};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn build(f: Family) -> Result<(Configuration, OneParamSubgroup), String> {
    let c = Configuration::build(&f).map_err(err)?;
    let rho = canonical_1ps(&c).map_err(err)?;
    Ok((c, rho))
}

fn index(c: &Configuration, rho: &OneParamSubgroup, m: u32) -> Result<IndexReport, String> {
    hilbert_index(c, rho, m).map_err(err)
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (g, r) in [(5i64, 2u32), (6, 2), (6, 3), (7, 4), (8, 5)] {
        let (c, rho) = build(Family::OpenRosary { g: g as u32, r })?;
        let (s2, a2, s3, a3) = if r % 2 == 0 {
            (28 * g - 28, 28 * g - 28, 66 * g - 66, 66 * g - 66)
        } else {
            (28 * g - 41, 28 * g - 42, 66 * g - 97, 66 * g - 99)
        };
        let i2 = index(&c, &rho, 2)?;
        let i3 = index(&c, &rho, 3)?;
        let want = [q(s2), q(a2), q(s3), q(a3)];
        let got = [i2.weight_sum.clone(), i2.average.clone(), i3.weight_sum.clone(), i3.average.clone()];
        ensure(got == want, || format!("g={g} r={r}: got {got:?}, want {want:?}"))?;
        let (mu2, mu3) = if r % 2 == 0 { (0, 0) } else { (-1, -2) };
        ensure(i2.mu == q(mu2) && i3.mu == q(mu3), || format!("g={g} r={r}: mu {} {}", i2.mu, i3.mu))?;
    }
    within(start, Duration::from_secs(10), "open rosaries")
}

fn criterion_2() -> Outcome {
    for r in [4u32, 6, 8] {
        let start = Instant::now();
        let (c, rho) = build(Family::ClosedRosary { r })?;
        let i2 = index(&c, &rho, 2)?;
        let i3 = index(&c, &rho, 3)?;
        let r = r as usize;
        ensure(i2.mu == q(0) && i3.mu == q(0), || format!("r={r}: mu {} {}", i2.mu, i3.mu))?;
        ensure(i2.standard_count == 7 * r && i3.standard_count == 11 * r, || {
            format!("r={r}: standard counts {} {}", i2.standard_count, i3.standard_count)
        })?;
        let ord = MonomialOrder::new(rho.clone());
        let slice = evaluate_slice(&c.parametrization, 2, &ord).map_err(err)?;
        let want = (9 * r * r - 11 * r) / 2;
        ensure(slice.rows.len() == want, || format!("r={r}: {} initial monomials, want {want}", slice.rows.len()))?;
        within(start, Duration::from_secs(30), &format!("closed rosary r={r}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for r in [3i64, 5, 7] {
        let (c, rho) = build(Family::BrokenBead { r: r as u32 })?;
        let t = index_table(&c, &rho, &[2, 3], &Default::default()).map_err(err)?;
        let want = [q(28 * r - 13), q(28 * r - 14), q(66 * r - 31), q(66 * r - 33)];
        let got = [t[0].weight_sum.clone(), t[0].average.clone(), t[1].weight_sum.clone(), t[1].average.clone()];
        ensure(got == want, || format!("r={r}: got {got:?}, want {want:?}"))?;
        ensure(t[0].mu == q(-1) && t[1].mu == q(-2), || format!("r={r}: mu {} {}", t[0].mu, t[1].mu))?;
        for m in 2..=6u32 {
            let e = extrapolate_index(&t[0].mu, &t[1].mu, m);
            ensure(e == q(1 - m as i64), || format!("r={r}: extrapolated mu_{m} = {e}"))?;
        }
        ensure(t[0].chow_sign == Some(0), || format!("r={r}: chow sign {:?}", t[0].chow_sign))?;
    }
    let (c, rho) = build(Family::BrokenBead { r: 3 })?;
    let slice = evaluate_slice(&c.parametrization, 2, &MonomialOrder::new(rho)).map_err(err)?;
    let got: std::collections::BTreeSet<_> = slice.initial_monomials().into_iter().collect();
    ensure(got == broken_bead_reference_initial(3), || "r=3: initial set differs from the listed monomials".into())
}

fn criterion_4() -> Outcome {
    let fams = [
        Family::ClosedRosary { r: 4 },
        Family::ClosedRosary { r: 6 },
        Family::ClosedRosary { r: 8 },
        Family::BrokenBead { r: 3 },
        Family::BrokenBead { r: 5 },
        Family::BrokenBead { r: 7 },
    ];
    for f in fams {
        let (c, rho) = build(f.clone())?;
        let t = index_table(&c, &rho, &[2, 3, 4], &Default::default()).map_err(err)?;
        let e = extrapolate_index(&t[0].mu, &t[1].mu, 4);
        ensure(t[2].mu == e, || format!("{f:?}: mu_4 = {}, extrapolated {e}", t[2].mu))?;
    }
    Ok(())
}

fn certificate(case: ChowCase, lower: Q, threshold: Q) -> Outcome {
    let c = certify_unstable(&case).map_err(err)?;
    ensure(c.lower_bound == lower && c.threshold == threshold && c.verdict == Verdict::Unstable, || {
        format!("{case:?}: {} vs {} ({:?})", c.lower_bound, c.threshold, c.verdict)
    })?;
    ensure(lower > threshold, || format!("{case:?}: bound does not exceed threshold"))
}

fn criterion_5() -> Outcome {
    certificate(ChowCase::NonOrdinaryCusp { g: 5 }, q(25), q(24))?;
    certificate(ChowCase::HigherTacnode { g: 5, s: 3 }, q(18), q(16))?;
    certificate(ChowCase::MultipleComponent { g: 5, multiplicity: 2 }, q(18), q(16))?;
    for g in 4..=20i64 {
        certificate(ChowCase::GenusOneTacnodeTail { g: g as u32 }, q(36 + 16 * g - 40), q(16 * g) - frac(40, 3))?;
    }
    Ok(())
}

fn lattice(g: &CurveGraph, what: &str) -> Outcome {
    let f = classify(g).map_err(err)?;
    let bridges = find_elliptic_bridges(g).map_err(err)?;
    let ok = (!f.h_stable || f.h_semistable)
        && (!f.h_semistable || f.c_semistable)
        && (!f.c_stable || f.c_semistable)
        && (!f.c_stable || f.pseudostable)
        && f.c_stable == (f.pseudostable && bridges.is_empty());
    ensure(ok, || format!("{what}: lattice violated by {f:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut n = 0;
    while n < 500 {
        if let Some(g) = common::random_graph(&mut rng, 12) {
            lattice(&g, &format!("random graph {n}"))?;
            n += 1;
        }
    }
    for (name, _) in FIXTURES {
        lattice(&fixture(name).map_err(err)?, name)?;
    }
    for r in 2..=10usize {
        let mut b = GraphBuilder::new();
        let v: Vec<_> = (0..r).map(|_| b.component(0, 0)).collect();
        for w in v.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        let open = b.build().map_err(err)?.arithmetic_genus();
        let mut b = GraphBuilder::new();
        let v: Vec<_> = (0..r).map(|_| b.component(0, 0)).collect();
        for i in 0..r {
            b.tacnode(v[i], v[(i + 1) % r]);
        }
        let closed = b.build().map_err(err)?.arithmetic_genus();
        let mut b = GraphBuilder::new();
        let v: Vec<_> = (0..r).map(|_| b.component(1, 0)).collect();
        for w in v.windows(2) {
            b.tacnode(w[0], w[1]);
        }
        let chain = b.build().map_err(err)?.arithmetic_genus();
        let r = r as i64;
        ensure((open, closed, chain) == (r - 1, r + 1, 2 * r - 1), || {
            format!("r={r}: genera {open} {closed} {chain}")
        })?;
    }
    Ok(())
}

fn closed_orbit_case(
    name: &str,
    rep: fn(&CurveGraph) -> gitcurve_core::Result<CurveGraph>,
    pred: fn(&CurveGraph) -> bool,
    target: Option<&str>,
) -> Outcome {
    let g = fixture(name).map_err(err)?;
    let r = rep(&g).map_err(|e| format!("{name}: {e}"))?;
    ensure(pred(&r), || format!("{name}: representative fails the closed-orbit predicate"))?;
    let again = rep(&r).map_err(err)?;
    ensure(isomorphic(&r, &again), || format!("{name}: not idempotent"))?;
    if let Some(t) = target {
        ensure(isomorphic(&r, &fixture(t).map_err(err)?), || format!("{name}: representative is not {t}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    closed_orbit_case("bridge", c_closed_orbit_rep, is_c_closed_orbit, Some("bridge_rep"))?;
    closed_orbit_case("bridge_length_two", c_closed_orbit_rep, is_c_closed_orbit, None)?;
    closed_orbit_case("three_rosaries", c_closed_orbit_rep, is_c_closed_orbit, Some("three_rosaries"))?;
    closed_orbit_case("h_example_bridge_p1", h_closed_orbit_rep, is_h_closed_orbit, Some("h_example_bridge_p1_rep"))?;
    closed_orbit_case("h_example_pure", h_closed_orbit_rep, is_h_closed_orbit, Some("h_example_pure_rep"))?;
    closed_orbit_case("closed_weak_chain", h_closed_orbit_rep, is_h_closed_orbit, Some("closed_weak_chain_rep"))?;
    closed_orbit_case("rosary_three", h_closed_orbit_rep, is_h_closed_orbit, Some("rosary_three"))?;
    for (name, want) in [("bridge", 2), ("bridge_length_two", 4)] {
        let n = enumerate_c_replacements(&fixture(name).map_err(err)?).map_err(err)?.len();
        ensure(n == want, || format!("{name}: {n} replacements, want {want}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        use rand::Rng;
        let counts: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=2)).collect();
        let n: usize = counts.iter().sum();
        if n == 0 || n > 5 {
            continue;
        }
        let got = enumerate_c_replacements(&common::bridge_fixture(&counts)).map_err(err)?.len();
        ensure(got == 1 << n, || format!("{counts:?}: {got} replacements, want {}", 1 << n))?;
    }
    Ok(())
}

fn tacnode(w: i64) -> Vec<i64> {
    vec![4 * w, 3 * w, 2 * w]
}

fn criterion_8() -> Outcome {
    for (g, r) in [(6u32, 3u32), (7, 4), (8, 5)] {
        let (c, rho) = build(Family::OpenRosary { g, r })?;
        let block = &c.rosaries[0];
        for (i, &k) in block.junctions.iter().enumerate() {
            let w = versal_weights(&c, &rho, SingularityRef::Intersection(k)).map_err(err)?.parameter_weights;
            let sign = if i == 0 { -1 } else if i % 2 == 1 { 1 } else { -1 };
            let want = if i == 0 || i == block.junctions.len() - 1 { vec![sign] } else { tacnode(sign) };
            ensure(w == want, || format!("open g={g} r={r} a{i}: {w:?}, want {want:?}"))?;
        }
    }
    for r in [3u32, 5, 7] {
        let (c, rho) = build(Family::BrokenBead { r })?;
        let report = basin_membership(&c, &rho).map_err(err)?;
        let node = &report.singularities[0].weights.parameter_weights;
        ensure(*node == vec![-2], || format!("broken bead r={r}: node weight {node:?}"))?;
        for (i, s) in report.singularities.iter().enumerate().skip(1) {
            // Listed with the constant term last: (c2, c1, c0).
            let listed: Vec<i64> = s.weights.parameter_weights.iter().rev().copied().collect();
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let want = vec![2 * sign, 3 * sign, 4 * sign];
            ensure(listed == want, || format!("broken bead r={r} a{i}: {listed:?}, want {want:?}"))?;
        }
    }
    for r in [4u32, 6, 8] {
        let (c, rho) = build(Family::ClosedRosary { r })?;
        let report = basin_membership(&c, &rho).map_err(err)?;
        for (k, s) in report.singularities.iter().enumerate() {
            let i = k as i64 + 1;
            let want = tacnode(if i % 2 == 1 { 1 } else { -1 });
            ensure(s.weights.parameter_weights == want, || {
                format!("closed r={r} a{i}: {:?}, want {want:?}", s.weights.parameter_weights)
            })?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for g in 2..=20 {
        let l2 = lambda_n(2, g).map_err(err)?;
        let want = DivisorClass::total(g, q(13), q(-1)).map_err(err)?;
        ensure(l2 == want, || format!("g={g}: lambda_2 = {l2}"))?;
    }
    for m in 2..=50i64 {
        for g in 3..=20i64 {
            let v = viehweg_class(2, m as u32, g as u32).map_err(err)?;
            let f = (m - 1) * (g - 1);
            let want = DivisorClass::total(g as u32, q(f * (20 * m - 3)), q(-f * 2 * m)).map_err(err)?;
            ensure(v == want, || format!("m={m} g={g}: {v}"))?;
        }
    }
    for m in 1..=200i64 {
        let e = epsilon_of_m(m).map_err(err)?;
        ensure(e == frac(39, 200 * m - 30), || format!("m={m}: epsilon {e}"))?;
        // (10 − 3/(2m))λ − δ is a multiple of K + (7/10 − ε)δ.
        let lhs = DivisorClass::total(10, q(10) - frac(3, 2 * m), q(-1)).map_err(err)?;
        let rhs = canonical_alpha_class(&(frac(7, 10) - e), 10).map_err(err)?;
        ensure(proportional(&lhs, &rhs).map_err(err)?, || format!("m={m}: slope relation fails"))?;
    }
    for g in 4..=30 {
        let d = moriwaki_decomposition(g).map_err(err)?;
        ensure(d.identity_holds && d.all_positive, || format!("g={g}: {d:?}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let e = Expectations::pinned();
    let a = run_paper_check(&[], &e, "bundled");
    let b = run_paper_check(&[], &e, "bundled");
    ensure(a.to_json() == b.to_json(), || "manifests differ between runs".into())?;
    ensure(a.ok(), || format!("{} of {} items failed", a.failed, a.items.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("open-rosary indices", criterion_1),
        ("closed rosary", criterion_2),
        ("broken bead", criterion_3),
        ("interpolation identity", criterion_4),
        ("chow certificates", criterion_5),
        ("classification properties", criterion_6),
        ("closed orbits and replacements", criterion_7),
        ("basin alternation", criterion_8),
        ("divisor identities", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.2?})", i + 1, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
