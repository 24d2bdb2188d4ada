//! Browser bindings for the demo page: index profiles, basin views and the slope explorer.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic and are callable
//! from native code so they can be tested without a browser.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use gitcurve_core::basin_calculus::{basin_membership, product_subgroup, BasinVerdict};
use gitcurve_core::divisor_classes::{canonical_alpha_class, epsilon_of_m, viehweg_class};
use gitcurve_core::families::{canonical_1ps, Configuration, Family};
use gitcurve_core::golden::{describe_curve, singularity_label};
use gitcurve_core::ideal_engine::index_table;
use gitcurve_core::rational::{fmt_q, frac};

/// Index computations grow quickly with the rosary length; the page stays below this.
const MAX_R: u32 = 9;

fn family(name: &str, g: u32, r: u32) -> Result<Family, String> {
    if r > MAX_R {
        return Err(format!("r is capped at {MAX_R} in the browser"));
    }
    Ok(match name {
        "open-rosary" => Family::OpenRosary { g, r },
        "closed-rosary" => Family::ClosedRosary { r },
        "broken-bead" => Family::BrokenBead { r },
        "tacnodal-tail" => Family::TacnodalTail { g },
        other => return Err(format!("unknown family {other:?}")),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("cannot read {x:?}")))
        .collect()
}

pub fn index_profile_json(name: &str, g: u32, r: u32, ms: &str) -> Result<String, String> {
    let c = Configuration::build(&family(name, g, r)?).map_err(|e| e.to_string())?;
    let rho = canonical_1ps(&c).map_err(|e| e.to_string())?;
    let ms: Vec<u32> = parse_list(ms)?;
    if ms.iter().any(|&m| m > 4) {
        return Err("degrees above 4 are not offered here".into());
    }
    let table = index_table(&c, &rho, &ms, &Default::default()).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = table
        .iter()
        .map(|t| {
            json!({
                "m": t.m,
                "weight_sum": fmt_q(&t.weight_sum),
                "average": fmt_q(&t.average),
                "mu": fmt_q(&t.mu),
                "standard": t.standard_count,
                "expected": t.expected_count,
            })
        })
        .collect();
    Ok(json!({
        "genus": c.genus(),
        "weights": rho.weights,
        "rows": rows,
        "chow_sign": table.first().and_then(|t| t.chow_sign),
    })
    .to_string())
}

pub fn basin_view_json(name: &str, g: u32, r: u32, exponents: &str) -> Result<String, String> {
    let c = Configuration::build(&family(name, g, r)?).map_err(|e| e.to_string())?;
    let exps: Vec<i64> = parse_list(exponents)?;
    let rho = if exps.is_empty() { canonical_1ps(&c) } else { product_subgroup(&c, &exps) }.map_err(|e| e.to_string())?;
    let report = basin_membership(&c, &rho).map_err(|e| e.to_string())?;
    let sings: Vec<Value> = report
        .singularities
        .iter()
        .map(|s| {
            json!({
                "label": singularity_label(&c, s.weights.singularity),
                "kind": format!("{:?}", s.weights.kind).to_lowercase(),
                "weights": s.weights.parameter_weights,
                "smoothable": s.verdict == BasinVerdict::Smoothable,
            })
        })
        .collect();
    Ok(json!({
        "weights": rho.weights,
        "singularities": sings,
        "special": describe_curve(&c.graph).map_err(|e| e.to_string())?,
        "generic": describe_curve(&report.generic).map_err(|e| e.to_string())?,
        "partial_smoothings": report.lattice_size,
    })
    .to_string())
}

pub fn slope_explorer_json(m: u32, g: u32) -> Result<String, String> {
    if !(2..=10_000).contains(&m) {
        return Err("m must lie in 2..=10000".into());
    }
    let eps = epsilon_of_m(m as i64).map_err(|e| e.to_string())?;
    let class = viehweg_class(2, m, g).map_err(|e| e.to_string())?;
    let alpha = frac(7, 10) - &eps;
    let k = canonical_alpha_class(&alpha, g).map_err(|e| e.to_string())?;
    Ok(json!({
        "epsilon": fmt_q(&eps),
        "slope": fmt_q(&frac(20 * m as i64 - 3, 2 * m as i64)),
        "alpha": fmt_q(&alpha),
        "polarization": class.to_string(),
        "log_canonical": k.to_string(),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn index_profile(family: &str, g: u32, r: u32, ms: &str) -> Result<String, JsError> {
    js(index_profile_json(family, g, r, ms))
}

#[wasm_bindgen]
pub fn basin_view(family: &str, g: u32, r: u32, exponents: &str) -> Result<String, JsError> {
    js(basin_view_json(family, g, r, exponents))
}

#[wasm_bindgen]
pub fn slope_explorer(m: u32, g: u32) -> Result<String, JsError> {
    js(slope_explorer_json(m, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_bead_profile() {
        let v: Value = serde_json::from_str(&index_profile_json("broken-bead", 0, 5, "2,3").unwrap()).unwrap();
        assert_eq!(v["rows"][0]["mu"], "-1");
        assert_eq!(v["rows"][1]["mu"], "-2");
        assert_eq!(v["chow_sign"], 0);
    }

    #[test]
    fn basin_flips_with_exponent() {
        let a: Value = serde_json::from_str(&basin_view_json("open-rosary", 6, 3, "").unwrap()).unwrap();
        let b: Value = serde_json::from_str(&basin_view_json("open-rosary", 6, 3, "-1").unwrap()).unwrap();
        assert_eq!(a["singularities"][0]["smoothable"], false);
        assert_eq!(b["singularities"][0]["smoothable"], true);
    }

    #[test]
    fn slope_values() {
        let v: Value = serde_json::from_str(&slope_explorer_json(10, 5).unwrap()).unwrap();
        assert_eq!(v["epsilon"], "39/1970");
        assert_eq!(v["slope"], "197/20");
        assert!(slope_explorer_json(1, 5).is_err());
        assert!(index_profile_json("closed-rosary", 0, 12, "2").is_err());
    }
}
