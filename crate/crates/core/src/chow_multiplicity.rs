//! Multiplicity lower bounds for Mumford's Chow criterion and the instability certificates.

use serde::{Deserialize, Serialize};

use crate::families::OneParamSubgroup;
use crate::rational::{q, serde_q, Q};
use crate::{Error, Result};

/// Vanishing orders of the coordinates along one branch; `None` marks a coordinate that is
/// identically zero on the branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    pub label: String,
    pub orders: Vec<Option<u32>>,
}

impl BranchData {
    pub fn new(label: &str, orders: Vec<Option<u32>>) -> Result<Self> {
        if !orders.contains(&Some(0)) {
            return Err(Error::InvalidParameter(format!(
                "branch {label}: some coordinate must not vanish"
            )));
        }
        Ok(BranchData { label: label.to_string(), orders })
    }

    /// Finite orders followed by a constant order for the remaining coordinates.
    pub fn padded(label: &str, leading: &[u32], rest: Option<u32>, len: usize) -> Result<Self> {
        let mut orders: Vec<Option<u32>> = leading.iter().map(|&v| Some(v)).collect();
        orders.resize(len, rest);
        Self::new(label, orders)
    }
}

/// `a²` with `a = min_i (v_i + r_i)` over coordinates not identically zero on the branch.
pub fn branch_multiplicity_bound(b: &BranchData, rho: &OneParamSubgroup) -> Result<Q> {
    if b.orders.len() != rho.len() {
        return Err(Error::CoordinateMismatch(format!(
            "{} orders against {} weights",
            b.orders.len(),
            rho.len()
        )));
    }
    let a = b
        .orders
        .iter()
        .zip(&rho.weights)
        .filter_map(|(v, r)| v.map(|v| v as i64 + r))
        .min()
        .expect("some order is finite");
    Ok(q(a * a))
}

/// `(dim + 1)·r_0·deg` for a subvariety on which the action is by one weight `r_0`.
pub fn degenerate_multiplicity(dim: i64, r0: i64, deg: i64) -> Result<i64> {
    if dim < 0 || r0 < 0 || deg < 0 {
        return Err(Error::InvalidParameter("negative input".into()));
    }
    Ok((dim + 1) * r0 * deg)
}

/// `(dim + 1)/(N + 1) · deg · Σ r_i`, where `N + 1` is the number of coordinates.
pub fn chow_threshold(dim: i64, n: i64, deg: i64, weight_sum: i64) -> Result<Q> {
    if n < 1 {
        return Err(Error::InvalidParameter("need N >= 1".into()));
    }
    Ok(q((dim + 1) * deg * weight_sum) / q(n + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unstable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub label: String,
    #[serde(with = "serde_q")]
    pub bound: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityCertificate {
    pub case: String,
    pub weights: Vec<i64>,
    pub contributions: Vec<Contribution>,
    #[serde(with = "serde_q")]
    pub lower_bound: Q,
    #[serde(with = "serde_q")]
    pub threshold: Q,
    pub verdict: Verdict,
}

impl MultiplicityCertificate {
    pub fn assemble(case: &str, rho: &OneParamSubgroup, contributions: Vec<Contribution>, threshold: Q) -> Self {
        let lower_bound: Q = contributions.iter().map(|c| c.bound.clone()).sum();
        let verdict = if lower_bound > threshold { Verdict::Unstable } else { Verdict::Inconclusive };
        MultiplicityCertificate {
            case: case.to_string(),
            weights: rho.weights.clone(),
            contributions,
            lower_bound,
            threshold,
            verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum ChowCase {
    NonOrdinaryCusp { g: u32 },
    /// Two branches agreeing to order `s ≥ 3`.
    HigherTacnode { g: u32, s: u32 },
    MultipleComponent { g: u32, multiplicity: u32 },
    /// Cuspidal rational tail meeting a conic in a tacnode, the conic meeting the rest in a node.
    GenusOneTacnodeTail { g: u32 },
}

fn weights(lead: &[i64], rest: i64, len: usize) -> OneParamSubgroup {
    let mut w = lead.to_vec();
    w.resize(len, rest);
    OneParamSubgroup::new(w)
}

fn contribution(b: &BranchData, rho: &OneParamSubgroup) -> Result<Contribution> {
    Ok(Contribution { label: b.label.clone(), bound: branch_multiplicity_bound(b, rho)? })
}

/// Bicanonical threshold for a curve of genus `g`.
fn curve_threshold(g: u32, rho: &OneParamSubgroup) -> Result<Q> {
    let n = 3 * g as i64 - 4;
    chow_threshold(1, n, 4 * g as i64 - 4, rho.sum())
}

pub fn certify_unstable(case: &ChowCase) -> Result<MultiplicityCertificate> {
    let g = match case {
        ChowCase::NonOrdinaryCusp { g }
        | ChowCase::HigherTacnode { g, .. }
        | ChowCase::MultipleComponent { g, .. }
        | ChowCase::GenusOneTacnodeTail { g } => *g,
    };
    let min = if matches!(case, ChowCase::GenusOneTacnodeTail { .. }) { 4 } else { 2 };
    if g < min {
        return Err(Error::GenusTooSmall { genus: g as i64, min: min as i64 });
    }
    let len = 3 * g as usize - 3;
    match case {
        ChowCase::NonOrdinaryCusp { .. } => {
            let rho = weights(&[5, 3, 1], 0, len);
            let b = BranchData::padded("cusp", &[0, 2, 4], Some(5), len)?;
            let th = curve_threshold(g, &rho)?;
            Ok(MultiplicityCertificate::assemble("non-ordinary-cusp", &rho, vec![contribution(&b, &rho)?], th))
        }
        ChowCase::HigherTacnode { s, .. } => {
            if *s < 3 {
                return Err(Error::InvalidParameter(format!("higher tacnode needs s >= 3, got {s}")));
            }
            let rho = weights(&[3, 2, 1], 0, len);
            let mut parts = vec![];
            for label in ["branch 1", "branch 2"] {
                parts.push(contribution(&BranchData::padded(label, &[0, 1, 2], Some(3), len)?, &rho)?);
            }
            let th = curve_threshold(g, &rho)?;
            Ok(MultiplicityCertificate::assemble("higher-tacnode", &rho, parts, th))
        }
        ChowCase::MultipleComponent { multiplicity, .. } => {
            if *multiplicity < 2 {
                return Err(Error::InvalidParameter("multiplicity must be at least two".into()));
            }
            let rho = weights(&[3, 2, 1], 0, len);
            let b = BranchData::padded("reduced component", &[0, 1, 2], Some(3), len)?;
            let single = branch_multiplicity_bound(&b, &rho)?;
            let part = Contribution {
                label: format!("{multiplicity} x reduced component"),
                bound: single * q(*multiplicity as i64),
            };
            let th = curve_threshold(g, &rho)?;
            Ok(MultiplicityCertificate::assemble("multiple-component", &rho, vec![part], th))
        }
        ChowCase::GenusOneTacnodeTail { .. } => {
            let rho = weights(&[0, 2, 3, 4], 2, len);
            let e_p = BranchData::padded("E at p", &[4, 2, 1, 0], None, len)?;
            let mut r_orders = vec![None, None, Some(1), Some(0), Some(2)];
            r_orders.resize(len, None);
            let r_p = BranchData::new("R at p", r_orders)?;
            let mut r_orders = vec![None, None, Some(1), Some(2), Some(0)];
            r_orders.resize(len, None);
            let r_q = BranchData::new("R at q", r_orders)?;
            let d = Contribution {
                label: "D".into(),
                bound: q(degenerate_multiplicity(1, 2, 4 * g as i64 - 10)?),
            };
            let parts = vec![contribution(&e_p, &rho)?, contribution(&r_p, &rho)?, contribution(&r_q, &rho)?, d];
            let th = curve_threshold(g, &rho)?;
            Ok(MultiplicityCertificate::assemble("genus-one-tacnode-tail", &rho, parts, th))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn non_ordinary_cusp() {
        let c = certify_unstable(&ChowCase::NonOrdinaryCusp { g: 5 }).unwrap();
        assert_eq!(c.lower_bound, q(25));
        assert_eq!(c.threshold, q(24));
        assert_eq!(c.verdict, Verdict::Unstable);
    }

    #[test]
    fn higher_tacnode_and_multiple_component() {
        let c = certify_unstable(&ChowCase::HigherTacnode { g: 4, s: 3 }).unwrap();
        assert_eq!((c.lower_bound.clone(), c.threshold.clone()), (q(18), q(16)));
        let c = certify_unstable(&ChowCase::MultipleComponent { g: 4, multiplicity: 2 }).unwrap();
        assert_eq!((c.lower_bound.clone(), c.threshold.clone()), (q(18), q(16)));
        assert!(certify_unstable(&ChowCase::HigherTacnode { g: 4, s: 2 }).is_err());
    }

    #[test]
    fn tacnodal_tail_genus_five() {
        let c = certify_unstable(&ChowCase::GenusOneTacnodeTail { g: 5 }).unwrap();
        assert_eq!(c.lower_bound, q(76));
        assert_eq!(c.threshold, frac(200, 3));
        assert!(certify_unstable(&ChowCase::GenusOneTacnodeTail { g: 3 }).is_err());
    }

    #[test]
    fn small_pieces() {
        assert_eq!(degenerate_multiplicity(1, 3, 4).unwrap(), 24);
        assert_eq!(degenerate_multiplicity(1, 0, 9).unwrap(), 0);
        assert!(degenerate_multiplicity(-1, 0, 9).is_err());
        assert_eq!(chow_threshold(1, 5, 10, 0).unwrap(), q(0));
        let zero = OneParamSubgroup::new(vec![0; 4]);
        let b = BranchData::new("b", vec![Some(0), Some(1), None, Some(3)]).unwrap();
        assert_eq!(branch_multiplicity_bound(&b, &zero).unwrap(), q(0));
        assert!(BranchData::new("b", vec![Some(1), None]).is_err());
        assert!(branch_multiplicity_bound(&b, &OneParamSubgroup::new(vec![0; 3])).is_err());
    }
}
