//! Hilbert–Mumford indices of Hilbert points, and the interpolation to all degrees.

use serde::{Deserialize, Serialize};

use super::monomial::MonomialOrder;
use super::slice::{evaluate_slice_capped, DEFAULT_MAX_DEGREE};
use crate::families::{Configuration, Family, Mode, OneParamSubgroup};
use crate::rational::{frac, q, serde_q, sign, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub m: u32,
    #[serde(with = "serde_q")]
    pub weight_sum: Q,
    #[serde(with = "serde_q")]
    pub average: Q,
    #[serde(with = "serde_q")]
    pub mu: Q,
    pub standard_count: usize,
    /// `P(m) = (4g − 4)m + 1 − g`.
    pub expected_count: usize,
    /// Set when `standard_count` differs from `expected_count`.
    pub count_deviates: bool,
    /// Sign of `μ_3 − 2μ_2`, filled in by [`index_table`] when both degrees are present.
    pub chow_sign: Option<i8>,
    /// Standard-monomial count and weight sum of the parametrized block in split mode.
    pub block: Option<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexOptions {
    pub max_degree: u32,
    /// Lex precedence over the parametrized coordinates; `None` means `x_0 ≻ x_1 ≻ …`.
    pub precedence: Option<Vec<usize>>,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { max_degree: DEFAULT_MAX_DEGREE, precedence: None }
    }
}

pub fn hilbert_polynomial(g: u32, m: u32) -> i64 {
    (4 * g as i64 - 4) * m as i64 + 1 - g as i64
}

/// Riemann–Roch count of degree-`m` sections on the abstract remainder vanishing at the
/// attachment points, for `k` rosaries attached at two points each.
pub fn remainder_count(d_genus: u32, rosaries: u32, m: u32) -> i64 {
    let (gd, k, m) = (d_genus as i64, rosaries as i64, m as i64);
    (4 * m - 1) * gd - 4 * m + 4 * m * k - 2 * k + 1
}

pub fn hilbert_index(c: &Configuration, rho: &OneParamSubgroup, m: u32) -> Result<IndexReport> {
    hilbert_index_with(c, rho, m, &IndexOptions::default())
}

pub fn hilbert_index_with(
    c: &Configuration,
    rho: &OneParamSubgroup,
    m: u32,
    opts: &IndexOptions,
) -> Result<IndexReport> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("index needs m >= 2, got {m}")));
    }
    let g = c.genus();
    let n = c.total_coordinates();
    if rho.len() != n {
        return Err(Error::CoordinateMismatch(format!("{} weights for {} coordinates", rho.len(), n)));
    }
    let block_n = c.parametrization.num_coordinates;
    let block_rho = OneParamSubgroup::new(rho.weights[..block_n].to_vec());
    let ord = match &opts.precedence {
        Some(p) => MonomialOrder::with_precedence(block_rho, p.clone())?,
        None => MonomialOrder::new(block_rho),
    };
    let slice = evaluate_slice_capped(&c.parametrization, m, &ord, opts.max_degree)?;
    let block_count = slice.standard_count();
    let block_sum = slice.standard_weight_sum();

    let (count, sum, block) = match &c.mode {
        Mode::FullyParametrized => (block_count as i64, block_sum, None),
        Mode::SplitWithD { d_genus, attachments, d_coordinates, .. } => {
            if !matches!(c.family, Family::OpenRosary { .. } | Family::MultiRosary { .. }) {
                return Err(Error::Unsupported("split-mode index needs an open-rosary family".into()));
            }
            let mut shared = d_coordinates.iter().chain(attachments).map(|&i| rho.weights[i]);
            let w = shared.next().unwrap_or(0);
            if shared.any(|x| x != w) {
                return Err(Error::Unsupported(
                    "the remainder coordinates must share one weight".into(),
                ));
            }
            let d_count = remainder_count(*d_genus, c.rosaries.len() as u32, m);
            (
                block_count as i64 + d_count,
                block_sum + m as i64 * w * d_count,
                Some((block_count, block_sum)),
            )
        }
    };
    let expected = hilbert_polynomial(g, m);
    let average = q(m as i64 * expected * rho.sum()) / q(n as i64);
    let weight_sum = q(sum);
    Ok(IndexReport {
        m,
        mu: &average - &weight_sum,
        weight_sum,
        average,
        standard_count: count as usize,
        expected_count: expected as usize,
        count_deviates: count != expected,
        chow_sign: None,
        block,
    })
}

/// Reports for several degrees, with the Chow sign attached when degrees 2 and 3 are present.
pub fn index_table(
    c: &Configuration,
    rho: &OneParamSubgroup,
    ms: &[u32],
    opts: &IndexOptions,
) -> Result<Vec<IndexReport>> {
    let mut out: Vec<IndexReport> =
        ms.iter().map(|&m| hilbert_index_with(c, rho, m, opts)).collect::<Result<_>>()?;
    let mu = |k: u32| out.iter().find(|r| r.m == k).map(|r| r.mu.clone());
    if let (Some(mu2), Some(mu3)) = (mu(2), mu(3)) {
        let s = chow_index_sign(&mu2, &mu3);
        for r in &mut out {
            r.chow_sign = Some(s);
        }
    }
    Ok(out)
}

/// `(m − 1)·[(3 − m)·μ_2 + (m/2 − 1)·μ_3]`.
pub fn extrapolate_index(mu2: &Q, mu3: &Q, m: u32) -> Q {
    let m = m as i64;
    q(m - 1) * (q(3 - m) * mu2 + (frac(m, 2) - q(1)) * mu3)
}

/// Sign of `μ_3 − 2μ_2`: positive stable, zero strictly semistable, negative unstable.
pub fn chow_index_sign(mu2: &Q, mu3: &Q) -> i8 {
    sign(&(mu3 - q(2) * mu2))
}

/// `max_{i ∈ support} (−r_i + Σr/(N+1))`.
pub fn point_index(support: &[usize], rho: &OneParamSubgroup) -> Result<Q> {
    if support.is_empty() {
        return Err(Error::InvalidParameter("empty support".into()));
    }
    if let Some(&i) = support.iter().find(|&&i| i >= rho.len()) {
        return Err(Error::CoordinateMismatch(format!("coordinate {i} out of range")));
    }
    let avg = q(rho.sum()) / q(rho.len() as i64);
    let min = support.iter().map(|&i| rho.weights[i]).min().unwrap();
    Ok(avg - q(min))
}
