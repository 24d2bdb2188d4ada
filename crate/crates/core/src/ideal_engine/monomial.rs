//! Monomials and the weighted lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::families::OneParamSubgroup;
use crate::{Error, Result};

/// A monomial as a nondecreasing list of variable indices: `x0*x3^2` is `[0, 3, 3]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self, rho: &OneParamSubgroup) -> i64 {
        self.0.iter().map(|&i| rho.weights[i]).sum()
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &i in &self.0 {
            e[i] += 1;
        }
        e
    }

    /// All monomials of degree `m` in `n` variables, in increasing index-list order.
    pub fn all(n: usize, m: usize) -> Vec<Monomial> {
        fn rec(n: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
            if cur.len() == m {
                out.push(Monomial(cur.clone()));
                return;
            }
            for i in from..n {
                cur.push(i);
                rec(n, m, i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, m, 0, &mut Vec::with_capacity(m), &mut out);
        out
    }

    pub fn parse(s: &str) -> Result<Monomial> {
        let bad = || Error::InvalidParameter(format!("not a monomial: {s:?}"));
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(vec![]));
        }
        let mut vars = vec![];
        for factor in s.split('*') {
            let rest = factor.trim().strip_prefix('x').ok_or_else(bad)?;
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            vars.extend(std::iter::repeat(idx).take(pow));
        }
        Ok(Monomial::new(vars))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl From<Monomial> for String {
    fn from(m: Monomial) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Monomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Monomial> {
        Monomial::parse(&s)
    }
}

/// Degree, then ρ-weight (heavier is larger), then lex with the first variable of
/// `precedence` largest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub weights: OneParamSubgroup,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Precedence `x_0 ≻ x_1 ≻ …`.
    pub fn new(weights: OneParamSubgroup) -> Self {
        let precedence = (0..weights.len()).collect();
        MonomialOrder { weights, precedence }
    }

    pub fn with_precedence(weights: OneParamSubgroup, precedence: Vec<usize>) -> Result<Self> {
        let mut sorted = precedence.clone();
        sorted.sort_unstable();
        if sorted != (0..weights.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter("precedence is not a permutation".into()));
        }
        Ok(MonomialOrder { weights, precedence })
    }

    pub fn num_variables(&self) -> usize {
        self.weights.len()
    }

    fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.precedence.len()];
        for (r, &v) in self.precedence.iter().enumerate() {
            rank[v] = r;
        }
        rank
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(&self.ranks())(a).cmp(&self.key(&self.ranks())(b))
    }

    /// Sort key: comparing keys compares monomials.
    pub(crate) fn key<'a>(&'a self, rank: &'a [usize]) -> impl Fn(&Monomial) -> OrderKey + 'a {
        move |m: &Monomial| {
            let mut r: Vec<usize> = m.0.iter().map(|&v| rank[v]).collect();
            r.sort_unstable();
            OrderKey { degree: m.degree(), weight: m.weight(&self.weights), ranks: r }
        }
    }

    /// Monomials sorted from largest to smallest.
    pub fn sort_descending(&self, mons: &mut [Monomial]) {
        let rank = self.ranks();
        let key = self.key(&rank);
        mons.sort_by_cached_key(|m| std::cmp::Reverse(key(m)));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrderKey {
    degree: usize,
    weight: i64,
    ranks: Vec<usize>,
}

impl PartialOrd for OrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then(self.weight.cmp(&other.weight))
            // a lexicographically smaller rank list carries more of the top variables
            .then_with(|| other.ranks.cmp(&self.ranks))
    }
}
