//! Exact arithmetic with λ and boundary classes on the moduli space of stable curves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, q, serde_q, serde_q_vec, Q};
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Boundary part of a class: either a multiple of the total boundary or a vector over δ_0..δ_{g/2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Delta {
    Total(#[serde(with = "serde_q")] Q),
    Split(#[serde(with = "serde_q_vec")] Vec<Q>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub g: u32,
    #[serde(with = "serde_q")]
    pub lambda: Q,
    pub delta: Delta,
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g as i64, min: 2 });
    }
    Ok(())
}

impl DivisorClass {
    pub fn total(g: u32, lambda: Q, delta: Q) -> Result<Self> {
        check_genus(g)?;
        Ok(DivisorClass { g, lambda, delta: Delta::Total(delta) })
    }

    pub fn split(g: u32, lambda: Q, deltas: Vec<Q>) -> Result<Self> {
        check_genus(g)?;
        if deltas.len() != Self::boundary_len(g) {
            return Err(Error::InvalidParameter(format!(
                "genus {g} has {} boundary classes, got {}",
                Self::boundary_len(g),
                deltas.len()
            )));
        }
        Ok(DivisorClass { g, lambda, delta: Delta::Split(deltas) })
    }

    pub fn boundary_len(g: u32) -> usize {
        g as usize / 2 + 1
    }

    pub fn zero(g: u32) -> Result<Self> {
        Self::total(g, Q::zero(), Q::zero())
    }

    pub fn lambda(g: u32) -> Result<Self> {
        Self::total(g, Q::one(), Q::zero())
    }

    pub fn delta(g: u32) -> Result<Self> {
        Self::total(g, Q::zero(), Q::one())
    }

    /// The single boundary class δ_i in the split basis.
    pub fn delta_i(g: u32, i: usize) -> Result<Self> {
        let mut v = vec![Q::zero(); Self::boundary_len(g.max(2))];
        if i >= v.len() {
            return Err(Error::InvalidParameter(format!("no boundary class δ_{i} in genus {g}")));
        }
        v[i] = Q::one();
        Self::split(g, Q::zero(), v)
    }

    /// Rewrite δ = Σ δ_i in the split basis.
    pub fn to_split(&self) -> Self {
        match &self.delta {
            Delta::Split(_) => self.clone(),
            Delta::Total(c) => DivisorClass {
                g: self.g,
                lambda: self.lambda.clone(),
                delta: Delta::Split(vec![c.clone(); Self::boundary_len(self.g)]),
            },
        }
    }

    /// Coefficient of the total boundary, if the class is a combination of λ and δ alone.
    pub fn delta_total(&self) -> Option<Q> {
        match &self.delta {
            Delta::Total(c) => Some(c.clone()),
            Delta::Split(v) => v.iter().all(|c| *c == v[0]).then(|| v[0].clone()),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.g != other.g {
            return Err(Error::InvalidParameter(format!("genus {} against {}", self.g, other.g)));
        }
        match (&self.delta, &other.delta) {
            (Delta::Total(_), Delta::Split(_)) | (Delta::Split(_), Delta::Total(_)) => Err(Error::MixedDelta),
            _ => Ok(()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let delta = match (&self.delta, &other.delta) {
            (Delta::Total(a), Delta::Total(b)) => Delta::Total(a + b),
            (Delta::Split(a), Delta::Split(b)) => Delta::Split(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => unreachable!(),
        };
        Ok(DivisorClass { g: self.g, lambda: &self.lambda + &other.lambda, delta })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let delta = match &self.delta {
            Delta::Total(a) => Delta::Total(a * c),
            Delta::Split(v) => Delta::Split(v.iter().map(|x| x * c).collect()),
        };
        DivisorClass { g: self.g, lambda: &self.lambda * c, delta }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero()
            && match &self.delta {
                Delta::Total(a) => a.is_zero(),
                Delta::Split(v) => v.iter().all(Zero::is_zero),
            }
    }

    fn coords(&self) -> Vec<Q> {
        let mut v = vec![self.lambda.clone()];
        match &self.delta {
            Delta::Total(a) => v.push(a.clone()),
            Delta::Split(d) => v.extend(d.iter().cloned()),
        }
        v
    }
}

/// Whether `a = c·b` for some nonzero rational `c`. Both sides must use the same boundary basis.
pub fn proportional(a: &DivisorClass, b: &DivisorClass) -> Result<bool> {
    a.compatible(b)?;
    let (x, y) = (a.coords(), b.coords());
    let Some(k) = y.iter().position(|c| !c.is_zero()) else {
        return Ok(a.is_zero());
    };
    let c = &x[k] / &y[k];
    Ok(!c.is_zero() && x.iter().zip(&y).all(|(u, v)| *u == &c * v))
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Q, String)> = vec![(self.lambda.clone(), "lambda".into())];
        match &self.delta {
            Delta::Total(a) => terms.push((a.clone(), "delta".into())),
            Delta::Split(v) => {
                for (i, a) in v.iter().enumerate() {
                    terms.push((a.clone(), format!("delta_{i}")));
                }
            }
        }
        let mut out = String::new();
        for (c, name) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let neg = c < Q::zero();
            let abs = if neg { -c } else { c };
            if out.is_empty() {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&fmt_q(&abs));
                out.push(' ');
            }
            out.push_str(&name);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Rank of the pushforward of the n-th power of the relative dualizing sheaf.
pub fn r(n: u32, g: u32) -> Result<i64> {
    check_genus(g)?;
    match n {
        0 => Err(Error::InvalidParameter("n must be positive".into())),
        1 => Ok(g as i64),
        _ => Ok((2 * n as i64 - 1) * (g as i64 - 1)),
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// First Chern class of the pushforward of the n-th power of the dualizing sheaf.
pub fn lambda_n(n: u32, g: u32) -> Result<DivisorClass> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n == 1 {
        return DivisorClass::lambda(g);
    }
    let n = n as i64;
    DivisorClass::total(g, q(6 * n * n - 6 * n + 1), q(-binom2(n)))
}

/// `r(n)·λ_{mn} − r(mn)·m·λ_n`, expanded through [`lambda_n`].
pub fn viehweg_class(n: u32, m: u32, g: u32) -> Result<DivisorClass> {
    if m < 2 {
        return Err(Error::InvalidParameter("m must be at least 2".into()));
    }
    let a = lambda_n(m * n, g)?.scale(&q(r(n, g)?));
    let b = lambda_n(n, g)?.scale(&q(r(m * n, g)? * m as i64));
    a.sub(&b)
}

/// The displayed closed form of [`viehweg_class`], kept separate so the two can be compared.
pub fn viehweg_closed_form(n: u32, m: u32, g: u32) -> Result<DivisorClass> {
    if n == 0 || m < 2 {
        return Err(Error::InvalidParameter("need n >= 1 and m >= 2".into()));
    }
    let (n, m, gi) = (n as i64, m as i64, g as i64);
    if n == 1 {
        let lam = q(1) + q((m - 1) * ((4 * gi + 2) * m - gi + 1));
        let del = -q((m - 1) * gi * m) / q(2);
        return DivisorClass::total(g, lam, del);
    }
    let f = (m - 1) * (gi - 1);
    let lam = q(f * (6 * m * n * n - 2 * m * n - 2 * n + 1));
    let del = -q(f * m * n * n) / q(2);
    DivisorClass::total(g, lam, del)
}

/// Leading coefficient in m of the Viehweg class: the limiting polarization.
// The class is quadratic in m for m >= 2 (not at m = 1, where r(1) = g breaks the pattern).
pub fn asymptotic_polarization(n: u32, g: u32) -> Result<DivisorClass> {
    let v2 = viehweg_class(n, 2, g)?;
    let v3 = viehweg_class(n, 3, g)?;
    let v4 = viehweg_class(n, 4, g)?;
    Ok(v4.sub(&v3.scale(&q(2)))?.add(&v2)?.scale(&(q(1) / q(2))))
}

/// Canonical class of the moduli stack in the λ, δ basis.
pub fn canonical_class(g: u32) -> Result<DivisorClass> {
    DivisorClass::total(g, q(13), q(-2))
}

/// `K + α·δ`.
pub fn canonical_alpha_class(alpha: &Q, g: u32) -> Result<DivisorClass> {
    canonical_class(g)?.add(&DivisorClass::delta(g)?.scale(alpha))
}

/// The ε with `(10 − 3/(2m))λ − δ ∼ K + (7/10 − ε)δ`.
pub fn epsilon_of_m(m: i64) -> Result<Q> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    Ok(q(39) / q(200 * m - 30))
}

/// `K + αδ − (9 − 11α)δ_1` in the split basis: the pullback side of the log discrepancy formula.
pub fn pseudostable_pullback(alpha: &Q, g: u32) -> Result<DivisorClass> {
    let lhs = canonical_alpha_class(alpha, g)?.to_split();
    let corr = DivisorClass::delta_i(g, 1)?.scale(&(q(9) - q(11) * alpha));
    lhs.sub(&corr)
}

/// Moriwaki's class `(8g+4)λ − g δ_0 − Σ 4i(g−i) δ_i`.
pub fn moriwaki_class(g: u32) -> Result<DivisorClass> {
    check_genus(g)?;
    let gi = g as i64;
    let mut d = vec![q(-gi)];
    for i in 1..DivisorClass::boundary_len(g) as i64 {
        d.push(q(-4 * i * (gi - i)));
    }
    DivisorClass::split(g, q(8 * gi + 4), d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriwakiDecomposition {
    pub g: u32,
    #[serde(with = "serde_q")]
    pub moriwaki: Q,
    #[serde(with = "serde_q")]
    pub lambda: Q,
    #[serde(with = "serde_q")]
    pub delta_1: Q,
    /// Coefficients of δ_2..δ_{g/2}.
    #[serde(with = "serde_q_vec")]
    pub delta_rest: Vec<Q>,
    pub identity_holds: bool,
    pub all_positive: bool,
}

/// Writes `10λ − δ − δ_1` as `(1/g)A + (2−4/g)λ + (2−4/g)δ_1 + Σ_{i≥2} (−1 + 4i(g−i)/g)δ_i`
/// and checks the identity exactly.
pub fn moriwaki_decomposition(g: u32) -> Result<MoriwakiDecomposition> {
    if g < 3 {
        return Err(Error::GenusTooSmall { genus: g as i64, min: 3 });
    }
    let gi = g as i64;
    let gq = q(gi);
    let a_coeff = q(1) / &gq;
    let lam = q(2) - q(4) / &gq;
    let d1 = lam.clone();
    let rest: Vec<Q> = (2..DivisorClass::boundary_len(g) as i64)
        .map(|i| q(-1) + q(4 * i * (gi - i)) / &gq)
        .collect();

    let mut sum = moriwaki_class(g)?.scale(&a_coeff);
    sum = sum.add(&DivisorClass::lambda(g)?.to_split().scale(&lam))?;
    sum = sum.add(&DivisorClass::delta_i(g, 1)?.scale(&d1))?;
    for (k, c) in rest.iter().enumerate() {
        sum = sum.add(&DivisorClass::delta_i(g, k + 2)?.scale(c))?;
    }
    let target = ten_lambda_minus_delta_delta1(g)?;
    let zero = Q::zero();
    let all_positive = a_coeff > zero && lam > zero && rest.iter().all(|c| *c > zero);
    Ok(MoriwakiDecomposition {
        g,
        moriwaki: a_coeff,
        lambda: lam,
        delta_1: d1,
        delta_rest: rest,
        identity_holds: sum == target,
        all_positive,
    })
}

/// `10λ − δ − δ_1` in the split basis.
pub fn ten_lambda_minus_delta_delta1(g: u32) -> Result<DivisorClass> {
    DivisorClass::total(g, q(10), q(-1))?.to_split().sub(&DivisorClass::delta_i(g, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn ranks() {
        assert_eq!(r(1, 7).unwrap(), 7);
        assert_eq!(r(2, 7).unwrap(), 18);
        assert_eq!(r(5, 4).unwrap(), 27);
        assert!(r(0, 4).is_err());
    }

    #[test]
    fn small_lambda_classes() {
        assert_eq!(lambda_n(2, 5).unwrap(), DivisorClass::total(5, q(13), q(-1)).unwrap());
        assert_eq!(lambda_n(3, 5).unwrap(), DivisorClass::total(5, q(37), q(-3)).unwrap());
        assert_eq!(lambda_n(1, 5).unwrap(), DivisorClass::lambda(5).unwrap());
        assert_eq!(lambda_n(2, 5).unwrap().to_string(), "13 lambda - delta");
    }

    #[test]
    fn mixing_is_loud() {
        let a = DivisorClass::lambda(4).unwrap();
        let b = DivisorClass::delta_i(4, 1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::MixedDelta)));
        assert!(a.to_split().add(&b).is_ok());
        assert_eq!(b.delta_total(), None);
        assert_eq!(DivisorClass::delta(4).unwrap().to_split().delta_total(), Some(q(1)));
    }

    #[test]
    fn slopes() {
        let g = 9;
        let v = viehweg_class(2, 7, g).unwrap();
        let target = DivisorClass::total(g, q(10) - frac(3, 14), q(-1)).unwrap();
        assert!(proportional(&v, &target).unwrap());
        let lim = asymptotic_polarization(2, g).unwrap();
        assert!(proportional(&lim, &DivisorClass::total(g, q(10), q(-1)).unwrap()).unwrap());
        let lim1 = asymptotic_polarization(1, g).unwrap();
        assert!(proportional(&lim1, &DivisorClass::total(g, q(38), frac(-9, 2)).unwrap()).unwrap());
    }

    #[test]
    fn canonical_and_epsilon() {
        let k = canonical_alpha_class(&frac(7, 10), 6).unwrap();
        assert_eq!(k, DivisorClass::total(6, q(13), frac(-13, 10)).unwrap());
        assert!(proportional(&k, &DivisorClass::total(6, q(10), q(-1)).unwrap()).unwrap());
        assert_eq!(epsilon_of_m(10).unwrap(), frac(39, 1970));
        assert!(epsilon_of_m(0).is_err());
        let pb = pseudostable_pullback(&frac(7, 10), 6).unwrap();
        assert!(proportional(&pb, &ten_lambda_minus_delta_delta1(6).unwrap()).unwrap());
    }

    #[test]
    fn moriwaki_small() {
        let d = moriwaki_decomposition(4).unwrap();
        assert_eq!(d.delta_rest, vec![q(3)]);
        assert!(d.identity_holds && d.all_positive);
        assert!(moriwaki_decomposition(2).is_err());
    }

    #[test]
    fn proportional_edge_cases() {
        let z = DivisorClass::zero(3).unwrap();
        let l = DivisorClass::lambda(3).unwrap();
        assert!(proportional(&z, &z).unwrap());
        assert!(!proportional(&z, &l).unwrap());
        assert!(!proportional(&l, &z).unwrap());
    }
}
