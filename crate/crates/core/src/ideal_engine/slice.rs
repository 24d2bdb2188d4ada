//! Degree-`m` slices of the ideal of a parametrized curve by exact elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use crate::families::Parametrization;
use crate::rational::{serde_q, Q};
use crate::{Error, Result};

/// Default cap on the slice degree.
pub const DEFAULT_MAX_DEGREE: u32 = 5;

type Sparse = BTreeMap<usize, Q>;

/// `in(f) + Σ coefficient · x^j` over standard monomials `j`, an element of `I_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRow {
    pub leading: usize,
    pub tail: Vec<TailTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailTerm {
    pub monomial: usize,
    #[serde(with = "serde_q")]
    pub coefficient: Q,
}

/// Reduced echelon basis of `I_m`; column `j` is `monomials[j]`, sorted from largest down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSlice {
    pub degree: u32,
    pub order: MonomialOrder,
    pub monomials: Vec<Monomial>,
    /// Column indices of the standard monomials, in column order.
    pub standard: Vec<usize>,
    /// One row per initial monomial, ordered by pivot column.
    pub rows: Vec<KernelRow>,
}

impl IdealSlice {
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard.iter().map(|&j| self.monomials[j].clone()).collect()
    }

    pub fn initial_monomials(&self) -> Vec<Monomial> {
        self.rows.iter().map(|r| self.monomials[r.leading].clone()).collect()
    }

    pub fn standard_count(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_weight_sum(&self) -> i64 {
        self.standard.iter().map(|&j| self.monomials[j].weight(&self.order.weights)).sum()
    }
}

/// Per-component lookup from coordinate to `(a, coefficient)` and the column offset.
struct Evaluator {
    coords: Vec<Vec<Option<(u32, Q)>>>,
    offsets: Vec<usize>,
}

impl Evaluator {
    fn new(p: &Parametrization, m: u32) -> Self {
        let mut coords = vec![];
        let mut offsets = vec![];
        let mut off = 0;
        for c in &p.components {
            let mut row = vec![None; p.num_coordinates];
            for t in &c.terms {
                row[t.coordinate] = Some((t.exponents.0, t.coefficient.clone()));
            }
            coords.push(row);
            offsets.push(off);
            off += (m * c.degree + 1) as usize;
        }
        Evaluator { coords, offsets }
    }

    /// Image of a monomial: at most one binary-form coefficient per component.
    fn image(&self, mono: &Monomial) -> Sparse {
        let mut v = Sparse::new();
        'comp: for (c, row) in self.coords.iter().enumerate() {
            let mut a = 0u32;
            let mut coeff = Q::one();
            for &x in mono.vars() {
                match &row[x] {
                    Some((e, k)) => {
                        a += e;
                        if !k.is_one() {
                            coeff *= k;
                        }
                    }
                    None => continue 'comp,
                }
            }
            v.insert(self.offsets[c] + a as usize, coeff);
        }
        v
    }
}

fn axpy(target: &mut Sparse, factor: &Q, row: &Sparse) {
    for (k, x) in row {
        let entry = target.entry(*k).or_insert_with(Q::zero);
        *entry -= factor * x;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Degree-`m` slice of the ideal of the parametrized curve, honoring `max_degree`.
pub fn evaluate_slice_capped(
    p: &Parametrization,
    m: u32,
    ord: &MonomialOrder,
    max_degree: u32,
) -> Result<IdealSlice> {
    if m > max_degree {
        return Err(Error::DegreeCap { degree: m, cap: max_degree });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    if ord.num_variables() != p.num_coordinates {
        return Err(Error::CoordinateMismatch(format!(
            "order on {} variables, parametrization in {} coordinates",
            ord.num_variables(),
            p.num_coordinates
        )));
    }
    let mut monomials = Monomial::all(p.num_coordinates, m as usize);
    ord.sort_descending(&mut monomials);
    let eval = Evaluator::new(p, m);

    // pivot column of the image space -> (reduced image, combination of standard monomials)
    let mut basis: BTreeMap<usize, (Sparse, Sparse)> = BTreeMap::new();
    let mut standard = vec![];
    let mut rows = vec![];
    for j in (0..monomials.len()).rev() {
        let mut v = eval.image(&monomials[j]);
        let mut combo = Sparse::new();
        combo.insert(j, Q::one());
        while let Some((&col, x)) = v.iter().next_back() {
            match basis.get(&col) {
                Some((row, rc)) => {
                    let f = x.clone();
                    axpy(&mut v, &f, row);
                    axpy(&mut combo, &f, rc);
                }
                None => break,
            }
        }
        match v.iter().next_back().map(|(c, x)| (*c, x.clone())) {
            Some((col, lead)) => {
                let inv = lead.recip();
                let v = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                let combo = combo.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                basis.insert(col, (v, combo));
                standard.push(j);
            }
            None => {
                let tail = combo
                    .into_iter()
                    .filter(|(k, _)| *k != j)
                    .map(|(monomial, coefficient)| TailTerm { monomial, coefficient })
                    .collect();
                rows.push(KernelRow { leading: j, tail });
            }
        }
    }
    standard.reverse();
    rows.reverse();
    Ok(IdealSlice { degree: m, order: ord.clone(), monomials, standard, rows })
}

pub fn evaluate_slice(p: &Parametrization, m: u32, ord: &MonomialOrder) -> Result<IdealSlice> {
    evaluate_slice_capped(p, m, ord, DEFAULT_MAX_DEGREE)
}
