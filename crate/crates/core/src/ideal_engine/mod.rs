//! Degree slices of ideals by exact linear algebra, standard monomials, and
//! Hilbert–Mumford indices.

mod index;
mod monomial;
mod slice;

pub use index::{
    chow_index_sign, extrapolate_index, hilbert_index, hilbert_index_with, hilbert_polynomial,
    index_table, point_index, remainder_count, IndexOptions, IndexReport,
};
pub use monomial::{Monomial, MonomialOrder};
pub use slice::{evaluate_slice, evaluate_slice_capped, IdealSlice, KernelRow, TailTerm, DEFAULT_MAX_DEGREE};

use crate::families::Parametrization;
use crate::Result;

pub fn initial_monomials(slice: &IdealSlice) -> Vec<Monomial> {
    slice.initial_monomials()
}

pub fn standard_monomials(slice: &IdealSlice) -> Vec<Monomial> {
    slice.standard_monomials()
}

/// Slice under the default order for a given weight vector.
pub fn slice_for(p: &Parametrization, weights: &[i64], m: u32) -> Result<IdealSlice> {
    let ord = MonomialOrder::new(crate::families::OneParamSubgroup::new(weights.to_vec()));
    evaluate_slice(p, m, &ord)
}
