//! Skew product groups `G(i,j) = ⟨t, s_{p^{e-1-i}, j}⟩` and their invariants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    center, closure_with_cap, commutator_subgroup, exponent, quotient_exponent, split_metacyclic_witness, translation,
    GroupClosure,
};
use crate::skew::s_ij;
use crate::zmod::Modulus;

/// `G(i,j)` for `1 <= i <= e-1`, `0 <= j < p^{i-1}`; its order is `p^{e+i}`.
pub fn skew_product_group(i: u32, j: u64, m: &Modulus, cap: usize) -> Result<GroupClosure> {
    let e = m.e();
    if e < 2 || i < 1 || i > e - 1 {
        return Err(Error::OutOfRange(format!("need 1 <= i <= e-1, got i = {i}, e = {e}")));
    }
    if j >= m.p_pow(i - 1) {
        return Err(Error::OutOfRange(format!("need j < p^(i-1) = {}, got j = {j}", m.p_pow(i - 1))));
    }
    let s = s_ij(m.p_pow(e - 1 - i), j, m)?;
    let g = closure_with_cap(&[translation(m), s.into_perm()], cap)?;
    let expected = m.p_pow(e) * m.p_pow(i);
    if g.order() as u64 != expected {
        return Err(Error::Consistency(format!("|G({i},{j})| = {} but expected {expected}", g.order())));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAnalysis {
    pub i: u32,
    pub j: u64,
    pub order: usize,
    pub split: bool,
    /// Orders of a normal cyclic subgroup and a cyclic complement, when split.
    pub split_orders: Option<(u64, u64)>,
    pub commutator_order: usize,
    pub quotient_exponent: u64,
    pub center_order: usize,
    pub exponent: u64,
}

pub fn analyze_group(i: u32, j: u64, m: &Modulus, cap: usize) -> Result<GroupAnalysis> {
    let g = skew_product_group(i, j, m, cap)?;
    let derived = commutator_subgroup(&g)?;
    let witness = split_metacyclic_witness(&g);
    Ok(GroupAnalysis {
        i,
        j,
        order: g.order(),
        split: witness.is_some(),
        split_orders: witness.map(|(x, y)| (x.order(), y.order())),
        commutator_order: derived.order(),
        quotient_exponent: quotient_exponent(&g, &derived)?,
        center_order: center(&g)?.order(),
        exponent: exponent(&g),
    })
}
