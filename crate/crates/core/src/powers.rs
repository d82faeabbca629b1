//! Depth of powers `S/I^t` for Spread and Chained pairs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::resolutions::{betti_koszul_oracle, depth_from_pd};
use crate::seqpair::SequencePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerBounds {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub upper: i64,
    pub lower: i64,
}

fn require_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::OutOfRange("power exponent t must be at least 1".into()));
    }
    Ok(())
}

fn mismatch(expected: &'static str, sp: &SequencePair) -> Error {
    Error::ShapeMismatch { expected, found: format!("{:?}", sp.classify().tag) }
}

/// `depth = sdepth = n - s` of `S/I^t` for pairs with every `a_{k+2} > b_k + 1`
/// (including Path pairs of that form, and every pair with `s <= 2`).
pub fn power_value_spread(sp: &SequencePair, t: usize) -> Result<usize> {
    require_t(t)?;
    if !sp.is_spread() {
        return Err(mismatch("Spread", sp));
    }
    Ok(sp.n() - sp.s())
}

/// `n - s + max(⌊(s - t + 1)/3⌋, 0)`.
pub fn ds_lower_closed_form(s: usize, t: usize, n: usize) -> i64 {
    let bonus = (s as i64 - t as i64 + 1).max(0) / 3;
    n as i64 - s as i64 + bonus
}

/// The lower-bound recursion
/// `d(s,t) = min(d(s-1,t-1) - 1, d(s-2,t) - 1, d(s-3,t) - 2)` with
/// `d(s,t) = n - s` for `s <= 2` and `d(s,1) = n - s + ⌊s/3⌋`.
pub fn ds_lower_recursion(s: usize, t: usize, n: usize) -> i64 {
    assert!(t >= 1, "t must be at least 1");
    let mut memo = HashMap::new();
    // the recursion is n + f(s, t), so evaluate f once with n = 0
    n as i64 + ds_offset(s, t, &mut memo)
}

fn ds_offset(s: usize, t: usize, memo: &mut HashMap<(usize, usize), i64>) -> i64 {
    if s <= 2 {
        return -(s as i64);
    }
    if t == 1 {
        return -(s as i64) + (s / 3) as i64;
    }
    if let Some(&v) = memo.get(&(s, t)) {
        return v;
    }
    let v = (ds_offset(s - 1, t - 1, memo) - 1).min(ds_offset(s - 2, t, memo) - 1).min(ds_offset(s - 3, t, memo) - 2);
    memo.insert((s, t), v);
    v
}

/// Bounds for pairs with every `a_{k+2} = b_k + 1`.
pub fn power_bounds_chained(sp: &SequencePair, t: usize) -> Result<PowerBounds> {
    require_t(t)?;
    if !sp.is_chained() {
        return Err(mismatch("Chained", sp));
    }
    let (s, n) = (sp.s(), sp.n());
    Ok(PowerBounds { s, t, n, upper: n as i64 - s as i64 + (s / 3) as i64, lower: ds_lower_closed_form(s, t, n) })
}

/// `depth(S/I^t)` as `n - pd`, from the Koszul oracle on the expanded power.
pub fn power_depth_oracle(sp: &SequencePair, t: usize) -> Result<usize> {
    require_t(t)?;
    let power = MonomialIdeal::generators(sp).power(t)?;
    let table = betti_koszul_oracle(&power)?;
    depth_from_pd(sp.n(), &table)
}
