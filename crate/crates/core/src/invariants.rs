//! Recursive and closed-form invariants of `S/I_{α,β}`.
//!
//! `φ` counts down along `α'` (when `j = 1`) or `α''` (when `j > 1`) and
//! equals both depth and Stanley depth of `S/I`; `ψ` counts down along `α'`
//! only and equals the Krull dimension.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimal_varsets, VarSet};
use crate::seqpair::{SequencePair, ShapeTag};

type Key = (Vec<usize>, Vec<usize>);

/// Memo table for `n - φ`, which depends only on the translated pair.
/// Safe to share between threads.
#[derive(Default)]
pub struct PhiMemo {
    deficits: Mutex<HashMap<Key, usize>>,
}

impl PhiMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn phi(&self, sp: &SequencePair) -> usize {
        sp.n() - self.deficit(sp)
    }

    fn deficit(&self, sp: &SequencePair) -> usize {
        if sp.is_empty() {
            return 0;
        }
        let key = sp.shape_key();
        if let Some(&d) = self.deficits.lock().unwrap().get(&key) {
            return d;
        }
        let next = if sp.j_index().expect("nonempty") == 1 {
            sp.derive_prime().expect("nonempty")
        } else {
            sp.derive_double_prime().expect("j > 1")
        };
        let d = self.deficit(&next) + 1;
        self.deficits.lock().unwrap().insert(key, d);
        d
    }

    pub fn len(&self) -> usize {
        self.deficits.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn phi(sp: &SequencePair) -> usize {
    PhiMemo::new().phi(sp)
}

pub fn psi(sp: &SequencePair) -> usize {
    let mut steps = 0;
    let mut cur = sp.clone();
    while !cur.is_empty() {
        cur = cur.derive_prime().expect("nonempty");
        steps += 1;
    }
    sp.n() - steps
}

/// `n + 1 - ⌊(n+1)/(m+1)⌋ - ⌈(n+1)/(m+1)⌉`, depth of `S/I_{n,m}`.
pub fn path_phi(n: usize, m: usize) -> usize {
    let (q, d) = (n + 1, m + 1);
    q - q / d - q.div_ceil(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub phi: usize,
    pub psi: usize,
    pub depth_quotient: usize,
    pub sdepth_quotient: usize,
    pub dim_quotient: usize,
    /// Absent for the zero ideal.
    pub depth_ideal: Option<usize>,
    pub sdepth_ideal_lower: Option<usize>,
    pub closed_form_used: Option<ShapeTag>,
}

pub fn invariant_report(sp: &SequencePair) -> InvariantReport {
    let phi = phi(sp);
    let psi = psi(sp);
    let (n, s) = (sp.n(), sp.s());
    let ideal_side = (s >= 1).then_some(());
    let closed = closed_form_phi(sp);
    if let Some((value, _)) = closed {
        debug_assert_eq!(value, phi);
    }
    InvariantReport {
        phi,
        psi,
        depth_quotient: phi,
        sdepth_quotient: phi,
        dim_quotient: psi,
        depth_ideal: ideal_side.map(|_| phi + 1),
        sdepth_ideal_lower: ideal_side.map(|_| (phi + 1).max(n - s / 2)),
        closed_form_used: closed.map(|(_, tag)| tag),
    }
}

/// Ideal-side fields of the report, failing on the zero ideal.
pub fn ideal_depth_bounds(sp: &SequencePair) -> Result<(usize, usize)> {
    let report = invariant_report(sp);
    match (report.depth_ideal, report.sdepth_ideal_lower) {
        (Some(d), Some(l)) => Ok((d, l)),
        _ => Err(Error::EmptyPair),
    }
}

/// Closed value of `φ` for shapes that have one.
pub fn closed_form_phi(sp: &SequencePair) -> Option<(usize, ShapeTag)> {
    let (n, s) = (sp.n(), sp.s());
    let tag = sp.classify().tag;
    let value = match tag {
        ShapeTag::Empty => n,
        ShapeTag::Principal => n - 1,
        ShapeTag::Path(m) => path_phi(n, m),
        ShapeTag::Spread => n - s,
        ShapeTag::Chained => n - s + s / 3,
        ShapeTag::Generic => return None,
    };
    Some((value, tag))
}

/// `n - ⌈s/2⌉` when every `a_{k+2} > b_k + 1` and every `b_i >= a_{i+1}`.
pub fn dim_closed_form(sp: &SequencePair) -> Option<usize> {
    let overlapping = sp.a().iter().skip(1).zip(sp.b()).all(|(next_a, b)| b >= next_a);
    (sp.s() >= 1 && sp.is_spread() && overlapping).then(|| sp.n() - sp.s().div_ceil(2))
}

/// Minimal primes of `I_{α,β}` by peeling the first block of intervals.
///
/// For `j = 1`, `I = ∩_{a_1 <= c <= b_1} (x_c, I')`. For `j > 1`, peeling
/// `x_{b_1}, x_{b_1 - 1}, …, x_{a_2}` gives
/// `I = (w, I'') ∩ ∩_{a_2 <= c <= b_1} (x_c, [b_1+1, b_m], I')` where `w`
/// covers `[a_1, a_2 - 1]` and `m` is the first index `<= j` with `a_m > c`
/// (the interval is omitted when there is none).
pub fn primary_decomposition(sp: &SequencePair) -> Result<Vec<VarSet>> {
    if sp.is_empty() {
        return Err(Error::EmptyPair);
    }
    let mut memo = HashMap::new();
    Ok(min_primes(sp, &mut memo))
}

fn min_primes(sp: &SequencePair, memo: &mut HashMap<SequencePair, Vec<VarSet>>) -> Vec<VarSet> {
    if sp.is_empty() {
        return vec![VarSet(0)];
    }
    if let Some(hit) = memo.get(sp) {
        return hit.clone();
    }
    let (a, b) = (sp.a(), sp.b());
    let j = sp.j_index().expect("nonempty");
    let prime = sp.derive_prime().expect("nonempty");
    let mut candidates = Vec::new();
    let extend = |vars: std::ops::RangeInclusive<usize>, primes: &[VarSet], out: &mut Vec<VarSet>| {
        for c in vars {
            out.extend(primes.iter().map(|p| p.with(c)));
        }
    };
    if j == 1 {
        let rest = min_primes(&prime, memo);
        extend(a[0]..=b[0], &rest, &mut candidates);
    } else {
        let double = sp.derive_double_prime().expect("j > 1");
        let rest = min_primes(&double, memo);
        extend(a[0]..=a[1] - 1, &rest, &mut candidates);
        for c in a[1]..=b[0] {
            let component = match (1..j).find(|&i| a[i] > c) {
                Some(m) => sp.with_head(b[0] + 1, b[m], j),
                None => prime.clone(),
            };
            let rest = min_primes(&component, memo);
            extend(c..=c, &rest, &mut candidates);
        }
    }
    let primes = minimal_varsets(candidates);
    memo.insert(sp.clone(), primes.clone());
    primes
}
