//! Exact Stanley depth of `S/I` and `I` through interval partitions of the
//! characteristic poset.
//!
//! For a bound `g` (the lcm of the generators) the poset holds the exponent
//! vectors `c <= g` with `x^c ∉ I` (quotient) or `x^c ∈ I` (ideal), and
//! `ρ(c) = #{i : c_i = g_i}`. The Stanley depth is the largest `k` admitting a
//! partition into intervals `[l, d]` with `ρ(d) >= k` for every interval.
//!
//! Variables outside the support of `g` have `g_i = 0`, so they add one to
//! every `ρ`; they are kept out of the poset and added back at the end.
//!
//! Deciding `sdepth >= k` is an exact cover problem: elements with `ρ < k`
//! must be covered exactly once, the others at most once. For squarefree
//! ideals an interval `[l, d]` with `|l| <= k <= |d|` splits into intervals
//! whose tops all have size exactly `k`, so only those tops are offered.

use serde::Serialize;

use crate::dlx::ExactCover;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Quotient,
    Ideal,
}

pub const POSET_CELL_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct CharacteristicPoset {
    mode: Mode,
    nvars: usize,
    /// Full-length bound vector.
    g: Vec<u8>,
    /// Variables with `g_i > 0`.
    active: Vec<usize>,
    /// Mixed-radix strides over the active coordinates.
    strides: Vec<usize>,
    cells: usize,
    member: Vec<bool>,
    elements: Vec<usize>,
    squarefree: bool,
}

impl CharacteristicPoset {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn g(&self) -> &[u8] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of variables outside the support of `g`.
    pub fn inert(&self) -> usize {
        self.nvars - self.active.len()
    }

    fn digit(&self, cell: usize, k: usize) -> usize {
        cell / self.strides[k] % (self.g[self.active[k]] as usize + 1)
    }

    /// `ρ` restricted to the active coordinates.
    fn rho(&self, cell: usize) -> usize {
        (0..self.active.len()).filter(|&k| self.digit(cell, k) == self.g[self.active[k]] as usize).count()
    }

    fn exponents(&self, cell: usize) -> Vec<u8> {
        let mut e = vec![0u8; self.nvars];
        for (k, &v) in self.active.iter().enumerate() {
            e[v] = self.digit(cell, k) as u8;
        }
        e
    }

    /// All cells `c` with `lo <= c <= hi`.
    fn box_cells(&self, lo: usize, hi: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        for k in 0..self.active.len() {
            let (a, b) = (self.digit(lo, k), self.digit(hi, k));
            out = out.iter().flat_map(|&base| (a..=b).map(move |d| base + d * self.strides[k])).collect();
        }
        out
    }

    /// Exponent vectors of the elements, in cell order.
    pub fn elements(&self) -> Vec<Vec<u8>> {
        self.elements.iter().map(|&c| self.exponents(c)).collect()
    }

    /// Full `ρ` (including inert variables) of an exponent vector.
    pub fn rho_of(&self, e: &[u8]) -> usize {
        (0..self.nvars).filter(|&i| e[i] == self.g[i]).count()
    }

    fn is_maximal(&self, cell: usize) -> bool {
        (0..self.active.len())
            .all(|k| self.digit(cell, k) == self.g[self.active[k]] as usize || !self.member[cell + self.strides[k]])
    }
}

pub fn build_poset(ideal: &MonomialIdeal, mode: Mode) -> Result<CharacteristicPoset> {
    let nvars = ideal.nvars();
    let g = ideal.lcm().exps().to_vec();
    let active: Vec<usize> = (0..nvars).filter(|&i| g[i] > 0).collect();
    let mut strides = Vec::with_capacity(active.len());
    let mut cells = 1usize;
    for &v in &active {
        strides.push(cells);
        cells = cells.checked_mul(g[v] as usize + 1).filter(|&c| c <= POSET_CELL_CAP).ok_or(Error::TooLarge {
            what: "characteristic poset cells",
            value: usize::MAX,
            cap: POSET_CELL_CAP,
        })?;
    }
    let mut poset = CharacteristicPoset {
        mode,
        nvars,
        squarefree: ideal.is_squarefree(),
        g,
        active,
        strides,
        cells,
        member: vec![false; cells],
        elements: Vec::new(),
    };
    for cell in 0..cells {
        let inside = ideal.contains(&Monomial::new(poset.exponents(cell)));
        if inside == (mode == Mode::Ideal) {
            poset.member[cell] = true;
            poset.elements.push(cell);
        }
    }
    Ok(poset)
}

/// A partition of the poset into intervals `[lower, upper]`, as full-length
/// exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: Vec<u8>,
    pub upper: Vec<u8>,
}

/// Outcome of a feasibility query.
#[derive(Clone, Debug)]
pub struct Feasibility {
    pub witness: Option<IntervalPartition>,
    pub search_nodes: u64,
    pub pruned_by_counting: bool,
}

/// Necessary condition for a squarefree poset: with all tops of size `k`,
/// the number `m_j` of intervals whose bottom has size `j` is forced by
/// `f_i = Σ_{j<=i} m_j C(k-j, i-j)` and must be nonnegative.
fn counting_bound_holds(f: &[i128], k: usize) -> bool {
    let binom = |n: usize, r: usize| -> i128 { (0..r).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) };
    let mut m = vec![0i128; k + 1];
    for i in 0..=k {
        let covered: i128 = (0..i).map(|j| m[j] * binom(k - j, i - j)).sum();
        m[i] = f.get(i).copied().unwrap_or(0) - covered;
        if m[i] < 0 {
            return false;
        }
    }
    true
}

/// Decides whether the poset admits an interval partition with every
/// `ρ(upper) >= k`, returning a witness when it does.
pub fn sdepth_at_least_poset(poset: &CharacteristicPoset, k: usize) -> Feasibility {
    let inert = poset.inert();
    let local = k.saturating_sub(inert);
    let singletons = |cells: &[usize]| IntervalPartition {
        intervals: cells.iter().map(|&c| Interval { lower: poset.exponents(c), upper: poset.exponents(c) }).collect(),
    };
    if local == 0 {
        return Feasibility { witness: Some(singletons(&poset.elements)), search_nodes: 0, pruned_by_counting: false };
    }
    if poset.squarefree {
        let mut f = vec![0i128; poset.active.len() + 1];
        for &c in &poset.elements {
            f[c.count_ones() as usize] += 1;
        }
        if local > poset.active.len() || !counting_bound_holds(&f, local) {
            let feasible_empty = poset.elements.iter().all(|&c| poset.rho(c) >= local);
            return Feasibility {
                witness: feasible_empty.then(|| singletons(&poset.elements)),
                search_nodes: 0,
                pruned_by_counting: !feasible_empty,
            };
        }
    }

    // item numbering: primary (ρ < k) first, then secondary
    let mut item_of = vec![usize::MAX; poset.cells];
    let (low, high): (Vec<usize>, Vec<usize>) = poset.elements.iter().partition(|&&c| poset.rho(c) < local);
    for (idx, &c) in low.iter().chain(&high).enumerate() {
        item_of[c] = idx;
    }
    let mut options: Vec<Vec<usize>> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let tops = poset.elements.iter().copied().filter(|&d| {
        let r = poset.rho(d);
        if poset.squarefree {
            r == local
        } else {
            r >= local
        }
    });
    for d in tops {
        for l in poset.box_cells(0, d) {
            if l == d || !poset.member[l] {
                continue;
            }
            let body = poset.box_cells(l, d);
            if !body.iter().all(|&c| poset.member[c]) {
                continue;
            }
            if !body.iter().any(|&c| item_of[c] < low.len()) {
                continue;
            }
            options.push(body.iter().map(|&c| item_of[c]).collect());
            spans.push((l, d));
        }
    }
    let mut cover = ExactCover::new(low.len(), high.len(), &options);
    let solution = cover.solve();
    let witness = solution.map(|rows| {
        let mut used = vec![false; poset.cells];
        let mut intervals = Vec::new();
        for r in rows {
            let (l, d) = spans[r];
            for c in poset.box_cells(l, d) {
                used[c] = true;
            }
            intervals.push(Interval { lower: poset.exponents(l), upper: poset.exponents(d) });
        }
        for &c in &poset.elements {
            if !used[c] {
                intervals.push(Interval { lower: poset.exponents(c), upper: poset.exponents(c) });
            }
        }
        intervals.sort_by(|x, y| (&x.lower, &x.upper).cmp(&(&y.lower, &y.upper)));
        IntervalPartition { intervals }
    });
    Feasibility { witness, search_nodes: cover.nodes_visited(), pruned_by_counting: false }
}

pub fn sdepth_at_least(ideal: &MonomialIdeal, mode: Mode, k: usize) -> Result<Feasibility> {
    Ok(sdepth_at_least_poset(&build_poset(ideal, mode)?, k))
}

#[derive(Clone, Debug, Serialize)]
pub struct StanleyDepth {
    pub value: usize,
    pub witness: IntervalPartition,
}

/// Exact Stanley depth: descends from the bound given by maximal elements
/// (which must be tops) and returns the first feasible `k`.
pub fn sdepth_exact(ideal: &MonomialIdeal, mode: Mode) -> Result<StanleyDepth> {
    match mode {
        Mode::Ideal if ideal.is_zero() => return Err(Error::ZeroIdeal),
        Mode::Quotient if ideal.is_unit() => return Err(Error::Undefined("S/I is zero".into())),
        _ => {}
    }
    let poset = build_poset(ideal, mode)?;
    let upper = poset
        .elements
        .iter()
        .filter(|&&c| poset.is_maximal(c))
        .map(|&c| poset.rho(c))
        .min()
        .expect("nonempty poset has a maximal element")
        + poset.inert();
    for k in (0..=upper).rev() {
        if let Some(witness) = sdepth_at_least_poset(&poset, k).witness {
            return Ok(StanleyDepth { value: k, witness });
        }
    }
    unreachable!("k = 0 is always feasible")
}

/// Re-checks a partition from scratch against the ideal: every interval lies
/// in the poset, intervals are pairwise disjoint and cover it. Returns the
/// partition's value `min ρ(upper)`.
pub fn verify_partition(
    ideal: &MonomialIdeal,
    mode: Mode,
    partition: &IntervalPartition,
) -> std::result::Result<usize, String> {
    let g = ideal.lcm();
    let g = g.exps();
    let n = ideal.nvars();
    let in_poset = |e: &[u8]| {
        e.iter().zip(g).all(|(x, y)| x <= y) && ideal.contains(&Monomial::new(e.to_vec())) == (mode == Mode::Ideal)
    };
    let mut seen = std::collections::HashSet::new();
    for iv in &partition.intervals {
        if iv.lower.len() != n || iv.upper.len() != n {
            return Err("wrong arity".into());
        }
        if !iv.lower.iter().zip(&iv.upper).all(|(a, b)| a <= b) {
            return Err(format!("lower {:?} is not below upper {:?}", iv.lower, iv.upper));
        }
        // enumerate the interval coordinate by coordinate
        let mut members: Vec<Vec<u8>> = vec![Vec::new()];
        for i in 0..n {
            members = members
                .into_iter()
                .flat_map(|p| {
                    (iv.lower[i]..=iv.upper[i]).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        for e in members {
            if !in_poset(&e) {
                return Err(format!("{e:?} is not in the poset"));
            }
            if !seen.insert(e.clone()) {
                return Err(format!("{e:?} is covered twice"));
            }
        }
    }
    let mut total = 0usize;
    let mut cur = vec![0u8; n];
    loop {
        if in_poset(&cur) {
            total += 1;
        }
        let mut i = 0;
        while i < n && cur[i] == g[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
    }
    if total != seen.len() {
        return Err(format!("partition covers {} of {} elements", seen.len(), total));
    }
    partition
        .intervals
        .iter()
        .map(|iv| (0..n).filter(|&i| iv.upper[i] == g[i]).count())
        .min()
        .ok_or_else(|| "empty partition".to_string())
}
