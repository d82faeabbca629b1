//! Graded Betti numbers of interval ideals.
//!
//! Two independent routes:
//! * [`betti_recursive`] splits `I = (u) + Ī` along the first generator and
//!   adds the tables of `(u)`, `Ī` and the shifted table of `(Ī : u)`;
//! * [`betti_koszul_oracle`] computes `β_{i,a}(I) = dim H̃_{i-1}(K^a(I))`
//!   for every multidegree `a` in the lcm lattice, where
//!   `K^a(I) = {τ squarefree : x^{a-τ} ∈ I}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, rank_rational};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::seqpair::SequencePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Subject {
    Ideal,
    Quotient,
}

/// Sparse graded Betti table `(i, t) ↦ β_{i,t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
    subject: Subject,
}

#[derive(Serialize)]
struct Entry {
    i: usize,
    t: usize,
    mult: u64,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self.entries.iter().map(|(&(i, t), &mult)| Entry { i, t, mult }).collect();
        entries.serialize(serializer)
    }
}

impl BettiTable {
    pub fn new(subject: Subject) -> Self {
        Self { entries: BTreeMap::new(), subject }
    }

    pub fn from_entries(subject: Subject, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut table = Self::new(subject);
        for (k, v) in entries {
            table.add(k.0, k.1, v);
        }
        table
    }

    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn get(&self, i: usize, t: usize) -> u64 {
        self.entries.get(&(i, t)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn add(&mut self, i: usize, t: usize, mult: u64) {
        if mult > 0 {
            *self.entries.entry((i, t)).or_insert(0) += mult;
        }
    }

    fn add_shifted(&mut self, other: &BettiTable, di: usize, dt: usize) {
        for (&(i, t), &m) in &other.entries {
            self.add(i + di, t + dt, m);
        }
    }

    /// Table of `I` from the table of `S/I` (drops `β_{0,0}`).
    pub fn to_ideal(&self) -> BettiTable {
        match self.subject {
            Subject::Ideal => self.clone(),
            Subject::Quotient => Self::from_entries(
                Subject::Ideal,
                self.entries.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, t), &m)| ((i - 1, t), m)),
            ),
        }
    }

    /// Table of `S/I` from the table of a proper ideal `I`.
    pub fn to_quotient(&self) -> BettiTable {
        match self.subject {
            Subject::Quotient => self.clone(),
            Subject::Ideal => {
                let mut q = Self::new(Subject::Quotient);
                q.add(0, 0, 1);
                q.add_shifted(self, 1, 0);
                q
            }
        }
    }

    /// Total Betti number in homological degree `i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(&(k, _), _)| k == i).map(|(_, &m)| m).sum()
    }

    /// `Σ_{i,t} (-1)^i β_{i,t} t^t` as a coefficient vector.
    pub fn alternating_sum(&self) -> Vec<i64> {
        let max_t = self.entries.keys().map(|&(_, t)| t).max().unwrap_or(0);
        let mut out = vec![0i64; max_t + 1];
        for (&(i, t), &m) in &self.entries {
            out[t] += if i % 2 == 0 { m as i64 } else { -(m as i64) };
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay-style: columns are `i`, rows are `t - i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero table)");
        }
        let max_i = self.entries.keys().map(|&(i, _)| i).max().unwrap();
        let rows: Vec<usize> = self.entries.keys().map(|&(i, t)| t - i).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let width = self
            .entries
            .values()
            .map(|m| m.to_string().len())
            .max()
            .unwrap()
            .max(max_i.to_string().len())
            .max((0..=max_i).map(|i| self.total(i).to_string().len()).max().unwrap());
        write!(f, "{:>7}", "")?;
        for i in 0..=max_i {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for i in 0..=max_i {
            write!(f, " {:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>7}", format!("{r}:"))?;
            for i in 0..=max_i {
                match self.get(i, i + r) {
                    0 => write!(f, " {:>width$}", ".")?,
                    m => write!(f, " {m:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Projective dimension: the largest homological index with an entry.
pub fn pd(bt: &BettiTable) -> Result<usize> {
    bt.entries.keys().map(|&(i, _)| i).max().ok_or(Error::EmptyTable)
}

/// Castelnuovo–Mumford regularity `max(t - i)`.
pub fn reg(bt: &BettiTable) -> Result<usize> {
    bt.entries.keys().map(|&(i, t)| t - i).max().ok_or(Error::EmptyTable)
}

/// `n - pd(S/I)` (Auslander–Buchsbaum). Accepts either subject.
pub fn depth_from_pd(n: usize, bt: &BettiTable) -> Result<usize> {
    let q = bt.to_quotient();
    Ok(n - pd(&q)?)
}

/// Betti table of `I_{α,β}` by the splitting recursion.
pub fn betti_recursive(sp: &SequencePair) -> Result<BettiTable> {
    if sp.is_empty() {
        return Err(Error::EmptyPair);
    }
    let mut memo = HashMap::new();
    let entries = recurse(sp, &mut memo);
    Ok(BettiTable { entries, subject: Subject::Ideal })
}

type Key = (Vec<usize>, Vec<usize>);

fn recurse(sp: &SequencePair, memo: &mut HashMap<Key, BTreeMap<(usize, usize), u64>>) -> BTreeMap<(usize, usize), u64> {
    if sp.is_empty() {
        return BTreeMap::new();
    }
    let key = sp.shape_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let deg_u = sp.degree(0);
    let mut table = BettiTable::new(Subject::Ideal);
    table.add(0, deg_u, 1);
    let j = sp.j_index().expect("nonempty");
    // (Ī : u) is I' when j = 1 and I'' when j > 1
    let (rest, colon) = if j == 1 {
        let prime = sp.derive_prime().expect("nonempty");
        (prime.clone(), prime)
    } else {
        (sp.bar().expect("nonempty"), sp.derive_double_prime().expect("j > 1"))
    };
    let rest_table = BettiTable { entries: recurse(&rest, memo), subject: Subject::Ideal };
    let colon_table = BettiTable { entries: recurse(&colon, memo), subject: Subject::Ideal };
    table.add_shifted(&rest_table, 0, 0);
    table.add_shifted(&colon_table, 1, deg_u);
    memo.insert(key, table.entries.clone());
    table.entries
}

/// Field used for the homology ranks in the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    /// A prime below `2^31`.
    ModP(u64),
}

pub const ORACLE_VAR_CAP: usize = 14;
pub const ORACLE_LATTICE_CAP: usize = 1 << 20;

/// Betti table of `S/I` from Koszul simplicial complexes, over the rationals.
pub fn betti_koszul_oracle(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_koszul_oracle_over(ideal, Field::Rational)
}

pub fn betti_koszul_oracle_over(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    let mut quotient = BettiTable::new(Subject::Quotient);
    if ideal.is_unit() {
        return Ok(quotient);
    }
    quotient.add(0, 0, 1);
    if ideal.is_zero() {
        return Ok(quotient);
    }
    let g = ideal.lcm();
    let active: Vec<usize> = (0..g.nvars()).filter(|&i| g.exps()[i] > 0).collect();
    if active.len() > ORACLE_VAR_CAP {
        return Err(Error::TooLarge { what: "variables in the lcm support", value: active.len(), cap: ORACLE_VAR_CAP });
    }
    let cells = active.iter().try_fold(1usize, |acc, &i| acc.checked_mul(g.exps()[i] as usize + 1));
    match cells {
        Some(c) if c <= ORACLE_LATTICE_CAP => {}
        _ => {
            return Err(Error::TooLarge {
                what: "multidegree cells below the lcm",
                value: cells.unwrap_or(usize::MAX),
                cap: ORACLE_LATTICE_CAP,
            })
        }
    }
    let lattice = lcm_lattice(ideal.gens());
    let per_degree: Vec<Vec<(usize, usize, u64)>> = lattice
        .par_iter()
        .map(|a| koszul_homology(ideal.gens(), a, field).into_iter().map(|(i, dim)| (i + 1, a.degree(), dim)).collect())
        .collect();
    for (i, t, m) in per_degree.into_iter().flatten() {
        quotient.add(i, t, m);
    }
    Ok(quotient)
}

/// Every lcm of a nonempty subset of `gens`, sorted canonically.
fn lcm_lattice(gens: &[Monomial]) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let l = m.lcm(g);
                if seen.insert(l.clone()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.exps().cmp(y.exps())));
    out
}

/// Nonzero `(i, dim β_{i,a}(I))` for one multidegree `a`.
fn koszul_homology(gens: &[Monomial], a: &Monomial, field: Field) -> Vec<(usize, u64)> {
    let support: Vec<usize> = (0..a.nvars()).filter(|&v| a.exps()[v] > 0).collect();
    // K^a is generated by the facets {v : a_v > g_v} over generators g | a
    let facets: Vec<u32> = gens
        .iter()
        .filter(|g| g.divides(a))
        .map(|g| {
            support.iter().enumerate().filter(|(_, &v)| a.exps()[v] > g.exps()[v]).fold(0u32, |m, (k, _)| m | 1 << k)
        })
        .collect();
    if facets.is_empty() {
        return Vec::new();
    }
    // a vertex lying in every facet makes K^a a cone
    if facets.iter().fold(u32::MAX, |acc, &f| acc & f) != 0 {
        return Vec::new();
    }
    let nv = support.len();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); nv + 1];
    for tau in 0u32..(1 << nv) {
        if facets.iter().any(|&f| tau & !f == 0) {
            by_size[tau.count_ones() as usize].push(tau);
        }
    }
    let index: Vec<HashMap<u32, usize>> =
        by_size.iter().map(|faces| faces.iter().enumerate().map(|(k, &f)| (f, k)).collect()).collect();
    // rank of ∂ from faces of size k to faces of size k-1, for k >= 1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > nv || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&face| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                let mut sign = 1;
                for bit in 0..nv {
                    if face >> bit & 1 == 1 {
                        row[index[k - 1][&(face & !(1 << bit))]] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        match field {
            Field::Rational => rank_rational(&rows),
            Field::ModP(p) => rank_mod_p(&rows, p),
        }
    };
    let ranks: Vec<usize> = (0..=nv + 1).map(boundary_rank).collect();
    // faces of size k have dimension k-1; H̃_{k-1} = f - rank ∂_k - rank ∂_{k+1}
    (0..=nv)
        .filter_map(|k| {
            let dim = by_size[k].len() - ranks[k] - ranks[k + 1];
            (dim > 0).then_some((k, dim as u64))
        })
        .collect()
}

/// Whether `I = (u) + Ī` is an Eliahou–Kervaire splitting with the splitting
/// function described for interval ideals, checked exhaustively.
pub fn splitting_check(sp: &SequencePair) -> Result<bool> {
    if sp.is_empty() {
        return Err(Error::EmptyPair);
    }
    if sp.s() < 2 {
        return Err(Error::Undefined("splitting needs s >= 2".into()));
    }
    let n = sp.n();
    let gens: Vec<Monomial> = sp.intervals().map(|(lo, hi)| Monomial::interval(n, lo, hi)).collect();
    let u = gens[0].clone();
    let j_ideal = MonomialIdeal::new(n, vec![u.clone()])?;
    let l_ideal = MonomialIdeal::generators(&sp.bar()?);
    let meet = j_ideal.intersect(&l_ideal)?;

    let j = sp.j_index()?;
    // (w, φ(w), ψ(w))
    let mut map: Vec<(Monomial, Monomial, Monomial)> = Vec::new();
    if j == 1 {
        for uk in &gens[1..] {
            map.push((u.checked_mul(uk)?, u.clone(), uk.clone()));
        }
    } else {
        let (a, b) = (sp.a(), sp.b());
        map.push((Monomial::interval(n, a[0], b[1]), u.clone(), gens[1].clone()));
        for (k, uk) in gens.iter().enumerate().skip(j) {
            if k == j && a[j] == b[0] + 1 {
                continue;
            }
            map.push((u.checked_mul(uk)?, u.clone(), uk.clone()));
        }
    }
    Ok(verify_splitting(&j_ideal, &l_ideal, &meet, &map))
}

fn verify_splitting(
    j_ideal: &MonomialIdeal,
    l_ideal: &MonomialIdeal,
    meet: &MonomialIdeal,
    map: &[(Monomial, Monomial, Monomial)],
) -> bool {
    let domain: HashSet<&Monomial> = map.iter().map(|(w, _, _)| w).collect();
    if domain.len() != map.len() || domain != meet.gens().iter().collect() {
        return false;
    }
    let well_typed = map
        .iter()
        .all(|(w, phi, psi)| j_ideal.gens().contains(phi) && l_ideal.gens().contains(psi) && phi.lcm(psi) == *w);
    if !well_typed {
        return false;
    }
    let strictly_divides = |x: &Monomial, y: &Monomial| x.divides(y) && x != y;
    let nvars = j_ideal.nvars();
    (1u64..1 << map.len()).all(|subset| {
        let picked = map.iter().enumerate().filter(|(k, _)| subset >> k & 1 == 1).map(|(_, e)| e);
        let (mut lw, mut lphi, mut lpsi) = (Monomial::one(nvars), Monomial::one(nvars), Monomial::one(nvars));
        for (w, phi, psi) in picked {
            lw = lw.lcm(w);
            lphi = lphi.lcm(phi);
            lpsi = lpsi.lcm(psi);
        }
        strictly_divides(&lphi, &lw) && strictly_divides(&lpsi, &lw)
    })
}

/// Whether `(Ī : u)` equals `I''` (for `j > 1`) or `I'` (for `j = 1`).
pub fn bar_colon_matches(sp: &SequencePair) -> Result<bool> {
    let bar = MonomialIdeal::generators(&sp.bar()?);
    let u = Monomial::interval(sp.n(), sp.a()[0], sp.b()[0]);
    let expected = if sp.j_index()? == 1 { sp.derive_prime()? } else { sp.derive_double_prime()? };
    Ok(bar.colon(&u)? == MonomialIdeal::generators(&expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &[usize], b: &[usize], n: usize) -> SequencePair {
        SequencePair::validate(a.to_vec(), b.to_vec(), n).unwrap()
    }

    fn chained_four() -> SequencePair {
        pair(&[1, 2, 4, 6], &[3, 5, 7, 8], 8)
    }

    fn five_generators() -> SequencePair {
        pair(&[1, 2, 3, 6, 7], &[4, 5, 7, 8, 10], 10)
    }

    #[test]
    fn principal_and_complete_intersection() {
        let t = betti_recursive(&pair(&[2], &[4], 5)).unwrap();
        assert_eq!(t, BettiTable::from_entries(Subject::Ideal, [((0, 3), 1)]));
        assert_eq!((pd(&t), reg(&t)), (Ok(0), Ok(3)));

        let t = betti_recursive(&pair(&[1, 4], &[2, 6], 6)).unwrap();
        assert_eq!(t, BettiTable::from_entries(Subject::Ideal, [((0, 2), 1), ((0, 3), 1), ((1, 5), 1)]));
        assert_eq!(betti_recursive(&SequencePair::empty(3).unwrap()), Err(Error::EmptyPair));
    }

    #[test]
    fn oracle_small_cases() {
        let i = MonomialIdeal::new(2, vec![Monomial::new(vec![1, 1])]).unwrap();
        assert_eq!(
            betti_koszul_oracle(&i).unwrap(),
            BettiTable::from_entries(Subject::Quotient, [((0, 0), 1), ((1, 2), 1)])
        );
        let m = MonomialIdeal::new(2, vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]).unwrap();
        assert_eq!(
            betti_koszul_oracle(&m).unwrap(),
            BettiTable::from_entries(Subject::Quotient, [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)])
        );
        assert_eq!(
            betti_koszul_oracle(&MonomialIdeal::zero(3)).unwrap(),
            BettiTable::from_entries(Subject::Quotient, [((0, 0), 1)])
        );
        // (x1^2, x1x2, x2^2): β = 1, 3, 2
        let sq = MonomialIdeal::new(2, vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])])
            .unwrap()
            .power(2)
            .unwrap();
        assert_eq!(
            betti_koszul_oracle(&sq).unwrap(),
            BettiTable::from_entries(Subject::Quotient, [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)])
        );
    }

    #[test]
    fn worked_examples() {
        let q = betti_koszul_oracle(&MonomialIdeal::generators(&five_generators())).unwrap();
        assert_eq!(pd(&q), Ok(4));
        assert_eq!(depth_from_pd(10, &q), Ok(6));
        let rec = betti_recursive(&five_generators()).unwrap();
        assert_eq!(pd(&rec), Ok(3));
        assert_eq!(rec, q.to_ideal());

        let q = betti_koszul_oracle(&MonomialIdeal::generators(&chained_four())).unwrap();
        assert_eq!(depth_from_pd(8, &q), Ok(5));
        assert_eq!(betti_recursive(&chained_four()).unwrap(), q.to_ideal());
    }

    #[test]
    fn generator_counts() {
        let t = betti_recursive(&chained_four()).unwrap();
        assert_eq!(t.total(0), 4);
        assert_eq!(t.get(0, 3), 2);
        assert_eq!(t.get(0, 4), 2);
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_check(&chained_four()), Ok(true));
        assert_eq!(splitting_check(&pair(&[1, 4], &[2, 6], 6)), Ok(true));
        assert_eq!(splitting_check(&five_generators()), Ok(true));
        assert!(splitting_check(&pair(&[1], &[2], 3)).is_err());
        assert_eq!(bar_colon_matches(&chained_four()), Ok(true));
        assert_eq!(bar_colon_matches(&five_generators()), Ok(true));
    }

    #[test]
    fn conversions_and_display() {
        let q = BettiTable::from_entries(Subject::Quotient, [((0, 0), 1), ((1, 2), 1)]);
        assert_eq!(q.to_ideal(), BettiTable::from_entries(Subject::Ideal, [((0, 2), 1)]));
        assert_eq!(q.to_ideal().to_quotient(), q);
        assert_eq!(q.alternating_sum(), vec![1, 0, -1]);
        assert_eq!(pd(&BettiTable::new(Subject::Ideal)), Err(Error::EmptyTable));
        let shown = betti_recursive(&chained_four()).unwrap().to_string();
        assert!(shown.contains("total:"));
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"[{"i":0,"t":0,"mult":1},{"i":1,"t":2,"mult":1}]"#);
    }
}
