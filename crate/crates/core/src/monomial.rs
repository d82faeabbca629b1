//! Monomials and monomial ideals over `K[x_1, …, x_n]`.
//!
//! Ideals always hold a minimal generating set in canonical order (degree,
//! then lexicographic on exponent vectors), so two ideals are equal exactly
//! when their generator lists are.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::seqpair::SequencePair;

/// Exponent vector; index `i` is the exponent of `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn new(exps: Vec<u8>) -> Self {
        Self { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    /// `x_lo ⋯ x_hi` (1-based, inclusive).
    pub fn interval(nvars: usize, lo: usize, hi: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[lo - 1..hi].iter_mut().for_each(|e| *e = 1);
        Self { exps }
    }

    /// Squarefree monomial with the given support mask.
    pub fn from_mask(nvars: usize, mask: u64) -> Self {
        Self { exps: (0..nvars).map(|i| ((mask >> i) & 1) as u8).collect() }
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Support as a bit mask (bit `i` ↔ `x_{i+1}`).
    pub fn support(&self) -> u64 {
        debug_assert!(self.exps.len() <= 64);
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    /// `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.saturating_sub(b)).collect() }
    }

    fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// A set of variables, bit `i` ↔ `x_{i+1}`. Used for minimal primes of
/// squarefree ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(pub u64);

impl VarSet {
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, var: usize) -> VarSet {
        VarSet(self.0 | 1 << (var - 1))
    }

    /// 1-based variable labels in increasing order.
    pub fn vars(self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<_> = self.vars().iter().map(|v| format!("x{v}")).collect();
        write!(f, "({})", vars.join(", "))
    }
}

/// Keeps only the inclusion-minimal sets, sorted by (size, bits).
pub(crate) fn minimal_varsets(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| (s.len(), s.0));
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts `gens`.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::ArityMismatch(nvars, g.nvars()));
        }
        Ok(Self { nvars, gens: minimalize(gens) })
    }

    pub fn zero(nvars: usize) -> Self {
        Self { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Self { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// The interval ideal of a pair: generator `i` is `x_{a_i} ⋯ x_{b_i}`.
    pub fn generators(sp: &SequencePair) -> Self {
        let gens = sp.intervals().map(|(lo, hi)| Monomial::interval(sp.n(), lo, hi)).collect();
        // nested intervals are impossible for strictly increasing endpoints
        Self { nvars: sp.n(), gens: minimalize(gens) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `I ⊆ J`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Least common multiple of all generators (the unit monomial for `0`).
    pub fn lcm(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Generator supports as masks; only meaningful for squarefree ideals.
    pub fn masks(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::support).collect()
    }

    fn check_arity(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    /// `(I : u)`, generated by `g / gcd(g, u)`.
    pub fn colon(&self, u: &Monomial) -> Result<Self> {
        if u.nvars() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, u.nvars()));
        }
        Ok(Self { nvars: self.nvars, gens: minimalize(self.gens.iter().map(|g| g.colon(u)).collect()) })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_arity(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self { nvars: self.nvars, gens: minimalize(gens) })
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_arity(other)?;
        let gens = self.gens.iter().flat_map(|g| other.gens.iter().map(move |h| g.lcm(h))).collect();
        Ok(Self { nvars: self.nvars, gens: minimalize(gens) })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_arity(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.checked_mul(h)?);
            }
        }
        Ok(Self { nvars: self.nvars, gens: minimalize(gens) })
    }

    /// `I^t`; `I^0` is the unit ideal.
    pub fn power(&self, t: usize) -> Result<Self> {
        let mut acc = Self::unit(self.nvars);
        for _ in 0..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Whether `u` is a nonzerodivisor on `S/I`, i.e. `(I : u) = I`.
    pub fn is_regular(&self, u: &Monomial) -> Result<bool> {
        if self.contains(u) {
            return Err(Error::NotInQuotient);
        }
        Ok(self.colon(u)? == *self)
    }

    /// All inclusion-minimal variable sets meeting every generator, by
    /// exhaustive enumeration of subsets of the support in order of size.
    /// These are the minimal primes of a squarefree ideal.
    pub fn minimal_covers(&self) -> Result<Vec<VarSet>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let masks = self.masks();
        let support = masks.iter().fold(0u64, |acc, m| acc | m);
        let vars: Vec<usize> = (0..64).filter(|i| support >> i & 1 == 1).collect();
        if vars.len() > 26 {
            return Err(Error::TooLarge { what: "support size for cover enumeration", value: vars.len(), cap: 26 });
        }
        let mut found: Vec<VarSet> = Vec::new();
        for size in 0..=vars.len() {
            for_each_subset_of_size(vars.len(), size, |sel| {
                let cover =
                    vars.iter().enumerate().filter(|(k, _)| sel >> k & 1 == 1).fold(0u64, |m, (_, &v)| m | 1 << v);
                let cover = VarSet(cover);
                if masks.iter().all(|g| g & cover.0 != 0) && !found.iter().any(|f| f.is_subset(cover)) {
                    found.push(cover);
                }
            });
        }
        found.sort_by_key(|s| (s.len(), s.0));
        Ok(found)
    }

    /// Krull dimension of `S/I` for squarefree `I`, via minimum covers.
    pub fn dim_quotient(&self) -> Result<usize> {
        if self.is_zero() {
            return Ok(self.nvars);
        }
        let min = self.minimal_covers()?.iter().map(|c| c.len()).min().unwrap_or(0);
        Ok(self.nvars - min)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<_> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Removes duplicates and non-minimal generators, then sorts canonically.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(Monomial::canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // a divisor always has degree <= its multiple, so it is already kept
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Calls `f` on every `k`-subset of `0..n`, as a bit mask, in increasing
/// numeric order.
pub(crate) fn for_each_subset_of_size(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut sel: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while sel < limit {
        f(sel);
        // Gosper's hack
        let c = sel & sel.wrapping_neg();
        let r = sel + c;
        sel = (((r ^ sel) >> 2) / c) | r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u8]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u8]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| m(g)).collect()).unwrap()
    }

    fn ex24() -> SequencePair {
        SequencePair::validate(vec![1, 2, 4, 6], vec![3, 5, 7, 8], 8).unwrap()
    }

    fn ex114() -> SequencePair {
        SequencePair::validate(vec![1, 2, 3, 6, 7], vec![4, 5, 7, 8, 10], 10).unwrap()
    }

    #[test]
    fn generators_of_pairs() {
        let i = MonomialIdeal::generators(&ex24());
        assert_eq!(i.to_string(), "(x1x2x3, x6x7x8, x2x3x4x5, x4x5x6x7)");
        assert!(MonomialIdeal::generators(&SequencePair::empty(5).unwrap()).is_zero());
        let i = MonomialIdeal::generators(&ex114());
        assert_eq!(i.gens().len(), 5);
        assert!(i.contains(&Monomial::interval(10, 3, 7)));
    }

    #[test]
    fn colon_cases() {
        let i = MonomialIdeal::generators(&ex24());
        let v = Monomial::interval(8, 2, 3);
        let expected = ideal(8, &[&[1, 0, 0, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 1, 1, 1]]);
        assert_eq!(i.colon(&v).unwrap(), expected);
        assert_eq!(i.colon(&Monomial::one(8)).unwrap(), i);
        assert_eq!(ideal(2, &[&[1, 1]]).colon(&m(&[1, 0])).unwrap(), ideal(2, &[&[0, 1]]));
    }

    #[test]
    fn closure_operations() {
        let x1 = ideal(2, &[&[1, 0]]);
        let x2 = ideal(2, &[&[0, 1]]);
        assert_eq!(x1.intersect(&x2).unwrap(), ideal(2, &[&[1, 1]]));
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(i.power(2).unwrap(), ideal(3, &[&[2, 2, 0], &[1, 2, 1], &[0, 2, 2]]));
        assert_eq!(x1.sum(&MonomialIdeal::zero(2)).unwrap(), x1);
        assert_eq!(i.power(0).unwrap(), MonomialIdeal::unit(3));
        assert_eq!(x1.sum(&MonomialIdeal::zero(3)), Err(Error::ArityMismatch(2, 3)));
        let big = ideal(1, &[&[200]]);
        assert_eq!(big.power(2), Err(Error::ExponentOverflow));
    }

    #[test]
    fn regularity() {
        // u = first generator of a pair with j = 1 is regular on I'
        let sp = SequencePair::validate(vec![1, 4, 6], vec![2, 5, 7], 7).unwrap();
        let rest = MonomialIdeal::generators(&sp.derive_prime().unwrap());
        assert_eq!(rest.is_regular(&Monomial::interval(7, 1, 2)), Ok(true));
        let i = ideal(3, &[&[1, 1, 0]]);
        assert_eq!(i.is_regular(&m(&[1, 0, 0])), Ok(false));
        assert_eq!(i.is_regular(&m(&[0, 0, 1])), Ok(true));
        assert_eq!(i.is_regular(&m(&[1, 1, 1])), Err(Error::NotInQuotient));
    }

    #[test]
    fn covers() {
        let covers = MonomialIdeal::generators(&ex24()).minimal_covers().unwrap();
        let min = covers.iter().map(|c| c.len()).min().unwrap();
        assert_eq!(min, 2);
        assert!(covers.contains(&VarSet(0b100100)));
        assert_eq!(MonomialIdeal::generators(&ex24()).dim_quotient(), Ok(6));
        let covers = ideal(2, &[&[1, 1]]).minimal_covers().unwrap();
        assert_eq!(covers, vec![VarSet(0b01), VarSet(0b10)]);
        assert_eq!(MonomialIdeal::generators(&ex114()).dim_quotient(), Ok(8));
        assert_eq!(MonomialIdeal::zero(3).minimal_covers(), Err(Error::ZeroIdeal));
        assert_eq!(ideal(2, &[&[2, 0]]).minimal_covers(), Err(Error::NotSquarefree));
    }

    #[test]
    fn subsets_of_size() {
        let mut seen = Vec::new();
        for_each_subset_of_size(4, 2, |s| seen.push(s));
        assert_eq!(seen, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    fn arb_ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0u8..3, n), 0..6)
            .prop_map(move |gs| MonomialIdeal::new(n, gs.into_iter().map(Monomial::new).collect()).unwrap())
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u8..3, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn minimalize_is_order_independent(mut gens in prop::collection::vec(prop::collection::vec(0u8..3, 4), 0..8)) {
            let a = MonomialIdeal::new(4, gens.iter().cloned().map(Monomial::new).collect()).unwrap();
            gens.reverse();
            let b = MonomialIdeal::new(4, gens.into_iter().map(Monomial::new).collect()).unwrap();
            prop_assert_eq!(&a, &b);
            let again = MonomialIdeal::new(4, a.gens().to_vec()).unwrap();
            prop_assert_eq!(a, again);
        }

        #[test]
        fn intersection_and_powers_nest(i in arb_ideal(4), j in arb_ideal(4)) {
            let meet = i.intersect(&j).unwrap();
            prop_assert!(meet.is_subideal_of(&i));
            prop_assert!(meet.is_subideal_of(&j));
            prop_assert!(i.product(&j).unwrap().is_subideal_of(&meet));
            prop_assert!(i.power(2).unwrap().is_subideal_of(&i));
            prop_assert!(i.power(3).unwrap().is_subideal_of(&i.power(2).unwrap()));
        }

        #[test]
        fn colon_laws(i in arb_ideal(4), u in arb_monomial(4), v in arb_monomial(4)) {
            let iu = i.colon(&u).unwrap();
            prop_assert!(i.is_subideal_of(&iu));
            prop_assert_eq!(iu.colon(&v).unwrap(), i.colon(&u.checked_mul(&v).unwrap()).unwrap());
        }
    }
}
