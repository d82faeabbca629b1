//! The pair of integer sequences `a_1 < … < a_s`, `b_1 < … < b_s` that
//! defines the interval ideal `(x_{a_1}⋯x_{b_1}, …, x_{a_s}⋯x_{b_s})`, and
//! the derived pairs the recursions walk through.
//!
//! Positions are 1-based throughout, matching the variable labels
//! `x_1, …, x_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A validated pair of sequences over `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SequencePair {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl SequencePair {
    /// Checks every invariant and builds the pair.
    pub fn validate(a: Vec<usize>, b: Vec<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be positive".into()));
        }
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
        }
        for (seq, v) in [('a', &a), ('b', &b)] {
            if let Some(i) = v.windows(2).position(|w| w[0] >= w[1]) {
                return Err(Error::NonIncreasing { seq, index: i + 2 });
            }
        }
        for (i, (&ai, &bi)) in a.iter().zip(&b).enumerate() {
            if ai > bi {
                return Err(Error::IntervalReversed { index: i + 1, a: ai, b: bi });
            }
        }
        if let (Some(&a1), Some(&bs)) = (a.first(), b.last()) {
            if a1 < 1 {
                return Err(Error::OutOfRange(format!("a_1 = {a1} < 1")));
            }
            if bs > n {
                return Err(Error::OutOfRange(format!("b_s = {bs} > n = {n}")));
            }
        }
        Ok(Self { n, a, b })
    }

    /// The empty pair over `n` variables (the zero ideal).
    pub fn empty(n: usize) -> Result<Self> {
        Self::validate(Vec::new(), Vec::new(), n)
    }

    /// The pair of the `m`-path ideal of the path graph on `n` vertices.
    pub fn path(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::OutOfRange(format!("path needs 1 <= m <= n, got m={m}, n={n}")));
        }
        let s = n - m + 1;
        Self::validate((1..=s).collect(), (m..=n).collect(), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Intervals `(a_i, b_i)` in order.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a.iter().copied().zip(self.b.iter().copied())
    }

    /// Degree `b_i - a_i + 1` of the i-th generator (0-based `i`).
    pub fn degree(&self, i: usize) -> usize {
        self.b[i] - self.a[i] + 1
    }

    /// `j = max{i : a_i <= b_1}`.
    pub fn j_index(&self) -> Result<usize> {
        let b1 = *self.b.first().ok_or(Error::EmptyPair)?;
        Ok(self.a.iter().take_while(|&&ai| ai <= b1).count())
    }

    /// Drops the first `j` generators.
    pub fn derive_prime(&self) -> Result<Self> {
        let j = self.j_index()?;
        Ok(self.suffix(j))
    }

    /// The pair `(b_1+1, …)`, `(b_2, …)` used when `j > 1`.
    ///
    /// When `j = s` the result is the single interval `[b_1+1, b_2]`.
    pub fn derive_double_prime(&self) -> Result<Self> {
        let s = self.s();
        if s < 2 {
            return Err(Error::Undefined("double-prime pair needs s >= 2".into()));
        }
        let j = self.j_index()?;
        if j == 1 {
            return Err(Error::Undefined("double-prime pair needs j > 1".into()));
        }
        Ok(self.with_head(self.b[0] + 1, self.b[1], j))
    }

    /// Drops exactly the first generator.
    pub fn bar(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyPair);
        }
        Ok(self.suffix(1))
    }

    /// The first `l` intervals.
    pub fn restrict(&self, l: usize) -> Result<Self> {
        if l == 0 || l > self.s() {
            return Err(Error::OutOfRange(format!("restrict needs 1 <= l <= s = {}, got {l}", self.s())));
        }
        Ok(Self { n: self.n, a: self.a[..l].to_vec(), b: self.b[..l].to_vec() })
    }

    fn suffix(&self, from: usize) -> Self {
        Self { n: self.n, a: self.a[from..].to_vec(), b: self.b[from..].to_vec() }
    }

    /// The interval `[lo, hi]` followed by the generators from index `from`
    /// (0-based) on, dropping any of those that the new interval divides.
    ///
    /// Requires `hi < b_{from+1}` and `lo > b_1`, which holds for every
    /// caller (they all take `lo = b_1 + 1` and `hi` one of `b_2..b_j`).
    pub(crate) fn with_head(&self, lo: usize, hi: usize, from: usize) -> Self {
        let mut a = vec![lo];
        let mut b = vec![hi];
        for (ai, bi) in self.intervals().skip(from) {
            // [lo, hi] ⊆ [ai, bi] means the old generator is redundant
            if ai <= lo && hi <= bi {
                continue;
            }
            a.push(ai);
            b.push(bi);
        }
        debug_assert!(Self::validate(a.clone(), b.clone(), self.n).is_ok());
        Self { n: self.n, a, b }
    }

    /// The same pair translated so that `a_1 = 1`; `n` is dropped. Two pairs
    /// with equal keys differ only by a shift and the ambient ring.
    pub fn shape_key(&self) -> (Vec<usize>, Vec<usize>) {
        let shift = self.a.first().map_or(0, |&a1| a1 - 1);
        (self.a.iter().map(|x| x - shift).collect(), self.b.iter().map(|x| x - shift).collect())
    }

    /// Whether `a_{k+2} > b_k + 1` for every `1 <= k <= s-2`.
    pub fn is_spread(&self) -> bool {
        (0..self.s().saturating_sub(2)).all(|k| self.a[k + 2] > self.b[k] + 1)
    }

    /// Whether `a_{k+2} = b_k + 1` for every `1 <= k <= s-2`.
    pub fn is_chained(&self) -> bool {
        (0..self.s().saturating_sub(2)).all(|k| self.a[k + 2] == self.b[k] + 1)
    }

    /// `Some(m)` when the pair is the `m`-path ideal of the path on `n` vertices.
    pub fn path_length(&self) -> Option<usize> {
        let s = self.s();
        if s == 0 || s > self.n {
            return None;
        }
        let m = self.n - s + 1;
        let is_path = self.intervals().enumerate().all(|(i, (ai, bi))| ai == i + 1 && bi == i + m);
        is_path.then_some(m)
    }

    pub fn classify(&self) -> Shape {
        let s = self.s();
        let tag = if s == 0 {
            ShapeTag::Empty
        } else if s == 1 {
            ShapeTag::Principal
        } else if let Some(m) = self.path_length() {
            ShapeTag::Path(m)
        } else if self.is_spread() {
            ShapeTag::Spread
        } else if self.is_chained() {
            ShapeTag::Chained
        } else {
            ShapeTag::Generic
        };
        let witnesses = match tag {
            ShapeTag::Generic => (0..s - 2).filter(|&k| self.a[k + 2] <= self.b[k] + 1).map(|k| k + 1).collect(),
            _ => Vec::new(),
        };
        Shape { tag, witnesses }
    }
}

impl fmt::Display for SequencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "n={}; a={}; b={}", self.n, join(&self.a), join(&self.b))
    }
}

impl FromStr for SequencePair {
    type Err = Error;

    /// Parses `n=10; a=1,2,3,6,7; b=4,5,7,8,10`. Whitespace is ignored and
    /// the three fields may come in any order.
    fn from_str(text: &str) -> Result<Self> {
        let mut n = None;
        let mut a = None;
        let mut b = None;
        let mut offset = 0;
        for field in text.split(';') {
            let start = offset;
            offset += field.len() + 1;
            if field.trim().is_empty() {
                continue;
            }
            let eq = field.find('=').ok_or_else(|| Error::Parse {
                pos: start,
                msg: format!("expected `key=value`, found `{}`", field.trim()),
            })?;
            let key = field[..eq].trim();
            let value_pos = start + eq + 1;
            let value = &field[eq + 1..];
            let slot = match key {
                "n" => {
                    let list = parse_list(value, value_pos)?;
                    if list.len() != 1 {
                        return Err(Error::Parse { pos: value_pos, msg: "n takes exactly one integer".into() });
                    }
                    if n.replace(list[0]).is_some() {
                        return Err(Error::Parse { pos: start, msg: "duplicate key `n`".into() });
                    }
                    continue;
                }
                "a" => &mut a,
                "b" => &mut b,
                other => {
                    return Err(Error::Parse { pos: start, msg: format!("unknown key `{other}`") });
                }
            };
            if slot.replace(parse_list(value, value_pos)?).is_some() {
                return Err(Error::Parse { pos: start, msg: format!("duplicate key `{key}`") });
            }
        }
        let missing = |k: &str| Error::Parse { pos: text.len(), msg: format!("missing key `{k}`") };
        let n = n.ok_or_else(|| missing("n"))?;
        let a = a.ok_or_else(|| missing("a"))?;
        let b = b.ok_or_else(|| missing("b"))?;
        Self::validate(a, b, n)
    }
}

fn parse_list(value: &str, pos: usize) -> Result<Vec<usize>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = pos;
    for item in value.split(',') {
        let trimmed = item.trim();
        let lead = item.len() - item.trim_start().len();
        out.push(trimmed.parse().map_err(|_| Error::Parse {
            pos: offset + lead,
            msg: format!("`{trimmed}` is not a non-negative integer"),
        })?);
        offset += item.len() + 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeTag {
    Empty,
    Principal,
    Spread,
    Chained,
    Path(usize),
    Generic,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::Path(m) => write!(f, "Path({m})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Result of [`SequencePair::classify`]. For `Generic` pairs `witnesses`
/// lists the (1-based) `k` with `a_{k+2} <= b_k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub tag: ShapeTag,
    pub witnesses: Vec<usize>,
}
