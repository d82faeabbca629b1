//! Hilbert series of `S/I` as `numerator / (1-t)^d`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::seqpair::SequencePair;

/// Dense integer polynomial in `t`, coefficient `k` at index `k`. Trailing
/// zeros are trimmed so that structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Poly(c)
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        Poly::one() - Poly::monomial(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Exact division by `1 - t`, if it divides.
    pub fn div_one_minus_t(&self) -> Option<Poly> {
        if self.is_zero() || self.eval_at_one() != 0 {
            return None;
        }
        // p = (1-t) q  ⇔  q_k = p_0 + … + p_k
        let mut acc = 0;
        let mut q: Vec<i64> = self
            .0
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect();
        q.pop();
        Some(Poly::new(q))
    }

    pub fn mul_one_minus_t(&self) -> Poly {
        self * &Poly::one_minus_t_pow(1)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        Poly::new((0..len).map(|k| self.0.get(k).unwrap_or(&0) + rhs.0.get(k).unwrap_or(&0)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        Poly::new((0..len).map(|k| self.0.get(k).unwrap_or(&0) - rhs.0.get(k).unwrap_or(&0)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::default();
        }
        let mut out = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.unsigned_abs();
            match (k, abs) {
                (0, _) => write!(f, "{abs}")?,
                (_, 1) => {}
                _ => write!(f, "{abs}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / (1-t)^denom_pow`, always stored reduced: the numerator does
/// not vanish at `t = 1` (unless the series is zero, stored as `0 / 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    #[serde(rename = "num")]
    numerator: Poly,
    #[serde(rename = "denom_pow")]
    denom_power: usize,
}

impl RationalSeries {
    pub fn new(numerator: Poly, denom_power: usize) -> Self {
        if numerator.is_zero() {
            return Self { numerator, denom_power: 0 };
        }
        let mut num = numerator;
        let mut d = denom_power;
        while d > 0 {
            match num.div_one_minus_t() {
                Some(q) => {
                    num = q;
                    d -= 1;
                }
                None => break,
            }
        }
        Self { numerator: num, denom_power: d }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denom_power(&self) -> usize {
        self.denom_power
    }

    /// Numerator over `(1-t)^target` for `target >= denom_power`.
    pub fn numerator_over(&self, target: usize) -> Option<Poly> {
        let extra = target.checked_sub(self.denom_power)?;
        Some((0..extra).fold(self.numerator.clone(), |p, _| p.mul_one_minus_t()))
    }

    /// Taylor coefficients at `0` through degree `k`.
    pub fn coefficients(&self, k: usize) -> Vec<i64> {
        let mut c: Vec<i64> = (0..=k).map(|i| *self.numerator.coeffs().get(i).unwrap_or(&0)).collect();
        // multiply by 1/(1-t) once per pole order: prefix sums
        for _ in 0..self.denom_power {
            for i in 1..c.len() {
                c[i] += c[i - 1];
            }
        }
        c
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (1 - t)^{}", self.numerator, self.denom_power)
    }
}

pub fn series_coefficients(rs: &RationalSeries, k: usize) -> Vec<i64> {
    rs.coefficients(k)
}

/// Numerator of `H_{S/I}` over `(1-t)^n` computed by the interval recursion.
///
/// For `j > 1` the short exact sequence along `v = x_{a_2}⋯x_{b_1}` uses
/// `(I : v) = (w, I'')` and `(I, v) = I_J` with
/// `J = ((a_2, a_3, …, a_s), (b_1, b_3, …, b_s))`. When `j = 2`, `v` is regular
/// on `S/I'` and the second term is `(1 - t^{deg v}) H_{S/I'}`.
pub fn hilbert_numerator_recursive(sp: &SequencePair) -> Poly {
    numerator_memo(sp, &mut HashMap::new())
}

fn numerator_memo(sp: &SequencePair, memo: &mut HashMap<(Vec<usize>, Vec<usize>), Poly>) -> Poly {
    if sp.is_empty() {
        return Poly::one();
    }
    let key = sp.shape_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let j = sp.j_index().expect("nonempty");
    let (a, b) = (sp.a(), sp.b());
    let result = if j == 1 {
        // u = x_{a_1}⋯x_{b_1} is regular on S/I'
        let prime = sp.derive_prime().expect("nonempty");
        Poly::one_minus_t_pow(b[0] - a[0] + 1) * numerator_memo(&prime, memo)
    } else {
        let double = sp.derive_double_prime().expect("j > 1");
        let v_deg = b[0] - a[1] + 1;
        let w_deg = a[1] - a[0];
        let colon_part = Poly::monomial(v_deg) * Poly::one_minus_t_pow(w_deg) * numerator_memo(&double, memo);
        let sum_part = numerator_memo(&sum_with_v(sp), memo);
        colon_part + sum_part
    };
    memo.insert(key, result.clone());
    result
}

/// The pair of `(I, x_{a_2}⋯x_{b_1})` when `j > 1`.
fn sum_with_v(sp: &SequencePair) -> SequencePair {
    let (a, b) = (sp.a(), sp.b());
    let new_a = a[1..].to_vec();
    let new_b = std::iter::once(b[0]).chain(b[2..].iter().copied()).collect();
    SequencePair::validate(new_a, new_b, sp.n()).expect("a_2 <= b_1 < b_3")
}

/// The three-case recursion with `(I, v)` replaced by `(I', v)` for every
/// `j > 1`. Agrees with [`hilbert_numerator_recursive`] when every `j <= 2`
/// along the recursion and can differ otherwise; kept for comparison.
pub fn hilbert_numerator_three_case(sp: &SequencePair) -> Poly {
    if sp.is_empty() {
        return Poly::one();
    }
    let j = sp.j_index().expect("nonempty");
    let prime = sp.derive_prime().expect("nonempty");
    let (a, b) = (sp.a(), sp.b());
    if j == 1 {
        return Poly::one_minus_t_pow(b[0] - a[0] + 1) * hilbert_numerator_three_case(&prime);
    }
    let double = sp.derive_double_prime().expect("j > 1");
    let v_deg = b[0] - a[1] + 1;
    let w_deg = a[1] - a[0];
    Poly::monomial(v_deg) * Poly::one_minus_t_pow(w_deg) * hilbert_numerator_three_case(&double)
        + Poly::one_minus_t_pow(v_deg) * hilbert_numerator_three_case(&prime)
}

pub fn hilbert_recursive(sp: &SequencePair) -> RationalSeries {
    RationalSeries::new(hilbert_numerator_recursive(sp), sp.n())
}

pub const INCLUSION_EXCLUSION_CAP: usize = 22;

/// Numerator over `(1-t)^n` as the signed sum over subsets `T` of the
/// generators of `t^{deg lcm(T)}`.
pub fn inclusion_exclusion_numerator(ideal: &MonomialIdeal) -> Result<Poly> {
    let gens = ideal.gens();
    if gens.len() > INCLUSION_EXCLUSION_CAP {
        return Err(Error::TooManyGenerators { count: gens.len(), cap: INCLUSION_EXCLUSION_CAP });
    }
    let mut coeffs = vec![0i64; 1];
    fn walk(gens: &[Monomial], next: usize, lcm: &Monomial, sign: i64, coeffs: &mut Vec<i64>) {
        let d = lcm.degree();
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        coeffs[d] += sign;
        for k in next..gens.len() {
            walk(gens, k + 1, &lcm.lcm(&gens[k]), -sign, coeffs);
        }
    }
    walk(gens, 0, &Monomial::one(ideal.nvars()), 1, &mut coeffs);
    Ok(Poly::new(coeffs))
}

pub fn hilbert_inclusion_exclusion(ideal: &MonomialIdeal) -> Result<RationalSeries> {
    Ok(RationalSeries::new(inclusion_exclusion_numerator(ideal)?, ideal.nvars()))
}
