//! Exhaustive comparison of every recursion against its brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_inclusion_exclusion, hilbert_recursive};
use crate::invariants::{closed_form_phi, dim_closed_form, phi, primary_decomposition, psi};
use crate::monomial::MonomialIdeal;
use crate::powers::{power_bounds_chained, power_depth_oracle, power_value_spread};
use crate::resolutions::{
    bar_colon_matches, betti_koszul_oracle, betti_recursive, depth_from_pd, splitting_check, ORACLE_VAR_CAP,
};
use crate::seqpair::SequencePair;
use crate::stanley::{sdepth_exact, verify_partition, Mode};

/// Largest `n` for checks that build a characteristic poset.
pub const SDEPTH_N_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    PhiDepth,
    PhiSdepth,
    PsiDim,
    Hilbert,
    Betti,
    Primdec,
    Powers,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::PhiDepth, Check::PhiSdepth, Check::PsiDim, Check::Hilbert, Check::Betti, Check::Primdec, Check::Powers];

    pub fn name(self) -> &'static str {
        match self {
            Check::PhiDepth => "phi-depth",
            Check::PhiSdepth => "phi-sdepth",
            Check::PsiDim => "psi-dim",
            Check::Hilbert => "hilbert",
            Check::Betti => "betti",
            Check::Primdec => "primdec",
            Check::Powers => "powers",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown check `{s}`") })
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_max: usize,
    pub s_max: usize,
    pub checks: BTreeSet<Check>,
    /// Zero means no budget.
    pub budget_seconds: u64,
    /// Zero means the rayon default.
    pub parallelism: usize,
}

impl SweepConfig {
    pub fn new(n_max: usize, s_max: usize) -> Self {
        SweepConfig { n_max, s_max, checks: Check::ALL.into_iter().collect(), budget_seconds: 0, parallelism: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        let sdepth = self.checks.contains(&Check::PhiSdepth);
        if sdepth && self.n_max > SDEPTH_N_CAP {
            return Err(Error::TooLarge { what: "n_max with sdepth checks", value: self.n_max, cap: SDEPTH_N_CAP });
        }
        let homology = [Check::PhiDepth, Check::Betti, Check::Powers].iter().any(|c| self.checks.contains(c));
        if homology && self.n_max > ORACLE_VAR_CAP {
            return Err(Error::TooLarge { what: "n_max with homology checks", value: self.n_max, cap: ORACLE_VAR_CAP });
        }
        Ok(())
    }
}

/// One disagreement, with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub pair: String,
    pub check: String,
    pub expected: String,
    pub found: String,
}

/// Value of `depth(S/I^t)` for a Chained pair with `s = 3` and `t >= 2`,
/// recorded rather than asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainedPowerObservation {
    pub pair: String,
    pub t: usize,
    pub depth: usize,
    pub n_minus_s: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub instances: usize,
    pub checks_run: BTreeMap<String, usize>,
    pub skipped: BTreeMap<String, usize>,
    pub mismatches: Vec<Mismatch>,
    pub chained_s3_powers: Vec<ChainedPowerObservation>,
    pub budget_exhausted: bool,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn absorb(&mut self, outcome: InstanceOutcome) {
        self.instances += 1;
        for (k, v) in outcome.run {
            *self.checks_run.entry(k.into()).or_insert(0) += v;
        }
        for (k, v) in outcome.skipped {
            *self.skipped.entry(k.into()).or_insert(0) += v;
        }
        self.mismatches.extend(outcome.mismatches);
        self.chained_s3_powers.extend(outcome.chained_s3_powers);
    }
}

/// Valid pairs with `n <= n_max` and `1 <= s <= s_max`, ordered by
/// `(s, a, b, n)`.
pub fn enumerate_pairs(n_max: usize, s_max: usize) -> Vec<SequencePair> {
    let mut out = Vec::new();
    for s in 1..=s_max.min(n_max) {
        let mut a = Vec::with_capacity(s);
        let mut b = Vec::with_capacity(s);
        extend_pairs(n_max, s, &mut a, &mut b, &mut out);
    }
    out.sort_by(|x, y| (x.s(), x.a(), x.b(), x.n()).cmp(&(y.s(), y.a(), y.b(), y.n())));
    out
}

fn extend_pairs(n_max: usize, s: usize, a: &mut Vec<usize>, b: &mut Vec<usize>, out: &mut Vec<SequencePair>) {
    if a.len() == s {
        for n in *b.last().expect("s >= 1")..=n_max {
            out.push(SequencePair::validate(a.clone(), b.clone(), n).expect("constructed valid"));
        }
        return;
    }
    let a_lo = a.last().map_or(1, |x| x + 1);
    let b_floor = b.last().map_or(0, |x| x + 1);
    // both sequences still need room for the remaining s - len - 1 entries
    let room = s - a.len() - 1;
    for ai in a_lo..=n_max.saturating_sub(room) {
        for bi in ai.max(b_floor)..=n_max.saturating_sub(room) {
            a.push(ai);
            b.push(bi);
            extend_pairs(n_max, s, a, b, out);
            a.pop();
            b.pop();
        }
    }
}

#[derive(Default)]
struct InstanceOutcome {
    run: BTreeMap<&'static str, usize>,
    skipped: BTreeMap<&'static str, usize>,
    mismatches: Vec<Mismatch>,
    chained_s3_powers: Vec<ChainedPowerObservation>,
}

impl InstanceOutcome {
    fn expect<T: PartialEq + fmt::Debug>(&mut self, sp: &SequencePair, check: &'static str, expected: T, found: T) {
        *self.run.entry(check).or_insert(0) += 1;
        if expected != found {
            self.mismatches.push(Mismatch {
                pair: sp.to_string(),
                check: check.into(),
                expected: format!("{expected:?}"),
                found: format!("{found:?}"),
            });
        }
    }

    fn error(&mut self, sp: &SequencePair, check: &'static str, err: Error) {
        match err {
            Error::TooLarge { .. } => *self.skipped.entry(check).or_insert(0) += 1,
            other => self.expect(sp, check, "Ok".to_string(), format!("error: {other}")),
        }
    }
}

/// Runs every selected check on one pair.
pub fn check_instance(sp: &SequencePair, checks: &BTreeSet<Check>) -> Vec<Mismatch> {
    run_instance(sp, checks).mismatches
}

fn run_instance(sp: &SequencePair, checks: &BTreeSet<Check>) -> InstanceOutcome {
    let mut out = InstanceOutcome::default();
    let (n, s) = (sp.n(), sp.s());
    let ideal = MonomialIdeal::generators(sp);
    let f = phi(sp);
    let p = psi(sp);

    if let Some((value, _)) = closed_form_phi(sp) {
        out.expect(sp, "phi-closed-form", value, f);
    }
    if sp.is_spread() {
        out.expect(sp, "phi-spread", n - s, f);
    }
    if sp.is_chained() {
        out.expect(sp, "phi-chained", n - s + s / 3, f);
    }

    if checks.contains(&Check::PhiDepth) {
        match betti_koszul_oracle(&ideal).and_then(|t| depth_from_pd(n, &t)) {
            Ok(depth) => out.expect(sp, "phi-depth", f, depth),
            Err(e) => out.error(sp, "phi-depth", e),
        }
    }

    if checks.contains(&Check::PhiSdepth) {
        match sdepth_exact(&ideal, Mode::Quotient) {
            Ok(r) => {
                out.expect(sp, "phi-sdepth", f, r.value);
                out.expect(
                    sp,
                    "sdepth-witness-quotient",
                    Ok(r.value),
                    verify_partition(&ideal, Mode::Quotient, &r.witness),
                );
            }
            Err(e) => out.error(sp, "phi-sdepth", e),
        }
        match sdepth_exact(&ideal, Mode::Ideal) {
            Ok(r) => {
                out.expect(sp, "sdepth-witness-ideal", Ok(r.value), verify_partition(&ideal, Mode::Ideal, &r.witness));
                let lower = (f + 1).max(n - s / 2);
                out.expect(sp, "sdepth-ideal-lower", true, r.value >= lower);
                if sp.is_spread() {
                    out.expect(sp, "sdepth-ideal-spread", n - s / 2, r.value);
                }
            }
            Err(e) => out.error(sp, "sdepth-ideal", e),
        }
    }

    if checks.contains(&Check::PsiDim) {
        match ideal.dim_quotient() {
            Ok(dim) => out.expect(sp, "psi-dim", p, dim),
            Err(e) => out.error(sp, "psi-dim", e),
        }
        if let Some(d) = dim_closed_form(sp) {
            out.expect(sp, "dim-closed-form", d, p);
        }
    }

    let hilbert = hilbert_recursive(sp);
    if checks.contains(&Check::Hilbert) {
        match hilbert_inclusion_exclusion(&ideal) {
            Ok(oracle) => out.expect(sp, "hilbert", oracle, hilbert.clone()),
            Err(e) => out.error(sp, "hilbert", e),
        }
        out.expect(sp, "hilbert-pole-order", p, hilbert.denom_power());
    }

    if checks.contains(&Check::Betti) {
        let recursive = betti_recursive(sp).map(|t| t.to_quotient());
        match (recursive, betti_koszul_oracle(&ideal)) {
            (Ok(rec), Ok(oracle)) => {
                let numerator = hilbert.numerator_over(n).map(|p| p.coeffs().to_vec());
                out.expect(sp, "alternating-sum", numerator, Some(oracle.alternating_sum()));
                out.expect(sp, "betti", oracle, rec);
            }
            (Err(e), _) | (_, Err(e)) => out.error(sp, "betti", e),
        }
        if s >= 2 {
            match splitting_check(sp) {
                Ok(ok) => out.expect(sp, "splitting", true, ok),
                Err(e) => out.error(sp, "splitting", e),
            }
        }
        match bar_colon_matches(sp) {
            Ok(ok) => out.expect(sp, "bar-colon", true, ok),
            Err(Error::Undefined(_)) => {}
            Err(e) => out.error(sp, "bar-colon", e),
        }
    }

    if checks.contains(&Check::Primdec) {
        match (primary_decomposition(sp), ideal.minimal_covers()) {
            (Ok(rec), Ok(covers)) => out.expect(sp, "primdec", covers, rec),
            (Err(e), _) | (_, Err(e)) => out.error(sp, "primdec", e),
        }
    }

    if checks.contains(&Check::Powers) {
        check_powers(sp, &mut out);
    }
    out
}

fn check_powers(sp: &SequencePair, out: &mut InstanceOutcome) {
    let (n, s) = (sp.n(), sp.s());
    let mut previous: Option<usize> = None;
    for t in 1..=3 {
        let depth = match power_depth_oracle(sp, t) {
            Ok(d) => d,
            Err(e) => {
                out.error(sp, "powers", e);
                break;
            }
        };
        if t == 1 {
            out.expect(sp, "powers-t1", phi(sp), depth);
        }
        if let Some(prev) = previous {
            out.expect(sp, "powers-monotone", true, depth <= prev);
        }
        previous = Some(depth);
        if let Ok(value) = power_value_spread(sp, t) {
            out.expect(sp, "powers-spread", value, depth);
        }
        if t <= 2 {
            if let Ok(bounds) = power_bounds_chained(sp, t) {
                let d = depth as i64;
                out.expect(sp, "powers-chained-sandwich", true, bounds.lower <= d && d <= bounds.upper);
            }
        }
        if s == 3 && t >= 2 && sp.is_chained() {
            out.chained_s3_powers.push(ChainedPowerObservation { pair: sp.to_string(), t, depth, n_minus_s: n - s });
        }
    }
}

/// Runs the sweep. Output is identical for every parallelism setting as long
/// as the budget is not hit.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let pairs = enumerate_pairs(config.n_max, config.s_max);
    let start = Instant::now();
    let budget = (config.budget_seconds > 0).then(|| Duration::from_secs(config.budget_seconds));
    let work = || {
        pairs
            .par_iter()
            .map(|sp| match budget {
                Some(limit) if start.elapsed() > limit => None,
                _ => Some(run_instance(sp, &config.checks)),
            })
            .collect::<Vec<_>>()
    };
    let outcomes = if config.parallelism > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| Error::Undefined(format!("thread pool: {e}")))?;
        pool.install(work)
    } else {
        work()
    };
    let mut report = SweepReport::default();
    for outcome in outcomes {
        match outcome {
            Some(o) => report.absorb(o),
            None => report.budget_exhausted = true,
        }
    }
    Ok(report)
}
