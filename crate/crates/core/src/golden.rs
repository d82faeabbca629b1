//! Worked examples stored as JSON fixtures and re-checked against both the
//! recursions and the oracles.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hilbert::{hilbert_inclusion_exclusion, hilbert_recursive, Poly, RationalSeries};
use crate::invariants::{ideal_depth_bounds, path_phi, phi, psi};
use crate::monomial::MonomialIdeal;
use crate::resolutions::{betti_koszul_oracle, depth_from_pd};
use crate::seqpair::SequencePair;
use crate::stanley::{sdepth_exact, verify_partition, Mode};

pub const FIXTURE_JSON: &str = include_str!("../fixtures/golden.json");

#[derive(Clone, Debug, Deserialize)]
pub struct Fixtures {
    pub five_generators: FiveGenerators,
    pub chained_four: ChainedFour,
    pub small_s: Vec<SmallCase>,
    pub path_grid: Vec<PathCase>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FiveGenerators {
    pub pair: String,
    pub j_index: usize,
    pub prime: String,
    pub double_prime: String,
    pub phi: usize,
    pub phi_double_prime: usize,
    pub depth_quotient: usize,
    pub sdepth_quotient: usize,
    pub depth_ideal: usize,
    pub sdepth_ideal_lower: usize,
    pub sdepth_ideal: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SeriesFixture {
    pub num: Vec<i64>,
    pub denom_pow: usize,
}

impl SeriesFixture {
    fn series(&self) -> RationalSeries {
        RationalSeries::new(Poly::new(self.num.clone()), self.denom_pow)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct ChainedFour {
    pub pair: String,
    pub phi: usize,
    pub psi: usize,
    pub depth_quotient: usize,
    pub dim_quotient: usize,
    pub sdepth_ideal: usize,
    pub sdepth_quotient: usize,
    pub hilbert_numerator_over_n: Vec<i64>,
    pub hilbert_reduced: SeriesFixture,
    pub printed_reduced: SeriesFixture,
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SmallCase {
    pub pair: String,
    pub phi: usize,
    pub psi: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PathCase {
    pub n: usize,
    pub m: usize,
    pub depth: usize,
}

pub fn fixtures() -> Fixtures {
    serde_json::from_str(FIXTURE_JSON).expect("bundled fixture is valid JSON")
}

/// One compared quantity. `source` names where `found` came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub example: String,
    pub item: String,
    pub source: &'static str,
    pub expected: String,
    pub found: String,
    pub passed: bool,
}

struct Recorder(Vec<GoldenCheck>);

impl Recorder {
    fn check<T: PartialEq + ToString>(
        &mut self,
        example: &str,
        item: &str,
        source: &'static str,
        expected: T,
        found: T,
    ) {
        self.0.push(GoldenCheck {
            example: example.into(),
            item: item.into(),
            source,
            passed: expected == found,
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
}

fn quotient_depth_oracle(ideal: &MonomialIdeal) -> Result<usize> {
    depth_from_pd(ideal.nvars(), &betti_koszul_oracle(ideal)?)
}

fn sdepth_checked(ideal: &MonomialIdeal, mode: Mode) -> Result<(usize, bool)> {
    let r = sdepth_exact(ideal, mode)?;
    let witness_ok = verify_partition(ideal, mode, &r.witness) == Ok(r.value);
    Ok((r.value, witness_ok))
}

pub fn check_five_generators(fx: &FiveGenerators) -> Result<Vec<GoldenCheck>> {
    let mut rec = Recorder(Vec::new());
    let name = "five-generators";
    let sp: SequencePair = fx.pair.parse()?;
    let ideal = MonomialIdeal::generators(&sp);
    rec.check(name, "j_index", "recursion", fx.j_index, sp.j_index()?);
    rec.check(name, "prime", "recursion", fx.prime.clone(), sp.derive_prime()?.to_string());
    let double = sp.derive_double_prime()?;
    rec.check(name, "double_prime", "recursion", fx.double_prime.clone(), double.to_string());
    rec.check(name, "phi(double_prime)", "recursion", fx.phi_double_prime, phi(&double));
    rec.check(name, "phi", "recursion", fx.phi, phi(&sp));
    let (depth_ideal, sdepth_lower) = ideal_depth_bounds(&sp)?;
    rec.check(name, "depth_ideal", "recursion", fx.depth_ideal, depth_ideal);
    rec.check(name, "sdepth_ideal_lower", "closed-form", fx.sdepth_ideal_lower, sdepth_lower);
    rec.check(name, "depth_quotient", "oracle", fx.depth_quotient, quotient_depth_oracle(&ideal)?);
    let (q, q_ok) = sdepth_checked(&ideal, Mode::Quotient)?;
    rec.check(name, "sdepth_quotient", "oracle", fx.sdepth_quotient, q);
    rec.check(name, "sdepth_quotient witness", "oracle", true, q_ok);
    let (i, i_ok) = sdepth_checked(&ideal, Mode::Ideal)?;
    rec.check(name, "sdepth_ideal", "oracle", fx.sdepth_ideal, i);
    rec.check(name, "sdepth_ideal witness", "oracle", true, i_ok);
    Ok(rec.0)
}

pub fn check_chained_four(fx: &ChainedFour) -> Result<Vec<GoldenCheck>> {
    let mut rec = Recorder(Vec::new());
    let name = "chained-four";
    let sp: SequencePair = fx.pair.parse()?;
    let ideal = MonomialIdeal::generators(&sp);
    rec.check(name, "phi", "recursion", fx.phi, phi(&sp));
    rec.check(name, "psi", "recursion", fx.psi, psi(&sp));
    rec.check(name, "depth_quotient", "oracle", fx.depth_quotient, quotient_depth_oracle(&ideal)?);
    rec.check(name, "dim_quotient", "oracle", fx.dim_quotient, ideal.dim_quotient()?);
    let (i, _) = sdepth_checked(&ideal, Mode::Ideal)?;
    rec.check(name, "sdepth_ideal", "oracle", fx.sdepth_ideal, i);
    let (q, _) = sdepth_checked(&ideal, Mode::Quotient)?;
    rec.check(name, "sdepth_quotient", "oracle", fx.sdepth_quotient, q);

    let oracle = hilbert_inclusion_exclusion(&ideal)?;
    let recursion = hilbert_recursive(&sp);
    let expected = fx.hilbert_reduced.series();
    rec.check(name, "hilbert", "oracle", expected.to_string(), oracle.to_string());
    rec.check(name, "hilbert", "recursion", expected.to_string(), recursion.to_string());
    let over_n = oracle.numerator_over(sp.n()).map(|p| p.coeffs().to_vec()).unwrap_or_default();
    rec.check(
        name,
        "hilbert numerator over (1-t)^n",
        "oracle",
        format!("{:?}", fx.hilbert_numerator_over_n),
        format!("{over_n:?}"),
    );
    // the printed form is expected to disagree in degree 1
    let printed = fx.printed_reduced.series().coefficients(1);
    let actual = oracle.coefficients(1);
    rec.check(name, "printed form differs in degree 1", "oracle", true, printed[1] != actual[1]);
    rec.check(name, "degree-1 coefficient equals n", "oracle", sp.n() as i64, actual[1]);
    Ok(rec.0)
}

pub fn check_small_s(cases: &[SmallCase]) -> Result<Vec<GoldenCheck>> {
    let mut rec = Recorder(Vec::new());
    for case in cases {
        let sp: SequencePair = case.pair.parse()?;
        let name = format!("small-s {}", case.pair);
        rec.check(&name, "phi", "recursion", case.phi, phi(&sp));
        rec.check(&name, "psi", "recursion", case.psi, psi(&sp));
        rec.check(&name, "psi", "oracle", case.psi, MonomialIdeal::generators(&sp).dim_quotient()?);
    }
    Ok(rec.0)
}

pub fn check_path_grid(cases: &[PathCase]) -> Result<Vec<GoldenCheck>> {
    let mut rec = Recorder(Vec::new());
    for case in cases {
        let sp = SequencePair::path(case.n, case.m)?;
        let name = format!("path n={} m={}", case.n, case.m);
        rec.check(&name, "phi", "recursion", case.depth, phi(&sp));
        rec.check(&name, "phi", "closed-form", case.depth, path_phi(case.n, case.m));
    }
    Ok(rec.0)
}

/// Every golden check, in fixture order.
pub fn verify_examples() -> Result<Vec<GoldenCheck>> {
    let fx = fixtures();
    let mut all = check_five_generators(&fx.five_generators)?;
    all.extend(check_chained_four(&fx.chained_four)?);
    all.extend(check_small_s(&fx.small_s)?);
    all.extend(check_path_grid(&fx.path_grid)?);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let fx = fixtures();
        assert_eq!(fx.path_grid.len(), 66);
        assert!(fx.chained_four.note.contains("inclusion-exclusion"));
    }

    #[test]
    fn small_tables_pass() {
        let fx = fixtures();
        let checks = check_small_s(&fx.small_s).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
        let checks = check_path_grid(&fx.path_grid).unwrap();
        assert_eq!(checks.len(), 132);
        assert!(checks.iter().all(|c| c.passed));
    }

    #[test]
    fn all_examples_pass() {
        let checks = verify_examples().unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
