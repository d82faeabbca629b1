use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seqideal::golden::verify_examples;
use seqideal::hilbert::{hilbert_inclusion_exclusion, hilbert_recursive};
use seqideal::invariants::{closed_form_phi, invariant_report, primary_decomposition};
use seqideal::powers::{ds_lower_recursion, power_bounds_chained, power_depth_oracle, power_value_spread};
use seqideal::resolutions::{betti_koszul_oracle, betti_recursive, pd, reg};
use seqideal::stanley::{sdepth_exact, IntervalPartition};
use seqideal::sweep::{run_sweep, Check, SweepConfig};
use seqideal::{Mode, Monomial, MonomialIdeal, SequencePair};

#[derive(Parser)]
#[command(name = "seqideal", version, about = "Invariants of interval monomial ideals I_{α,β}")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Include Stanley partitions or primary decompositions.
    #[arg(long, global = true)]
    witness: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// depth, Stanley depth and dimension of S/I from the recursions.
    Invariants { pair: String },
    /// Hilbert series of S/I.
    Hilbert {
        pair: String,
        /// Also compute by inclusion-exclusion and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Graded Betti numbers.
    Betti {
        pair: String,
        /// Also compute from Koszul simplicial complexes and compare.
        #[arg(long)]
        oracle: bool,
        /// Print the table of I instead of S/I.
        #[arg(long)]
        ideal: bool,
    },
    /// Exact Stanley depth by interval-partition search.
    Sdepth {
        pair: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Quotient)]
        mode: ModeArg,
    },
    /// Minimal primes of I.
    Primdec {
        pair: String,
        /// Also enumerate minimal vertex covers and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Depth of S/I^t.
    Powers {
        pair: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Also compute depth(S/I^t) from the Koszul oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare every recursion with its oracle on all small pairs.
    Sweep {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        s_max: usize,
        /// Comma-separated checks; all when omitted.
        #[arg(long, value_delimiter = ',')]
        modes: Vec<String>,
        /// Stop starting new instances after this many seconds (0 = none).
        #[arg(long, default_value_t = 0)]
        budget_seconds: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "SEQIDEAL_THREADS", default_value_t = 0)]
        parallelism: usize,
    },
    /// Re-check the bundled worked examples.
    VerifyExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ideal,
    Quotient,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ideal => Mode::Ideal,
            ModeArg::Quotient => Mode::Quotient,
        }
    }
}

/// Output of one command: JSON document, human text, and whether a
/// comparison failed.
struct Output {
    doc: Value,
    text: String,
    mismatch: bool,
}

struct Claims {
    list: Vec<Value>,
    text: String,
}

impl Claims {
    fn new() -> Self {
        Claims { list: Vec::new(), text: String::new() }
    }

    fn push(&mut self, name: &str, value: Value, source: &str, shown: impl std::fmt::Display) {
        self.list.push(json!({ "name": name, "value": value, "source": source }));
        let _ = writeln!(self.text, "{name:<22} {shown}  [{source}]");
    }
}

fn envelope(command: &str, pair: Option<&SequencePair>, claims: Claims) -> (Value, String) {
    let doc = json!({
        "command": command,
        "pair": pair.map(|p| p.to_string()),
        "claims": claims.list,
    });
    let mut text = String::new();
    if let Some(p) = pair {
        let _ = writeln!(text, "pair: {p}");
    }
    text.push_str(&claims.text);
    (doc, text)
}

fn parse_pair(text: &str) -> Result<SequencePair> {
    text.parse().with_context(|| format!("invalid pair `{text}`"))
}

fn render_partition(p: &IntervalPartition) -> (Value, String) {
    let mut text = String::new();
    for iv in &p.intervals {
        let lo = Monomial::new(iv.lower.clone());
        let hi = Monomial::new(iv.upper.clone());
        let _ = writeln!(text, "  [{lo}, {hi}]");
    }
    (serde_json::to_value(p).expect("serializable"), text)
}

fn cmd_invariants(sp: &SequencePair, witness: bool) -> Result<Output> {
    let r = invariant_report(sp);
    let mut c = Claims::new();
    c.push("phi", json!(r.phi), "recursion", r.phi);
    c.push("psi", json!(r.psi), "recursion", r.psi);
    c.push("depth_quotient", json!(r.depth_quotient), "recursion", r.depth_quotient);
    c.push("sdepth_quotient", json!(r.sdepth_quotient), "recursion", r.sdepth_quotient);
    c.push("dim_quotient", json!(r.dim_quotient), "recursion", r.dim_quotient);
    if let (Some(d), Some(l)) = (r.depth_ideal, r.sdepth_ideal_lower) {
        c.push("depth_ideal", json!(d), "recursion", d);
        c.push("sdepth_ideal_lower", json!(l), "closed-form", l);
    }
    if let Some((value, tag)) = closed_form_phi(sp) {
        c.push("phi_closed_form", json!(value), "closed-form", format!("{value} ({tag})"));
    }
    let shape = sp.classify();
    let (mut doc, mut text) = envelope("invariants", Some(sp), c);
    doc["shape"] = json!(shape.tag.to_string());
    let _ = writeln!(text, "shape: {}", shape.tag);
    if witness && !sp.is_empty() {
        let primes = primary_decomposition(sp)?;
        doc["witness"] = json!({ "minimal_primes": primes.iter().map(|p| p.vars()).collect::<Vec<_>>() });
        let _ = writeln!(text, "minimal primes:");
        for p in &primes {
            let _ = writeln!(text, "  {p}");
        }
    }
    Ok(Output { doc, text, mismatch: false })
}

fn cmd_hilbert(sp: &SequencePair, oracle: bool) -> Result<Output> {
    let rec = hilbert_recursive(sp);
    let mut c = Claims::new();
    c.push("hilbert", serde_json::to_value(&rec)?, "recursion", &rec);
    let mut mismatch = false;
    if oracle {
        let ie = hilbert_inclusion_exclusion(&MonomialIdeal::generators(sp))?;
        mismatch = ie != rec;
        c.push("hilbert", serde_json::to_value(&ie)?, "oracle", &ie);
    }
    let (mut doc, mut text) = envelope("hilbert", Some(sp), c);
    if oracle {
        doc["agree"] = json!(!mismatch);
        let _ = writeln!(text, "agree: {}", !mismatch);
    }
    Ok(Output { doc, text, mismatch })
}

fn cmd_betti(sp: &SequencePair, oracle: bool, ideal_side: bool) -> Result<Output> {
    let ideal = MonomialIdeal::generators(sp);
    let pick = |t: seqideal::BettiTable| if ideal_side { t.to_ideal() } else { t.to_quotient() };
    let mut tables = Vec::new();
    if !sp.is_empty() {
        tables.push(("recursion", pick(betti_recursive(sp)?)));
    }
    if oracle || sp.is_empty() {
        tables.push(("oracle", pick(betti_koszul_oracle(&ideal)?)));
    }
    let mismatch = tables.len() == 2 && tables[0].1 != tables[1].1;
    let mut c = Claims::new();
    let mut tables_text = String::new();
    for (source, table) in &tables {
        c.push("betti", serde_json::to_value(table)?, source, format!("({} entries)", table.entries().len()));
        if let (Ok(p), Ok(r)) = (pd(table), reg(table)) {
            c.push("pd", json!(p), source, p);
            c.push("reg", json!(r), source, r);
        }
        let _ = write!(tables_text, "{source}:\n{table}");
    }
    let (mut doc, mut text) = envelope("betti", Some(sp), c);
    doc["subject"] = json!(if ideal_side { "ideal" } else { "quotient" });
    text.push_str(&tables_text);
    if tables.len() == 2 {
        doc["agree"] = json!(!mismatch);
        let _ = writeln!(text, "agree: {}", !mismatch);
    }
    Ok(Output { doc, text, mismatch })
}

fn cmd_sdepth(sp: &SequencePair, mode: Mode, witness: bool) -> Result<Output> {
    let ideal = MonomialIdeal::generators(sp);
    let result = sdepth_exact(&ideal, mode)?;
    let report = invariant_report(sp);
    let mut c = Claims::new();
    c.push("sdepth", json!(result.value), "oracle", result.value);
    let mut mismatch = false;
    match mode {
        Mode::Quotient => {
            c.push("phi", json!(report.phi), "recursion", report.phi);
            mismatch = report.phi != result.value;
        }
        Mode::Ideal => {
            if let Some(lower) = report.sdepth_ideal_lower {
                c.push("sdepth_lower", json!(lower), "closed-form", lower);
                mismatch = result.value < lower;
            }
            if sp.is_spread() {
                let exact = sp.n() - sp.s() / 2;
                c.push("sdepth_spread", json!(exact), "closed-form", exact);
                mismatch |= exact != result.value;
            }
        }
    }
    let (mut doc, mut text) = envelope("sdepth", Some(sp), c);
    doc["mode"] = json!(match mode {
        Mode::Ideal => "ideal",
        Mode::Quotient => "quotient",
    });
    if witness {
        let (value, shown) = render_partition(&result.witness);
        doc["witness"] = value;
        let _ = write!(text, "partition ({} intervals):\n{shown}", result.witness.intervals.len());
    }
    Ok(Output { doc, text, mismatch })
}

fn cmd_primdec(sp: &SequencePair, oracle: bool, witness: bool) -> Result<Output> {
    let primes = primary_decomposition(sp)?;
    let mut c = Claims::new();
    let as_json = |ps: &[seqideal::VarSet]| json!(ps.iter().map(|p| p.vars()).collect::<Vec<_>>());
    let shown = primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    c.push("count", json!(primes.len()), "recursion", primes.len());
    c.push("minimal_primes", as_json(&primes), "recursion", shown);
    let mut mismatch = false;
    if oracle {
        let covers = MonomialIdeal::generators(sp).minimal_covers()?;
        mismatch = covers != primes;
        let shown = covers.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        c.push("minimal_primes", as_json(&covers), "oracle", shown);
    }
    let (mut doc, mut text) = envelope("primdec", Some(sp), c);
    if witness {
        doc["witness"] = json!({ "minimal_primes": as_json(&primes) });
    }
    if oracle {
        doc["agree"] = json!(!mismatch);
        let _ = writeln!(text, "agree: {}", !mismatch);
    }
    Ok(Output { doc, text, mismatch })
}

fn cmd_powers(sp: &SequencePair, t: usize, oracle: bool) -> Result<Output> {
    anyhow::ensure!(t >= 1, "power exponent t must be at least 1");
    let mut c = Claims::new();
    let spread = power_value_spread(sp, t).ok();
    let chained = power_bounds_chained(sp, t).ok();
    if let Some(v) = spread {
        c.push("depth", json!(v), "closed-form", v);
        c.push("sdepth", json!(v), "closed-form", v);
    }
    if let Some(b) = chained {
        c.push("depth_upper", json!(b.upper), "closed-form", b.upper);
        c.push("depth_lower", json!(b.lower), "closed-form", b.lower);
        let rec = ds_lower_recursion(sp.s(), t, sp.n());
        c.push("depth_lower", json!(rec), "recursion", rec);
    }
    let mut mismatch = false;
    if oracle {
        let d = power_depth_oracle(sp, t)?;
        c.push("depth", json!(d), "oracle", d);
        if let Some(v) = spread {
            mismatch |= v != d;
        }
        if let Some(b) = chained {
            mismatch |= !(b.lower <= d as i64 && d as i64 <= b.upper);
        }
    }
    let (mut doc, mut text) = envelope("powers", Some(sp), c);
    doc["t"] = json!(t);
    let _ = writeln!(text, "t: {t}");
    if spread.is_none() && chained.is_none() {
        let _ = writeln!(text, "no closed form for shape {}", sp.classify().tag);
    }
    Ok(Output { doc, text, mismatch })
}

fn cmd_sweep(config: SweepConfig) -> Result<Output> {
    let report = run_sweep(&config)?;
    let mut c = Claims::new();
    c.push("instances", json!(report.instances), "oracle", report.instances);
    c.push("mismatches", json!(report.mismatches.len()), "oracle", report.mismatches.len());
    let (mut doc, mut text) = envelope("sweep", None, c);
    let modes: Vec<&str> = config.checks.iter().map(|c| c.name()).collect();
    doc["config"] = json!({ "n_max": config.n_max, "s_max": config.s_max, "modes": modes });
    doc["report"] = serde_json::to_value(&report)?;
    let _ = writeln!(text, "n_max={} s_max={} modes={}", config.n_max, config.s_max, modes.join(","));
    for (check, count) in &report.checks_run {
        let _ = writeln!(text, "  {check:<26} {count}");
    }
    for (check, count) in &report.skipped {
        let _ = writeln!(text, "  skipped {check:<18} {count}");
    }
    if !report.chained_s3_powers.is_empty() {
        let at_floor = report.chained_s3_powers.iter().filter(|o| o.depth == o.n_minus_s).count();
        let _ = writeln!(
            text,
            "chained s=3 powers (t>=2): {at_floor} of {} have depth n-3",
            report.chained_s3_powers.len()
        );
    }
    for m in &report.mismatches {
        let _ = writeln!(text, "MISMATCH {} [{}]: expected {} found {}", m.pair, m.check, m.expected, m.found);
    }
    if report.budget_exhausted {
        let _ = writeln!(text, "budget exhausted: not every instance was checked");
    }
    Ok(Output { doc, text, mismatch: !report.is_clean() })
}

fn cmd_verify_examples() -> Result<Output> {
    let checks = verify_examples()?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut c = Claims::new();
    c.push("checks", json!(checks.len()), "oracle", checks.len());
    c.push("failed", json!(failed), "oracle", failed);
    let (mut doc, mut text) = envelope("verify-examples", None, c);
    doc["checks"] = serde_json::to_value(&checks)?;
    for k in &checks {
        let status = if k.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{status} {} {} [{}]: expected {} found {}",
            k.example, k.item, k.source, k.expected, k.found
        );
    }
    Ok(Output { doc, text, mismatch: failed > 0 })
}

fn sweep_config(
    n_max: usize,
    s_max: usize,
    modes: &[String],
    budget_seconds: u64,
    parallelism: usize,
) -> Result<SweepConfig> {
    let checks: BTreeSet<Check> = if modes.is_empty() {
        Check::ALL.into_iter().collect()
    } else {
        modes.iter().map(|m| m.parse::<Check>()).collect::<seqideal::Result<_>>()?
    };
    Ok(SweepConfig { n_max, s_max, checks, budget_seconds, parallelism })
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Invariants { pair } => cmd_invariants(&parse_pair(pair)?, cli.witness),
        Command::Hilbert { pair, oracle } => cmd_hilbert(&parse_pair(pair)?, *oracle),
        Command::Betti { pair, oracle, ideal } => cmd_betti(&parse_pair(pair)?, *oracle, *ideal),
        Command::Sdepth { pair, mode } => cmd_sdepth(&parse_pair(pair)?, (*mode).into(), cli.witness),
        Command::Primdec { pair, oracle } => cmd_primdec(&parse_pair(pair)?, *oracle, cli.witness),
        Command::Powers { pair, t, oracle } => cmd_powers(&parse_pair(pair)?, *t, *oracle),
        Command::Sweep { n_max, s_max, modes, budget_seconds, parallelism } => {
            cmd_sweep(sweep_config(*n_max, *s_max, modes, *budget_seconds, *parallelism)?)
        }
        Command::VerifyExamples => cmd_verify_examples(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.doc).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
