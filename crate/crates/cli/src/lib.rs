//! Command pipelines behind the `veerkit` binary.
//!
//! Each command computes its payload, writes output to the given sink, and
//! returns a [`RunReport`] so callers can inspect results without scraping
//! text. Streaming commands (`covers`, `survey`) emit newline-delimited JSON
//! records; the others print human-readable lines by default and the full
//! report as a single JSON document under `--json`.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use veerkit_core::braid::{expand_factorization, verify_quasipositive, BraidWord};
use veerkit_core::cover::{check_condition, enumerate_covers, Coloring, ConditionSpec};
use veerkit_core::error::CoreError;
use veerkit_core::perm::Permutation;
use veerkit_core::twist::{
    expected_max_sl, is_universal_range, quasipositive_factorization, twist_braid, Family,
    TwistKnotSpec,
};
use veerkit_core::veering::{
    detail, left_veering_witness_with_budget, reduce_all, reduction_chain, worked_example,
    DetailedBranchingWord, Verdict,
};

pub use veerkit_core::veering::DEFAULT_BUDGET;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Covers beyond this degree are outside the supported envelope.
pub const MAX_DEGREE: usize = 7;

/// The five-letter irreducible form the built-in example must reach.
pub const EXAMPLE_TARGET: &str = "A2{6->5} A3{5->4} A2{4->3} A1{3->7} A3{7->6}'";

/// A failed command, carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Display) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }

    pub fn internal(message: impl Display) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.to_string(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::invalid(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        // a closed downstream pipe is not a failure; exit quietly
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError {
                code: 0,
                message: String::new(),
            };
        }
        CliError::internal(format!("write failed: {e}"))
    }
}

/// Flags shared by every command.
#[derive(Debug, Clone)]
pub struct Options {
    /// print the RunReport as a JSON document (streamed records keep flowing first)
    pub json: bool,
    /// echoed into the report; no command draws randomness today
    pub seed: Option<u64>,
    /// visited-word budget for exhaustive reductions
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            seed: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// One command run: echoed inputs, command-specific results, wall time.
/// Deterministic modulo `timing_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub timing_ms: u128,
    pub version: String,
}

fn finish(command: &str, inputs: Value, results: Value, started: Instant) -> RunReport {
    RunReport {
        command: command.to_string(),
        inputs,
        results,
        timing_ms: started.elapsed().as_millis(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::internal(format!("serialization: {e}")))
}

/// Rebuilds a coloring from its JSON record, revalidating every permutation.
pub fn parse_cover(text: &str) -> Result<Coloring, CliError> {
    #[derive(serde::Deserialize)]
    struct CoverJson {
        k: usize,
        initial: Vec<Vec<usize>>,
    }
    let raw: CoverJson = serde_json::from_str(text)
        .map_err(|e| CliError::invalid(format!("malformed cover JSON: {e}")))?;
    let perms = raw
        .initial
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>, CoreError>>()?;
    Ok(Coloring::new(raw.k, perms)?)
}

fn read_cover(path: &Path) -> Result<Coloring, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_cover(&text)
}

fn check_degree(d: usize) -> Result<(), CliError> {
    if d < 1 || d > MAX_DEGREE {
        return Err(CliError::invalid(format!(
            "degree {d} outside the supported range 1..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

/// Braid and self-linking data for one twist parameter.
pub fn cmd_gen(
    m: i64,
    rep: Option<usize>,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let spec = TwistKnotSpec::new(m, rep)?;
    let braid = twist_braid(&spec);
    let sl = braid
        .self_linking()
        .map_err(|e| CliError::internal(format!("family braid is not a knot: {e}")))?;
    let expected = expected_max_sl(m);
    let results = json!({
        "m": m,
        "family": spec.family().name(),
        "rep": spec.rep(),
        "braid": braid.signed_letters(),
        "strands": braid.strands(),
        "sl": sl,
        "expectedSl": expected,
        "slMatches": sl == expected,
        "universal": is_universal_range(m),
    });
    let report = finish(
        "gen",
        json!({"m": m, "rep": rep, "seed": opts.seed}),
        results,
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        writeln!(out, "braid: {}", braid.to_text())?;
        writeln!(out, "{}", to_json(&report.results)?)?;
    }
    Ok(report)
}

/// Streams every cover of the braid closure at one degree or all degrees up
/// to a maximum, one JSON record per line.
pub fn cmd_covers(
    braid_text: &str,
    k: Option<usize>,
    max_k: Option<usize>,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let braid = BraidWord::parse(braid_text, None)?;
    let degrees: Vec<usize> = match (k, max_k) {
        (Some(d), None) => vec![d],
        (None, Some(top)) => {
            check_degree(top)?;
            (1..=top).collect()
        }
        _ => {
            return Err(CliError {
                code: EXIT_USAGE,
                message: "pass exactly one of --k and --max-k".to_string(),
            })
        }
    };
    let mut counts = BTreeMap::new();
    let mut total = 0usize;
    for &d in &degrees {
        check_degree(d)?;
        let covers = enumerate_covers(&braid, d)?;
        counts.insert(d.to_string(), covers.len());
        total += covers.len();
        for c in &covers {
            writeln!(out, "{}", to_json(c)?)?;
        }
    }
    let report = finish(
        "covers",
        json!({"braid": braid.signed_letters(), "k": k, "maxK": max_k, "seed": opts.seed}),
        json!({"counts": counts, "total": total}),
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    }
    Ok(report)
}

fn is_cyclic(c: &Coloring) -> bool {
    let Some(first) = c.initial().first() else {
        return false;
    };
    c.k() >= 2 && first.cycle_count() == 1 && c.initial().iter().all(|p| p == first)
}

/// Enumerates all covers of a twist knot up to a degree and runs the witness
/// search on each, streaming one verdict record per cover and closing with a
/// summary report. A left-veering witness on a cyclic cover of the
/// quasipositive family is a build-level inconsistency.
pub fn cmd_survey(
    m: i64,
    max_k: usize,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let spec = TwistKnotSpec::new(m, None)?;
    check_degree(max_k)?;
    let braid = twist_braid(&spec);
    let condition_spec = (spec.family() != Family::EvenNegative).then(|| ConditionSpec {
        family: spec.family(),
        n: spec.n(),
    });
    let mut counts = BTreeMap::new();
    let mut nontrivial = 0usize;
    let mut all_left_veering = true;
    let mut inconclusive = 0usize;
    for d in 1..=max_k {
        let covers = enumerate_covers(&braid, d)?;
        counts.insert(d.to_string(), covers.len());
        for c in &covers {
            let (verdict, witness, left_veering) =
                match left_veering_witness_with_budget(&braid, c, opts.budget) {
                    Ok(r) => {
                        let lv = r.verdict == Verdict::LeftVeering;
                        (json!(r.verdict), json!(r.witness), lv)
                    }
                    Err(CoreError::WitnessInconclusive { .. }) => {
                        inconclusive += 1;
                        (json!("inconclusive"), Value::Null, false)
                    }
                    Err(e) => {
                        return Err(CliError::internal(format!(
                            "witness search failed on an enumerated cover: {e}"
                        )))
                    }
                };
            if d >= 2 {
                nontrivial += 1;
                if !left_veering {
                    all_left_veering = false;
                }
            }
            if left_veering && spec.family() == Family::EvenNegative && is_cyclic(c) {
                return Err(CliError::internal(
                    "left-veering witness on a cyclic cover of a quasipositive braid",
                ));
            }
            let mut record = json!({
                "k": d,
                "cover": c,
                "verdict": verdict,
                "witness": witness,
            });
            if let Some(cs) = &condition_spec {
                let sheet = check_condition(c, cs)
                    .map_err(|e| CliError::internal(format!("condition check: {e}")))?;
                record["condition"] = json!(sheet);
            }
            writeln!(out, "{}", to_json(&record)?)?;
        }
    }
    let vacuous = nontrivial == 0;
    let summary = format!(
        "all nontrivial covers left-veering: {}",
        if all_left_veering { "yes" } else { "no" }
    );
    let results = json!({
        "summary": summary,
        "allNontrivialLeftVeering": all_left_veering,
        "vacuous": vacuous,
        "nontrivialCovers": nontrivial,
        "inconclusive": inconclusive,
        "coverCounts": counts,
    });
    let report = finish(
        "survey",
        json!({"m": m, "maxK": max_k, "budget": opts.budget, "seed": opts.seed}),
        results,
        started,
    );
    writeln!(out, "{}", to_json(&report)?)?;
    Ok(report)
}

/// Runs the built-in seven-sheet example end to end and prints the reduction
/// chain to its five-letter irreducible form. Failure to reach that form is
/// an internal assertion failure, not bad input.
pub fn cmd_example(opts: &Options, out: &mut dyn Write) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let (cover, word, start_sheet) = worked_example();
    let internal = |e: CoreError| CliError::internal(format!("example fixture: {e}"));
    let lift = detail(&word, &cover, start_sheet).map_err(internal)?;
    let forms = reduce_all(&lift, &cover, opts.budget).map_err(internal)?;
    let target = DetailedBranchingWord::parse(EXAMPLE_TARGET).map_err(internal)?;
    if !forms.contains(&target) {
        return Err(CliError::internal(
            "irreducible forms miss the expected five-letter word",
        ));
    }
    let chain = reduction_chain(&lift, &cover, &target, opts.budget)
        .map_err(internal)?
        .ok_or_else(|| CliError::internal("no reduction chain reaches the expected word"))?;
    let chain_strings: Vec<String> = chain.iter().map(|w| w.to_string()).collect();
    let form_strings: Vec<String> = forms.iter().map(|w| w.to_string()).collect();
    let results = json!({
        "start": lift.to_string(),
        "target": EXAMPLE_TARGET,
        "chain": chain_strings,
        "irreducible": form_strings,
        "irreducibleCount": form_strings.len(),
    });
    let report = finish(
        "example",
        json!({"budget": opts.budget, "seed": opts.seed}),
        results,
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        for (i, w) in chain_strings.iter().enumerate() {
            if i == 0 {
                writeln!(out, "{w}")?;
            } else {
                writeln!(out, "-> {w}")?;
            }
        }
        writeln!(out, "irreducible forms: {}", form_strings.len())?;
    }
    Ok(report)
}

/// Builds the stored quasipositive factorization for an even negative twist
/// parameter and verifies it against the braid with the word-problem solver.
pub fn cmd_qp(
    m: i64,
    rep: Option<usize>,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let spec = TwistKnotSpec::new(m, rep)?;
    let factorization = quasipositive_factorization(&spec)?;
    let braid = twist_braid(&spec);
    let expanded = expand_factorization(&factorization);
    let verified = verify_quasipositive(&braid, &factorization)
        .map_err(|e| CliError::internal(format!("verification: {e}")))?;
    if !verified {
        return Err(CliError::internal(
            "stored factorization does not verify against the braid",
        ));
    }
    let factors: Vec<Value> = factorization
        .factors()
        .iter()
        .map(|f| {
            json!({
                "conjugator": f.conjugator.signed_letters(),
                "generator": f.generator,
            })
        })
        .collect();
    let results = json!({
        "m": m,
        "family": spec.family().name(),
        "rep": spec.rep(),
        "braid": braid.signed_letters(),
        "factors": factors,
        "expanded": expanded.signed_letters(),
        "verified": verified,
    });
    let report = finish(
        "qp",
        json!({"m": m, "rep": rep, "seed": opts.seed}),
        results,
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        writeln!(out, "m: {m}")?;
        writeln!(out, "family: {}", spec.family().name())?;
        if let Some(l) = spec.rep() {
            writeln!(out, "rep: {l}")?;
        }
        writeln!(out, "factors: {}", factorization.factor_count())?;
        writeln!(out, "expanded: {}", expanded.to_text())?;
        writeln!(out, "braid: {}", braid.to_text())?;
        writeln!(out, "verified: {verified}")?;
    }
    Ok(report)
}

fn form_text(w: &DetailedBranchingWord) -> String {
    if w.is_empty() {
        "(empty)".to_string()
    } else {
        w.to_string()
    }
}

/// Exhaustively reduces a detailed word over a cover read from a JSON file
/// and prints every irreducible form.
pub fn cmd_reduce(
    cover_path: &Path,
    word_text: &str,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let coloring = read_cover(cover_path)?;
    let sc = coloring.as_surface_cover();
    let word = DetailedBranchingWord::parse(word_text)?;
    let forms = reduce_all(&word, &sc, opts.budget).map_err(|e| match e {
        CoreError::BudgetExhausted { .. } => CliError::invalid(format!("{e}; raise --budget")),
        other => CliError::invalid(other),
    })?;
    let form_strings: Vec<String> = forms.iter().map(|w| w.to_string()).collect();
    let results = json!({
        "word": word.to_string(),
        "forms": form_strings,
        "count": form_strings.len(),
    });
    let report = finish(
        "reduce",
        json!({
            "cover": cover_path.display().to_string(),
            "word": word_text,
            "budget": opts.budget,
            "seed": opts.seed,
        }),
        results,
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        for f in &forms {
            writeln!(out, "{}", form_text(f))?;
        }
    }
    Ok(report)
}

/// Runs the left-veering witness search for a braid against a cover read
/// from a JSON file and prints the report.
pub fn cmd_veering(
    braid_text: &str,
    cover_path: &Path,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let braid = BraidWord::parse(braid_text, None)?;
    let coloring = read_cover(cover_path)?;
    let veering =
        left_veering_witness_with_budget(&braid, &coloring, opts.budget).map_err(|e| match e {
            CoreError::WitnessInconclusive { .. } => {
                CliError::invalid(format!("{e}; raise --budget"))
            }
            other => CliError::invalid(other),
        })?;
    let results = serde_json::to_value(&veering)
        .map_err(|e| CliError::internal(format!("serialization: {e}")))?;
    let report = finish(
        "veering",
        json!({
            "braid": braid.signed_letters(),
            "cover": cover_path.display().to_string(),
            "budget": opts.budget,
            "seed": opts.seed,
        }),
        results.clone(),
        started,
    );
    if opts.json {
        writeln!(out, "{}", to_json(&report)?)?;
    } else {
        writeln!(out, "{}", to_json(&veering)?)?;
    }
    Ok(report)
}
