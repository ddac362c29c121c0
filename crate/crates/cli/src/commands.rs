use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rolle::combinatorics::{MAX_ENUM_DEGREE, MAX_PERIODIC_LEN};
use rolle::rolle3::{
    case_comparisons, construct_3nice, construct_3nice_with_radius, evaluate,
    inequality_comparisons,
};
use rolle::search::{anderson_random, classify_with_workers, AndersonScanReport, UvBox};
use rolle::trig::{periodic_arrangement, sample_product_form};
use rolle::{
    classify as classify_samples, enumerate_periodic, enumerate_rolle_words, flat_count,
    ClassificationResult, SamplerConfig, SamplingScheme, Tuple3Arrangement,
};
use serde::Serialize;

use crate::args::{AndersonArgs, ClassifyArgs, Construct3Args, Format, TrigArgs};
use crate::output::{to_json, write_file, RunManifest};
use crate::CliError;

/// Realizable counts known for small degrees; observations above them are
/// contradictions.
const KNOWN_REALIZABLE: [u64; 6] = [0, 1, 1, 2, 10, 116];
const MAX_ROUND_TRIP_DEVIATION: f64 = 1e-6;
const MAX_TRIG_DEGREE: usize = 3;
const MAX_TRIG_DEPTH: usize = 3;

pub struct Context {
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Context {
    /// Writes the document to `--out` if given, then prints either `text` or
    /// the document.
    fn emit<P: Serialize>(
        &self,
        manifest: &RunManifest,
        payload: &P,
        text: &str,
    ) -> Result<(), CliError> {
        let json = to_json(manifest, payload)?;
        if let Some(path) = &self.out {
            write_file(path, &json)?;
        }
        match self.format {
            Format::Text => print!("{text}"),
            Format::Json => print!("{json}"),
        }
        Ok(())
    }

    fn manifest(
        &self,
        subcommand: &'static str,
        params: impl Serialize,
    ) -> Result<RunManifest, CliError> {
        Ok(RunManifest::new(subcommand, params)?.with_output(self.out.as_ref()))
    }
}

fn check_degree(n: usize) -> Result<(), CliError> {
    if (1..=MAX_ENUM_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Invalid(format!(
            "degree must be in 1..={MAX_ENUM_DEGREE}, got {n}"
        )))
    }
}

#[derive(Serialize)]
struct EnumeratePayload {
    n: usize,
    count: usize,
    flat_count: String,
    agree: bool,
    words: Vec<String>,
}

pub fn enumerate(ctx: &Context, n: usize) -> Result<(), CliError> {
    check_degree(n)?;
    let manifest = ctx.manifest("enumerate", serde_json::json!({ "n": n }))?;
    let set = enumerate_rolle_words(n).map_err(|e| CliError::Invalid(e.to_string()))?;
    let flat = flat_count(n);
    let words: Vec<String> = set.iter().map(|w| w.to_string()).collect();
    let payload = EnumeratePayload {
        n,
        count: words.len(),
        flat_count: flat.to_string(),
        agree: flat == words.len().into(),
        words,
    };
    let mut text = String::new();
    for w in &payload.words {
        writeln!(text, "{w}").ok();
    }
    writeln!(text, "count {}", payload.count).ok();
    writeln!(text, "flat_count {}", payload.flat_count).ok();
    writeln!(text, "agree {}", payload.agree).ok();
    ctx.emit(&manifest, &payload, &text)?;
    if !payload.agree {
        return Err(CliError::Contract(
            "enumeration disagrees with the closed formula".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct CountPayload {
    n: usize,
    flat_count: String,
    enumerated: Option<usize>,
    agree: Option<bool>,
}

pub fn count(ctx: &Context, n: usize, verify: bool) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Invalid("degree must be at least 1".into()));
    }
    if verify {
        check_degree(n)?;
    }
    let manifest = ctx.manifest("count", serde_json::json!({ "n": n, "verify": verify }))?;
    let flat = flat_count(n);
    let enumerated = if verify {
        Some(
            enumerate_rolle_words(n)
                .map_err(|e| CliError::Invalid(e.to_string()))?
                .len(),
        )
    } else {
        None
    };
    let agree = enumerated.map(|c| flat == c.into());
    let payload = CountPayload {
        n,
        flat_count: flat.to_string(),
        enumerated,
        agree,
    };
    let mut text = format!("flat_count {}\n", payload.flat_count);
    if let (Some(c), Some(a)) = (enumerated, agree) {
        writeln!(text, "enumerated {c}\nagree {a}").ok();
    }
    ctx.emit(&manifest, &payload, &text)?;
    if agree == Some(false) {
        return Err(CliError::Contract(
            "enumeration disagrees with the closed formula".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyParams {
    n: usize,
    samples: u64,
    seed: u64,
    scheme: SamplingScheme,
    half_width: f64,
}

#[derive(Serialize)]
struct ClassifyPayload {
    distinct: usize,
    flat_count: String,
    /// Lower bound on the realizable fraction.
    ratio_lower_bound: f64,
    known_realizable: Option<u64>,
    result: ClassificationResult,
}

pub fn classify(ctx: &Context, a: ClassifyArgs) -> Result<(), CliError> {
    check_degree(a.n)?;
    if a.samples == 0 {
        return Err(CliError::Invalid("--samples must be at least 1".into()));
    }
    let cfg = SamplerConfig::new(a.n, a.scheme, a.half_width, a.seed)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let params = ClassifyParams {
        n: a.n,
        samples: a.samples,
        seed: a.seed,
        scheme: a.scheme,
        half_width: a.half_width,
    };
    let manifest = ctx.manifest("classify", params)?;
    let result = match a.workers {
        Some(w) => classify_with_workers(&cfg, a.samples, w)
            .map_err(|e| CliError::Contract(e.to_string()))?,
        None => classify_samples(&cfg, a.samples),
    };
    let flat = flat_count(a.n);
    let distinct = result.distinct();
    let payload = ClassifyPayload {
        distinct,
        flat_count: flat.to_string(),
        ratio_lower_bound: result.ratio_lower_bound(),
        known_realizable: KNOWN_REALIZABLE.get(a.n).copied(),
        result,
    };
    let r = &payload.result;
    let mut text = String::new();
    for (k, c) in &r.counts {
        writeln!(text, "{k} {c}").ok();
    }
    writeln!(
        text,
        "samples {} strict {}",
        r.samples_attempted, r.samples_strict
    )
    .ok();
    writeln!(
        text,
        "distinct {distinct} of {} admissible",
        payload.flat_count
    )
    .ok();
    ctx.emit(&manifest, &payload, &text)?;
    if let Some(bound) = payload.known_realizable {
        if distinct as u64 > bound {
            return Err(CliError::Contract(format!(
                "observed {distinct} distinct sequences, more than the {bound} realizable at n = {}",
                a.n
            )));
        }
    }
    Ok(())
}

fn parse_tuple(v: &[f64]) -> Result<Tuple3Arrangement, CliError> {
    let arr: [f64; 6] = v.try_into().map_err(|_| {
        CliError::Invalid(format!(
            "expected 6 values x1 x2 x3 y1 y2 z1, got {}",
            v.len()
        ))
    })?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Invalid("tuple entries must be finite".into()));
    }
    Ok(Tuple3Arrangement::from_array(arr))
}

#[derive(Serialize)]
struct ComparisonRow {
    label: String,
    lhs: f64,
    rhs: f64,
    holds: bool,
}

#[derive(Serialize)]
struct Check3Payload {
    tuple: Tuple3Arrangement,
    admissible: bool,
    lines: Vec<ComparisonRow>,
    case: String,
    case_checks: Vec<ComparisonRow>,
}

pub fn check3(ctx: &Context, v: &[f64]) -> Result<(), CliError> {
    let t = parse_tuple(v)?;
    let manifest = ctx.manifest("check3", serde_json::json!({ "tuple": t }))?;
    let lines: Vec<ComparisonRow> = inequality_comparisons(&t)
        .iter()
        .map(|c| ComparisonRow {
            label: c.label.to_string(),
            lhs: c.lhs,
            rhs: c.rhs,
            holds: c.holds(),
        })
        .collect();
    let (case, parts) = case_comparisons(&t);
    let case_checks = parts
        .iter()
        .map(|c| ComparisonRow {
            label: format!("{:?}", c.label).to_lowercase(),
            lhs: c.lhs,
            rhs: c.rhs,
            holds: c.holds(),
        })
        .collect();
    let payload = Check3Payload {
        tuple: t,
        admissible: lines.iter().all(|l| l.holds),
        lines,
        case: case.to_string(),
        case_checks,
    };
    let mut text = String::new();
    for line in 1..=4u8 {
        let label = format!("line {line}");
        let rows: Vec<&ComparisonRow> = payload.lines.iter().filter(|r| r.label == label).collect();
        let pass = rows.iter().all(|r| r.holds);
        let detail: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.6} < {:.6}", r.lhs, r.rhs))
            .collect();
        writeln!(
            text,
            "{label}: {} ({})",
            if pass { "pass" } else { "FAIL" },
            detail.join(", ")
        )
        .ok();
    }
    writeln!(text, "case {}", payload.case).ok();
    for r in &payload.case_checks {
        writeln!(
            text,
            "  {}: {:.6} < {:.6} {}",
            r.label,
            r.lhs,
            r.rhs,
            if r.holds { "pass" } else { "FAIL" }
        )
        .ok();
    }
    writeln!(text, "admissible {}", payload.admissible).ok();
    ctx.emit(&manifest, &payload, &text)
}

#[derive(Serialize)]
struct Construct3Payload {
    tuple: Tuple3Arrangement,
    fillet_radius: f64,
    domain: (f64, f64),
    recovered: Tuple3Arrangement,
    max_relative_deviation: f64,
    spline_out: Option<String>,
    curve_out: Option<String>,
}

pub fn construct3(ctx: &Context, a: Construct3Args) -> Result<(), CliError> {
    let t = parse_tuple(&a.tuple)?;
    if let Some(r) = a.radius {
        if !(r.is_finite() && r > 0.0) {
            return Err(CliError::Invalid("--radius must be positive".into()));
        }
    }
    let params = serde_json::json!({ "tuple": t, "samples": a.samples, "radius": a.radius });
    let manifest = RunManifest::new("construct3", params)?
        .with_output(ctx.out.as_ref())
        .with_output(a.spline_out.as_ref())
        .with_output(a.curve_out.as_ref());
    let built = match a.radius {
        Some(r) => construct_3nice_with_radius(&t, r),
        None => construct_3nice(&t),
    };
    let spline = built.map_err(|e| match e {
        rolle::Rolle3Error::Inadmissible(_) => CliError::Invalid(e.to_string()),
        other => CliError::Contract(other.to_string()),
    })?;
    let recovered = spline
        .recovered_arrangement()
        .map_err(|e| CliError::Contract(e.to_string()))?;
    let deviation = t.relative_deviation(&recovered);

    if let Some(path) = &a.spline_out {
        write_file(path, &to_json(&manifest, &spline)?)?;
    }
    if let Some(path) = &a.curve_out {
        let (lo, hi) = spline.domain();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["x", "f", "df", "d2f"])?;
        let rows = a.samples;
        for i in 0..rows {
            let x = if i + 1 == rows {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (rows - 1) as f64
            };
            let vals = (0..3)
                .map(|order| evaluate(&spline, x, order))
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| CliError::Contract(e.to_string()))?;
            w.serialize((x, vals[0], vals[1], vals[2]))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Contract(e.to_string()))?;
        write_file(path, &String::from_utf8_lossy(&bytes))?;
    }

    let payload = Construct3Payload {
        tuple: t,
        fillet_radius: spline.fillet_radius(),
        domain: spline.domain(),
        recovered,
        max_relative_deviation: deviation,
        spline_out: a.spline_out.as_ref().map(|p| p.display().to_string()),
        curve_out: a.curve_out.as_ref().map(|p| p.display().to_string()),
    };
    let r = recovered;
    let text = format!(
        "recovered x = ({}, {}, {}), y = ({}, {}), z = {}\nmax deviation {:e}\nfillet radius {:e}\n",
        r.x1, r.x2, r.x3, r.y1, r.y2, r.z1, deviation, payload.fillet_radius
    );
    ctx.emit(&manifest, &payload, &text)?;
    // NaN deviation counts as a failure
    if deviation.is_nan() || deviation > MAX_ROUND_TRIP_DEVIATION {
        return Err(CliError::Contract(format!(
            "round-trip deviation {deviation:e} exceeds {MAX_ROUND_TRIP_DEVIATION:e}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct AndersonPayload {
    mode: &'static str,
    report: AndersonScanReport,
}

pub fn anderson(ctx: &Context, a: AndersonArgs) -> Result<(), CliError> {
    let domain = UvBox::new(a.u_min, a.u_max, a.v_min, a.v_max);
    if [a.u_min, a.u_max, a.v_min, a.v_max]
        .iter()
        .any(|x| !x.is_finite())
    {
        return Err(CliError::Invalid("box bounds must be finite".into()));
    }
    let params = serde_json::json!({
        "grid": a.grid, "random": a.random, "seed": a.seed, "box": domain,
    });
    let manifest = ctx.manifest("anderson", params)?;
    let run = || -> Result<(&'static str, AndersonScanReport), CliError> {
        match (a.grid, a.random, a.seed) {
            (Some(d), _, _) => Ok((
                "grid",
                rolle::anderson_scan(d as usize, domain)
                    .map_err(|e| CliError::Invalid(e.to_string()))?,
            )),
            (None, Some(s), Some(seed)) => Ok(("random", anderson_random(s, seed, domain))),
            _ => Err(CliError::Invalid("--random requires --seed".into())),
        }
    };
    let (mode, report) = match a.workers {
        Some(w) => rayon_pool(w)?.install(run)?,
        None => run()?,
    };
    let text = format!(
        "points {}\nreal_rooted {}\nhypotheses_hold {}\ncounterexamples {}\n",
        report.points, report.real_rooted, report.hypotheses_hold, report.counterexamples
    );
    let payload = AndersonPayload { mode, report };
    ctx.emit(&manifest, &payload, &text)?;
    if payload.report.counterexamples > 0 {
        return Err(CliError::Contract(format!(
            "{} counterexamples found, e.g. {:?}",
            payload.report.counterexamples,
            payload.report.examples.first()
        )));
    }
    Ok(())
}

fn rayon_pool(workers: usize) -> Result<rolle::search::WorkerPool, CliError> {
    rolle::search::WorkerPool::new(workers).map_err(|e| CliError::Contract(e.to_string()))
}

#[derive(Serialize)]
struct TrigParams {
    n: usize,
    k: usize,
    samples: u64,
    seed: u64,
    min_gap: f64,
}

#[derive(Serialize)]
struct TrigPayload {
    copies: usize,
    samples_attempted: u64,
    samples_strict: u64,
    observed: BTreeMap<String, u64>,
    universe_size: Option<usize>,
    all_in_universe: Option<bool>,
}

pub fn trig(ctx: &Context, a: TrigArgs) -> Result<(), CliError> {
    if !(1..=MAX_TRIG_DEGREE).contains(&a.n) || !(1..=MAX_TRIG_DEPTH).contains(&a.k) {
        return Err(CliError::Invalid(format!(
            "need 1 <= n <= {MAX_TRIG_DEGREE} and 1 <= k <= {MAX_TRIG_DEPTH}, got n = {}, k = {}",
            a.n, a.k
        )));
    }
    let max_gap = std::f64::consts::TAU / (2 * a.n) as f64;
    if !(a.min_gap > 0.0 && a.min_gap < max_gap) {
        return Err(CliError::Invalid(format!(
            "--min-gap must lie in (0, {max_gap})"
        )));
    }
    let params = TrigParams {
        n: a.n,
        k: a.k,
        samples: a.samples,
        seed: a.seed,
        min_gap: a.min_gap,
    };
    let manifest = ctx.manifest("trig", params)?;
    let copies = 2 * a.n;

    let mut observed: BTreeMap<String, u64> = BTreeMap::new();
    let mut strict = 0;
    let mut words = Vec::new();
    for index in 0..a.samples {
        let p = sample_product_form(a.n, a.min_gap, a.seed, index)
            .map_err(|e| CliError::Contract(e.to_string()))?;
        if let Ok(w) = periodic_arrangement(&p, a.k) {
            strict += 1;
            let key = w.to_string();
            if !observed.contains_key(&key) {
                words.push(w);
            }
            *observed.entry(key).or_insert(0) += 1;
        }
    }
    let universe = if copies * a.k <= MAX_PERIODIC_LEN {
        Some(enumerate_periodic(copies, a.k).map_err(|e| CliError::Contract(e.to_string()))?)
    } else {
        None
    };
    let all_in_universe = universe
        .as_ref()
        .map(|u| words.iter().all(|w| u.binary_search(w).is_ok()));
    let payload = TrigPayload {
        copies,
        samples_attempted: a.samples,
        samples_strict: strict,
        observed,
        universe_size: universe.as_ref().map(Vec::len),
        all_in_universe,
    };
    let mut text = String::new();
    for (w, c) in &payload.observed {
        writeln!(text, "{w} {c}").ok();
    }
    writeln!(
        text,
        "samples {} strict {}",
        payload.samples_attempted, payload.samples_strict
    )
    .ok();
    if let Some(u) = payload.universe_size {
        writeln!(
            text,
            "observed {} of {u} possible periodic words",
            payload.observed.len()
        )
        .ok();
    }
    ctx.emit(&manifest, &payload, &text)?;
    if payload.all_in_universe == Some(false) {
        return Err(CliError::Contract(
            "an observed word is outside the enumerated universe".into(),
        ));
    }
    Ok(())
}
