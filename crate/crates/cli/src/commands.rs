use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use quandle_core::classify::{
    build_all, classify_p3, count_formulas, family_counts, involutory_records, involutory_reps,
    pairwise_noniso, verify_built, ClassRecord, Family, Level, NonIsoReport, RecordReport,
};
use quandle_core::oracle::{census, iso_bruteforce};
use quandle_core::quandle::{center_congruence, gamma1_quandle, minimal_generating_size};
use quandle_core::{center, Error, Quandle};

use crate::output::Out;
use crate::{Cli, Command, Common, Fail, Format};

pub fn run(cli: &Cli) -> Result<(), Fail> {
    let c = &cli.common;
    match &cli.command {
        Command::Classify { p, family } => classify(*p, *family, c),
        Command::Verify {
            p,
            family,
            level,
            budget,
            inject_corrupt,
        } => {
            let level =
                level
                    .map(Level::from)
                    .unwrap_or(if *p == 5 { Level::Full } else { Level::Quick });
            verify(*p, *family, level, *budget, *inject_corrupt, c)
        }
        Command::Inspect { path } => inspect(path, c),
        Command::Enumerate { n } => enumerate(*n, c),
        Command::Iso { left, right } => iso(left, right, c),
    }
}

/// Errors in the user's input: bad files, tables that are not quandles,
/// sizes over a cap.
fn input_error(e: Error) -> Fail {
    let row = match e {
        Error::RowNotPermutation { row } | Error::EntryOutOfRange { row, .. } => Some(row),
        Error::NotIdempotent(a) | Error::NotLeftDistributive(a, _, _) => Some(a),
        _ => None,
    };
    match row {
        Some(r) => Fail::Usage(format!("{e} (row {r}, line {})", r + 2)),
        None => Fail::Usage(e.to_string()),
    }
}

fn internal(e: Error) -> Fail {
    Fail::Runtime(e.into())
}

fn records_for(p: u32, family: Option<Family>) -> Result<Vec<ClassRecord>, Fail> {
    let all = match family {
        Some(Family::Involutory(_)) => involutory_records(p),
        _ => classify_p3(p),
    }
    .map_err(internal)?;
    Ok(match family {
        Some(f) => all.into_iter().filter(|r| r.family == f).collect(),
        None => all,
    })
}

fn params_text(params: &[u32]) -> String {
    let v: Vec<String> = params.iter().map(u32::to_string).collect();
    format!("[{}]", v.join(","))
}

pub fn record_json(r: &ClassRecord) -> Value {
    json!({
        "family": r.family.tag(),
        "params": r.params,
        "group": r.group.name(),
        "p": r.p,
        "aut_images": r.aut_images,
        "flags": {
            "latin": r.flags.latin,
            "faithful": r.flags.faithful,
            "principal": r.flags.principal,
        },
        "dis_order": r.dis_order,
        "z_order": r.z_order,
    })
}

fn record_pretty(r: &ClassRecord) -> String {
    let images: Vec<String> = r
        .aut_images
        .iter()
        .enumerate()
        .map(|(i, e)| format!("g{}->{}", i + 1, params_text(e)))
        .collect();
    let yn = |b: bool| if b { "y" } else { "n" };
    format!(
        "{:<12} {:<10} {:<4} latin={} faithful={} principal={} |dis|={:<3} |Z|={}  {}",
        r.family.tag(),
        params_text(&r.params),
        r.group.name(),
        yn(r.flags.latin),
        yn(r.flags.faithful),
        yn(r.flags.principal),
        r.dis_order,
        r.z_order,
        images.join(" ")
    )
}

/// Expected per-family counts for the selection.
fn expected_counts(p: u32, family: Option<Family>) -> Result<BTreeMap<String, usize>, Fail> {
    let formulas = count_formulas(p).map_err(internal)?;
    Ok(match family {
        None => formulas.per_family,
        Some(Family::Involutory(_)) => [(family.unwrap().tag(), 1)].into(),
        Some(f) => [(f.tag(), formulas.per_family[&f.tag()])].into(),
    })
}

fn count_mismatches(
    got: &BTreeMap<String, usize>,
    expected: &BTreeMap<String, usize>,
) -> Vec<String> {
    let mut tags: Vec<&String> = got.keys().chain(expected.keys()).collect();
    tags.sort();
    tags.dedup();
    tags.into_iter()
        .filter_map(|t| {
            let (g, e) = (
                got.get(t).copied().unwrap_or(0),
                expected.get(t).copied().unwrap_or(0),
            );
            (g != e).then(|| format!("{t}: {g} records, formula gives {e}"))
        })
        .collect()
}

fn kind_counts(records: &[ClassRecord]) -> String {
    let count = |pred: fn(&Family) -> bool| records.iter().filter(|r| pred(&r.family)).count();
    let mut s = format!(
        "principal={} nonprincipal={}",
        count(|f| matches!(f, Family::Principal(_))),
        count(|f| matches!(f, Family::NonPrincipal(_)))
    );
    let inv = count(|f| matches!(f, Family::Involutory(_)));
    if inv > 0 {
        s.push_str(&format!(" involutory={inv}"));
    }
    s
}

fn classify(p: u32, family: Option<Family>, c: &Common) -> Result<(), Fail> {
    let records = records_for(p, family)?;
    let got = family_counts(&records);
    let expected = expected_counts(p, family)?;
    let mismatches = count_mismatches(&got, &expected);
    let summary = kind_counts(&records);

    let mut out = Out::open(c.output.as_deref())?;
    match c.format {
        Format::Json => {
            for r in &records {
                out.json(&record_json(r))?;
            }
            let per_family: BTreeMap<&String, Value> = expected
                .iter()
                .map(|(t, e)| {
                    (
                        t,
                        json!({"count": got.get(t).copied().unwrap_or(0), "formula": e}),
                    )
                })
                .collect();
            out.json(&json!({
                "summary": summary,
                "p": p,
                "records": records.len(),
                "per_family": per_family,
                "formulas_match": mismatches.is_empty(),
                "mismatches": mismatches,
            }))?;
        }
        Format::Tsv => {
            out.line(ClassRecord::tsv_header())?;
            for r in &records {
                out.line(r.tsv_row())?;
            }
            out.line(format!("# {summary} records={}", records.len()))?;
            for m in &mismatches {
                out.line(format!("# mismatch {m}"))?;
            }
        }
        Format::Pretty => {
            for r in &records {
                out.line(record_pretty(r))?;
            }
            out.line(format!("{} records: {summary}", records.len()))?;
            for (t, e) in &expected {
                let g = got.get(t).copied().unwrap_or(0);
                let mark = if g == *e { "ok" } else { "MISMATCH" };
                out.line(format!("  {t:<12} {g:>4} (formula {e}) {mark}"))?;
            }
        }
    }
    out.finish()?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Fail::Failed)
    }
}

/// A principal record whose automorphism makes `Fix(f)` the centre: the
/// quandle is connected but neither latin nor faithful, contrary to the
/// flags it carries.
fn corrupted_record(p: u32) -> Result<ClassRecord, Fail> {
    let mut bad = classify_p3(p)
        .map_err(internal)?
        .into_iter()
        .find(|r| r.family == Family::Principal(1))
        .expect("every prime > 3 has row-1 principal records");
    let mu = p.div_ceil(2);
    bad.params = vec![2, mu];
    bad.aut_images = vec![vec![2, 0, 0], vec![0, mu, 0]];
    Ok(bad)
}

/// One row of the verification report.
struct CheckLine {
    family: Option<(String, Vec<u32>)>,
    check: String,
    passed: bool,
    detail: String,
    extra: Value,
}

impl CheckLine {
    fn aggregate(check: &str, passed: bool, detail: String, extra: Value) -> Self {
        CheckLine {
            family: None,
            check: check.into(),
            passed,
            detail,
            extra,
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"check": self.check, "passed": self.passed, "detail": self.detail});
        if let Some((f, params)) = &self.family {
            v["family"] = json!(f);
            v["params"] = json!(params);
        }
        if let Value::Object(m) = &self.extra {
            for (k, x) in m {
                v[k] = x.clone();
            }
        }
        v
    }
}

fn report_lines(r: &RecordReport) -> Vec<CheckLine> {
    r.checks
        .iter()
        .map(|c| CheckLine {
            family: Some((r.family.tag(), r.params.clone())),
            check: c.name.into(),
            passed: c.passed,
            detail: c.detail.clone(),
            extra: Value::Null,
        })
        .collect()
}

fn noniso_line(r: &NonIsoReport, name_of: impl Fn(usize) -> Value) -> CheckLine {
    let pairs = |v: &[(usize, usize)]| -> Vec<Value> {
        v.iter()
            .map(|&(i, j)| json!([name_of(i), name_of(j)]))
            .collect()
    };
    let detail = match r.level {
        Level::Full => format!(
            "{} pairs: {} by invariants, {} by coset_iso, {} by search, {} isomorphic",
            r.pairs,
            r.by_invariants,
            r.by_coset_iso,
            r.by_bruteforce,
            r.isomorphic.len()
        ),
        Level::Quick => format!(
            "{} pairs: {} by invariants, {} left to the full level",
            r.pairs,
            r.by_invariants,
            r.unresolved.len()
        ),
    };
    CheckLine::aggregate(
        "pairwise_noniso",
        r.passed(),
        detail,
        json!({
            "separated": r.separated(),
            "records": r.records,
            "pairs": r.pairs,
            "by_invariants": r.by_invariants,
            "by_coset_iso": r.by_coset_iso,
            "by_bruteforce": r.by_bruteforce,
            "unresolved": r.unresolved.len(),
            "isomorphic": pairs(&r.isomorphic),
        }),
    )
}

fn verify(
    p: u32,
    family: Option<Family>,
    level: Level,
    budget: Option<Duration>,
    inject_corrupt: bool,
    c: &Common,
) -> Result<(), Fail> {
    let start = Instant::now();
    let over = || budget.is_some_and(|b| start.elapsed() >= b);

    let classified = records_for(p, family)?;
    let mut main_records: Vec<ClassRecord> = classified
        .iter()
        .filter(|r| !matches!(r.family, Family::Involutory(_)))
        .cloned()
        .collect();
    if inject_corrupt {
        main_records.push(corrupted_record(p)?);
    }
    let involutory: Vec<ClassRecord> = match family {
        None => involutory_records(p).map_err(internal)?,
        Some(Family::Involutory(_)) => classified.clone(),
        Some(_) => Vec::new(),
    };
    let mut records = main_records.clone();
    records.extend(involutory.iter().cloned());

    let built = build_all(&records).map_err(internal)?;
    let reports: Vec<Option<RecordReport>> = built
        .par_iter()
        .map(|b| (!over()).then(|| verify_built(b, level)))
        .collect();

    let mut lines: Vec<CheckLine> = Vec::new();
    let mut skipped = 0;
    for (b, r) in built.iter().zip(&reports) {
        match r {
            Some(r) => lines.extend(report_lines(r)),
            None => {
                skipped += 1;
                lines.push(CheckLine {
                    family: Some((b.record.family.tag(), b.record.params.clone())),
                    check: "skipped".into(),
                    passed: false,
                    detail: "time budget exhausted".into(),
                    extra: Value::Null,
                });
            }
        }
    }
    let records_passed = reports
        .iter()
        .filter(|r| r.as_ref().is_some_and(|r| r.passed()))
        .count();

    if family.is_none() || matches!(family, Some(Family::Principal(_) | Family::NonPrincipal(_))) {
        let base: Vec<ClassRecord> = classified
            .iter()
            .filter(|r| !matches!(r.family, Family::Involutory(_)))
            .cloned()
            .collect();
        let got = family_counts(&base);
        let mismatches = count_mismatches(&got, &expected_counts(p, family)?);
        lines.push(CheckLine::aggregate(
            "count_formulas",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{} records, {}", base.len(), kind_counts(&base))
            } else {
                mismatches.join("; ")
            },
            Value::Null,
        ));
    }

    let main_built = &built[..main_records.len()];
    let mut noniso_text = None;
    if !main_built.is_empty() {
        if over() {
            lines.push(CheckLine::aggregate(
                "pairwise_noniso",
                false,
                "time budget exhausted".into(),
                Value::Null,
            ));
        } else {
            let name_of = |i: usize| {
                let r = &main_built[i].record;
                json!({"family": r.family.tag(), "params": r.params})
            };
            match pairwise_noniso(main_built, level) {
                Ok(r) => {
                    noniso_text = Some(format!("{}/{}", r.separated(), r.records));
                    lines.push(noniso_line(&r, name_of));
                }
                Err(e) => lines.push(CheckLine::aggregate(
                    "pairwise_noniso",
                    false,
                    e.to_string(),
                    Value::Null,
                )),
            }
        }
    }

    if !involutory.is_empty() {
        let (passed, detail, extra) = match involutory_reps(p) {
            Ok(r) => (
                true,
                format!(
                    "{} involutory latin records, bruck_total={}",
                    r.records.len(),
                    r.bruck_total
                ),
                json!({"records": r.records.len(), "bruck_total": r.bruck_total}),
            ),
            Err(e) => (false, e.to_string(), Value::Null),
        };
        lines.push(CheckLine::aggregate(
            "involutory_reps",
            passed,
            detail,
            extra,
        ));
    }

    let passed = lines.iter().all(|l| l.passed);
    let witness = lines.iter().find(|l| !l.passed).map(|l| {
        let mut w = json!({"check": l.check, "detail": l.detail});
        if let Some((f, params)) = &l.family {
            w["family"] = json!(f);
            w["params"] = json!(params);
        }
        w
    });
    let budget_exceeded = skipped > 0 || lines.iter().any(|l| l.detail == "time budget exhausted");
    let mut text = format!(
        "{}: {records_passed}/{} records",
        if passed { "pass" } else { "fail" },
        records.len()
    );
    if let Some(t) = &noniso_text {
        text.push_str(&format!(", pairwise_noniso: {t}"));
    }
    let level_name = match level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    let elapsed = start.elapsed();

    let mut out = Out::open(c.output.as_deref())?;
    match c.format {
        Format::Json => {
            for l in &lines {
                out.json(&l.to_json())?;
            }
            out.json(&json!({
                "summary": text,
                "passed": passed,
                "p": p,
                "level": level_name,
                "records": records.len(),
                "records_passed": records_passed,
                "pairwise_noniso": noniso_text,
                "witness": witness,
                "budget_exceeded": budget_exceeded,
                "elapsed_ms": elapsed.as_millis() as u64,
            }))?;
        }
        Format::Tsv => {
            out.line("family\tparams\tcheck\tpassed\tdetail")?;
            for l in &lines {
                let (f, params) = match &l.family {
                    Some((f, params)) => (f.as_str(), params_text(params)),
                    None => ("-", "-".to_string()),
                };
                out.line(format!(
                    "{f}\t{params}\t{}\t{}\t{}",
                    l.check, l.passed, l.detail
                ))?;
            }
            out.line(format!("# {text}"))?;
        }
        Format::Pretty => {
            let mut i = 0;
            while i < lines.len() {
                let Some(key) = &lines[i].family else { break };
                let group: Vec<&CheckLine> = lines[i..]
                    .iter()
                    .take_while(|l| l.family.as_ref() == Some(key))
                    .collect();
                i += group.len();
                match group.iter().find(|l| !l.passed) {
                    None => out.line(format!("ok   {} {}", key.0, params_text(&key.1)))?,
                    Some(l) => out.line(format!(
                        "FAIL {} {}: {}: {}",
                        key.0,
                        params_text(&key.1),
                        l.check,
                        l.detail
                    ))?,
                }
            }
            for l in &lines[i..] {
                let mark = if l.passed { "ok" } else { "FAIL" };
                out.line(format!("{}: {mark} ({})", l.check, l.detail))?;
            }
            if let Some(t) = &noniso_text {
                out.line(format!("pairwise_noniso: {t}"))?;
            }
            if let Some(w) = &witness {
                out.line(format!("witness: {w}"))?;
            }
            out.line(format!(
                "{text} (level {level_name}, {:.1}s{})",
                elapsed.as_secs_f64(),
                if budget_exceeded {
                    ", budget exhausted"
                } else {
                    ""
                }
            ))?;
        }
    }
    out.finish()?;
    if passed {
        Ok(())
    } else {
        Err(Fail::Failed)
    }
}

fn read_quandle(path: &Path) -> Result<Quandle, Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
    Quandle::parse(&text).map_err(|e| match input_error(e) {
        Fail::Usage(msg) => Fail::Usage(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// `3×5 + 1×2` for three blocks of size 5 and one of size 2.
fn profile_text(profile: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in profile {
        *counts.entry(s).or_insert(0) += 1;
    }
    let parts: Vec<String> = counts
        .iter()
        .rev()
        .map(|(size, n)| format!("{n}×{size}"))
        .collect();
    parts.join(" + ")
}

fn inspect(path: &Path, c: &Common) -> Result<(), Fail> {
    let q = read_quandle(path)?;
    let n = q.size();
    let preds = q.predicates().map_err(internal)?;
    let lmlt = q.lmlt().map_err(internal)?.order();
    let dis = q.dis().map_err(internal)?;
    let z = center(dis).order();
    let gamma1 = if preds.connected {
        Some(gamma1_quandle(&q).map_err(internal)?.block_profile())
    } else {
        None
    };
    let zeta = center_congruence(&q).map_err(internal)?.block_profile();
    let gens = minimal_generating_size(&q);

    let mut yes = Vec::new();
    let mut no = Vec::new();
    for (name, holds) in [
        ("connected", preds.connected),
        ("latin", preds.latin),
        ("faithful", preds.faithful),
    ] {
        if holds {
            yes.push(name.to_string());
        } else if name == "connected" && n > 1 {
            no.push("not connected (n>1)".to_string());
        } else {
            no.push(format!("not {name}"));
        }
    }
    let mut parts = Vec::new();
    if !yes.is_empty() {
        parts.push(yes.join(" "));
    }
    parts.extend(no);
    let headline = format!("{}, |dis|={}", parts.join(", "), dis.order());

    let mut out = Out::open(c.output.as_deref())?;
    match c.format {
        Format::Json => out.json(&json!({
            "size": n,
            "axioms": true,
            "flags": preds,
            "involutory": q.is_involutory(),
            "lmlt_order": lmlt,
            "dis_order": dis.order(),
            "z_dis_order": z,
            "gamma1_blocks": gamma1,
            "zeta_blocks": zeta,
            "minimal_generating_size": gens.size,
            "generating_size_exact": gens.exact,
            "generators": gens.witness,
        }))?,
        Format::Tsv | Format::Pretty => {
            let sep = if c.format == Format::Tsv { "\t" } else { ": " };
            let yn = |b: bool| if b { "yes" } else { "no" };
            if c.format == Format::Pretty {
                out.line(&headline)?;
            }
            let rows = [
                ("size", n.to_string()),
                ("axioms", "ok".into()),
                ("connected", yn(preds.connected).into()),
                ("latin", yn(preds.latin).into()),
                ("faithful", yn(preds.faithful).into()),
                ("principal", yn(preds.principal).into()),
                ("involutory", yn(q.is_involutory()).into()),
                ("|lmlt|", lmlt.to_string()),
                ("|dis|", dis.order().to_string()),
                ("|Z(dis)|", z.to_string()),
                (
                    "gamma1 blocks",
                    gamma1
                        .as_deref()
                        .map_or("n/a (not connected)".into(), profile_text),
                ),
                ("zeta blocks", profile_text(&zeta)),
                (
                    "minimal generating size",
                    format!(
                        "{}{} {:?}",
                        gens.size,
                        if gens.exact { "" } else { " (upper bound)" },
                        gens.witness
                    ),
                ),
            ];
            for (k, v) in rows {
                out.line(format!("{k}{sep}{v}"))?;
            }
        }
    }
    out.finish()?;
    Ok(())
}

fn enumerate(n: usize, c: &Common) -> Result<(), Fail> {
    let census = census(n).map_err(input_error)?;
    let mut out = Out::open(c.output.as_deref())?;
    match c.format {
        Format::Json => out.json(&json!(census))?,
        Format::Tsv => {
            out.line("n\tall\tconnected\taffine")?;
            out.line(format!(
                "{}\t{}\t{}\t{}",
                census.n, census.all, census.connected, census.affine
            ))?;
        }
        Format::Pretty => {
            out.line(format!("n: {}", census.n))?;
            out.line(format!("all: {}", census.all))?;
            out.line(format!("connected: {}", census.connected))?;
            out.line(format!("affine: {}", census.affine))?;
        }
    }
    out.finish()?;
    Ok(())
}

fn iso(left: &Path, right: &Path, c: &Common) -> Result<(), Fail> {
    let (a, b) = (read_quandle(left)?, read_quandle(right)?);
    let witness = iso_bruteforce(&a, &b).map_err(input_error)?;
    let mut out = Out::open(c.output.as_deref())?;
    match c.format {
        Format::Json => out.json(&json!({"isomorphic": witness.is_some(), "witness": witness}))?,
        Format::Tsv | Format::Pretty => match &witness {
            Some(w) => out.line(format!("isomorphic {w:?}"))?,
            None => out.line("not isomorphic")?,
        },
    }
    out.finish()?;
    if witness.is_some() {
        Ok(())
    } else {
        Err(Fail::Failed)
    }
}
