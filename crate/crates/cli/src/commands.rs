use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;
use skewmorph::classify::{
    analyze_group, count_closed_form, cross_check, enumerate_constructive_with, oracle_exhaustive, oracle_pruned,
    Discrepancy, EnumerationReport, GroupAnalysis, OracleChoice, PrunedConfig, SkewRecord, EXHAUSTIVE_BOUND,
};
use skewmorph::skew::{classify, compute_power_function, verify_criterion_with_cap, verify_definition};
use skewmorph::{Error, Modulus, Permutation, SkewMorphism};

use crate::args::{Cli, Command, Format, ModulusArgs, OracleMode};
use crate::input::read_candidates;
use crate::render::{csv, json, opt, semis, spaced};
use crate::{Failure, Limits, Outcome, Status};

pub fn dispatch(cli: &Cli, limits: &Limits) -> Result<Outcome, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Count(m) => count(m, f),
        Command::Enum(m) => enumerate(m, f, limits),
        Command::Verify { input } => verify(input, f, limits),
        Command::Classify { input } => classify_candidates(input, f),
        Command::Oracle { n, mode, bound, checkpoint, stats } => {
            let cfg = pruned_config(*bound, checkpoint.as_deref(), limits);
            oracle(*n, *mode, &cfg, *stats, f)
        }
        Command::Group { modulus, i, j } => group(modulus, *i, *j, f, limits),
        Command::Crosscheck { modulus, oracle, checkpoint, bound } => {
            let choice = if *oracle {
                OracleChoice::Auto(pruned_config(*bound, checkpoint.as_deref(), limits))
            } else {
                OracleChoice::None
            };
            crosscheck(modulus, &choice, f, limits)
        }
    }
}

fn modulus(m: &ModulusArgs) -> Result<Modulus, Failure> {
    Ok(Modulus::new(m.p, m.e)?)
}

fn ok(body: Vec<u8>) -> Result<Outcome, Failure> {
    Ok(Outcome { body, status: Status::Success })
}

fn pruned_config(bound: u32, checkpoint: Option<&Path>, limits: &Limits) -> PrunedConfig {
    PrunedConfig {
        bound,
        time_cap: Some(limits.time_cap),
        checkpoint: checkpoint.map(Path::to_path_buf),
        execution: limits.execution,
    }
}

#[derive(Serialize)]
struct CountOut {
    p: u32,
    e: u32,
    n: u32,
    n1: u64,
    n2: u64,
    total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn count(args: &ModulusArgs, f: Format) -> Result<Outcome, Failure> {
    let m = modulus(args)?;
    let c = count_closed_form(&m);
    let out = CountOut { p: m.p(), e: m.e(), n: m.n(), n1: c.n1, n2: c.n2, total: c.total, note: c.note };
    ok(match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["p", "e", "n", "n1", "n2", "total", "note"],
            [[out.p, out.e, out.n].map(|v| v.to_string()).into_iter().chain([
                out.n1.to_string(),
                out.n2.to_string(),
                out.total.to_string(),
                opt(&out.note),
            ])],
        )?,
        Format::Plain => {
            let mut s = format!("N1 {}\nN2 {}\ntotal {}\n", out.n1, out.n2, out.total);
            if let Some(note) = out.note {
                s.push_str(&format!("note: {note}\n"));
            }
            s.into_bytes()
        }
    })
}

#[derive(Serialize)]
struct EnumOut<'a> {
    p: u32,
    e: u32,
    n: u32,
    records: &'a [SkewRecord],
}

fn enumerate(args: &ModulusArgs, f: Format, limits: &Limits) -> Result<Outcome, Failure> {
    let m = modulus(args)?;
    let records = enumerate_constructive_with(&m, limits.execution)?;
    ok(match f {
        Format::Json => json(&EnumOut { p: m.p(), e: m.e(), n: m.n(), records: &records })?,
        Format::Csv => csv(
            &["i", "j", "k", "l", "order", "images", "pi"],
            records.iter().map(|r| {
                r.tuple.map(|v| v.to_string()).into_iter().chain([r.order.to_string(), semis(&r.images), semis(&r.pi)])
            }),
        )?,
        Format::Plain => records
            .iter()
            .map(|r| {
                let [i, j, k, l] = r.tuple;
                format!("({i},{j},{k},{l}) order {}: {}\n", r.order, spaced(&r.images))
            })
            .collect::<String>()
            .into_bytes(),
    })
}

#[derive(Serialize)]
struct Verdict {
    index: usize,
    n: usize,
    accepted: bool,
    definition: bool,
    criterion: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct VerifyOut {
    accepted: usize,
    rejected: usize,
    candidates: Vec<Verdict>,
}

fn verdict(index: usize, images: Vec<u32>, cap: usize) -> Result<Verdict, Failure> {
    let n = images.len();
    let rejected = |definition, criterion, reason: String| Verdict {
        index,
        n,
        accepted: false,
        definition,
        criterion,
        order: None,
        pi: None,
        reason: Some(reason),
    };
    let perm = match Permutation::from_images(images) {
        Ok(p) => p,
        Err(e) => return Ok(rejected(false, Some(false), e.to_string())),
    };
    if perm.degree() == 0 {
        return Ok(rejected(false, Some(false), "empty image sequence".into()));
    }
    if perm.apply(0) != 0 {
        return Ok(rejected(false, Some(false), "does not fix 0".into()));
    }
    let definition = verify_definition(&perm);
    let criterion = match verify_criterion_with_cap(&perm, cap) {
        Ok(c) => c,
        Err(e @ (Error::ClosureCapExceeded { .. } | Error::OrderOverflow)) => {
            return Ok(rejected(definition, None, format!("criterion not evaluated: {e}")));
        }
        Err(e) => return Err(e.into()),
    };
    if definition != criterion {
        return Err(Failure::internal(format!(
            "candidate {index}: definition says {definition}, criterion says {criterion}"
        )));
    }
    if !definition {
        return Ok(rejected(false, Some(false), "fails the skew-morphism identity".into()));
    }
    let pi = compute_power_function(&perm)?.ok_or_else(|| Failure::internal("accepted map has no power function"))?;
    Ok(Verdict {
        index,
        n,
        accepted: true,
        definition,
        criterion: Some(criterion),
        order: Some(pi.order()),
        pi: Some(pi.values().to_vec()),
        reason: None,
    })
}

fn verify(input: &Path, f: Format, limits: &Limits) -> Result<Outcome, Failure> {
    let candidates = read_candidates(input)?;
    let verdicts: Vec<Verdict> =
        candidates.into_iter().enumerate().map(|(i, c)| verdict(i, c, limits.closure_cap)).collect::<Result<_, _>>()?;
    let accepted = verdicts.iter().filter(|v| v.accepted).count();
    let out = VerifyOut { accepted, rejected: verdicts.len() - accepted, candidates: verdicts };
    let status = if out.rejected == 0 { Status::Success } else { Status::Negative };
    let body = match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["index", "n", "accepted", "definition", "criterion", "order", "pi", "reason"],
            out.candidates.iter().map(|v| {
                [
                    v.index.to_string(),
                    v.n.to_string(),
                    v.accepted.to_string(),
                    v.definition.to_string(),
                    opt(&v.criterion),
                    opt(&v.order),
                    v.pi.as_deref().map(semis).unwrap_or_default(),
                    opt(&v.reason),
                ]
            }),
        )?,
        Format::Plain => {
            let mut s = String::new();
            for v in &out.candidates {
                match (&v.order, &v.reason) {
                    (Some(d), _) => s.push_str(&format!("{}: accepted, order {d}\n", v.index)),
                    (_, reason) => s.push_str(&format!("{}: rejected, {}\n", v.index, opt(reason))),
                }
            }
            s.push_str(&format!("{} accepted, {} rejected\n", out.accepted, out.rejected));
            s.into_bytes()
        }
    };
    Ok(Outcome { body, status })
}

#[derive(Serialize)]
struct Classified {
    index: usize,
    n: usize,
    tuple: Option<[u64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn classify_one(index: usize, images: Vec<u32>) -> Result<Classified, Failure> {
    let n = images.len();
    let unclassified = |reason: String| Classified { index, n, tuple: None, order: None, reason: Some(reason) };
    let m = match Modulus::from_order(n as u32) {
        Ok(m) if m.e() >= 2 => m,
        Ok(_) => return Ok(unclassified(format!("{n} is prime; every skew-morphism of Z_{n} is an automorphism"))),
        Err(e) => return Ok(unclassified(e.to_string())),
    };
    let s = match Permutation::from_images(images).map(SkewMorphism::new) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) | Err(e) => return Ok(unclassified(e.to_string())),
    };
    let t = classify(&s, &m)?;
    Ok(Classified { index, n, tuple: Some(t.as_array()), order: Some(s.order()), reason: None })
}

fn classify_candidates(input: &Path, f: Format) -> Result<Outcome, Failure> {
    let results: Vec<Classified> =
        read_candidates(input)?.into_iter().enumerate().map(|(i, c)| classify_one(i, c)).collect::<Result<_, _>>()?;
    let status = if results.iter().all(|r| r.tuple.is_some()) { Status::Success } else { Status::Negative };
    let body = match f {
        Format::Json => json(&serde_json::json!({ "results": results }))?,
        Format::Csv => csv(
            &["index", "n", "i", "j", "k", "l", "order", "reason"],
            results.iter().map(|r| {
                let tuple = r.tuple.map_or_else(|| [(); 4].map(|_| String::new()), |t| t.map(|v| v.to_string()));
                [r.index.to_string(), r.n.to_string()].into_iter().chain(tuple).chain([opt(&r.order), opt(&r.reason)])
            }),
        )?,
        Format::Plain => results
            .iter()
            .map(|r| match (r.tuple, &r.reason) {
                (Some([i, j, k, l]), _) => format!("{}: ({i},{j},{k},{l}) order {}\n", r.index, opt(&r.order)),
                (None, reason) => format!("{}: unclassified, {}\n", r.index, opt(reason)),
            })
            .collect::<String>()
            .into_bytes(),
    };
    Ok(Outcome { body, status })
}

#[derive(Serialize)]
struct OracleOut<'a> {
    n: u32,
    count: usize,
    maps: Vec<&'a [u32]>,
}

fn oracle(n: u32, mode: OracleMode, cfg: &PrunedConfig, stats: bool, f: Format) -> Result<Outcome, Failure> {
    let exhaustive = match mode {
        OracleMode::Exhaustive => true,
        OracleMode::Pruned => false,
        OracleMode::Auto => n <= EXHAUSTIVE_BOUND,
    };
    let maps: BTreeSet<Permutation> = if exhaustive {
        oracle_exhaustive(n, cfg.execution)?
    } else {
        let run = oracle_pruned(n, cfg)?;
        if stats {
            let s = &run.stats;
            eprintln!("units {} (resumed {}), nodes {}, leaves {}", s.units, s.resumed_units, s.nodes, s.leaves);
        }
        run.maps
    };
    let out = OracleOut { n, count: maps.len(), maps: maps.iter().map(Permutation::images).collect() };
    ok(match f {
        Format::Json => json(&out)?,
        Format::Csv => csv(&["images"], out.maps.iter().map(|m| [semis(m)]))?,
        Format::Plain => {
            let mut s = format!("{} skew-morphisms of Z_{n}\n", out.count);
            for m in &out.maps {
                s.push_str(&spaced(m));
                s.push('\n');
            }
            s.into_bytes()
        }
    })
}

#[derive(Serialize)]
struct GroupOut {
    p: u32,
    e: u32,
    #[serde(flatten)]
    analysis: GroupAnalysis,
}

fn group(args: &ModulusArgs, i: u32, j: u64, f: Format, limits: &Limits) -> Result<Outcome, Failure> {
    let m = modulus(args)?;
    let a = analyze_group(i, j, &m, limits.closure_cap)?;
    let (x, y) = a.split_orders.map_or((None, None), |(x, y)| (Some(x), Some(y)));
    let fields: [(&str, String); 11] = [
        ("p", m.p().to_string()),
        ("e", m.e().to_string()),
        ("i", a.i.to_string()),
        ("j", a.j.to_string()),
        ("order", a.order.to_string()),
        ("split", a.split.to_string()),
        ("cyclic_normal_order", opt(&x)),
        ("complement_order", opt(&y)),
        ("commutator_order", a.commutator_order.to_string()),
        ("quotient_exponent", a.quotient_exponent.to_string()),
        ("center_order", a.center_order.to_string()),
    ];
    ok(match f {
        Format::Json => json(&GroupOut { p: m.p(), e: m.e(), analysis: a })?,
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).chain(["exponent"]).collect();
            csv(&header, [fields.iter().map(|(_, v)| v.clone()).chain([a.exponent.to_string()])])?
        }
        Format::Plain => fields
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| format!("{k} {v}\n"))
            .chain([format!("exponent {}\n", a.exponent)])
            .collect::<String>()
            .into_bytes(),
    })
}

fn describe(d: &Discrepancy) -> String {
    match d {
        Discrepancy::CountMismatch { enumerated, closed_form } => {
            format!("count mismatch: {enumerated} tuples, closed form {closed_form}")
        }
        Discrepancy::ConstructionFailed { tuple, reason } => format!("construction failed for {tuple:?}: {reason}"),
        Discrepancy::DuplicatePermutation { first, second, .. } => {
            format!("tuples {first:?} and {second:?} give the same permutation")
        }
        Discrepancy::OracleCountMismatch { enumerated, oracle } => {
            format!("oracle found {oracle} maps, enumeration {enumerated}")
        }
        Discrepancy::MissingFromOracle { tuple, images } => {
            format!("{tuple:?} not found by the oracle: {}", spaced(images))
        }
        Discrepancy::MissingFromFamily { images } => format!("oracle map outside the family: {}", spaced(images)),
    }
}

fn crosscheck(args: &ModulusArgs, choice: &OracleChoice, f: Format, limits: &Limits) -> Result<Outcome, Failure> {
    let m = modulus(args)?;
    let r: EnumerationReport = cross_check(&m, choice, limits.execution)?;
    let status = if r.is_consistent() { Status::Success } else { Status::Negative };
    let body = match f {
        Format::Json => json(&r)?,
        Format::Csv => csv(
            &["p", "e", "n", "n1", "n2", "total", "closed_form_total", "oracle_total", "mismatches"],
            [[
                r.p.to_string(),
                r.e.to_string(),
                r.n.to_string(),
                r.n1_count.to_string(),
                r.n2_count.to_string(),
                r.total.to_string(),
                r.closed_form_total.to_string(),
                opt(&r.oracle_total),
                r.mismatches.len().to_string(),
            ]],
        )?,
        Format::Plain => {
            let mut s = format!(
                "N1 {}\nN2 {}\ntotal {}\nclosed form {}\n",
                r.n1_count, r.n2_count, r.total, r.closed_form_total
            );
            if let Some(o) = r.oracle_total {
                s.push_str(&format!("oracle {o}\n"));
            }
            for d in &r.mismatches {
                s.push_str(&describe(d));
                s.push('\n');
            }
            s.push_str(if r.is_consistent() { "consistent\n" } else { "MISMATCH\n" });
            s.into_bytes()
        }
    };
    Ok(Outcome { body, status })
}
