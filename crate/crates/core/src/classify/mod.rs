//! Enumeration of `Skew(Z_{p^e})` and cross-validation against brute force.
//!
//! The constructive side maps every admissible tuple through `s_{i,j,k,l}`; the
//! oracles in [`oracle`] use nothing but the defining identity, so the two can
//! be compared as sets.

mod checkpoint;
pub mod groups;
pub mod oracle;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::perm::Permutation;
use crate::skew::{admissible_tuples, s_ijkl, AdmissibleTuple, SkewMorphism};
use crate::zmod::Modulus;

pub use groups::{analyze_group, skew_product_group, GroupAnalysis};
pub use oracle::{oracle_exhaustive, oracle_pruned, OracleRun, PrunedConfig, EXHAUSTIVE_BOUND};

/// Every admissible tuple, lexicographically. Empty when `e < 2`.
pub fn iterate_admissible(m: Modulus) -> impl Iterator<Item = AdmissibleTuple> {
    admissible_tuples(m)
}

/// Closed-form tuple counts: `n1` with `k = 0`, `n2` with `k != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCount {
    pub n1: u64,
    pub n2: u64,
    pub total: u64,
    /// Set when `e = 1`, where the count is `φ(p)` rather than the formula.
    pub note: Option<&'static str>,
}

pub const PRIME_MODULUS_NOTE: &str =
    "e = 1: every skew-morphism of Z_p is an automorphism; the count formula assumes e >= 2";

pub fn count_closed_form(m: &Modulus) -> ClosedFormCount {
    let p = m.p() as u128;
    if m.e() == 1 {
        return ClosedFormCount {
            n1: 1,
            n2: m.p() as u64 - 2,
            total: m.p() as u64 - 1,
            note: Some(PRIME_MODULUS_NOTE),
        };
    }
    let e = m.e();
    let exact = |num: u128| -> u64 {
        assert_eq!(num % (p + 1), 0, "closed form not divisible by p + 1");
        (num / (p + 1)) as u64
    };
    let n1 = exact(p * (p.pow(2 * e - 3) + 1));
    let n2 = exact((p - 2) * (p.pow(2 * e - 1) + 1));
    let total = exact((p - 1) * (p.pow(2 * e - 1) - p.pow(2 * e - 2) + 2));
    assert_eq!(n1 + n2, total);
    ClosedFormCount { n1, n2, total, note: None }
}

/// One skew-morphism with its parameters; the serialization unit of `enum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewRecord {
    pub tuple: [u64; 4],
    pub images: Vec<u32>,
    pub pi: Vec<u64>,
    pub order: u64,
}

impl SkewRecord {
    pub fn new(tuple: &AdmissibleTuple, s: &SkewMorphism) -> Self {
        SkewRecord {
            tuple: tuple.as_array(),
            images: s.perm().images().to_vec(),
            pi: s.pi().values().to_vec(),
            order: s.order(),
        }
    }
}

pub fn enumerate_constructive(m: &Modulus) -> Result<Vec<SkewRecord>> {
    enumerate_constructive_with(m, Execution::default())
}

/// Builds `s_{i,j,k,l}` for every admissible tuple. Any failure or repeated
/// permutation is reported as [`Error::Consistency`].
pub fn enumerate_constructive_with(m: &Modulus, exec: Execution) -> Result<Vec<SkewRecord>> {
    if m.e() < 2 {
        return Err(Error::OutOfRange("enumeration needs e >= 2".into()));
    }
    let tuples: Vec<AdmissibleTuple> = iterate_admissible(*m).collect();
    let records: Vec<SkewRecord> =
        exec.map(&tuples, |t| s_ijkl(t).map(|s| SkewRecord::new(t, &s))).into_iter().collect::<Result<_>>().map_err(
            |e| match e {
                Error::Consistency(_) => e,
                other => Error::Consistency(other.to_string()),
            },
        )?;
    let mut seen: HashMap<&[u32], [u64; 4]> = HashMap::with_capacity(records.len());
    for rec in &records {
        if let Some(prev) = seen.insert(&rec.images, rec.tuple) {
            return Err(Error::Consistency(format!("tuples {prev:?} and {:?} give the same permutation", rec.tuple)));
        }
    }
    Ok(records)
}

/// A disagreement found by [`cross_check`], with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    CountMismatch { enumerated: u64, closed_form: u64 },
    ConstructionFailed { tuple: [u64; 4], reason: String },
    DuplicatePermutation { first: [u64; 4], second: [u64; 4], images: Vec<u32> },
    OracleCountMismatch { enumerated: u64, oracle: u64 },
    MissingFromOracle { tuple: [u64; 4], images: Vec<u32> },
    MissingFromFamily { images: Vec<u32> },
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub n1_count: u64,
    pub n2_count: u64,
    pub total: u64,
    pub closed_form_total: u64,
    pub oracle_total: Option<u64>,
    pub mismatches: Vec<Discrepancy>,
}

impl EnumerationReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Which brute-force oracle [`cross_check`] runs, if any.
#[derive(Clone, Debug, Default)]
pub enum OracleChoice {
    #[default]
    None,
    /// Exhaustive search when `n <= 10`, pruned search otherwise.
    Auto(PrunedConfig),
}

/// Compares tuple enumeration, the closed-form count and optionally an oracle.
/// Disagreements land in `mismatches`; only oracle failures (bound, timeout,
/// checkpoint I/O) are returned as errors.
pub fn cross_check(m: &Modulus, oracle: &OracleChoice, exec: Execution) -> Result<EnumerationReport> {
    if m.e() < 2 {
        return Err(Error::OutOfRange("cross-check needs e >= 2".into()));
    }
    let closed = count_closed_form(m);
    let tuples: Vec<AdmissibleTuple> = iterate_admissible(*m).collect();
    let n1_count = tuples.iter().filter(|t| t.k() == 0).count() as u64;
    let n2_count = tuples.len() as u64 - n1_count;
    let total = n1_count + n2_count;
    let mut mismatches = Vec::new();
    if total != closed.total {
        mismatches.push(Discrepancy::CountMismatch { enumerated: total, closed_form: closed.total });
    }

    let built = exec.map(&tuples, s_ijkl);
    let mut family: HashMap<Permutation, [u64; 4]> = HashMap::new();
    for (t, r) in tuples.iter().zip(built) {
        match r {
            Ok(s) => {
                let perm = s.into_perm();
                if let Some(&first) = family.get(&perm) {
                    mismatches.push(Discrepancy::DuplicatePermutation {
                        first,
                        second: t.as_array(),
                        images: perm.images().to_vec(),
                    });
                } else {
                    family.insert(perm, t.as_array());
                }
            }
            Err(e) => mismatches.push(Discrepancy::ConstructionFailed { tuple: t.as_array(), reason: e.to_string() }),
        }
    }

    let mut oracle_total = None;
    if let OracleChoice::Auto(cfg) = oracle {
        let found: BTreeSet<Permutation> = if m.n() <= EXHAUSTIVE_BOUND {
            oracle_exhaustive(m.n(), cfg.execution)?
        } else {
            oracle_pruned(m.n(), cfg)?.maps
        };
        oracle_total = Some(found.len() as u64);
        if found.len() as u64 != total {
            mismatches.push(Discrepancy::OracleCountMismatch { enumerated: total, oracle: found.len() as u64 });
        }
        let mut missing: Vec<(&Permutation, &[u64; 4])> = family.iter().filter(|(p, _)| !found.contains(*p)).collect();
        missing.sort_by_key(|(_, t)| **t);
        for (perm, t) in missing {
            mismatches.push(Discrepancy::MissingFromOracle { tuple: *t, images: perm.images().to_vec() });
        }
        for perm in found.iter().filter(|p| !family.contains_key(*p)) {
            mismatches.push(Discrepancy::MissingFromFamily { images: perm.images().to_vec() });
        }
    }

    Ok(EnumerationReport {
        p: m.p(),
        e: m.e(),
        n: m.n(),
        n1_count,
        n2_count,
        total,
        closed_form_total: closed.total,
        oracle_total,
        mismatches,
    })
}
