//! Soundness/completeness comparison of enumeration output against the
//! catalog, one classification statement at a time.
//!
//! A statement check is SOUND when every catalog instance for it is
//! reproduced by the enumeration, and COMPLETE when everything the
//! enumeration produces matches a catalog instance.  Mismatches are never
//! dropped: missing instances and unlisted classes are carried in the
//! report verbatim.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::catalog::{params, Catalog, DegreeBounds, Realizability};
use crate::classify::{classify_connected, classify_disconnected, IsoClassSet};
use crate::enumerate::{
    enumerate_connected_rank8, enumerate_k_spheres_extremes, rank8_profiles,
    EnumerationConstraints, ExtremeKind,
};
use crate::profile::CupPattern;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown statement id {0:?}")]
    UnknownTheorem(String),
}

/// Result of checking one classification statement.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub sound: bool,
    pub complete: bool,
    /// Realized classes, as "key { params }" or component-multiset strings.
    pub classes: Vec<String>,
    /// Catalog instances the enumeration failed to produce.
    pub missing: Vec<String>,
    /// Enumerated classes with no catalog match, kept whole so callers can
    /// serialize them.
    pub unlisted: Vec<GradedAlgebra>,
    /// Informational remarks (ambiguities, overlaps, deviations).
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.sound && self.complete
    }

    fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            sound: true,
            complete: true,
            classes: Vec::new(),
            missing: Vec::new(),
            unlisted: Vec::new(),
            notes: Vec::new(),
        }
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "statement {}: {}{}",
            self.theorem,
            if self.sound { "SOUND" } else { "NOT SOUND" },
            if self.complete { " & COMPLETE" } else { " & INCOMPLETE" },
        )?;
        for c in &self.classes {
            writeln!(f, "  class    {c}")?;
        }
        for m in &self.missing {
            writeln!(f, "  MISSING  {m}")?;
        }
        for u in &self.unlisted {
            writeln!(f, "  UNLISTED degrees {:?}", u.degrees())?;
        }
        for n in &self.notes {
            writeln!(f, "  note     {n}")?;
        }
        Ok(())
    }
}

/// The statement ids [`verify_theorem`] accepts, in order.
pub const THEOREM_IDS: [&str; 14] = [
    "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9", "3.10", "3.12", "3.13",
    "3.14", "3.15",
];

/// Ids covered by [`verify_all`]: the numbered statements plus the
/// non-TNHZ disconnected case.
pub fn all_ids() -> Vec<&'static str> {
    let mut v: Vec<&str> = THEOREM_IDS.to_vec();
    v.push("non-tnhz");
    v
}

pub fn verify_theorem(id: &str, max_degree: u32) -> Result<TheoremReport, VerifyError> {
    match id {
        "3.1" => Ok(verify_rank8(id, 0, max_degree)),
        "3.2" => Ok(verify_rank8(id, 1, max_degree)),
        "3.3" => Ok(verify_rank8(id, 2, max_degree)),
        "3.4" => Ok(verify_rank8(id, 3, max_degree)),
        "3.5" => Ok(verify_rank8(id, 4, max_degree)),
        "3.6" => Ok(verify_rank8(id, 5, max_degree)),
        "3.7" => Ok(verify_rank8(id, 6, max_degree)),
        "3.8" => Ok(verify_extremes(id, ExtremeKind::AllZero, max_degree)),
        "3.9" => Ok(verify_extremes(id, ExtremeKind::AllNonzero, max_degree)),
        "3.10" => Ok(verify_non_tnhz_connected(max_degree)),
        "3.12" => Ok(verify_disconnected(id, max_degree)),
        "3.13" => Ok(verify_disconnected(id, max_degree)),
        "3.14" => Ok(verify_disconnected(id, max_degree)),
        "3.15" => Ok(verify_disconnected(id, max_degree)),
        "non-tnhz" => Ok(verify_non_tnhz_disconnected(max_degree)),
        other => Err(VerifyError::UnknownTheorem(other.to_string())),
    }
}

/// Runs every statement check; the whole suite passes when each report is
/// sound and complete.
pub fn verify_all(max_degree: u32) -> Vec<TheoremReport> {
    all_ids()
        .iter()
        .map(|id| verify_theorem(id, max_degree).expect("known id"))
        .collect()
}

fn default_constraints(max_degree: u32) -> EnumerationConstraints {
    EnumerationConstraints {
        max_generator_degree: Some(max_degree),
        ..EnumerationConstraints::default()
    }
}

/// Rank-8 connected statements: one per nonzero-product count.
fn verify_rank8(id: &str, pattern_size: u32, max_degree: u32) -> TheoremReport {
    let mut report = TheoremReport::new(id);
    let c = default_constraints(max_degree);
    let profiles = rank8_profiles(max_degree);
    let patterns = CupPattern::all_of_size(pattern_size);

    let mut produced = IsoClassSet::new();
    for pattern in &patterns {
        let parts: Vec<IsoClassSet> = profiles
            .par_iter()
            .map(|&profile| enumerate_connected_rank8(profile, *pattern, &c))
            .collect();
        for p in parts {
            produced.merge(p);
        }
    }

    let catalog = Catalog::new();
    let realiz = c.realizability.unwrap_or(Realizability::Statement);
    let bounds = DegreeBounds::new(max_degree);
    let mut expected = Vec::new();
    for entry in catalog.theorem_items(id) {
        for (p, a) in entry.grid(bounds, realiz) {
            expected.push((entry.key, p, a));
        }
    }

    for (key, p, a) in &expected {
        if !produced.contains_class(a) {
            report.sound = false;
            report.missing.push(format!("{key} {p:?}"));
        }
    }
    let mut seen_keys = BTreeSet::new();
    for a in produced.iter() {
        match expected.iter().find(|(_, _, b)| crate::iso::are_isomorphic(a, b)) {
            Some((key, p, _)) => {
                seen_keys.insert(key.to_string());
                report.classes.push(format!("{key} {p:?}"));
            }
            None => {
                report.complete = false;
                report.unlisted.push(a.clone());
            }
        }
    }
    if id == "3.3" {
        let both = ["thm3.3.3a", "thm3.3.3b"]
            .iter()
            .filter(|k| seen_keys.contains(**k))
            .count();
        report.notes.push(format!(
            "trinomial item: {both} of the two generator assignments realized \
             (any (tuple, assignment) combination is accepted)"
        ));
    }
    if id == "3.6" {
        report
            .notes
            .push("instances overlap the size-4 product family at equal degrees".to_string());
    }
    report
}

/// The two extreme statements on k spheres: the all-zero and all-nonzero
/// cup-product patterns in one common degree.
fn verify_extremes(id: &str, kind: ExtremeKind, max_degree: u32) -> TheoremReport {
    let mut report = TheoremReport::new(id);
    let catalog = Catalog::new();
    let key = if matches!(kind, ExtremeKind::AllZero) { "thm3.8" } else { "thm3.9" };
    for k in 2..=4u32 {
        // The rank-16 searches are uniform in the degree, so one value
        // suffices there.
        let qmax = if k == 4 { 1 } else { max_degree };
        for q in 1..=qmax {
            let rep = enumerate_k_spheres_extremes(k, q, kind).expect("k in range");
            let want = catalog
                .instantiate(key, &params(&[("k", k), ("q", q)]))
                .expect("catalog instance");
            if rep.classes.len() == 1 && rep.classes.contains_class(&want) {
                report.classes.push(format!("{key} {{k: {k}, q: {q}}} rank {}", rep.rank));
            } else {
                if !rep.classes.contains_class(&want) {
                    report.sound = false;
                    report.missing.push(format!("{key} {{k: {k}, q: {q}}}"));
                }
                for a in rep.classes.iter() {
                    if !crate::iso::are_isomorphic(a, &want) {
                        report.complete = false;
                        report.unlisted.push(a.clone());
                    }
                }
            }
            if rep.rank != rep.expected_rank {
                report.notes.push(format!(
                    "k = {k}: the consistent layout has rank {} rather than the ambient 2^k = {}",
                    rep.rank, rep.expected_rank
                ));
            }
        }
    }
    report
}

/// The connected non-TNHZ statement: ranks 2 and 4, duality optional.
fn verify_non_tnhz_connected(max_degree: u32) -> TheoremReport {
    let mut report = TheoremReport::new("3.10");
    let mut c = default_constraints(max_degree);
    let spheres = classify_connected(2, None, &c);
    c.require_pd = false;
    let rank4 = classify_connected(4, None, &c);

    let expected: BTreeSet<&str> = ["thm3.10.1", "thm3.10.2", "thm3.10.3", "thm3.10.4", "thm3.10.5"]
        .into_iter()
        .collect();
    let mut produced = BTreeSet::new();
    for cls in spheres.classes.iter().chain(rank4.classes.iter()) {
        if cls.is_unlisted() {
            report.complete = false;
            report.unlisted.push(cls.algebra.clone());
        } else {
            produced.insert(cls.label().to_string());
            report.classes.push(format!("{} (hilbert {})", cls.label(), cls.algebra.hilbert()));
        }
    }
    for key in &expected {
        if !produced.contains(*key) {
            report.sound = false;
            report.missing.push(key.to_string());
        }
    }
    for key in &produced {
        if !expected.contains(key.as_str()) {
            report.complete = false;
            report.missing.push(format!("unexpected family {key}"));
        }
    }
    report
        .notes
        .push("degree windows (e.g. r1 <= n+m+l) are reported by the tail-sum check, not enforced here".to_string());
    report
}

/// Key of the sphere class under first-match labeling.
const SPHERE: &str = "thm3.10.1";
const RANK4_TRIO: [&str; 3] = ["thm3.10.2", "thm3.10.3", "thm3.10.4"];
const RANK5: [&str; 3] = ["thm3.13.#3P2", "thm3.13.P2SS", "thm3.13.P4"];
const RANK6: [&str; 4] = ["thm3.14.#2P3", "thm3.14.P3SS", "thm3.14.P2xS", "thm3.14.P5"];
const RANK7: [&str; 4] = ["thm3.15.P2xS#P2", "thm3.15.P4SS", "thm3.15.P6", "thm3.15.2"];

/// Expands a component template: fixed labels plus `slots` sphere slots,
/// each of which is either a sphere or (a zero-sphere) two points.
fn expand_slots(fixed: &[&str], slots: usize) -> BTreeSet<Vec<String>> {
    let mut out = BTreeSet::new();
    for mask in 0..(1u32 << slots) {
        let mut multiset: Vec<String> = fixed.iter().map(|s| s.to_string()).collect();
        for bit in 0..slots {
            if mask & (1 << bit) == 0 {
                multiset.push(SPHERE.to_string());
            } else {
                multiset.push("pt".to_string());
                multiset.push("pt".to_string());
            }
        }
        multiset.sort();
        out.insert(multiset);
    }
    out
}

/// The expected component multisets for the disconnected statement covering
/// the given maximal component rank.
fn expected_disconnected(id: &str) -> BTreeSet<Vec<String>> {
    let mut out = BTreeSet::new();
    match id {
        "3.12" => {
            out.extend(expand_slots(&[], 4));
            out.extend(expand_slots(&["p2", "p2"], 1));
            out.extend(expand_slots(&["pt", "p2"], 2));
            for t in RANK4_TRIO {
                out.extend(expand_slots(&[t], 2));
                out.extend(expand_slots(&[t, "p2", "pt"], 0));
                for s in RANK4_TRIO {
                    out.extend(expand_slots(&[t, s], 0));
                }
            }
        }
        "3.13" => {
            for f in RANK5 {
                out.extend(expand_slots(&[f, "p2"], 0));
                out.extend(expand_slots(&[f, "pt"], 1));
            }
        }
        "3.14" => {
            for f in RANK6 {
                out.extend(expand_slots(&[f], 1));
            }
        }
        "3.15" => {
            for f in RANK7 {
                out.extend(expand_slots(&[f, "pt"], 0));
            }
        }
        _ => unreachable!("disconnected ids only"),
    }
    out
}

fn max_part_range(id: &str) -> (usize, usize) {
    match id {
        "3.12" => (1, 4),
        "3.13" => (5, 5),
        "3.14" => (6, 6),
        "3.15" => (7, 7),
        _ => unreachable!(),
    }
}

/// Disconnected TNHZ statements at total rank 8, bucketed by the largest
/// component rank.
fn verify_disconnected(id: &str, max_degree: u32) -> TheoremReport {
    let mut report = TheoremReport::new(id);
    let c = default_constraints(max_degree);
    let all = classify_disconnected(8, &c);
    let (lo, hi) = max_part_range(id);

    let mut produced: BTreeSet<Vec<String>> = BTreeSet::new();
    for (partition, multisets) in &all.by_partition {
        let max_part = partition.first().copied().unwrap_or(0);
        if max_part >= lo && max_part <= hi {
            produced.extend(multisets.iter().cloned());
        }
    }
    let expected = expected_disconnected(id);
    for m in &expected {
        if !produced.contains(m) {
            report.sound = false;
            report.missing.push(format!("{m:?}"));
        }
    }
    for m in &produced {
        if expected.contains(m) {
            report.classes.push(format!("{m:?}"));
        } else {
            report.complete = false;
            report.missing.push(format!("outside the lists: {m:?}"));
        }
    }
    if id == "3.13" {
        report.notes.push(
            "partitions 5+3 and 5+2+1 both reported; the statement's component \
             indexing leaves open which third components it intends"
                .to_string(),
        );
    }
    report
}

/// The non-TNHZ disconnected statement: total ranks 2 and 4.
fn verify_non_tnhz_disconnected(max_degree: u32) -> TheoremReport {
    let mut report = TheoremReport::new("non-tnhz");
    let mut c = default_constraints(max_degree);
    c.require_pd = false;

    let mut produced: BTreeSet<Vec<String>> = BTreeSet::new();
    for total in [2usize, 4] {
        produced.extend(classify_disconnected(total, &c).multisets());
    }

    let mut expected: BTreeSet<Vec<String>> = BTreeSet::new();
    // S^0, and two spheres each allowed to degenerate to a point pair.
    expected.insert(vec!["pt".to_string(), "pt".to_string()]);
    expected.extend(expand_slots(&[], 2));
    expected.extend(expand_slots(&["p2", "pt"], 0));
    expected.extend(expand_slots(&["svs", "pt"], 0));

    for m in &expected {
        if !produced.contains(m) {
            report.sound = false;
            report.missing.push(format!("{m:?}"));
        }
    }
    for m in &produced {
        if expected.contains(m) {
            report.classes.push(format!("{m:?}"));
        } else {
            report.complete = false;
            report.missing.push(format!("outside the lists: {m:?}"));
        }
    }
    report
}
