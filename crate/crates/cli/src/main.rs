//! `pd2`: classification toolkit for the duality algebras arising as fixed
//! point rings of involutions on products of spheres.
//!
//! Exit codes: 0 success (and "isomorphic" for `iso`), 1 verification
//! failure or non-isomorphic, 2 usage errors.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pd2_core::catalog::{Catalog, Realizability};
use pd2_core::classify::{classify_connected, classify_disconnected, IsoClassSet};
use pd2_core::enumerate::{
    enumerate_connected_rank8, rank8_profiles, EnumerationConstraints,
};
use pd2_core::profile::CupPattern;
use pd2_core::serialize;
use pd2_core::spectral::{
    action_preset, e2_page, enumerate_differential_patterns, validate_action, PatternConstraints,
};
use pd2_core::verify::{verify_all, verify_theorem};
use pd2_core::{find_isomorphism, GradedAlgebra};

#[derive(Parser)]
#[command(name = "pd2", version, about = "F2 duality-algebra classification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RealizabilityArg {
    /// Heights ≥ 2 restricted to degrees {1, 2, 4, 8}.
    PaperStatement,
    /// The looser proof-side variant {1, 2, 3, 4}.
    PaperProof,
}

impl From<RealizabilityArg> for Realizability {
    fn from(r: RealizabilityArg) -> Self {
        match r {
            RealizabilityArg::PaperStatement => Realizability::Statement,
            RealizabilityArg::PaperProof => Realizability::Proof,
        }
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Upper bound on minimal generator degrees.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Upper bound on the number of minimal generators.
    #[arg(long)]
    generator_bound: Option<usize>,
    #[arg(long, value_enum, default_value = "paper-statement")]
    realizability: RealizabilityArg,
    /// Require Poincaré duality (default on; use --no-pd to relax).
    #[arg(long, overrides_with = "no_pd")]
    pd: bool,
    #[arg(long = "no-pd")]
    no_pd: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl CommonOpts {
    fn constraints(&self) -> EnumerationConstraints {
        let mut c = EnumerationConstraints::default();
        if let Some(d) = self.max_degree {
            c.max_generator_degree = Some(d);
        }
        if let Some(g) = self.generator_bound {
            c.generator_bound = g;
        }
        c.realizability = Some(self.realizability.into());
        if self.no_pd {
            c.require_pd = false;
        }
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog, or show one entry in full.
    Catalog {
        key: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate connected rank-8 algebras on a generator-degree triple.
    Enumerate {
        /// Generator degrees, comma separated: q1,q2,q3.
        #[arg(long)]
        degrees: String,
        /// Number of generators (3 for the rank-8 case).
        #[arg(long, default_value = "3")]
        dim: usize,
        /// Number of nonzero tracked products (0..=6); omit for all.
        #[arg(long)]
        nonzero: Option<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify connected algebras of one rank, or disconnected totals.
    Classify {
        #[arg(long, conflicts_with = "total")]
        rank: Option<usize>,
        /// Total rank for the disconnected classification.
        #[arg(long)]
        total: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check a classification statement (or `all`) for soundness and
    /// completeness; exits 1 on any mismatch.
    Verify {
        id: String,
        #[arg(long, default_value = "3")]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide isomorphism of two serialized algebras; exits 0 when
    /// isomorphic (printing a witness), 1 otherwise.
    Iso { file_a: String, file_b: String },
    /// E2 page and differential patterns for a preset involution action.
    Spectral {
        #[arg(long)]
        action: String,
        /// Sphere degrees, comma separated: n,m,l.
        #[arg(long)]
        degrees: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("PD2_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_tuple<const N: usize>(s: &str, what: &str) -> Result<[u32; N], String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("--{what} expects {N} comma-separated integers"))?;
    parts
        .try_into()
        .map_err(|_| format!("--{what} expects exactly {N} integers"))
}

fn class_csv_row(label: &str, a: &GradedAlgebra) -> String {
    format!(
        "{label},{},{},{}",
        a.degrees()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        a.dim(),
        a.minimal_generators().total()
    )
}

fn print_class_set(set: &IsoClassSet, format: Format) {
    match format {
        Format::Text => {
            println!("{} class(es)", set.len());
            for a in set.iter() {
                println!("degrees {:?}, hilbert {}", a.degrees(), a.hilbert());
                for line in a.describe_products() {
                    println!("  {line}");
                }
            }
        }
        Format::Json => {
            let docs: Vec<_> = set.iter().map(serialize::to_doc).collect();
            println!("{}", serde_json::to_string_pretty(&docs).expect("serializes"));
        }
        Format::Csv => {
            println!("key,degrees,rank,generators");
            for a in set.iter() {
                println!("{}", class_csv_row("-", a));
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Catalog { key, format } => {
            let catalog = Catalog::new();
            match key {
                Some(k) => {
                    let entry = catalog
                        .get(&k)
                        .ok_or_else(|| format!("unknown catalog key {k:?}"))?;
                    match format {
                        Format::Json => {
                            println!(
                                "{}",
                                serde_json::json!({
                                    "key": entry.key,
                                    "theorem": entry.theorem,
                                    "summary": entry.summary,
                                    "rank": entry.rank,
                                    "pd": entry.pd,
                                    "pattern_size": entry.pattern_size,
                                    "params": entry.params,
                                    "notes": entry.notes,
                                })
                            );
                        }
                        _ => {
                            println!("{} (statement {})", entry.key, entry.theorem);
                            println!("  {}", entry.summary);
                            println!("  rank {}, params {:?}", entry.rank, entry.params);
                            for note in entry.notes {
                                println!("  note: {note}");
                            }
                        }
                    }
                }
                None => {
                    if format == Format::Csv {
                        println!("key,theorem,rank,summary");
                        for e in catalog.entries() {
                            println!("{},{},{},\"{}\"", e.key, e.theorem, e.rank, e.summary);
                        }
                    } else {
                        for e in catalog.entries() {
                            println!("{:18} {:5} rank {:2}  {}", e.key, e.theorem, e.rank, e.summary);
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            degrees,
            dim,
            nonzero,
            common,
        } => {
            if dim != 3 {
                return Err("--dim only supports 3 (the rank-8 case)".to_string());
            }
            let [q1, q2, q3] = parse_tuple::<3>(&degrees, "degrees")?;
            if let Some(n) = nonzero {
                if n > 6 {
                    return Err("--nonzero must be in 0..=6".to_string());
                }
            }
            let c = common.constraints();
            let mut set = IsoClassSet::new();
            let patterns: Vec<CupPattern> = match nonzero {
                Some(n) => CupPattern::all_of_size(n),
                None => (0..=6).flat_map(CupPattern::all_of_size).collect(),
            };
            // The requested degrees cap the three base generator degrees;
            // forced chain degrees (multiples of an earlier generator) may
            // exceed their slot, matching the profile grid convention.
            for profile in rank8_profiles(q1.max(q2).max(q3)) {
                let [p1, p2, p3] = profile.low();
                if p1 > q1 || p2 > q2.max(2 * p1) || p3 > q3.max(2 * p2) {
                    continue;
                }
                for &pattern in &patterns {
                    set.merge(enumerate_connected_rank8(profile, pattern, &c));
                }
            }
            print_class_set(&set, common.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { rank, total, common } => {
            let c = common.constraints();
            match (rank, total) {
                (Some(rank), None) => {
                    let cls = classify_connected(rank, None, &c);
                    match common.format {
                        Format::Text => println!("{cls}"),
                        Format::Json => {
                            let body: Vec<_> = cls
                                .classes
                                .iter()
                                .map(|cc| {
                                    serde_json::json!({
                                        "label": cc.label(),
                                        "algebra": serialize::to_doc(&cc.algebra),
                                    })
                                })
                                .collect();
                            println!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
                        }
                        Format::Csv => {
                            println!("key,degrees,rank,generators");
                            for cc in &cls.classes {
                                println!("{}", class_csv_row(cc.label(), &cc.algebra));
                            }
                        }
                    }
                }
                (None, Some(total)) => {
                    let d = classify_disconnected(total, &c);
                    match common.format {
                        Format::Json => {
                            let body: Vec<_> = d
                                .by_partition
                                .iter()
                                .map(|(p, sets)| {
                                    serde_json::json!({"partition": p, "components": sets})
                                })
                                .collect();
                            println!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
                        }
                        _ => {
                            for (partition, sets) in &d.by_partition {
                                println!("partition {partition:?}");
                                for m in sets {
                                    println!("  {}", m.join(" + "));
                                }
                            }
                        }
                    }
                }
                _ => return Err("pass exactly one of --rank or --total".to_string()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            id,
            max_degree,
            format,
        } => {
            let reports = if id == "all" {
                verify_all(max_degree)
            } else {
                vec![verify_theorem(&id, max_degree).map_err(|e| e.to_string())?]
            };
            let mut ok = true;
            match format {
                Format::Json => {
                    let body: Vec<_> = reports.iter().map(serialize::report_to_json).collect();
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
                }
                _ => {
                    for r in &reports {
                        print!("{r}");
                    }
                }
            }
            for r in &reports {
                ok &= r.passed();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Iso { file_a, file_b } => {
            let read = |path: &str| -> Result<GradedAlgebra, String> {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
                serialize::from_json(&text).map_err(|e| format!("{path}: {e}"))
            };
            let a = read(&file_a)?;
            let b = read(&file_b)?;
            match find_isomorphism(&a, &b) {
                Some(iso) => {
                    println!("isomorphic");
                    for (i, &img) in iso.map.iter().enumerate() {
                        let names: Vec<String> = pd2_core::f2::support(img)
                            .map(|j| b.name(j).to_string())
                            .collect();
                        println!("  {} -> {}", a.name(i), names.join("+"));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Spectral {
            action,
            degrees,
            format,
        } => {
            let [n, m, l] = parse_tuple::<3>(&degrees, "degrees")?;
            let act = action_preset(&action, n, m, l).map_err(|e| e.to_string())?;
            let report = validate_action(&act);
            if !report.is_valid() {
                return Err(format!("invalid action: {:?}", report.violations));
            }
            let page = e2_page(&act);
            let constraints = PatternConstraints::for_action(&act);
            let patterns = enumerate_differential_patterns(&page, &constraints);
            match format {
                Format::Json => {
                    let pats: Vec<_> = patterns
                        .iter()
                        .map(|(p, rank)| {
                            serde_json::json!({
                                "moves": p.moves.iter().map(|mv| {
                                    serde_json::json!({
                                        "page": mv.page,
                                        "source_fiber": mv.source_fiber,
                                        "target_fiber": mv.target_fiber,
                                    })
                                }).collect::<Vec<_>>(),
                                "stable_rank": rank,
                            })
                        })
                        .collect();
                    let rows: Vec<_> = page
                        .rows
                        .iter()
                        .map(|(i, (r0, rk))| serde_json::json!({"fiber": i, "k0": r0, "k_pos": rk}))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "action": action,
                            "trivial": page.trivial_action,
                            "rows": rows,
                            "patterns": pats,
                        }))
                        .expect("serializes")
                    );
                }
                _ => {
                    print!("{page}");
                    println!("orbits:");
                    for orbit in &report.orbits {
                        println!("  {}", orbit.join(" <-> "));
                    }
                    let ranks: BTreeSet<usize> = patterns.iter().map(|(_, r)| *r).collect();
                    println!("patterns: {} (stable ranks {ranks:?})", patterns.len());
                    for (p, rank) in &patterns {
                        if p.moves.is_empty() {
                            println!("  no differentials -> rank {rank}");
                        } else {
                            let desc: Vec<String> = p
                                .moves
                                .iter()
                                .map(|mv| {
                                    format!("d_{}({} -> {})", mv.page, mv.source_fiber, mv.target_fiber)
                                })
                                .collect();
                            println!("  {} -> rank {rank}", desc.join(", "));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
