//! The acceptance gate: every headline result the library is expected to
//! reproduce, one pass/fail line per criterion.  Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{random_algebra, scramble};
use pd2_core::classify::classify_connected;
use pd2_core::constructors::{sum_of_projective, truncated};
use pd2_core::enumerate::{
    admissible_patterns, enumerate_k_spheres_extremes, EnumerationConstraints, ExtremeKind,
};
use pd2_core::iso::are_isomorphic;
use pd2_core::spectral::{
    action_preset, e2_page, feasible_fixed_ranks, stable_ranks, PatternConstraints,
};
use pd2_core::verify::verify_theorem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, good: &str, bad: &str) -> Outcome {
    if ok {
        Ok(good.to_string())
    } else {
        Err(bad.to_string())
    }
}

fn within(elapsed: Duration, limit: Duration, label: &str) -> Outcome {
    check(
        elapsed <= limit,
        &format!("{label} in {elapsed:.2?}"),
        &format!("{label} took {elapsed:.2?}, budget {limit:.2?}"),
    )
}

fn criterion_1_pattern_counts() -> Outcome {
    let c = EnumerationConstraints::default();
    let start = Instant::now();
    let counts: Vec<usize> = (2..=5)
        .map(|size| admissible_patterns(size, 6, &c).len())
        .collect();
    let elapsed = start.elapsed();
    check(
        counts == [9, 4, 6, 1],
        "",
        &format!("admissible counts {counts:?}, wanted [9, 4, 6, 1]"),
    )?;
    within(elapsed, Duration::from_secs(60), "sizes 2-5 at bound 6")
}

fn criterion_2_rank8_classification() -> Outcome {
    let start = Instant::now();
    for id in ["3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7"] {
        let report = verify_theorem(id, 6).map_err(|e| e.to_string())?;
        check(
            report.passed() && report.unlisted.is_empty(),
            "",
            &format!(
                "statement {id}: sound={} complete={} unlisted={}",
                report.sound,
                report.complete,
                report.unlisted.len()
            ),
        )?;
    }
    within(
        start.elapsed(),
        Duration::from_secs(600),
        "statements 3.1-3.7 at bound 6, sound & complete, zero unlisted",
    )
}

fn criterion_3_low_rank_connected() -> Outcome {
    let pd = EnumerationConstraints::default();
    for (rank, want) in [(4usize, 3usize), (5, 3), (6, 4), (7, 4)] {
        let keys = classify_connected(rank, None, &pd).family_keys();
        check(
            keys.len() == want,
            "",
            &format!("rank {rank}: families {keys:?}, wanted {want}"),
        )?;
    }
    let mut free = EnumerationConstraints::default();
    free.require_pd = false;
    let with_wedge = classify_connected(4, None, &free).family_keys();
    let strict = classify_connected(4, None, &pd).family_keys();
    let extra: Vec<_> = with_wedge.difference(&strict).collect();
    check(
        extra == [&"thm3.10.5".to_string()],
        "ranks 4-7 give 3/3/4/4 families; dropping duality adds exactly the wedge",
        &format!("duality-free rank 4 added {extra:?}"),
    )
}

fn criterion_4_disconnected() -> Outcome {
    for id in ["3.12", "3.13", "3.14", "3.15", "non-tnhz"] {
        let report = verify_theorem(id, 3).map_err(|e| e.to_string())?;
        check(
            report.passed(),
            "",
            &format!(
                "statement {id}: sound={} complete={} missing={:?}",
                report.sound, report.complete, report.missing
            ),
        )?;
    }
    Ok("total-rank-8 component lists match statements 3.12-3.15 and the non-TNHZ lists".into())
}

fn criterion_5_extremes() -> Outcome {
    let start = Instant::now();
    for q in 1..=2u32 {
        let zero = enumerate_k_spheres_extremes(2, q, ExtremeKind::AllZero)
            .map_err(|e| e.to_string())?;
        check(
            zero.classes.len() == 1
                && are_isomorphic(
                    zero.classes.iter().next().unwrap(),
                    &sum_of_projective(2, 2, q).unwrap(),
                ),
            "",
            &format!("k=2 q={q} all-zero is not the double height-2 sum"),
        )?;
        let full = enumerate_k_spheres_extremes(2, q, ExtremeKind::AllNonzero)
            .map_err(|e| e.to_string())?;
        check(
            full.classes.len() == 1
                && are_isomorphic(full.classes.iter().next().unwrap(), &truncated(3, q)),
            "",
            &format!("k=2 q={q} all-nonzero is not the height-4 truncation"),
        )?;

        let zero3 = enumerate_k_spheres_extremes(3, q, ExtremeKind::AllZero)
            .map_err(|e| e.to_string())?;
        check(
            zero3.classes.len() == 1
                && are_isomorphic(
                    zero3.classes.iter().next().unwrap(),
                    &sum_of_projective(3, 3, q).unwrap(),
                ),
            "",
            &format!("k=3 q={q} all-zero is not the triple height-3 sum"),
        )?;
        let full3 = enumerate_k_spheres_extremes(3, q, ExtremeKind::AllNonzero)
            .map_err(|e| e.to_string())?;
        check(
            full3.classes.len() == 1
                && are_isomorphic(full3.classes.iter().next().unwrap(), &truncated(7, q)),
            "",
            &format!("k=3 q={q} all-nonzero is not the height-8 truncation"),
        )?;
    }

    // k = 4: the all-zero side has no consistent rank-16 layout; the largest
    // workable one has rank 14 and the report carries both numbers.
    let zero4 =
        enumerate_k_spheres_extremes(4, 1, ExtremeKind::AllZero).map_err(|e| e.to_string())?;
    check(
        zero4.expected_rank == 16
            && zero4.classes_at_expected_rank.is_empty()
            && zero4.rank == 14
            && zero4.classes.len() == 1
            && are_isomorphic(
                zero4.classes.iter().next().unwrap(),
                &sum_of_projective(4, 4, 1).unwrap(),
            ),
        "",
        &format!(
            "k=4 all-zero: rank {} (expected_rank {}), {} classes",
            zero4.rank,
            zero4.expected_rank,
            zero4.classes.len()
        ),
    )?;
    let full4 =
        enumerate_k_spheres_extremes(4, 1, ExtremeKind::AllNonzero).map_err(|e| e.to_string())?;
    check(
        full4.rank == 16
            && full4.classes.len() == 1
            && are_isomorphic(full4.classes.iter().next().unwrap(), &truncated(15, 1)),
        "",
        "k=4 all-nonzero is not the rank-16 truncation",
    )?;
    within(
        start.elapsed(),
        Duration::from_secs(900),
        "extremes for k = 2, 3, 4 (all-zero k=4 capped at rank 14)",
    )
}

fn criterion_6_swap_spectral() -> Outcome {
    let action = action_preset("swap", 2, 2, 5).map_err(|e| e.to_string())?;
    let page = e2_page(&action);
    check(
        page.rank(0, 2) == 1,
        "",
        &format!("rank(0,2) = {}", page.rank(0, 2)),
    )?;
    for k in 1..=3 {
        check(page.rank(k, 2) == 0, "", &format!("rank({k},2) != 0"))?;
    }
    for i in [0u32, 5, 4, 9] {
        for k in 0..=3 {
            check(
                page.rank(k, i) == 1,
                "",
                &format!("rank({k},{i}) = {}", page.rank(k, i)),
            )?;
        }
    }
    let ranks = stable_ranks(&page, &PatternConstraints::for_action(&action));
    check(
        ranks == BTreeSet::from([2usize, 4]),
        "swap action on (2,2,5): column ranks and stable ranks {2,4} as computed by hand",
        &format!("stable ranks {ranks:?}, wanted {{2, 4}}"),
    )
}

fn criterion_7_feasible_ranks() -> Outcome {
    let got = feasible_fixed_ranks(8, false, true);
    check(
        got == BTreeSet::from([2usize, 4, 6]),
        "non-TNHZ nonempty fixed sets on total rank 8 can only have rank 2, 4 or 6".to_string(),
        &format!("feasible ranks {got:?}, wanted {{2, 4, 6}}"),
    )
    .map(|_| "non-TNHZ nonempty fixed sets on total rank 8 can only have rank 2, 4 or 6".into())
}

fn criterion_8_randomized() -> Outcome {
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, 8);
        check(
            a.dim() <= 8 && a.validate().is_valid(),
            "",
            &format!("seed {seed}: generated algebra invalid"),
        )?;
        let b = scramble(&a, &mut rng);
        check(
            a.signature() == b.signature() && are_isomorphic(&a, &b),
            "",
            &format!("seed {seed}: basis change changed the isomorphism class"),
        )?;
    }
    Ok("1000 seeded random algebras of rank <= 8 validate and survive basis changes".into())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 pattern admissibility counts", Box::new(criterion_1_pattern_counts)),
        ("2 rank-8 connected classification", Box::new(criterion_2_rank8_classification)),
        ("3 connected classification ranks 4-7", Box::new(criterion_3_low_rank_connected)),
        ("4 disconnected classification", Box::new(criterion_4_disconnected)),
        ("5 k-sphere extremes", Box::new(criterion_5_extremes)),
        ("6 spectral ranks for the swap action", Box::new(criterion_6_swap_spectral)),
        ("7 feasible fixed-point ranks", Box::new(criterion_7_feasible_ranks)),
        ("8 randomized property checks", Box::new(criterion_8_randomized)),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) if detail.is_empty() => println!("PASS criterion {name}"),
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
