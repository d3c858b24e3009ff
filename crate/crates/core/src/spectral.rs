//! The Borel-fibration side of the story: involution actions on the
//! rank-8 three-sphere product ring, E2 pages, rank-cancellation
//! differential patterns, and the feasible fixed-point ranks they leave.
//!
//! Differentials are modeled as rank cancellations between bidegree
//! compatible column lines, not as explicit cochain maps; everything here
//! is rank bookkeeping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::classify::{check_rank_tail_inequality, classify_connected, IsoClassSet};
use crate::enumerate::EnumerationConstraints;
use crate::f2::{self, Fv};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("preset {0:?} needs the first two degrees equal")]
    PresetNeedsEqualDegrees(&'static str),
    #[error("unknown action preset {0:?}")]
    UnknownPreset(String),
    #[error("fixed rank {0} is not feasible here")]
    InfeasibleRank(usize),
}

/// The product ring of three spheres in degrees `n ≤ m ≤ l`, on the
/// monomial basis 1, a, b, c, ab, ac, bc, abc.
pub fn three_sphere_product(n: u32, m: u32, l: u32) -> GradedAlgebra {
    let names: Vec<String> = ["1", "a", "b", "c", "ab", "ac", "bc", "abc"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let degrees = vec![0, n, m, l, n + m, n + l, m + l, n + m + l];
    // Exterior multiplication: join disjoint monomials, kill repeats.
    let monos: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];
    let index_of = |bits: u8| monos.iter().position(|&b| b == bits).unwrap();
    let mut mult = vec![vec![0u64; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            if monos[i] & monos[j] == 0 {
                mult[i][j] = f2::basis_vec(index_of(monos[i] | monos[j]));
            }
        }
    }
    GradedAlgebra::new(names, degrees, mult, f2::basis_vec(0)).expect("exterior table is valid")
}

/// A degree-preserving involution of a graded algebra, stored as the image
/// of each basis element.
#[derive(Clone, Debug)]
pub struct InvolutionAction {
    pub base: GradedAlgebra,
    pub images: Vec<Fv>,
    pub preset: Option<&'static str>,
}

/// The built-in actions on [`three_sphere_product`].  The three nontrivial
/// presets mix the first two sphere classes and need n = m.
pub fn action_preset(name: &str, n: u32, m: u32, l: u32) -> Result<InvolutionAction, SpectralError> {
    let base = three_sphere_product(n, m, l);
    // Images of the generators a, b, c as masks over basis indices 1, 2, 3.
    let (ga, gb, preset): (Fv, Fv, &'static str) = match name {
        "trivial" => (0b0010, 0b0100, "trivial"),
        "swap" => (0b0100, 0b0010, "swap"),
        "shear-a" => (0b0110, 0b0100, "shear-a"),
        "shear-b" => (0b0010, 0b0110, "shear-b"),
        other => return Err(SpectralError::UnknownPreset(other.to_string())),
    };
    if preset != "trivial" && n != m {
        return Err(SpectralError::PresetNeedsEqualDegrees(preset));
    }
    let gc = 0b1000;
    let gens = [ga, gb, gc];
    let mut images = vec![0u64; 8];
    images[0] = base.unit();
    images[1] = ga;
    images[2] = gb;
    images[3] = gc;
    // Monomial images multiply out: indices 4, 5, 6, 7 are ab, ac, bc, abc.
    for (idx, pair) in [(4, (0, 1)), (5, (0, 2)), (6, (1, 2))] {
        images[idx] = base.mul(gens[pair.0], gens[pair.1]);
    }
    images[7] = base.mul(ga, base.mul(gb, gc));
    Ok(InvolutionAction {
        base,
        images,
        preset: Some(preset),
    })
}

/// What `validate_action` found.  Violations are entries, not errors.
#[derive(Clone, Debug, Default)]
pub struct ActionReport {
    pub violations: Vec<String>,
    /// Orbits of basis monomials under the action (singletons are fixed
    /// lines, pairs are swapped ones; anything else means the action is not
    /// a permutation of monomials and is reported descriptively).
    pub orbits: Vec<Vec<String>>,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_action(action: &InvolutionAction) -> ActionReport {
    let a = &action.base;
    let g = &action.images;
    let mut report = ActionReport::default();
    if g.len() != a.dim() {
        report
            .violations
            .push(format!("map covers {} of {} basis classes", g.len(), a.dim()));
        return report;
    }
    if g[0] != a.unit() {
        report.violations.push("unit is not fixed".to_string());
    }
    for i in 0..a.dim() {
        let allowed: Fv = a
            .degree_indices(a.degree(i))
            .iter()
            .fold(0, |acc, &j| acc | f2::basis_vec(j));
        if g[i] & !allowed != 0 {
            report
                .violations
                .push(format!("image of {} is not degree-preserving", a.name(i)));
        }
        if f2::apply(g, g[i]) != f2::basis_vec(i) {
            report
                .violations
                .push(format!("g∘g does not fix {}", a.name(i)));
        }
        for j in 0..a.dim() {
            if f2::apply(g, a.mul_basis(i, j)) != a.mul(g[i], g[j]) {
                report.violations.push(format!(
                    "not multiplicative on {} * {}",
                    a.name(i),
                    a.name(j)
                ));
            }
        }
    }
    let mut seen = vec![false; a.dim()];
    for i in 0..a.dim() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let img = g[i];
        if img == f2::basis_vec(i) {
            report.orbits.push(vec![a.name(i).to_string()]);
        } else if let Some(j) = f2::support(img).next().filter(|&j| img == f2::basis_vec(j)) {
            seen[j] = true;
            report
                .orbits
                .push(vec![a.name(i).to_string(), a.name(j).to_string()]);
        } else {
            let names: Vec<String> = f2::support(img).map(|j| a.name(j).to_string()).collect();
            report
                .orbits
                .push(vec![a.name(i).to_string(), format!("-> {}", names.join("+"))]);
        }
    }
    report
}

/// Rank table of the E2 page of the Borel fibration, stored as the column-0
/// rank and the constant rank of all columns k ≥ 1, per fiber degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub rows: BTreeMap<u32, (usize, usize)>,
    pub trivial_action: bool,
}

impl E2Page {
    pub fn rank(&self, k: usize, fiber: u32) -> usize {
        match self.rows.get(&fiber) {
            Some(&(r0, rk)) => {
                if k == 0 {
                    r0
                } else {
                    rk
                }
            }
            None => 0,
        }
    }

    /// Total rank of any column k ≥ 1 (the lines that can still play a role
    /// in the limit).
    pub fn stable_lines(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&i, &(_, rk)) in &self.rows {
            for _ in 0..rk {
                out.push(i);
            }
        }
        out
    }
}

impl fmt::Display for E2Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fiber | k=0 | k>=1")?;
        for (i, (r0, rk)) in &self.rows {
            writeln!(f, "{i:5} | {r0:3} | {rk:4}")?;
        }
        Ok(())
    }
}

/// E2 ranks per Z2-cohomology of the cyclic group: rank(0,i) = dim ker τ
/// and rank(k,i) = dim ker τ − dim im σ for k > 0, with τ = σ = 1 + g*.
pub fn e2_page(action: &InvolutionAction) -> E2Page {
    let a = &action.base;
    let tau: Vec<Fv> = (0..a.dim())
        .map(|i| action.images[i] ^ f2::basis_vec(i))
        .collect();
    let mut rows = BTreeMap::new();
    let mut trivial = true;
    for d in a.degrees_present() {
        let idx = a.degree_indices(d);
        // Restrict τ to the degree-d slice in compact coordinates.
        let local: Vec<Fv> = idx
            .iter()
            .map(|&i| {
                let mut v = 0;
                for (col, &j) in idx.iter().enumerate() {
                    if tau[i] & f2::basis_vec(j) != 0 {
                        v |= f2::basis_vec(col);
                    }
                }
                v
            })
            .collect();
        let im = f2::rank(&local);
        let ker = idx.len() - im;
        if im != 0 {
            trivial = false;
        }
        rows.insert(d, (ker, ker - im));
    }
    E2Page {
        rows,
        trivial_action: trivial,
    }
}

/// Fiber degrees whose lines Prop-2.9-style products force to survive: the
/// unit line and every line carried by a product x·g*(x).
pub fn permanent_fibers(action: &InvolutionAction) -> BTreeSet<u32> {
    let a = &action.base;
    let mut out = BTreeSet::new();
    out.insert(0);
    for i in 0..a.dim() {
        let prod = a.mul(f2::basis_vec(i), action.images[i]);
        for j in f2::support(prod) {
            out.insert(a.degree(j));
        }
    }
    out
}

/// One rank cancellation: a nontrivial differential on page `page` from the
/// line at `source_fiber` onto the line at `target_fiber`
/// (`target = source − page + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Move {
    pub page: u32,
    pub source_fiber: u32,
    pub target_fiber: u32,
}

/// A consistent set of cancellations plus the classes required to survive.
#[derive(Clone, Debug, Default)]
pub struct DifferentialPattern {
    pub moves: Vec<Move>,
    pub permanent: Vec<u32>,
}

/// Constraints on pattern enumeration.
#[derive(Clone, Debug)]
pub struct PatternConstraints {
    /// Fibers whose lines may not be differential sources (permanent
    /// cocycles).  The unit line is always protected.
    pub permanent_fibers: BTreeSet<u32>,
    /// Sections exist, so base classes survive: no move may target the
    /// fiber-0 line, and the stable rank stays positive.
    pub fixed_nonempty: bool,
}

impl PatternConstraints {
    pub fn for_action(action: &InvolutionAction) -> Self {
        PatternConstraints {
            permanent_fibers: permanent_fibers(action),
            fixed_nonempty: true,
        }
    }
}

/// All consistent cancellation patterns on the page's stable lines and the
/// fixed-point rank each leaves behind.  Deterministic order.
pub fn enumerate_differential_patterns(
    page: &E2Page,
    constraints: &PatternConstraints,
) -> Vec<(DifferentialPattern, usize)> {
    let lines = page.stable_lines();
    let n = lines.len();
    // Candidate moves between distinct line slots.
    let mut candidates = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if lines[s] <= lines[t] {
                continue; // pages start at 2: source fiber must exceed target
            }
            if constraints.permanent_fibers.contains(&lines[s]) {
                continue;
            }
            if constraints.fixed_nonempty && lines[t] == 0 {
                continue;
            }
            candidates.push((s, t));
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    enumerate_matchings(&candidates, 0, &mut used, &mut chosen, &mut |m| {
        let rank = n - 2 * m.len();
        if constraints.fixed_nonempty && rank == 0 {
            return;
        }
        let moves: Vec<Move> = m
            .iter()
            .map(|&(s, t)| Move {
                page: lines[s] - lines[t] + 1,
                source_fiber: lines[s],
                target_fiber: lines[t],
            })
            .collect();
        out.push((
            DifferentialPattern {
                moves,
                permanent: constraints.permanent_fibers.iter().copied().collect(),
            },
            rank,
        ));
    });
    out.sort_by(|x, y| x.0.moves.cmp(&y.0.moves));
    out.dedup_by(|x, y| x.0.moves == y.0.moves);
    out
}

fn enumerate_matchings(
    candidates: &[(usize, usize)],
    from: usize,
    used: &mut Vec<bool>,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    emit(chosen);
    for k in from..candidates.len() {
        let (s, t) = candidates[k];
        if used[s] || used[t] {
            continue;
        }
        used[s] = true;
        used[t] = true;
        chosen.push((s, t));
        enumerate_matchings(candidates, k + 1, used, chosen, emit);
        chosen.pop();
        used[s] = false;
        used[t] = false;
    }
}

/// The set of stable ranks across all consistent patterns.
pub fn stable_ranks(page: &E2Page, constraints: &PatternConstraints) -> BTreeSet<usize> {
    enumerate_differential_patterns(page, constraints)
        .into_iter()
        .map(|(_, r)| r)
        .collect()
}

/// Fixed-point ranks allowed by the Floyd/localization counting.
pub fn feasible_fixed_ranks(x_rank: usize, tnhz: bool, fixed_nonempty: bool) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    if tnhz {
        out.insert(x_rank);
        return out;
    }
    if !fixed_nonempty {
        out.insert(0);
    }
    let mut r = 2;
    while r < x_rank {
        out.insert(r);
        r += 2;
    }
    out
}

/// Connected possibilities for a non-TNHZ fixed set of the given rank,
/// filtered by the tail-sum inequality against the ambient degrees.
///
/// Duality is optional at rank ≤ 4 (this admits the wedge); at rank 6 the
/// search runs with duality required — the duality-free table search does
/// not scale there, and the classified lists do not enumerate that case
/// either.
pub fn nontnhz_connected_possibilities(
    fixed_rank: usize,
    x_degrees: (u32, u32, u32),
    constraints: &EnumerationConstraints,
) -> Result<IsoClassSet, SpectralError> {
    let x_rank = 8;
    if !feasible_fixed_ranks(x_rank, false, true).contains(&fixed_rank) {
        return Err(SpectralError::InfeasibleRank(fixed_rank));
    }
    let mut c = constraints.clone();
    c.require_pd = fixed_rank > 4 || c.require_pd;
    if fixed_rank <= 4 {
        c.require_pd = false;
    }
    let cls = classify_connected(fixed_rank, None, &c);
    Ok(cls
        .classes
        .into_iter()
        .map(|cc| cc.algebra)
        .filter(|a| check_rank_tail_inequality(a, x_degrees).pass)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in ["trivial", "swap", "shear-a", "shear-b"] {
            let action = action_preset(name, 2, 2, 5).unwrap();
            let report = validate_action(&action);
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
        }
        assert!(action_preset("swap", 2, 3, 5).is_err());
        assert!(action_preset("nope", 2, 2, 5).is_err());
    }

    #[test]
    fn broken_map_is_reported() {
        let mut action = action_preset("swap", 2, 2, 5).unwrap();
        // Send ab to ac: degree violation and non-multiplicativity.
        action.images[4] = f2::basis_vec(5);
        let report = validate_action(&action);
        assert!(!report.is_valid());
    }

    #[test]
    fn swap_page_matches_hand_computation() {
        let action = action_preset("swap", 2, 2, 5).unwrap();
        let page = e2_page(&action);
        assert!(!page.trivial_action);
        assert_eq!(page.rank(0, 2), 1);
        assert_eq!(page.rank(3, 2), 0);
        for i in [0, 4, 5, 9] {
            assert_eq!(page.rank(0, i), 1, "fiber {i} at k=0");
            assert_eq!(page.rank(7, i), 1, "fiber {i} at k>0");
        }
        assert_eq!(page.rank(0, 7), 1);
        assert_eq!(page.rank(1, 7), 0);
    }

    #[test]
    fn nontrivial_actions_share_the_rank_table() {
        let swap = e2_page(&action_preset("swap", 3, 3, 4).unwrap());
        let sa = e2_page(&action_preset("shear-a", 3, 3, 4).unwrap());
        let sb = e2_page(&action_preset("shear-b", 3, 3, 4).unwrap());
        assert_eq!(swap.rows, sa.rows);
        assert_eq!(swap.rows, sb.rows);
    }

    #[test]
    fn trivial_action_page_is_constant() {
        let action = action_preset("trivial", 2, 3, 5).unwrap();
        let page = e2_page(&action);
        assert!(page.trivial_action);
        let total: usize = page.rows.values().map(|&(_, rk)| rk).sum();
        assert_eq!(total, 8);
        for (&_, &(r0, rk)) in &page.rows {
            assert_eq!(r0, rk);
        }
    }

    #[test]
    fn swap_patterns_give_exactly_ranks_two_and_four() {
        let action = action_preset("swap", 2, 2, 5).unwrap();
        let page = e2_page(&action);
        let constraints = PatternConstraints::for_action(&action);
        assert_eq!(constraints.permanent_fibers, [0u32, 4].into_iter().collect());
        let patterns = enumerate_differential_patterns(&page, &constraints);
        // The empty pattern plus the three single cancellations.
        assert_eq!(patterns.len(), 4);
        assert_eq!(
            stable_ranks(&page, &constraints),
            [2usize, 4].into_iter().collect()
        );
        let feasible = feasible_fixed_ranks(8, false, true);
        for (_, r) in &patterns {
            assert!(feasible.contains(r) || *r == 8);
        }
    }

    #[test]
    fn feasibility_sets() {
        assert_eq!(
            feasible_fixed_ranks(8, false, true),
            [2usize, 4, 6].into_iter().collect()
        );
        assert_eq!(feasible_fixed_ranks(8, true, true), [8usize].into_iter().collect());
        assert_eq!(
            feasible_fixed_ranks(8, false, false),
            [0usize, 2, 4, 6].into_iter().collect()
        );
    }

    #[test]
    fn nontnhz_rank_four_list() {
        let c = EnumerationConstraints::default();
        let set = nontnhz_connected_possibilities(4, (2, 2, 5), &c).unwrap();
        assert!(!set.is_empty());
        assert!(set.iter().all(|a| check_rank_tail_inequality(a, (2, 2, 5)).pass));
        assert!(nontnhz_connected_possibilities(8, (2, 2, 5), &c).is_err());
        // A tiny ambient space cuts the list down: instances with classes
        // past degree 3 (P²(2)#P²(2) and friends) drop out.
        let tight = nontnhz_connected_possibilities(4, (1, 1, 1), &c).unwrap();
        assert!(tight.len() < set.len());
    }
}
