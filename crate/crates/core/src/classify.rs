//! Isomorphism-class bookkeeping and rank-by-rank classification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{GradedAlgebra, Signature};
use crate::catalog::{Catalog, DegreeBounds, Params, Realizability};
use crate::constructors::point;
use crate::enumerate::{enumerate_pd_layout, EnumerationConstraints};
use crate::f2::{self, Fv};
use crate::iso::are_isomorphic;

/// Generator-degree bound used by the classification runs when the caller
/// does not pin one.  Three suffices to exhibit every classified family
/// that exists at all (the rank-7 binomial ring needs generator degrees
/// 2 and 3 and nothing in the lists needs more).
pub const DEFAULT_DEGREE_BOUND: u32 = 3;

/// A set of pairwise non-isomorphic algebras in a canonical deterministic
/// order (sorted by [`Signature`], then by the raw degree/table data as a
/// tie-break among signature-equal non-isomorphic members).
#[derive(Clone, Debug, Default)]
pub struct IsoClassSet {
    reps: Vec<(Signature, GradedAlgebra)>,
}

impl IsoClassSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a representative unless an isomorphic one is present.
    /// Returns whether the class was new.
    pub fn insert(&mut self, a: GradedAlgebra) -> bool {
        let sig = a.signature();
        if self
            .reps
            .iter()
            .any(|(s, b)| *s == sig && are_isomorphic(b, &a))
        {
            return false;
        }
        let key = sort_key(&sig, &a);
        let pos = self
            .reps
            .iter()
            .position(|(s, b)| sort_key(s, b) > key)
            .unwrap_or(self.reps.len());
        self.reps.insert(pos, (sig, a));
        true
    }

    pub fn merge(&mut self, other: IsoClassSet) {
        for (_, a) in other.reps {
            self.insert(a);
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GradedAlgebra> {
        self.reps.iter().map(|(_, a)| a)
    }

    pub fn signatures(&self) -> impl Iterator<Item = &Signature> {
        self.reps.iter().map(|(s, _)| s)
    }

    /// Whether some member is isomorphic to `a`.
    pub fn contains_class(&self, a: &GradedAlgebra) -> bool {
        let sig = a.signature();
        self.reps.iter().any(|(s, b)| *s == sig && are_isomorphic(b, &a))
    }

    /// The multiset of ranks of the members, sorted.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.iter().map(GradedAlgebra::dim).collect();
        r.sort_unstable();
        r
    }
}

impl FromIterator<GradedAlgebra> for IsoClassSet {
    fn from_iter<T: IntoIterator<Item = GradedAlgebra>>(iter: T) -> Self {
        let mut s = Self::new();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Display for IsoClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} class(es)", self.len())?;
        for (_, a) in &self.reps {
            write!(f, "\n  rank {}, hilbert {}", a.dim(), a.hilbert())?;
        }
        Ok(())
    }
}

fn sort_key(sig: &Signature, a: &GradedAlgebra) -> (Signature, Vec<u32>, Vec<Vec<u64>>) {
    (
        sig.clone(),
        (0..a.dim()).map(|i| a.degree(i)).collect(),
        a.table().to_vec(),
    )
}

/// One classified isomorphism class together with every catalog family it
/// instantiates, in theorem order.  The first match is the class label;
/// further matches indicate catalog overlap (reported, not an error).
#[derive(Clone, Debug)]
pub struct ClassifiedClass {
    pub algebra: GradedAlgebra,
    pub matches: Vec<(String, Params)>,
}

impl ClassifiedClass {
    pub fn label(&self) -> &str {
        self.matches.first().map_or("UNLISTED", |(k, _)| k.as_str())
    }

    pub fn is_unlisted(&self) -> bool {
        self.matches.is_empty()
    }
}

/// The outcome of a connected classification run at one rank.
#[derive(Clone, Debug)]
pub struct Classification {
    pub rank: usize,
    pub degree_bound: u32,
    pub classes: Vec<ClassifiedClass>,
}

impl Classification {
    /// The distinct catalog families represented, by first-match label
    /// (including "UNLISTED" when present).
    pub fn family_keys(&self) -> BTreeSet<String> {
        self.classes.iter().map(|c| c.label().to_string()).collect()
    }

    pub fn unlisted(&self) -> Vec<&ClassifiedClass> {
        self.classes.iter().filter(|c| c.is_unlisted()).collect()
    }

    /// Classes matched by more than one catalog family.
    pub fn overlaps(&self) -> Vec<(&ClassifiedClass, Vec<&str>)> {
        self.classes
            .iter()
            .filter(|c| c.matches.len() > 1)
            .map(|c| (c, c.matches.iter().map(|(k, _)| k.as_str()).collect()))
            .collect()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}: {} class(es) in {} family(ies)",
            self.rank,
            self.classes.len(),
            self.family_keys().len()
        )?;
        for c in &self.classes {
            write!(f, "\n  {} (hilbert {})", c.label(), c.algebra.hilbert())?;
        }
        Ok(())
    }
}

/// Whether some pair of elements `a`, `b` makes `{1, a, b, ab}` a vector
/// space basis.  This is the module structure a rank-4 fixed component
/// inherits from the restrictions of two ambient classes; a wedge of two
/// spheres plus a point satisfies it while a wedge of three spheres does
/// not (all products of positive classes vanish there, which traps `ab` in
/// the span of `1`, `a`, `b`).
pub fn has_module_basis_pair(a: &GradedAlgebra) -> bool {
    if a.dim() != 4 {
        return false;
    }
    let unit = a.unit();
    let all = 1u64 << a.dim();
    for va in 1..all {
        for vb in va + 1..all {
            let prod = a.mul(va, vb);
            if f2::rank(&[unit, va, vb, prod]) == 4 {
                return true;
            }
        }
    }
    false
}

/// All middle-degree layouts compatible with Poincaré duality at the given
/// rank: multisets `d_1 ≤ … ≤ d_m` with `d_i + d_{m+1-i} = r`, the lowest
/// degree a generator (so bounded by the generator-degree cap), and the top
/// degree within the same per-component cap the catalog grids use.
fn pd_layouts(rank: usize, bound: u32) -> Vec<(Vec<u32>, u32)> {
    let m = rank - 2;
    let cap = DegreeBounds::new(bound).top_cap(rank);
    let mut out = Vec::new();
    if m == 0 {
        for r in 1..=bound {
            out.push((Vec::new(), r));
        }
        return out;
    }
    let half = m / 2;
    for r in 2..=cap {
        if m % 2 == 1 && r % 2 != 0 {
            continue;
        }
        let mut firsts = vec![1u32; half];
        loop {
            let ordered = firsts.windows(2).all(|w| w[0] <= w[1])
                && firsts.iter().all(|&d| 2 * d <= r)
                && firsts.first().is_none_or(|&d| d <= bound);
            if ordered {
                let mut middles = firsts.clone();
                if m % 2 == 1 {
                    middles.push(r / 2);
                }
                middles.extend(firsts.iter().rev().map(|&d| r - d));
                if half == 0 {
                    // Only the forced center class; still needs the
                    // generator-degree cap.
                    if r / 2 <= bound {
                        out.push((middles, r));
                    }
                } else {
                    out.push((middles, r));
                }
            }
            // Odometer over [1, r/2]^half; empty half means a single pass.
            if half == 0 {
                break;
            }
            let mut i = 0;
            loop {
                if i == half {
                    break;
                }
                firsts[i] += 1;
                if 2 * firsts[i] <= r {
                    break;
                }
                firsts[i] = 1;
                i += 1;
            }
            if i == half {
                break;
            }
        }
    }
    out
}

/// Brute-force enumeration of connected algebras on an explicit positive
/// degree multiset with no duality pairing assumed: every product of
/// positive classes is either zero or a single class of the right degree.
/// Only used at ranks at most four, where the search is tiny.
fn enumerate_free_layout(degrees: &[u32], constraints: &EnumerationConstraints) -> IsoClassSet {
    let n = degrees.len() + 1;
    let mut degs = vec![0u32];
    degs.extend_from_slice(degrees);
    let mut slots: Vec<(usize, usize, Vec<Fv>)> = Vec::new();
    for i in 1..n {
        for j in i..n {
            let d = degs[i] + degs[j];
            let mut cands = vec![0u64];
            for (k, &dk) in degs.iter().enumerate().skip(1) {
                if dk == d {
                    cands.push(f2::basis_vec(k));
                }
            }
            slots.push((i, j, cands));
        }
    }
    let mut out = IsoClassSet::new();
    let mut choice = vec![0usize; slots.len()];
    'outer: loop {
        let mut table = vec![vec![0u64; n]; n];
        for k in 0..n {
            table[0][k] = f2::basis_vec(k);
            table[k][0] = f2::basis_vec(k);
        }
        for (pos, &(i, j, ref cands)) in slots.iter().enumerate() {
            table[i][j] = cands[choice[pos]];
            table[j][i] = cands[choice[pos]];
        }
        let names: Vec<String> = (0..n).map(|k| format!("e{k}")).collect();
        if let Ok(a) = GradedAlgebra::new_unvalidated(names, degs.clone(), table, f2::basis_vec(0))
        {
            if a.validate().is_valid() && free_passes(&a, constraints) {
                out.insert(a);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] < slots[i].2.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    out
}

fn free_passes(a: &GradedAlgebra, c: &EnumerationConstraints) -> bool {
    if c.require_pd && !a.check_poincare_duality().is_pd {
        return false;
    }
    let gens = a.minimal_generators();
    if gens.total() > c.generator_bound {
        return false;
    }
    if let Some(bound) = c.max_generator_degree {
        if gens.degrees().iter().any(|&d| d > bound) {
            return false;
        }
    }
    if let Some(rz) = c.realizability {
        if !crate::catalog::satisfies_realizability(a, rz) {
            return false;
        }
    }
    if a.dim() == 4 && !c.require_pd && !has_module_basis_pair(a) {
        return false;
    }
    true
}

/// Attaches catalog identifications to a deduplicated class set.
fn label_classes(set: IsoClassSet, rank: usize, bound: u32, realiz: Realizability) -> Vec<ClassifiedClass> {
    let catalog = Catalog::new();
    let bounds = DegreeBounds::new(bound);
    let pools: Vec<(&str, Vec<(Params, GradedAlgebra)>)> = catalog
        .entries()
        .iter()
        .filter(|e| e.rank == rank)
        .map(|e| (e.key, e.grid(bounds, realiz)))
        .collect();
    set.iter()
        .map(|a| {
            let mut matches = Vec::new();
            for (key, grid) in &pools {
                if let Some((p, _)) = grid.iter().find(|(_, b)| are_isomorphic(a, b)) {
                    matches.push((key.to_string(), p.clone()));
                }
            }
            ClassifiedClass {
                algebra: a.clone(),
                matches,
            }
        })
        .collect()
}

/// Classifies connected algebras of the given rank under the constraints.
///
/// With `betti_profile` given (the multiset of positive degrees, ascending,
/// one entry per positive basis class) only that layout is searched;
/// otherwise every layout whose generator degrees fit the bound is swept.
/// Duality is assumed for ranks above four; at rank four and below,
/// switching `require_pd` off widens the search to all multiplication
/// tables and applies the module-basis filter instead of the pairing (this
/// is what admits the wedge of a projective plane and a sphere and nothing
/// else new).
pub fn classify_connected(
    rank: usize,
    betti_profile: Option<&[u32]>,
    constraints: &EnumerationConstraints,
) -> Classification {
    assert!(rank >= 1, "rank must be positive");
    assert!(
        constraints.require_pd || rank <= 4,
        "duality-free classification is only supported up to rank 4"
    );
    let bound = constraints.max_generator_degree.unwrap_or(DEFAULT_DEGREE_BOUND);
    let mut c = constraints.clone();
    c.max_generator_degree = Some(bound);
    let realiz = c.realizability.unwrap_or(Realizability::Statement);

    let set: IsoClassSet = if rank == 1 {
        [point()].into_iter().collect()
    } else if c.require_pd {
        let layouts: Vec<(Vec<u32>, u32)> = match betti_profile {
            Some(profile) => {
                assert_eq!(profile.len(), rank - 1, "profile must cover the positive classes");
                let (top, middles) = profile.split_last().expect("rank >= 2");
                let palindromic = middles
                    .iter()
                    .zip(middles.iter().rev())
                    .all(|(&a, &b)| a + b == *top);
                if palindromic {
                    vec![(middles.to_vec(), *top)]
                } else {
                    Vec::new()
                }
            }
            None => pd_layouts(rank, bound),
        };
        let parts: Vec<IsoClassSet> = layouts
            .par_iter()
            .map(|(middles, r)| enumerate_pd_layout(middles, *r, &c))
            .collect();
        let mut set = IsoClassSet::new();
        for p in parts {
            set.merge(p);
        }
        set
    } else {
        let cap = DegreeBounds::new(bound).top_cap(rank);
        let mut layouts: Vec<Vec<u32>> = Vec::new();
        let mut degs = vec![1u32; rank - 1];
        'outer: loop {
            if degs.windows(2).all(|w| w[0] <= w[1]) && degs[0] <= bound {
                if betti_profile.is_none_or(|p| p == degs.as_slice()) {
                    layouts.push(degs.clone());
                }
            }
            let mut i = 0;
            loop {
                if i == degs.len() {
                    break 'outer;
                }
                degs[i] += 1;
                if degs[i] <= cap {
                    break;
                }
                degs[i] = 1;
                i += 1;
            }
        }
        let parts: Vec<IsoClassSet> = layouts
            .par_iter()
            .map(|degrees| enumerate_free_layout(degrees, &c))
            .collect();
        let mut set = IsoClassSet::new();
        for p in parts {
            set.merge(p);
        }
        set
    };

    Classification {
        rank,
        degree_bound: bound,
        classes: label_classes(set, rank, bound, realiz),
    }
}

/// The classification of disconnected total spaces: every multiset of
/// connected classes whose ranks sum to `total_rank`, grouped by partition
/// (parts in descending order).  Component labels come from the per-rank
/// connected classification; multisets are sorted key lists.
#[derive(Clone, Debug)]
pub struct DisconnectedClassification {
    pub total_rank: usize,
    pub by_partition: BTreeMap<Vec<usize>, BTreeSet<Vec<String>>>,
}

impl DisconnectedClassification {
    /// Every key multiset across all partitions.
    pub fn multisets(&self) -> BTreeSet<Vec<String>> {
        self.by_partition.values().flatten().cloned().collect()
    }

    /// Partitions whose maximal part equals `max_part`.
    pub fn with_max_part(&self, max_part: usize) -> BTreeMap<Vec<usize>, BTreeSet<Vec<String>>> {
        self.by_partition
            .iter()
            .filter(|(p, _)| p.first().copied() == Some(max_part))
            .map(|(p, s)| (p.clone(), s.clone()))
            .collect()
    }
}

pub fn classify_disconnected(
    total_rank: usize,
    constraints: &EnumerationConstraints,
) -> DisconnectedClassification {
    assert!(total_rank >= 2, "a disconnected space has rank at least 2");
    // Family keys available at each component rank.
    let mut keys_by_rank: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for rank in 1..total_rank {
        let mut c = constraints.clone();
        if rank > 4 {
            c.require_pd = true;
        }
        let cls = classify_connected(rank, None, &c);
        let mut keys: Vec<String> = cls.family_keys().into_iter().collect();
        keys.sort();
        if !keys.is_empty() {
            keys_by_rank.insert(rank, keys);
        }
    }
    let mut by_partition = BTreeMap::new();
    let mut parts = Vec::new();
    partitions_rec(total_rank, total_rank - 1, &mut parts, &mut |partition| {
        if partition.len() < 2 {
            return;
        }
        if partition.iter().any(|p| !keys_by_rank.contains_key(p)) {
            return;
        }
        // Multiset choices per group of equal parts, then combined.
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in partition {
            match groups.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut combos: Vec<Vec<String>> = vec![Vec::new()];
        for (rank, count) in groups {
            let keys = &keys_by_rank[&rank];
            let picks = multichoose(keys, count);
            combos = combos
                .into_iter()
                .flat_map(|base| {
                    picks.iter().map(move |pick| {
                        let mut v = base.clone();
                        v.extend(pick.iter().cloned());
                        v
                    })
                })
                .collect();
        }
        let set: &mut BTreeSet<Vec<String>> = by_partition.entry(partition.to_vec()).or_default();
        for mut combo in combos {
            combo.sort();
            set.insert(combo);
        }
    });
    DisconnectedClassification {
        total_rank,
        by_partition,
    }
}

fn partitions_rec(left: usize, max: usize, acc: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if left == 0 {
        emit(acc);
        return;
    }
    for next in (1..=left.min(max)).rev() {
        acc.push(next);
        partitions_rec(left - next, next, acc, emit);
        acc.pop();
    }
}

/// All multisets of `count` picks from `items` (combinations with
/// repetition), each sorted.
fn multichoose<T: Clone + Ord>(items: &[T], count: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone + Ord>(items: &[T], start: usize, count: usize, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if count == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..items.len() {
            acc.push(items[i].clone());
            rec(items, i, count - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, count, &mut Vec::new(), &mut out);
    out
}

/// Outcome of the tail-sum rank check of a candidate fixed set against the
/// ambient product of three spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailCheck {
    pub pass: bool,
    /// The smallest degree at which the tail sums fail, if any.
    pub failing_j: Option<u32>,
}

/// For every `j`, the rank of a fixed set in degrees at least `j` is
/// bounded by the ambient rank in degrees at least `j`.
pub fn check_rank_tail_inequality(f: &GradedAlgebra, x_degrees: (u32, u32, u32)) -> TailCheck {
    let (n, m, l) = x_degrees;
    let x_degs = [0, n, m, l, n + m, n + l, m + l, n + m + l];
    let top = f.top_degree().max(n + m + l);
    for j in 0..=top {
        let f_tail = f.degrees().iter().filter(|&&d| d >= j).count();
        let x_tail = x_degs.iter().filter(|&&d| d >= j).count();
        if f_tail > x_tail {
            return TailCheck {
                pass: false,
                failing_j: Some(j),
            };
        }
    }
    TailCheck {
        pass: true,
        failing_j: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{sphere, sum_of_projective, tensor, truncated};

    #[test]
    fn dedupes_isomorphic_members() {
        let mut set = IsoClassSet::new();
        assert!(set.insert(truncated(3, 1)));
        // Same class with different generator name and basis order story.
        assert!(!set.insert(truncated(3, 1)));
        assert!(set.insert(sphere(3)));
        assert!(set.insert(tensor(&sphere(1), &sphere(2))));
        assert!(set.insert(sum_of_projective(2, 2, 1).unwrap()));
        assert_eq!(set.len(), 4);
        assert_eq!(set.ranks(), vec![2, 4, 4, 4]);
        assert!(set.contains_class(&truncated(3, 1)));
        assert!(!set.contains_class(&truncated(3, 2)));

        // Canonical order is stable under insertion order.
        let mut other = IsoClassSet::new();
        other.insert(sum_of_projective(2, 2, 1).unwrap());
        other.insert(tensor(&sphere(1), &sphere(2)));
        other.insert(sphere(3));
        other.insert(truncated(3, 1));
        let a: Vec<_> = set.signatures().cloned().collect();
        let b: Vec<_> = other.signatures().cloned().collect();
        assert_eq!(a, b);
    }

    fn keys(rank: usize, pd: bool) -> BTreeSet<String> {
        let mut c = EnumerationConstraints::default();
        c.require_pd = pd;
        classify_connected(rank, None, &c).family_keys()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rank_four_pd_families() {
        assert_eq!(
            keys(4, true),
            set(&["thm3.10.2", "thm3.10.3", "thm3.10.4"])
        );
    }

    #[test]
    fn rank_four_without_duality_adds_only_the_wedge() {
        assert_eq!(
            keys(4, false),
            set(&["thm3.10.2", "thm3.10.3", "thm3.10.4", "thm3.10.5"])
        );
    }

    #[test]
    fn rank_three_without_duality() {
        assert_eq!(keys(3, false), set(&["p2", "svs"]));
    }

    #[test]
    fn rank_five_pd_families() {
        assert_eq!(
            keys(5, true),
            set(&["thm3.13.#3P2", "thm3.13.P2SS", "thm3.13.P4"])
        );
    }

    #[test]
    fn rank_six_pd_families() {
        assert_eq!(
            keys(6, true),
            set(&["thm3.14.#2P3", "thm3.14.P3SS", "thm3.14.P2xS", "thm3.14.P5"])
        );
    }

    #[test]
    fn rank_seven_pd_families() {
        assert_eq!(
            keys(7, true),
            set(&["thm3.15.P2xS#P2", "thm3.15.P4SS", "thm3.15.P6", "thm3.15.2"])
        );
    }

    #[test]
    fn no_unlisted_small_rank_classes() {
        for rank in 2..=7 {
            let c = EnumerationConstraints::default();
            let cls = classify_connected(rank, None, &c);
            assert!(
                cls.unlisted().is_empty(),
                "rank {rank} produced unlisted classes: {cls}"
            );
        }
    }

    #[test]
    fn betti_profile_restricts_layouts() {
        let c = EnumerationConstraints::default();
        let cls = classify_connected(4, Some(&[1, 1, 2]), &c);
        // Profile (1,1,2) carries both the torus-like product and the
        // connected sum of two projective planes, but not the q=1
        // projective three-space (profile (1,2,3)).
        assert_eq!(cls.family_keys(), set(&["thm3.10.2", "thm3.10.4"]));
    }

    #[test]
    fn disconnected_two_components_rank_four() {
        let mut c = EnumerationConstraints::default();
        c.require_pd = false;
        let d = classify_disconnected(4, &c);
        let p22 = d.by_partition.get(&vec![2, 2]).expect("2+2 present");
        // Spheres carry the first matching catalog key.
        assert!(p22.contains(&vec!["thm3.10.1".to_string(), "thm3.10.1".to_string()]));
        let p31 = d.by_partition.get(&vec![3, 1]).expect("3+1 present");
        assert!(p31.contains(&vec!["p2".to_string(), "pt".to_string()]));
        assert!(p31.contains(&vec!["pt".to_string(), "svs".to_string()]));
    }

    #[test]
    fn tail_inequality_examples() {
        // A single sphere of degree beyond the ambient top degree fails at
        // exactly that degree.
        let high = sphere(7);
        let check = check_rank_tail_inequality(&high, (2, 2, 2));
        assert!(!check.pass);
        assert_eq!(check.failing_j, Some(7));
        // Total rank beyond eight fails already at degree zero.
        let many = sum_of_projective(7, 2, 1).unwrap();
        assert_eq!(many.dim(), 9);
        let check = check_rank_tail_inequality(&many, (5, 5, 5));
        assert!(!check.pass);
        assert_eq!(check.failing_j, Some(0));
        // The rank-8 sum of three projective spaces fits for q at most n
        // and overflows the tail as soon as q exceeds it.
        let fits = sum_of_projective(3, 3, 2).unwrap();
        assert_eq!(fits.dim(), 8);
        assert!(check_rank_tail_inequality(&fits, (2, 3, 4)).pass);
        let too_big = sum_of_projective(3, 3, 3).unwrap();
        let check = check_rank_tail_inequality(&too_big, (2, 3, 4));
        assert!(!check.pass);
        assert_eq!(check.failing_j, Some(3));
    }

    #[test]
    fn module_basis_pair_examples() {
        use crate::constructors::wedge_sum;
        let p2s = wedge_sum(&truncated(2, 1), &sphere(2)).unwrap();
        assert!(has_module_basis_pair(&p2s));
        let sss = wedge_sum(&wedge_sum(&sphere(1), &sphere(2)).unwrap(), &sphere(3)).unwrap();
        assert!(!has_module_basis_pair(&sss));
        assert!(has_module_basis_pair(&tensor(&sphere(1), &sphere(2))));
    }
}
