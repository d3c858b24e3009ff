//! Finite graded-commutative algebras over F2, given by explicit
//! multiplication tables on a chosen homogeneous basis.
//!
//! An algebra is stored as a basis (names purely for reporting), the degree
//! of each basis element, a symmetric multiplication table, and the unit
//! (a combination of degree-0 basis elements: rings with several connected
//! components have one idempotent per component and the unit is their sum).
//!
//! Everything is graded: each entry `mult[i][j]` is supported on basis
//! elements of degree `deg(i) + deg(j)`.  Over F2 graded commutativity is
//! plain commutativity, so the table is required to be symmetric.

use crate::f2::{self, Echelon, Fv};
use std::collections::BTreeMap;
use std::fmt;

/// Maximum number of basis elements an algebra may have.  Everything in this
/// crate works with vectors packed into `u64`, so 64 is a hard cap; the
/// classification itself never needs rank above 16.
pub const MAX_RANK: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra has {0} basis elements; the supported maximum is {MAX_RANK}")]
    TooLarge(usize),
    #[error("basis name {0:?} appears more than once")]
    DuplicateName(String),
    #[error("multiplication table has wrong shape")]
    BadTableShape,
    #[error("invalid algebra: {0}")]
    Invalid(ValidationReport),
    #[error("{0}")]
    Other(String),
}

/// One failed structural check, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    /// `mult[i][j] != mult[j][i]`.
    NotSymmetric { i: usize, j: usize },
    /// A term of `mult[i][j]` has degree different from `deg(i)+deg(j)`.
    NotGraded { i: usize, j: usize, term: usize },
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    NotAssociative { i: usize, j: usize, k: usize },
    /// The unit combination does not act as identity on `e_i`.
    UnitNotIdentity { i: usize },
    /// The unit is supported outside degree 0.
    UnitNotDegreeZero,
    /// There is no degree-0 part at all.
    MissingDegreeZero,
    /// Degree-0 part is not spanned by orthogonal idempotents summing to
    /// the unit (one per connected component).
    BadDegreeZeroStructure,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSymmetric { i, j } => write!(f, "mult[{i}][{j}] != mult[{j}][{i}]"),
            Self::NotGraded { i, j, term } => {
                write!(f, "mult[{i}][{j}] contains term {term} of wrong degree")
            }
            Self::NotAssociative { i, j, k } => {
                write!(f, "(e{i} e{j}) e{k} != e{i} (e{j} e{k})")
            }
            Self::UnitNotIdentity { i } => write!(f, "unit * e{i} != e{i}"),
            Self::UnitNotDegreeZero => write!(f, "unit supported outside degree 0"),
            Self::MissingDegreeZero => write!(f, "no basis element of degree 0"),
            Self::BadDegreeZeroStructure => {
                write!(f, "degree-0 part is not a sum of orthogonal idempotents")
            }
        }
    }
}

/// Result of running every structural check on a candidate table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            write!(f, "valid")
        } else {
            let msgs: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", msgs.join("; "))
        }
    }
}

/// Hilbert series: rank of each graded piece, by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HilbertSeries(pub BTreeMap<u32, usize>);

impl HilbertSeries {
    pub fn total_rank(&self) -> usize {
        self.0.values().sum()
    }

    pub fn top_degree(&self) -> u32 {
        self.0.keys().last().copied().unwrap_or(0)
    }

    /// Rank in degree `d`.
    pub fn rank(&self, d: u32) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    /// True iff ranks are symmetric about half the top degree.
    pub fn is_palindromic(&self) -> bool {
        let r = self.top_degree();
        (0..=r).all(|d| self.rank(d) == self.rank(r - d))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(d, n)| match (d, n) {
                (0, 1) => "1".to_string(),
                (d, 1) => format!("t^{d}"),
                (d, n) => format!("{n}t^{d}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Report from the Poincare duality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub is_pd: bool,
    pub top_degree: u32,
    /// Human-readable reasons, with witnesses, when the check fails.
    pub failures: Vec<String>,
}

/// Minimal generator data: how many algebra generators are needed in each
/// degree (indecomposables = positive part modulo products of positive
/// elements).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generators {
    pub by_degree: BTreeMap<u32, usize>,
}

impl Generators {
    pub fn total(&self) -> usize {
        self.by_degree.values().sum()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&d, &n) in &self.by_degree {
            out.extend(std::iter::repeat(d).take(n));
        }
        out
    }
}

/// Cheap isomorphism invariants, used as a fast-rejection key before the
/// exhaustive isomorphism search and as a deterministic sort key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub hilbert: Vec<(u32, usize)>,
    pub components: usize,
    /// (degree, number of generators in that degree).
    pub generators: Vec<(u32, usize)>,
    /// (degree, maximal nilpotency height among indecomposable elements of
    /// that degree).
    pub nilpotency: Vec<(u32, u32)>,
    /// (d1, d2, rank of the multiplication map H^d1 x H^d2 -> H^(d1+d2)).
    pub product_ranks: Vec<(u32, u32, usize)>,
}

/// A finite graded-commutative F2 algebra with explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    basis: Vec<String>,
    degrees: Vec<u32>,
    mult: Vec<Vec<Fv>>,
    unit: Fv,
    by_degree: BTreeMap<u32, Vec<usize>>,
}

impl GradedAlgebra {
    /// Builds and fully validates an algebra.
    pub fn new(
        basis: Vec<String>,
        degrees: Vec<u32>,
        mult: Vec<Vec<Fv>>,
        unit: Fv,
    ) -> Result<Self, AlgebraError> {
        let a = Self::new_unvalidated(basis, degrees, mult, unit)?;
        let report = a.validate();
        if report.is_valid() {
            Ok(a)
        } else {
            Err(AlgebraError::Invalid(report))
        }
    }

    /// Builds the structure without running semantic checks (shape checks
    /// only).  Used by enumerators that validate separately, and to inspect
    /// deliberately broken tables.
    pub fn new_unvalidated(
        basis: Vec<String>,
        degrees: Vec<u32>,
        mult: Vec<Vec<Fv>>,
        unit: Fv,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        if n > MAX_RANK {
            return Err(AlgebraError::TooLarge(n));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for name in &basis {
                if !seen.insert(name) {
                    return Err(AlgebraError::DuplicateName(name.clone()));
                }
            }
        }
        if degrees.len() != n || mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::BadTableShape);
        }
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        Ok(Self {
            basis,
            degrees,
            mult,
            unit,
            by_degree,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn unit(&self) -> Fv {
        self.unit
    }

    pub fn table(&self) -> &[Vec<Fv>] {
        &self.mult
    }

    /// Indices of basis elements in degree `d` (ascending).
    pub fn degree_indices(&self, d: u32) -> &[usize] {
        self.by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degrees_present(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn top_degree(&self) -> u32 {
        *self.by_degree.keys().last().expect("nonempty algebra")
    }

    /// Number of connected components = rank in degree 0.
    pub fn components(&self) -> usize {
        self.degree_indices(0).len()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> Fv {
        self.mult[i][j]
    }

    /// Bilinear extension of the table to arbitrary vectors.
    pub fn mul(&self, x: Fv, y: Fv) -> Fv {
        let mut out = 0;
        let mut xv = x;
        while xv != 0 {
            let i = xv.trailing_zeros() as usize;
            xv &= xv - 1;
            out ^= f2::apply(&self.mult[i], y);
        }
        out
    }

    /// `x^k` for homogeneous (or any) `x`; `x^0` is the unit.
    pub fn pow(&self, x: Fv, k: u32) -> Fv {
        let mut out = self.unit;
        for _ in 0..k {
            out = self.mul(out, x);
        }
        out
    }

    /// Largest `h` with `x^h != 0` (0 when `x` is zero).
    pub fn height(&self, x: Fv) -> u32 {
        let mut h = 0;
        let mut p = x;
        while p != 0 && h <= self.dim() as u32 + 1 {
            h += 1;
            p = self.mul(p, x);
        }
        h
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries(
            self.by_degree
                .iter()
                .map(|(&d, idx)| (d, idx.len()))
                .collect(),
        )
    }

    /// Runs every structural check and reports all failures with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                if self.mult[i][j] != self.mult[j][i] {
                    failures.push(ValidationFailure::NotSymmetric { i, j });
                }
                let want = self.degrees[i] + self.degrees[j];
                for t in f2::support(self.mult[i][j]) {
                    if t >= n || self.degrees[t] != want {
                        failures.push(ValidationFailure::NotGraded { i, j, term: t });
                    }
                }
            }
        }
        // Unit checks.
        if self.degree_indices(0).is_empty() {
            failures.push(ValidationFailure::MissingDegreeZero);
        }
        if f2::support(self.unit).any(|i| i >= n || self.degrees[i] != 0) {
            failures.push(ValidationFailure::UnitNotDegreeZero);
        } else {
            for i in 0..n {
                if self.mul(self.unit, f2::basis_vec(i)) != f2::basis_vec(i) {
                    failures.push(ValidationFailure::UnitNotIdentity { i });
                }
            }
        }
        // Associativity on all basis triples (bilinearity then gives it on
        // arbitrary elements).
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(self.mult[i][j], f2::basis_vec(k));
                    let rhs = self.mul(f2::basis_vec(i), self.mult[j][k]);
                    if lhs != rhs {
                        failures.push(ValidationFailure::NotAssociative { i, j, k });
                        if failures.len() > 32 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        // Degree-0 structure: idempotents.  For each degree-0 basis element
        // e we ask e*e = e and e*f = 0 for distinct degree-0 elements; this
        // is the normal form produced by all constructors.  (A different
        // choice of degree-0 basis could be valid too, but fixing idempotent
        // form keeps component extraction canonical.)
        let zero_idx = self.degree_indices(0).to_vec();
        if zero_idx.len() > 1 || (zero_idx.len() == 1 && self.unit != f2::basis_vec(zero_idx[0])) {
            let mut ok = self.unit == zero_idx.iter().fold(0, |acc, &i| acc | f2::basis_vec(i));
            for &i in &zero_idx {
                for &j in &zero_idx {
                    let want = if i == j { f2::basis_vec(i) } else { 0 };
                    if self.mult[i][j] != want {
                        ok = false;
                    }
                }
            }
            if !ok {
                failures.push(ValidationFailure::BadDegreeZeroStructure);
            }
        }
        ValidationReport { failures }
    }

    /// Span of products of positive-degree elements inside degree `d`.
    pub fn decomposable_span(&self, d: u32) -> Echelon {
        let mut e = Echelon::new();
        for d1 in self.degrees_present().collect::<Vec<_>>() {
            if d1 == 0 || d1 >= d {
                continue;
            }
            let d2 = d - d1;
            if d2 == 0 || self.degree_indices(d2).is_empty() {
                continue;
            }
            for &i in self.degree_indices(d1) {
                for &j in self.degree_indices(d2) {
                    e.insert(self.mult[i][j]);
                }
            }
        }
        e
    }

    /// Minimal generators: in each positive degree, the corank of the
    /// decomposable subspace.
    pub fn minimal_generators(&self) -> Generators {
        let mut by_degree = BTreeMap::new();
        for d in self.degrees_present().collect::<Vec<_>>() {
            if d == 0 {
                continue;
            }
            let dim = self.degree_indices(d).len();
            let dec = self.decomposable_span(d).rank();
            if dim > dec {
                by_degree.insert(d, dim - dec);
            }
        }
        Generators { by_degree }
    }

    /// Poincare duality check for connected algebras: one-dimensional top
    /// degree and nondegenerate pairing `H^i x H^(r-i) -> H^r` for every
    /// `i`.  Failures carry witnesses (a null vector of the pairing).
    pub fn check_poincare_duality(&self) -> PdReport {
        let r = self.top_degree();
        let mut failures = Vec::new();
        if !self.is_connected() {
            failures.push(format!(
                "not connected: rank {} in degree 0",
                self.components()
            ));
        }
        let top_idx = self.degree_indices(r);
        if top_idx.len() != 1 {
            failures.push(format!(
                "top degree {r} has rank {}, expected 1",
                top_idx.len()
            ));
        }
        if failures.is_empty() && r > 0 {
            let top = f2::basis_vec(top_idx[0]);
            for i in 0..=r / 2 {
                let rows = self.degree_indices(i);
                let cols = self.degree_indices(r - i);
                if rows.len() != cols.len() {
                    failures.push(format!(
                        "rank {} in degree {} vs rank {} in degree {}",
                        rows.len(),
                        i,
                        cols.len(),
                        r - i
                    ));
                    continue;
                }
                // Pairing matrix: row per element of H^i, column per H^(r-i).
                let pairing: Vec<Fv> = rows
                    .iter()
                    .map(|&a| {
                        let mut row = 0u64;
                        for (c, &b) in cols.iter().enumerate() {
                            if self.mult[a][b] & top != 0 {
                                row |= f2::basis_vec(c);
                            }
                        }
                        row
                    })
                    .collect();
                if f2::rank(&pairing) != rows.len() {
                    // Exhibit a null vector as a witness.
                    let ker = f2::kernel(&pairing);
                    let witness: Vec<&str> = f2::support(ker[0])
                        .map(|t| self.basis[rows[t]].as_str())
                        .collect();
                    failures.push(format!(
                        "degenerate pairing in degree {i}: ({}) pairs to zero with all of degree {}",
                        witness.join(" + "),
                        r - i
                    ));
                }
            }
        }
        PdReport {
            is_pd: failures.is_empty(),
            top_degree: r,
            failures,
        }
    }

    /// Fast isomorphism invariants.  Everything here is independent of the
    /// choice of homogeneous basis.
    pub fn signature(&self) -> Signature {
        let gens = self.minimal_generators();
        let mut nilpotency = Vec::new();
        for (&d, &count) in &gens.by_degree {
            let _ = count;
            let idx = self.degree_indices(d);
            let dec = self.decomposable_span(d);
            let k = idx.len();
            let mut best = 0;
            for code in 1u64..(1 << k) {
                let v: Fv = f2::support(code).map(|t| f2::basis_vec(idx[t])).fold(0, |a, b| a | b);
                if !dec.contains(v) {
                    best = best.max(self.height(v));
                }
            }
            nilpotency.push((d, best));
        }
        let mut product_ranks = Vec::new();
        let degs: Vec<u32> = self.degrees_present().filter(|&d| d > 0).collect();
        for &d1 in &degs {
            for &d2 in &degs {
                if d2 < d1 {
                    continue;
                }
                if self.degree_indices(d1 + d2).is_empty() {
                    continue;
                }
                let mut prods = Vec::new();
                for &i in self.degree_indices(d1) {
                    for &j in self.degree_indices(d2) {
                        prods.push(self.mult[i][j]);
                    }
                }
                product_ranks.push((d1, d2, f2::rank(&prods)));
            }
        }
        Signature {
            hilbert: self.hilbert().0.into_iter().collect(),
            components: self.components(),
            generators: gens.by_degree.into_iter().collect(),
            nilpotency,
            product_ranks,
        }
    }

    /// Splits a (possibly disconnected) algebra into its connected
    /// components: for each degree-0 idempotent `e`, the ideal `eA`.
    pub fn components_split(&self) -> Vec<GradedAlgebra> {
        self.components_with_embedding()
            .into_iter()
            .map(|(c, _)| c)
            .collect()
    }

    /// Like [`components_split`](Self::components_split), but also reports,
    /// per component, the vector of the ambient algebra that each local
    /// basis class corresponds to.  Basis classes of the ambient algebra
    /// need not lie in a single component (a valid basis may mix them), so
    /// each ideal `eA` is obtained by projecting with `e` and echelonizing.
    pub fn components_with_embedding(&self) -> Vec<(GradedAlgebra, Vec<Fv>)> {
        let zero_idx = self.degree_indices(0).to_vec();
        if zero_idx.len() <= 1 {
            let emb = (0..self.dim()).map(f2::basis_vec).collect();
            return vec![(self.clone(), emb)];
        }
        let mut out = Vec::new();
        for &e in &zero_idx {
            let ev = f2::basis_vec(e);
            let mut ech = f2::Echelon::new();
            let mut basis_global: Vec<Fv> = Vec::new();
            let mut degrees: Vec<u32> = Vec::new();
            for i in 0..self.dim() {
                let v = self.mul(ev, f2::basis_vec(i));
                if v != 0 && ech.insert_tagged(v, f2::basis_vec(basis_global.len())) {
                    basis_global.push(v);
                    degrees.push(self.degrees[i]);
                }
            }
            // Products of projected classes stay inside the ideal, so every
            // reduction below is exact (zero residue).
            let coords = |w: Fv| -> Fv {
                let (residue, tag) = ech.reduce(w);
                debug_assert_eq!(residue, 0, "product escaped its component");
                tag
            };
            let n = basis_global.len();
            let mult: Vec<Vec<Fv>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| coords(self.mul(basis_global[i], basis_global[j])))
                        .collect()
                })
                .collect();
            let basis = (0..n).map(|i| format!("c{e}_{i}")).collect();
            let unit = coords(ev);
            let comp = GradedAlgebra::new_unvalidated(basis, degrees, mult, unit)
                .expect("component of valid algebra");
            out.push((comp, basis_global));
        }
        out
    }

    /// Pretty multiplication table (products of basis elements), for reports.
    pub fn describe_products(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if self.degrees[i] == 0 || self.degrees[j] == 0 {
                    continue;
                }
                let v = self.mult[i][j];
                let rhs = if v == 0 {
                    "0".to_string()
                } else {
                    f2::support(v)
                        .map(|t| self.basis[t].clone())
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                out.push(format!("{} * {} = {}", self.basis[i], self.basis[j], rhs));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;

    #[test]
    fn sphere_is_pd_with_palindromic_hilbert() {
        let s = constructors::sphere(3);
        assert!(s.validate().is_valid());
        let h = s.hilbert();
        assert_eq!(h.total_rank(), 2);
        assert!(h.is_palindromic());
        assert!(s.check_poincare_duality().is_pd);
        assert_eq!(s.minimal_generators().degrees(), vec![3]);
    }

    #[test]
    fn point_has_trivial_structure() {
        let p = constructors::point();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.top_degree(), 0);
        assert!(p.check_poincare_duality().is_pd);
        assert_eq!(p.minimal_generators().total(), 0);
    }

    #[test]
    fn truncated_polynomial_heights() {
        // P^3(2): generator x of degree 2 with x^4 = 0.
        let a = constructors::truncated(3, 2);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.top_degree(), 6);
        let x = f2::basis_vec(a.degree_indices(2)[0]);
        assert_eq!(a.height(x), 3);
        assert!(a.check_poincare_duality().is_pd);
        assert_eq!(a.minimal_generators().degrees(), vec![2]);
    }

    #[test]
    fn broken_associativity_is_reported_with_witness() {
        // Symmetric, degree-additive table that is not associative:
        // a*b = d and c*d = e, but b*c = 0, so (a*b)*c = e != a*(b*c) = 0.
        let basis: Vec<String> = ["1", "a", "b", "c", "d", "e"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let degrees = vec![0, 1, 1, 1, 2, 3];
        let n = 6;
        let mut mult = vec![vec![0u64; n]; n];
        for i in 0..n {
            mult[0][i] = f2::basis_vec(i);
            mult[i][0] = f2::basis_vec(i);
        }
        mult[1][2] = f2::basis_vec(4);
        mult[2][1] = f2::basis_vec(4);
        mult[3][4] = f2::basis_vec(5);
        mult[4][3] = f2::basis_vec(5);
        let a = GradedAlgebra::new_unvalidated(basis, degrees, mult, 1).unwrap();
        let rep = a.validate();
        assert!(!rep.is_valid());
        assert!(rep
            .failures
            .iter()
            .any(|x| matches!(x, ValidationFailure::NotAssociative { .. })));
    }

    #[test]
    fn unit_violation_detected() {
        let basis: Vec<String> = ["1", "x"].iter().map(|s| s.to_string()).collect();
        let mult = vec![vec![1, 0], vec![0, 0]]; // 1*x = 0: broken unit
        let a = GradedAlgebra::new_unvalidated(basis, vec![0, 2], mult, 1).unwrap();
        let rep = a.validate();
        assert!(rep
            .failures
            .contains(&ValidationFailure::UnitNotIdentity { i: 1 }));
    }

    #[test]
    fn connected_sum_of_projective_planes_not_iso_to_torus_signature() {
        let p2p2 = constructors::connected_sum(
            &constructors::truncated(2, 1),
            &constructors::truncated(2, 1),
        )
        .unwrap();
        let sxs = constructors::tensor(&constructors::sphere(1), &constructors::sphere(1));
        assert_eq!(p2p2.hilbert(), sxs.hilbert());
        // Same Hilbert series but different nilpotency: x^2 != 0 in P2 # P2.
        assert_ne!(p2p2.signature(), sxs.signature());
    }
}
