//! Algebra presentations: generators with degrees and homogeneous relations,
//! plus a small text syntax.
//!
//! A presentation describes `F2[x1, ..., xn] / (r1, ..., rk)` where every
//! relation is a homogeneous sum of monomials.  The quotient is computed
//! degree by degree: in degree `d` the relation subspace is spanned by all
//! multiples `m * r` with `m` a monomial of complementary degree, and the
//! graded piece is the quotient of the degree-`d` monomial space by it.
//! The computation stops once the quotient has been zero for enough
//! consecutive degrees to guarantee it stays zero, or fails if the quotient
//! is still alive at the configured degree cap (the ideal then has
//! infinite-dimensional quotient as far as we can tell).
//!
//! Text syntax (whitespace-insensitive, `#` starts a comment):
//!
//! ```text
//! gen x 1;
//! gen y 2;
//! rel x^3;
//! rel x^2 * y + y^2;
//! ```

use crate::algebra::{AlgebraError, GradedAlgebra, MAX_RANK};
use crate::f2::{BitVec, Fv, WideEchelon};
use std::collections::BTreeMap;

/// Default bound on the degrees explored while computing a quotient.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// A monomial: exponent for each generator, in presentation order.
pub type Monomial = Vec<u32>;

/// A homogeneous relation: a sum of monomials equal to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<(String, u32)>,
    pub relations: Vec<Relation>,
    pub degree_cap: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum PresentationError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("relation {index} is not homogeneous: term degrees {degrees:?}")]
    NotHomogeneous { index: usize, degrees: Vec<u32> },
    #[error("relation {index} has a constant (degree-0) term")]
    ConstantTerm { index: usize },
    #[error("generator {0:?} has degree 0; generators must have positive degree")]
    DegreeZeroGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("quotient still nonzero at the degree cap {0}; not finite-dimensional within bounds")]
    NotFiniteWithinCap(u32),
    #[error("quotient has more than {MAX_RANK} basis elements")]
    TooLarge,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Presentation {
    pub fn new(generators: Vec<(String, u32)>, relations: Vec<Relation>) -> Self {
        Self {
            generators,
            relations,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.iter()
            .zip(&self.generators)
            .map(|(&e, (_, d))| e * d)
            .sum()
    }

    fn check(&self) -> Result<(), PresentationError> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, d) in &self.generators {
            if *d == 0 {
                return Err(PresentationError::DegreeZeroGenerator(name.clone()));
            }
            if !seen.insert(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        for (i, rel) in self.relations.iter().enumerate() {
            let degrees: Vec<u32> = rel.terms.iter().map(|m| self.monomial_degree(m)).collect();
            if degrees.iter().any(|&d| d == 0) {
                return Err(PresentationError::ConstantTerm { index: i });
            }
            if degrees.windows(2).any(|w| w[0] != w[1]) {
                return Err(PresentationError::NotHomogeneous { index: i, degrees });
            }
        }
        Ok(())
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, (name, _))| {
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of total degree `d`, in a fixed lexicographic order.
    fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let degs: Vec<u32> = self.generators.iter().map(|g| g.1).collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; degs.len()];
        fn go(degs: &[u32], i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == degs.len() {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let maxe = rem / degs[i];
            for e in 0..=maxe {
                cur[i] = e;
                go(degs, i + 1, rem - e * degs[i], cur, out);
            }
            cur[i] = 0;
        }
        go(&degs, 0, d, &mut current, &mut out);
        out
    }

    /// Computes the quotient algebra as an explicit multiplication table.
    pub fn to_algebra(&self) -> Result<GradedAlgebra, PresentationError> {
        self.check()?;
        let max_gen_degree = self.generators.iter().map(|g| g.1).max().unwrap_or(1);

        // Per-degree data: monomial list, index map, echelon of relations,
        // and the global basis indices of the surviving (non-pivot) monomials.
        struct Layer {
            monomials: Vec<Monomial>,
            index: BTreeMap<Monomial, usize>,
            ech: WideEchelon,
            /// local monomial index -> global basis index (surviving only).
            survivors: BTreeMap<usize, usize>,
        }
        let mut layers: BTreeMap<u32, Layer> = BTreeMap::new();
        let mut basis_names: Vec<String> = Vec::new();
        let mut basis_degrees: Vec<u32> = Vec::new();
        let mut zero_streak = 0u32;
        let mut d = 0u32;
        while d <= self.degree_cap {
            let monomials = self.monomials_of_degree(d);
            let width = monomials.len();
            let index: BTreeMap<Monomial, usize> = monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let mut ech = WideEchelon::new(0);
            for rel in &self.relations {
                let rd = self.monomial_degree(&rel.terms[0]);
                if rd > d {
                    continue;
                }
                // Multiples m * rel with deg m = d - rd.
                for m in self.monomials_of_degree(d - rd) {
                    let mut v = BitVec::zeros(width);
                    for term in &rel.terms {
                        let prod: Monomial =
                            m.iter().zip(term).map(|(a, b)| a + b).collect();
                        let i = index[&prod];
                        v.set(i, !v.get(i)); // F2: repeated terms cancel
                    }
                    ech.insert(&v);
                }
            }
            let pivots: std::collections::BTreeSet<usize> =
                ech.pivots().into_iter().collect();
            let mut survivors = BTreeMap::new();
            for (i, m) in monomials.iter().enumerate() {
                if !pivots.contains(&i) {
                    if basis_names.len() >= MAX_RANK {
                        return Err(PresentationError::TooLarge);
                    }
                    survivors.insert(i, basis_names.len());
                    basis_names.push(self.format_monomial(m));
                    basis_degrees.push(d);
                }
            }
            let alive = !survivors.is_empty();
            layers.insert(
                d,
                Layer {
                    monomials,
                    index,
                    ech,
                    survivors,
                },
            );
            if alive {
                zero_streak = 0;
            } else {
                zero_streak += 1;
                // Once `max_gen_degree` consecutive degrees vanish, every
                // higher monomial factors through a vanished degree.
                if zero_streak >= max_gen_degree && d > 0 {
                    break;
                }
            }
            d += 1;
        }
        if zero_streak < max_gen_degree {
            return Err(PresentationError::NotFiniteWithinCap(self.degree_cap));
        }
        let top = basis_degrees.iter().copied().max().unwrap_or(0);

        // Reduce an arbitrary monomial to the quotient basis.
        let reduce = |m: &Monomial| -> Fv {
            let dm = self.monomial_degree(m);
            if dm > top {
                return 0;
            }
            let layer = &layers[&dm];
            let i = layer.index[m];
            let width = layer.monomials.len();
            let (res, _) = layer.ech.reduce(&BitVec::unit(width, i));
            let mut out = 0u64;
            for t in res.ones() {
                out |= 1u64 << layer.survivors[&t];
            }
            out
        };

        let n = basis_names.len();
        // Basis monomials, globally indexed.
        let mut basis_monomials: Vec<Monomial> = vec![Vec::new(); n];
        for layer in layers.values() {
            for (&local, &global) in &layer.survivors {
                basis_monomials[global] = layer.monomials[local].clone();
            }
        }
        let mut mult = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in i..n {
                let prod: Monomial = basis_monomials[i]
                    .iter()
                    .zip(&basis_monomials[j])
                    .map(|(a, b)| a + b)
                    .collect();
                let v = reduce(&prod);
                mult[i][j] = v;
                mult[j][i] = v;
            }
        }
        // Careful: a surviving basis monomial might itself reduce (pivot
        // columns are excluded, so each survivor reduces to itself).
        Ok(GradedAlgebra::new(basis_names, basis_degrees, mult, 1)?)
    }
}

// ---------------------------------------------------------------------------
// Text parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u32),
    Caret,
    Star,
    Plus,
    Semi,
}

struct Lexer<'s> {
    src: &'s str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str) -> Self {
        Self {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: impl Into<String>) -> PresentationError {
        PresentationError::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize, usize)>, PresentationError> {
        loop {
            let rest = &self.src[self.pos..];
            let Some(c) = rest.chars().next() else {
                return Ok(None);
            };
            if c.is_whitespace() {
                self.bump(c);
                continue;
            }
            if c == '#' {
                for c in rest.chars() {
                    if c == '\n' {
                        break;
                    }
                    self.bump(c);
                }
                continue;
            }
            let (line, col) = (self.line, self.col);
            let tok = match c {
                '^' => {
                    self.bump(c);
                    Tok::Caret
                }
                '*' => {
                    self.bump(c);
                    Tok::Star
                }
                '+' => {
                    self.bump(c);
                    Tok::Plus
                }
                ';' => {
                    self.bump(c);
                    Tok::Semi
                }
                c if c.is_ascii_digit() => {
                    let s: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                    for ch in s.chars() {
                        self.bump(ch);
                    }
                    let v: u32 = s
                        .parse()
                        .map_err(|_| self.error(format!("integer {s:?} out of range")))?;
                    Tok::Int(v)
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let s: String = rest
                        .chars()
                        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                        .collect();
                    for ch in s.chars() {
                        self.bump(ch);
                    }
                    Tok::Ident(s)
                }
                other => return Err(self.error(format!("unexpected character {other:?}"))),
            };
            return Ok(Some((tok, line, col)));
        }
    }
}

/// Parses the `gen`/`rel` text syntax into a presentation.
pub fn parse_presentation(src: &str) -> Result<Presentation, PresentationError> {
    let mut lex = Lexer::new(src);
    let mut tokens = Vec::new();
    while let Some(t) = lex.next_token()? {
        tokens.push(t);
    }
    let mut pos = 0usize;
    let err_at = |pos: usize, msg: String| -> PresentationError {
        let (line, col) = tokens
            .get(pos)
            .map(|t| (t.1, t.2))
            .or_else(|| tokens.last().map(|t| (t.1, t.2 + 1)))
            .unwrap_or((1, 1));
        PresentationError::Parse { line, col, msg }
    };

    let mut generators: Vec<(String, u32)> = Vec::new();
    let mut raw_relations: Vec<(usize, Vec<Vec<(String, u32)>>)> = Vec::new();

    while pos < tokens.len() {
        match &tokens[pos].0 {
            Tok::Ident(kw) if kw == "gen" => {
                pos += 1;
                let Some((Tok::Ident(name), ..)) = tokens.get(pos) else {
                    return Err(err_at(pos, "expected generator name after `gen`".into()));
                };
                let name = name.clone();
                pos += 1;
                let Some((Tok::Int(d), ..)) = tokens.get(pos) else {
                    return Err(err_at(pos, "expected generator degree (integer)".into()));
                };
                let d = *d;
                pos += 1;
                let Some((Tok::Semi, ..)) = tokens.get(pos) else {
                    return Err(err_at(pos, "expected `;` after generator declaration".into()));
                };
                pos += 1;
                generators.push((name, d));
            }
            Tok::Ident(kw) if kw == "rel" => {
                let rel_pos = pos;
                pos += 1;
                let mut terms: Vec<Vec<(String, u32)>> = Vec::new();
                loop {
                    // term = factor (* factor)*
                    let mut factors: Vec<(String, u32)> = Vec::new();
                    loop {
                        let Some((Tok::Ident(name), ..)) = tokens.get(pos) else {
                            return Err(err_at(pos, "expected generator name in relation".into()));
                        };
                        let name = name.clone();
                        pos += 1;
                        let mut e = 1u32;
                        if let Some((Tok::Caret, ..)) = tokens.get(pos) {
                            pos += 1;
                            let Some((Tok::Int(v), ..)) = tokens.get(pos) else {
                                return Err(err_at(pos, "expected exponent after `^`".into()));
                            };
                            e = *v;
                            pos += 1;
                        }
                        factors.push((name, e));
                        if let Some((Tok::Star, ..)) = tokens.get(pos) {
                            pos += 1;
                            continue;
                        }
                        break;
                    }
                    terms.push(factors);
                    match tokens.get(pos) {
                        Some((Tok::Plus, ..)) => {
                            pos += 1;
                        }
                        Some((Tok::Semi, ..)) => {
                            pos += 1;
                            break;
                        }
                        _ => return Err(err_at(pos, "expected `+` or `;` in relation".into())),
                    }
                }
                raw_relations.push((rel_pos, terms));
            }
            _ => return Err(err_at(pos, "expected `gen` or `rel`".into())),
        }
    }

    // Resolve names to exponent vectors.
    let name_index: BTreeMap<&str, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.as_str(), i))
        .collect();
    let mut relations = Vec::new();
    for (rel_pos, terms) in raw_relations {
        let mut rel = Relation { terms: Vec::new() };
        for factors in terms {
            let mut m = vec![0u32; generators.len()];
            for (name, e) in factors {
                let Some(&gi) = name_index.get(name.as_str()) else {
                    return Err(err_at(rel_pos, format!("unknown generator {name:?}")));
                };
                m[gi] += e;
            }
            rel.terms.push(m);
        }
        relations.push(rel);
    }
    Ok(Presentation::new(generators, relations))
}

/// Convenience: parse and build in one step.
pub fn from_presentation_text(src: &str) -> Result<GradedAlgebra, PresentationError> {
    parse_presentation(src)?.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;
    use crate::iso::are_isomorphic;

    #[test]
    fn exterior_algebra_three_generators() {
        // F2[a,b,c]/(a^2,b^2,c^2): the ring of a product of three spheres.
        let a = from_presentation_text(
            "gen a 1; gen b 2; gen c 5;\n rel a^2; rel b^2; rel c^2;",
        )
        .unwrap();
        assert_eq!(a.dim(), 8);
        let t = constructors::tensor(
            &constructors::sphere(1),
            &constructors::tensor(&constructors::sphere(2), &constructors::sphere(5)),
        );
        assert!(are_isomorphic(&a, &t));
    }

    #[test]
    fn truncated_matches_constructor() {
        let a = from_presentation_text("gen x 2;\nrel x^8;").unwrap();
        assert!(are_isomorphic(&a, &constructors::truncated(7, 2)));
    }

    #[test]
    fn binomial_identification() {
        // F2[x,y]/(x^6, y^3, x^4 + y^2, x^2*y): rank 8, Hilbert 1,1,2,2,1,1.
        let a = from_presentation_text(
            "gen x 1; gen y 2;\nrel x^6; rel y^3; rel x^4 + y^2; rel x^2*y;",
        )
        .unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.top_degree(), 5);
        assert!(a.check_poincare_duality().is_pd);
        assert_eq!(a.minimal_generators().degrees(), vec![1, 2]);
    }

    #[test]
    fn infinite_quotient_is_rejected() {
        let err = from_presentation_text("gen x 1; gen y 1; rel x^2;").unwrap_err();
        assert!(matches!(
            err,
            PresentationError::NotFiniteWithinCap(_) | PresentationError::TooLarge
        ));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = from_presentation_text("gen x 1;\nrel x^;").unwrap_err();
        match err {
            PresentationError::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col >= 6);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let err = from_presentation_text("gen x 1; rel z^2;").unwrap_err();
        assert!(matches!(err, PresentationError::Parse { .. }));
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let err = from_presentation_text("gen x 1; gen y 2; rel x + y;").unwrap_err();
        assert!(matches!(err, PresentationError::NotHomogeneous { .. }));
    }
}
