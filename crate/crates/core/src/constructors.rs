//! Constructors for the building-block algebras: truncated polynomial
//! algebras, products (tensor), connected sums, wedges, and disjoint unions.
//!
//! All constructors produce fully validated algebras.  Basis names are kept
//! human-readable where possible and are made unique mechanically when the
//! inputs collide.

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::f2::{self, Fv};

fn make_unique(names: Vec<String>) -> Vec<String> {
    let mut used = std::collections::BTreeSet::<String>::new();
    names
        .into_iter()
        .map(|n| {
            if used.insert(n.clone()) {
                return n;
            }
            let mut k = 2usize;
            loop {
                let candidate = format!("{n}~{k}");
                if used.insert(candidate.clone()) {
                    return candidate;
                }
                k += 1;
            }
        })
        .collect()
}

/// The one-point algebra F2 in degree 0.
pub fn point() -> GradedAlgebra {
    GradedAlgebra::new(vec!["1".into()], vec![0], vec![vec![1]], 1).expect("point is valid")
}

/// Truncated polynomial algebra P^h(q) = F2[x]/(x^(h+1)) with deg x = q > 0.
/// `truncated(1, q)` is the cohomology of the q-sphere.
pub fn truncated(h: u32, q: u32) -> GradedAlgebra {
    assert!(q > 0, "generator degree must be positive");
    let n = h as usize + 1;
    let basis: Vec<String> = (0..n)
        .map(|a| match a {
            0 => "1".into(),
            1 => "x".into(),
            a => format!("x^{a}"),
        })
        .collect();
    let degrees: Vec<u32> = (0..n as u32).map(|a| a * q).collect();
    let mult: Vec<Vec<Fv>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| if a + b < n { f2::basis_vec(a + b) } else { 0 })
                .collect()
        })
        .collect();
    GradedAlgebra::new(basis, degrees, mult, 1).expect("truncated algebra is valid")
}

/// The q-sphere.  `sphere(0)` is two points (the ring F2 x F2).
pub fn sphere(q: u32) -> GradedAlgebra {
    if q == 0 {
        disjoint_union(&point(), &point())
    } else {
        truncated(1, q)
    }
}

/// Tensor product A (x) B, the ring of a product space.
pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    let na = a.dim();
    let nb = b.dim();
    let idx = |i: usize, j: usize| i * nb + j;
    let mut names = Vec::with_capacity(na * nb);
    let mut degrees = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            let n1 = a.name(i);
            let n2 = b.name(j);
            names.push(match (n1, n2) {
                ("1", "1") => "1".to_string(),
                ("1", x) => x.to_string(),
                (x, "1") => x.to_string(),
                (x, y) => format!("{x}*{y}"),
            });
            degrees.push(a.degree(i) + b.degree(j));
        }
    }
    let names = make_unique(names);
    let expand = |va: Fv, vb: Fv| -> Fv {
        let mut out = 0;
        for i in f2::support(va) {
            for j in f2::support(vb) {
                out ^= f2::basis_vec(idx(i, j));
            }
        }
        out
    };
    let mut mult = vec![vec![0u64; na * nb]; na * nb];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    mult[idx(i1, j1)][idx(i2, j2)] =
                        expand(a.mul_basis(i1, i2), b.mul_basis(j1, j2));
                }
            }
        }
    }
    let unit = expand(a.unit(), b.unit());
    GradedAlgebra::new(names, degrees, mult, unit).expect("tensor of valid algebras is valid")
}

/// Connected sum A # B: both factors must be connected Poincare duality
/// algebras with the same (positive) top degree.  Units and top classes are
/// identified; cross products of middle classes vanish.
pub fn connected_sum(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
) -> Result<GradedAlgebra, AlgebraError> {
    for (x, tag) in [(a, "left"), (b, "right")] {
        let pd = x.check_poincare_duality();
        if !pd.is_pd {
            return Err(AlgebraError::Other(format!(
                "connected sum requires Poincare duality on the {tag} factor: {}",
                pd.failures.join("; ")
            )));
        }
    }
    let r = a.top_degree();
    if r != b.top_degree() || r == 0 {
        return Err(AlgebraError::Other(format!(
            "connected sum requires equal positive top degree (got {} and {})",
            r,
            b.top_degree()
        )));
    }
    // New layout: [unit] ++ middles(A) ++ middles(B) ++ [top].
    let mid = |x: &GradedAlgebra| -> Vec<usize> {
        (0..x.dim())
            .filter(|&i| x.degree(i) != 0 && x.degree(i) != r)
            .collect()
    };
    let mida = mid(a);
    let midb = mid(b);
    let n = 2 + mida.len() + midb.len();
    let top_new = n - 1;
    let mut names = vec!["1".to_string()];
    names.extend(mida.iter().map(|&i| a.name(i).to_string()));
    names.extend(midb.iter().map(|&i| b.name(i).to_string()));
    names.push("v".to_string());
    let names = make_unique(names);
    let mut degrees = vec![0];
    degrees.extend(mida.iter().map(|&i| a.degree(i)));
    degrees.extend(midb.iter().map(|&i| b.degree(i)));
    degrees.push(r);
    // Translation maps old index -> new index (unit and top identified).
    let translate = |x: &GradedAlgebra, mids: &[usize], offset: usize, v: Fv| -> Fv {
        let mut out = 0;
        for t in f2::support(v) {
            let d = x.degree(t);
            if d == 0 {
                out ^= f2::basis_vec(0);
            } else if d == r {
                out ^= f2::basis_vec(top_new);
            } else {
                let pos = mids.iter().position(|&m| m == t).expect("middle index");
                out ^= f2::basis_vec(offset + pos);
            }
        }
        out
    };
    let mut mult = vec![vec![0u64; n]; n];
    for i in 0..n {
        mult[0][i] = f2::basis_vec(i);
        mult[i][0] = f2::basis_vec(i);
    }
    let oa = 1;
    let ob = 1 + mida.len();
    for (p, &i) in mida.iter().enumerate() {
        for (q, &j) in mida.iter().enumerate() {
            mult[oa + p][oa + q] = translate(a, &mida, oa, a.mul_basis(i, j));
        }
    }
    for (p, &i) in midb.iter().enumerate() {
        for (q, &j) in midb.iter().enumerate() {
            mult[ob + p][ob + q] = translate(b, &midb, ob, b.mul_basis(i, j));
        }
    }
    GradedAlgebra::new(names, degrees, mult, 1)
}

/// Connected sum of `copies` copies of P^height(q).
pub fn sum_of_projective(
    copies: u32,
    height: u32,
    q: u32,
) -> Result<GradedAlgebra, AlgebraError> {
    let mut acc = truncated(height, q);
    for _ in 1..copies {
        acc = connected_sum(&acc, &truncated(height, q))?;
    }
    Ok(acc)
}

/// Wedge sum A v B: units identified, all other cross products zero.
/// Requires both factors connected.  The result is generally not a
/// Poincare duality algebra.
pub fn wedge_sum(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
    if !a.is_connected() || !b.is_connected() {
        return Err(AlgebraError::Other(
            "wedge sum requires connected factors".into(),
        ));
    }
    let posa: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) != 0).collect();
    let posb: Vec<usize> = (0..b.dim()).filter(|&i| b.degree(i) != 0).collect();
    let n = 1 + posa.len() + posb.len();
    let mut names = vec!["1".to_string()];
    names.extend(posa.iter().map(|&i| a.name(i).to_string()));
    names.extend(posb.iter().map(|&i| b.name(i).to_string()));
    let names = make_unique(names);
    let mut degrees = vec![0];
    degrees.extend(posa.iter().map(|&i| a.degree(i)));
    degrees.extend(posb.iter().map(|&i| b.degree(i)));
    let translate = |x: &GradedAlgebra, pos: &[usize], offset: usize, v: Fv| -> Fv {
        let mut out = 0;
        for t in f2::support(v) {
            if x.degree(t) == 0 {
                out ^= f2::basis_vec(0);
            } else {
                let p = pos.iter().position(|&m| m == t).expect("positive index");
                out ^= f2::basis_vec(offset + p);
            }
        }
        out
    };
    let mut mult = vec![vec![0u64; n]; n];
    for i in 0..n {
        mult[0][i] = f2::basis_vec(i);
        mult[i][0] = f2::basis_vec(i);
    }
    let oa = 1;
    let ob = 1 + posa.len();
    for (p, &i) in posa.iter().enumerate() {
        for (q, &j) in posa.iter().enumerate() {
            mult[oa + p][oa + q] = translate(a, &posa, oa, a.mul_basis(i, j));
        }
    }
    for (p, &i) in posb.iter().enumerate() {
        for (q, &j) in posb.iter().enumerate() {
            mult[ob + p][ob + q] = translate(b, &posb, ob, b.mul_basis(i, j));
        }
    }
    GradedAlgebra::new(names, degrees, mult, 1)
}

/// Disjoint union A + B: the product ring, one idempotent per component.
pub fn disjoint_union(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    let na = a.dim();
    let nb = b.dim();
    let n = na + nb;
    let mut names: Vec<String> = a.basis_names().to_vec();
    names.extend(b.basis_names().iter().cloned());
    let names = make_unique(names);
    let mut degrees: Vec<u32> = a.degrees().to_vec();
    degrees.extend_from_slice(b.degrees());
    let mut mult = vec![vec![0u64; n]; n];
    for i in 0..na {
        for j in 0..na {
            mult[i][j] = a.mul_basis(i, j);
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            mult[na + i][na + j] = b.mul_basis(i, j) << na;
        }
    }
    let unit = a.unit() | (b.unit() << na);
    GradedAlgebra::new(names, degrees, mult, unit).expect("disjoint union of valid algebras")
}

/// Disjoint union of several algebras.
pub fn disjoint_union_all(parts: &[GradedAlgebra]) -> GradedAlgebra {
    assert!(!parts.is_empty());
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = disjoint_union(&acc, p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_rank_multiplies_and_top_adds() {
        let a = tensor(&sphere(2), &sphere(3));
        assert_eq!(a.dim(), 4);
        assert_eq!(a.top_degree(), 5);
        assert!(a.check_poincare_duality().is_pd);
        let b = tensor(&a, &sphere(5));
        assert_eq!(b.dim(), 8);
        assert_eq!(b.top_degree(), 10);
        assert_eq!(b.minimal_generators().degrees(), vec![2, 3, 5]);
    }

    #[test]
    fn connected_sum_rank_and_sphere_identity() {
        let p3 = truncated(3, 1);
        let t = tensor(&sphere(1), &sphere(2));
        let c = connected_sum(&p3, &t).unwrap();
        assert_eq!(c.dim(), p3.dim() + t.dim() - 2);
        assert!(c.check_poincare_duality().is_pd);
        // S^r # B has the same Hilbert series and structure as B.
        let s = connected_sum(&sphere(3), &t).unwrap();
        assert_eq!(s.hilbert(), t.hilbert());
        assert_eq!(s.signature(), t.signature());
    }

    #[test]
    fn connected_sum_requires_matching_top() {
        assert!(connected_sum(&sphere(2), &sphere(3)).is_err());
        // Wedge is not PD, so it cannot be a connected-sum factor.
        let w = wedge_sum(&sphere(2), &sphere(3)).unwrap();
        assert!(connected_sum(&w, &w).is_err());
    }

    #[test]
    fn wedge_with_point_is_identity() {
        let a = truncated(2, 3);
        let w = wedge_sum(&a, &point()).unwrap();
        assert_eq!(w.hilbert(), a.hilbert());
        assert_eq!(w.signature(), a.signature());
    }

    #[test]
    fn disjoint_union_components() {
        let u = disjoint_union(&truncated(2, 1), &sphere(4));
        assert_eq!(u.components(), 2);
        assert!(u.validate().is_valid());
        let parts = u.components_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].hilbert(), truncated(2, 1).hilbert());
        assert_eq!(parts[1].hilbert(), sphere(4).hilbert());
        assert!(parts.iter().all(|p| p.validate().is_valid()));
    }

    #[test]
    fn zero_sphere_is_two_points() {
        let s0 = sphere(0);
        assert_eq!(s0.dim(), 2);
        assert_eq!(s0.components(), 2);
        assert!(s0.validate().is_valid());
    }
}
