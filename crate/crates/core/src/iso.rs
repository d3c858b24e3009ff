//! Exact isomorphism testing for graded F2 algebras.
//!
//! Two algebras are isomorphic iff some degree-preserving invertible linear
//! map respects multiplication.  The search below is exhaustive but prunes
//! hard: images of decomposable elements are forced by images in lower
//! degrees, so only indecomposable directions are chosen freely, and
//! multiplicativity is checked as soon as both sides of a product are
//! available.  Cheap invariants (`Signature`) reject most non-isomorphic
//! pairs without any search.
//!
//! A canonical form (lexicographically minimal multiplication table over all
//! degree-preserving basis changes) is provided for small homogeneous pieces;
//! it is used to produce deterministic class representatives.

use crate::algebra::GradedAlgebra;
use crate::f2::{self, Echelon, Fv};

/// A witness isomorphism: images of the left algebra's basis elements,
/// written in the right algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<Fv>,
}

impl Isomorphism {
    /// Checks that `map` really is a degree-preserving ring isomorphism
    /// from `a` to `b`.
    pub fn verify(&self, a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
        let n = a.dim();
        if b.dim() != n || self.map.len() != n {
            return false;
        }
        if !f2::is_invertible(&self.map, n) {
            return false;
        }
        for (i, &img) in self.map.iter().enumerate() {
            for t in f2::support(img) {
                if b.degree(t) != a.degree(i) {
                    return false;
                }
            }
        }
        if f2::apply(&self.map, a.unit()) != b.unit() {
            return false;
        }
        for i in 0..n {
            for j in i..n {
                if f2::apply(&self.map, a.mul_basis(i, j))
                    != b.mul(self.map[i], self.map[j])
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Per-degree data driving the search: how each basis element of `a` in this
/// degree decomposes into products of lower-degree elements plus free
/// (indecomposable) directions.
struct DegreePlan {
    degree: u32,
    /// Global indices of this degree's basis elements in `a`.
    locals: Vec<usize>,
    /// Witness products spanning the decomposable part: (i, j) pairs.
    products: Vec<(usize, usize)>,
    /// Free (indecomposable) slot count.
    free: usize,
    /// For each local basis element: (product mask, free mask) expressing it.
    expr: Vec<(u64, u64)>,
}

fn plan_degree(a: &GradedAlgebra, d: u32) -> DegreePlan {
    let locals = a.degree_indices(d).to_vec();
    let k = locals.len();
    // Local coordinates: bit t == locals[t].
    let localize = |v: Fv| -> Fv {
        let mut out = 0;
        for (t, &g) in locals.iter().enumerate() {
            if v >> g & 1 == 1 {
                out |= f2::basis_vec(t);
            }
        }
        out
    };
    let mut ech = Echelon::new();
    let mut products = Vec::new();
    // Products of lower positive degrees spanning the decomposable part.
    for d1 in a.degrees_present().collect::<Vec<_>>() {
        if d1 == 0 || d1 >= d {
            continue;
        }
        let d2 = d - d1;
        if d2 == 0 || d2 < d1 || a.degree_indices(d2).is_empty() {
            continue;
        }
        for &i in a.degree_indices(d1) {
            for &j in a.degree_indices(d2) {
                let v = localize(a.mul_basis(i, j));
                if v != 0 && ech.insert_tagged(v, f2::basis_vec(products.len())) {
                    products.push((i, j));
                }
            }
        }
    }
    let s = products.len();
    // Free slots: complete to a basis with standard vectors; their tags live
    // above bit 32.
    let mut free = 0;
    for t in 0..k {
        if ech.insert_tagged(f2::basis_vec(t), f2::basis_vec(32 + free)) {
            free += 1;
        }
    }
    debug_assert_eq!(ech.rank(), k);
    let expr = (0..k)
        .map(|t| {
            let (res, tag) = ech.reduce(f2::basis_vec(t));
            debug_assert_eq!(res, 0);
            (tag & ((1u64 << s.max(1)) - 1) & ((1 << 32) - 1), tag >> 32)
        })
        .collect();
    DegreePlan {
        degree: d,
        locals,
        products,
        free,
        expr,
    }
}

struct Searcher<'x> {
    a: &'x GradedAlgebra,
    b: &'x GradedAlgebra,
    plans: Vec<DegreePlan>,
    /// Images of a's basis elements (0 until assigned).
    map: Vec<Fv>,
}

impl<'x> Searcher<'x> {
    /// Checks multiplicativity for every pair whose product lands in the
    /// degree just completed.
    fn check_products_into(&self, d: u32) -> bool {
        for d1 in self.a.degrees_present() {
            if d1 == 0 || d1 >= d {
                continue;
            }
            let d2 = d - d1;
            if d2 < d1 || d2 == 0 || self.a.degree_indices(d2).is_empty() {
                continue;
            }
            for &i in self.a.degree_indices(d1) {
                for &j in self.a.degree_indices(d2) {
                    let lhs = f2::apply(&self.map, self.a.mul_basis(i, j));
                    let rhs = self.b.mul(self.map[i], self.map[j]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, stage: usize) -> bool {
        let Some(plan) = self.plans.get(stage) else {
            return true;
        };
        let d = plan.degree;
        let b_locals: Vec<usize> = self.b.degree_indices(d).to_vec();
        let k = plan.locals.len();
        if b_locals.len() != k {
            return false;
        }
        // Forced product images in b (global coordinates).
        let forced: Vec<Fv> = plan
            .products
            .iter()
            .map(|&(i, j)| self.b.mul(self.map[i], self.map[j]))
            .collect();
        // Recursive choice of free-slot images with incremental independence
        // pruning: once every free slot used by a local element is chosen,
        // its image is determined and must extend the span.
        let plan_expr = plan.expr.clone();
        let locals = plan.locals.clone();
        let nfree = plan.free;
        let dim_mask: Vec<Fv> = b_locals.iter().map(|&g| f2::basis_vec(g)).collect();
        let all_vectors: Vec<Fv> = (0..(1u64 << k))
            .map(|code| {
                let mut v = 0;
                for (t, &bit) in dim_mask.iter().enumerate() {
                    if code >> t & 1 == 1 {
                        v |= bit;
                    }
                }
                v
            })
            .collect();

        // Iterative stack over free slot choices.
        fn rec(
            s: &mut Searcher,
            stage: usize,
            slot: usize,
            nfree: usize,
            forced: &[Fv],
            expr: &[(u64, u64)],
            locals: &[usize],
            all_vectors: &[Fv],
            chosen: &mut Vec<Fv>,
            ech: &mut Echelon,
        ) -> bool {
            // Determine images for locals whose free mask fits in chosen set.
            let avail: u64 = (1u64 << slot) - 1;
            if slot == nfree {
                // Everything determined; assemble, final rank check, recurse.
                let mut rows = Vec::with_capacity(locals.len());
                for (t, &(pm, fm)) in expr.iter().enumerate() {
                    let mut img = 0;
                    for p in f2::support(pm) {
                        img ^= forced[p];
                    }
                    for fslot in f2::support(fm) {
                        img ^= chosen[fslot];
                    }
                    s.map[locals[t]] = img;
                    rows.push(img);
                }
                let ok = f2::rank(&rows) == locals.len()
                    && s.check_products_into(s.plans[stage].degree)
                    && s.search(stage + 1);
                if ok {
                    return true;
                }
                for &g in locals {
                    s.map[g] = 0;
                }
                return false;
            }
            for &v in all_vectors {
                chosen.push(v);
                // Prune: every local fully determined by slots < slot+1 must
                // be independent of previously determined ones.
                let avail2 = avail | (1 << slot);
                let mut ok = true;
                let mut snapshot = ech.clone();
                for &(pm, fm) in expr.iter() {
                    if fm & !avail2 == 0 && fm >> slot & 1 == 1 {
                        let mut img = 0;
                        for p in f2::support(pm) {
                            img ^= forced[p];
                        }
                        for fslot in f2::support(fm) {
                            img ^= chosen[fslot];
                        }
                        if !snapshot.insert(img) {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok
                    && rec(
                        s, stage, slot + 1, nfree, forced, expr, locals, all_vectors, chosen,
                        &mut snapshot,
                    )
                {
                    return true;
                }
                chosen.pop();
            }
            false
        }

        // Seed the echelon with images of locals that use no free slots.
        let mut ech = Echelon::new();
        let mut prechosen = Vec::new();
        for &(pm, fm) in &plan_expr {
            if fm == 0 {
                let mut img = 0;
                for p in f2::support(pm) {
                    img ^= forced[p];
                }
                if !ech.insert(img) {
                    return false;
                }
            }
        }
        rec(
            self,
            stage,
            0,
            nfree,
            &forced,
            &plan_expr,
            &locals,
            &all_vectors,
            &mut prechosen,
            &mut ech,
        )
    }
}

/// Finds a degree-preserving ring isomorphism from `a` to `b`, if one
/// exists.  Uses cheap invariants as a fast rejection, then an exhaustive
/// backtracking search over images of indecomposables.
pub fn find_isomorphism(a: &GradedAlgebra, b: &GradedAlgebra) -> Option<Isomorphism> {
    if a.dim() != b.dim() || a.hilbert() != b.hilbert() {
        return None;
    }
    if a.signature() != b.signature() {
        return None;
    }
    if !a.is_connected() {
        return find_isomorphism_disconnected(a, b);
    }
    let mut plans: Vec<DegreePlan> = a
        .degrees_present()
        .filter(|&d| d > 0)
        .map(|d| plan_degree(a, d))
        .collect();
    plans.sort_by_key(|p| p.degree);
    let mut map = vec![0u64; a.dim()];
    // Unit to unit (connected: both units are single basis elements).
    let ua = a.degree_indices(0)[0];
    let ub = b.degree_indices(0)[0];
    map[ua] = f2::basis_vec(ub);
    let mut searcher = Searcher { a, b, plans, map };
    if searcher.search(0) {
        let iso = Isomorphism {
            map: searcher.map,
        };
        debug_assert!(iso.verify(a, b));
        Some(iso)
    } else {
        None
    }
}

/// Disconnected case: match connected components class-by-class, then
/// assemble a block witness.
fn find_isomorphism_disconnected(a: &GradedAlgebra, b: &GradedAlgebra) -> Option<Isomorphism> {
    let ca = a.components_with_embedding();
    let cb = b.components_with_embedding();
    if ca.len() != cb.len() {
        return None;
    }
    let mut used = vec![false; cb.len()];
    let mut pairing: Vec<(usize, usize, Isomorphism)> = Vec::new();
    for (i, (comp_a, _)) in ca.iter().enumerate() {
        let mut found = None;
        for (j, (comp_b, _)) in cb.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = find_isomorphism(comp_a, comp_b) {
                found = Some((j, iso));
                break;
            }
        }
        // Greedy matching is sound here because isomorphism is an
        // equivalence relation: components isomorphic to each other are
        // interchangeable, so a greedy pick never blocks a valid matching.
        let (j, iso) = found?;
        used[j] = true;
        pairing.push((i, j, iso));
    }
    // Reassemble a global map.  Each global basis class decomposes as the
    // sum of its projections to the components (the unit is the sum of the
    // idempotents), so map every projection through its component witness
    // and add the images back up in the ambient coordinates of b.
    let coordinizers: Vec<f2::Echelon> = ca
        .iter()
        .map(|(_, emb)| {
            let mut ech = f2::Echelon::new();
            for (k, &v) in emb.iter().enumerate() {
                ech.insert_tagged(v, f2::basis_vec(k));
            }
            ech
        })
        .collect();
    let mut map = vec![0u64; a.dim()];
    for gi in 0..a.dim() {
        let mut img = 0u64;
        for (i, j, iso) in &pairing {
            let (comp_a, emb_a) = &ca[*i];
            let (_, emb_b) = &cb[*j];
            // The component's idempotent, back in ambient coordinates.
            let mut idem = 0u64;
            for t in f2::support(comp_a.unit()) {
                idem ^= emb_a[t];
            }
            let proj = a.mul(idem, f2::basis_vec(gi));
            let (residue, local) = coordinizers[*i].reduce(proj);
            if residue != 0 {
                return None;
            }
            for t in f2::support(local) {
                for s in f2::support(iso.map[t]) {
                    img ^= emb_b[s];
                }
            }
        }
        map[gi] = img;
    }
    let iso = Isomorphism { map };
    if iso.verify(a, b) {
        Some(iso)
    } else {
        None
    }
}

/// True iff the algebras are isomorphic as graded rings.
pub fn are_isomorphic(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Canonical form: the lexicographically smallest flattened multiplication
/// table over all degree-preserving invertible changes of basis.  Exhausts
/// the full product of general linear groups per degree, so it is only
/// attempted when each graded piece has rank <= 4 and the total group size
/// stays small; returns `None` otherwise.
pub fn canonical_form(a: &GradedAlgebra) -> Option<Vec<Fv>> {
    const GL_SIZES: [u64; 5] = [1, 1, 6, 168, 20160];
    let dims: Vec<(u32, Vec<usize>)> = a
        .degrees_present()
        .map(|d| (d, a.degree_indices(d).to_vec()))
        .collect();
    let mut total: u64 = 1;
    for (_, idx) in &dims {
        if idx.len() > 4 {
            return None;
        }
        total = total.checked_mul(GL_SIZES[idx.len()])?;
        if total > 3_000_000 {
            return None;
        }
    }
    let n = a.dim();
    let groups: Vec<Vec<Vec<Fv>>> = dims.iter().map(|(_, idx)| f2::general_linear(idx.len())).collect();
    let mut best: Option<Vec<Fv>> = None;
    let mut choice = vec![0usize; dims.len()];
    loop {
        // Assemble global change of basis T (rows = new basis in old coords)
        let mut t_rows = vec![0u64; n];
        for (g, (_, idx)) in dims.iter().enumerate() {
            let m = &groups[g][choice[g]];
            for (r, &global_r) in idx.iter().enumerate() {
                let mut row = 0;
                for (c, &global_c) in idx.iter().enumerate() {
                    if m[r] >> c & 1 == 1 {
                        row |= f2::basis_vec(global_c);
                    }
                }
                t_rows[global_r] = row;
            }
        }
        let t_inv = f2::invert(&t_rows, n).expect("block-invertible");
        // New table: entry (i,j) = T^{-1}(T(e_i) * T(e_j)).
        let mut table = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                let prod = a.mul(t_rows[i], t_rows[j]);
                table.push(f2::apply(&t_inv, prod));
            }
        }
        if best.as_ref().map_or(true, |b| &table < b) {
            best = Some(table);
        }
        // Advance mixed-radix counter.
        let mut g = 0;
        loop {
            if g == dims.len() {
                return best;
            }
            choice[g] += 1;
            if choice[g] < groups[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

/// Groups algebras into isomorphism classes; returns, for each input, the
/// index of its class representative (the first member seen).
pub fn iso_class_indices(algebras: &[GradedAlgebra]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    let sigs: Vec<_> = algebras.iter().map(|a| a.signature()).collect();
    let mut out = Vec::with_capacity(algebras.len());
    for i in 0..algebras.len() {
        let mut found = None;
        for &r in &reps {
            if sigs[r] == sigs[i] && are_isomorphic(&algebras[r], &algebras[i]) {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => out.push(r),
            None => {
                reps.push(i);
                out.push(i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn tensor_factors_commute() {
        let a = tensor(&sphere(2), &tensor(&sphere(3), &sphere(5)));
        let b = tensor(&tensor(&sphere(5), &sphere(2)), &sphere(3));
        let iso = find_isomorphism(&a, &b).expect("isomorphic");
        assert!(iso.verify(&a, &b));
    }

    #[test]
    fn same_hilbert_different_ring() {
        let p2p2 = connected_sum(&truncated(2, 1), &truncated(2, 1)).unwrap();
        let torus = tensor(&sphere(1), &sphere(1));
        assert_eq!(p2p2.hilbert(), torus.hilbert());
        assert!(!are_isomorphic(&p2p2, &torus));
        let p3 = truncated(3, 1);
        assert!(!are_isomorphic(&p3, &torus));
        assert!(!are_isomorphic(&p3, &p2p2));
    }

    #[test]
    fn basis_change_is_isomorphism() {
        // P2 # P2 in its natural basis vs a sheared basis: u1' = u1 + u2.
        let a = connected_sum(&truncated(2, 3), &truncated(2, 3)).unwrap();
        // Build the sheared copy manually.
        let n = a.dim();
        let mut rows: Vec<Fv> = (0..n).map(f2::basis_vec).collect();
        let mids = a.degree_indices(3).to_vec();
        rows[mids[0]] = f2::basis_vec(mids[0]) ^ f2::basis_vec(mids[1]);
        let inv = f2::invert(&rows, n).unwrap();
        let mult: Vec<Vec<Fv>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| f2::apply(&inv, a.mul(rows[i], rows[j])))
                    .collect()
            })
            .collect();
        let b = GradedAlgebra::new(
            a.basis_names().to_vec(),
            a.degrees().to_vec(),
            mult,
            a.unit(),
        )
        .unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn disconnected_matching() {
        let a = disjoint_union(&truncated(2, 1), &sphere(4));
        let b = disjoint_union(&sphere(4), &truncated(2, 1));
        assert!(are_isomorphic(&a, &b));
        let c = disjoint_union(&sphere(4), &sphere(4));
        assert!(!are_isomorphic(&a, &c));
    }

    #[test]
    fn canonical_form_separates_and_identifies() {
        let p2p2 = connected_sum(&truncated(2, 1), &truncated(2, 1)).unwrap();
        let torus = tensor(&sphere(1), &sphere(1));
        let cf1 = canonical_form(&p2p2).unwrap();
        let cf2 = canonical_form(&torus).unwrap();
        assert_ne!(cf1, cf2);
        // Isomorphic pair: tensor in either order.
        let x = tensor(&sphere(1), &sphere(2));
        let y = tensor(&sphere(2), &sphere(1));
        assert_eq!(canonical_form(&x), canonical_form(&y));
    }
}
