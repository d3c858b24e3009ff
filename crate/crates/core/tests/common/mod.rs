//! Shared helpers for the integration suites: a brute-force isomorphism
//! oracle and a seeded random-algebra generator.

use pd2_core::constructors::{
    connected_sum, disjoint_union, point, sphere, tensor, truncated, wedge_sum,
};
use pd2_core::f2::{self, Fv};
use pd2_core::GradedAlgebra;
use rand::Rng;

/// Decides isomorphism by trying every degree-preserving invertible linear
/// map.  Deliberately has no invariant-based fast path: this is the ground
/// truth the production search is tested against, so it must share no code
/// or shortcut with it.  Only usable at small ranks and small same-degree
/// blocks.
pub fn brute_force_isomorphic(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let mut deg_a = a.degrees().to_vec();
    let mut deg_b = b.degrees().to_vec();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }

    // One block per degree: the positions in `a` and the basis of `b` a map
    // may send them to.  Every degree-preserving linear map is a choice of
    // one GL element per block.
    let mut degrees: Vec<u32> = deg_a;
    degrees.dedup();
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = degrees
        .iter()
        .map(|&d| (a.degree_indices(d).to_vec(), b.degree_indices(d).to_vec()))
        .collect();
    let choices: Vec<Vec<Vec<Fv>>> = blocks
        .iter()
        .map(|(pos, _)| f2::general_linear(pos.len()))
        .collect();

    let mut pick = vec![0usize; blocks.len()];
    loop {
        let mut map = vec![0 as Fv; a.dim()];
        for (bi, (pos, targets)) in blocks.iter().enumerate() {
            let gl = &choices[bi][pick[bi]];
            for (row, &p) in gl.iter().zip(pos.iter()) {
                // Re-embed the block-local row into the ambient basis of b.
                let mut img: Fv = 0;
                for k in f2::support(*row) {
                    img |= f2::basis_vec(targets[k]);
                }
                map[p] = img;
            }
        }
        if is_multiplicative(&map, a, b) {
            return true;
        }
        // Odometer over the per-block GL choices.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return false;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn is_multiplicative(map: &[Fv], a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    let apply = |v: Fv| -> Fv {
        let mut out = 0;
        for i in f2::support(v) {
            out ^= map[i];
        }
        out
    };
    if apply(a.unit()) != b.unit() {
        return false;
    }
    for i in 0..a.dim() {
        for j in i..a.dim() {
            if apply(a.mul_basis(i, j)) != b.mul(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

/// A random valid algebra of total rank at most `max_rank`, assembled from
/// the library constructors and then put through a random basis change so
/// its table is not in any normal form.
pub fn random_algebra<R: Rng>(rng: &mut R, max_rank: usize) -> GradedAlgebra {
    let mut current = random_atom(rng, max_rank);
    for _ in 0..rng.gen_range(0..3) {
        let budget = max_rank.saturating_sub(current.dim());
        if budget < 2 {
            break;
        }
        let other = random_atom(rng, budget);
        current = match rng.gen_range(0..4) {
            0 if current.dim() * other.dim() <= max_rank => tensor(&current, &other),
            1 => connected_sum(&current, &other).unwrap_or(current),
            2 => wedge_sum(&current, &other).unwrap_or(current),
            _ => disjoint_union(&current, &other),
        };
    }
    scramble(&current, rng)
}

fn random_atom<R: Rng>(rng: &mut R, max_rank: usize) -> GradedAlgebra {
    let q = rng.gen_range(1..4);
    match rng.gen_range(0..3) {
        0 if max_rank >= 2 => sphere(q),
        1 if max_rank >= 3 => {
            let h = rng.gen_range(2..=(max_rank - 1).min(4)) as u32;
            truncated(h, q)
        }
        _ => {
            if max_rank >= 2 {
                sphere(q)
            } else {
                point()
            }
        }
    }
}

/// Rewrites `a` in a random degree-preserving basis.  The result is
/// isomorphic to `a` by construction.
pub fn scramble<R: Rng>(a: &GradedAlgebra, rng: &mut R) -> GradedAlgebra {
    let n = a.dim();
    let mut fwd = vec![0 as Fv; n];
    for d in a.degrees_present() {
        let idx = a.degree_indices(d).to_vec();
        // Degree 0 is pinned: its basis classes are the component
        // idempotents and the validator expects them verbatim.
        let block = if d == 0 {
            (0..idx.len()).map(f2::basis_vec).collect()
        } else {
            random_invertible(rng, idx.len())
        };
        for (row, &p) in block.iter().zip(idx.iter()) {
            let mut img: Fv = 0;
            for k in f2::support(*row) {
                img |= f2::basis_vec(idx[k]);
            }
            fwd[p] = img;
        }
    }
    let inv = f2::invert(&fwd, n).expect("block-invertible map inverts");
    let mult: Vec<Vec<Fv>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f2::apply(&inv, a.mul(fwd[i], fwd[j])))
                .collect()
        })
        .collect();
    let basis = (0..n).map(|i| format!("g{i}")).collect();
    let unit = f2::apply(&inv, a.unit());
    GradedAlgebra::new(basis, a.degrees().to_vec(), mult, unit)
        .expect("basis change preserves validity")
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Vec<Fv> {
    let mask: Fv = if n >= 64 { !0 } else { (1 << n) - 1 };
    loop {
        let rows: Vec<Fv> = (0..n).map(|_| rng.gen::<u64>() & mask).collect();
        if f2::is_invertible(&rows, n) {
            return rows;
        }
    }
}
