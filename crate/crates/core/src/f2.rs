//! Exact linear algebra over the field with two elements.
//!
//! Two representations are provided:
//!
//! * narrow vectors packed into a single `u64` (`Fv`), used for algebra
//!   multiplication tables whose basis has at most 64 elements, and
//! * wide bit vectors (`BitVec`) of arbitrary length, used for the monomial
//!   spaces that appear while computing quotients of polynomial rings.
//!
//! All rank / kernel / span computations are plain Gaussian elimination;
//! everything here is exact.

/// A vector over F2 with at most 64 coordinates, packed into a `u64`.
pub type Fv = u64;

/// Returns the standard basis vector `e_i`.
#[inline]
pub fn basis_vec(i: usize) -> Fv {
    1u64 << i
}

/// Iterator over the set bits (coordinates equal to 1) of a vector.
pub fn support(v: Fv) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| v >> i & 1 == 1)
}

/// Row-echelon accumulator for narrow vectors.
///
/// Rows are kept fully reduced (reduced row echelon form), each with an
/// optional "tag": a second vector recording which original generators were
/// combined to produce the row.  Tags let callers express a reduced vector
/// as an explicit combination of the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// `(pivot, row, tag)` triples, sorted by pivot.
    rows: Vec<(u32, Fv, Fv)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the accumulated rows, returning the residue and
    /// the tag combination used.
    pub fn reduce(&self, mut v: Fv) -> (Fv, Fv) {
        let mut tag = 0;
        for &(p, row, t) in &self.rows {
            if v >> p & 1 == 1 {
                v ^= row;
                tag ^= t;
            }
        }
        (v, tag)
    }

    /// Returns true iff `v` lies in the accumulated span.
    pub fn contains(&self, v: Fv) -> bool {
        self.reduce(v).0 == 0
    }

    /// Inserts `v` with tag `tag`; returns `true` when the rank grew.
    pub fn insert_tagged(&mut self, v: Fv, tag: Fv) -> bool {
        let (mut v, mut tag2) = self.reduce(v);
        tag2 ^= tag;
        if v == 0 {
            return false;
        }
        let p = v.trailing_zeros();
        // Back-substitute into existing rows to stay fully reduced.
        for row in &mut self.rows {
            if row.1 >> p & 1 == 1 {
                row.1 ^= v;
                row.2 ^= tag2;
            }
        }
        self.rows.push((p, v, tag2));
        self.rows.sort_unstable_by_key(|r| r.0);
        let _ = &mut v;
        true
    }

    pub fn insert(&mut self, v: Fv) -> bool {
        self.insert_tagged(v, 0)
    }

    /// The accumulated span as reduced rows.
    pub fn basis(&self) -> impl Iterator<Item = Fv> + '_ {
        self.rows.iter().map(|r| r.1)
    }
}

/// Rank of a set of narrow vectors.
pub fn rank(vectors: &[Fv]) -> usize {
    let mut e = Echelon::new();
    for &v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel basis of the linear map sending `e_i` to `rows[i]`
/// (i.e. solutions `x` of `sum_i x_i rows[i] = 0`), `n` = number of rows.
pub fn kernel(rows: &[Fv]) -> Vec<Fv> {
    let mut e = Echelon::new();
    let mut ker = Vec::new();
    for (i, &v) in rows.iter().enumerate() {
        let (res, tag) = e.reduce(v);
        if res == 0 {
            ker.push(tag | basis_vec(i));
        } else {
            e.insert_tagged(v, basis_vec(i));
        }
    }
    ker
}

/// Applies a linear map given by rows (`e_i -> rows[i]`) to `v`.
#[inline]
pub fn apply(rows: &[Fv], v: Fv) -> Fv {
    let mut out = 0;
    let mut v = v;
    while v != 0 {
        let i = v.trailing_zeros() as usize;
        v &= v - 1;
        out ^= rows[i];
    }
    out
}

/// Returns true iff the `n x n` matrix with the given rows is invertible.
pub fn is_invertible(rows: &[Fv], n: usize) -> bool {
    rank(rows) == n
}

/// Inverts the linear map `e_i -> rows[i]` restricted to `n` coordinates.
/// Returns `None` when the map is singular.
pub fn invert(rows: &[Fv], n: usize) -> Option<Vec<Fv>> {
    // Gauss-Jordan on [M | I].
    let mut m: Vec<(Fv, Fv)> = rows
        .iter()
        .take(n)
        .enumerate()
        .map(|(i, &r)| (r, basis_vec(i)))
        .collect();
    let mut inv = vec![0u64; n];
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r].0 >> col & 1 == 1)?;
        m.swap(col, pivot);
        let (prow, pinv) = m[col];
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row.0 >> col & 1 == 1 {
                row.0 ^= prow;
                row.1 ^= pinv;
            }
        }
    }
    for col in 0..n {
        inv[col] = m[col].1;
    }
    // `inv` now satisfies inv . M = I with rows as columns convention; for
    // the row-action convention used throughout (apply), this is exactly the
    // inverse map: apply(&inv, apply(rows, v)) == v.
    Some(inv)
}

/// All invertible `n x n` matrices over F2, as row vectors.  Intended for
/// small `n` (the piecewise isomorphism search never needs `n > 4`).
pub fn general_linear(n: usize) -> Vec<Vec<Fv>> {
    assert!(n <= 4, "general_linear is only meant for tiny dimensions");
    let mut out = Vec::new();
    let total = 1u64 << (n * n);
    let mask = (1u64 << n) - 1;
    let mut rows = vec![0u64; n];
    for code in 0..total {
        for (i, r) in rows.iter_mut().enumerate() {
            *r = code >> (i * n) & mask;
        }
        if is_invertible(&rows, n) {
            out.push(rows.clone());
        }
    }
    out
}

/// A bit vector of arbitrary width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(width: usize) -> Self {
        Self {
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn unit(width: usize, i: usize) -> Self {
        let mut v = Self::zeros(width);
        v.set(i, true);
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest_set(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |i| w >> i & 1 == 1)
                .map(move |i| k * 64 + i)
        })
    }
}

/// Row-echelon accumulator for wide vectors, with tags over a second
/// (generator-index) space.  Used to compute graded quotients of monomial
/// spaces by relation spans and to express monomials in a chosen basis.
#[derive(Clone, Debug)]
pub struct WideEchelon {
    rows: Vec<(usize, BitVec, BitVec)>,
    tag_width: usize,
}

impl WideEchelon {
    pub fn new(tag_width: usize) -> Self {
        Self {
            rows: Vec::new(),
            tag_width,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut tag = BitVec::zeros(self.tag_width);
        for (p, row, t) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        (v, tag)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert_tagged(&mut self, v: &BitVec, tag: &BitVec) -> bool {
        let (v, mut t) = self.reduce(v);
        t.xor_assign(tag);
        if v.is_zero() {
            return false;
        }
        let p = v.lowest_set().unwrap();
        for (_, row, rt) in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
                rt.xor_assign(&t);
            }
        }
        self.rows.push((p, v, t));
        self.rows.sort_unstable_by_key(|r| r.0);
        true
    }

    pub fn insert(&mut self, v: &BitVec) -> bool {
        let tag = BitVec::zeros(self.tag_width);
        self.insert_tagged(&v.clone(), &tag)
    }

    /// Pivot columns of the accumulated span, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }
}
