//! The point set P = (F_q² \ {0}) / ⟨i⟩, the group PSL(2,q) acting on it,
//! the extra symmetries φ (Frobenius) and σ, and orbit machinery over
//! permutations of point indices.
//!
//! Points are referred to by dense indices everywhere. A point's index is
//! its position in the list of canonical representatives sorted in the
//! field's lexicographic order.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldParams};

pub type Vector = (FieldElement, FieldElement);

/// A 2×2 matrix `[a, b, c, d]` = `[[a, b], [c, d]]`, not necessarily of
/// determinant 1.
pub type Mat2 = [FieldElement; 4];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    /// Lex-minimal member of {v, −v, iv, −iv}.
    pub rep: Vector,
    pub index: u32,
}

/// A permutation of point indices; `images[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermOnPoints {
    pub images: Vec<u32>,
}

impl PermOnPoints {
    pub fn identity(n: usize) -> Self {
        PermOnPoints { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let p = PermOnPoints { images };
        if !p.is_bijection() {
            return Err(Error::Parse("image list is not a permutation".into()));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for &y in &self.images {
            if y as usize >= n || seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PermOnPoints) -> PermOnPoints {
        PermOnPoints { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> PermOnPoints {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        PermOnPoints { images: inv }
    }

    pub fn pow(&self, k: u32) -> PermOnPoints {
        let mut out = PermOnPoints::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Image of a point set, sorted.
    pub fn apply_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

/// An element of PSL(2,q): a determinant-1 matrix, stored as the
/// lexicographically smaller of {M, −M}.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PslElement {
    pub m: Mat2,
}

pub fn mat_mul(f: &FieldParams, x: &Mat2, y: &Mat2) -> Mat2 {
    let [a, b, c, d] = *x;
    let [e, g, h, k] = *y;
    [
        f.add(f.mul(a, e), f.mul(b, h)),
        f.add(f.mul(a, g), f.mul(b, k)),
        f.add(f.mul(c, e), f.mul(d, h)),
        f.add(f.mul(c, g), f.mul(d, k)),
    ]
}

pub fn mat_det(f: &FieldParams, m: &Mat2) -> FieldElement {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

pub fn mat_inv(f: &FieldParams, m: &Mat2) -> Result<Mat2> {
    let det_inv = f.inv(mat_det(f, m))?;
    Ok([
        f.mul(m[3], det_inv),
        f.mul(f.neg(m[1]), det_inv),
        f.mul(f.neg(m[2]), det_inv),
        f.mul(m[0], det_inv),
    ])
}

pub fn mat_scale(f: &FieldParams, s: FieldElement, m: &Mat2) -> Mat2 {
    [f.mul(s, m[0]), f.mul(s, m[1]), f.mul(s, m[2]), f.mul(s, m[3])]
}

#[inline]
pub fn mat_apply(f: &FieldParams, m: &Mat2, v: Vector) -> Vector {
    (f.add(f.mul(m[0], v.0), f.mul(m[1], v.1)), f.add(f.mul(m[2], v.0), f.mul(m[3], v.1)))
}

fn mat_string(f: &FieldParams, m: &Mat2) -> String {
    format!("[[{},{}],[{},{}]]", f.display(m[0]), f.display(m[1]), f.display(m[2]), f.display(m[3]))
}

impl PslElement {
    pub fn new(f: &FieldParams, m: Mat2) -> Result<Self> {
        if mat_det(f, &m) != f.one() {
            return Err(Error::Determinant(mat_string(f, &m)));
        }
        Ok(Self::canonical(f, m))
    }

    fn canonical(f: &FieldParams, m: Mat2) -> Self {
        let neg = [f.neg(m[0]), f.neg(m[1]), f.neg(m[2]), f.neg(m[3])];
        PslElement { m: m.min(neg) }
    }

    pub fn identity(f: &FieldParams) -> Self {
        Self::canonical(f, [f.one(), f.zero(), f.zero(), f.one()])
    }

    pub fn mul(&self, f: &FieldParams, other: &PslElement) -> PslElement {
        Self::canonical(f, mat_mul(f, &self.m, &other.m))
    }

    pub fn inverse(&self, f: &FieldParams) -> PslElement {
        let [a, b, c, d] = self.m;
        Self::canonical(f, [d, f.neg(b), f.neg(c), a])
    }

    pub fn is_identity(&self, f: &FieldParams) -> bool {
        *self == Self::identity(f)
    }

    /// Order in PSL(2,q), i.e. the least k with M^k = ±I.
    pub fn order(&self, f: &FieldParams) -> u64 {
        let id = Self::identity(f);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(f, self);
            k += 1;
        }
        k
    }

    pub fn to_string(&self, f: &FieldParams) -> String {
        mat_string(f, &self.m)
    }
}

/// |PSL(2,q)| = q(q² − 1)/2 for odd q.
pub fn group_order(q: u64) -> u64 {
    q * (q * q - 1) / 2
}

/// Enumerates PSL(2,q), one canonical matrix per element.
pub fn enumerate_psl(f: &FieldParams) -> Vec<PslElement> {
    let mut out = Vec::with_capacity(group_order(f.q() as u64) as usize);
    let els: Vec<FieldElement> = f.elements().collect();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                if a.is_zero() {
                    // -bc = 1 forces c = -1/b, d free
                    if b.is_zero() || f.mul(b, c) != f.neg(f.one()) {
                        continue;
                    }
                    for &d in &els {
                        push_if_canonical(f, &mut out, [a, b, c, d]);
                    }
                } else {
                    let d = f.div(f.add(f.one(), f.mul(b, c)), a).expect("a is nonzero");
                    push_if_canonical(f, &mut out, [a, b, c, d]);
                }
            }
        }
    }
    out
}

fn push_if_canonical(f: &FieldParams, out: &mut Vec<PslElement>, m: Mat2) {
    let c = PslElement::canonical(f, m);
    if c.m == m {
        out.push(c);
    }
}

/// The 2α root-subgroup transvections [[1, ω^k], [0, 1]] and [[1, 0], [ω^k, 1]].
pub fn psl_generators(f: &FieldParams) -> Vec<PslElement> {
    let (o, z) = (f.one(), f.zero());
    let mut gens = Vec::with_capacity(2 * f.alpha() as usize);
    for k in 0..f.alpha() as u64 {
        gens.push(PslElement::canonical(f, [o, f.omega_pow(k), z, o]));
    }
    for k in 0..f.alpha() as u64 {
        gens.push(PslElement::canonical(f, [o, z, f.omega_pow(k), o]));
    }
    gens
}

/// The six vectors (1,0), (0,1), (1,1), (1+i,1), (i,1), (1,1−i) of the
/// basic octahedron, in that order. Antipodal pairs are (0,5), (1,3), (2,4).
pub fn basic_block_vectors(f: &FieldParams) -> Result<[Vector; 6]> {
    let i = f.fourth_root().map_err(|_| bad_congruence(f.q()))?;
    let (o, z) = (f.one(), f.zero());
    Ok([(o, z), (z, o), (o, o), (f.add(o, i), o), (i, o), (o, f.sub(o, i))])
}

/// Antipodal pairs of the basic octahedron as positions into
/// [`basic_block_vectors`].
pub const BASIC_DIAGONALS: [(usize, usize); 3] = [(0, 5), (1, 3), (2, 4)];

pub(crate) fn bad_congruence(q: u32) -> Error {
    Error::BadCongruence(format!("q = {q} is not 1 mod 4"))
}

/// The points of P with a lookup table from every nonzero vector to its
/// point index.
#[derive(Clone, Debug)]
pub struct PointSet {
    field: FieldParams,
    points: Vec<ProjPoint>,
    /// index of the class of vector (x, y) at x*q + y; u32::MAX at (0, 0)
    lookup: Vec<u32>,
}

impl PointSet {
    /// Enumerates P, sorted by canonical representative.
    pub fn new(f: &FieldParams) -> Result<Self> {
        let i = f.fourth_root().map_err(|_| bad_congruence(f.q()))?;
        let q = f.q() as usize;
        let mut reps = Vec::with_capacity((q * q - 1) / 4);
        for x in f.elements() {
            for y in f.elements() {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                if canonical_rep(f, i, (x, y)) == (x, y) {
                    reps.push((x, y));
                }
            }
        }
        // elements() is increasing, so reps are already sorted
        let mut lookup = vec![u32::MAX; q * q];
        for (idx, &r) in reps.iter().enumerate() {
            let mut v = r;
            for _ in 0..4 {
                lookup[v.0 .0 as usize * q + v.1 .0 as usize] = idx as u32;
                v = (f.mul(i, v.0), f.mul(i, v.1));
            }
        }
        let points = reps.into_iter().enumerate().map(|(k, rep)| ProjPoint { rep, index: k as u32 }).collect();
        Ok(PointSet { field: f.clone(), points, lookup })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, index: u32) -> ProjPoint {
        self.points[index as usize]
    }

    /// Canonical point of a nonzero vector.
    pub fn canonicalize(&self, v: Vector) -> Result<ProjPoint> {
        let idx = self.index_of(v)?;
        Ok(self.points[idx as usize])
    }

    pub fn index_of(&self, v: Vector) -> Result<u32> {
        if v.0.is_zero() && v.1.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.lookup[v.0 .0 as usize * self.field.q() as usize + v.1 .0 as usize])
    }

    /// Index of the point of `m · rep(x)`; `m` must be invertible.
    #[inline]
    pub fn apply_matrix(&self, m: &Mat2, x: u32) -> u32 {
        let v = mat_apply(&self.field, m, self.points[x as usize].rep);
        self.lookup[v.0 .0 as usize * self.field.q() as usize + v.1 .0 as usize]
    }

    pub fn act(&self, g: &PslElement, x: u32) -> u32 {
        self.apply_matrix(&g.m, x)
    }

    /// Permutation induced by an invertible matrix.
    pub fn matrix_perm(&self, m: &Mat2) -> Result<PermOnPoints> {
        if mat_det(&self.field, m).is_zero() {
            return Err(Error::Determinant(mat_string(&self.field, m)));
        }
        Ok(PermOnPoints { images: (0..self.len() as u32).map(|x| self.apply_matrix(m, x)).collect() })
    }

    pub fn psl_perm(&self, g: &PslElement) -> PermOnPoints {
        PermOnPoints { images: (0..self.len() as u32).map(|x| self.act(g, x)).collect() }
    }

    /// Permutations of the 2α transvection generators.
    pub fn psl_generator_perms(&self) -> Vec<PermOnPoints> {
        psl_generators(&self.field).iter().map(|g| self.psl_perm(g)).collect()
    }

    /// Coordinate-wise Frobenius x ↦ x^p on representatives.
    pub fn frobenius_perm(&self) -> PermOnPoints {
        let f = &self.field;
        let images = self
            .points
            .iter()
            .map(|pt| self.index_of((f.frobenius(pt.rep.0), f.frobenius(pt.rep.1))).expect("nonzero"))
            .collect();
        PermOnPoints { images }
    }

    /// Indices of the basic block's six points, in the order of
    /// [`basic_block_vectors`].
    pub fn basic_block_indices(&self) -> Result<[u32; 6]> {
        let vs = basic_block_vectors(&self.field)?;
        let mut out = [0u32; 6];
        for (slot, v) in out.iter_mut().zip(vs) {
            *slot = self.index_of(v)?;
        }
        Ok(out)
    }

    /// The matrix [[i, 1], [0, 1]] realising the quarter turn σ.
    pub fn sigma_matrix(&self) -> Result<Mat2> {
        let f = &self.field;
        let i = f.fourth_root().map_err(|_| bad_congruence(f.q()))?;
        Ok([i, f.one(), f.zero(), f.one()])
    }

    /// σ as a permutation of P, after checking that it is the quarter turn
    /// of the basic octahedron about the axis through (1,0) and (1,1−i) and
    /// that σ² is the half turn g = [[−i, −1+i], [0, i]] of PSL(2,q).
    pub fn sigma_perm(&self) -> Result<PermOnPoints> {
        let f = &self.field;
        let m = self.sigma_matrix()?;
        let sigma = self.matrix_perm(&m)?;
        let t = self.basic_block_indices()?;
        let fail = |what: &str| Error::SymmetryContract(format!("sigma: {what} (q = {})", f.q()));

        let mut block: Vec<u32> = t.to_vec();
        block.sort_unstable();
        if sigma.apply_set(&block) != block {
            return Err(fail("does not fix the basic block"));
        }
        if sigma.apply(t[0]) != t[0] || sigma.apply(t[5]) != t[5] {
            return Err(fail("does not fix the rotation axis"));
        }
        // equator (0,1) -> (1,1) -> (1+i,1) -> (i,1) -> (0,1)
        let equator = [t[1], t[2], t[3], t[4]];
        for k in 0..4 {
            if sigma.apply(equator[k]) != equator[(k + 1) % 4] {
                return Err(fail("does not rotate the equator"));
            }
        }
        let i = f.fourth_root()?;
        let half_turn = PslElement::new(f, [f.neg(i), f.sub(i, f.one()), f.zero(), i])?;
        if sigma.compose(&sigma) != self.psl_perm(&half_turn) {
            return Err(fail("square is not the half turn"));
        }
        Ok(sigma)
    }

    /// Point stabilizer of (1,0): order via orbit-stabilizer plus a check of
    /// the explicit description {[[u, x], [0, u⁻¹]] : u ∈ {1, i}, x ∈ F_q}.
    pub fn point_stabilizer_report(&self) -> Result<PointStabilizerReport> {
        let f = &self.field;
        let q = f.q() as u64;
        let order = group_order(q) / self.len() as u64;
        let i = f.fourth_root()?;
        let base = self.index_of((f.one(), f.zero()))?;
        let mut elems = Vec::with_capacity(2 * q as usize);
        let mut fixes = true;
        for u in [f.one(), i] {
            let u_inv = f.inv(u)?;
            for x in f.elements() {
                let g = PslElement::new(f, [u, x, f.zero(), u_inv])?;
                fixes &= self.act(&g, base) == base;
                elems.push(g);
            }
        }
        elems.sort_unstable();
        elems.dedup();
        let shape_verified = fixes && elems.len() as u64 == 2 * q && order == 2 * q;
        Ok(PointStabilizerReport { order, shape_verified })
    }
}

fn canonical_rep(f: &FieldParams, i: FieldElement, v: Vector) -> Vector {
    let mut best = v;
    let mut cur = v;
    for _ in 0..3 {
        cur = (f.mul(i, cur.0), f.mul(i, cur.1));
        best = best.min(cur);
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PointStabilizerReport {
    pub order: u64,
    pub shape_verified: bool,
}

/// Orbit of one point under a generating set.
pub fn point_orbit(gens: &[PermOnPoints], x: u32) -> Vec<u32> {
    let n = gens.first().map_or(x as usize + 1, |g| g.len());
    let mut seen = vec![false; n];
    let mut out = vec![x];
    seen[x as usize] = true;
    let mut head = 0;
    while head < out.len() {
        let y = out[head];
        head += 1;
        for g in gens {
            let z = g.apply(y);
            if !seen[z as usize] {
                seen[z as usize] = true;
                out.push(z);
            }
        }
    }
    out
}

/// Result of a set-orbit BFS that remembers how each set was reached.
#[derive(Clone, Debug)]
pub struct SetOrbit {
    /// Sorted sets in discovery order; `sets[0]` is the seed.
    pub sets: Vec<Vec<u32>>,
    /// For every set but the seed: (parent set index, generator index)
    /// such that `sets[k] = gens[g](sets[parent])`.
    pub parent: Vec<Option<(u32, u32)>>,
}

/// BFS closure of `{seed}` under the element-wise action of `gens`.
pub fn orbit_of_set_traced(gens: &[PermOnPoints], seed: &[u32]) -> SetOrbit {
    let mut first: Vec<u32> = seed.to_vec();
    first.sort_unstable();
    first.dedup();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    index.insert(first.clone(), 0);
    let mut orbit = SetOrbit { sets: vec![first], parent: vec![None] };
    let mut queue = VecDeque::from([0u32]);
    while let Some(k) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let image = g.apply_set(&orbit.sets[k as usize]);
            if !index.contains_key(&image) {
                let id = orbit.sets.len() as u32;
                index.insert(image.clone(), id);
                orbit.sets.push(image);
                orbit.parent.push(Some((k, gi as u32)));
                queue.push_back(id);
            }
        }
    }
    orbit
}

pub fn orbit_of_set(gens: &[PermOnPoints], seed: &[u32]) -> Vec<Vec<u32>> {
    orbit_of_set_traced(gens, seed).sets
}

fn pair_key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// BFS in the Schreier graph of unordered pairs. Returns a word
/// (generator indices, applied left to right) carrying `from` to `to`.
pub fn pair_transport_word(gens: &[PermOnPoints], from: (u32, u32), to: (u32, u32)) -> Option<Vec<usize>> {
    let start = pair_key(from.0, from.1);
    let goal = pair_key(to.0, to.1);
    let mut parent: HashMap<(u32, u32), Option<((u32, u32), usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            let mut word = Vec::new();
            let mut node = cur;
            while let Some(Some((prev, g))) = parent.get(&node) {
                word.push(*g);
                node = *prev;
            }
            word.reverse();
            return Some(word);
        }
        for (gi, g) in gens.iter().enumerate() {
            let next = pair_key(g.apply(cur.0), g.apply(cur.1));
            parent.entry(next).or_insert_with(|| {
                queue.push_back(next);
                Some((cur, gi))
            });
        }
    }
    None
}

/// Inverse coset representatives of a transitive group: for every point
/// x, a group element t_x with t_x(base) = x, stored as the inverse
/// permutation t_x⁻¹.
#[derive(Clone, Debug)]
pub struct Transversal {
    n: usize,
    base: u32,
    inv: Vec<u32>,
}

impl Transversal {
    /// `None` if the group generated by `gens` is not transitive.
    pub fn new(gens: &[PermOnPoints], base: u32) -> Option<Self> {
        let n = gens.first()?.len();
        let orbit = point_orbit(gens, base);
        if orbit.len() != n {
            return None;
        }
        let inv_gens: Vec<PermOnPoints> = gens.iter().map(|g| g.inverse()).collect();
        let mut inv = vec![0u32; n * n];
        let mut done = vec![false; n];
        inv[base as usize * n..(base as usize + 1) * n].copy_from_slice(&PermOnPoints::identity(n).images);
        done[base as usize] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for (g, g_inv) in gens.iter().zip(&inv_gens) {
                let y = g.apply(x);
                if done[y as usize] {
                    continue;
                }
                done[y as usize] = true;
                // t_y = g t_x, so t_y⁻¹ = t_x⁻¹ g⁻¹
                for z in 0..n {
                    inv[y as usize * n + z] = inv[x as usize * n + g_inv.images[z] as usize];
                }
                queue.push_back(y);
            }
        }
        Some(Transversal { n, base, inv })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// t_x⁻¹ as an image slice.
    #[inline]
    pub fn inverse_of(&self, x: u32) -> &[u32] {
        &self.inv[x as usize * self.n..(x as usize + 1) * self.n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(q: u64) -> PointSet {
        PointSet::new(&FieldParams::for_order(q).unwrap()).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(pts(5).len(), 6);
        assert_eq!(pts(9).len(), 20);
        assert_eq!(pts(13).len(), 42);
        assert!(matches!(PointSet::new(&FieldParams::new(7, 1).unwrap()), Err(Error::BadCongruence(_))));
    }

    #[test]
    fn canonicalize_in_f5() {
        let p = pts(5);
        let f = p.field().clone();
        let v = (FieldElement(1), FieldElement(3));
        // class {(1,3),(4,2),(2,1),(3,4)} by scaling with i = 2
        for w in [(1, 3), (4, 2), (2, 1), (3, 4)] {
            let pt = p.canonicalize((FieldElement(w.0), FieldElement(w.1))).unwrap();
            assert_eq!(pt.rep, v);
        }
        assert_eq!(p.canonicalize((f.zero(), f.zero())), Err(Error::ZeroVector));
    }

    #[test]
    fn canonicalize_is_idempotent_and_class_member() {
        for q in [9, 13, 25] {
            let p = pts(q);
            let f = p.field().clone();
            let i = f.i_elem().unwrap();
            for x in f.elements() {
                for y in f.elements().step_by(2) {
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    let c = p.canonicalize((x, y)).unwrap();
                    assert_eq!(p.canonicalize(c.rep).unwrap(), c);
                    let class: Vec<Vector> = (0..4u64)
                        .map(|k| (f.mul(f.pow(i, k), x), f.mul(f.pow(i, k), y)))
                        .collect();
                    assert!(class.contains(&c.rep));
                    assert_eq!(c.rep, *class.iter().min().unwrap());
                }
            }
        }
    }

    #[test]
    fn generators_and_transitivity() {
        let f13 = FieldParams::new(13, 1).unwrap();
        let g = psl_generators(&f13);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].m, [FieldElement(1), FieldElement(1), FieldElement(0), FieldElement(1)]);
        assert_eq!(g[1].m, [FieldElement(1), FieldElement(0), FieldElement(1), FieldElement(1)]);
        assert_eq!(psl_generators(&FieldParams::new(3, 2).unwrap()).len(), 4);
        for q in [5, 9, 13, 17, 25, 49] {
            let p = pts(q);
            let gens = p.psl_generator_perms();
            assert_eq!(point_orbit(&gens, 0).len(), p.len(), "q = {q}");
            let x = p.index_of((p.field().one(), p.field().zero())).unwrap();
            assert_eq!(point_orbit(&gens, x).len(), (q as usize * q as usize - 1) / 4);
        }
    }

    #[test]
    fn act_examples() {
        let p = pts(13);
        let f = p.field().clone();
        let id = PslElement::identity(&f);
        for x in 0..p.len() as u32 {
            assert_eq!(p.act(&id, x), x);
        }
        let t = psl_generators(&f)[0];
        let y = p.index_of((f.zero(), f.one())).unwrap();
        assert_eq!(p.act(&t, y), p.index_of((f.one(), f.one())).unwrap());
    }

    #[test]
    fn action_inverse_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [9u64, 13, 25] {
            let p = pts(q);
            let f = p.field().clone();
            let all = enumerate_psl(&f);
            for _ in 0..100 {
                let g = all[rng.gen_range(0..all.len())];
                let x = rng.gen_range(0..p.len() as u32);
                assert_eq!(p.act(&g, p.act(&g.inverse(&f), x)), x);
            }
        }
    }

    #[test]
    fn enumerate_and_order() {
        for q in [5u64, 9, 13] {
            let f = FieldParams::for_order(q).unwrap();
            let all = enumerate_psl(&f);
            assert_eq!(all.len() as u64, group_order(q));
            let mut sorted = all.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
        assert_eq!(group_order(9), 360);
        assert_eq!(group_order(13), 1092);
        assert_eq!(group_order(5), 60);
    }

    #[test]
    fn point_stabilizer() {
        for (q, want) in [(9, 18), (13, 26), (5, 10), (25, 50)] {
            let r = pts(q).point_stabilizer_report().unwrap();
            assert_eq!(r.order, want);
            assert!(r.shape_verified);
        }
    }

    #[test]
    fn frobenius_properties() {
        assert!(pts(13).frobenius_perm().is_identity());
        assert!(pts(17).frobenius_perm().is_identity());
        let p9 = pts(9);
        let phi = p9.frobenius_perm();
        assert!(phi.is_bijection());
        assert_eq!(2 % phi.order(), 0);
        for q in [25u64, 81, 125] {
            let p = pts(q);
            let phi = p.frobenius_perm();
            assert!(phi.pow(p.field().alpha()).is_identity());
        }
    }

    #[test]
    fn sigma_contract() {
        for q in [5u64, 9, 13, 17, 25, 29, 49, 81] {
            let p = pts(q);
            let sigma = p.sigma_perm().unwrap();
            let t = p.basic_block_indices().unwrap();
            let mut block = t.to_vec();
            block.sort_unstable();
            assert_eq!(sigma.apply_set(&block), block);
            assert_eq!(sigma.apply(t[0]), t[0]);
            let s4 = sigma.pow(4);
            for &x in &t {
                assert_eq!(s4.apply(x), x);
            }
        }
    }

    #[test]
    fn sigma_normalises_psl() {
        for q in [9u64, 13, 25] {
            let p = pts(q);
            let f = p.field().clone();
            let m = p.sigma_matrix().unwrap();
            let m_inv = mat_inv(&f, &m).unwrap();
            let sigma = p.sigma_perm().unwrap();
            let sigma_inv = sigma.inverse();
            for g in psl_generators(&f) {
                let conj = mat_mul(&f, &mat_mul(&f, &m, &g.m), &m_inv);
                let h = PslElement::new(&f, conj).unwrap();
                let lhs = sigma.compose(&p.psl_perm(&g)).compose(&sigma_inv);
                assert_eq!(lhs, p.psl_perm(&h));
            }
        }
    }

    #[test]
    fn set_orbit_sizes() {
        for (q, blocks) in [(5u64, 1usize), (9, 30), (13, 91)] {
            let p = pts(q);
            let gens = p.psl_generator_perms();
            let seed = p.basic_block_indices().unwrap();
            let orbit = orbit_of_set_traced(&gens, &seed);
            assert_eq!(orbit.sets.len(), blocks);
            for (k, parent) in orbit.parent.iter().enumerate().skip(1) {
                let (par, g) = parent.unwrap();
                assert_eq!(gens[g as usize].apply_set(&orbit.sets[par as usize]), orbit.sets[k]);
            }
        }
    }

    #[test]
    fn perm_basics() {
        let p = PermOnPoints::from_images(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.pow(6).is_identity());
        assert!(PermOnPoints::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn transversal_maps_base() {
        let p = pts(13);
        let gens = p.psl_generator_perms();
        let t = Transversal::new(&gens, 0).unwrap();
        for x in 0..p.len() as u32 {
            // t_x⁻¹ sends x back to the base
            assert_eq!(t.inverse_of(x)[x as usize], 0);
        }
        let trivial = vec![PermOnPoints::identity(4)];
        assert!(Transversal::new(&trivial, 0).is_none());
    }
}
