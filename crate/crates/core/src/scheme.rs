//! Pair colorings of P × P, coherent configurations and their
//! intersection numbers.
//!
//! Colors are always numbered canonically: in order of first occurrence
//! when the n × n matrix is read row by row. Two colorings with the same
//! partition therefore have identical color arrays.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::Design;
use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::pgroup::{PermOnPoints, PointSet};

/// Colorings with more points than this get sampled tensor checks by default.
pub const FULL_CHECK_MAX_POINTS: usize = 702;

/// Largest tensor (rank³ entries) we are willing to allocate.
const MAX_TENSOR_ENTRIES: usize = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairColoring {
    n: usize,
    colors: Vec<u32>,
    num_colors: u32,
}

impl PairColoring {
    /// Builds a coloring from any row-major labelling, renumbering colors
    /// canonically.
    pub fn new(n: usize, labels: &[u32]) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::Parse(format!("expected {} entries, got {}", n * n, labels.len())));
        }
        let mut map: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut colors = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = map.len() as u32;
            colors.push(*map.entry(l).or_insert(next));
        }
        Ok(PairColoring { n, num_colors: map.len() as u32, colors })
    }

    /// Wraps labels already in canonical order.
    pub(crate) fn from_canonical(n: usize, colors: Vec<u32>, num_colors: u32) -> Self {
        debug_assert!(is_canonical(&colors));
        PairColoring { n, colors, num_colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.colors[x as usize * self.n + y as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn row(&self, x: u32) -> &[u32] {
        &self.colors[x as usize * self.n..(x as usize + 1) * self.n]
    }

    /// True if equal colors here imply equal colors in `coarser`.
    pub fn refines(&self, coarser: &PairColoring) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let mut image = vec![u32::MAX; self.num_colors as usize];
        for (&a, &b) in self.colors.iter().zip(&coarser.colors) {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Number of pairs of each color.
    pub fn color_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.num_colors as usize];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// True if every generator maps pairs of color c to pairs of color c.
    pub fn is_invariant_under(&self, gens: &[PermOnPoints]) -> bool {
        let n = self.n;
        gens.iter().all(|g| {
            g.len() == n
                && (0..n as u32).into_par_iter().all(|x| {
                    let gx = g.apply(x);
                    (0..n as u32).all(|y| self.get(x, y) == self.get(gx, g.apply(y)))
                })
        })
    }

    /// Writes `n rank` then the color matrix one row per line.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.num_colors)?;
        let mut line = String::new();
        for x in 0..self.n as u32 {
            line.clear();
            for (k, c) in self.row(x).iter().enumerate() {
                if k > 0 {
                    line.push(' ');
                }
                line.push_str(&c.to_string());
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Parses the format of [`Self::write_to`]. Labels need not be
    /// canonical; the header rank must match the number of distinct labels.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))));
        let n = tokens.next().ok_or_else(|| Error::Parse("empty scheme file".into()))?? as usize;
        let rank = tokens.next().ok_or_else(|| Error::Parse("missing rank".into()))??;
        let labels: Vec<u32> = tokens.collect::<Result<_>>()?;
        let c = PairColoring::new(n, &labels)?;
        if c.num_colors != rank {
            return Err(Error::Parse(format!("header rank {rank} but {} distinct colors", c.num_colors)));
        }
        Ok(c)
    }
}

fn is_canonical(colors: &[u32]) -> bool {
    let mut next = 0u32;
    for &c in colors {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

/// Colors = orbits of ⟨gens⟩ on ordered pairs, by union-find over the n²
/// cells.
pub fn orbital_coloring(gens: &[PermOnPoints], n: usize) -> PairColoring {
    let mut dsu = DisjointSet::new(n * n);
    for g in gens {
        assert_eq!(g.len(), n, "generator acts on the wrong number of points");
        for x in 0..n {
            let gx = g.images[x] as usize * n;
            for y in 0..n {
                dsu.union((x * n + y) as u32, (gx + g.images[y] as usize) as u32);
            }
        }
    }
    let (colors, num_colors) = dsu.canonical_labels();
    PairColoring::from_canonical(n, colors, num_colors)
}

/// Generators of PΣL(2,q) × ⟨σ⟩ acting on P.
pub fn full_group_generators(points: &PointSet) -> Result<Vec<PermOnPoints>> {
    let mut gens = points.psl_generator_perms();
    gens.push(points.frobenius_perm());
    gens.push(points.sigma_perm()?);
    Ok(gens)
}

/// Orbital coloring of PΣL(2,q) × ⟨σ⟩.
pub fn full_group_coloring(points: &PointSet) -> Result<PairColoring> {
    Ok(orbital_coloring(&full_group_generators(points)?, points.len()))
}

/// How many representatives per color are recounted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CheckMode {
    /// one representative plus five recounts
    Full,
    /// one representative plus one recount
    Sampled,
    /// every pair of every color
    Exhaustive,
}

impl CheckMode {
    /// Full up to [`FULL_CHECK_MAX_POINTS`], sampled beyond.
    pub fn auto(n: usize) -> Self {
        if n <= FULL_CHECK_MAX_POINTS {
            CheckMode::Full
        } else {
            CheckMode::Sampled
        }
    }

    fn reps(self) -> Option<u64> {
        match self {
            CheckMode::Full => Some(6),
            CheckMode::Sampled => Some(2),
            CheckMode::Exhaustive => None,
        }
    }
}

/// Intersection numbers p_ij^k stored densely, index (i·r + j)·r + k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    data: Vec<u32>,
}

impl Tensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, i: u32, j: u32, k: u32) -> u32 {
        let r = self.rank;
        self.data[(i as usize * r + j as usize) * r + k as usize]
    }

    /// Nonzero entries as (i, j, k, p).
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32, u32, u32)> + '_ {
        let r = self.rank;
        self.data.iter().enumerate().filter(|(_, &p)| p != 0).map(move |(idx, &p)| {
            ((idx / (r * r)) as u32, ((idx / r) % r) as u32, (idx % r) as u32, p)
        })
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        for (i, j, k, p) in self.nonzero() {
            writeln!(w, "{i} {j} {k} {p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CoherentConfig {
    pub coloring: PairColoring,
    pub diagonal_colors: BTreeSet<u32>,
    /// color of (y, x) as a function of the color of (x, y)
    pub transpose_map: Vec<u32>,
    /// out-degree of each color, when the configuration is homogeneous
    pub valencies: Option<Vec<u32>>,
    pub tensor: Option<Tensor>,
}

impl CoherentConfig {
    pub fn rank(&self) -> u32 {
        self.coloring.num_colors()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal_colors.len() == 1
    }

    /// Rank minus the number of diagonal colors.
    pub fn classes(&self) -> u32 {
        self.rank() - self.diagonal_colors.len() as u32
    }

    pub fn tensor(&self) -> Option<&Tensor> {
        self.tensor.as_ref()
    }
}

fn not_coherent(color: u32, detail: impl Into<String>) -> Error {
    Error::NotCoherent { color, detail: detail.into() }
}

/// Checks the coherent-configuration axioms on `c` and computes its
/// intersection numbers, recounting them on several representatives per
/// color.
pub fn intersection_tensor(c: &PairColoring, mode: CheckMode) -> Result<CoherentConfig> {
    let n = c.n();
    let r = c.num_colors() as usize;

    let mut diagonal_colors = BTreeSet::new();
    for x in 0..n as u32 {
        diagonal_colors.insert(c.get(x, x));
    }
    let mut transpose_map = vec![u32::MAX; r];
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let a = c.get(x, y);
            if x != y && diagonal_colors.contains(&a) {
                return Err(not_coherent(a, format!("diagonal color on off-diagonal pair ({x},{y})")));
            }
            let t = c.get(y, x);
            let slot = &mut transpose_map[a as usize];
            if *slot == u32::MAX {
                *slot = t;
            } else if *slot != t {
                return Err(not_coherent(a, format!("transpose not a function at ({x},{y})")));
            }
        }
    }

    let valencies = if diagonal_colors.len() == 1 {
        let mut first = vec![0u32; r];
        for &a in c.row(0) {
            first[a as usize] += 1;
        }
        for x in 1..n as u32 {
            let mut row = vec![0u32; r];
            for &a in c.row(x) {
                row[a as usize] += 1;
            }
            if row != first {
                let k = (0..r).find(|&k| row[k] != first[k]).unwrap_or(0) as u32;
                return Err(not_coherent(k, format!("valency differs between rows 0 and {x}")));
            }
        }
        Some(first)
    } else {
        None
    };

    if r.checked_pow(3).is_none_or(|e| e > MAX_TENSOR_ENTRIES) {
        return Err(Error::TooLarge(r as u64));
    }

    // representatives: occurrences of each color picked at evenly spaced ranks
    let sizes = c.color_sizes();
    let mut targets: Vec<Vec<u64>> = sizes
        .iter()
        .map(|&s| match mode.reps() {
            None => (0..s).collect(),
            Some(m) => {
                let mut t: Vec<u64> = (0..m.min(s)).map(|j| j * s / m.min(s)).collect();
                t.dedup();
                t
            }
        })
        .collect();
    let mut reps: Vec<Vec<(u32, u32)>> = vec![Vec::new(); r];
    let mut seen = vec![0u64; r];
    let mut cursor = vec![0usize; r];
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let k = c.get(x, y) as usize;
            if cursor[k] < targets[k].len() && targets[k][cursor[k]] == seen[k] {
                reps[k].push((x, y));
                cursor[k] += 1;
            }
            seen[k] += 1;
        }
    }
    targets.clear();

    let count_for = |(x, z): (u32, u32)| -> Vec<u32> {
        let mut counts = vec![0u32; r * r];
        for y in 0..n as u32 {
            counts[c.get(x, y) as usize * r + c.get(y, z) as usize] += 1;
        }
        counts
    };

    let per_color: Vec<Vec<u32>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let first = count_for(reps[k][0]);
            for &rep in &reps[k][1..] {
                let other = count_for(rep);
                if other != first {
                    return Err(not_coherent(
                        k as u32,
                        format!("p_ij^k differs between {:?} and {:?}", reps[k][0], rep),
                    ));
                }
            }
            Ok(first)
        })
        .collect::<Result<_>>()?;

    let mut data = vec![0u32; r * r * r];
    for (k, counts) in per_color.iter().enumerate() {
        for (ij, &p) in counts.iter().enumerate() {
            data[ij * r + k] = p;
        }
    }

    Ok(CoherentConfig {
        coloring: c.clone(),
        diagonal_colors,
        transpose_map,
        valencies,
        tensor: Some(Tensor { rank: r, data }),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeProps {
    pub homogeneous: bool,
    pub symmetric: bool,
    pub commutative: bool,
    pub rank: u32,
    pub classes: u32,
}

pub fn check_props(cc: &CoherentConfig) -> SchemeProps {
    let symmetric = cc.transpose_map.iter().enumerate().all(|(a, &t)| a as u32 == t);
    let commutative = match &cc.tensor {
        Some(t) => {
            let r = t.rank as u32;
            (0..r).all(|i| (i + 1..r).all(|j| (0..r).all(|k| t.get(i, j, k) == t.get(j, i, k))))
        }
        None => false,
    };
    SchemeProps {
        homogeneous: cc.is_homogeneous(),
        symmetric,
        commutative,
        rank: cc.rank(),
        classes: cc.classes(),
    }
}

/// λ per color; an error if some color class sees two values of λ.
pub fn gpbibd_check(d: &Design, c: &PairColoring) -> Result<BTreeMap<u32, u32>> {
    if c.n() != d.num_points() {
        return Err(Error::mismatch("points of coloring", d.num_points() as u64, c.n() as u64));
    }
    let n = c.n();
    let lambda = d.lambda_matrix();
    let mut seen: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); c.num_colors() as usize];
    for (cell, &col) in c.colors().iter().enumerate() {
        let set = &mut seen[col as usize];
        if set.len() < 2 {
            set.insert(lambda[cell]);
        }
    }
    let mut out = BTreeMap::new();
    for (col, set) in seen.iter().enumerate() {
        if set.len() != 1 {
            return Err(Error::NotEquitable { color: col as u32, seen: set.iter().copied().collect() });
        }
        out.insert(col as u32, *set.iter().next().unwrap());
    }
    // inverse relations carry equal λ
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let (a, b) = (c.get(x, y), c.get(y, x));
            if out[&a] != out[&b] {
                return Err(Error::NotEquitable { color: a, seen: vec![out[&a], out[&b]] });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgReport {
    /// the color used as adjacency
    pub relation: u32,
    /// colors of distance 0, 1, 2, 3
    pub distance_colors: Vec<u32>,
    /// {b0, b1, b2; c1, c2, c3}
    pub intersection_array: [u32; 6],
    pub valency: u32,
    pub antipodal: bool,
    /// size of an antipodal class, 1 + k₃
    pub antipodal_class_size: u32,
    /// n / antipodal class size
    pub cover_of: u32,
}

/// Looks for a relation of a symmetric homogeneous 3-class scheme whose
/// graph has diameter 3 with distance classes equal to the scheme
/// classes.
pub fn drg_analysis(cc: &CoherentConfig) -> Option<DrgReport> {
    let props = check_props(cc);
    if !props.homogeneous || !props.symmetric || props.classes != 3 {
        return None;
    }
    let tensor = cc.tensor.as_ref()?;
    let c = &cc.coloring;
    let n = c.n();
    let identity = *cc.diagonal_colors.iter().next()?;

    for rel in 0..cc.rank() {
        if rel == identity {
            continue;
        }
        let adj: Vec<Vec<u32>> =
            (0..n as u32).map(|x| (0..n as u32).filter(|&y| c.get(x, y) == rel).collect()).collect();
        // distance from every vertex; distance d must select exactly one color
        let per_source: Option<Vec<Vec<(u32, u32)>>> = (0..n as u32)
            .into_par_iter()
            .map(|s| {
                let mut dist = vec![u32::MAX; n];
                dist[s as usize] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    for &y in &adj[x as usize] {
                        if dist[y as usize] == u32::MAX {
                            dist[y as usize] = dist[x as usize] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                let mut pairs: Vec<(u32, u32)> = (0..n as u32).map(|y| (dist[y as usize], c.get(s, y))).collect();
                pairs.sort_unstable();
                pairs.dedup();
                Some(pairs)
            })
            .collect();
        let mut pairs: Vec<(u32, u32)> = per_source?.into_iter().flatten().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let distances: BTreeSet<u32> = pairs.iter().map(|p| p.0).collect();
        let colors: BTreeSet<u32> = pairs.iter().map(|p| p.1).collect();
        let metric = pairs.len() == 4 && distances.len() == 4 && colors.len() == 4 && !distances.contains(&u32::MAX);
        if !metric {
            continue;
        }
        let dc: Vec<u32> = pairs.iter().map(|p| p.1).collect();
        debug_assert_eq!(dc[1], rel);
        // b_i = p^{D_i}_{D_{i+1}, R}, c_i = p^{D_i}_{D_{i-1}, R}
        let b = |i: usize| tensor.get(dc[i + 1], rel, dc[i]);
        let cc_ = |i: usize| tensor.get(dc[i - 1], rel, dc[i]);
        let intersection_array = [b(0), b(1), b(2), cc_(1), cc_(2), cc_(3)];

        // {x} ∪ Γ₃(x) must be an equivalence class for every x
        let far = dc[3];
        let class_of = |x: u32| -> Vec<u32> {
            let mut v: Vec<u32> = (0..n as u32).filter(|&y| y == x || c.get(x, y) == far).collect();
            v.sort_unstable();
            v
        };
        let antipodal = (0..n as u32).into_par_iter().all(|x| {
            let cls = class_of(x);
            cls.iter().all(|&y| class_of(y) == cls)
        });
        let k3 = cc.valencies.as_ref().map_or(0, |v| v[far as usize]);
        let class_size = 1 + k3;
        return Some(DrgReport {
            relation: rel,
            distance_colors: dc.clone(),
            intersection_array,
            valency: b(0),
            antipodal,
            antipodal_class_size: class_size,
            cover_of: n as u32 / class_size,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;

    fn points(q: u64) -> PointSet {
        PointSet::new(&FieldParams::for_order(q).unwrap()).unwrap()
    }

    fn psl_scheme(q: u64) -> PairColoring {
        let p = points(q);
        orbital_coloring(&p.psl_generator_perms(), p.len())
    }

    #[test]
    fn psl_orbital_ranks() {
        assert_eq!(psl_scheme(13).num_colors(), 6);
        assert_eq!(psl_scheme(9).num_colors(), 4);
        for q in [5u64, 17, 25, 29] {
            assert_eq!(psl_scheme(q).num_colors() as u64, (q - 3) / 2 + 1);
        }
    }

    #[test]
    fn trivial_group_gives_discrete_coloring() {
        let c = orbital_coloring(&[PermOnPoints::identity(5)], 5);
        assert_eq!(c.num_colors(), 25);
        let cc = intersection_tensor(&c, CheckMode::Exhaustive).unwrap();
        assert_eq!(cc.diagonal_colors.len(), 5);
        assert!(!cc.is_homogeneous());
    }

    #[test]
    fn full_group_classes() {
        for (q, classes) in [(13u64, 5u32), (25, 7), (9, 3)] {
            let c = full_group_coloring(&points(q)).unwrap();
            assert_eq!(c.num_colors() - 1, classes, "q = {q}");
        }
    }

    #[test]
    fn canonical_numbering() {
        let c = PairColoring::new(2, &[7, 3, 3, 7]).unwrap();
        assert_eq!(c.colors(), &[0, 1, 1, 0]);
        assert_eq!(c.num_colors(), 2);
        assert!(PairColoring::new(2, &[0, 1, 2]).is_err());
    }

    #[test]
    fn tensor_axioms_on_q9() {
        let c = psl_scheme(9);
        let cc = intersection_tensor(&c, CheckMode::Exhaustive).unwrap();
        let t = cc.tensor().unwrap();
        let val = cc.valencies.as_ref().unwrap();
        let r = cc.rank();
        let id = 0;
        for i in 0..r {
            for j in 0..r {
                let want = if j == cc.transpose_map[i as usize] { val[i as usize] } else { 0 };
                assert_eq!(t.get(i, j, id), want);
            }
            for k in 0..r {
                let s: u32 = (0..r).map(|j| t.get(i, j, k)).sum();
                assert_eq!(s, val[i as usize]);
            }
        }
        let props = check_props(&cc);
        assert!(props.homogeneous);
        assert_eq!(props.classes, 3);
    }

    #[test]
    fn incoherent_coloring_is_rejected() {
        // path on 4 vertices colored by adjacency only is not coherent
        let adj = |x: u32, y: u32| if x == y { 0 } else if x.abs_diff(y) == 1 { 1 } else { 2 };
        let labels: Vec<u32> = (0..4).flat_map(|x| (0..4).map(move |y| adj(x, y))).collect();
        let c = PairColoring::new(4, &labels).unwrap();
        assert!(matches!(intersection_tensor(&c, CheckMode::Exhaustive), Err(Error::NotCoherent { .. })));
    }

    #[test]
    fn gpbibd_on_psl_scheme() {
        let f = FieldParams::for_order(13).unwrap();
        let d = Design::build(&f).unwrap();
        let c = orbital_coloring(d.generators(), d.num_points());
        let lam = gpbibd_check(&d, &c).unwrap();
        let mut values: Vec<u32> = lam.values().copied().collect();
        values.sort_unstable();
        assert_eq!(values, vec![0, 0, 0, 1, 4, 13]);
        assert_eq!(lam[&0], 13);

        let f = FieldParams::for_order(25).unwrap();
        let d = Design::build(&f).unwrap();
        let c = orbital_coloring(d.generators(), d.num_points());
        let lam = gpbibd_check(&d, &c).unwrap();
        assert_eq!(lam.values().filter(|&&l| l == 1).count(), 1);
        assert_eq!(lam[&0], 5);
    }

    #[test]
    fn gpbibd_rejects_mixed_class() {
        let f = FieldParams::for_order(9).unwrap();
        let d = Design::build(&f).unwrap();
        let n = d.num_points();
        let labels: Vec<u32> = (0..n * n).map(|cell| u32::from(cell % n != cell / n)).collect();
        let c = PairColoring::new(n, &labels).unwrap();
        assert!(matches!(gpbibd_check(&d, &c), Err(Error::NotEquitable { .. })));
    }

    /// 3×3 rook's graph under S3 × S3 (rows and columns permuted
    /// independently): rank 4, symmetric, not metric.
    #[test]
    fn non_metric_rank4_has_no_drg() {
        let cell = |r: u32, c: u32| r * 3 + c;
        let mut gens = Vec::new();
        for (a, b) in [(0, 1), (1, 2)] {
            let swap = |v: u32| if v == a { b } else if v == b { a } else { v };
            gens.push(PermOnPoints { images: (0..9).map(|x| cell(swap(x / 3), x % 3)).collect() });
            gens.push(PermOnPoints { images: (0..9).map(|x| cell(x / 3, swap(x % 3))).collect() });
        }
        let c = orbital_coloring(&gens, 9);
        assert_eq!(c.num_colors(), 4);
        let cc = intersection_tensor(&c, CheckMode::Exhaustive).unwrap();
        assert!(check_props(&cc).symmetric);
        assert!(drg_analysis(&cc).is_none());
    }

    /// The cube Q3 is an antipodal distance-regular graph with
    /// intersection array {3,2,1;1,2,3}, a 2-fold cover of K4.
    #[test]
    fn cube_is_antipodal_drg() {
        let dist = |x: u32, y: u32| (x ^ y).count_ones();
        let labels: Vec<u32> = (0..8).flat_map(|x| (0..8).map(move |y| dist(x, y))).collect();
        let c = PairColoring::new(8, &labels).unwrap();
        let cc = intersection_tensor(&c, CheckMode::Exhaustive).unwrap();
        let drg = drg_analysis(&cc).unwrap();
        assert_eq!(drg.intersection_array, [3, 2, 1, 1, 2, 3]);
        assert!(drg.antipodal);
        assert_eq!(drg.antipodal_class_size, 2);
        assert_eq!(drg.cover_of, 4);
    }

    #[test]
    fn scheme_export_round_trip() {
        let c = psl_scheme(9);
        let mut buf = Vec::new();
        c.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("20 4\n"));
        assert_eq!(PairColoring::parse(&text).unwrap(), c);
        assert!(PairColoring::parse("2 3\n0 1\n1 0\n").is_err());
        let cc = intersection_tensor(&c, CheckMode::Full).unwrap();
        let mut buf = Vec::new();
        cc.tensor().unwrap().write_to(&mut buf).unwrap();
        let first = String::from_utf8(buf).unwrap().lines().next().unwrap().to_string();
        assert_eq!(first.split(' ').count(), 4);
    }

    #[test]
    fn refinement_relation() {
        let fine = psl_scheme(25);
        let coarse = full_group_coloring(&points(25)).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(fine.is_invariant_under(&points(25).psl_generator_perms()));
    }
}
