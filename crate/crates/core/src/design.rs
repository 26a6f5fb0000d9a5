//! The incidence structure D = (P, B): blocks are the PSL(2,q)-images of
//! the basic octahedron T. Every block carries its three antipodal pairs
//! (diagonals), transported from T along the group element that
//! discovered it.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::counting::closed_form_params;
use crate::error::{ensure_eq, Error, Result};
use crate::gf::{FieldElement, FieldParams};
use crate::pgroup::{
    enumerate_psl, group_order, orbit_of_set_traced, pair_transport_word, PermOnPoints, PointSet, PslElement,
    BASIC_DIAGONALS,
};

/// Above this group order the block stabilizer is not enumerated.
pub const BRUTE_FORCE_GROUP_LIMIT: u64 = 50_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub points: [u32; 6],
    /// Three antipodal pairs, each (min, max), sorted.
    pub diag_pairs: [(u32, u32); 3],
}

impl Block {
    fn new(points: &[u32], mut diag_pairs: [(u32, u32); 3]) -> Self {
        let mut pts = [0u32; 6];
        pts.copy_from_slice(points);
        pts.sort_unstable();
        for d in diag_pairs.iter_mut() {
            *d = (d.0.min(d.1), d.0.max(d.1));
        }
        diag_pairs.sort_unstable();
        Block { points: pts, diag_pairs }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    /// All 15 unordered pairs, (min, max).
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..6).flat_map(move |a| (a + 1..6).map(move |b| (self.points[a], self.points[b])))
    }

    pub fn is_diagonal(&self, pair: (u32, u32)) -> bool {
        self.diag_pairs.contains(&(pair.0.min(pair.1), pair.0.max(pair.1)))
    }

    /// The 12 pairs that are not diagonals.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs().filter(move |&p| !self.is_diagonal(p))
    }
}

/// Label of a pair of points with respect to the design.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairClass {
    Identity,
    Edge,
    Diagonal,
    Adjacent,
    Null,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda_values: BTreeMap<PairClass, u32>,
    /// associate classes of the PSL(2,q) orbital scheme
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeDiagonalCensus {
    pub edges: u64,
    pub diagonals: u64,
    pub blocks_per_edge: u64,
    pub blocks_per_diagonal: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockStabilizerReport {
    pub order: u64,
    /// element order → number of elements, when enumerated
    pub element_orders: Option<BTreeMap<u64, u64>>,
    /// the twelve listed representatives fix T (p ≠ 5 only)
    pub listed_reps_verified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Design {
    points: PointSet,
    blocks: Vec<Block>,
    point_to_blocks: Vec<Vec<u32>>,
    /// (x, y, λ) with x < y and λ > 0, sorted
    lambda: Vec<(u32, u32, u32)>,
    generators: Vec<PermOnPoints>,
}

/// The basic octahedron T with its three diagonals.
pub fn basic_block(points: &PointSet) -> Result<Block> {
    let t = points.basic_block_indices()?;
    let mut distinct = t.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 6 {
        return Err(Error::DegenerateBlock(distinct.len()));
    }
    let diags = BASIC_DIAGONALS.map(|(a, b)| (t[a], t[b]));
    Ok(Block::new(&t, diags))
}

impl Design {
    /// B = T^G with diagonals transported along the BFS tree, and λ for
    /// every pair sharing a block.
    pub fn build(f: &FieldParams) -> Result<Self> {
        let points = PointSet::new(f)?;
        let generators = points.psl_generator_perms();
        let seed = basic_block(&points)?;
        let orbit = orbit_of_set_traced(&generators, &seed.points);

        let mut blocks: Vec<Block> = Vec::with_capacity(orbit.sets.len());
        for (k, set) in orbit.sets.iter().enumerate() {
            let diags = match orbit.parent[k] {
                None => seed.diag_pairs,
                Some((parent, g)) => {
                    let g = &generators[g as usize];
                    blocks[parent as usize].diag_pairs.map(|(a, b)| (g.apply(a), g.apply(b)))
                }
            };
            blocks.push(Block::new(set, diags));
        }

        let n = points.len();
        let mut point_to_blocks = vec![Vec::new(); n];
        for (bi, b) in blocks.iter().enumerate() {
            for &x in &b.points {
                point_to_blocks[x as usize].push(bi as u32);
            }
        }

        let mut keys: Vec<u64> = blocks
            .iter()
            .flat_map(|b| b.pairs().map(|(x, y)| ((x as u64) << 32) | y as u64))
            .collect();
        keys.sort_unstable();
        let mut lambda = Vec::new();
        for run in keys.chunk_by(|a, b| a == b) {
            let k = run[0];
            lambda.push(((k >> 32) as u32, k as u32, run.len() as u32));
        }

        Ok(Design { points, blocks, point_to_blocks, lambda, generators })
    }

    pub fn field(&self) -> &FieldParams {
        self.points.field()
    }

    pub fn q(&self) -> u64 {
        self.field().q() as u64
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn point_to_blocks(&self, x: u32) -> &[u32] {
        &self.point_to_blocks[x as usize]
    }

    /// Permutations of the PSL(2,q) generators used to build the design.
    pub fn generators(&self) -> &[PermOnPoints] {
        &self.generators
    }

    /// Sparse λ: (x, y, λ) with x < y and λ > 0.
    pub fn lambda_pairs(&self) -> &[(u32, u32, u32)] {
        &self.lambda
    }

    /// Number of blocks containing both points; r for x = y.
    pub fn lambda(&self, x: u32, y: u32) -> u32 {
        if x == y {
            return self.point_to_blocks[x as usize].len() as u32;
        }
        let key = (x.min(y), x.max(y));
        match self.lambda.binary_search_by(|&(a, b, _)| (a, b).cmp(&key)) {
            Ok(pos) => self.lambda[pos].2,
            Err(_) => 0,
        }
    }

    /// Dense row-major λ matrix (diagonal entries are r).
    pub fn lambda_matrix(&self) -> Vec<u32> {
        let n = self.num_points();
        let mut m = vec![0u32; n * n];
        for x in 0..n {
            m[x * n + x] = self.point_to_blocks[x].len() as u32;
        }
        for &(x, y, l) in &self.lambda {
            m[x as usize * n + y as usize] = l;
            m[y as usize * n + x as usize] = l;
        }
        m
    }

    pub fn is_char5(&self) -> bool {
        self.field().p() == 5
    }

    /// The q = 5 design has a single block.
    pub fn is_degenerate(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Recomputes v, b, r, k and the λ values from the data and checks
    /// them against the closed forms of the applicable case.
    pub fn verify_counts(&self) -> Result<DesignParams> {
        let f = self.field();
        let cf = closed_form_params(f.p() as u64, f.alpha())?;
        let want = &cf.params;

        let v = self.num_points() as u64;
        ensure_eq("v", want.v, v)?;
        let b = self.blocks.len() as u64;
        ensure_eq("b", want.b, b)?;
        for blk in &self.blocks {
            let mut d = blk.points.to_vec();
            d.dedup();
            ensure_eq("k", 6, d.len() as u64)?;
        }
        let r = self.point_to_blocks[0].len() as u64;
        for list in &self.point_to_blocks {
            ensure_eq("r (per point)", r, list.len() as u64)?;
        }
        ensure_eq("r", want.r, r)?;
        ensure_eq("b·k = v·r", b * 6, v * r)?;
        let lambda_sum: u64 = self.lambda.iter().map(|&(_, _, l)| l as u64).sum();
        ensure_eq("Σλ = 15b", 15 * b, lambda_sum)?;

        let mut lambda_values = BTreeMap::new();
        if self.is_char5() {
            for &(_, _, l) in &self.lambda {
                ensure_eq("λ(adjacent)", 1, l as u64)?;
            }
            ensure_eq("adjacent pairs", cf.adjacent_pairs.unwrap_or(0), self.lambda.len() as u64)?;
            lambda_values.insert(PairClass::Adjacent, 1);
        } else {
            for blk in &self.blocks {
                for (x, y) in blk.edges() {
                    ensure_eq("λ(edge)", 4, self.lambda(x, y) as u64)?;
                }
                for &(x, y) in &blk.diag_pairs {
                    ensure_eq("λ(diagonal)", 1, self.lambda(x, y) as u64)?;
                }
            }
            lambda_values.insert(PairClass::Edge, 4);
            lambda_values.insert(PairClass::Diagonal, 1);
        }
        let pairs = v * (v - 1) / 2;
        if (self.lambda.len() as u64) < pairs {
            lambda_values.insert(PairClass::Null, 0);
        }
        Ok(DesignParams { v, b, r, k: 6, lambda_values, m: want.m })
    }

    /// Distinct edges and diagonals over all blocks, with the number of
    /// blocks each lies in. Only meaningful when p ≠ 5.
    pub fn edge_diagonal_census(&self) -> Result<EdgeDiagonalCensus> {
        if self.is_char5() {
            return Err(Error::BadCongruence("edge/diagonal census needs p ≠ 5".into()));
        }
        let collect = |diag: bool| -> Vec<((u32, u32), u64)> {
            let mut keys: Vec<(u32, u32)> = self
                .blocks
                .iter()
                .flat_map(|b| {
                    let pairs: Vec<(u32, u32)> =
                        if diag { b.diag_pairs.to_vec() } else { b.edges().collect() };
                    pairs
                })
                .collect();
            keys.sort_unstable();
            keys.chunk_by(|a, b| a == b).map(|run| (run[0], run.len() as u64)).collect()
        };
        let edges = collect(false);
        let diagonals = collect(true);

        // a pair may not be an edge of one block and a diagonal of another
        let (mut a, mut b) = (0, 0);
        while a < edges.len() && b < diagonals.len() {
            match edges[a].0.cmp(&diagonals[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => return Err(Error::LabelClash(edges[a].0)),
            }
        }

        let q = self.q();
        let expected = q * (q * q - 1) / 8;
        ensure_eq("|edges|", expected, edges.len() as u64)?;
        ensure_eq("|diagonals|", expected, diagonals.len() as u64)?;
        for &(_, m) in &edges {
            ensure_eq("blocks per edge", 4, m)?;
        }
        for &(_, m) in &diagonals {
            ensure_eq("blocks per diagonal", 1, m)?;
        }
        Ok(EdgeDiagonalCensus {
            edges: edges.len() as u64,
            diagonals: diagonals.len() as u64,
            blocks_per_edge: 4,
            blocks_per_diagonal: 1,
        })
    }

    /// Order of the stabilizer of T, by orbit-stabilizer and (for small
    /// groups) by enumerating PSL(2,q).
    pub fn block_stabilizer_report(&self) -> Result<BlockStabilizerReport> {
        let f = self.field();
        let q = self.q();
        let g_order = group_order(q);
        let order = g_order / self.blocks.len() as u64;
        ensure_eq("|G| = |G_T|·b", g_order, order * self.blocks.len() as u64)?;
        let expected = if self.is_char5() { 60 } else { 12 };
        ensure_eq("|G_T|", expected, order)?;

        let t = basic_block(&self.points)?;
        let fixes_t = |g: &PslElement| {
            let mut img: Vec<u32> = t.points.iter().map(|&x| self.points.act(g, x)).collect();
            img.sort_unstable();
            img == t.points
        };

        let element_orders = if g_order <= BRUTE_FORCE_GROUP_LIMIT {
            let stab: Vec<PslElement> = enumerate_psl(f).into_iter().filter(|g| fixes_t(g)).collect();
            ensure_eq("|G_T| (enumerated)", order, stab.len() as u64)?;
            let mut orders = BTreeMap::new();
            for g in &stab {
                *orders.entry(g.order(f)).or_insert(0u64) += 1;
            }
            if !self.is_char5() && orders.contains_key(&6) {
                return Err(Error::mismatch("elements of order 6 in G_T", 0, orders[&6]));
            }
            Some(orders)
        } else {
            None
        };

        let listed_reps_verified = if self.is_char5() {
            None
        } else {
            let reps = listed_stabilizer_elements(f)?;
            let mut distinct = reps.clone();
            distinct.sort_unstable();
            distinct.dedup();
            Some(distinct.len() == 12 && reps.iter().all(fixes_t))
        };

        Ok(BlockStabilizerReport { order, element_orders, listed_reps_verified })
    }

    /// A word in the generators carrying one unordered pair to another.
    pub fn pair_witness(&self, from: (u32, u32), to: (u32, u32)) -> Option<Vec<usize>> {
        pair_transport_word(&self.generators, from, to)
    }

    /// Writes `q v b`, then per block its six points, `|`, and the three
    /// diagonals as `a-b`.
    pub fn write_dump<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "{} {} {}", self.q(), self.num_points(), self.blocks.len())?;
        for b in &self.blocks {
            let pts: Vec<String> = b.points.iter().map(|x| x.to_string()).collect();
            let diags: Vec<String> = b.diag_pairs.iter().map(|(x, y)| format!("{x}-{y}")).collect();
            writeln!(w, "{} | {}", pts.join(" "), diags.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the dump written by [`Design::write_dump`]: (q, v, blocks).
pub fn parse_dump(text: &str) -> Result<(u64, usize, Vec<Block>)> {
    let bad = |m: &str| Error::Parse(format!("design dump: {m}"));
    let mut lines = text.lines();
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| bad("empty"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("header")))
        .collect::<Result<_>>()?;
    if header.len() != 3 {
        return Err(bad("header must be `q v b`"));
    }
    let mut blocks = Vec::new();
    for line in lines {
        let (pts, diags) = line.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let pts: Vec<u32> =
            pts.split_whitespace().map(|t| t.parse().map_err(|_| bad("point"))).collect::<Result<_>>()?;
        let diags: Vec<(u32, u32)> = diags
            .split_whitespace()
            .map(|t| {
                let (a, b) = t.split_once('-').ok_or_else(|| bad("diagonal"))?;
                Ok((a.parse().map_err(|_| bad("diagonal"))?, b.parse().map_err(|_| bad("diagonal"))?))
            })
            .collect::<Result<_>>()?;
        if pts.len() != 6 || diags.len() != 3 {
            return Err(bad("block needs 6 points and 3 diagonals"));
        }
        blocks.push(Block::new(&pts, [diags[0], diags[1], diags[2]]));
    }
    if blocks.len() as u64 != header[2] {
        return Err(bad("block count does not match header"));
    }
    Ok((header[0], header[1] as usize, blocks))
}

/// The twelve matrices listed as representatives of G_T for p ≠ 5,
/// each entry written as a + b·i.
fn listed_stabilizer_elements(f: &FieldParams) -> Result<Vec<PslElement>> {
    const REPS: [[(i64, i64); 4]; 12] = [
        [(1, 0), (0, 0), (0, 0), (1, 0)],
        [(0, 0), (0, -1), (0, -1), (-1, 0)],
        [(-1, 0), (0, 1), (0, 1), (0, 0)],
        [(0, -1), (0, 0), (-1, -1), (0, 1)],
        [(-1, 1), (1, 0), (0, 1), (0, -1)],
        [(1, 0), (-1, 0), (1, 0), (0, 0)],
        [(1, 0), (-1, -1), (1, -1), (-1, 0)],
        [(-1, -1), (0, 1), (-1, 0), (0, 1)],
        [(0, 1), (1, 0), (0, 1), (1, -1)],
        [(0, -1), (-1, 1), (0, 0), (0, 1)],
        [(0, 0), (1, 0), (-1, 0), (1, 0)],
        [(0, 1), (0, -1), (1, 0), (-1, -1)],
    ];
    let i = f.fourth_root()?;
    let entry = |(a, b): (i64, i64)| -> FieldElement { f.add(f.from_int(a), f.mul(f.from_int(b), i)) };
    REPS.iter().map(|m| PslElement::new(f, m.map(entry))).collect()
}
