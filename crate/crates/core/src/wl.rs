//! Two-dimensional Weisfeiler-Leman refinement: the coherent closure of a
//! pair coloring.
//!
//! One round replaces the color of (x, y) by the tuple
//! (c(x,y), c(y,x), multiset over z of (c(x,z), c(z,y))) and renumbers.
//! Rounds repeat until the number of colors stops growing.
//!
//! Two engines compute the same thing. [`wl_stabilize`] works on the whole
//! n × n matrix. [`wl_stabilize_with_group`] is for colorings invariant
//! under a transitive group: every color then already occurs in row 0, the
//! rest of the matrix follows from c(x,y) = c(0, t_x⁻¹ y), and only row 0
//! is refined.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::pgroup::{PermOnPoints, Transversal};
use crate::scheme::{intersection_tensor, CheckMode, CoherentConfig, PairColoring};

#[derive(Clone, Debug)]
pub struct RefinementTrace {
    /// refinement rounds performed, the last one being the idle round
    pub rounds: u32,
    /// color count before the first round and after every round
    pub colors_per_round: Vec<u32>,
    pub final_config: CoherentConfig,
}

impl RefinementTrace {
    pub fn coloring(&self) -> &PairColoring {
        &self.final_config.coloring
    }

    pub fn classes(&self) -> u32 {
        self.final_config.classes()
    }
}

/// Identity pairs get their own color; every other pair is colored by its
/// λ value, 0 included.
pub fn lambda_coloring(d: &Design) -> PairColoring {
    let n = d.num_points();
    let mut labels = d.lambda_matrix();
    for x in 0..n {
        labels[x * n + x] = u32::MAX;
    }
    PairColoring::new(n, &labels).expect("λ matrix has n² entries")
}

/// Interns signatures in order of first appearance.
#[derive(Default)]
struct Interner {
    ids: HashMap<Vec<u32>, u32>,
}

impl Interner {
    fn intern(&mut self, sig: Vec<u32>) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(sig).or_insert(next)
    }

    fn len(&self) -> u32 {
        self.ids.len() as u32
    }
}

/// Sorts the composition codes and appends them run-length encoded.
fn push_multiset(sig: &mut Vec<u32>, codes: &mut [u64]) {
    codes.sort_unstable();
    let mut k = 0;
    while k < codes.len() {
        let code = codes[k];
        let start = k;
        while k < codes.len() && codes[k] == code {
            k += 1;
        }
        sig.push((code >> 32) as u32);
        sig.push(code as u32);
        sig.push((k - start) as u32);
    }
}

fn dense_round(c: &PairColoring) -> PairColoring {
    let n = c.n();
    // column-major copy so that c(·, y) is contiguous
    let mut cols = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            cols[y * n + x] = c.colors()[x * n + y];
        }
    }
    let rows: Vec<(Vec<u32>, Vec<Vec<u32>>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let row = c.row(x as u32);
            let mut local = Interner::default();
            let mut order = Vec::new();
            let mut ids = Vec::with_capacity(n);
            let mut codes = vec![0u64; n];
            for y in 0..n {
                let col = &cols[y * n..(y + 1) * n];
                for z in 0..n {
                    codes[z] = (u64::from(row[z]) << 32) | u64::from(col[z]);
                }
                let mut sig = vec![row[y], col[x]];
                push_multiset(&mut sig, &mut codes);
                let before = local.len();
                let id = local.intern(sig.clone());
                if id == before {
                    order.push(sig);
                }
                ids.push(id);
            }
            (ids, order)
        })
        .collect();

    let mut global = Interner::default();
    let mut colors = Vec::with_capacity(n * n);
    for (ids, order) in rows {
        let map: Vec<u32> = order.into_iter().map(|sig| global.intern(sig)).collect();
        colors.extend(ids.iter().map(|&l| map[l as usize]));
    }
    let k = global.len();
    PairColoring::from_canonical(n, colors, k)
}

fn check_trace(colors_per_round: &[u32]) -> Result<()> {
    let k = colors_per_round.len();
    let grows = colors_per_round[..k - 1].windows(2).all(|w| w[0] < w[1]);
    if k < 2 || !grows || colors_per_round[k - 1] != colors_per_round[k - 2] {
        return Err(Error::RefinementViolation(format!("color counts {colors_per_round:?}")));
    }
    Ok(())
}

fn finish(input: &PairColoring, out: PairColoring, colors_per_round: Vec<u32>, mode: CheckMode) -> Result<RefinementTrace> {
    check_trace(&colors_per_round)?;
    if !out.refines(input) {
        return Err(Error::RefinementViolation("output does not refine the input".into()));
    }
    let final_config = intersection_tensor(&out, mode)?;
    Ok(RefinementTrace { rounds: colors_per_round.len() as u32 - 1, colors_per_round, final_config })
}

/// Coherent closure by full-matrix rounds; O(n³ log n) per round.
pub fn wl_stabilize(c: &PairColoring, mode: CheckMode) -> Result<RefinementTrace> {
    let mut cur = PairColoring::new(c.n(), c.colors())?;
    let mut counts = vec![cur.num_colors()];
    loop {
        let next = dense_round(&cur);
        counts.push(next.num_colors());
        let done = next.num_colors() == cur.num_colors();
        cur = next;
        if done {
            break;
        }
    }
    finish(c, cur, counts, mode)
}

/// Coherent closure for a coloring invariant under the transitive group
/// generated by `gens`; refines row 0 only, O(n² log n) per round. Falls
/// back to [`wl_stabilize`] when the group is not transitive or does not
/// preserve the coloring.
pub fn wl_stabilize_with_group(c: &PairColoring, gens: &[PermOnPoints], mode: CheckMode) -> Result<RefinementTrace> {
    let n = c.n();
    let transversal = match Transversal::new(gens, 0) {
        Some(t) if t.len() == n && c.is_invariant_under(gens) => t,
        _ => return wl_stabilize(c, mode),
    };
    // back[y·n + z] = t_z⁻¹(y), so c(z, y) = row[back[y·n + z]]
    let mut back = vec![0u32; n * n];
    for z in 0..n {
        for (y, &img) in transversal.inverse_of(z as u32).iter().enumerate() {
            back[y * n + z] = img;
        }
    }
    let partner: Vec<u32> = (0..n).map(|y| back[y]).collect();

    let mut row: Vec<u32> = c.row(0).to_vec();
    let mut num = {
        let mut ids = Interner::default();
        for v in row.iter_mut() {
            *v = ids.intern(vec![*v]);
        }
        ids.len()
    };
    let mut counts = vec![num];
    loop {
        let sigs: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|y| {
                let col = &back[y * n..(y + 1) * n];
                let mut codes: Vec<u64> =
                    (0..n).map(|z| (u64::from(row[z]) << 32) | u64::from(row[col[z] as usize])).collect();
                let mut sig = vec![row[y], row[partner[y] as usize]];
                push_multiset(&mut sig, &mut codes);
                sig
            })
            .collect();
        let mut ids = Interner::default();
        let next: Vec<u32> = sigs.into_iter().map(|s| ids.intern(s)).collect();
        counts.push(ids.len());
        let done = ids.len() == num;
        row = next;
        num = ids.len();
        if done {
            break;
        }
    }

    let mut labels = vec![0u32; n * n];
    for x in 0..n {
        let inv = transversal.inverse_of(x as u32);
        for y in 0..n {
            labels[x * n + y] = row[inv[y] as usize];
        }
    }
    let out = PairColoring::new(n, &labels)?;
    if out.num_colors() != num {
        return Err(Error::RefinementViolation("row 0 misses a color of the expanded matrix".into()));
    }
    finish(c, out, counts, mode)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SchurianFlag {
    SchurianConsistent,
    NonSchurian,
}

/// Compares the WL class count with the class count of the full known
/// group. Fewer WL classes means the minimal scheme is not the orbital
/// scheme of that group.
pub fn schurian_flag(wl_classes: u32, full_group_classes: u32) -> Result<SchurianFlag> {
    use std::cmp::Ordering::*;
    match wl_classes.cmp(&full_group_classes) {
        Less => Ok(SchurianFlag::NonSchurian),
        Equal => Ok(SchurianFlag::SchurianConsistent),
        Greater => Err(Error::RefinementViolation(format!(
            "{wl_classes} WL classes exceed {full_group_classes} orbital classes"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;
    use crate::scheme::{check_props, full_group_coloring, orbital_coloring};

    fn graph(n: usize, adj: impl Fn(usize, usize) -> bool) -> PairColoring {
        let labels: Vec<u32> = (0..n * n)
            .map(|cell| {
                let (x, y) = (cell / n, cell % n);
                if x == y {
                    0
                } else if adj(x, y) {
                    1
                } else {
                    2
                }
            })
            .collect();
        PairColoring::new(n, &labels).unwrap()
    }

    /// All automorphisms of a coloring by backtracking over partial maps.
    fn automorphisms(c: &PairColoring) -> Vec<PermOnPoints> {
        let n = c.n();
        let mut out = Vec::new();
        let mut img = vec![0u32; n];
        let mut used = vec![false; n];
        fn go(c: &PairColoring, k: usize, img: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<PermOnPoints>) {
            let n = c.n();
            if k == n {
                out.push(PermOnPoints { images: img.clone() });
                return;
            }
            for t in 0..n as u32 {
                if used[t as usize] {
                    continue;
                }
                img[k] = t;
                let ok = (0..=k).all(|j| {
                    c.get(k as u32, j as u32) == c.get(t, img[j]) && c.get(j as u32, k as u32) == c.get(img[j], t)
                });
                if ok {
                    used[t as usize] = true;
                    go(c, k + 1, img, used, out);
                    used[t as usize] = false;
                }
            }
        }
        go(c, 0, &mut img, &mut used, &mut out);
        out
    }

    fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
        let Some((&first, rest)) = items.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        for p in set_partitions(rest) {
            for k in 0..p.len() {
                let mut q = p.clone();
                q[k].push(first);
                out.push(q);
            }
            let mut q = p;
            q.push(vec![first]);
            out.push(q);
        }
        out
    }

    /// Coarsest coherent coloring between the automorphism orbitals and
    /// the input, found by trying every merge of orbital colors that
    /// stays inside one input color.
    fn coarsest_coherent_oracle(c: &PairColoring) -> PairColoring {
        let orb = orbital_coloring(&automorphisms(c), c.n());
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); c.num_colors() as usize];
        for (cell, &o) in orb.colors().iter().enumerate() {
            let g = &mut groups[c.colors()[cell] as usize];
            if !g.contains(&o) {
                g.push(o);
            }
        }
        let choices: Vec<Vec<Vec<Vec<u32>>>> = groups.iter().map(|g| set_partitions(g)).collect();
        let total: usize = choices.iter().map(Vec::len).product();
        assert!(total <= 200_000, "oracle search too large: {total}");
        let mut best: Option<PairColoring> = None;
        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut merged = vec![0u32; orb.num_colors() as usize];
            let mut label = 0;
            for (g, &i) in choices.iter().zip(&idx) {
                for block in &g[i] {
                    for &o in block {
                        merged[o as usize] = label;
                    }
                    label += 1;
                }
            }
            let labels: Vec<u32> = orb.colors().iter().map(|&o| merged[o as usize]).collect();
            let cand = PairColoring::new(c.n(), &labels).unwrap();
            if intersection_tensor(&cand, CheckMode::Exhaustive).is_ok()
                && best.as_ref().is_none_or(|b| cand.num_colors() < b.num_colors())
            {
                best = Some(cand);
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        best.unwrap()
    }

    fn rook_grid() -> PairColoring {
        graph(9, |x, y| x / 3 == y / 3 || x % 3 == y % 3)
    }

    fn toy_structures() -> Vec<(&'static str, PairColoring)> {
        let f = FieldParams::for_order(5).unwrap();
        let d = Design::build(&f).unwrap();
        vec![
            ("C6", graph(6, |x, y| (x + 6 - y) % 6 == 1 || (y + 6 - x) % 6 == 1)),
            ("C7", graph(7, |x, y| (x + 7 - y) % 7 == 1 || (y + 7 - x) % 7 == 1)),
            ("K33", graph(6, |x, y| (x < 3) != (y < 3))),
            ("2K3", graph(6, |x, y| (x < 3) == (y < 3))),
            ("P4", graph(4, |x, y| x.abs_diff(y) == 1)),
            ("directed C5", graph(5, |x, y| (y + 5 - x) % 5 == 1)),
            ("paw", graph(4, |x, y| matches!((x.min(y), x.max(y)), (0, 1) | (0, 2) | (1, 2) | (2, 3)))),
            ("rook 3x3", rook_grid()),
            ("q=5 design", lambda_coloring(&d)),
        ]
    }

    #[test]
    fn closure_matches_brute_force_oracle() {
        for (name, c) in toy_structures() {
            let wl = wl_stabilize(&c, CheckMode::Exhaustive).unwrap();
            let oracle = coarsest_coherent_oracle(&c);
            assert_eq!(wl.coloring(), &oracle, "{name}");
        }
    }

    #[test]
    fn fixpoint_is_idempotent() {
        for (name, c) in toy_structures() {
            let once = wl_stabilize(&c, CheckMode::Full).unwrap();
            let twice = wl_stabilize(once.coloring(), CheckMode::Full).unwrap();
            assert_eq!(twice.rounds, 1, "{name}");
            assert_eq!(twice.coloring(), once.coloring(), "{name}");
        }
    }

    #[test]
    fn lambda_coloring_sizes() {
        for (q, colors) in [(5u64, 2u32), (13, 4), (25, 3), (9, 4)] {
            let d = Design::build(&FieldParams::for_order(q).unwrap()).unwrap();
            assert_eq!(lambda_coloring(&d).num_colors(), colors, "q = {q}");
        }
    }

    #[test]
    fn engines_agree() {
        for q in [5u64, 9, 13, 17, 25] {
            let d = Design::build(&FieldParams::for_order(q).unwrap()).unwrap();
            let c = lambda_coloring(&d);
            let dense = wl_stabilize(&c, CheckMode::Full).unwrap();
            let fast = wl_stabilize_with_group(&c, d.generators(), CheckMode::Full).unwrap();
            assert_eq!(dense.coloring(), fast.coloring(), "q = {q}");
            assert_eq!(dense.colors_per_round, fast.colors_per_round, "q = {q}");
        }
    }

    #[test]
    fn small_table_rows() {
        for (q, classes) in [(9u64, 3u32), (13, 5), (17, 7), (25, 3)] {
            let d = Design::build(&FieldParams::for_order(q).unwrap()).unwrap();
            let wl = wl_stabilize_with_group(&lambda_coloring(&d), d.generators(), CheckMode::Full).unwrap();
            assert_eq!(wl.classes(), classes, "q = {q}");
            let full = full_group_coloring(d.points()).unwrap();
            assert!(full.refines(wl.coloring()), "q = {q}");
        }
    }

    #[test]
    fn q25_scheme_is_symmetric() {
        let d = Design::build(&FieldParams::for_order(25).unwrap()).unwrap();
        let wl = wl_stabilize_with_group(&lambda_coloring(&d), d.generators(), CheckMode::Full).unwrap();
        let props = check_props(&wl.final_config);
        assert!(props.symmetric && props.commutative && props.homogeneous);
        assert_eq!(props.classes, 3);
    }

    #[test]
    fn non_invariant_group_falls_back() {
        let c = graph(4, |x, y| x.abs_diff(y) == 1);
        let rot = PermOnPoints { images: vec![1, 2, 3, 0] };
        let a = wl_stabilize_with_group(&c, &[rot], CheckMode::Exhaustive).unwrap();
        let b = wl_stabilize(&c, CheckMode::Exhaustive).unwrap();
        assert_eq!(a.coloring(), b.coloring());
    }

    #[test]
    fn trace_shape() {
        let wl = wl_stabilize(&graph(4, |x, y| x.abs_diff(y) == 1), CheckMode::Exhaustive).unwrap();
        let k = wl.colors_per_round.len();
        assert_eq!(wl.colors_per_round[k - 1], wl.colors_per_round[k - 2]);
        assert_eq!(wl.rounds as usize, k - 1);
        assert!(check_trace(&[3, 3, 3]).is_err());
    }

    #[test]
    fn flags() {
        assert_eq!(schurian_flag(3, 7).unwrap(), SchurianFlag::NonSchurian);
        assert_eq!(schurian_flag(5, 5).unwrap(), SchurianFlag::SchurianConsistent);
        assert_eq!(schurian_flag(5, 13).unwrap(), SchurianFlag::NonSchurian);
        assert!(matches!(schurian_flag(8, 7), Err(Error::RefinementViolation(_))));
    }
}
