//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.
//! Set OCTA_STRETCH=1 to also run the forced rows q = 53 … 169.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use octa::cli::{cmd_analyze, AnalysisReport, RunOptions};
use octa::counting::{admissible_orders, orbit_count_direct, orbit_count_pf};
use octa::design::{Design, PairClass};
use octa::expected::expected_row;
use octa::gf::{prime_power, FieldParams};
use octa::pgroup::{group_order, PointSet};
use octa::scheme::{check_props, full_group_coloring, intersection_tensor, CheckMode};
use octa::wl::{lambda_coloring, wl_stabilize_with_group, SchurianFlag};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn analyze(q: u64) -> Result<AnalysisReport, String> {
    cmd_analyze(q, &RunOptions::default()).map_err(|e| format!("q={q}: {e}"))
}

fn design(q: u64) -> Design {
    Design::build(&FieldParams::for_order(q).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let cor = [3, 5, 7, 7, 13, 17, 19, 17];
    let smallest = [3, 5, 7, 3, 13, 17, 11, 13];
    let start = Instant::now();
    for (k, q) in [9u64, 13, 17, 25, 29, 37, 41, 49].into_iter().enumerate() {
        let r = analyze(q)?;
        let (v, b, rr) = if q % 5 == 0 {
            ((q * q - 1) / 4, q * (q * q - 1) / 120, q / 5)
        } else {
            ((q * q - 1) / 4, q * (q * q - 1) / 24, q)
        };
        ensure!((r.params.v, r.params.b, r.params.k, r.params.r) == (v, b, 6, rr), "q={q}: params {:?}", r.params);
        ensure!(r.cor_classes == cor[k], "q={q}: cor_classes {} != {}", r.cor_classes, cor[k]);
        ensure!(r.wl_classes == smallest[k], "q={q}: wl_classes {} != {}", r.wl_classes, smallest[k]);
    }
    Ok(format!("8 rows reproduced in {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = analyze(81)?;
    ensure!(r.cor_classes == 13, "cor_classes {}", r.cor_classes);
    ensure!(r.wl_classes == 5, "wl_classes {}", r.wl_classes);
    ensure!(r.flags.schurian_flag == SchurianFlag::NonSchurian, "flag {:?}", r.flags.schurian_flag);
    let mut note = format!("q=81: 13 → 5, NonSchurian in {:.1}s", start.elapsed().as_secs_f64());
    if std::env::var("OCTA_STRETCH").is_ok_and(|v| v == "1") {
        let opts = RunOptions { force: true, ..RunOptions::default() };
        for q in [53u64, 61, 73, 89, 97, 101, 109, 113, 121, 125, 169] {
            let r = cmd_analyze(q, &opts).map_err(|e| format!("q={q}: {e}"))?;
            ensure!(r.matches_expected(), "q={q}: {:?}", r.expected);
        }
        note.push_str("; forced rows 53…169 match");
    } else {
        note.push_str("; forced rows skipped (OCTA_STRETCH=1)");
    }
    Ok(note)
}

fn criterion_3() -> Outcome {
    let qs = admissible_orders(169);
    for &q in &qs {
        let (p, n) = prime_power(q).unwrap();
        let pf = orbit_count_pf(p, n).map_err(|e| e.to_string())?.count;
        let direct = orbit_count_direct(&FieldParams::for_order(q).unwrap()).map_err(|e| e.to_string())?;
        ensure!(pf == direct, "q={q}: formula {pf} != direct {direct}");
    }
    Ok(format!("{} orders q ≤ 169", qs.len()))
}

fn criterion_4() -> Outcome {
    let mut brute = 0;
    for q in [9u64, 13, 17, 29, 37, 41, 49] {
        let d = design(q);
        let census = d.edge_diagonal_census().map_err(|e| format!("q={q}: {e}"))?;
        let want = q * (q * q - 1) / 8;
        ensure!(census.edges == want && census.diagonals == want, "q={q}: {census:?}");
        ensure!(census.blocks_per_edge == 4 && census.blocks_per_diagonal == 1, "q={q}: {census:?}");
        let stab = d.block_stabilizer_report().map_err(|e| format!("q={q}: {e}"))?;
        ensure!(stab.order == 12, "q={q}: |G_T| = {}", stab.order);
        if q <= 41 {
            let orders = stab.element_orders.ok_or(format!("q={q}: not enumerated"))?;
            ensure!(orders.values().sum::<u64>() == 12 && !orders.contains_key(&6), "q={q}: {orders:?}");
            brute += 1;
        }
        let pt = d.points().point_stabilizer_report().map_err(|e| e.to_string())?;
        ensure!(pt.order == 2 * q && pt.shape_verified, "q={q}: {pt:?}");
    }
    Ok(format!("7 orders, {brute} block stabilizers enumerated"))
}

fn criterion_5() -> Outcome {
    for q in [5u64, 25] {
        let d = design(q);
        let params = d.verify_counts().map_err(|e| e.to_string())?;
        let alpha = prime_power(q).unwrap().1;
        ensure!(params.b == q * (q * q - 1) / 120, "q={q}: b = {}", params.b);
        ensure!(params.r == 5u64.pow(alpha - 1), "q={q}: r = {}", params.r);
        ensure!(params.lambda_values.get(&PairClass::Adjacent) == Some(&1), "q={q}: {:?}", params.lambda_values);
        let pairs = d.lambda_pairs();
        ensure!(pairs.iter().all(|&(_, _, l)| l == 1), "q={q}: a pair lies in two blocks");
        ensure!(pairs.len() as u64 == 15 * params.b, "q={q}: {} adjacent pairs", pairs.len());
        let stab = d.block_stabilizer_report().map_err(|e| e.to_string())?;
        ensure!(stab.order == 60 && group_order(q) / params.b == 60, "q={q}: |G_T| = {}", stab.order);
    }
    Ok("q=5, 25".into())
}

fn criterion_6() -> Outcome {
    let qs = admissible_orders(53);
    for &q in &qs {
        let d = design(q);
        let lambda = lambda_coloring(&d);
        let wl = wl_stabilize_with_group(&lambda, d.generators(), CheckMode::Full).map_err(|e| format!("q={q}: {e}"))?;
        intersection_tensor(wl.coloring(), CheckMode::Exhaustive).map_err(|e| format!("q={q}: {e}"))?;
        let again = wl_stabilize_with_group(wl.coloring(), d.generators(), CheckMode::Full).map_err(|e| e.to_string())?;
        ensure!(again.rounds == 1 && again.coloring() == wl.coloring(), "q={q}: not a fixpoint");
        ensure!(wl.coloring().refines(&lambda), "q={q}: WL output does not refine the λ-partition");
        let full = full_group_coloring(d.points()).map_err(|e| e.to_string())?;
        ensure!(full.refines(wl.coloring()), "q={q}: full-group orbitals coarser than WL output");
    }
    Ok(format!("{} orders, every pair recounted", qs.len()))
}

fn criterion_7() -> Outcome {
    for q in [41u64, 49] {
        let r = analyze(q)?;
        ensure!(!r.flags.commutative, "q={q} is commutative");
    }
    for q in [9u64, 13, 17, 25] {
        let a = analyze(q)?;
        let b = analyze(q)?;
        ensure!(a.flags == b.flags, "q={q}: flags differ between runs");
        ensure!(!a.flags.symmetric || a.flags.commutative, "q={q}: symmetric but not commutative");
        let d = design(q);
        let wl = wl_stabilize_with_group(&lambda_coloring(&d), d.generators(), CheckMode::Full).unwrap();
        let props = check_props(&wl.final_config);
        ensure!(props.commutative == a.flags.commutative && props.symmetric == a.flags.symmetric, "q={q}");
    }
    Ok("41, 49 non-commutative; 9, 13, 17, 25 consistent".into())
}

fn criterion_8() -> Outcome {
    let a = analyze(25)?;
    let b = analyze(25)?;
    let drg = a.drg.as_ref().ok_or("q=25 WL scheme is not distance-regular")?;
    ensure!(drg.diameter == 3 && drg.antipodal, "{drg:?}");
    ensure!(a.drg == b.drg, "intersection array differs between runs");
    let ia = drg.intersection_array;
    Ok(format!(
        "{{{},{},{}; {},{},{}}}, antipodal classes of size {}",
        ia[0], ia[1], ia[2], ia[3], ia[4], ia[5], drg.antipodal_class_size
    ))
}

fn run_octa(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_octa"))
        .args(args)
        .env("OCTA_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "octa {args:?} exited with {}", out.status);
    Ok(out.stdout)
}

/// Every count in a report, leaving out field-dependent labels.
fn counts(r: &serde_json::Value) -> serde_json::Value {
    let keys = [
        "params",
        "schurian_classes",
        "cor_classes",
        "full_group_classes",
        "wl_classes",
        "wl_colors_per_round",
        "class_lambdas",
        "class_valencies",
        "flags",
        "drg",
    ];
    keys.iter().map(|k| (k.to_string(), r[k].clone())).collect::<serde_json::Map<_, _>>().into()
}

fn criterion_9() -> Outcome {
    let args = ["table", "--max-q", "49", "--format", "json"];
    let one = run_octa(&args, "1")?;
    let four = run_octa(&args, "4")?;
    ensure!(one == four, "table output differs between OCTA_THREADS=1 and 4");

    let overrides: [(&str, &[&str]); 5] = [
        ("13", &["--modulus", "13 1 5 1"]),
        ("13", &["--generator", "7"]),
        ("13", &["--modulus", "13 1 2 1", "--generator", "11"]),
        ("9", &["--modulus", "3 2 2 1 1"]),
        ("25", &["--modulus", "5 2 2 0 1"]),
    ];
    for (q, extra) in overrides {
        let base: serde_json::Value =
            serde_json::from_slice(&run_octa(&["analyze", q, "--format", "json"], "2")?).map_err(|e| e.to_string())?;
        let mut a = vec!["analyze", q, "--format", "json"];
        a.extend_from_slice(extra);
        let other: serde_json::Value = serde_json::from_slice(&run_octa(&a, "3")?).map_err(|e| e.to_string())?;
        ensure!(counts(&base) == counts(&other), "q={q} {extra:?} changes a count");
    }
    let f = FieldParams::create(13, 1, &octa::gf::FieldOptions { generator: Some(vec![7]), modulus: None }).unwrap();
    let pts = PointSet::new(&f).unwrap();
    ensure!(f.i_elem() != FieldParams::for_order(13).unwrap().i_elem(), "ω = 7 should change i");
    ensure!(pts.len() == 42, "q=13 override has {} points", pts.len());
    ensure!(expected_row(13).is_some(), "no published row for q=13");
    Ok(format!("{} bytes identical; 5 overrides count-invariant", one.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table rows q ∈ {9,…,49}", criterion_1),
        ("stretch row q=81", criterion_2),
        ("orbit count formula = direct count", criterion_3),
        ("edge/diagonal and stabilizer counts", criterion_4),
        ("p = 5 designs", criterion_5),
        ("coherence of WL output q ≤ 53", criterion_6),
        ("commutativity flags", criterion_7),
        ("q=25 antipodal DRG", criterion_8),
        ("determinism and field overrides", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {}: PASS  {name} ({note}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{}/9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
