//! The analysis pipeline behind the `octa` binary, and its renderers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::counting::{admissible_orders, closed_form_params, orbit_count_direct, orbit_count_pf};
use crate::design::{Design, DesignParams};
use crate::error::{ensure_eq, Error, Result};
use crate::expected::{compare, expected_row, ExpectedMatch, Observed};
use crate::gf::{prime_power, FieldOptions, FieldParams, MAX_FIELD_ORDER};
use crate::pgroup::point_orbit;
use crate::scheme::{
    check_props, drg_analysis, full_group_generators, gpbibd_check, intersection_tensor, orbital_coloring, CheckMode,
    PairColoring,
};
use crate::wl::{lambda_coloring, schurian_flag, wl_stabilize, wl_stabilize_with_group, RefinementTrace, SchurianFlag};

pub const DEFAULT_MAX_POINTS: usize = 2000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Tsv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn parse_check_level(s: &str) -> Result<CheckMode> {
    match s {
        "full" => Ok(CheckMode::Full),
        "sampled" => Ok(CheckMode::Sampled),
        _ => Err(Error::Parse(format!("unknown check level {s:?}"))),
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// `p alpha c0 .. c_alpha`
    pub modulus: Option<String>,
    /// coefficients of ω, constant term first
    pub generator: Option<String>,
    pub max_points: usize,
    pub force: bool,
    /// `None` picks full or sampled by size
    pub check: Option<CheckMode>,
    pub dump_design: Option<PathBuf>,
    pub dump_scheme: Option<PathBuf>,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            modulus: None,
            generator: None,
            max_points: DEFAULT_MAX_POINTS,
            force: false,
            check: None,
            dump_design: None,
            dump_scheme: None,
            timings: false,
        }
    }
}

/// An error together with the stage of the pipeline that raised it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub module: &'static str,
    pub message: String,
    #[serde(skip)]
    pub error: Error,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.module, self.message)
    }
}

trait InModule<T> {
    fn in_module(self, module: &'static str) -> std::result::Result<T, Failure>;
}

impl<T> InModule<T> for Result<T> {
    fn in_module(self, module: &'static str) -> std::result::Result<T, Failure> {
        self.map_err(|error| Failure { module, message: error.to_string(), error })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub schurian_flag: SchurianFlag,
    /// the flag compares with the largest known group, assumed to be the
    /// full automorphism group of the design
    pub schurian_flag_conditional: bool,
    pub commutative: bool,
    pub symmetric: bool,
    pub homogeneous: bool,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgSummary {
    pub diameter: u32,
    pub intersection_array: [u32; 6],
    pub antipodal: bool,
    pub antipodal_class_size: u32,
    pub antipodal_classes: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub q: u64,
    pub p: u64,
    pub alpha: u32,
    pub params: DesignParams,
    /// classes of the PSL(2,q) orbital scheme, (q−3)/2
    pub schurian_classes: u32,
    /// 2·|P/F| − 1
    pub cor_classes: u32,
    /// classes of the PΣL(2,q) × ⟨σ⟩ orbital scheme
    pub full_group_classes: u32,
    pub wl_classes: u32,
    pub wl_colors_per_round: Vec<u32>,
    /// λ of each WL class, decreasing
    pub class_lambdas: Vec<u32>,
    /// valency of each WL class, in the order of `class_lambdas`
    pub class_valencies: Vec<u32>,
    pub flags: Flags,
    pub drg: Option<DrgSummary>,
    pub check_level: CheckMode,
    pub expected: Option<ExpectedMatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u64>>,
}

impl AnalysisReport {
    pub fn matches_expected(&self) -> bool {
        self.expected.as_ref().is_none_or(ExpectedMatch::all_required_match)
    }
}

/// Splits q into (p, α) and checks q ≡ 1 (mod 4), q ≥ 5.
pub fn validate_order(q: u64) -> Result<(u64, u32)> {
    let (p, alpha) = prime_power(q).ok_or_else(|| Error::BadCongruence(format!("{q} is not a prime power")))?;
    if q % 4 != 1 || q < 5 {
        return Err(Error::BadCongruence(format!("q = {q} must be a prime power ≡ 1 (mod 4) and at least 5")));
    }
    if q > MAX_FIELD_ORDER {
        return Err(Error::TooLarge(q));
    }
    Ok((p, alpha))
}

fn parse_coeffs(s: &str) -> Result<Vec<u32>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
        .collect()
}

/// The field F_q with the overrides of `opts` applied.
pub fn build_field(q: u64, opts: &RunOptions) -> Result<FieldParams> {
    let (p, alpha) = validate_order(q)?;
    let mut fo = FieldOptions::default();
    if let Some(m) = &opts.modulus {
        let (mp, ma, coeffs) = FieldOptions::parse_modulus_line(m)?;
        if (mp as u64, ma) != (p, alpha) {
            return Err(Error::Parse(format!("modulus is for {mp}^{ma}, not {q}")));
        }
        fo.modulus = Some(coeffs);
    }
    if let Some(g) = &opts.generator {
        fo.generator = Some(parse_coeffs(g)?);
    }
    FieldParams::create(p as u32, alpha, &fo)
}

fn check_mode(opts: &RunOptions, n: usize) -> CheckMode {
    opts.check.unwrap_or_else(|| CheckMode::auto(n))
}

fn point_guard(q: u64, opts: &RunOptions) -> Result<()> {
    let n = ((q * q - 1) / 4) as usize;
    if n > opts.max_points && !opts.force {
        return Err(Error::PointLimit { points: n, limit: opts.max_points });
    }
    Ok(())
}

/// Class λ values and valencies, paired and sorted by decreasing λ, then
/// decreasing valency.
fn class_summary(d: &Design, trace: &RefinementTrace) -> Result<(Vec<u32>, Vec<u32>)> {
    let lam = gpbibd_check(d, trace.coloring())?;
    let cc = &trace.final_config;
    let val = cc.valencies.as_ref().ok_or_else(|| Error::NotCoherent {
        color: 0,
        detail: "WL output is not homogeneous".into(),
    })?;
    let mut pairs: Vec<(u32, u32)> = (0..cc.rank())
        .filter(|c| !cc.diagonal_colors.contains(c))
        .map(|c| (lam[&c], val[c as usize]))
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(pairs.into_iter().unzip())
}

/// Everything the report is made from, kept for `verify`.
struct Pipeline {
    report: AnalysisReport,
    design: Design,
    full: PairColoring,
    lambda: PairColoring,
    trace: RefinementTrace,
}

fn run_pipeline(q: u64, opts: &RunOptions) -> std::result::Result<Pipeline, Failure> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut BTreeMap<&'static str, u64>| {
        timings.insert(name, clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };

    let (p, alpha) = validate_order(q).in_module("gf")?;
    point_guard(q, opts).in_module("cli")?;
    let f = build_field(q, opts).in_module("gf")?;
    lap("field", &mut timings);

    let design = Design::build(&f).in_module("design")?;
    let params = design.verify_counts().in_module("design")?;
    let closed = closed_form_params(p, alpha).in_module("counting")?;
    let cf = &closed.params;
    for (what, want, got) in [("v", cf.v, params.v), ("b", cf.b, params.b), ("r", cf.r, params.r), ("k", cf.k, params.k)] {
        ensure_eq(what, want, got).in_module("design")?;
    }
    if params.lambda_values != cf.lambda_values {
        let want = cf.lambda_values.len() as u64;
        return Err(Error::mismatch("λ classes vs closed form", want, params.lambda_values.len() as u64)).in_module("design");
    }
    if let Some(path) = &opts.dump_design {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(Error::from).in_module("design")?);
        design.write_dump(&mut w).in_module("design")?;
    }
    lap("design", &mut timings);

    let n = design.num_points();
    let mode = check_mode(opts, n);
    let psl = orbital_coloring(design.generators(), n);
    let schurian_classes = psl.num_colors() - 1;
    ensure_eq("PSL orbital classes", (q - 3) / 2, schurian_classes as u64).in_module("scheme")?;
    let cor = orbit_count_pf(p, alpha).in_module("counting")?;
    let gens = full_group_generators(design.points()).in_module("pgroup")?;
    let full = orbital_coloring(&gens, n);
    let full_group_classes = full.num_colors() - 1;
    ensure_eq("full group orbital classes", cor.m_min, full_group_classes as u64).in_module("scheme")?;
    gpbibd_check(&design, &full).in_module("scheme")?;
    lap("orbital", &mut timings);

    let lambda = lambda_coloring(&design);
    let trace = wl_stabilize_with_group(&lambda, design.generators(), mode).in_module("wl")?;
    lap("wl", &mut timings);

    if !full.refines(trace.coloring()) {
        return Err(Error::RefinementViolation("full group orbitals do not refine the WL output".into())).in_module("wl");
    }
    let wl_classes = trace.classes();
    let flag = schurian_flag(wl_classes, full_group_classes).in_module("wl")?;
    let (class_lambdas, class_valencies) = class_summary(&design, &trace).in_module("scheme")?;
    let props = check_props(&trace.final_config);
    if props.symmetric && !props.commutative {
        return Err(Error::NotCoherent { color: 0, detail: "symmetric but not commutative".into() }).in_module("scheme");
    }
    let drg = if props.classes == 3 && props.symmetric {
        drg_analysis(&trace.final_config).map(|r| DrgSummary {
            diameter: 3,
            intersection_array: r.intersection_array,
            antipodal: r.antipodal,
            antipodal_class_size: r.antipodal_class_size,
            antipodal_classes: r.cover_of,
        })
    } else {
        None
    };
    if let Some(path) = &opts.dump_scheme {
        write_scheme_files(path, &trace).in_module("scheme")?;
    }
    lap("analysis", &mut timings);

    let flags = Flags {
        schurian_flag: flag,
        schurian_flag_conditional: true,
        commutative: props.commutative,
        symmetric: props.symmetric,
        homogeneous: props.homogeneous,
        degenerate: design.is_degenerate(),
    };
    let expected = expected_row(q).map(|row| {
        let obs = Observed {
            cor_classes: cor.m_min as u32,
            wl_classes,
            params: (params.v, params.b, params.r, params.k),
            class_lambdas: class_lambdas.clone(),
            non_schurian: flag == SchurianFlag::NonSchurian,
            commutative: props.commutative,
            antipodal_cover: drg.as_ref().filter(|d| d.antipodal).map(|d| (d.antipodal_class_size, d.antipodal_classes)),
        };
        compare(&row, &obs)
    });

    let report = AnalysisReport {
        q,
        p,
        alpha,
        params,
        schurian_classes,
        cor_classes: cor.m_min as u32,
        full_group_classes,
        wl_classes,
        wl_colors_per_round: trace.colors_per_round.clone(),
        class_lambdas,
        class_valencies,
        flags,
        drg,
        check_level: mode,
        expected,
        timings_ms: opts.timings.then_some(timings),
    };
    Ok(Pipeline { report, design, full, lambda, trace })
}

fn write_scheme_files(path: &std::path::Path, trace: &RefinementTrace) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    trace.coloring().write_to(&mut w)?;
    if let Some(t) = trace.final_config.tensor() {
        let mut tp = path.as_os_str().to_owned();
        tp.push(".tensor");
        let mut w = std::io::BufWriter::new(std::fs::File::create(PathBuf::from(tp))?);
        t.write_to(&mut w)?;
    }
    Ok(())
}

/// Field → design → orbital schemes → WL closure → flags.
pub fn cmd_analyze(q: u64, opts: &RunOptions) -> std::result::Result<AnalysisReport, Failure> {
    run_pipeline(q, opts).map(|p| p.report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: u64,
    /// "ok", "skipped" or "error"
    pub status: &'static str,
    pub report: Option<AnalysisReport>,
    pub error: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub max_q: u64,
    pub with_expected: bool,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    /// 0 when every attempted row succeeded; otherwise the exit code of
    /// the first failure, internal failures first.
    pub fn exit_code(&self) -> i32 {
        let codes: Vec<i32> = self.rows.iter().filter_map(|r| r.error.as_ref().map(Failure::exit_code)).collect();
        if codes.contains(&2) {
            2
        } else {
            codes.first().copied().unwrap_or(0)
        }
    }
}

/// One row per admissible q ≤ max_q; rows over the point limit are
/// skipped unless forced.
pub fn cmd_table(max_q: u64, with_expected: bool, opts: &RunOptions) -> TableReport {
    let rows = admissible_orders(max_q.min(MAX_FIELD_ORDER))
        .into_iter()
        .map(|q| {
            if point_guard(q, opts).is_err() {
                return TableRow { q, status: "skipped", report: None, error: None };
            }
            match cmd_analyze(q, opts) {
                Ok(r) => TableRow { q, status: "ok", report: Some(r), error: None },
                Err(e) => TableRow { q, status: "error", report: None, error: Some(e) },
            }
        })
        .collect();
    TableReport { max_q, with_expected, rows }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub checks: Vec<Check>,
    pub report: Option<AnalysisReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn record(&mut self, module: &'static str, name: &str, r: Result<String>) {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.0.push(Check { module, name: name.into(), passed, detail });
    }

    fn expect(&mut self, module: &'static str, name: &str, ok: bool, detail: String) {
        self.0.push(Check { module, name: name.into(), passed: ok, detail });
    }
}

/// Dense WL is only rerun for cross-checking up to this many points.
const DENSE_CROSS_CHECK_MAX_POINTS: usize = 160;

/// Runs every invariant check that is feasible for this q.
pub fn cmd_verify(q: u64, opts: &RunOptions) -> std::result::Result<VerifyReport, Failure> {
    let (p, alpha) = validate_order(q).in_module("gf")?;
    point_guard(q, opts).in_module("cli")?;
    let pipe = match run_pipeline(q, opts) {
        Ok(pipe) => pipe,
        Err(e) if e.error.is_internal() => {
            let checks = vec![Check { module: e.module, name: "pipeline".into(), passed: false, detail: e.message }];
            return Ok(VerifyReport { q, checks, report: None });
        }
        Err(e) => return Err(e),
    };
    let d = &pipe.design;
    let f = d.field();
    let pts = d.points();
    let n = d.num_points();
    let mut c = Checks(Vec::new());

    let i = f.fourth_root().in_module("gf")?;
    c.expect("gf", "i² = −1", f.mul(i, i) == f.neg(f.one()), format!("i = {}", f.display(i)));
    let om = f.order(f.omega()).in_module("gf")?;
    c.expect("gf", "ω has order q − 1", om == q - 1, format!("order {om}"));
    if p == 5 {
        let holds = f.is_char5_identity().in_module("gf")?;
        c.expect("gf", "1 + i = ±i", holds, String::new());
    }

    let orbit = point_orbit(d.generators(), 0).len();
    c.expect("pgroup", "PSL(2,q) is transitive on P", orbit == n, format!("orbit of size {orbit}"));
    c.expect("pgroup", "2α generators", d.generators().len() == 2 * alpha as usize, format!("{}", d.generators().len()));
    c.record(
        "pgroup",
        "point stabilizer",
        pts.point_stabilizer_report().and_then(|r| {
            ensure_eq("point stabilizer order", 2 * q, r.order)?;
            if r.shape_verified {
                Ok(format!("order {}", r.order))
            } else {
                Err(Error::SymmetryContract("point stabilizer shape".into()))
            }
        }),
    );
    c.record("pgroup", "σ contract", pts.sigma_perm().map(|_| "σ fixes T and 4-cycles the equator".into()));

    c.record("design", "parameter counts", d.verify_counts().map(|pr| format!("v={} b={} r={} k={}", pr.v, pr.b, pr.r, pr.k)));
    if p != 5 {
        c.record(
            "design",
            "edge/diagonal census",
            d.edge_diagonal_census().map(|e| format!("{} edges, {} diagonals", e.edges, e.diagonals)),
        );
    }
    c.record(
        "design",
        "block stabilizer",
        d.block_stabilizer_report().and_then(|r| match r.listed_reps_verified {
            Some(false) => Err(Error::SymmetryContract("listed stabilizer elements".into())),
            _ => Ok(format!("order {}", r.order)),
        }),
    );
    let frob = pts.frobenius_perm();
    let mut blocks: Vec<[u32; 6]> = d.blocks().iter().map(|b| b.points).collect();
    blocks.sort_unstable();
    let frob_ok = d.blocks().iter().all(|b| {
        let mut img: Vec<u32> = b.points.iter().map(|&x| frob.apply(x)).collect();
        img.sort_unstable();
        blocks.binary_search(&<[u32; 6]>::try_from(img).unwrap()).is_ok()
    });
    c.expect("design", "Frobenius preserves the block set", frob_ok, String::new());

    c.record(
        "counting",
        "orbit count formula = direct count",
        orbit_count_pf(p, alpha).and_then(|pf| {
            let direct = orbit_count_direct(f)?;
            ensure_eq("|P/F|", pf.count, direct)?;
            Ok(format!("|P/F| = {direct}"))
        }),
    );

    let mode = check_mode(opts, n);
    let psl = orbital_coloring(d.generators(), n);
    c.record("scheme", "PSL orbital scheme is coherent", intersection_tensor(&psl, mode).map(|cc| format!("rank {}", cc.rank())));
    c.record("scheme", "λ constant on PSL orbitals", gpbibd_check(d, &psl).map(|_| String::new()));
    c.record("scheme", "λ constant on WL classes", gpbibd_check(d, pipe.trace.coloring()).map(|_| String::new()));
    c.expect("scheme", "PSL orbitals refine the full group orbitals", psl.refines(&pipe.full), String::new());

    let wl = &pipe.trace;
    c.record(
        "wl",
        "WL output is coherent",
        intersection_tensor(wl.coloring(), mode).map(|_| format!("{:?} check", mode)),
    );
    c.record(
        "wl",
        "fixpoint idempotence",
        wl_stabilize_with_group(wl.coloring(), d.generators(), mode).and_then(|again| {
            if again.rounds == 1 && again.coloring() == wl.coloring() {
                Ok("1 round".into())
            } else {
                Err(Error::RefinementViolation(format!("{} more rounds", again.rounds)))
            }
        }),
    );
    c.expect("wl", "WL output refines the λ-coloring", wl.coloring().refines(&pipe.lambda), String::new());
    c.expect("wl", "full group orbitals refine the WL output", pipe.full.refines(wl.coloring()), String::new());
    if n <= DENSE_CROSS_CHECK_MAX_POINTS {
        c.record(
            "wl",
            "dense and group engines agree",
            wl_stabilize(&pipe.lambda, mode).and_then(|dense| {
                if dense.coloring() == wl.coloring() {
                    Ok(String::new())
                } else {
                    Err(Error::RefinementViolation("engines disagree".into()))
                }
            }),
        );
    }
    let r = &pipe.report;
    if let Some(m) = &r.expected {
        c.expect("cli", "published row", m.all_required_match(), format!("{m:?}"));
    }
    Ok(VerifyReport { q, checks: c.0, report: Some(pipe.report) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizeReport {
    pub n: usize,
    pub input_colors: u32,
    pub rounds: u32,
    pub colors_per_round: Vec<u32>,
    pub rank: u32,
    pub classes: u32,
    pub homogeneous: bool,
    pub symmetric: bool,
    pub commutative: bool,
    pub check_level: CheckMode,
}

/// WL closure of a coloring read in the scheme export format.
pub fn cmd_wl_stabilize(input: &str, opts: &RunOptions) -> std::result::Result<StabilizeReport, Failure> {
    let c = PairColoring::parse(input).in_module("scheme")?;
    if c.n() > opts.max_points && !opts.force {
        return Err(Error::PointLimit { points: c.n(), limit: opts.max_points }).in_module("cli");
    }
    let mode = check_mode(opts, c.n());
    let trace = wl_stabilize(&c, mode).in_module("wl")?;
    if let Some(path) = &opts.dump_scheme {
        write_scheme_files(path, &trace).in_module("scheme")?;
    }
    let props = check_props(&trace.final_config);
    Ok(StabilizeReport {
        n: c.n(),
        input_colors: c.num_colors(),
        rounds: trace.rounds,
        colors_per_round: trace.colors_per_round.clone(),
        rank: props.rank,
        classes: props.classes,
        homogeneous: props.homogeneous,
        symmetric: props.symmetric,
        commutative: props.commutative,
        check_level: mode,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn flag_name(f: SchurianFlag) -> &'static str {
    match f {
        SchurianFlag::SchurianConsistent => "SchurianConsistent",
        SchurianFlag::NonSchurian => "NonSchurian",
    }
}

fn mark(m: Option<bool>) -> &'static str {
    match m {
        Some(true) => "✓",
        Some(false) => "✗",
        None => "-",
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

const ROW_HEADER: [&str; 14] = [
    "q", "v", "b", "r", "k", "schurian_classes", "cor_classes", "wl_classes", "lambdas", "schurian_flag", "commutative",
    "symmetric", "degenerate", "drg",
];
const EXPECTED_HEADER: [&str; 6] = ["exp_cor", "exp_smallest", "exp_params", "exp_lambdas", "exp_flags", "note"];

fn row_cells(r: &AnalysisReport) -> Vec<String> {
    let drg = match &r.drg {
        Some(d) => format!("{{{}}}{}", join(&d.intersection_array), if d.antipodal { " antipodal" } else { "" }),
        None => "-".into(),
    };
    vec![
        r.q.to_string(),
        r.params.v.to_string(),
        r.params.b.to_string(),
        r.params.r.to_string(),
        r.params.k.to_string(),
        r.schurian_classes.to_string(),
        r.cor_classes.to_string(),
        r.wl_classes.to_string(),
        join(&r.class_lambdas),
        flag_name(r.flags.schurian_flag).into(),
        r.flags.commutative.to_string(),
        r.flags.symmetric.to_string(),
        r.flags.degenerate.to_string(),
        drg,
    ]
}

fn expected_cells(r: &AnalysisReport) -> Vec<String> {
    match &r.expected {
        None => vec!["-".into(); EXPECTED_HEADER.len()],
        Some(m) => {
            let flags = [m.schurian, m.non_commutative, m.antipodal_drg];
            let flags_ok = if flags.iter().all(Option::is_none) { None } else { Some(flags.iter().all(|f| f.unwrap_or(true))) };
            vec![
                mark(m.cor_classes).into(),
                mark(m.smallest_classes).into(),
                mark(m.params).into(),
                mark(m.lambdas).into(),
                mark(flags_ok).into(),
                m.annotation.clone().unwrap_or_else(|| "-".into()),
            ]
        }
    }
}

fn render_grid(rows: &[Vec<String>], tsv: bool) -> String {
    let mut out = String::new();
    if tsv {
        for r in rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        return out;
    }
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|k| rows.iter().filter_map(|r| r.get(k)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(k, s)| if k + 1 == r.len() { s.clone() } else { format!("{s:<w$}", w = widths[k]) })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_analysis(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Tsv => {
            let mut header: Vec<String> = ROW_HEADER.iter().map(|s| s.to_string()).collect();
            let mut cells = row_cells(r);
            if r.expected.is_some() {
                header.extend(EXPECTED_HEADER.iter().map(|s| s.to_string()));
                cells.extend(expected_cells(r));
            }
            render_grid(&[header, cells], true)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "q = {} = {}^{}", r.q, r.p, r.alpha);
            let _ = writeln!(s, "parameters (v, b, r, k) = ({}, {}, {}, {})", r.params.v, r.params.b, r.params.r, r.params.k);
            let _ = writeln!(s, "PSL(2,q) orbital classes: {}", r.schurian_classes);
            let _ = writeln!(s, "full group orbital classes: {} (formula {})", r.full_group_classes, r.cor_classes);
            let _ = writeln!(s, "WL classes: {} after rounds {:?}", r.wl_classes, r.wl_colors_per_round);
            let _ = writeln!(s, "class λ: {}", join(&r.class_lambdas));
            let _ = writeln!(s, "class valencies: {}", join(&r.class_valencies));
            let _ = writeln!(
                s,
                "flags: {} (conditional), commutative={}, symmetric={}, homogeneous={}, degenerate={}",
                flag_name(r.flags.schurian_flag),
                r.flags.commutative,
                r.flags.symmetric,
                r.flags.homogeneous,
                r.flags.degenerate
            );
            if let Some(d) = &r.drg {
                let _ = writeln!(
                    s,
                    "distance-regular, diameter {}: {{{}; {}}}, antipodal={}, classes of size {} ({} classes)",
                    d.diameter,
                    join(&d.intersection_array[..3]),
                    join(&d.intersection_array[3..]),
                    d.antipodal,
                    d.antipodal_class_size,
                    d.antipodal_classes
                );
            }
            if let Some(m) = &r.expected {
                let _ = writeln!(
                    s,
                    "published row: cor {} smallest {} params {} λ {} flags {}{}",
                    mark(m.cor_classes),
                    mark(m.smallest_classes),
                    mark(m.params),
                    mark(m.lambdas),
                    mark(m.schurian.map(|a| a && m.non_commutative.unwrap_or(true) && m.antipodal_drg.unwrap_or(true))),
                    m.annotation.as_ref().map(|a| format!(" ({a})")).unwrap_or_default()
                );
            }
            if let Some(t) = &r.timings_ms {
                let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
                let _ = writeln!(s, "timings: {}", parts.join(", "));
            }
            s
        }
    }
}

pub fn render_table(t: &TableReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(t);
    }
    let mut header: Vec<String> = ROW_HEADER.iter().map(|s| s.to_string()).collect();
    if t.with_expected {
        header.extend(EXPECTED_HEADER.iter().map(|s| s.to_string()));
    }
    let mut rows = vec![header];
    for row in &t.rows {
        match (&row.report, &row.error) {
            (Some(r), _) => {
                let mut cells = row_cells(r);
                if t.with_expected {
                    cells.extend(expected_cells(r));
                }
                rows.push(cells);
            }
            (None, Some(e)) => rows.push(vec![row.q.to_string(), format!("error: {e}")]),
            (None, None) => rows.push(vec![row.q.to_string(), "skipped (over --max-points; use --force)".into()]),
        }
    }
    render_grid(&rows, format == Format::Tsv)
}

pub fn render_verify(v: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => to_json(v),
        Format::Tsv | Format::Text => {
            let tsv = format == Format::Tsv;
            let mut rows = vec![vec!["module".to_string(), "check".into(), "result".into(), "detail".into()]];
            for c in &v.checks {
                rows.push(vec![c.module.into(), c.name.clone(), if c.passed { "pass" } else { "FAIL" }.into(), c.detail.clone()]);
            }
            let mut s = render_grid(&rows, tsv);
            if !tsv {
                let passed = v.checks.iter().filter(|c| c.passed).count();
                let _ = writeln!(s, "{passed}/{} checks passed for q = {}", v.checks.len(), v.q);
            }
            s
        }
    }
}

pub fn render_stabilize(r: &StabilizeReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Tsv => render_grid(
            &[
                ["n", "input_colors", "rounds", "rank", "classes", "homogeneous", "symmetric", "commutative"]
                    .map(String::from)
                    .to_vec(),
                vec![
                    r.n.to_string(),
                    r.input_colors.to_string(),
                    r.rounds.to_string(),
                    r.rank.to_string(),
                    r.classes.to_string(),
                    r.homogeneous.to_string(),
                    r.symmetric.to_string(),
                    r.commutative.to_string(),
                ],
            ],
            true,
        ),
        Format::Text => format!(
            "{} points, {} input colors → rank {} ({} classes) after rounds {:?}\nhomogeneous={} symmetric={} commutative={}\n",
            r.n, r.input_colors, r.rank, r.classes, r.colors_per_round, r.homogeneous, r.symmetric, r.commutative
        ),
    }
}
