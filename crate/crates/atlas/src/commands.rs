use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use systolic_core::distance_bounds::{self, BoundKind, BoundReport};
use systolic_core::holonomy::{enumerate_geodesics, HolonomyRep};
use systolic_core::pants_graph::{self, TrivalentTree};
use systolic_core::surface_models::{self, ChainSpec, RotFamilySpec};
use systolic_core::wp_bounds::{self, WpConstants};
use systolic_core::HypLength;

use crate::cli::*;
use crate::error::{compute, usage, AtlasError};
use crate::format::{fmt15, round15};
use crate::svg;

pub type Result<T> = std::result::Result<T, AtlasError>;

/// Environment variable capping worker threads.
pub const THREADS_VAR: &str = "SYSTOLIC_ATLAS_THREADS";

/// Runs one command. Primary output goes to `out` unless the command has an
/// `--out` path; summaries go to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    thread_cap()?;
    match cli.command {
        Command::Tree(a) => cmd_tree(&a, out),
        Command::Systole(a) => cmd_systole(&a, out, err),
        Command::Bounds(a) => cmd_bounds(&a, out),
        Command::Thresholds(a) => cmd_thresholds(&a, out),
        Command::Constants(a) => cmd_constants(&a, out),
        Command::PlotDilatation(a) => cmd_plot(&a, out),
        Command::Golden(a) => cmd_golden(&a, out),
    }
}

/// Validated value of the thread cap. Enumeration runs on one thread, so
/// the cap can only be met, but a malformed value is still rejected.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(usage(format!("{THREADS_VAR}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(usage(format!("{THREADS_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

fn emit(path: &Option<PathBuf>, stdout: &mut dyn Write, body: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_file(p, body),
        None => {
            stdout.write_all(body)?;
            Ok(stdout.flush()?)
        }
    }
}

fn write_file(path: &Path, body: &[u8]) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(body)?;
    Ok(f.flush()?)
}

/// Rounds every non-integer number to 15 significant digits.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round15(x))) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    let mut body = serde_json::to_vec_pretty(&v)?;
    body.push(b'\n');
    Ok(body)
}

fn finite_positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

// ---------------------------------------------------------------- tree

#[derive(Serialize)]
struct TreeStats {
    vertices: usize,
    leaves: usize,
    edges: usize,
    center_to_leaf: usize,
    pieces: usize,
    surface_genus: usize,
}

#[derive(Serialize)]
struct TreeOutput {
    n: Option<usize>,
    genus: usize,
    center: usize,
    stats: TreeStats,
    adjacency: Vec<Vec<usize>>,
}

fn cmd_tree(a: &TreeArgs, out: &mut dyn Write) -> Result<()> {
    let tree: TrivalentTree = match (a.n, a.genus) {
        (Some(0), _) => return Err(usage("--n must be at least 1")),
        (Some(n), _) if n > 20 => return Err(usage("--n above 20 is too large")),
        (Some(n), _) => pants_graph::build_joined_tree(n).map_err(compute)?,
        (None, Some(g)) if g < 3 => return Err(usage("--genus must be at least 3")),
        (None, Some(g)) if g > 3 << 19 => return Err(usage("--genus is too large")),
        (None, Some(g)) => pants_graph::build_tree_for_genus(g).map_err(compute)?,
        (None, None) => return Err(usage("one of --n or --genus is required")),
    };
    tree.validate().map_err(compute)?;
    let surface = pants_graph::surface_from_tree(&tree).map_err(compute)?;
    let leaves = tree.leaves().len();
    let adjacency = (0..tree.vertex_count()).map(|v| tree.neighbors(v).to_vec()).collect();
    let output = TreeOutput {
        n: a.n,
        genus: leaves,
        center: tree.center(),
        stats: TreeStats {
            vertices: tree.vertex_count(),
            leaves,
            edges: tree.edges().len(),
            center_to_leaf: tree.center_to_leaf(),
            pieces: surface.piece_count(),
            surface_genus: surface.genus(),
        },
        adjacency,
    };
    emit(&a.out, out, &to_json(&output)?)
}

// ------------------------------------------------------------- systole

#[derive(Serialize)]
struct GeodesicRow {
    length: f64,
    word: String,
}

#[derive(Serialize)]
struct SystoleOutput {
    family: String,
    genus: usize,
    cutoff: f64,
    parameters: BTreeMap<String, f64>,
    systole: f64,
    count: usize,
    geodesics: Vec<GeodesicRow>,
}

fn cmd_systole(a: &SystoleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if a.budget == 0 {
        return Err(usage("--budget must be positive"));
    }
    let mut parameters = BTreeMap::new();
    let check_cutoff = |c: Option<f64>| -> Result<f64> {
        let c = c.ok_or_else(|| usage("--cutoff is required for this family"))?;
        finite_positive("cutoff", c)
    };
    let (graph, cutoff, family) = match a.family {
        Family::Tree => {
            if a.genus < 3 {
                return Err(usage("the tree family needs --genus at least 3"));
            }
            let cutoff = check_cutoff(a.cutoff)?;
            let tree = pants_graph::build_tree_for_genus(a.genus).map_err(compute)?;
            (pants_graph::surface_from_tree(&tree).map_err(compute)?, cutoff, "tree")
        }
        Family::Chain => {
            if a.genus < 3 {
                return Err(usage("the chain family needs --genus at least 3"));
            }
            let cutoff = check_cutoff(a.cutoff)?;
            let spec = ChainSpec::new(a.genus, finite_positive("cuff", a.cuff)?).map_err(|e| usage(e.to_string()))?;
            parameters.insert("cuff".into(), a.cuff);
            (spec.graph().map_err(compute)?, cutoff, "chain")
        }
        Family::Rot => {
            if a.genus < 2 {
                return Err(usage("the rotation family needs --genus at least 2"));
            }
            if let Some(c) = a.cutoff {
                finite_positive("cutoff", c)?;
            }
            let (c, t) = match (a.param, a.c) {
                (Some(RotParam::C1), _) => (surface_models::solve_c1(a.genus).map_err(compute)?.get(), 0.0),
                (Some(RotParam::C2), _) => {
                    let s = surface_models::solve_c2_t2(a.genus).map_err(compute)?;
                    (s.c2, s.t2)
                }
                (None, Some(c)) => {
                    let spec = RotFamilySpec::new(a.genus, c, a.t.unwrap_or(0.0)).map_err(|e| usage(e.to_string()))?;
                    (spec.c, spec.t)
                }
                (None, None) => return Err(usage("the rotation family needs --param or --c")),
            };
            parameters.insert("c".into(), c);
            parameters.insert("t".into(), t);
            let graph = surface_models::rot_family_graph(a.genus, c, t).map_err(compute)?;
            (graph, a.cutoff.unwrap_or(c + 0.1), "rot")
        }
    };
    let rep = HolonomyRep::new(&graph).map_err(compute)?;
    let records = enumerate_geodesics(&rep, cutoff, a.budget).map_err(compute)?;
    let first = records
        .first()
        .map(|r| r.length)
        .ok_or_else(|| AtlasError::Compute(format!("no closed geodesic of length at most {cutoff}")))?;
    // Records within 1e-9 of the first are ordered by word, not length.
    let run: Vec<f64> = records.iter().map(|r| r.length).take_while(|&l| l - first <= 1e-9).collect();
    let systole = run.iter().copied().fold(first, f64::min);
    let count = run.len();
    let rows: Vec<GeodesicRow> =
        records.into_iter().map(|r| GeodesicRow { length: r.length, word: r.word.to_string() }).collect();
    let body = match a.format {
        Format::Json => to_json(&SystoleOutput {
            family: family.into(),
            genus: a.genus,
            cutoff,
            parameters,
            systole,
            count,
            geodesics: rows,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["length", "word"])?;
            for r in &rows {
                w.write_record([fmt15(r.length), r.word.clone()])?;
            }
            w.into_inner().map_err(|e| compute(e.error()))?
        }
    };
    emit(&a.out, out, &body)?;
    writeln!(err, "systole {} count {}", fmt15(systole), count)?;
    Ok(())
}

// -------------------------------------------------------------- bounds

/// One row of `bounds`: a report, or the error that replaced it.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub name: String,
    pub g: usize,
    pub value: Option<f64>,
    pub kind: Option<BoundKind>,
    pub vacuous: bool,
    pub source: String,
    pub details: BTreeMap<String, f64>,
    pub error: Option<String>,
}

impl BoundRow {
    fn from_report(g: usize, r: BoundReport) -> Self {
        Self {
            name: r.name,
            g,
            value: Some(r.value),
            kind: Some(r.kind),
            vacuous: r.vacuous,
            source: r.source,
            details: r.extra,
            error: None,
        }
    }

    fn failed(name: &str, g: usize, e: String) -> Self {
        Self {
            name: name.into(),
            g,
            value: None,
            kind: None,
            vacuous: false,
            source: String::new(),
            details: BTreeMap::new(),
            error: Some(e),
        }
    }

    fn detail(mut self, key: &str, v: f64) -> Self {
        self.details.insert(key.into(), v);
        self
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").ok_or_else(|| usage(format!("range {s:?} is not of the form a..b")))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad genus {x:?} in range {s:?}")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

fn bound_row(which: Which, g: usize, consts: &WpConstants, mp_b: Option<f64>, cuff: HypLength) -> BoundRow {
    let name = match which {
        Which::Hole => "hole",
        Which::Small => "small_total",
        Which::Large => "large",
        Which::Wp => "wp",
        Which::Teich => "teich",
    };
    let row = || -> std::result::Result<BoundRow, String> {
        let s = |e: &dyn std::fmt::Display| e.to_string();
        Ok(match which {
            Which::Hole => {
                let b = distance_bounds::thm_hole_bound(g).map_err(|e| s(&e))?;
                match b.exact {
                    Some(exact) => BoundRow::from_report(g, exact).detail("closed_form", b.closed_form.value),
                    None => BoundRow::from_report(g, b.closed_form),
                }
            }
            Which::Small => {
                let r = distance_bounds::dist_small_total(g).map_err(|e| s(&e))?;
                BoundRow::from_report(g, r.total)
                    .detail("c1", r.c1)
                    .detail("c2", r.solution.c2)
                    .detail("t2", r.solution.t2)
                    .detail("theta", r.mid.inputs["theta"])
            }
            Which::Large => {
                let r = distance_bounds::dist_large_lower_with(g, cuff).map_err(|e| s(&e))?;
                let mut row = BoundRow::from_report(g, r.closed_form).detail("recomputed", r.recomputed.value);
                row.details.extend(r.recomputed.extra);
                row
            }
            Which::Wp => {
                let lg = (g as f64).ln();
                let value = wp_bounds::recomputed_wp_threshold(lg, consts).map_err(|e| s(&e))?;
                let mut row = BoundRow::from_report(
                    g,
                    BoundReport {
                        name: "wp".into(),
                        value,
                        kind: BoundKind::Lower,
                        vacuous: value <= 0.0,
                        inputs: BTreeMap::new(),
                        extra: BTreeMap::new(),
                        source: "elimination of sys between the Lipschitz estimates".into(),
                    },
                );
                row = row
                    .detail("rounded", wp_bounds::rounded_wp_threshold(lg).map_err(|e| s(&e))?)
                    .detail("q", wp_bounds::inj_profile(lg, consts).map_err(|e| s(&e))?)
                    .detail("epsilon", consts.eps);
                row
            }
            Which::Teich => {
                let lg = (g as f64).ln();
                let ll = lg.ln();
                let margin = wp_bounds::teich_margin(lg).map_err(|e| s(&e))?;
                let threshold = 0.2 * ll;
                let mut row = BoundRow::from_report(
                    g,
                    BoundReport {
                        name: "teich".into(),
                        value: margin + threshold,
                        kind: BoundKind::Lower,
                        vacuous: margin + threshold <= 0.0,
                        inputs: BTreeMap::new(),
                        extra: BTreeMap::new(),
                        source: "1/4 log((log g - 2 log log g) / (1/5 log log g))".into(),
                    },
                )
                .detail("threshold", threshold)
                .detail("margin", margin);
                if let Some(b) = mp_b {
                    row = row.detail("mp_tail", wp_bounds::mp_tail(threshold, b).map_err(|e| s(&e))?);
                }
                row
            }
        })
    };
    row().unwrap_or_else(|e| BoundRow::failed(name, g, e))
}

fn min_genus(which: Which) -> usize {
    match which {
        Which::Hole | Which::Wp | Which::Teich => 3,
        Which::Small => 2,
        Which::Large => 13,
    }
}

pub fn bound_rows_csv(rows: &[BoundRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "g", "value", "kind", "vacuous", "source", "details", "error"])?;
    for r in rows {
        let details: Vec<String> = r.details.iter().map(|(k, v)| format!("{k}={}", fmt15(*v))).collect();
        w.write_record([
            r.name.clone(),
            r.g.to_string(),
            r.value.map(fmt15).unwrap_or_default(),
            r.kind.map(|k| k.to_string()).unwrap_or_default(),
            r.vacuous.to_string(),
            r.source.clone(),
            details.join(";"),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.into_inner().map_err(|e| compute(e.error()))
}

fn cmd_bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<()> {
    let (lo, hi) = parse_range(&a.genus_range)?;
    let min = min_genus(a.which);
    if lo < min {
        return Err(usage(format!("this bound needs genus at least {min}, range starts at {lo}")));
    }
    if hi - lo > 1_000_000 {
        return Err(usage("genus range is too long"));
    }
    let consts = WpConstants::new(0.5492, 0.3884, a.epsilon).map_err(|e| usage(e.to_string()))?;
    if let Some(b) = a.mp_b {
        finite_positive("mp-B", b)?;
    }
    let cuff = HypLength::new(finite_positive("cuff", a.cuff)?).map_err(|e| usage(e.to_string()))?;
    let rows: Vec<BoundRow> = (lo..=hi).map(|g| bound_row(a.which, g, &consts, a.mp_b, cuff)).collect();
    if rows.iter().all(|r| r.error.is_some()) {
        let first = rows[0].error.clone().unwrap_or_default();
        return Err(AtlasError::Compute(format!("every row failed; first error: {first}")));
    }
    let body = match a.format {
        Format::Csv => bound_rows_csv(&rows)?,
        Format::Json => to_json(&rows)?,
    };
    emit(&a.out, out, &body)
}

// ---------------------------------------------------------- thresholds

fn cmd_thresholds(a: &ThresholdArgs, out: &mut dyn Write) -> Result<()> {
    let (lo, hi) = (finite_positive("log-g-min", a.log_g_min)?, finite_positive("log-g-max", a.log_g_max)?);
    if lo <= 1.0 || hi < lo {
        return Err(usage("need 1 < --log-g-min <= --log-g-max"));
    }
    if a.points < 2 || a.points > 100_000 {
        return Err(usage("--points must be between 2 and 100000"));
    }
    let consts = WpConstants::new(0.5492, 0.3884, a.epsilon).map_err(|e| usage(e.to_string()))?;
    if let Some(b) = a.mp_b {
        finite_positive("mp-B", b)?;
    }
    let mut header = vec!["log_g", "teich_threshold", "teich_margin", "wp_rounded", "wp_recomputed", "epsilon"];
    if a.mp_b.is_some() {
        header.push("mp_tail");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for i in 0..a.points {
        let lg = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (a.points - 1) as f64).exp();
        let threshold = 0.2 * lg.ln();
        let mut rec = vec![
            fmt15(lg),
            fmt15(threshold),
            fmt15(wp_bounds::teich_margin(lg).map_err(compute)?),
            fmt15(wp_bounds::rounded_wp_threshold(lg).map_err(compute)?),
            fmt15(wp_bounds::recomputed_wp_threshold(lg, &consts).map_err(compute)?),
            fmt15(consts.eps),
        ];
        if let Some(b) = a.mp_b {
            rec.push(fmt15(wp_bounds::mp_tail(threshold, b).map_err(compute)?));
        }
        w.write_record(&rec)?;
    }
    emit(&a.out, out, &w.into_inner().map_err(|e| compute(e.error()))?)
}

// ----------------------------------------------------------- constants

fn cmd_constants(a: &ConstantsArgs, out: &mut dyn Write) -> Result<()> {
    if a.max_genus < 13 || a.max_genus > 10_000_000 {
        return Err(usage("--max-genus must be between 13 and 10000000"));
    }
    let consts = WpConstants::new(0.5492, 0.3884, a.epsilon).map_err(|e| usage(e.to_string()))?;
    let cuff = HypLength::new(finite_positive("cuff", a.cuff)?).map_err(|e| usage(e.to_string()))?;
    let (closed, recomputed) = distance_bounds::large_crossovers(a.max_genus, cuff).map_err(compute)?;
    let teich = wp_bounds::teich_threshold_crossover(1e6).map_err(compute)?;
    let (fit_rounded, _) = wp_bounds::fit_sqrt_log(wp_bounds::rounded_wp_threshold, 1e3, 1e6, 64).map_err(compute)?;
    let (fit_recomputed, _) =
        wp_bounds::fit_sqrt_log(|lg| wp_bounds::recomputed_wp_threshold(lg, &consts), 1e3, 1e6, 64).map_err(compute)?;
    let opt = |v: Option<usize>| v.map(|g| g.to_string()).unwrap_or_else(|| "none".into());
    let rows = [
        ("large_closed_form_crossover_g", opt(closed)),
        ("large_recomputed_crossover_g", opt(recomputed)),
        ("teich_crossover_log_g", fmt15(teich)),
        ("wp_coefficient_rounded", fmt15(0.6521)),
        ("wp_coefficient_recomputed", fmt15(wp_bounds::recomputed_coefficient(&consts))),
        ("wp_fit_rounded", fmt15(fit_rounded)),
        ("wp_fit_recomputed", fmt15(fit_recomputed)),
        ("epsilon", fmt15(consts.eps)),
        ("cuff", fmt15(cuff.get())),
    ];
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v.as_str()])?;
    }
    emit(&a.out, out, &w.into_inner().map_err(|e| compute(e.error()))?)
}

// ---------------------------------------------------------------- plot

fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> Result<()> {
    if a.genus < 2 {
        return Err(usage("--genus must be at least 2"));
    }
    if a.points < 2 || a.points > 1_000_000 {
        return Err(usage("--points must be between 2 and 1000000"));
    }
    if let Some(t) = a.t2 {
        if !(t.is_finite() && t >= 0.0) {
            return Err(usage(format!("--t2 must be non-negative, got {t}")));
        }
    }
    let sol = surface_models::solve_c2_t2(a.genus).map_err(compute)?;
    let t2 = a.t2.unwrap_or(sol.t2);
    let theta = distance_bounds::strip_angle(a.genus, sol.c2).map_err(compute)?;
    let samples = distance_bounds::dilatation_profile(t2, theta, a.points).map_err(compute)?;
    let (phi_max, k_max) =
        distance_bounds::dilatation_sup(t2, theta, distance_bounds::DILATATION_GRID).map_err(compute)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["phi", "K"])?;
    for (phi, k) in &samples {
        w.write_record([fmt15(*phi), fmt15(*k)])?;
    }
    write_file(&a.out.with_extension("csv"), &w.into_inner().map_err(|e| compute(e.error()))?)?;
    let title = format!("genus {}, t2 = {}, theta = {}", a.genus, fmt15(t2), fmt15(theta.get()));
    write_file(&a.out, svg::dilatation_plot(&samples, (phi_max, k_max), &title).as_bytes())?;

    let mut s = csv::Writer::from_writer(Vec::new());
    s.write_record(["genus", "c2", "t2", "theta", "phi_max", "k_max", "bound"])?;
    s.write_record([
        a.genus.to_string(),
        fmt15(sol.c2),
        fmt15(t2),
        fmt15(theta.get()),
        fmt15(phi_max),
        fmt15(k_max),
        fmt15(0.5 * k_max.ln()),
    ])?;
    emit(&None, out, &s.into_inner().map_err(|e| compute(e.error()))?)
}

// -------------------------------------------------------------- golden

/// Reference values of the rotation family for one genus.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct GoldenRow {
    pub g: usize,
    pub c1: f64,
    pub c2: f64,
    pub t2: f64,
    pub residual_alpha: f64,
    pub residual_beta: f64,
    pub theta: f64,
    pub s1_mid: f64,
    pub twist: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Golden {
    pub version: u32,
    pub rows: Vec<GoldenRow>,
}

pub fn golden_row(g: usize) -> Result<GoldenRow> {
    let r = distance_bounds::dist_small_total(g).map_err(compute)?;
    Ok(GoldenRow {
        g,
        c1: r.c1,
        c2: r.solution.c2,
        t2: r.solution.t2,
        residual_alpha: r.solution.residual_alpha,
        residual_beta: r.solution.residual_beta,
        theta: r.mid.inputs["theta"],
        s1_mid: r.mid.value,
        twist: r.twist.value,
        total: r.total.value,
    })
}

fn cmd_golden(a: &GoldenArgs, out: &mut dyn Write) -> Result<()> {
    if a.max_genus < 2 || a.max_genus > 1000 {
        return Err(usage("--max-genus must be between 2 and 1000"));
    }
    let rows = (2..=a.max_genus).map(golden_row).collect::<Result<Vec<_>>>()?;
    emit(&a.out, out, &to_json(&Golden { version: 1, rows })?)
}
