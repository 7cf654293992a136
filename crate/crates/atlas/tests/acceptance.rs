//! Acceptance checks. Each criterion prints one PASS or FAIL line; the
//! process exits non-zero if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use systolic_core::distance_bounds::{
    diam_upper_s1, dilatation_profile, dist_large_lower, dist_small_total, filling_lower_bound, hole_bound_exact,
    large_crossovers, phi_and_derivative, strip_angle,
};
use systolic_core::holonomy::{enumerate_geodesics, systole_bruteforce, HolonomyRep, DEFAULT_BUDGET};
use systolic_core::hyp_trig::hexagon_side;
use systolic_core::pants_graph::{build_tree_for_genus, surface_from_tree};
use systolic_core::surface_models::{
    chain_seam, curve_length, rot_family_graph, solve_c1, solve_c2_t2, ChainSpec, NamedCurve, RotFamilySpec,
};
use systolic_core::wp_bounds::{
    constraint_pair, eliminate_sys, fit_sqrt_log, recomputed_coefficient, recomputed_wp_threshold,
    rounded_wp_threshold, WpConstants,
};
use systolic_core::{AngleRad, HypLength};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn len(v: f64) -> HypLength {
    HypLength::new(v).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn hexagon_and_tree_systole() -> Check {
    let a = 2f64.acosh();
    let side = hexagon_side(len(a), len(a), len(a)).map_err(|e| e.to_string())?.get();
    ensure((side - a).abs() < 1e-12, || format!("hexagon residual {:e}", side - a))?;
    let mut notes = vec![format!("hexagon residual {:.1e}", (side - a).abs())];
    for g in [3, 6] {
        let start = Instant::now();
        let graph = surface_from_tree(&build_tree_for_genus(g).unwrap()).unwrap();
        let rep = HolonomyRep::new(&graph).map_err(|e| e.to_string())?;
        let (sys, count) = systole_bruteforce(&rep, 1.4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure((sys - a).abs() < 1e-9, || format!("g {g}: systole {sys}"))?;
        ensure(count == g, || format!("g {g}: {count} minimizers"))?;
        within(start, Duration::from_secs(60), &format!("g {g}"))?;
        notes.push(format!("g {g}: {count} minimizers in {:.2?}", start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn rotation_family_c1() -> Check {
    let start = Instant::now();
    let mut worst = 0f64;
    for g in 2..=100 {
        let oracle = 4.0 * (PI / (g as f64 + 1.0)).cos().sqrt().asinh();
        let c1 = solve_c1(g).map_err(|e| e.to_string())?.get();
        worst = worst.max((c1 - oracle).abs());
    }
    ensure(worst < 1e-9, || format!("c1 error {worst:e}"))?;
    let mut worst_alpha = 0f64;
    for g in [2, 3, 5] {
        for c in [2.0, 3.0, 4.0] {
            let oracle = 4.0 * ((PI / (g as f64 + 1.0)).cos() / (c / 4.0f64).sinh()).asinh();
            let rep = RotFamilySpec::new(g, c, 0.0).unwrap().representation().map_err(|e| e.to_string())?;
            let l = curve_length(&rep, g, NamedCurve::alpha(1)).map_err(|e| e.to_string())?;
            worst_alpha = worst_alpha.max((l - oracle).abs());
        }
    }
    ensure(worst_alpha < 1e-9, || format!("alpha length error {worst_alpha:e}"))?;
    within(start, Duration::from_secs(10), "c1 and alpha grid")?;
    Ok(format!("c1 error {worst:.1e}, alpha error {worst_alpha:.1e}, {:.2?}", start.elapsed()))
}

fn hole_pipeline() -> Check {
    let mut worst = 0f64;
    for n in 1..=10 {
        let r = hole_bound_exact(n).map_err(|e| e.to_string())?;
        worst = worst.max((r.value - 0.25 * (n as f64).ln()).abs());
    }
    ensure(worst < 1e-12, || format!("error {worst:e}"))?;
    Ok(format!("n = 1..10, genus up to {}, error {worst:.1e}", 3 << 9))
}

fn small_distance_ceilings() -> Check {
    let start = Instant::now();
    let (mut mid, mut twist, mut total, mut residual) = (0f64, 0f64, 0f64, 0f64);
    for g in 2..=100 {
        let r = dist_small_total(g).map_err(|e| format!("g {g}: {e}"))?;
        mid = mid.max(r.mid.value);
        twist = twist.max(r.twist.value);
        total = total.max(r.total.value);
        residual = residual.max(r.solution.residual_alpha.abs()).max(r.solution.residual_beta.abs());
    }
    ensure(mid <= 0.65, || format!("mid {mid}"))?;
    ensure(twist <= 1.6450, || format!("twist {twist}"))?;
    ensure(total <= 2.3, || format!("total {total}"))?;
    ensure(residual < 1e-8, || format!("residual {residual:e}"))?;
    within(start, Duration::from_secs(300), "g = 2..100")?;
    Ok(format!(
        "max mid {mid:.6}, max twist {twist:.6}, max total {total:.6}, residual {residual:.1e}, {:.1?}",
        start.elapsed()
    ))
}

fn large_genus_formulas() -> Check {
    let d = diam_upper_s1(2).map_err(|e| e.to_string())?.value;
    let exact = 4.0 * 3f64.sqrt().acosh();
    ensure((d - exact).abs() < 1e-12, || format!("diam_s1(2) = {d}"))?;
    ensure(d < 4.0 * (12.0 / PI).ln(), || "diam_s1(2) above the closed form".into())?;

    let cuff = 6.980;
    let seam = chain_seam(&ChainSpec::new(13, cuff).unwrap()).map_err(|e| e.to_string())?.get();
    let oracle = 2.0 * ((PI / 4.0).cos() / (cuff / 4.0).sinh()).asinh();
    ensure((seam - oracle).abs() < 1e-6, || format!("seam {seam} vs {oracle}"))?;

    let at13 = dist_large_lower(13).map_err(|e| e.to_string())?.closed_form;
    ensure(at13.value < 0.0 && at13.vacuous, || format!("g 13: {} vacuous {}", at13.value, at13.vacuous))?;

    let formula = |g: f64| 0.5 * (g - 6.0).ln() - 0.5 * (40.0 / 3.0 * ((4.0 * g + 4.0) / PI).ln()).ln();
    let scanned = (13..=1000).find(|&g| formula(g as f64) > 0.0);
    let (found, recomputed) = large_crossovers(1000, len(cuff)).map_err(|e| e.to_string())?;
    ensure(found == scanned && found == Some(66), || format!("crossover {found:?}, scan {scanned:?}"))?;
    Ok(format!(
        "diam_s1(2) = {d:.12}, seam {seam:.9}, g 13 value {:.4}, crossover {} (exact diameters: {})",
        at13.value,
        found.unwrap(),
        recomputed.map_or("none".into(), |g| g.to_string())
    ))
}

fn elimination() -> Check {
    let c = WpConstants::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut gap, mut slack) = (0f64, 0f64);
    for _ in 0..100 {
        let q: f64 = 10f64.powf(rng.gen_range(-3.0..2.0));
        let l = q * rng.gen_range(1e-3..1.999);
        let e = eliminate_sys(q, l, &c).map_err(|e| e.to_string())?;
        gap = gap.max((e.numeric - e.closed_form).abs());
        let (x, y) = constraint_pair(q, l, e.s_star, &c);
        slack = slack.max((x - y).abs());
    }
    ensure(gap < 1e-8, || format!("closed form vs numeric {gap:e}"))?;
    ensure(slack < 1e-8, || format!("slackness {slack:e}"))?;

    let ours = recomputed_coefficient(&c);
    let (fit_rounded, _) = fit_sqrt_log(rounded_wp_threshold, 1e3, 1e6, 50).map_err(|e| e.to_string())?;
    let (fit_ours, _) = fit_sqrt_log(|lg| recomputed_wp_threshold(lg, &c), 1e3, 1e6, 50).map_err(|e| e.to_string())?;
    println!("      coefficient of sqrt(log g)   leading     fit on log g in [1e3, 1e6]");
    println!("      recomputed                   {ours:.6}    {fit_ours:.6}");
    println!("      rounded                      {:.6}    {fit_rounded:.6}", 0.6521);
    println!("      relative gap                 {:.4}", 0.6521 / ours - 1.0);
    Ok(format!("100 instances, closed form gap {gap:.1e}, slackness {slack:.1e}"))
}

fn properties_and_determinism() -> Check {
    // Full twist on the genus two rotation family.
    let (c, t) = (2.8, 0.6);
    let spectrum = |tw: f64| -> Result<Vec<f64>, String> {
        let rep =
            HolonomyRep::new(&rot_family_graph(2, c, tw).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        Ok(enumerate_geodesics(&rep, 3.0, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| r.length)
            .collect())
    };
    let (a, b) = (spectrum(t)?, spectrum(t + c)?);
    ensure(!a.is_empty() && a.len() == b.len(), || format!("{} vs {} classes", a.len(), b.len()))?;
    ensure(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9), || "spectra differ".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let t2 = rng.gen_range(0.0..4.0);
        let th = rng.gen_range(0.05..1.5);
        let phi = PI / 2.0 + rng.gen_range(-0.999..0.999) * th;
        let theta = AngleRad::new(th).unwrap();
        let h = 1e-6;
        let (_, d) = phi_and_derivative(t2, theta, phi);
        let fd = (phi_and_derivative(t2, theta, phi + h).0 - phi_and_derivative(t2, theta, phi - h).0) / (2.0 * h);
        ensure((d - fd).abs() <= 1e-6 * d.abs().max(1.0), || format!("derivative {d} vs {fd}"))?;
    }

    for g in [2, 5, 20] {
        let sol = solve_c2_t2(g).map_err(|e| e.to_string())?;
        let th = strip_angle(g, sol.c2).map_err(|e| e.to_string())?;
        let profile = dilatation_profile(sol.t2, th, 10_000).map_err(|e| e.to_string())?;
        ensure(profile.len() == 10_000 && profile.iter().all(|&(_, k)| k >= 1.0), || format!("g {g}: K < 1"))?;
    }

    for _ in 0..1000 {
        let (l1, l2) = (rng.gen_range(0.1..100.0), rng.gen_range(0.1..100.0));
        let (s1, s2) = (rng.gen_range(0.05..5.0), rng.gen_range(0.05..5.0));
        let (lo, hi) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        let (small, big) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        let f = |l: f64, s: f64| filling_lower_bound(len(l), len(s)).value;
        ensure(f(lo, small) <= f(hi, small), || format!("not increasing in L at {lo}, {hi}"))?;
        ensure(f(lo, big) <= f(lo, small), || format!("not decreasing in sys at {small}, {big}"))?;
    }

    let runs = determinism()?;
    Ok(format!(
        "twist invariance over {} classes, 1000 derivative samples, 3 x 10^4 grid points, 1000 pairs, {runs} CLI runs",
        a.len()
    ))
}

fn determinism() -> Result<usize, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let commands: Vec<Vec<String>> = [
        vec!["tree", "--n", "3"],
        vec!["tree", "--genus", "7"],
        vec!["systole", "--family", "tree", "--genus", "6", "--cutoff", "2.7"],
        vec!["systole", "--family", "rot", "--genus", "2", "--param", "c2", "--format", "json"],
        vec!["systole", "--family", "chain", "--genus", "3", "--cutoff", "2.5"],
        vec!["bounds", "--which", "hole", "--genus-range", "3..30"],
        vec!["bounds", "--which", "small", "--genus-range", "2..6", "--format", "json"],
        vec!["bounds", "--which", "large", "--genus-range", "13..80"],
        vec!["bounds", "--which", "wp", "--genus-range", "3..50", "--mp-B", "1.5"],
        vec!["bounds", "--which", "teich", "--genus-range", "3..50"],
        vec!["thresholds", "--mp-B", "2"],
        vec!["constants"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    // arguments, then the files the command writes
    let with_files: Vec<[Vec<String>; 2]> = vec![
        [
            vec!["plot-dilatation".into(), "--genus".into(), "3".into(), "--out".into(), p("k.svg")],
            vec![p("k.svg"), p("k.csv")],
        ],
        [vec!["golden".into(), "--max-genus".into(), "6".into(), "--out".into(), p("g.json")], vec![p("g.json")]],
    ];

    let run = |args: &[String]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_systolic-atlas")).args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{args:?} exited with {:?}", out.status.code()))?;
        let mut bytes = out.stdout;
        bytes.extend(out.stderr);
        Ok(bytes)
    };
    let mut count = 0;
    for args in &commands {
        let (a, b) = (run(args)?, run(args)?);
        ensure(a == b && !a.is_empty(), || format!("{args:?} differs between runs"))?;
        count += 1;
    }
    for [args, files] in &with_files {
        let mut snapshots = Vec::new();
        for _ in 0..2 {
            let mut bytes = run(args)?;
            for f in files {
                bytes.extend(std::fs::read(Path::new(f)).map_err(|e| e.to_string())?);
            }
            snapshots.push(bytes);
        }
        ensure(snapshots[0] == snapshots[1], || format!("{args:?} differs between runs"))?;
        count += 1;
    }
    Ok(count)
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("hexagon fixed point and tree systoles", hexagon_and_tree_systole),
        ("rotation family c1 and alpha lengths", rotation_family_c1),
        ("hole bound pipeline", hole_pipeline),
        ("small distance ceilings", small_distance_ceilings),
        ("large genus formulas", large_genus_formulas),
        ("elimination of the systole", elimination),
        ("property suites and determinism", properties_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
