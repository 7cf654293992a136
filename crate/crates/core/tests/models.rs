use systolic_core::holonomy::{systole_bruteforce, HolonomyRep, DEFAULT_BUDGET};
use systolic_core::surface_models::{
    alpha_closed_form, c1_closed_form, chain_seam, curve_length, l_curve, rot_family_graph, solve_c1, solve_c2_t2,
    ChainSpec, ModelError, NamedCurve, RotFamilySpec,
};

#[test]
fn alpha_matches_closed_form() {
    for g in [2, 3, 5, 8] {
        for c in [1.5, 2.0, 3.0, 4.0, 5.0] {
            let spec = RotFamilySpec::new(g, c, 0.0).unwrap();
            let rep = spec.representation().unwrap();
            for k in 1..=g + 1 {
                let l = curve_length(&rep, g, NamedCurve::alpha(k)).unwrap();
                assert!((l - alpha_closed_form(g, c)).abs() < 1e-9, "g {g} c {c} k {k}: {l}");
            }
        }
    }
}

#[test]
fn c1_matches_closed_form() {
    for g in 2..=20 {
        let c1 = solve_c1(g).unwrap().get();
        assert!((c1 - c1_closed_form(g)).abs() < 1e-9, "g {g}");
    }
    assert!(matches!(solve_c1(1), Err(ModelError::GenusTooSmall { .. })));
}

#[test]
fn beta_shrinks_under_positive_twist() {
    let c = c1_closed_form(3);
    let at = |t: f64| l_curve(&RotFamilySpec::new(3, c, t).unwrap(), NamedCurve::beta(1)).unwrap().get();
    assert!(at(0.1) < at(0.0));
    assert!(at(0.2) < at(0.1));
}

#[test]
fn curves_related_by_rotation_agree() {
    let spec = RotFamilySpec::new(4, 3.3, 0.8).unwrap();
    let rep = spec.representation().unwrap();
    for family in [NamedCurve::alpha, NamedCurve::beta] {
        let first = curve_length(&rep, 4, family(1)).unwrap();
        for k in 2..=5 {
            assert!((curve_length(&rep, 4, family(k)).unwrap() - first).abs() < 1e-9);
        }
    }
}

// In genus 2 the balanced surface is the Bolza surface, whose systole is
// 2 arccosh(1 + √2).
#[test]
fn c2_genus_two_is_bolza() {
    let sol = solve_c2_t2(2).unwrap();
    assert!((sol.c2 - 2.0 * (1.0 + 2f64.sqrt()).acosh()).abs() < 1e-9);
    assert!(sol.residual_alpha.abs() < 1e-8 && sol.residual_beta.abs() < 1e-8);
    let spec = RotFamilySpec::new(2, sol.c2, sol.t2).unwrap();
    for curve in [NamedCurve::alpha(1), NamedCurve::beta(1), NamedCurve::gamma(1)] {
        assert!((l_curve(&spec, curve).unwrap().get() - sol.c2).abs() < 1e-8);
    }
}

#[test]
fn c2_residuals_small() {
    for g in [3, 4, 7, 15] {
        let sol = solve_c2_t2(g).unwrap();
        assert!(sol.residual_alpha.abs() < 1e-8 && sol.residual_beta.abs() < 1e-8, "g {g}");
        assert!(sol.c2 > c1_closed_form(g));
        assert!(sol.t2 > 0.0 && sol.t2 < sol.c2 / 2.0);
    }
}

#[test]
fn systole_at_c1_genus_two() {
    let c1 = c1_closed_form(2);
    let rep = HolonomyRep::new(&rot_family_graph(2, c1, 0.0).unwrap()).unwrap();
    let (sys, count) = systole_bruteforce(&rep, c1 + 0.1, DEFAULT_BUDGET).unwrap();
    assert!((sys - c1).abs() < 1e-9);
    assert_eq!(count, 6);
}

#[test]
fn systole_at_c2_genus_two() {
    let sol = solve_c2_t2(2).unwrap();
    let rep = HolonomyRep::new(&rot_family_graph(2, sol.c2, sol.t2).unwrap()).unwrap();
    let (sys, count) = systole_bruteforce(&rep, sol.c2 + 0.05, DEFAULT_BUDGET).unwrap();
    assert!((sys - sol.c2).abs() < 1e-8);
    assert_eq!(count, 12);
}

#[test]
fn spec_validation() {
    assert!(RotFamilySpec::new(1, 2.0, 0.0).is_err());
    assert!(RotFamilySpec::new(2, 0.0, 0.0).is_err());
    assert!(RotFamilySpec::new(2, 2.0, 1.5).is_err());
    assert!(RotFamilySpec::new(2, 2.0, -0.1).is_err());
    let spec = RotFamilySpec::new(2, 2.0, 0.5).unwrap();
    assert_eq!(l_curve(&spec, NamedCurve::gamma(2)).unwrap().get(), 2.0);
    assert!(matches!(l_curve(&spec, NamedCurve::alpha(4)), Err(ModelError::IndexOutOfRange(4))));
    assert!(matches!(l_curve(&spec, NamedCurve::alpha(0)), Err(ModelError::IndexOutOfRange(0))));
}

#[test]
fn chain_surface() {
    for g in [3, 5, 13] {
        let spec = ChainSpec::new(g, 6.98).unwrap();
        assert_eq!(spec.graph().unwrap().genus(), g);
        HolonomyRep::new(&spec.graph().unwrap()).unwrap();
    }
    let d = chain_seam(&ChainSpec::new(13, 6.98).unwrap()).unwrap().get();
    let oracle = 2.0 * ((std::f64::consts::FRAC_PI_4).cos() / (6.98f64 / 4.0).sinh()).asinh();
    assert!((d - oracle).abs() < 1e-12);
}

// Large genus domains have generators with entries in the thousands, so the
// relator check must allow for the rounding of long products.
#[test]
fn large_genus_representation_builds() {
    for g in [20, 30] {
        let rep = RotFamilySpec::new(g, 3.0, 0.0).unwrap().representation().unwrap();
        let l = curve_length(&rep, g, NamedCurve::alpha(1)).unwrap();
        assert!((l - alpha_closed_form(g, 3.0)).abs() < 1e-6, "g {g}: {l}");
    }
}

#[test]
fn chain_genus_three_systole_is_twice_the_seam() {
    let spec = ChainSpec::new(3, 6.98).unwrap();
    let rep = HolonomyRep::new(&spec.graph().unwrap()).unwrap();
    let (sys, count) = systole_bruteforce(&rep, 2.5, DEFAULT_BUDGET).unwrap();
    assert!((sys - 2.0 * chain_seam(&spec).unwrap().get()).abs() < 1e-9, "{sys}");
    assert_eq!(count, 4);
}
