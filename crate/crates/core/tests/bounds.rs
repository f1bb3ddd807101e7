use std::f64::consts::PI;

use kakeya_core::bounds::{self, BoundParams, Measure1D, RLambdaConvention};
use proptest::prelude::*;

/// Composite Simpson with `panels` panels, no adaptivity.
fn composite_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut sum = f(lo) + f(hi);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + h * i as f64);
    }
    sum * h / 3.0
}

fn brute_integral(params: &BoundParams, g: impl Fn(f64) -> f64) -> f64 {
    composite_simpson(|r| r / g(r), params.a, params.r0, 1_000_000)
}

#[test]
fn integral_matches_fine_grid_simpson() {
    let params = BoundParams::theorem();
    let d = bounds::derive_params(&params).unwrap();
    let brute = brute_integral(&params, |r| bounds::g(r, &d).unwrap());
    let adaptive = bounds::case_i_integral(&params, 1e-10).unwrap();
    assert!((brute - adaptive).abs() <= 1e-10, "{brute} vs {adaptive}");
    // high-precision reference
    assert!((adaptive - 0.010_635_251_311_336_261).abs() <= 1e-10);
}

#[test]
fn integral_halving_stability() {
    let params = BoundParams::theorem();
    let mut tol = 1e-5;
    let mut prev = bounds::case_i_integral(&params, tol).unwrap();
    while tol > 1e-12 {
        let next = bounds::case_i_integral(&params, tol / 2.0).unwrap();
        assert!((next - prev).abs() <= tol, "tol {tol}: {prev} -> {next}");
        prev = next;
        tol /= 2.0;
    }
}

#[test]
fn empty_interval_integral_is_zero() {
    // a = r0 is rejected by validation, so approach it instead
    let params = BoundParams { a: 0.2, r0: 0.2 + 1e-12, ..BoundParams::theorem() };
    assert!(bounds::case_i_integral(&params, 1e-10).unwrap().abs() < 1e-12);
}

#[test]
fn g_single_components_bound_the_integral() {
    let params = BoundParams::theorem();
    let d = bounds::derive_params(&params).unwrap();
    let full = bounds::case_i_integral(&params, 1e-12).unwrap();
    for k in 0..3 {
        let single = brute_integral(&params, |r| bounds::g_components(r, &d).unwrap()[k]);
        assert!(full <= single + 1e-12, "component {k}: {full} > {single}");
    }
}

#[test]
fn theorem_reproduction() {
    let b = bounds::theorem_bound(&BoundParams::theorem(), 1e-10).unwrap();
    assert!((0.010200..=0.010210).contains(&b.case_i));
    assert!((0.01070..=0.01075).contains(&b.case_ii));
    assert!(b.final_value * PI >= PI / 98.0);
    let literal = BoundParams::theorem().with_convention(RLambdaConvention::PaperLiteral);
    assert!(bounds::case_ii_bound(&literal).unwrap() < 0.003);
}

#[test]
fn bounds_are_bit_deterministic() {
    let p = BoundParams::theorem();
    let a = serde_json::to_string(&bounds::theorem_bound(&p, 1e-10).unwrap()).unwrap();
    let b = serde_json::to_string(&bounds::theorem_bound(&p, 1e-10).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"final\""));
}

#[test]
fn cross_section_integrates_to_case_i_integral() {
    let params = BoundParams::theorem();
    let d = bounds::derive_params(&params).unwrap();
    let p = 0.9;
    let total = composite_simpson(
        |r| bounds::cross_section_bound(p, r, &d).unwrap(),
        params.a,
        params.r0,
        200_000,
    );
    let integral = bounds::case_i_integral(&params, 1e-12).unwrap();
    assert!((total / (p * PI / 3.0) - integral).abs() < 1e-10);
}

#[test]
fn f_argmax_on_grid() {
    let n = 100_000;
    let (mut best, mut best_v) = (0.0, f64::NEG_INFINITY);
    for i in 0..=n {
        let r = 0.15 + 0.35 * i as f64 / n as f64;
        if bounds::f(r) > best_v {
            best_v = bounds::f(r);
            best = r;
        }
    }
    assert!((best - 1.0 / 6.0).abs() < 1e-5);
}

#[test]
fn c_lower_bounds_its_integrand() {
    for &(r, a) in &[(0.858, PI / 49.0), (0.5, 0.3), (0.25, 0.25)] {
        let cmin = bounds::c(r, a).unwrap();
        for k in 1..=10_000 {
            let x = a * k as f64 / 10_000.0;
            assert!(x / (2.0 * (x / r).asin()) >= cmin - 1e-15);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_contract(
        a in 0.01f64..0.14, gap in 0.01f64..0.3, p in 0.0f64..=1.0, lambda in 0.0f64..=1.0, lit in any::<bool>(),
    ) {
        let r0 = (a + gap).clamp(0.15, 0.49);
        prop_assume!(a < r0);
        let convention = if lit { RLambdaConvention::PaperLiteral } else { RLambdaConvention::Reproducing };
        let params = BoundParams { a, r0, p, lambda, convention };
        let b = bounds::theorem_bound(&params, 1e-9).unwrap();
        prop_assert!(b.final_value <= b.case_i && b.final_value <= b.case_ii && b.final_value <= b.half_a);
        prop_assert!(b.final_value == b.case_i || b.final_value == b.case_ii || b.final_value == b.half_a);
        prop_assert!(b.case_i >= 0.0 && b.case_ii >= 0.0 && b.final_value >= 0.0);
        let d = b.derived;
        prop_assert!(d.r_lambda >= a - 1e-15 && d.r_lambda <= r0 + 1e-15);
    }

    #[test]
    fn case_ii_matches_outcir(a in 0.01f64..0.14, p in 0.0f64..=1.0, lambda in 0.0f64..=1.0) {
        let params = BoundParams { a, r0: 0.25, p, lambda, convention: RLambdaConvention::Reproducing };
        let d = bounds::derive_params(&params).unwrap();
        let meas = Measure1D::new((1.0 - p) * PI).unwrap();
        let via = bounds::outcir_bound(meas, d.r1 - 1.0, a).unwrap() / PI;
        prop_assert!((bounds::case_ii_bound(&params).unwrap() - via).abs() <= 1e-16);
    }

    #[test]
    fn case_i_nondecreasing_in_p(p in 0.0f64..1.0, dp in 0.0f64..0.5) {
        let q = (p + dp).min(1.0);
        let lo = bounds::case_i_bound(&BoundParams::theorem().with_p(p), 1e-10).unwrap();
        let hi = bounds::case_i_bound(&BoundParams::theorem().with_p(q), 1e-10).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn g_dominance(r in 0.01f64..0.49, lambda in 0.0f64..=1.0) {
        let params = BoundParams { lambda, ..BoundParams::theorem() };
        let d = bounds::derive_params(&params).unwrap();
        let comps = bounds::g_components(r, &d).unwrap();
        let g = bounds::g(r, &d).unwrap();
        prop_assert!(comps.iter().all(|&c| g >= c));
        prop_assert!(comps.contains(&g));
        prop_assert!(r / g <= r * (1.0 - 2.0 * r) / (1.0 + 2.0 * r) * (1.0 + 1e-15));
    }

    #[test]
    fn c_nonincreasing_in_a(r in 0.05f64..2.0, f1 in 0.01f64..1.0, f2 in 0.01f64..1.0) {
        let (lo, hi) = if f1 <= f2 { (f1 * r, f2 * r) } else { (f2 * r, f1 * r) };
        prop_assert!(bounds::c(r, hi).unwrap() <= bounds::c(r, lo).unwrap() + 1e-15);
    }

    #[test]
    fn inplusout_nondecreasing(r in 0.15f64..=0.5, a0 in 0.0f64..1.0, da in 0.0f64..1.0) {
        let lo = bounds::inplusout_bound(Measure1D::FULL, r, a0).unwrap();
        let hi = bounds::inplusout_bound(Measure1D::FULL, r, a0 + da).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn delta1_and_r1_consistent(r in 0.02f64..0.49, frac in 0.01f64..0.99) {
        let a = frac * r;
        let d = kakeya_core::geom::delta1_max(r, a).unwrap();
        prop_assert!(d >= 0.0 && d <= a);
        let r1 = kakeya_core::geom::ob_length(d, r).unwrap();
        prop_assert!(r1 - 1.0 > a);
    }
}
