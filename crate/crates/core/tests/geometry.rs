use std::f64::consts::{PI, TAU};

use kakeya_core::geom::{self, Point};
use kakeya_core::oracle::{mc_area, Rect};
use proptest::prelude::*;

fn mc_exterior(tri: &geom::NeedleTriangle, r: f64, samples: u64, seed: u64) -> (f64, f64) {
    let pts = tri.vertices();
    let xs = pts.iter().map(|p| p.x);
    let ys = pts.iter().map(|p| p.y);
    let bbox = Rect::new(
        xs.clone().fold(f64::INFINITY, f64::min),
        ys.clone().fold(f64::INFINITY, f64::min),
        xs.fold(f64::NEG_INFINITY, f64::max),
        ys.fold(f64::NEG_INFINITY, f64::max),
    );
    let est = mc_area(|p: Point| tri.contains(p) && p.norm() > r, bbox, samples, seed);
    (est.value, est.std_error)
}

#[test]
fn exterior_area_matches_monte_carlo() {
    let cases = [(0.7, 0.05, 0.5, 0.25), (2.0, 0.04, 0.15, 0.2), (0.1, 0.1, 0.9, 0.3)];
    for (k, &(alpha, delta, t, r)) in cases.iter().enumerate() {
        let tri = geom::make_triangle(alpha, delta, t).unwrap();
        let exact = geom::exterior_area(&tri, r).unwrap();
        let (est, se) = mc_exterior(&tri, r, 1_000_000, 100 + k as u64);
        assert!((est - exact).abs() <= 3.0 * se, "case {k}: {exact} vs {est} +- {se}");
    }
}

#[test]
fn isosceles_closed_form_matches_clipping() {
    let tri = geom::make_triangle(0.3, 0.05, 0.5).unwrap();
    let clip = geom::exterior_area(&tri, 0.25).unwrap();
    assert!((clip - geom::exterior_area_isosceles(0.05, 0.25).unwrap()).abs() <= 1e-10);
}

#[test]
fn jgamma_ratio_approaches_supremum() {
    for r in [0.1, 0.25, 0.4] {
        let sup = (1.0 + 2.0 * r) / (1.0 - 2.0 * r);
        let mut prev = f64::INFINITY;
        for k in 1..=8 {
            let d = r * 10f64.powi(-k);
            let gap = sup - geom::jgamma_interval(d, r).unwrap().ratio;
            assert!(gap >= -1e-12 && gap <= prev + 1e-12, "r={r} k={k} gap={gap}");
            prev = gap;
        }
        assert!(prev / sup < 1e-7);
    }
}

#[test]
fn intersection_arcs_generic_crossing() {
    let tri = geom::make_triangle(0.9, 0.05, 0.2).unwrap();
    let arcs = geom::intersection_arcs(&tri, 0.25);
    // A is inside the disk, so edge OA never meets the circle
    assert_eq!(arcs.len(), 1);
    let b = tri.endpoint_b();
    let window = (0.05f64 / 0.25).acos();
    let psi_b = (1.0f64 - 0.2).atan2(0.05);
    assert!((arcs[0].theta - (psi_b - window)).abs() < 1e-12);
    assert!(b.norm() > 0.25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn isosceles_agreement(alpha in 0.0..PI, r in 0.01f64..=0.5, frac in 0.0f64..0.999) {
        let delta = frac * r;
        let tri = geom::make_triangle(alpha, delta, 0.5).unwrap();
        let clip = geom::exterior_area(&tri, r).unwrap();
        let closed = geom::exterior_area_isosceles(delta, r).unwrap();
        prop_assert!((clip - closed).abs() <= 1e-10, "{} vs {}", clip, closed);
        prop_assert!(closed >= 0.0);
    }

    #[test]
    fn triangle_invariants(alpha in -10.0f64..10.0, delta in 0.0f64..2.0, t in 0.0f64..=1.0) {
        let tri = geom::make_triangle(alpha, delta, t).unwrap();
        prop_assert!((0.0..PI).contains(&tri.alpha()));
        let ab = tri.endpoint_b() - tri.endpoint_a();
        prop_assert!((ab.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((tri.line_distance_from_vertices() - delta).abs() <= 1e-12);
        prop_assert_eq!(tri.area(), delta / 2.0);
        if (t - 0.5).abs() > 1e-6 {
            prop_assert!(!tri.is_isosceles());
        }
    }

    #[test]
    fn isosceles_is_minimal(alpha in 0.0..PI, r in 0.15f64..0.5, frac in 0.0f64..1.0, t in 0.0f64..=1.0) {
        let delta = frac * (PI / 49.0).min(0.9 * r);
        let tri = geom::make_triangle(alpha, delta, t).unwrap();
        let ext = geom::exterior_area(&tri, r).unwrap();
        prop_assert!(ext >= geom::exterior_area_isosceles(delta, r).unwrap() - 1e-10);
    }

    #[test]
    fn exterior_area_is_lipschitz(
        alpha in 0.0..PI, delta in 0.0f64..0.3, t in 0.0f64..0.999, r in 0.05f64..1.0,
    ) {
        let h = 1e-7;
        let base = geom::exterior_area(&geom::make_triangle(alpha, delta, t).unwrap(), r).unwrap();
        let moved = [
            geom::exterior_area(&geom::make_triangle(alpha, delta + h, t).unwrap(), r).unwrap(),
            geom::exterior_area(&geom::make_triangle(alpha, delta, t + h).unwrap(), r).unwrap(),
            geom::exterior_area(&geom::make_triangle(alpha, delta, t).unwrap(), r + h).unwrap(),
        ];
        for m in moved {
            prop_assert!((m - base).abs() <= 5.0 * h, "{} vs {}", m, base);
        }
    }

    #[test]
    fn arcs_are_well_formed(
        alpha in 0.0..PI, delta in 0.0f64..1.0, t in -1.0f64..2.0, r in 0.01f64..1.5,
    ) {
        let tri = geom::make_offset_triangle(alpha, delta, t).unwrap();
        let arcs = geom::intersection_arcs(&tri, r);
        prop_assert!(arcs.len() <= 2);
        for a in &arcs {
            prop_assert!(a.theta > 0.0 && a.theta < TAU);
            prop_assert!((0.0..TAU).contains(&a.start));
            prop_assert!((a.end - a.start - a.theta).abs() <= 1e-15);
            prop_assert!((a.length() - r * a.theta).abs() <= 1e-15);
        }
        if arcs.len() == 2 {
            prop_assert!(arcs[0].theta >= arcs[1].theta);
        }
    }

    #[test]
    fn arc_midpoints_lie_in_triangle(
        alpha in 0.0..PI, delta in 0.001f64..0.5, t in -0.5f64..1.5, r in 0.05f64..1.0,
    ) {
        let tri = geom::make_offset_triangle(alpha, delta, t).unwrap();
        for a in geom::intersection_arcs(&tri, r) {
            let mid = Point::polar(r, a.start + 0.5 * a.theta);
            prop_assert!(tri.contains(mid));
        }
    }

    #[test]
    fn oa_beta_identity(theta in 0.01f64..1.4, a in 0.001f64..0.2) {
        if let Ok((oa, beta)) = geom::oa_beta(theta, a) {
            prop_assert!(oa >= a);
            prop_assert!((beta - (a / oa).asin()).abs() <= 1e-12);
        }
    }

    #[test]
    fn criterion_certifies_cone_separation(
        alpha in 0.0..PI, r in 0.15f64..0.5, f1 in 0.0f64..0.9, f2 in 0.0f64..0.9, extra in 0.0f64..0.3,
    ) {
        let (d1, d2) = (f1 * r, f2 * r);
        let need = (d1 / r).asin() + (d2 / r).asin();
        prop_assume!(need + extra < PI / 2.0);
        prop_assert!(geom::exterior_disjoint_criterion(alpha, d1, alpha + need + extra, d2, r).unwrap());
    }
}
