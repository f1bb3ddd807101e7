use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::CounterRng;
use super::{mc_area, Rect};
use crate::bounds::{self, f};
use crate::error::{domain, Error, Result};
use crate::geom::{self, NeedleTriangle, Point};
use crate::numeric::{golden_section_max, linspace};

/// δ-grid size used by the `h` scans.
pub const H_GRID_POINTS: usize = 10_000;

const H_SLACK: f64 = 1e-12;
const LIMIT_REL_TOL: f64 = 1e-4;
const POINTS_PER_REGION: usize = 1_000;
const SECTOR_SETS: u64 = 100;
const H_RADII: usize = 64;
const JGAMMA_RADII: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    IsoscelesMinimality,
    HMinAtZero,
    ExtDisjoint,
    IntDisjoint,
    JGammaRatio,
    CMin,
    FArgmax,
    SectorMeasure,
    ArcConsistency,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::IsoscelesMinimality,
        CheckId::HMinAtZero,
        CheckId::ExtDisjoint,
        CheckId::IntDisjoint,
        CheckId::JGammaRatio,
        CheckId::CMin,
        CheckId::FArgmax,
        CheckId::SectorMeasure,
        CheckId::ArcConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::IsoscelesMinimality => "IsoscelesMinimality",
            Self::HMinAtZero => "HMinAtZero",
            Self::ExtDisjoint => "ExtDisjoint",
            Self::IntDisjoint => "IntDisjoint",
            Self::JGammaRatio => "JGammaRatio",
            Self::CMin => "CMin",
            Self::FArgmax => "FArgmax",
            Self::SectorMeasure => "SectorMeasure",
            Self::ArcConsistency => "ArcConsistency",
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }

    pub fn default_samples(self) -> u64 {
        match self {
            Self::FArgmax => 100_000,
            Self::SectorMeasure => 1_000_000,
            _ => 10_000,
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Self::IsoscelesMinimality => 1e-10,
            Self::HMinAtZero => H_SLACK,
            Self::ExtDisjoint | Self::IntDisjoint => 0.0,
            Self::JGammaRatio | Self::CMin | Self::ArcConsistency => 1e-9,
            Self::FArgmax => 1e-6,
            Self::SectorMeasure => 3.0,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == key)
            .ok_or_else(|| domain(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub samples: u64,
    pub grid_spec: String,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    /// One-line description of the key observed quantity.
    pub summary: String,
}

struct Outcome {
    samples: u64,
    grid_spec: String,
    max_violation: f64,
    summary: String,
}

/// Runs one check. `samples` below 100 is raised to 100.
pub fn run_check(id: CheckId, samples: u64, seed: u64, tolerance: f64) -> CheckReport {
    let samples = samples.max(100);
    let rng = CounterRng::new(seed).substream(id.index());
    let out = match id {
        CheckId::IsoscelesMinimality => isosceles_minimality(samples, rng),
        CheckId::HMinAtZero => h_min_check(samples),
        CheckId::ExtDisjoint => disjoint_check(samples, rng, false),
        CheckId::IntDisjoint => disjoint_check(samples, rng, true),
        CheckId::JGammaRatio => jgamma_check(samples),
        CheckId::CMin => c_min_check(samples),
        CheckId::FArgmax => f_argmax_check(samples),
        CheckId::SectorMeasure => sector_check(samples, rng),
        CheckId::ArcConsistency => arc_check(samples, rng),
    };
    CheckReport {
        id,
        samples: out.samples,
        grid_spec: out.grid_spec,
        max_violation: out.max_violation,
        tolerance,
        pass: out.max_violation <= tolerance,
        seed,
        summary: out.summary,
    }
}

/// Runs the given checks in parallel; `samples` overrides every default.
pub fn run_checks(ids: &[CheckId], seed: u64, samples: Option<u64>) -> Vec<CheckReport> {
    ids.par_iter()
        .map(|&id| {
            run_check(
                id,
                samples.unwrap_or_else(|| id.default_samples()),
                seed,
                id.default_tolerance(),
            )
        })
        .collect()
}

/// All nine checks at their defaults.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    run_checks(&CheckId::ALL, seed, None)
}

fn par_max<I>(iter: I) -> f64
where
    I: ParallelIterator<Item = f64>,
{
    iter.reduce(|| 0.0, f64::max)
}

fn delta_cap(r: f64) -> f64 {
    (PI / 49.0).min(0.9 * r)
}

fn isosceles_minimality(samples: u64, rng: CounterRng) -> Outcome {
    let worst = par_max((0..samples).into_par_iter().map(|i| {
        let mut s = rng.substream(i);
        let r = s.uniform(0.15, 0.5);
        let delta = s.uniform(0.0, delta_cap(r));
        let t = s.next_f64();
        let alpha = s.uniform(0.0, PI);
        let tri = geom::make_triangle(alpha, delta, t).expect("valid triangle");
        let ext = geom::exterior_area(&tri, r).expect("valid radius");
        let iso = geom::exterior_area_isosceles(delta, r).expect("delta < r");
        (iso - ext).max(0.0)
    }));
    Outcome {
        samples,
        grid_spec: format!(
            "{samples} random (alpha, delta, t, r): r ~ U[0.15, 0.5), delta ~ U[0, min(pi/49, 0.9r)), t ~ U[0, 1]"
        ),
        max_violation: worst,
        summary: format!("max shortfall of generic below isosceles exterior area {worst:.3e}"),
    }
}

/// How far the δ-grid of the `h` scans extends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DeltaCap {
    /// `δ <= (π/2)·f(r)`: thicker triangles already have area above the bound.
    PiHalfF,
    /// `δ <= (π/8)·f(r)`.
    PiEighthF,
    /// The whole range `δ < r`.
    Radius,
    /// A fixed needle-distance cap.
    Fixed(f64),
}

impl DeltaCap {
    pub fn cap(self, r: f64) -> f64 {
        let below_r = r * (1.0 - 1e-9);
        match self {
            Self::PiHalfF => FRAC_PI_2 * f(r),
            Self::PiEighthF => PI / 8.0 * f(r),
            Self::Radius => below_r,
            Self::Fixed(a) => a,
        }
        .min(below_r)
    }
}

/// `max(0, f(r) − min_k h(δ_k, r))` over `δ_k = cap·k/n`, `k = 1..=n`.
pub fn h_min_at_zero(r: f64, cap: DeltaCap, n: usize) -> f64 {
    let fr = f(r);
    let hi = cap.cap(r);
    (1..=n)
        .into_par_iter()
        .map(|k| {
            let delta = hi * k as f64 / n as f64;
            let h = geom::h_ratio(delta, r).unwrap_or(f64::INFINITY);
            (fr - h).max(0.0)
        })
        .reduce(|| 0.0, f64::max)
}

fn h_min_check(samples: u64) -> Outcome {
    let n = samples as usize;
    let radii = linspace(0.15, 0.49, H_RADII);
    let mut worst: f64 = 0.0;
    let mut worst_limit: f64 = 0.0;
    for &r in &radii {
        worst = worst.max(h_min_at_zero(r, DeltaCap::PiHalfF, n));
        let fr = f(r);
        let near = geom::h_ratio(1e-6 * r, r).expect("delta < r");
        worst_limit = worst_limit.max((near - fr).abs() / fr);
    }
    let limit_violation = if worst_limit > LIMIT_REL_TOL { worst_limit } else { 0.0 };
    Outcome {
        samples: samples * H_RADII as u64,
        grid_spec: format!(
            "{H_RADII} radii in [0.15, 0.49] x {n} deltas in (0, (pi/2) f(r)]; limit at delta = 1e-6 r"
        ),
        max_violation: worst.max(limit_violation),
        summary: format!(
            "max f(r) - h over grid {worst:.3e}; max relative limit error {worst_limit:.3e}"
        ),
    }
}

/// Locates the radius above which the minimum of `h` over the δ-grid is
/// the `δ → 0` value, with δ up to `(π/2)·f(r)`.
pub fn find_h_threshold(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    find_h_threshold_with(lo, hi, tol, DeltaCap::PiHalfF, H_GRID_POINTS)
}

pub fn find_h_threshold_with(
    lo: f64,
    hi: f64,
    tol: f64,
    cap: DeltaCap,
    grid: usize,
) -> Result<f64> {
    if !(lo > 0.0 && lo < hi && hi < 0.5 && tol > 0.0) {
        return Err(domain(format!("threshold search needs 0 < lo < hi < 1/2, got [{lo}, {hi}]")));
    }
    let pred = |r: f64| h_min_at_zero(r, cap, grid) <= H_SLACK;
    let (mut a, mut b) = (lo, hi);
    let (pa, pb) = (pred(a), pred(b));
    if pa == pb {
        return Err(Error::Bracket { lo, hi });
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if pred(mid) == pb {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Uniform point of the triangle `O, A, B`.
fn sample_triangle(tri: &NeedleTriangle, s: &mut CounterRng) -> Point {
    let u = s.next_f64().sqrt();
    let v = s.next_f64();
    (tri.endpoint_a() * (1.0 - v) + tri.endpoint_b() * v) * u
}

/// Uniform point of `Δ ∩ B_r` for a needle that avoids the open disk.
fn sample_inner_sector(tri: &NeedleTriangle, r: f64, s: &mut CounterRng) -> Point {
    let start = tri.endpoint_a().angle();
    let width = (tri.endpoint_b().angle() - start).rem_euclid(TAU);
    let theta = start + width * s.next_f64();
    let rho = r * s.next_f64().sqrt();
    Point::polar(rho, theta)
}

struct Pair {
    r: f64,
    tris: [NeedleTriangle; 2],
}

fn random_pair(s: &mut CounterRng, avoid_disk: bool, exact_touch: bool) -> Pair {
    let r = s.uniform(0.15, 0.5);
    let cap = delta_cap(r);
    let d = [s.uniform(0.0, cap), s.uniform(0.0, cap)];
    let need = (d[0] / r).asin() + (d[1] / r).asin();
    let gap = if exact_touch { need } else { need * (1.0 + s.uniform(0.0, 0.5)) };
    let alpha1 = s.uniform(0.0, PI);
    let sign = if s.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
    let alphas = [alpha1, alpha1 + sign * gap];
    let tris = [0, 1].map(|k| {
        if avoid_disk {
            let clear = (r * r - d[k] * d[k]).sqrt() + 1e-9 + s.next_f64();
            let t = if s.next_u64() & 1 == 0 { -clear } else { 1.0 + clear };
            geom::make_offset_triangle(alphas[k], d[k], t).expect("finite")
        } else {
            geom::make_triangle(alphas[k], d[k], s.next_f64()).expect("t in [0, 1]")
        }
    });
    Pair { r, tris }
}

/// Hits of points sampled in one part of the first triangle inside the
/// same part of the second.
fn cross_hits(pair: &Pair, from: usize, inner: bool, s: &mut CounterRng) -> u64 {
    let (src, dst) = (&pair.tris[from], &pair.tris[1 - from]);
    let r = pair.r;
    let in_part = |p: Point| if inner { p.norm() < r } else { p.norm() > r };
    let mut hits = 0;
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < POINTS_PER_REGION && attempts < 100 * POINTS_PER_REGION {
        attempts += 1;
        let p = if inner {
            sample_inner_sector(src, r, s)
        } else {
            sample_triangle(src, s)
        };
        if !in_part(p) {
            continue;
        }
        accepted += 1;
        if dst.contains_strict(p) && in_part(p) {
            hits += 1;
        }
    }
    hits
}

fn disjoint_check(samples: u64, rng: CounterRng, inner: bool) -> Outcome {
    let results: Vec<(u64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut s = rng.substream(i);
            let pair = random_pair(&mut s, inner, i % 8 == 0);
            let [t1, t2] = pair.tris;
            let ok = geom::exterior_disjoint_criterion(
                t1.alpha(),
                t1.delta(),
                t2.alpha(),
                t2.delta(),
                pair.r,
            )
            .unwrap_or(false);
            let hits = cross_hits(&pair, 0, inner, &mut s) + cross_hits(&pair, 1, inner, &mut s);
            (hits, ok)
        })
        .collect();
    let hits: u64 = results.iter().map(|(h, _)| h).sum();
    let rejected = results.iter().filter(|(_, ok)| !ok).count();
    let part = if inner { "interior (needles avoid B_r)" } else { "exterior" };
    Outcome {
        samples,
        grid_spec: format!(
            "{samples} random pairs with gap >= arcsin(d1/r) + arcsin(d2/r) (every 8th exactly equal), {POINTS_PER_REGION} {part} points per triangle"
        ),
        max_violation: hits as f64 + rejected as f64,
        summary: format!("{hits} membership hits; {rejected} pairs where the criterion failed to certify"),
    }
}

fn jgamma_check(samples: u64) -> Outcome {
    let n = samples;
    let radii = linspace(0.05, 0.45, JGAMMA_RADII);
    let mut worst: f64 = 0.0;
    let mut best_ratio_gap = f64::INFINITY;
    for &r in &radii {
        let sup = (1.0 + 2.0 * r) / (1.0 - 2.0 * r);
        let w = par_max((1..=n).into_par_iter().map(|k| {
            let d = r * k as f64 / (n + 1) as f64;
            let j = geom::jgamma_interval(d, r).expect("0 < d < r");
            (j.ratio - sup).max(0.0)
        }));
        worst = worst.max(w);
        let small = geom::jgamma_interval(1e-7 * r, r).expect("valid").ratio;
        best_ratio_gap = best_ratio_gap.min((sup - small).abs() / sup);
    }
    Outcome {
        samples: n * JGAMMA_RADII as u64,
        grid_spec: format!("{JGAMMA_RADII} radii in [0.05, 0.45] x {n} deltas r k/(n+1)"),
        max_violation: worst,
        summary: format!(
            "max excess over (1+2r)/(1-2r) {worst:.3e}; relative gap to the supremum at delta = 1e-7 r {best_ratio_gap:.3e}"
        ),
    }
}

fn c_min_check(samples: u64) -> Outcome {
    let cases = [
        (0.25, PI / 49.0),
        (0.858_231_900_909_882_2, PI / 49.0),
        (0.5, 0.2),
        (1.0, 0.3),
        (0.15, 0.15),
        (0.3, 0.1),
        (2.0, 1.5),
        (0.1, 0.01),
    ];
    let n = samples;
    let mut worst: f64 = 0.0;
    for &(r, a) in &cases {
        let cmin = bounds::c(r, a).expect("a <= r");
        worst = worst.max(par_max((1..=n).into_par_iter().map(|k| {
            let x = a * k as f64 / n as f64;
            (cmin - x / (2.0 * (x / r).asin())).max(0.0)
        })));
    }
    Outcome {
        samples: n * cases.len() as u64,
        grid_spec: format!("{} (r, a) pairs x {n} points x = a k/n", cases.len()),
        max_violation: worst,
        summary: format!("max amount by which x/(2 arcsin(x/r)) falls below c(r) {worst:.3e}"),
    }
}

fn f_argmax_check(samples: u64) -> Outcome {
    let n = samples as usize;
    let grid = linspace(0.15, 0.5, n);
    let (best, _) = grid
        .par_iter()
        .enumerate()
        .map(|(i, &r)| (i, f(r)))
        .reduce(|| (0, f64::NEG_INFINITY), |x, y| {
            if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) {
                y
            } else {
                x
            }
        });
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(n - 1)];
    let (argmax, _) = golden_section_max(f, lo, hi, 1e-12);
    let err = (argmax - 1.0 / 6.0).abs();
    Outcome {
        samples,
        grid_spec: format!("{n}-point grid on [0.15, 0.5] refined by golden section"),
        max_violation: err,
        summary: format!("argmax = {argmax:.12}"),
    }
}

/// A finite union of disjoint intervals of `[0, 2π)`.
struct IntervalUnion(Vec<(f64, f64)>);

impl IntervalUnion {
    fn measure(&self) -> f64 {
        self.0.iter().map(|(a, b)| b - a).sum()
    }

    fn contains(&self, angle: f64) -> bool {
        let x = angle.rem_euclid(TAU);
        self.0.iter().any(|&(a, b)| a <= x && x <= b)
    }
}

fn sector_check(samples: u64, rng: CounterRng) -> Outcome {
    let sets = SECTOR_SETS.min(samples);
    let per = samples / sets;
    let mut z_sum = 0.0;
    let mut z_max: f64 = 0.0;
    let mut first = String::new();
    for j in 0..sets {
        let mut s = rng.substream(j);
        let (r, union) = if j == 0 {
            (1.0, IntervalUnion(vec![(0.0, FRAC_PI_2)]))
        } else {
            let r = s.uniform(0.2, 1.0);
            let k = 1 + s.below(4) as usize;
            let mut cuts: Vec<f64> = (0..2 * k).map(|_| s.uniform(0.0, TAU)).collect();
            cuts.sort_by(f64::total_cmp);
            (r, IntervalUnion(cuts.chunks(2).map(|c| (c[0], c[1])).collect()))
        };
        let exact = 0.5 * r * r * union.measure();
        let bbox = Rect::centered(r);
        let r_sq = r * r;
        let est = mc_area(
            |p| p.norm_sq() <= r_sq && union.contains(p.angle()),
            bbox,
            per,
            s.substream(u64::MAX).key(),
        );
        let q = exact / bbox.area();
        let sigma = bbox.area() * (q * (1.0 - q) / per as f64).sqrt();
        let z = if sigma > 0.0 { (est.value - exact) / sigma } else { 0.0 };
        z_sum += z;
        z_max = z_max.max(z.abs());
        if j == 0 {
            first = format!("A = [0, pi/2], r = 1: {:.6} vs pi/4 = {:.6}", est.value, exact);
        }
    }
    let pooled = z_sum / (sets as f64).sqrt();
    Outcome {
        samples: per * sets,
        grid_spec: format!(
            "{sets} random interval unions (set 0 = [0, pi/2], r = 1), {per} hit-or-miss samples each; violation = |pooled z|"
        ),
        max_violation: pooled.abs(),
        summary: format!("pooled z {pooled:.3}; largest single |z| {z_max:.3}; {first}"),
    }
}

/// Total central angle of `Δ ∩ S_r` from edge–circle intersections and
/// midpoint membership.
fn arc_total_by_roots(tri: &NeedleTriangle, r: f64) -> f64 {
    let [o, a, b] = tri.vertices();
    let mut angles = Vec::with_capacity(6);
    for (p, q) in [(o, a), (a, b), (b, o)] {
        let d = q - p;
        let qa = d.dot(d);
        if qa == 0.0 {
            continue;
        }
        let qb = 2.0 * p.dot(d);
        let qc = p.dot(p) - r * r;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        for sgn in [-1.0, 1.0] {
            let s = (-qb + sgn * disc.sqrt()) / (2.0 * qa);
            if (0.0..=1.0).contains(&s) {
                angles.push((p + d * s).angle().rem_euclid(TAU));
            }
        }
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    if angles.len() < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..angles.len() {
        let lo = angles[i];
        let hi = if i + 1 < angles.len() { angles[i + 1] } else { angles[0] + TAU };
        let mid = 0.5 * (lo + hi);
        if tri.contains(Point::polar(r, mid)) {
            total += hi - lo;
        }
    }
    total
}

fn arc_check(samples: u64, rng: CounterRng) -> Outcome {
    let worst = par_max((0..samples).into_par_iter().map(|i| {
        let mut s = rng.substream(i);
        let r = s.uniform(0.05, 1.2);
        let alpha = s.uniform(0.0, PI);
        let t = s.uniform(-0.5, 1.5);
        let delta = if i % 4 == 3 {
            s.uniform(0.9 * r, 1.5 * r)
        } else {
            s.uniform(0.0, 0.9 * r)
        };
        let tri = geom::make_offset_triangle(alpha, delta, t).expect("finite");
        let arcs: f64 = geom::intersection_arcs(&tri, r).iter().map(|a| a.theta).sum();
        (arcs - arc_total_by_roots(&tri, r)).abs()
    }));
    Outcome {
        samples,
        grid_spec: format!(
            "{samples} random triangles: r ~ U[0.05, 1.2), t ~ U[-0.5, 1.5), delta ~ U[0, 0.9r) or U[0.9r, 1.5r) for every 4th"
        ),
        max_violation: worst,
        summary: format!("max |sum of arc angles - root-finding total| {worst:.3e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_roundtrip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert_eq!("f-argmax".parse::<CheckId>().unwrap(), CheckId::FArgmax);
        assert!("Nope".parse::<CheckId>().is_err());
    }

    #[test]
    fn f_argmax_passes() {
        let rep = run_check(CheckId::FArgmax, 100_000, 1, 1e-6);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn h_predicate_endpoints() {
        assert_eq!(h_min_at_zero(0.15, DeltaCap::PiHalfF, H_GRID_POINTS), 0.0);
        assert!(h_min_at_zero(0.10, DeltaCap::PiHalfF, H_GRID_POINTS) > H_SLACK);
    }

    #[test]
    fn roots_oracle_on_isosceles() {
        let tri = geom::make_triangle(0.4, 0.05, 0.5).unwrap();
        let th = geom::theta_isosceles(0.05, 0.25).unwrap();
        assert!((arc_total_by_roots(&tri, 0.25) - 2.0 * th).abs() < 1e-12);
    }

    #[test]
    fn small_runs_are_reproducible() {
        for id in CheckId::ALL {
            let a = run_check(id, 200, 5, id.default_tolerance());
            let b = run_check(id, 200, 5, id.default_tolerance());
            assert_eq!(a, b);
        }
    }
}
