//! Needle triangles, the cutoff circle and the closed forms attached to them.
//!
//! Lengths are in units of the needle length (the needle is always 1 long).
//! The origin `O` is the star centre. A needle at direction `alpha` lies on
//! the line at distance `delta` from `O`; the triangle it spans with `O` is
//! the basic object every bound is built from.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{domain, ensure_finite, Result};

/// Tolerance used when recomputing invariants of constructed triangles.
pub const INVARIANT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2-D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// The closed triangle spanned by `O` and a unit needle.
///
/// The needle has direction `alpha` (stored mod π), its supporting line is
/// at distance `delta` from `O`, and `t` is the signed position of the foot
/// of the perpendicular from `O`, measured from endpoint `A` toward `B`.
/// `t = 1/2` is the isosceles triangle; `t` outside `[0, 1]` puts the foot
/// off the needle (see [`make_offset_triangle`]).
///
/// Vertices are `(O, A, B)` in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeedleTriangle {
    alpha: f64,
    delta: f64,
    t: f64,
    a: Point,
    b: Point,
}

impl NeedleTriangle {
    fn build(alpha: f64, delta: f64, t: f64) -> Self {
        let alpha = alpha.rem_euclid(PI);
        let alpha = if alpha >= PI { 0.0 } else { alpha };
        let dir = Point::new(alpha.cos(), alpha.sin());
        let normal = Point::new(alpha.sin(), -alpha.cos());
        let foot = normal * delta;
        Self {
            alpha,
            delta,
            t,
            a: foot - dir * t,
            b: foot + dir * (1.0 - t),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn vertices(&self) -> [Point; 3] {
        [Point::ORIGIN, self.a, self.b]
    }

    pub fn endpoint_a(&self) -> Point {
        self.a
    }

    pub fn endpoint_b(&self) -> Point {
        self.b
    }

    /// Unit vector along the needle, from `A` to `B`.
    pub fn direction(&self) -> Point {
        Point::new(self.alpha.cos(), self.alpha.sin())
    }

    /// Unit normal pointing from `O` toward the needle's line.
    pub fn normal(&self) -> Point {
        Point::new(self.alpha.sin(), -self.alpha.cos())
    }

    /// Base 1 times height `delta`, halved.
    pub fn area(&self) -> f64 {
        0.5 * self.delta
    }

    pub fn is_isosceles(&self) -> bool {
        (self.a.norm() - self.b.norm()).abs() <= INVARIANT_TOL
    }

    /// Distance from `O` to the closest point of the needle segment.
    pub fn needle_distance(&self) -> f64 {
        if (0.0..=1.0).contains(&self.t) {
            self.delta
        } else {
            self.a.norm().min(self.b.norm())
        }
    }

    fn edge_sides(&self, p: Point) -> [f64; 3] {
        [
            self.a.cross(p),
            (self.b - self.a).cross(p - self.a),
            (Point::ORIGIN - self.b).cross(p - self.b),
        ]
    }

    /// Closed membership test.
    pub fn contains(&self, p: Point) -> bool {
        self.delta > 0.0 && self.edge_sides(p).iter().all(|&s| s >= 0.0)
    }

    /// Open-interior membership test.
    pub fn contains_strict(&self, p: Point) -> bool {
        self.delta > 0.0 && self.edge_sides(p).iter().all(|&s| s > 0.0)
    }

    /// Distance from `O` to the needle's supporting line, recomputed from
    /// the vertices.
    pub fn line_distance_from_vertices(&self) -> f64 {
        let ab = self.b - self.a;
        self.a.cross(ab).abs() / ab.norm()
    }
}

fn check_triangle_inputs(alpha: f64, delta: f64, t: f64) -> Result<()> {
    ensure_finite(&[("alpha", alpha), ("delta", delta), ("t", t)])?;
    if delta < 0.0 {
        return Err(domain(format!("delta must be >= 0, got {delta}")));
    }
    Ok(())
}

/// Builds the triangle for a needle whose perpendicular foot lies on it.
pub fn make_triangle(alpha: f64, delta: f64, t: f64) -> Result<NeedleTriangle> {
    check_triangle_inputs(alpha, delta, t)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(NeedleTriangle::build(alpha, delta, t))
}

/// Like [`make_triangle`] but accepts any finite foot position, so the
/// needle may sit entirely to one side of its perpendicular foot. Needles
/// that avoid a disk of radius `r > delta` need this.
pub fn make_offset_triangle(alpha: f64, delta: f64, t: f64) -> Result<NeedleTriangle> {
    check_triangle_inputs(alpha, delta, t)?;
    Ok(NeedleTriangle::build(alpha, delta, t))
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(domain(format!("radius must be finite and > 0, got {r}")));
    }
    Ok(())
}

/// Signed area of `(O, p, q) ∩ B_r`, where `B_r` is centred at `O`.
///
/// The segment `pq` is split at its circle crossings. Pieces inside the
/// disk contribute a straight triangle with `O`, pieces outside contribute
/// the circular sector they subtend.
fn wedge_disk_area(p: Point, q: Point, r: f64) -> f64 {
    let d = q - p;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return 0.0;
    }
    let qb = 2.0 * p.dot(d);
    let qc = p.norm_sq() - r * r;
    let mut cuts = [0.0, 1.0, 1.0, 1.0];
    let mut n = 1;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc > 0.0 {
        let s = disc.sqrt();
        let k = -0.5 * (qb + qb.signum() * s);
        let (mut s1, mut s2) = if k != 0.0 {
            (k / qa, qc / k)
        } else {
            (-s / (2.0 * qa), s / (2.0 * qa))
        };
        if s1 > s2 {
            std::mem::swap(&mut s1, &mut s2);
        }
        for s in [s1, s2] {
            if s > 0.0 && s < 1.0 {
                cuts[n] = s;
                n += 1;
            }
        }
    }
    cuts[n] = 1.0;
    let r_sq = r * r;
    let mut area = 0.0;
    for w in cuts[..=n].windows(2) {
        let (s0, s1) = (w[0], w[1]);
        if s1 <= s0 {
            continue;
        }
        let p0 = p + d * s0;
        let p1 = p + d * s1;
        let mid = p + d * (0.5 * (s0 + s1));
        if mid.norm_sq() <= r_sq {
            area += 0.5 * p0.cross(p1);
        } else {
            area += 0.5 * r_sq * p0.cross(p1).atan2(p0.dot(p1));
        }
    }
    area
}

/// Area of a simple polygon intersected with the disk of radius `r` about
/// the origin.
pub fn polygon_disk_area(vertices: &[Point], r: f64) -> f64 {
    let n = vertices.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| wedge_disk_area(vertices[i], vertices[(i + 1) % n], r))
        .sum::<f64>()
        .abs()
}

/// Area of `Δ ∩ B_r`.
pub fn interior_area(tri: &NeedleTriangle, r: f64) -> Result<f64> {
    check_radius(r)?;
    if tri.delta == 0.0 {
        return Ok(0.0);
    }
    Ok(polygon_disk_area(&tri.vertices(), r).min(tri.area()))
}

/// Exact area of `Δ \ B_r`.
pub fn exterior_area(tri: &NeedleTriangle, r: f64) -> Result<f64> {
    let inside = interior_area(tri, r)?;
    Ok((tri.area() - inside).max(0.0))
}

fn check_below_radius(name: &str, value: f64, r: f64) -> Result<()> {
    ensure_finite(&[(name, value), ("r", r)])?;
    check_radius(r)?;
    if value < 0.0 {
        return Err(domain(format!("{name} must be >= 0, got {value}")));
    }
    if value >= r {
        return Err(domain(format!("{name} = {value} must be < r = {r}")));
    }
    Ok(())
}

/// Closed form of `|Δ^ext|` for the isosceles triangle at distance `delta`.
///
/// Valid for `0 <= delta < r <= 1/2`, where both needle endpoints lie
/// outside the disk and the disk cuts two sectors plus one kite from `Δ`.
pub fn exterior_area_isosceles(delta: f64, r: f64) -> Result<f64> {
    check_below_radius("delta", delta, r)?;
    if r > 0.5 {
        return Err(domain(format!("isosceles closed form needs r <= 1/2, got {r}")));
    }
    let kite = delta * (r * r - delta * delta).sqrt();
    let sectors = ((delta / r).asin() - (2.0 * delta).atan()) * r * r;
    Ok((0.5 * delta - kite - sectors).max(0.0))
}

/// `h(δ) = |Δ^ext| / arcsin(δ/r)` for the isosceles triangle, with the
/// analytic limit `f(r)` at `δ = 0`.
pub fn h_ratio(delta: f64, r: f64) -> Result<f64> {
    let ext = exterior_area_isosceles(delta, r)?;
    if delta == 0.0 {
        return Ok(bounds::f(r));
    }
    Ok(ext / (delta / r).asin())
}

/// Central angle of each arc the isosceles triangle at distance `delta0`
/// cuts from `S_r`.
pub fn theta_isosceles(delta0: f64, r: f64) -> Result<f64> {
    check_below_radius("delta0", delta0, r)?;
    Ok(((delta0 / r).asin() - (2.0 * delta0).atan()).max(0.0))
}

/// Upper bound on the central angle of any arc cut by a needle at distance
/// at most `a`.
pub fn theta_max(a: f64, r: f64) -> Result<f64> {
    check_below_radius("a", a, r)?;
    if a == 0.0 {
        return Err(domain("a must be > 0"));
    }
    Ok((a / r).asin() - (a / ((r * r - a * a).sqrt() + 1.0)).atan())
}

/// A connected component of `Δ ∩ S_r`.
///
/// `start` is normalised to `[0, 2π)` and `end = start + theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub r: f64,
    pub start: f64,
    pub end: f64,
    pub theta: f64,
}

impl Arc {
    pub fn length(&self) -> f64 {
        self.r * self.theta
    }
}

/// A closed interval of needle directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionInterval {
    pub lo: f64,
    pub hi: f64,
}

impl DirectionInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Directions whose longer arc fits inside the arc cut by an isosceles
/// triangle, in the frame where that arc spans polar angles `[0, theta]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JGamma {
    pub interval: DirectionInterval,
    pub theta: f64,
    /// `interval.width() / theta`.
    pub ratio: f64,
}

/// Admissible direction interval `[θ - arcsin(δ₀/r), arcsin(δ₀/r)]` for the
/// arc of the isosceles triangle at distance `delta0`.
pub fn jgamma_interval(delta0: f64, r: f64) -> Result<JGamma> {
    check_below_radius("delta0", delta0, r)?;
    if delta0 == 0.0 {
        return Err(domain("delta0 must be > 0"));
    }
    let half = (delta0 / r).asin();
    let theta = half - (2.0 * delta0).atan();
    if !(theta > 0.0) {
        return Err(domain(format!("arc degenerates for delta0 = {delta0}, r = {r}")));
    }
    let interval = DirectionInterval {
        lo: theta - half,
        hi: half,
    };
    Ok(JGamma {
        interval,
        theta,
        ratio: interval.width() / theta,
    })
}

/// `(|OA|, β₁)` for a needle at distance `a` whose endpoints sit on two rays
/// from `O` separated by `theta`.
pub fn oa_beta(theta: f64, a: f64) -> Result<(f64, f64)> {
    ensure_finite(&[("theta", theta), ("a", a)])?;
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(domain(format!("theta must lie in (0, pi/2), got {theta}")));
    }
    if !(a > 0.0 && a < 0.5) {
        return Err(domain(format!("a must lie in (0, 1/2), got {a}")));
    }
    let cot = 1.0 / theta.tan();
    let inner = 1.0 - 4.0 * a * a + 4.0 * a * cot;
    if inner < 0.0 {
        return Err(domain(format!("negative inner radicand {inner}")));
    }
    let outer = ((2.0 * a * cot + 1.0) - inner.sqrt()) / 2.0;
    if !(outer > 0.0) {
        return Err(domain(format!("non-positive outer radicand {outer}")));
    }
    let oa = outer.sqrt();
    if a > oa {
        return Err(domain(format!("|OA| = {oa} is smaller than a = {a}")));
    }
    Ok((oa, (a / oa).asin()))
}

/// `|OB|(δ₀, r) = √(4δ₀² + 1) / (1 − 2√(r² − δ₀²))`.
pub fn ob_length(delta0: f64, r: f64) -> Result<f64> {
    check_below_radius("delta0", delta0, r)?;
    let denom = 1.0 - 2.0 * (r * r - delta0 * delta0).sqrt();
    if !(denom > 0.0) {
        return Err(domain(format!("|OB| denominator {denom} is not positive (r = {r})")));
    }
    Ok((4.0 * delta0 * delta0 + 1.0).sqrt() / denom)
}

/// Largest `δ₀` with `δ₀ / (1/2 − √(r² − δ₀²)) <= a`.
pub fn delta1_max(r: f64, a: f64) -> Result<f64> {
    ensure_finite(&[("r", r), ("a", a)])?;
    check_radius(r)?;
    if !(a > 0.0 && a < 0.5) {
        return Err(domain(format!("a must lie in (0, 1/2), got {a}")));
    }
    let rad = 4.0 * r * r + 4.0 * a * a * r * r - a * a;
    if rad < 0.0 {
        return Err(domain(format!("negative radicand {rad} for r = {r}, a = {a}")));
    }
    let v = a * (1.0 - rad.sqrt()) / (2.0 * (a * a + 1.0));
    if v < 0.0 {
        return Err(domain(format!("no admissible delta for r = {r}, a = {a}")));
    }
    Ok(v)
}

/// Distance between two needle directions as lines, in `[0, π/2]`.
pub fn angular_gap_mod_pi(alpha1: f64, alpha2: f64) -> f64 {
    let d = (alpha1 - alpha2).rem_euclid(PI);
    d.min(PI - d)
}

/// Sufficient angular separation for the exterior parts (and, for needles
/// avoiding `B_r`, the interior parts) of two triangles to have disjoint
/// interiors. The condition is closed: touching counts as separated.
pub fn exterior_disjoint_criterion(
    alpha1: f64,
    delta1: f64,
    alpha2: f64,
    delta2: f64,
    r: f64,
) -> Result<bool> {
    ensure_finite(&[("alpha1", alpha1), ("alpha2", alpha2)])?;
    check_below_radius("delta1", delta1, r)?;
    check_below_radius("delta2", delta2, r)?;
    if r > 0.5 {
        return Err(domain(format!("r must be <= 1/2, got {r}")));
    }
    let need = (delta1 / r).asin() + (delta2 / r).asin();
    let gap = angular_gap_mod_pi(alpha1, alpha2);
    // a few ulps of slack so that a gap built as exactly `need` still counts
    Ok(gap + 8.0 * f64::EPSILON * PI >= need)
}

/// Connected components of `Δ ∩ S_r`, longest first (ties by start angle).
/// Zero-length touchings are dropped.
///
/// In the frame `(n, u)` of the needle's normal and direction, polar angles
/// of points of the wedge `AOB` run over `[ψ_A, ψ_B]`. A circle point in the
/// wedge is inside the triangle unless the needle line passes between it and
/// `O`, which happens for `|ψ| < arccos(δ/r)` when `δ < r`.
pub fn intersection_arcs(tri: &NeedleTriangle, r: f64) -> Vec<Arc> {
    if !(r.is_finite() && r > 0.0) || tri.delta == 0.0 {
        return Vec::new();
    }
    let delta = tri.delta;
    let psi_a = (-tri.t).atan2(delta);
    let psi_b = (1.0 - tri.t).atan2(delta);
    let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(2);
    if delta >= r {
        pieces.push((psi_a, psi_b));
    } else {
        let window = (delta / r).acos();
        pieces.push((psi_a, psi_b.min(-window)));
        pieces.push((psi_a.max(window), psi_b));
    }
    let base = tri.normal().angle();
    let mut arcs: Vec<Arc> = pieces
        .into_iter()
        .filter(|(lo, hi)| hi - lo > 0.0)
        .map(|(lo, hi)| {
            let start = (base + lo).rem_euclid(TAU);
            let theta = hi - lo;
            Arc {
                r,
                start,
                end: start + theta,
                theta,
            }
        })
        .collect();
    arcs.sort_by(|x, y| {
        y.theta
            .partial_cmp(&x.theta)
            .unwrap_or(Ordering::Equal)
            .then(x.start.partial_cmp(&y.start).unwrap_or(Ordering::Equal))
    });
    arcs
}
