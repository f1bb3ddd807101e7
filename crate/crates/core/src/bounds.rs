//! Closed-form bound functions and the assembled Case I / Case II bounds.
//!
//! Every value that is proportional to π is returned as its coefficient of
//! π (so `1/98` means `π/98`) unless the doc says "absolute area".

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, ensure_finite, Error, Result};
use crate::geom;
use crate::numeric::{self, integrate_piecewise};

/// Smallest radius at which the exterior-area rate `f` is a valid bound.
pub const F_MIN_RADIUS: f64 = 0.15;

/// Default absolute tolerance for the Case I quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

const KINK_SCAN_POINTS: usize = 512;
const KINK_XTOL: f64 = 1e-13;

/// How `r_λ` interpolates between `a` and `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RLambdaConvention {
    /// `r_λ = λ·r0 + (1 − λ)·a`, which reproduces the published constants.
    #[default]
    Reproducing,
    /// `r_λ = λ·a + (1 − λ)·r0`, as displayed in the text.
    PaperLiteral,
}

impl RLambdaConvention {
    pub fn r_lambda(self, a: f64, r0: f64, lambda: f64) -> f64 {
        match self {
            Self::Reproducing => lambda * r0 + (1.0 - lambda) * a,
            Self::PaperLiteral => lambda * a + (1.0 - lambda) * r0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Reproducing => "reproducing",
            Self::PaperLiteral => "paper-literal",
        }
    }
}

impl fmt::Display for RLambdaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RLambdaConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reproducing" => Ok(Self::Reproducing),
            "paper-literal" => Ok(Self::PaperLiteral),
            other => Err(domain(format!(
                "unknown r_lambda convention {other:?} (expected reproducing or paper-literal)"
            ))),
        }
    }
}

/// User parameters of the main theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Cap on the distance from `O` to every needle line.
    pub a: f64,
    /// Cutoff radius.
    pub r0: f64,
    /// Proportion of directions assigned to Case I.
    pub p: f64,
    pub lambda: f64,
    #[serde(default)]
    pub convention: RLambdaConvention,
}

impl BoundParams {
    /// `a = π/49, r0 = 1/4, p = λ = 9/10`.
    pub fn theorem() -> Self {
        Self {
            a: PI / 49.0,
            r0: 0.25,
            p: 0.9,
            lambda: 0.9,
            convention: RLambdaConvention::Reproducing,
        }
    }

    pub fn with_p(self, p: f64) -> Self {
        Self { p, ..self }
    }

    pub fn with_convention(self, convention: RLambdaConvention) -> Self {
        Self { convention, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(&[
            ("a", self.a),
            ("r0", self.r0),
            ("p", self.p),
            ("lambda", self.lambda),
        ])?;
        if self.a >= self.r0 {
            return Err(domain(format!("a must be < r0 (a = {}, r0 = {})", self.a, self.r0)));
        }
        if !(self.a > 0.0 && self.a < 0.5) {
            return Err(domain(format!("a must lie in (0, 1/2), got {}", self.a)));
        }
        if self.r0 >= 0.5 {
            return Err(domain(format!("r0 must be < 1/2, got {}", self.r0)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(domain(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(domain(format!("lambda must lie in [0, 1], got {}", self.lambda)));
        }
        Ok(())
    }
}

impl Default for BoundParams {
    fn default() -> Self {
        Self::theorem()
    }
}

/// Quantities derived from [`BoundParams`] for the Case 2 geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub r_lambda: f64,
    pub delta1: f64,
    pub r1: f64,
    pub g_mid: f64,
    /// `r1 − 1 > a`.
    pub case_ii_feasible: bool,
}

/// Outer measure of a set of directions, in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Measure1D(f64);

impl Measure1D {
    pub const FULL: Measure1D = Measure1D(PI);

    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&value) {
            return Err(domain(format!("direction measure must lie in [0, pi], got {value}")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Case I / Case II values and every intermediate of the main bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown {
    pub params: BoundParams,
    pub derived: DerivedParams,
    pub case_i: f64,
    pub case_ii: f64,
    pub half_a: f64,
    #[serde(rename = "final")]
    pub final_value: f64,
    pub integral_value: f64,
    pub f_r0: f64,
    pub c_r1m1: f64,
}

/// `f(r) = ½·r·(2r − 1)²`.
pub fn f(r: f64) -> f64 {
    let s = 2.0 * r - 1.0;
    0.5 * r * s * s
}

/// `1 − f(r)/(2r²)`, the weight of a known inner area.
pub fn inner_coefficient(r: f64) -> f64 {
    1.0 - f(r) / (2.0 * r * r)
}

/// `c(r) = a / (2·arcsin(a/r))`.
pub fn c(r: f64, a: f64) -> Result<f64> {
    ensure_finite(&[("r", r), ("a", a)])?;
    if !(a > 0.0) {
        return Err(domain(format!("a must be > 0, got {a}")));
    }
    if a > r {
        return Err(domain(format!("c needs a <= r (a = {a}, r = {r})")));
    }
    Ok(a / (2.0 * (a / r).min(1.0).asin()))
}

/// The three closed forms whose maximum is `g`, in order
/// `[outer, middle, cone]`.
pub fn g_components(r: f64, derived: &DerivedParams) -> Result<[f64; 3]> {
    ensure_finite(&[("r", r)])?;
    if !(r > 0.0 && r < 0.5) {
        return Err(domain(format!("g needs 0 < r < 1/2, got {r}")));
    }
    Ok(g_components_unchecked(r, derived.g_mid))
}

fn g_components_unchecked(r: f64, g_mid: f64) -> [f64; 3] {
    [
        (1.0 + 2.0 * r) / (1.0 - 2.0 * r),
        g_mid,
        PI / (FRAC_PI_2 - (2.0 * r).atan()),
    ]
}

fn g_unchecked(r: f64, g_mid: f64) -> f64 {
    let [x, y, z] = g_components_unchecked(r, g_mid);
    x.max(y).max(z)
}

/// Upper bound on the ratio of direction measure to central angle at radius `r`.
pub fn g(r: f64, derived: &DerivedParams) -> Result<f64> {
    let [x, y, z] = g_components(r, derived)?;
    Ok(x.max(y).max(z))
}

fn argmax3(v: [f64; 3]) -> usize {
    let mut best = 0;
    for i in 1..3 {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// A radius where the active branch of `g` changes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GKink {
    pub r: f64,
    /// Component index (into [`g_components`]) active just below `r`.
    pub from: usize,
    /// Component index active just above `r`.
    pub to: usize,
}

/// Branch switches of `g` inside `(lo, hi)`, ascending.
pub fn g_kinks(lo: f64, hi: f64, derived: &DerivedParams) -> Result<Vec<GKink>> {
    ensure_finite(&[("lo", lo), ("hi", hi)])?;
    if !(lo > 0.0 && hi < 0.5 && lo <= hi) {
        return Err(domain(format!("kink scan needs 0 < lo <= hi < 1/2, got [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(Vec::new());
    }
    let comps = |r: f64| g_components_unchecked(r, derived.g_mid);
    let grid = numeric::linspace(lo, hi, KINK_SCAN_POINTS + 1);
    let mut kinks = Vec::new();
    for w in grid.windows(2) {
        let (i, j) = (argmax3(comps(w[0])), argmax3(comps(w[1])));
        if i == j {
            continue;
        }
        let diff = |r: f64| {
            let v = comps(r);
            v[i] - v[j]
        };
        if let Some(r) = numeric::bisect(diff, w[0], w[1], KINK_XTOL) {
            if r > lo && r < hi {
                kinks.push(GKink { r, from: i, to: j });
            }
        }
    }
    Ok(kinks)
}

/// Computes `r_λ`, `δ₁ = δ₁max(r_λ)`, `r₁ = |OB|(δ₁, r_λ)` and the middle
/// component of `g`.
pub fn derive_params(params: &BoundParams) -> Result<DerivedParams> {
    params.validate()?;
    let r_lambda = params
        .convention
        .r_lambda(params.a, params.r0, params.lambda);
    let delta1 = geom::delta1_max(r_lambda, params.a)?;
    let r1 = geom::ob_length(delta1, r_lambda)?;
    Ok(DerivedParams {
        r_lambda,
        delta1,
        r1,
        g_mid: (1.0 + 2.0 * r_lambda) / (1.0 - 2.0 * r_lambda),
        case_ii_feasible: r1 - 1.0 > params.a,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(format!("quadrature tolerance must be finite and > 0, got {tol}")));
    }
    Ok(())
}

/// `∫_a^{r0} r / g(r) dr`, split at the kinks of `g`.
pub fn case_i_integral(params: &BoundParams, tol: f64) -> Result<f64> {
    let derived = derive_params(params)?;
    integral_with(params, &derived, tol)
}

fn integral_with(params: &BoundParams, derived: &DerivedParams, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (lo, hi) = (params.a, params.r0);
    let mut breaks = vec![lo];
    breaks.extend(g_kinks(lo, hi, derived)?.into_iter().map(|k| k.r));
    breaks.push(hi);
    let g_mid = derived.g_mid;
    integrate_piecewise(&|r: f64| r / g_unchecked(r, g_mid), &breaks, tol)
}

fn check_f_radius(r: f64) -> Result<()> {
    ensure_finite(&[("r", r)])?;
    if !(F_MIN_RADIUS..=0.5).contains(&r) {
        return Err(domain(format!("f-based bounds need 0.15 <= r <= 1/2, got {r}")));
    }
    Ok(())
}

/// The pieces every Case I / Case II combination is made of, as
/// coefficients of π: Case I is `k0 + p·k1`, Case II is `(1 − p)·k2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseTerms {
    pub derived: DerivedParams,
    pub integral_value: f64,
    pub f_r0: f64,
    pub kappa: f64,
    /// `f(r0)/4`.
    pub k0: f64,
    /// `κ·∫/3`.
    pub k1: f64,
    /// `c(r1 − 1)/4`, or `None` when Case II is infeasible.
    pub k2: Option<f64>,
}

impl CaseTerms {
    pub fn compute(params: &BoundParams, tol: f64) -> Result<Self> {
        let derived = derive_params(params)?;
        check_f_radius(params.r0)?;
        let integral_value = integral_with(params, &derived, tol)?;
        let f_r0 = f(params.r0);
        let kappa = inner_coefficient(params.r0);
        let k2 = if derived.case_ii_feasible {
            Some(0.25 * c(derived.r1 - 1.0, params.a)?)
        } else {
            None
        };
        Ok(Self {
            derived,
            integral_value,
            f_r0,
            kappa,
            k0: 0.25 * f_r0,
            k1: kappa * integral_value / 3.0,
            k2,
        })
    }

    pub fn case_i(&self, p: f64) -> f64 {
        self.k0 + p * self.k1
    }

    pub fn case_ii(&self, p: f64, a: f64) -> Result<f64> {
        let k2 = self.k2.ok_or(Error::CaseIIInfeasible {
            r1_minus_1: self.derived.r1 - 1.0,
            a,
        })?;
        Ok((1.0 - p) * k2)
    }
}

/// Case I bound `p·(1/3)·(1 − f(r0)/(2r0²))·∫ + f(r0)/4`.
pub fn case_i_bound(params: &BoundParams, tol: f64) -> Result<f64> {
    let derived = derive_params(params)?;
    check_f_radius(params.r0)?;
    let integral = integral_with(params, &derived, tol)?;
    Ok(params.p * inner_coefficient(params.r0) * integral / 3.0 + 0.25 * f(params.r0))
}

/// Case II bound `(1 − p)/4 · c(r1 − 1)`.
pub fn case_ii_bound(params: &BoundParams) -> Result<f64> {
    let derived = derive_params(params)?;
    if !derived.case_ii_feasible {
        return Err(Error::CaseIIInfeasible {
            r1_minus_1: derived.r1 - 1.0,
            a: params.a,
        });
    }
    Ok(0.25 * (1.0 - params.p) * c(derived.r1 - 1.0, params.a)?)
}

/// `min(Case I, Case II, a/(2π))` with all intermediates.
pub fn theorem_bound(params: &BoundParams, tol: f64) -> Result<BoundBreakdown> {
    let terms = CaseTerms::compute(params, tol)?;
    let case_i = terms.case_i(params.p);
    let case_ii = terms.case_ii(params.p, params.a)?;
    let half_a = params.a / (2.0 * PI);
    Ok(BoundBreakdown {
        params: *params,
        derived: terms.derived,
        case_i,
        case_ii,
        half_a,
        final_value: case_i.min(case_ii).min(half_a),
        integral_value: terms.integral_value,
        f_r0: terms.f_r0,
        c_r1m1: terms.k2.map_or(0.0, |k| 4.0 * k),
    })
}

/// `f(1/6)/4 = 1/108`.
pub fn cunningham_bound() -> f64 {
    0.25 * f(1.0 / 6.0)
}

/// Absolute area `measA·f(r)/4`.
pub fn phiareamin_bound(meas_a: Measure1D, r: f64) -> Result<f64> {
    check_f_radius(r)?;
    Ok(meas_a.value() * f(r) / 4.0)
}

/// Absolute area `(measA/4)·f(r) + max(0, 1 − f(r)/(2r²))·a0`.
pub fn inplusout_bound(meas_a: Measure1D, r: f64, a0: f64) -> Result<f64> {
    check_f_radius(r)?;
    ensure_finite(&[("a0", a0)])?;
    if a0 < 0.0 {
        return Err(domain(format!("inner area must be >= 0, got {a0}")));
    }
    Ok(meas_a.value() * f(r) / 4.0 + inner_coefficient(r).max(0.0) * a0)
}

/// Absolute area `measA·c(r)/4`.
pub fn outcir_bound(meas_a: Measure1D, r: f64, a: f64) -> Result<f64> {
    Ok(meas_a.value() * c(r, a)? / 4.0)
}

/// Cross-section length `p·(π/3)·r/g(r)` at radius `r`.
pub fn cross_section_bound(p: f64, r: f64, derived: &DerivedParams) -> Result<f64> {
    ensure_finite(&[("p", p)])?;
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(p * (PI / 3.0) * r / g(r, derived)?)
}

/// `(5 − 2√2)/24`, the area coefficient of the best known star-shaped
/// Kakeya construction.
pub fn upper_bound_coefficient() -> f64 {
    (5.0 - 2.0 * 2f64.sqrt()) / 24.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn defaults_derived() -> DerivedParams {
        derive_params(&BoundParams::theorem()).unwrap()
    }

    #[test]
    fn f_values() {
        assert!(close(f(1.0 / 6.0), 1.0 / 27.0, 1e-17));
        assert_eq!(f(0.5), 0.0);
        assert_eq!(f(0.25), 0.03125);
    }

    #[test]
    fn c_values() {
        let a = PI / 49.0;
        assert!(close(c(a, a).unwrap(), a / PI, 1e-17));
        let d = defaults_derived();
        let v = c(d.r1 - 1.0, a).unwrap();
        assert!(close(v, 0.428_716_180_788_198_02, 1e-13), "{v}");
        assert!(c(0.01, 0.02).is_err());
        assert!(c(0.1, 0.0).is_err());
    }

    #[test]
    fn derived_defaults() {
        let d = defaults_derived();
        assert!(close(d.r_lambda, 0.231_411_413_578_754_68, 1e-15));
        assert!(close(d.delta1, 0.017_261_659_295_639_277, 1e-14));
        assert!(close(d.r1, 1.858_231_900_909_882_2, 1e-12));
        assert!(d.case_ii_feasible);
        assert!(d.r_lambda >= PI / 49.0 && d.r_lambda <= 0.25);
    }

    #[test]
    fn r_lambda_endpoints() {
        let p = BoundParams::theorem();
        let one = derive_params(&BoundParams { lambda: 1.0, ..p }).unwrap();
        let zero = derive_params(&BoundParams { lambda: 0.0, ..p }).unwrap();
        assert_eq!(one.r_lambda, p.r0);
        assert_eq!(zero.r_lambda, p.a);
        let lit = RLambdaConvention::PaperLiteral.r_lambda(p.a, p.r0, 1.0);
        assert_eq!(lit, p.a);
    }

    #[test]
    fn g_values() {
        let d = defaults_derived();
        let v = g(0.2, &d).unwrap();
        assert!(close(v, 2.723_166_398_558_848_6, 1e-13), "{v}");
        assert_eq!(argmax3(g_components(0.2, &d).unwrap()), 1);
        assert!(close(g(0.25, &d).unwrap(), 3.0, 1e-15));
        assert!(g(0.5, &d).is_err());
    }

    #[test]
    fn g_kinks_defaults() {
        let d = defaults_derived();
        let k = g_kinks(PI / 49.0, 0.25, &d).unwrap();
        assert_eq!(k.len(), 2, "{k:?}");
        assert!(close(k[0].r, 0.221_574_481_838_816_65, 1e-12), "{:?}", k[0]);
        assert!(close(k[1].r, 0.235_298_816_920_677_26, 1e-12), "{:?}", k[1]);
        assert_eq!((k[0].from, k[0].to), (1, 2));
        assert_eq!((k[1].from, k[1].to), (2, 0));
    }

    #[test]
    fn integral_defaults() {
        let p = BoundParams::theorem();
        let v = case_i_integral(&p, 1e-10).unwrap();
        assert!(close(v, 0.010_635_251_311_336_261, 2e-10), "{v}");
        let same = BoundParams { a: 0.25, r0: 0.25, ..p };
        assert!(same.validate().is_err());
    }

    #[test]
    fn theorem_defaults() {
        let b = theorem_bound(&BoundParams::theorem(), 1e-10).unwrap();
        assert!(close(b.case_i, 0.010_205_431_545_050_659, 1e-11), "{}", b.case_i);
        assert!(close(b.case_ii, 0.010_717_904_519_704_951, 1e-13), "{}", b.case_ii);
        assert_eq!(b.half_a, (PI / 49.0) / (2.0 * PI));
        assert!(close(b.half_a, 1.0 / 98.0, 1e-17));
        assert_eq!(b.final_value, b.half_a);
        assert!(b.final_value * PI >= PI / 98.0);
        assert!(b.final_value >= 1.0 / 98.0);
    }

    #[test]
    fn case_i_p_zero() {
        let p = BoundParams::theorem().with_p(0.0);
        assert!(close(case_i_bound(&p, 1e-10).unwrap(), 0.0078125, 1e-17));
        assert_eq!(inner_coefficient(0.25), 0.75);
    }

    #[test]
    fn case_ii_p_one_and_min() {
        let p = BoundParams::theorem().with_p(1.0);
        assert_eq!(case_ii_bound(&p).unwrap(), 0.0);
        let b = theorem_bound(&p, 1e-10).unwrap();
        assert_eq!(b.final_value, 0.0);
    }

    #[test]
    fn literal_convention_case_ii() {
        let p = BoundParams::theorem().with_convention(RLambdaConvention::PaperLiteral);
        let v = case_ii_bound(&p).unwrap();
        assert!(close(v, 0.002_290_116_990_498_285_3, 1e-13), "{v}");
    }

    #[test]
    fn case_ii_infeasible_is_typed() {
        let mut terms = CaseTerms::compute(&BoundParams::theorem(), 1e-10).unwrap();
        terms.k2 = None;
        assert!(matches!(terms.case_ii(0.5, 0.1), Err(Error::CaseIIInfeasible { .. })));
    }

    #[test]
    fn case_ii_feasible_across_domain() {
        for i in 1..60 {
            let a = 0.49 * i as f64 / 60.0;
            for j in 0..=20 {
                let lambda = j as f64 / 20.0;
                let r0 = a + 0.5 * (0.5 - a);
                let p = BoundParams { a, r0, p: 0.5, lambda, convention: RLambdaConvention::Reproducing };
                assert!(derive_params(&p).unwrap().case_ii_feasible, "a={a} lambda={lambda}");
            }
        }
    }

    #[test]
    fn validation_messages() {
        let p = BoundParams { a: 0.5, r0: 0.25, ..BoundParams::theorem() };
        let e = p.validate().unwrap_err().to_string();
        assert!(e.contains("a must be < r0"), "{e}");
        assert!(BoundParams { p: 1.5, ..BoundParams::theorem() }.validate().is_err());
        assert!(BoundParams { lambda: -0.1, ..BoundParams::theorem() }.validate().is_err());
        assert!(BoundParams { r0: 0.5, ..BoundParams::theorem() }.validate().is_err());
        assert!(BoundParams { a: f64::NAN, ..BoundParams::theorem() }.validate().is_err());
    }

    #[test]
    fn small_r0_rejected_for_case_i() {
        let p = BoundParams { a: 0.05, r0: 0.12, ..BoundParams::theorem() };
        assert!(case_i_bound(&p, 1e-10).is_err());
    }

    #[test]
    fn cunningham_and_friends() {
        assert!(close(cunningham_bound(), 1.0 / 108.0, 1e-15));
        let via = phiareamin_bound(Measure1D::FULL, 1.0 / 6.0).unwrap() / PI;
        assert!(close(via, cunningham_bound(), 1e-16));
        assert!(1.0 / 108.0 < 1.0 / 98.0 && 1.0 / 98.0 < upper_bound_coefficient());
        assert!(close(upper_bound_coefficient(), 0.090_482_203_135_575_41, 1e-16));
        let half = Measure1D::new(FRAC_PI_2).unwrap();
        assert!(close(phiareamin_bound(half, 1.0 / 6.0).unwrap(), PI / 216.0, 1e-16));
        assert_eq!(phiareamin_bound(Measure1D::new(0.0).unwrap(), 0.3).unwrap(), 0.0);
        assert!(phiareamin_bound(Measure1D::FULL, 0.1).is_err());
        assert!(Measure1D::new(4.0).is_err());
    }

    #[test]
    fn inplusout_values() {
        let v = inplusout_bound(Measure1D::FULL, 0.25, 0.01).unwrap();
        assert!(close(v, PI / 4.0 * 0.03125 + 0.75 * 0.01, 1e-16));
        let base = phiareamin_bound(Measure1D::FULL, 0.3).unwrap();
        assert_eq!(inplusout_bound(Measure1D::FULL, 0.3, 0.0).unwrap(), base);
        assert!(inplusout_bound(Measure1D::FULL, 0.3, -1.0).is_err());
    }

    #[test]
    fn outcir_and_cross_section() {
        let d = defaults_derived();
        let a = PI / 49.0;
        let v = outcir_bound(Measure1D::FULL, d.r1 - 1.0, a).unwrap() / PI;
        assert!(close(v, 0.107_179_045_197_049_51, 1e-13), "{v}");
        assert_eq!(outcir_bound(Measure1D::new(0.0).unwrap(), 0.3, a).unwrap(), 0.0);
        let x = cross_section_bound(0.9, 0.2, &d).unwrap();
        assert!(close(x, 0.069_219_258_623_029_069, 1e-13), "{x}");
        assert_eq!(cross_section_bound(0.0, 0.2, &d).unwrap(), 0.0);
    }

    #[test]
    fn convention_roundtrip() {
        for c in [RLambdaConvention::Reproducing, RLambdaConvention::PaperLiteral] {
            assert_eq!(c.to_string().parse::<RLambdaConvention>().unwrap(), c);
        }
        assert!("literal".parse::<RLambdaConvention>().is_err());
        assert_eq!(RLambdaConvention::default(), RLambdaConvention::Reproducing);
    }
}
