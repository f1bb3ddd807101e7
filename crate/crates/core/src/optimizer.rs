//! Parameter optimization of the main bound and the iterative refinement.
//!
//! The objective at `(a, r0, λ)` is `min(balanced value, a/(2π))`, where the
//! balanced value is Case I = Case II with `p` solved in closed form.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundBreakdown, BoundParams, CaseTerms, RLambdaConvention};
use crate::error::{domain, Error, Result};
use crate::numeric::{golden_section_max, linspace};

pub const DEFAULT_GRID: usize = 32;
pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_STARTS: usize = 4;
pub const DEFAULT_REFINE_ITER: usize = 50;
pub const DEFAULT_REFINE_TOL: f64 = 1e-9;

/// λ at the published optimum of the three-parameter problem.
pub const SEC41_LAMBDA: f64 = 0.90696;

const MAX_ROUNDS: usize = 50;
const A_XTOL: f64 = 1e-10;
const COORD_XTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn grid(&self, n: usize) -> Vec<f64> {
        linspace(self.lo, self.hi, if self.is_point() { 1 } else { n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub a: Interval,
    pub r0: Interval,
    pub lambda: Interval,
    /// Grid points per non-degenerate axis.
    pub grid: usize,
    /// Stop refining once a full round gains less than this.
    pub tol: f64,
    pub quad_tol: f64,
    pub convention: RLambdaConvention,
    /// Number of best grid points refined.
    pub starts: usize,
}

impl SearchBox {
    /// `a ∈ [0.05, 0.08]`, `r0 ∈ [0.20, 0.26]`, `λ ∈ [0.85, 0.95]`.
    pub fn default_box() -> Self {
        Self {
            a: Interval::new(0.05, 0.08),
            r0: Interval::new(0.20, 0.26),
            lambda: Interval::new(0.85, 0.95),
            grid: DEFAULT_GRID,
            tol: DEFAULT_TOL,
            quad_tol: bounds::DEFAULT_QUAD_TOL,
            convention: RLambdaConvention::Reproducing,
            starts: DEFAULT_STARTS,
        }
    }

    /// The default box with `λ` pinned at the published optimum, so only
    /// `a` and `r0` are optimized.
    pub fn sec41() -> Self {
        Self {
            lambda: Interval::point(SEC41_LAMBDA),
            ..Self::default_box()
        }
    }

    /// A box collapsed onto a single parameter point.
    pub fn point(params: &BoundParams) -> Self {
        Self {
            a: Interval::point(params.a),
            r0: Interval::point(params.r0),
            lambda: Interval::point(params.lambda),
            convention: params.convention,
            ..Self::default_box()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, iv) in [("a", self.a), ("r0", self.r0), ("lambda", self.lambda)] {
            if !(iv.lo.is_finite() && iv.hi.is_finite() && iv.lo <= iv.hi) {
                return Err(domain(format!(
                    "{name} interval [{}, {}] is not a finite closed interval",
                    iv.lo, iv.hi
                )));
            }
        }
        if self.a.hi >= self.r0.lo {
            return Err(domain(format!(
                "a interval must lie strictly below the r0 interval (a <= {}, r0 >= {})",
                self.a.hi, self.r0.lo
            )));
        }
        if self.a.lo <= 0.0 {
            return Err(domain("a interval must be positive"));
        }
        if self.r0.lo < bounds::F_MIN_RADIUS || self.r0.hi >= 0.5 {
            return Err(domain(format!(
                "r0 interval must lie in [0.15, 1/2), got [{}, {}]",
                self.r0.lo, self.r0.hi
            )));
        }
        if self.lambda.lo < 0.0 || self.lambda.hi > 1.0 {
            return Err(domain("lambda interval must lie in [0, 1]"));
        }
        if self.grid == 0 || self.starts == 0 {
            return Err(domain("grid and starts must be >= 1"));
        }
        if !(self.tol > 0.0 && self.quad_tol > 0.0) {
            return Err(domain("tolerances must be > 0"));
        }
        Ok(())
    }

    pub fn contains(&self, a: f64, r0: f64, lambda: f64) -> bool {
        self.a.contains(a) && self.r0.contains(r0) && self.lambda.contains(lambda)
    }

    fn params(&self, a: f64, r0: f64, lambda: f64) -> BoundParams {
        BoundParams {
            a,
            r0,
            p: 0.0,
            lambda,
            convention: self.convention,
        }
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        Self::default_box()
    }
}

/// Case I and Case II combined at the `p` where they agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Balance {
    pub p: f64,
    pub case_i: f64,
    pub case_ii: f64,
    /// `min(case_i, case_ii)`.
    pub value: f64,
}

fn balance_terms(terms: &CaseTerms, extra_k0: f64, a: f64) -> Result<Balance> {
    let k2 = terms.k2.ok_or(Error::CaseIIInfeasible {
        r1_minus_1: terms.derived.r1 - 1.0,
        a,
    })?;
    let k0 = terms.k0 + extra_k0;
    let denom = terms.k1 + k2;
    let p = if denom > 0.0 {
        ((k2 - k0) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let case_i = k0 + p * terms.k1;
    let case_ii = (1.0 - p) * k2;
    Ok(Balance {
        p,
        case_i,
        case_ii,
        value: case_i.min(case_ii),
    })
}

/// Balances `p` for the given `(a, r0, λ, convention)`; `params.p` is ignored.
pub fn balance(params: &BoundParams, quad_tol: f64) -> Result<Balance> {
    let terms = CaseTerms::compute(&params.with_p(0.0), quad_tol)?;
    balance_terms(&terms, 0.0, params.a)
}

/// `p = (K2 − K0)/(K1 + K2)` clamped to `[0, 1]`, reproducing convention.
pub fn balance_p(a: f64, r0: f64, lambda: f64, quad_tol: f64) -> Result<f64> {
    let params = BoundParams {
        a,
        r0,
        p: 0.0,
        lambda,
        convention: RLambdaConvention::Reproducing,
    };
    Ok(balance(&params, quad_tol)?.p)
}

/// `min(balanced value, a/(2π))`; Case II infeasibility maps to `-inf`.
pub fn objective(params: &BoundParams, quad_tol: f64) -> Result<f64> {
    match balance(params, quad_tol) {
        Ok(b) => Ok(b.value.min(params.a / (2.0 * PI))),
        Err(Error::CaseIIInfeasible { .. }) => Ok(f64::NEG_INFINITY),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub params: BoundParams,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    /// Best point, with `p` set to its balanced value.
    pub best: BoundParams,
    pub breakdown: BoundBreakdown,
    pub balanced_p: f64,
    /// Objective at `best`; equals `breakdown.final`.
    pub value: f64,
    /// Grid optimum followed by the best point after each refinement round.
    pub trace: Vec<TracePoint>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    a: f64,
    r0: f64,
    lambda: f64,
    value: f64,
}

struct Refiner<'a> {
    bx: &'a SearchBox,
}

impl Refiner<'_> {
    fn eval(&self, a: f64, r0: f64, lambda: f64) -> f64 {
        objective(&self.bx.params(a, r0, lambda), self.bx.quad_tol).unwrap_or(f64::NEG_INFINITY)
    }

    /// Best `a` for fixed `(r0, λ)`.
    fn profile(&self, r0: f64, lambda: f64) -> (f64, f64) {
        let iv = self.bx.a;
        if iv.is_point() {
            return (iv.lo, self.eval(iv.lo, r0, lambda));
        }
        golden_section_max(|a| self.eval(a, r0, lambda), iv.lo, iv.hi, A_XTOL)
    }

    fn refine(&self, start: Candidate) -> (Candidate, Vec<Candidate>) {
        let mut cur = start;
        let (a, v) = self.profile(cur.r0, cur.lambda);
        if v > cur.value {
            cur = Candidate { a, value: v, ..cur };
        }
        let mut rounds = vec![cur];
        for _ in 0..MAX_ROUNDS {
            let before = cur.value;
            if !self.bx.r0.is_point() {
                let lambda = cur.lambda;
                let (r0, v) = golden_section_max(
                    |r0| self.profile(r0, lambda).1,
                    self.bx.r0.lo,
                    self.bx.r0.hi,
                    COORD_XTOL,
                );
                if v > cur.value {
                    let (a, v) = self.profile(r0, lambda);
                    cur = Candidate { a, r0, lambda, value: v };
                }
            }
            if !self.bx.lambda.is_point() {
                let r0 = cur.r0;
                let (lambda, v) = golden_section_max(
                    |l| self.profile(r0, l).1,
                    self.bx.lambda.lo,
                    self.bx.lambda.hi,
                    COORD_XTOL,
                );
                if v > cur.value {
                    let (a, v) = self.profile(r0, lambda);
                    cur = Candidate { a, r0, lambda, value: v };
                }
            }
            rounds.push(cur);
            if cur.value - before < self.bx.tol {
                break;
            }
        }
        (cur, rounds)
    }
}

fn better(x: &Candidate, y: &Candidate) -> std::cmp::Ordering {
    y.value
        .partial_cmp(&x.value)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(x.a.total_cmp(&y.a))
        .then(x.r0.total_cmp(&y.r0))
        .then(x.lambda.total_cmp(&y.lambda))
}

/// Multi-start grid search followed by coordinate golden-section refinement.
pub fn optimize(bx: &SearchBox) -> Result<OptimizationResult> {
    bx.validate()?;
    let mut points = Vec::new();
    for &a in &bx.a.grid(bx.grid) {
        for &r0 in &bx.r0.grid(bx.grid) {
            for &lambda in &bx.lambda.grid(bx.grid) {
                points.push((a, r0, lambda));
            }
        }
    }
    let theorem = BoundParams::theorem();
    if bx.contains(theorem.a, theorem.r0, theorem.lambda) {
        points.push((theorem.a, theorem.r0, theorem.lambda));
    }
    let evaluations = points.len();
    let mut cands = points
        .into_par_iter()
        .map(|(a, r0, lambda)| {
            let value = objective(&bx.params(a, r0, lambda), bx.quad_tol)?;
            Ok(Candidate { a, r0, lambda, value })
        })
        .collect::<Result<Vec<_>>>()?;
    cands.retain(|c| c.value.is_finite());
    if cands.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    cands.sort_by(better);
    let grid_best = cands[0];
    let starts: Vec<Candidate> = cands.into_iter().take(bx.starts).collect();

    let refiner = Refiner { bx };
    let refined: Vec<(Candidate, Vec<Candidate>)> =
        starts.par_iter().map(|s| refiner.refine(*s)).collect();
    let (best, rounds) = refined
        .iter()
        .min_by(|x, y| better(&x.0, &y.0))
        .cloned()
        .expect("at least one start");
    let best = if better(&grid_best, &best).is_lt() { grid_best } else { best };

    let mut params = bx.params(best.a, best.r0, best.lambda);
    let bal = balance(&params, bx.quad_tol)?;
    params.p = bal.p;
    let breakdown = bounds::theorem_bound(&params, bx.quad_tol)?;
    let to_trace = |c: &Candidate| TracePoint {
        params: bx.params(c.a, c.r0, c.lambda),
        value: c.value,
    };
    let mut trace = vec![to_trace(&grid_best)];
    trace.extend(rounds.iter().map(to_trace));
    Ok(OptimizationResult {
        best: params,
        value: breakdown.final_value,
        balanced_p: bal.p,
        breakdown,
        trace,
        evaluations,
    })
}

/// [`refine_iterative_with`] at the default quadrature tolerance.
pub fn refine_iterative(start: &BoundParams, max_iter: usize, tol: f64) -> Result<Vec<f64>> {
    refine_iterative_with(start, max_iter, tol, bounds::DEFAULT_QUAD_TOL)
}

/// Rescaling refinement with `r0` and `λ` held fixed.
///
/// The previous Case I value `L`, scaled by `(a/r1)²`, is a lower bound on
/// the area inside `B_{r0}` and enters through the inner/outer combination.
/// Each step rebalances `p` with that inner term and moves `a` up to where
/// the balanced value meets `a/(2π)`. Returns the bound after every step,
/// starting with the unrefined `theorem_bound(start).final`.
pub fn refine_iterative_with(
    start: &BoundParams,
    max_iter: usize,
    tol: f64,
    quad_tol: f64,
) -> Result<Vec<f64>> {
    let first = bounds::theorem_bound(start, quad_tol)?;
    let mut values = vec![first.final_value];
    let mut inner_l = first.case_i;
    let mut a = start.a;
    let a_cap = start.r0 * (1.0 - 1e-9);

    for _ in 0..max_iter {
        let l_prev = inner_l;
        let step = |a: f64| -> Result<Balance> {
            let params = BoundParams { a, ..*start };
            let terms = CaseTerms::compute(&params, quad_tol)?;
            let r1 = terms.derived.r1;
            let extra = terms.kappa.max(0.0) * (a / r1).powi(2) * l_prev;
            balance_terms(&terms, extra, a)
        };
        let gap = |a: f64| step(a).map_or(f64::NEG_INFINITY, |b| b.value - a / (2.0 * PI));
        if gap(a) >= 0.0 {
            let mut lo = a;
            let mut width = 1e-4;
            let hi = loop {
                let hi = (lo + width).min(a_cap);
                if gap(hi) < 0.0 {
                    break Some(hi);
                }
                if hi >= a_cap {
                    break None;
                }
                lo = hi;
                width *= 2.0;
            };
            a = match hi {
                Some(hi) => bracket_low(&gap, lo, hi),
                None => a_cap,
            };
        }
        let bal = step(a)?;
        let value = bal.value.min(a / (2.0 * PI));
        let prev = *values.last().expect("nonempty");
        values.push(value);
        inner_l = bal.case_i;
        if value - prev < tol {
            break;
        }
    }
    Ok(values)
}

/// Low end of a bisection bracket for a sign change of `f` from `>= 0` to `< 0`.
fn bracket_low<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
