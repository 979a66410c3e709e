//! Comparison tools: the Picone–Young identity gap, a Sturm-type zero
//! verdict for the jumping equation, zero-count growth in `λ`, and a
//! nonexistence scan for nonlinearities trapped between two consecutive
//! half-eigenvalues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ivp::{count_zeros, integrate, integrate_system, IvpOptions, Trajectory};
use crate::problem::{CoefficientFn, Coupling, ProblemSpec};
use crate::scalar::Exponent;
use crate::spectrum::half_eigenvalue;
use crate::Sign;

/// Radius of the excluded neighbourhood around an endpoint zero of `u2`.
pub const ENDPOINT_RADIUS: f64 = 1e-6;
/// Absolute convergence target of the gap quadrature.
pub const GAP_TOL: f64 = 1e-10;
/// Samples used to test coefficient hypotheses.
pub const HYPOTHESIS_SAMPLES: usize = 10_000;
/// Normalized-miss floor below which a scanned slope counts as a solution.
pub const MISS_FLOOR: f64 = 1e-3;

const GL_NODES: [f64; 5] =
    [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// `|u1'|^p + (p-1)|u1 u2'/u2|^p - p φ_p(u1) u1' φ_p(u2'/u2)`, which is `≥ 0`.
pub fn young_integrand(e: &Exponent, u1: f64, du1: f64, u2: f64, du2: f64) -> f64 {
    let p = e.p();
    let w = du2 / u2;
    du1.abs().powf(p) + (p - 1.0) * (u1 * w).abs().powf(p) - p * e.phi(u1) * du1 * e.phi(w)
}

fn gauss(panels: &[f64], f: &impl Fn(f64) -> f64) -> f64 {
    panels
        .windows(2)
        .map(|w| {
            let (m, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            h * GL_NODES.iter().zip(GL_WEIGHTS).map(|(t, wt)| wt * f(m + h * t)).sum::<f64>()
        })
        .sum()
}

fn refine(panels: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * panels.len());
    for w in panels.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.extend(panels.last());
    out
}

fn mesh(u1: &Trajectory, u2: &Trajectory, c: f64, d: f64) -> Vec<f64> {
    let mut xs: Vec<f64> = u1.nodes().iter().chain(u2.nodes()).map(|n| n.x).filter(|&x| x > c && x < d).collect();
    xs.push(c);
    xs.push(d);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (d - c));
    xs
}

fn gap_on(u1: &Trajectory, u2: &Trajectory, e: &Exponent, c: f64, d: f64) -> f64 {
    let f = |x: f64| {
        let (a, da) = (u1.u(x), u1.du(x));
        let (b, db) = (u2.u(x), u2.du(x));
        young_integrand(e, a, da, b, db)
    };
    let mut panels = mesh(u1, u2, c, d);
    let mut value = gauss(&panels, &f);
    for _ in 0..12 {
        panels = refine(&panels);
        let next = gauss(&panels, &f);
        let done = (next - value).abs() <= GAP_TOL * value.abs().max(1.0);
        value = next;
        if done {
            break;
        }
    }
    value
}

/// `∫_c^d` of [`young_integrand`] over two trajectories, with the singular
/// neighbourhoods of endpoint zeros of `u2` removed and extrapolated away.
pub fn picone_young_gap(u1: &Trajectory, u2: &Trajectory, p: f64, (c, d): (f64, f64)) -> Result<f64> {
    let e = Exponent::new(p)?;
    if !(c < d) {
        return Err(Error::InvalidInput(format!("need c < d, got ({c}, {d})")));
    }
    for t in [u1, u2] {
        if t.start() > c + 1e-14 || t.end() < d - 1e-14 {
            return Err(Error::InvalidInput(format!(
                "trajectory on [{}, {}] does not cover [{c}, {d}]",
                t.start(),
                t.end()
            )));
        }
    }
    let rho = ENDPOINT_RADIUS * (d - c);
    let sup2 = u2.sup_norm();
    let vanishes = |x: f64| u2.u(x).abs() <= 1e-9 * sup2;
    let (left, right) = (vanishes(c), vanishes(d));
    if let Some(z) = u2.all_zeros().iter().find(|z| z.x > c + rho && z.x < d - rho) {
        return Err(Error::U2Vanishes(z.x));
    }
    if !left && !right {
        return Ok(gap_on(u1, u2, &e, c, d));
    }
    let cut = |r: f64| {
        let a = if left { c + r } else { c };
        let b = if right { d - r } else { d };
        gap_on(u1, u2, &e, a, b)
    };
    Ok(2.0 * cut(rho) - cut(2.0 * rho))
}

/// Two solutions of `-(φ_p(u'))' = b φ_p(u) + α φ_p(u⁺) + β φ_p(u⁻)` started
/// at `c` with slopes `slope1` and `slope2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmProblem {
    pub p: f64,
    pub c: f64,
    pub d: f64,
    pub b1: CoefficientFn,
    pub b2: CoefficientFn,
    pub alpha: f64,
    pub beta: f64,
    pub slope1: f64,
    pub slope2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SturmVerdict {
    /// First zero of `u2` in `(c, d]`.
    ZeroFound(f64),
    /// `u2 = μ u1` on `[c, d]`.
    Proportional(f64),
    /// `u2` keeps its sign on `(c, d]`: the comparison is contradicted.
    NoZero,
}

fn jumping_rhs(e: Exponent, b: &CoefficientFn, alpha: f64, beta: f64) -> impl Fn(f64, f64, f64) -> f64 + '_ {
    move |x, u, _| b.eval(x) * e.phi(u) + alpha * e.phi(u.max(0.0)) + beta * e.phi((-u).max(0.0))
}

/// Solves the jumping equation with coefficient `b` on `[c, d]` from `u(c) = 0`.
pub fn jumping_trajectory(
    p: f64,
    b: &CoefficientFn,
    alpha: f64,
    beta: f64,
    c: f64,
    d: f64,
    slope: f64,
) -> Result<Trajectory> {
    let e = Exponent::new(p)?;
    if slope == 0.0 || !slope.is_finite() {
        return Err(Error::InvalidInput("slope must be finite and nonzero".into()));
    }
    integrate_system(e, c, d, slope, &IvpOptions::default(), jumping_rhs(e, b, alpha, beta)).into_result()
}

/// End of the first arch of the jumping solution started at `c`, searched up to `c + span`.
pub fn arch_end(p: f64, b: &CoefficientFn, alpha: f64, beta: f64, c: f64, span: f64, slope: f64) -> Result<f64> {
    let t = jumping_trajectory(p, b, alpha, beta, c, c + span, slope)?;
    t.all_zeros().first().map(|z| z.x).ok_or_else(|| Error::NoRoot(format!("no zero within {span} of {c}")))
}

/// Arch frequency seen by a solution of sign `s` with coefficient `b`.
fn effective(b: f64, alpha: f64, beta: f64, s: f64) -> f64 {
    if s > 0.0 {
        b + alpha
    } else {
        b - beta
    }
}

/// Sturm comparison on an arch `(c, d)` of `u1`.
///
/// Requires `b2 + α/-β ≥ b1 + α/-β` on `(c, d)`, the jump terms chosen by
/// the signs of `u2` and `u1` near `c`.
pub fn sturm_verdict(pr: &SturmProblem) -> Result<SturmVerdict> {
    Exponent::new(pr.p)?;
    if !(pr.c < pr.d) {
        return Err(Error::InvalidInput("need c < d".into()));
    }
    let span = pr.d - pr.c;
    let mut max_diff = 0.0f64;
    for i in 0..HYPOTHESIS_SAMPLES {
        let x = pr.c + span * (i as f64 + 0.5) / HYPOTHESIS_SAMPLES as f64;
        let (b1, b2) = (pr.b1.eval(x), pr.b2.eval(x));
        max_diff = max_diff.max((b2 - b1).abs());
        let e1 = effective(b1, pr.alpha, pr.beta, pr.slope1);
        let e2 = effective(b2, pr.alpha, pr.beta, pr.slope2);
        if e2 < e1 - 1e-12 * e1.abs().max(1.0) {
            return Err(Error::HypothesisViolated(format!("comparison coefficient {e2:.6e} < {e1:.6e} at x = {x:.6}")));
        }
    }
    let u1 = jumping_trajectory(pr.p, &pr.b1, pr.alpha, pr.beta, pr.c, pr.d, pr.slope1)?;
    let sup1 = u1.sup_norm();
    let edge = pr.d - 1e-8 * span;
    if u1.all_zeros().iter().any(|z| z.x < edge) || u1.endpoint().0.abs() > 1e-6 * sup1 {
        return Err(Error::HypothesisViolated(format!("({}, {}) is not an arch of u1", pr.c, pr.d)));
    }
    let u2 = jumping_trajectory(pr.p, &pr.b2, pr.alpha, pr.beta, pr.c, pr.d, pr.slope2)?;
    let sup2 = u2.sup_norm();

    if max_diff <= 1e-10 {
        let mu = pr.slope2 / pr.slope1;
        let shape = (0..=1000)
            .map(|i| {
                let x = pr.c + span * i as f64 / 1000.0;
                (u2.u(x) - mu * u1.u(x)).abs()
            })
            .fold(0.0f64, f64::max);
        if shape <= 1e-8 * sup2 {
            return Ok(SturmVerdict::Proportional(mu));
        }
    }
    if let Some(z) = u2.all_zeros().first() {
        return Ok(SturmVerdict::ZeroFound(z.x));
    }
    if u2.endpoint().0.abs() <= 1e-10 * sup2 {
        return Ok(SturmVerdict::ZeroFound(pr.d));
    }
    Ok(SturmVerdict::NoZero)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivergence {
    pub lambdas: Vec<f64>,
    pub counts: Vec<usize>,
    /// Count guaranteed by arch-length comparison with the constant-coefficient problem.
    pub lower_bounds: Vec<usize>,
}

/// Interior zero counts of the unit-slope solution along increasing `λ`.
/// Fails if a count decreases or falls below the comparison bound.
pub fn zero_divergence_probe(spec: &ProblemSpec, lambdas: &[f64]) -> Result<ZeroDivergence> {
    let e = spec.check()?;
    if !spec.is_half_linear() {
        return Err(Error::InvalidInput("zero-count probe needs a half-linear problem".into()));
    }
    if lambdas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidInput("lambda list must be non-decreasing".into()));
    }
    let a0 = spec.weight.min_value();
    let jump = spec.alpha.abs_bound() + spec.beta.abs_bound();
    let mut counts = Vec::with_capacity(lambdas.len());
    let mut lower_bounds = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let t = integrate(spec, lambda, 1.0)?;
        let (n, _) = count_zeros(&t)?;
        let freq = lambda * a0 - jump;
        let k = if freq > 0.0 { (spec.length * freq.powf(1.0 / spec.p) / e.pi_p()).floor() as usize } else { 0 };
        let bound = k.saturating_sub(1);
        if let Some(&prev) = counts.last() {
            if n < prev {
                return Err(Error::Inconsistent(format!(
                    "zero count fell from {prev} to {n} at lambda = {lambda:.6e}"
                )));
            }
        }
        if n < bound {
            return Err(Error::Inconsistent(format!(
                "zero count {n} below comparison bound {bound} at lambda = {lambda:.6e}"
            )));
        }
        counts.push(n);
        lower_bounds.push(bound);
    }
    Ok(ZeroDivergence { lambdas: lambdas.to_vec(), counts, lower_bounds })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub slope: f64,
    pub miss: f64,
    pub zero_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonexistenceReport {
    pub k: usize,
    /// Signs `ν` whose window `(λ_k^ν, λ_{k+1}^ν)` contains the ratio range.
    pub windows: Vec<Sign>,
    pub ratio_range: (f64, f64),
    pub min_miss: f64,
    pub n_slopes: usize,
    pub counterexamples: Vec<Counterexample>,
    pub exploratory: bool,
}

impl NonexistenceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Range of `r f(s)/φ_p(s)` over `s ≠ 0`, including the limits at `0` and `∞`.
pub fn ratio_range(spec: &ProblemSpec) -> Result<(f64, f64)> {
    let e = spec.check()?;
    let f = spec.f.as_ref().ok_or_else(|| Error::InvalidInput("ratio needs f".into()))?;
    if f.coupling() != Coupling::EigenEmbedded {
        return Err(Error::InvalidInput(format!("{} is not positively comparable to φ_p", f.kind().name())));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for lim in [f.f0(), f.f_inf()].into_iter().flatten() {
        lo = lo.min(spec.r * lim);
        hi = hi.max(spec.r * lim);
    }
    for i in 0..=320 {
        let s = 10f64.powf(-8.0 + 16.0 * i as f64 / 320.0);
        for s in [s, -s] {
            let q = spec.r * f.eval(&e, s, 0.0) / e.phi(s);
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    Ok((lo, hi))
}

/// Shoots at `λ = 1` over `±logspace(1e-4, 1e4, n_slopes)` looking for
/// solutions whose ratio `r f/φ_p` sits strictly between `λ_k^ν` and `λ_{k+1}^ν`.
///
/// Outside exploratory mode, requires `α = β` and the window condition for
/// at least one `ν`.
pub fn nonexistence_scan(
    spec: &ProblemSpec,
    k: usize,
    n_slopes: usize,
    exploratory: bool,
) -> Result<NonexistenceReport> {
    spec.check()?;
    if k == 0 || n_slopes < 2 {
        return Err(Error::InvalidInput("need k >= 1 and at least two slopes".into()));
    }
    let (lo, hi) = ratio_range(spec)?;
    let base = spec.half_linear();
    let same = (0..=256).all(|i| {
        let x = spec.length * i as f64 / 256.0;
        (spec.alpha.eval(x) - spec.beta.eval(x)).abs() <= 1e-12
    });
    let mut windows = Vec::new();
    for nu in Sign::BOTH {
        let lk = half_eigenvalue(&base, k, nu)?.lambda;
        let lk1 = half_eigenvalue(&base, k + 1, nu)?.lambda;
        let margin = 1e-3 * lk.abs();
        if lo > lk + margin && hi < lk1 - margin {
            windows.push(nu);
        }
    }
    if !exploratory {
        if !same {
            return Err(Error::WindowViolated("alpha and beta differ".into()));
        }
        if windows.is_empty() {
            return Err(Error::WindowViolated(format!(
                "ratio range [{lo:.6e}, {hi:.6e}] is not inside any (lambda_{k}, lambda_{}) window",
                k + 1
            )));
        }
    }
    let mut min_miss = f64::INFINITY;
    let mut counterexamples = Vec::new();
    for i in 0..n_slopes {
        let m = 10f64.powf(-4.0 + 8.0 * i as f64 / (n_slopes - 1) as f64);
        for slope in [m, -m] {
            let t = integrate(spec, 1.0, slope)?;
            let miss = t.endpoint().0.abs() / t.sup_norm();
            min_miss = min_miss.min(miss);
            if miss < MISS_FLOOR {
                counterexamples.push(Counterexample { slope, miss, zero_count: t.interior_zeros().count() });
            }
        }
    }
    Ok(NonexistenceReport {
        k,
        windows,
        ratio_range: (lo, hi),
        min_miss,
        n_slopes: 2 * n_slopes,
        counterexamples,
        exploratory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::NonlinearitySpec;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn sine(k: f64) -> Trajectory {
        let spec = ProblemSpec::new(2.0, 1.0);
        integrate(&spec, k * k * PI * PI, k * PI).unwrap()
    }

    #[test]
    fn gap_vanishes_for_identical_functions() {
        let u = jumping_trajectory(2.0, &CoefficientFn::constant(PI * PI), 0.0, 0.0, 0.0, 0.9, 1.0).unwrap();
        let g = picone_young_gap(&u, &u, 2.0, (0.1, 0.9)).unwrap();
        assert!(g.abs() <= 1e-9, "{g}");
        let g = picone_young_gap(&u, &u.scaled(3.0), 2.0, (0.1, 0.9)).unwrap();
        assert!(g.abs() <= 1e-9, "{g}");
    }

    #[test]
    fn gap_matches_closed_form() {
        // ∫_0^{1/2} 4π² sin⁴(πx) dx = 3π²/4
        let g = picone_young_gap(&sine(2.0), &sine(1.0), 2.0, (0.0, 0.5)).unwrap();
        assert_relative_eq!(g, 0.75 * PI * PI, max_relative = 1e-7);
    }

    #[test]
    fn gap_rejects_interior_zero() {
        let r = picone_young_gap(&sine(1.0), &sine(2.0), 2.0, (0.1, 0.9));
        assert!(matches!(r, Err(Error::U2Vanishes(x)) if (x - 0.5).abs() < 1e-9));
    }

    #[test]
    fn sturm_examples() {
        let b1 = CoefficientFn::constant(PI * PI);
        let base = SturmProblem {
            p: 2.0,
            c: 0.0,
            d: 1.0,
            b1: b1.clone(),
            b2: CoefficientFn::constant(4.0 * PI * PI),
            alpha: 0.0,
            beta: 0.0,
            slope1: 1.0,
            slope2: 1.0,
        };
        match sturm_verdict(&base).unwrap() {
            SturmVerdict::ZeroFound(t) => assert!((t - 0.5).abs() < 1e-8),
            v => panic!("{v:?}"),
        }
        let prop = SturmProblem { b2: b1.clone(), slope2: 2.0, ..base.clone() };
        match sturm_verdict(&prop).unwrap() {
            SturmVerdict::Proportional(mu) => assert_relative_eq!(mu, 2.0),
            v => panic!("{v:?}"),
        }
        let bad = SturmProblem { b2: CoefficientFn::constant(1.0), ..base };
        assert!(matches!(sturm_verdict(&bad), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn sturm_with_jumps() {
        let (alpha, beta) = (2.0, 1.0);
        let b1 = CoefficientFn::constant(10.0);
        let d = arch_end(2.0, &b1, alpha, beta, 0.0, 5.0, 1.0).unwrap();
        assert_relative_eq!(d, PI / 12f64.sqrt(), max_relative = 1e-9);
        let pr = SturmProblem {
            p: 2.0,
            c: 0.0,
            d,
            b1,
            b2: CoefficientFn::affine(10.0, 3.0),
            alpha,
            beta,
            slope1: 1.0,
            slope2: 0.5,
        };
        assert!(matches!(sturm_verdict(&pr).unwrap(), SturmVerdict::ZeroFound(t) if t < d));
    }

    #[test]
    fn zero_counts_grow() {
        let spec = ProblemSpec::new(2.0, 1.0).with_weight(CoefficientFn::affine(1.0, 1.0));
        let lambdas: Vec<f64> = (1..=20).map(|i| 10.0 * (i * i) as f64).collect();
        let z = zero_divergence_probe(&spec, &lambdas).unwrap();
        assert!(z.counts.windows(2).all(|w| w[0] <= w[1]));
        assert!(*z.counts.last().unwrap() >= 20);
    }

    #[test]
    fn nonexistence_homogeneous() {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(1.0)).with_r(15.0);
        let rep = nonexistence_scan(&spec, 1, 20, false).unwrap();
        assert!(rep.passed());
        assert!(rep.min_miss > MISS_FLOOR);
        let edge = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(1.0)).with_r(PI * PI + 1e-3);
        assert!(matches!(nonexistence_scan(&edge, 1, 20, false), Err(Error::WindowViolated(_))));
        let jumping = spec.clone().with_jumping(1.0, 2.0);
        assert!(matches!(nonexistence_scan(&jumping, 1, 20, false), Err(Error::WindowViolated(_))));
        assert!(nonexistence_scan(&jumping, 1, 20, true).is_ok());
        let low = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(5.0, 20.0, 2.0));
        assert!(matches!(nonexistence_scan(&low, 1, 20, false), Err(Error::WindowViolated(_))));
    }
}
