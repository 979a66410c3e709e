//! Nodal solution branches of the eigen-embedded problem
//! `(φ_p(u'))' + α φ_p(u⁺) + β φ_p(u⁻) + λ r a f(u) = 0`, their crossings of
//! `λ = 1`, bifurcation intervals `I_k = [λ_k - M/a0, λ_k + M/a0]` of
//! perturbed problems, and the explicit oscillatory example family on `(0, π)`.
//!
//! Branches are parametrized by the initial slope amplitude `s = ν u'(0) > 0`.
//! At fixed `s`, `λ` is found by bracketing the entry of the `k`-th zero
//! through `x = L` and refining with a safeguarded false-position iteration.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ivp::{count_zeros, integrate, Trajectory};
use crate::problem::{Coupling, NonlinearitySpec, ProblemSpec};
use crate::roots::bisect_polish;
use crate::spectrum::{eigenvalue, half_eigenvalue};
use crate::Sign;

/// Relative tolerance of `λ` at fixed amplitude.
pub const AMPLITUDE_LAMBDA_RTOL: f64 = 1e-11;
/// A converged transition whose normalized miss exceeds this is rejected.
pub const MAX_RESIDUAL: f64 = 1e-6;
/// Maximum number of continuation step halvings.
pub const MAX_HALVINGS: usize = 40;
/// Tolerance on `|λ(s) - 1|` when extracting solutions at `λ = 1`.
pub const UNITY_TOL: f64 = 1e-9;
/// Widening of `I_k` when testing bifurcation-set estimates.
pub const INTERVAL_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPoint {
    pub s: f64,
    pub lambda: f64,
    pub sup_norm: f64,
    pub c1_norm: f64,
    pub zero_count: usize,
    /// `|u(L)| / sup |u|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    pub k: usize,
    pub nu: Sign,
    pub points: Vec<BranchPoint>,
    /// `λ` at the smallest and at the largest amplitude.
    pub endpoints_estimate: (f64, f64),
}

impl Branch {
    /// CSV with header `s,lambda,sup_norm,c1_norm,zero_count,residual`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "s,lambda,sup_norm,c1_norm,zero_count,residual")?;
        for p in &self.points {
            writeln!(
                w,
                "{:.12e},{:.15e},{:.12e},{:.12e},{},{:.3e}",
                p.s, p.lambda, p.sup_norm, p.c1_norm, p.zero_count, p.residual
            )?;
        }
        Ok(())
    }
}

/// Which side of the nodal transition a trial `λ` lands on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    /// Fewer than `k` zeros; `g` is the signed miss when exactly `k - 1`.
    Low(Option<f64>),
    /// At least `k` zeros; `g` is the signed miss when exactly `k`.
    High(Option<f64>),
}

struct Shooter<'a> {
    spec: &'a ProblemSpec,
    k: usize,
    slope: f64,
    /// Sign of the `k`-th arch.
    arch_sign: f64,
}

impl<'a> Shooter<'a> {
    fn new(spec: &'a ProblemSpec, k: usize, nu: Sign, s: f64) -> Self {
        Shooter { spec, k, slope: nu.value() * s, arch_sign: nu.of_arch(k).value() }
    }

    fn shoot(&self, lambda: f64) -> Result<(Side, Trajectory)> {
        let t = integrate(self.spec, lambda, self.slope)?;
        let c = t.raw_zero_count();
        let g = self.arch_sign * t.endpoint().0;
        let side = if c + 1 == self.k {
            Side::Low(Some(g))
        } else if c < self.k {
            Side::Low(None)
        } else if c == self.k {
            Side::High(Some(g))
        } else {
            Side::High(None)
        };
        Ok((side, t))
    }
}

/// Expands outward from `guess` until both sides of the transition are seen.
fn bracket_from_guess(sh: &Shooter, guess: f64) -> Result<((f64, Side), (f64, Side))> {
    let (side0, _) = sh.shoot(guess)?;
    let base = guess.abs().max(1e-2);
    let mut delta = 1e-3 * base;
    let mut inner = (guess, side0);
    for _ in 0..60 {
        let trial = match side0 {
            Side::Low(_) => guess + delta,
            Side::High(_) => guess - delta,
        };
        let (side, _) = sh.shoot(trial)?;
        match (side0, side) {
            (Side::Low(_), Side::High(_)) => return Ok((inner, (trial, side))),
            (Side::High(_), Side::Low(_)) => return Ok(((trial, side), inner)),
            _ => inner = (trial, side),
        }
        delta *= 2.0;
    }
    Err(Error::NoRoot(format!("no nodal transition for k = {} near lambda = {guess:.6e}", sh.k)))
}

/// Refines a `(low, high)` bracket and returns whichever final end carries
/// exactly `k - 1` interior zeros with the smaller endpoint miss.
fn refine_bracket(sh: &Shooter, mut lo: (f64, Side), mut hi: (f64, Side)) -> Result<(f64, Trajectory)> {
    let mut lo_t: Option<Trajectory> = None;
    let mut hi_t: Option<Trajectory> = None;
    let mut last_low: Option<bool> = None;
    let (mut wlo, mut whi) = (1.0, 1.0);
    for _ in 0..300 {
        let (a, b) = (lo.0.min(hi.0), lo.0.max(hi.0));
        if b - a <= AMPLITUDE_LAMBDA_RTOL * a.abs().max(b.abs()).max(1e-6) {
            break;
        }
        let trial = match (lo.1, hi.1) {
            (Side::Low(Some(ga)), Side::High(Some(gb))) => {
                // Illinois-weighted false position, kept off the bracket ends
                let ga = ga * wlo;
                let gb = gb * whi;
                let x = lo.0 - ga * (hi.0 - lo.0) / (gb - ga);
                let m = 0.01 * (b - a);
                if x.is_finite() {
                    x.clamp(a + m, b - m)
                } else {
                    0.5 * (a + b)
                }
            }
            _ => 0.5 * (a + b),
        };
        let (side, t) = sh.shoot(trial)?;
        let exact = matches!(side, Side::Low(Some(g)) | Side::High(Some(g)) if g == 0.0);
        match side {
            Side::Low(_) => {
                lo = (trial, side);
                lo_t = Some(t);
                wlo = 1.0;
                if last_low == Some(true) {
                    whi *= 0.5;
                }
                last_low = Some(true);
            }
            Side::High(_) => {
                hi = (trial, side);
                hi_t = Some(t);
                whi = 1.0;
                if last_low == Some(false) {
                    wlo *= 0.5;
                }
                last_low = Some(false);
            }
        }
        if exact {
            break;
        }
    }
    let mut found = 0;
    let mut best: Option<(f64, f64, Trajectory)> = None;
    for (lambda, t) in [(lo.0, lo_t), (hi.0, hi_t)] {
        let t = match t {
            Some(t) => t,
            None => sh.shoot(lambda)?.1,
        };
        match count_zeros(&t) {
            Ok((n, _)) if n + 1 == sh.k => {
                let miss = t.endpoint().0.abs();
                if best.as_ref().is_none_or(|b| miss < b.1) {
                    best = Some((lambda, miss, t));
                }
            }
            Ok((n, _)) => found = n,
            Err(e) => return Err(e),
        }
    }
    best.map(|(l, _, t)| (l, t)).ok_or(Error::WrongNodalCount { expected: sh.k - 1, found })
}

fn finish_point(sh: &Shooter, s: f64, lambda: f64, t: &Trajectory) -> Result<BranchPoint> {
    let (count, _) = count_zeros(t)?;
    if count + 1 != sh.k {
        return Err(Error::WrongNodalCount { expected: sh.k - 1, found: count });
    }
    let sup = t.sup_norm();
    let residual = t.endpoint().0.abs() / sup;
    if residual > MAX_RESIDUAL {
        return Err(Error::NoRoot(format!(
            "transition at lambda = {lambda:.12e} is not a solution (residual {residual:.3e})"
        )));
    }
    Ok(BranchPoint { s, lambda, sup_norm: sup, c1_norm: sup + t.max_slope(), zero_count: count, residual })
}

/// Solves `u(L; λ, ν s) = 0` for `λ` in nodal class `k`, starting from `λ_guess`.
pub fn solve_at_amplitude(spec: &ProblemSpec, k: usize, nu: Sign, s: f64, lambda_guess: f64) -> Result<BranchPoint> {
    solve_at_amplitude_full(spec, k, nu, s, lambda_guess).map(|(p, _)| p)
}

/// As [`solve_at_amplitude`], also returning the solution trajectory.
pub fn solve_at_amplitude_full(
    spec: &ProblemSpec,
    k: usize,
    nu: Sign,
    s: f64,
    lambda_guess: f64,
) -> Result<(BranchPoint, Trajectory)> {
    check_amplitude(spec, k, s)?;
    let sh = Shooter::new(spec, k, nu, s);
    let (lo, hi) = bracket_from_guess(&sh, lambda_guess)?;
    let (lambda, t) = refine_bracket(&sh, lo, hi)?;
    let point = finish_point(&sh, s, lambda, &t)?;
    Ok((point, t))
}

fn check_amplitude(spec: &ProblemSpec, k: usize, s: f64) -> Result<()> {
    spec.check()?;
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidInput(format!("amplitude s must be positive, got {s}")));
    }
    Ok(())
}

/// Scans `λ` uniformly over `[lo, hi]` (expanding if needed) for the first
/// transition into class `k`, then refines it.
fn solve_by_scan(sh: &Shooter, s: f64, lo: f64, hi: f64, n: usize) -> Result<(BranchPoint, Trajectory)> {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..8 {
        let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        let mut prev: Option<(f64, Side)> = None;
        let mut all_low = true;
        let mut all_high = true;
        for &lambda in &grid {
            let (side, _) = sh.shoot(lambda)?;
            match side {
                Side::Low(_) => all_high = false,
                Side::High(_) => {
                    all_low = false;
                    if let Some(p @ (_, Side::Low(_))) = prev {
                        let (l, t) = refine_bracket(sh, p, (lambda, side))?;
                        let point = finish_point(sh, s, l, &t)?;
                        return Ok((point, t));
                    }
                }
            }
            prev = Some((lambda, side));
        }
        let width = hi - lo;
        if all_low {
            lo = hi;
            hi += 2.0 * width;
        } else if all_high {
            hi = lo;
            lo -= 2.0 * width;
        } else {
            break;
        }
    }
    Err(Error::NoRoot(format!("no nodal transition for k = {} at s = {s:.3e}", sh.k)))
}

/// Initial `λ` guess for the branch of class `(k, ν)` at small amplitude.
fn small_amplitude_guess(spec: &ProblemSpec, k: usize, nu: Sign) -> Result<f64> {
    let lin = half_eigenvalue(&spec.half_linear(), k, nu)?.lambda;
    Ok(match &spec.f {
        Some(f) if f.coupling() == Coupling::EigenEmbedded => match f.f0() {
            Some(f0) if f0 > 0.0 && spec.r != 0.0 => lin / (spec.r * f0),
            _ => lin,
        },
        _ => lin,
    })
}

/// Continues the class-`(k, ν)` branch over a geometric grid of amplitudes.
pub fn trace_branch(spec: &ProblemSpec, k: usize, nu: Sign, s_min: f64, s_max: f64, n_points: usize) -> Result<Branch> {
    if spec.f.is_none() {
        return Err(Error::InvalidInput("branch tracing needs a nonlinearity f".into()));
    }
    if !(s_min > 0.0 && s_min < s_max) || n_points < 2 {
        return Err(Error::InvalidInput(format!(
            "need 0 < s_min < s_max and n_points >= 2 (got {s_min}, {s_max}, {n_points})"
        )));
    }
    check_amplitude(spec, k, s_min)?;
    let guess = small_amplitude_guess(spec, k, nu)?;
    let (l0, l1) = (s_min.ln(), s_max.ln());
    let targets: Vec<f64> = (0..n_points).map(|i| l0 + (l1 - l0) * i as f64 / (n_points - 1) as f64).collect();

    let mut points: Vec<BranchPoint> = Vec::with_capacity(n_points);
    let first = solve_at_amplitude(spec, k, nu, s_min, guess)?;
    points.push(first);
    let mut ln_s = l0;
    let mut next = 1;
    while next < targets.len() {
        let target = targets[next];
        let mut step = target - ln_s;
        let mut halvings = 0;
        loop {
            let ln_trial = ln_s + step;
            let predictor = predict(&points, ln_trial);
            match solve_at_amplitude(spec, k, nu, ln_trial.exp(), predictor) {
                Ok(p) => {
                    points.push(p);
                    ln_s = ln_trial;
                    break;
                }
                Err(Error::WrongNodalCount { .. }) | Err(Error::NoRoot(_)) | Err(Error::DegenerateZero { .. }) => {
                    halvings += 1;
                    if halvings > MAX_HALVINGS {
                        return Err(Error::ContinuationStalled { s: ln_s.exp(), halvings: MAX_HALVINGS });
                    }
                    step *= 0.5;
                }
                Err(e) => return Err(e),
            }
        }
        if (ln_s - target).abs() <= 1e-14 * target.abs().max(1.0) {
            // snap to the grid value
            if let Some(last) = points.last_mut() {
                last.s = target.exp();
            }
            ln_s = target;
            next += 1;
        }
    }
    let endpoints_estimate = (points[0].lambda, points.last().unwrap().lambda);
    Ok(Branch { k, nu, points, endpoints_estimate })
}

/// Previous `λ`, or the secant (in `ln s`) through the last two points.
fn predict(points: &[BranchPoint], ln_s: f64) -> f64 {
    match points {
        [.., a, b] => {
            let (la, lb) = (a.s.ln(), b.s.ln());
            if (lb - la).abs() < 1e-300 {
                return b.lambda;
            }
            b.lambda + (b.lambda - a.lambda) * (ln_s - lb) / (lb - la)
        }
        [.., b] => b.lambda,
        [] => f64::NAN,
    }
}

/// A solution of the problem at `λ = 1` in nodal class `(k, ν)`.
#[derive(Debug, Clone)]
pub struct NodalSolution {
    pub k: usize,
    pub nu: Sign,
    /// Initial slope amplitude.
    pub s: f64,
    pub zero_count: usize,
    /// `|u(L)| / sup |u|` at `λ = 1`.
    pub residual: f64,
    /// Whether `r` lies strictly between `λ_k^ν / f_inf` and `λ_k^ν / f0`.
    pub hypothesis_holds: bool,
    pub trajectory: Trajectory,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalOptions {
    pub s_min: f64,
    pub s_max: f64,
    pub n_points: usize,
}

impl Default for NodalOptions {
    fn default() -> Self {
        NodalOptions { s_min: 1e-4, s_max: 1e4, n_points: 33 }
    }
}

/// Whether `r` lies in one of the two crossing windows of class `(k, ν)`.
pub fn crossing_window(spec: &ProblemSpec, k: usize, nu: Sign) -> Result<(f64, f64, bool)> {
    let f = spec.f.as_ref().ok_or_else(|| Error::InvalidInput("nodal solutions need f".into()))?;
    let (f0, fi) = match (f.f0(), f.f_inf()) {
        (Some(a), Some(b)) if a > 0.0 && b > 0.0 => (a, b),
        _ => return Err(Error::InvalidInput("f needs finite positive f0 and f_inf".into())),
    };
    let lambda = half_eigenvalue(&spec.half_linear(), k, nu)?.lambda;
    let (a, b) = (lambda / f0, lambda / fi);
    let holds = spec.r > a.min(b) && spec.r < a.max(b);
    Ok((a.min(b), a.max(b), holds))
}

/// Solutions at `λ = 1` for every `k` in `ks` and every sign in `nus`.
pub fn nodal_solutions_at_unity(
    spec: &ProblemSpec,
    ks: std::ops::RangeInclusive<usize>,
    nus: &[Sign],
    opts: &NodalOptions,
) -> Result<Vec<NodalSolution>> {
    let mut out = Vec::new();
    for k in ks {
        for &nu in nus {
            out.push(nodal_solution(spec, k, nu, opts)?);
        }
    }
    Ok(out)
}

pub fn nodal_solution(spec: &ProblemSpec, k: usize, nu: Sign, opts: &NodalOptions) -> Result<NodalSolution> {
    let (_, _, hypothesis_holds) = crossing_window(spec, k, nu)?;
    let branch = trace_branch(spec, k, nu, opts.s_min, opts.s_max, opts.n_points)?;
    let crossing = branch
        .points
        .windows(2)
        .find(|w| (w[0].lambda - 1.0).signum() != (w[1].lambda - 1.0).signum())
        .map(|w| (w[0], w[1]));
    let (a, b) = crossing.ok_or(Error::NoCrossing { k, nu })?;

    // bisect ln s on the sign of λ(s) - 1
    let (mut pa, mut pb) = (a, b);
    let mut s_star = if (pa.lambda - 1.0).abs() < (pb.lambda - 1.0).abs() { pa.s } else { pb.s };
    for _ in 0..200 {
        let best = if (pa.lambda - 1.0).abs() < (pb.lambda - 1.0).abs() { pa } else { pb };
        s_star = best.s;
        if (best.lambda - 1.0).abs() <= UNITY_TOL {
            break;
        }
        let ln_mid = 0.5 * (pa.s.ln() + pb.s.ln());
        let w = (ln_mid - pa.s.ln()) / (pb.s.ln() - pa.s.ln());
        let guess = pa.lambda + w * (pb.lambda - pa.lambda);
        let pm = solve_at_amplitude(spec, k, nu, ln_mid.exp(), guess)?;
        if (pm.lambda - 1.0).signum() == (pa.lambda - 1.0).signum() {
            pa = pm;
        } else {
            pb = pm;
        }
    }

    // final solve at exactly λ = 1, in s
    let sh_sign = nu.of_arch(k).value();
    let miss = |s: f64| -> f64 {
        match integrate(spec, 1.0, nu.value() * s) {
            Ok(t) => {
                let c = t.raw_zero_count();
                let g = sh_sign * t.endpoint().0 / t.sup_norm();
                if c + 1 == k || c == k {
                    g
                } else if c + 1 < k {
                    (k - 1 - c) as f64
                } else {
                    -((c - k) as f64) - 1.0
                }
            }
            Err(_) => f64::NAN,
        }
    };
    let s_final = match bisect_polish(miss, pa.s, pb.s, 1e-14, 3) {
        Ok(s) => s,
        Err(_) => s_star,
    };
    let trajectory = integrate(spec, 1.0, nu.value() * s_final)?;
    let (zero_count, _) = count_zeros(&trajectory)?;
    if zero_count + 1 != k {
        return Err(Error::WrongNodalCount { expected: k - 1, found: zero_count });
    }
    let residual = trajectory.endpoint().0.abs() / trajectory.sup_norm();
    Ok(NodalSolution { k, nu, s: s_final, zero_count, residual, hypothesis_holds, trajectory })
}

/// `[λ_k - M/a0, λ_k + M/a0]` for the weighted eigenvalue `λ_k`.
pub fn bifurcation_interval(spec: &ProblemSpec, k: usize, m: f64) -> Result<(f64, f64)> {
    if m < 0.0 {
        return Err(Error::InvalidInput(format!("M must be >= 0, got {m}")));
    }
    let base = spec.half_linear();
    if !base.has_no_jumping() {
        return Err(Error::InvalidInput("bifurcation intervals need alpha = beta = 0".into()));
    }
    let lambda = eigenvalue(&base, k)?.lambda;
    let d = m / spec.weight.min_value();
    Ok((lambda - d, lambda + d))
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapReport {
    pub p: f64,
    pub m: f64,
    /// `(k, lo, hi)`.
    pub intervals: Vec<(usize, f64, f64)>,
    /// `(k, I_k ∩ I_{k+1} ≠ ∅)`.
    pub adjacent_overlaps: Vec<(usize, bool)>,
    /// `(2^p + 1) π_p^p / 2`.
    pub stated_threshold: f64,
    /// `(2^p - 1) π_p^p / 2`, where `I_1` and `I_2` start to intersect.
    pub exact_threshold: f64,
    pub overlap_12: bool,
    /// `overlap_12 == (M > stated_threshold)`.
    pub threshold_consistent: bool,
}

/// Bifurcation intervals for `a ≡ 1` on `[0, 1]` and their adjacent overlaps.
pub fn intervals_overlap_check(p: f64, m: f64, k_max: usize) -> Result<OverlapReport> {
    if k_max < 2 {
        return Err(Error::InvalidInput("k_max must be >= 2".into()));
    }
    let spec = ProblemSpec::new(p, 1.0);
    let e = spec.check()?;
    let mut intervals = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (lo, hi) = bifurcation_interval(&spec, k, m)?;
        intervals.push((k, lo, hi));
    }
    let adjacent_overlaps: Vec<(usize, bool)> = intervals.windows(2).map(|w| (w[0].0, w[1].1 <= w[0].2)).collect();
    let pp = e.pi_p().powf(p);
    let stated_threshold = (2f64.powf(p) + 1.0) * pp / 2.0;
    let exact_threshold = (2f64.powf(p) - 1.0) * pp / 2.0;
    let overlap_12 = adjacent_overlaps[0].1;
    Ok(OverlapReport {
        p,
        m,
        intervals,
        adjacent_overlaps,
        stated_threshold,
        exact_threshold,
        overlap_12,
        threshold_consistent: overlap_12 == (m > stated_threshold),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeEstimate {
    pub s: f64,
    pub lambda_estimate: Option<f64>,
    pub in_interval: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BifurcationSet {
    pub k: usize,
    pub nu: Sign,
    pub interval: (f64, f64),
    pub estimates: Vec<ProbeEstimate>,
}

impl BifurcationSet {
    pub fn all_in_interval(&self) -> bool {
        self.estimates.iter().all(|e| e.in_interval)
    }

    pub fn solved(&self) -> impl Iterator<Item = f64> + '_ {
        self.estimates.iter().filter_map(|e| e.lambda_estimate)
    }

    /// CSV with header `s,lambda_estimate,in_interval`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "s,lambda_estimate,in_interval")?;
        for e in &self.estimates {
            match e.lambda_estimate {
                Some(l) => writeln!(w, "{:.12e},{:.15e},{}", e.s, l, e.in_interval)?,
                None => writeln!(w, "{:.12e},,false", e.s)?,
            }
        }
        Ok(())
    }
}

/// `n` log-spaced amplitudes in `[lo, hi]`.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Default probe amplitudes. Much smaller amplitudes make oscillatory
/// perturbations like `sin(1/|u|)` ill-conditioned for shooting.
pub fn default_probes() -> Vec<f64> {
    logspace(0.03, 1.0, 9)
}

/// Solves the perturbed problem independently at each probe amplitude and
/// compares the resulting `λ` with `I_k` (widened by [`INTERVAL_SLACK`]).
pub fn estimate_bifurcation_set(spec: &ProblemSpec, k: usize, nu: Sign, probes: &[f64]) -> Result<BifurcationSet> {
    if let Some(f) = &spec.f {
        if f.coupling() != Coupling::Additive {
            return Err(Error::InvalidInput(format!(
                "bifurcation-set probes need an additive perturbation, got {}",
                f.kind().name()
            )));
        }
    }
    let m = spec.f.as_ref().and_then(NonlinearitySpec::bound).unwrap_or(0.0);
    let interval = bifurcation_interval(spec, k, m)?;
    let lambda_k = 0.5 * (interval.0 + interval.1);
    let pad = 0.05 * (interval.1 - interval.0) + 1e-3 * lambda_k.abs().max(1.0);
    let (lo, hi) = (interval.0 - pad, interval.1 + pad);
    let mut estimates = Vec::with_capacity(probes.len());
    for &s in probes {
        check_amplitude(spec, k, s)?;
        let sh = Shooter::new(spec, k, nu, s);
        let est = match solve_by_scan(&sh, s, lo, hi, 17) {
            Ok((p, _)) => ProbeEstimate {
                s,
                lambda_estimate: Some(p.lambda),
                in_interval: p.lambda >= interval.0 - INTERVAL_SLACK && p.lambda <= interval.1 + INTERVAL_SLACK,
                error: None,
            },
            Err(e) => ProbeEstimate { s, lambda_estimate: None, in_interval: false, error: Some(e.to_string()) },
        };
        estimates.push(est);
    }
    Ok(BifurcationSet { k, nu, interval, estimates })
}

/// The oscillatory example on `(0, π)`: `-u'' = λ u + u sin((u² + u'²)^{-1/2})`.
pub fn explicit_family_problem() -> ProblemSpec {
    ProblemSpec::new(2.0, PI).with_f(NonlinearitySpec::oscillatory_energy(1.0))
}

/// `λ(ρ) = 1 - sin(1/|ρ|)` of the explicit family `u = ρ sin x`.
pub fn explicit_family_lambda(rho: f64) -> f64 {
    1.0 - (1.0 / rho.abs()).sin()
}

/// Max pointwise residual of `(1 - sin|ρ|^{-1}, ρ sin x)` on a fine grid of `(0, π)`.
pub fn explicit_family_residual(rho: f64) -> Result<f64> {
    if rho == 0.0 || !rho.is_finite() {
        return Err(Error::InvalidInput("rho must be finite and nonzero".into()));
    }
    let lambda = explicit_family_lambda(rho);
    let osc = (1.0 / (rho * rho).sqrt()).sin();
    let n = 10_000;
    let mut worst = 0.0f64;
    for i in 1..n {
        let x = PI * i as f64 / n as f64;
        let u = rho * x.sin();
        let neg_upp = rho * x.sin();
        let res = neg_upp - lambda * u - u * osc;
        worst = worst.max(res.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn homogeneous_branch_is_vertical() {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(1.0));
        for s in [1e-3, 1.0, 50.0] {
            let p = solve_at_amplitude(&spec, 1, Sign::Plus, s, 9.0).unwrap();
            assert_relative_eq!(p.lambda, PI * PI, max_relative = 1e-10);
            assert!(p.residual <= 1e-8);
        }
        let b = trace_branch(&spec, 2, Sign::Minus, 1e-2, 1e2, 5).unwrap();
        for p in &b.points {
            assert_relative_eq!(p.lambda, 4.0 * PI * PI, max_relative = 1e-10);
            assert_eq!(p.zero_count, 1);
        }
    }

    #[test]
    fn explicit_family_amplitude_solve() {
        let spec = explicit_family_problem();
        for rho in [0.3, 0.05, 1.0] {
            let guess = explicit_family_lambda(rho) + 0.01;
            let p = solve_at_amplitude(&spec, 1, Sign::Plus, rho, guess).unwrap();
            assert!(
                (p.lambda - explicit_family_lambda(rho)).abs() < 1e-8,
                "rho {rho}: {} vs {}",
                p.lambda,
                explicit_family_lambda(rho)
            );
            assert_relative_eq!(p.sup_norm, rho, max_relative = 1e-8);
        }
    }

    #[test]
    fn rational_small_amplitude_limit() {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(1.0, 0.5, 2.0)).with_r(15.0);
        let p = solve_at_amplitude(&spec, 1, Sign::Plus, 1e-3, 0.6).unwrap();
        assert_relative_eq!(p.lambda, PI * PI / 15.0, max_relative = 1e-5);
    }

    #[test]
    fn bifurcation_interval_examples() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let (lo, hi) = bifurcation_interval(&spec, 1, 1.0).unwrap();
        assert_relative_eq!(lo, PI * PI - 1.0, max_relative = 1e-10);
        assert_relative_eq!(hi, PI * PI + 1.0, max_relative = 1e-10);
        let (lo, hi) = bifurcation_interval(&spec, 1, 0.0).unwrap();
        assert_eq!(lo, hi);
        let (lo, hi) = bifurcation_interval(&ProblemSpec::new(2.0, PI), 1, 1.0).unwrap();
        assert!(lo.abs() < 1e-9 && (hi - 2.0).abs() < 1e-9);
    }

    #[test]
    fn overlap_examples() {
        let r = intervals_overlap_check(2.0, 25.0, 4).unwrap();
        assert!(r.overlap_12);
        assert_relative_eq!(r.stated_threshold, 2.5 * PI * PI, max_relative = 1e-12);
        let r = intervals_overlap_check(2.0, 1.0, 4).unwrap();
        assert!(r.adjacent_overlaps.iter().all(|(_, o)| !o));
        let r = intervals_overlap_check(2.0, 0.0, 3).unwrap();
        assert!(r.intervals.iter().all(|(_, lo, hi)| lo == hi));
        assert!(r.adjacent_overlaps.iter().all(|(_, o)| !o));
    }

    #[test]
    fn explicit_family_residuals_vanish() {
        for rho in [1.0, -1.0, 1e-3, -1e-3, 2.0, -2.0] {
            assert!(explicit_family_residual(rho).unwrap() <= 1e-12);
        }
        assert!(explicit_family_residual(0.0).is_err());
    }

    #[test]
    fn logspace_ends() {
        let v = logspace(1e-4, 1e4, 9);
        assert_eq!(v.len(), 9);
        assert_relative_eq!(v[0], 1e-4, max_relative = 1e-14);
        assert_relative_eq!(v[4], 1.0, max_relative = 1e-14);
        assert_relative_eq!(v[8], 1e4, max_relative = 1e-14);
    }

    #[test]
    fn branch_csv_header() {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(1.0));
        let b = trace_branch(&spec, 1, Sign::Plus, 0.1, 10.0, 3).unwrap();
        let mut buf = Vec::new();
        b.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("s,lambda,sup_norm,c1_norm,zero_count,residual\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
