//! Shooting solvers for eigenvalues of `-(φ_p(u'))' = λ a φ_p(u)` and for
//! half-eigenvalues of the jumping problem with `α φ_p(u⁺) + β φ_p(u⁻)`.
//!
//! For a half-linear problem the interior zero count of the unit-slope
//! trajectory is non-decreasing in `λ`, and `λ_k^ν` is exactly the value at
//! which the `k`-th zero enters through `x = L`. The solvers bracket that
//! transition with a geometric scan and bisect on it.

use std::io::Write;

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ivp::{count_zeros, integrate, Trajectory};
use crate::problem::ProblemSpec;
use crate::roots::bisect_predicate;
use crate::Sign;

/// Ratio of the geometric bracketing scan.
pub const SCAN_RATIO: f64 = 1.25;
/// Offset of the first scan point above the window minimum.
pub const SCAN_OFFSET: f64 = 1e-6;
/// Upper end of the scan.
pub const SCAN_MAX: f64 = 1e9;
/// Relative bisection tolerance in `λ`.
pub const LAMBDA_RTOL: f64 = 1e-11;

/// A converged half-eigenpair.
#[derive(Debug, Clone)]
pub struct HalfEigenvalue {
    pub k: usize,
    pub nu: Sign,
    pub lambda: f64,
    /// Normalized to `sup |u| = 1`, with sign `ν` on the first arch.
    pub eigenfunction: Trajectory,
    /// `|u(L)|` of the normalized eigenfunction.
    pub residual: f64,
    pub zero_count: usize,
}

/// `(u(L), interior zero count)` for the trajectory with slope `ν` at `λ`.
pub fn shoot_miss(spec: &ProblemSpec, lambda: f64, nu: Sign) -> Result<(f64, usize)> {
    require_half_linear(spec)?;
    let t = integrate(spec, lambda, nu.value())?;
    let (count, _) = count_zeros(&t)?;
    Ok((t.endpoint().0, count))
}

fn require_half_linear(spec: &ProblemSpec) -> Result<()> {
    if spec.is_half_linear() {
        Ok(())
    } else {
        Err(Error::InvalidInput("half-eigenvalue solvers need f and g absent".into()))
    }
}

/// Samples used to bound the coefficients when they are not constant.
const COEF_SAMPLES: usize = 2001;

fn coef_samples(spec: &ProblemSpec) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
    (0..COEF_SAMPLES).map(move |i| {
        let x = spec.length * i as f64 / (COEF_SAMPLES - 1) as f64;
        (spec.weight.eval(x), spec.alpha.eval(x), spec.beta.eval(x))
    })
}

/// Lower end of the admissible `λ` window for nodal class `(k, ν)`: below it
/// every arch frequency `λ a + α` (positive arches) or `λ a - β` (negative
/// arches) needed by the class is negative on the whole domain.
pub fn window_min(spec: &ProblemSpec, k: usize, nu: Sign) -> f64 {
    let needs_pos = k >= 2 || nu == Sign::Plus;
    let needs_neg = k >= 2 || nu == Sign::Minus;
    let (mut pos, mut neg) = (f64::INFINITY, f64::INFINITY);
    for (a, al, be) in coef_samples(spec) {
        pos = pos.min(-al / a);
        neg = neg.min(be / a);
    }
    let mut lo = f64::NEG_INFINITY;
    if needs_pos {
        lo = lo.max(pos);
    }
    if needs_neg {
        lo = lo.max(neg);
    }
    lo
}

/// True if `λ a + α` or `λ a - β` vanishes somewhere on the domain.
fn degenerate_at(spec: &ProblemSpec, lambda: f64) -> bool {
    if spec.weight.is_constant() && spec.alpha.is_constant() && spec.beta.is_constant() {
        let a = spec.weight.min_value();
        let qp = lambda * a + spec.alpha.min_value();
        let qm = lambda * a - spec.beta.min_value();
        let tol = 1e-12 * (lambda.abs() * a).max(1.0);
        return qp.abs() < tol || qm.abs() < tol;
    }
    let (mut pmin, mut pmax, mut mmin, mut mmax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (a, al, be) in coef_samples(spec) {
        let qp = lambda * a + al;
        let qm = lambda * a - be;
        pmin = pmin.min(qp);
        pmax = pmax.max(qp);
        mmin = mmin.min(qm);
        mmax = mmax.max(qm);
    }
    (pmin < 0.0 && pmax > 0.0) || (mmin < 0.0 && mmax > 0.0)
}

/// Finds `λ_lo < λ_hi` with fewer than `k` zeros at `λ_lo` and at least `k` at
/// `λ_hi` by the geometric scan; `shoot` returns the raw zero count.
pub(crate) fn scan_transition<F>(
    mut count_at: F,
    k: usize,
    start: f64,
    skip: impl Fn(f64) -> bool,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<usize>,
{
    let mut prev: Option<f64> = None;
    let mut offset = SCAN_OFFSET;
    let mut warned = false;
    loop {
        let lambda = start + offset;
        if lambda > SCAN_MAX {
            return Err(Error::NoBracket(format!(
                "zero count never reached {k} for lambda in ({start:.6e}, {SCAN_MAX:.0e})"
            )));
        }
        if skip(lambda) {
            if !warned {
                warn!("skipping scan point lambda = {lambda:.6e}: arch frequency vanishes on the domain");
                warned = true;
            }
        } else {
            let c = count_at(lambda)?;
            if c >= k {
                return match prev {
                    Some(lo) => Ok((lo, lambda)),
                    None => {
                        Err(Error::NoBracket(format!("first scan point {lambda:.6e} already has {c} >= {k} zeros")))
                    }
                };
            }
            prev = Some(lambda);
        }
        offset *= SCAN_RATIO;
        if offset < 1.0 && start.abs() > 1.0 {
            // offsets far below the magnitude of `start` do not move lambda
            offset = offset.max(1e-12 * start.abs());
        }
    }
}

/// Solves for `λ_k^ν` with the unit initial slope `ν · slope_scale`.
fn solve_half(spec: &ProblemSpec, k: usize, nu: Sign, slope_scale: f64) -> Result<HalfEigenvalue> {
    require_half_linear(spec)?;
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    let slope = nu.value() * slope_scale;
    let shoot = |lambda: f64| integrate(spec, lambda, slope);
    let start = window_min(spec, k, nu);
    let (lo, hi) =
        scan_transition(|lambda| Ok(shoot(lambda)?.raw_zero_count()), k, start, |lambda| degenerate_at(spec, lambda))?;
    let mut failure = None;
    let (lo, hi) = bisect_predicate(
        |lambda| match shoot(lambda) {
            Ok(t) => t.raw_zero_count() >= k,
            Err(e) => {
                failure.get_or_insert(e);
                true
            }
        },
        lo,
        hi,
        LAMBDA_RTOL,
        1e-6,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let traj = shoot(lo)?;
    let (count, _) = count_zeros(&traj)?;
    if count != k - 1 {
        return Err(Error::WrongNodalCount { expected: k - 1, found: count });
    }
    let norm = traj.sup_norm();
    let eigenfunction = traj.scaled(1.0 / norm);
    let residual = eigenfunction.endpoint().0.abs();
    Ok(HalfEigenvalue { k, nu, lambda: 0.5 * (lo + hi), eigenfunction, residual, zero_count: count })
}

/// The `k`-th half-eigenvalue `λ_k^ν` and its normalized eigenfunction.
pub fn half_eigenvalue(spec: &ProblemSpec, k: usize, nu: Sign) -> Result<HalfEigenvalue> {
    solve_half(spec, k, nu, 1.0)
}

/// The `k`-th eigenvalue of the weighted problem (`α = β ≡ 0`), cross-checked
/// between the two starting signs.
pub fn eigenvalue(spec: &ProblemSpec, k: usize) -> Result<HalfEigenvalue> {
    if !spec.has_no_jumping() {
        return Err(Error::InvalidInput("eigenvalue requires alpha = beta = 0".into()));
    }
    let plus = half_eigenvalue(spec, k, Sign::Plus)?;
    let minus = half_eigenvalue(spec, k, Sign::Minus)?;
    let rel = (plus.lambda - minus.lambda).abs() / plus.lambda.abs().max(1e-300);
    if rel > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "lambda_{k}: nu=+ gives {:.15e}, nu=- gives {:.15e}",
            plus.lambda, minus.lambda
        )));
    }
    Ok(plus)
}

/// All `λ_k^ν` for `k <= k_max`, ordered by `(k, ν)` with `+` first.
pub fn half_spectrum(spec: &ProblemSpec, k_max: usize) -> Result<Vec<HalfEigenvalue>> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(2 * k_max);
    let mut errors = Vec::new();
    for k in 1..=k_max {
        for nu in Sign::BOTH {
            match half_eigenvalue(spec, k, nu) {
                Ok(h) => out.push(h),
                Err(e) => errors.push(e),
            }
        }
    }
    if !errors.is_empty() {
        return Err(Error::Aggregate(errors));
    }
    for nu in Sign::BOTH {
        let seq: Vec<f64> = out.iter().filter(|h| h.nu == nu).map(|h| h.lambda).collect();
        if let Some(w) = seq.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Inconsistent(format!(
                "nu = {nu} sequence not strictly increasing: {:.12e} then {:.12e}",
                w[0], w[1]
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityReport {
    pub passed: bool,
    /// Worst relative change of `λ` over the rescaled slopes.
    pub lambda_shift: f64,
    /// Worst relative mismatch of the rescaled solutions.
    pub shape_error: f64,
    pub details: Vec<String>,
}

/// Re-solves with the initial slope scaled by `c ∈ {0.1, 10}` and checks that
/// `λ` and the rescaled solution are unchanged. Negative `c` is deliberately
/// not tested: simplicity only concerns positive multiples.
pub fn simplicity_check(pair: &HalfEigenvalue, spec: &ProblemSpec) -> SimplicityReport {
    let mut details = Vec::new();
    let mut lambda_shift = 0.0f64;
    let mut shape_error = 0.0f64;
    let mut passed = true;
    let base = match integrate(spec, pair.lambda, pair.nu.value()) {
        Ok(t) => t,
        Err(e) => {
            return SimplicityReport {
                passed: false,
                lambda_shift: f64::NAN,
                shape_error: f64::NAN,
                details: vec![e.to_string()],
            }
        }
    };
    let base_samples = base.samples(201);
    let base_norm = base.sup_norm();
    for c in [0.1, 10.0] {
        match solve_half(spec, pair.k, pair.nu, c) {
            Ok(h) => {
                let rel = (h.lambda - pair.lambda).abs() / pair.lambda.abs().max(1e-300);
                lambda_shift = lambda_shift.max(rel);
                if rel > 1e-10 {
                    passed = false;
                    details.push(format!("c = {c}: lambda moved by {rel:.3e} relative"));
                }
            }
            Err(e) => {
                passed = false;
                details.push(format!("c = {c}: {e}"));
            }
        }
        match integrate(spec, pair.lambda, c * pair.nu.value()) {
            Ok(t) => {
                let err =
                    t.samples(201).iter().zip(&base_samples).map(|(a, b)| (a[1] / c - b[1]).abs()).fold(0.0, f64::max)
                        / base_norm;
                shape_error = shape_error.max(err);
                if err > 1e-8 {
                    passed = false;
                    details.push(format!("c = {c}: rescaled solutions differ by {err:.3e}"));
                }
            }
            Err(e) => {
                passed = false;
                details.push(format!("c = {c}: {e}"));
            }
        }
    }
    SimplicityReport { passed, lambda_shift, shape_error, details }
}

/// CSV with header `k,nu,lambda,residual,zero_count`, sorted by `(k, ν)`.
pub fn write_spectrum_csv<W: Write>(mut w: W, pairs: &[HalfEigenvalue]) -> std::io::Result<()> {
    let mut rows: Vec<&HalfEigenvalue> = pairs.iter().collect();
    rows.sort_by_key(|h| (h.k, h.nu));
    writeln!(w, "k,nu,lambda,residual,zero_count")?;
    for h in rows {
        writeln!(w, "{},{},{:.15e},{:.3e},{}", h.k, h.nu, h.lambda, h.residual, h.zero_count)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::CoefficientFn;
    use crate::scalar::{fucik_arch_oracle, ArchEquation};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn shoot_miss_examples() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let (m, c) = shoot_miss(&spec, PI * PI, Sign::Plus).unwrap();
        assert!(m.abs() < 1e-9);
        assert_eq!(c, 0);
        let (m, c) = shoot_miss(&spec, PI * PI / 2.0, Sign::Plus).unwrap();
        let w = PI / 2f64.sqrt();
        assert_relative_eq!(m, w.sin() / w, max_relative = 1e-9);
        assert_eq!(c, 0);
    }

    #[test]
    fn linear_third_eigenvalue_both_signs() {
        let spec = ProblemSpec::new(2.0, 1.0);
        for nu in Sign::BOTH {
            let h = half_eigenvalue(&spec, 3, nu).unwrap();
            assert_relative_eq!(h.lambda, 9.0 * PI * PI, max_relative = 1e-9);
            assert_eq!(h.zero_count, 2);
            assert!(h.residual <= 1e-9);
        }
    }

    #[test]
    fn one_sided_identities_first_pair() {
        let spec = ProblemSpec::new(2.0, 1.0).with_jumping(1.0, 0.0);
        let plus = half_eigenvalue(&spec, 1, Sign::Plus).unwrap();
        assert_relative_eq!(plus.lambda, PI * PI - 1.0, max_relative = 1e-9);
        let minus = half_eigenvalue(&spec, 1, Sign::Minus).unwrap();
        assert_relative_eq!(minus.lambda, PI * PI, max_relative = 1e-9);
    }

    #[test]
    fn eigenvalue_constant_weight_divides() {
        let spec = ProblemSpec::new(2.0, 1.0).with_weight(CoefficientFn::constant(4.0));
        let h = eigenvalue(&spec, 1).unwrap();
        assert_relative_eq!(h.lambda, PI * PI / 4.0, max_relative = 1e-9);
        let jumping = ProblemSpec::new(2.0, 1.0).with_jumping(1.0, 0.0);
        assert!(eigenvalue(&jumping, 1).is_err());
    }

    #[test]
    fn eigenfunction_normalized_with_sign() {
        let spec = ProblemSpec::new(2.5, 1.0).with_jumping(1.0, 0.5);
        for nu in Sign::BOTH {
            let h = half_eigenvalue(&spec, 2, nu).unwrap();
            assert!((h.eigenfunction.sup_norm() - 1.0).abs() < 1e-12);
            let (_, zeros) = count_zeros(&h.eigenfunction).unwrap();
            assert_eq!(zeros.len(), 1);
            assert!(nu.value() * h.eigenfunction.u(0.5 * zeros[0]) > 0.0);
        }
    }

    #[test]
    fn half_spectrum_matches_oracle() {
        let spec = ProblemSpec::new(2.0, 1.0).with_jumping(2.0, 1.0);
        let pairs = half_spectrum(&spec, 3).unwrap();
        assert_eq!(pairs.len(), 6);
        for h in &pairs {
            let want = fucik_arch_oracle(&ArchEquation::new(h.k, h.nu, 2.0, 2.0, 1.0, 1.0)).unwrap();
            assert_relative_eq!(h.lambda, want, max_relative = 1e-8);
        }
    }

    #[test]
    fn simplicity_holds() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let h = half_eigenvalue(&spec, 1, Sign::Plus).unwrap();
        let r = simplicity_check(&h, &spec);
        assert!(r.passed, "{:?}", r.details);
        let spec = ProblemSpec::new(2.0, 1.0).with_jumping(1.0, 0.5);
        let h = half_eigenvalue(&spec, 2, Sign::Minus).unwrap();
        let r = simplicity_check(&h, &spec);
        assert!(r.passed, "{:?}", r.details);
    }

    #[test]
    fn csv_sorted_plus_first() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let mut pairs = half_spectrum(&spec, 2).unwrap();
        pairs.reverse();
        let mut buf = Vec::new();
        write_spectrum_csv(&mut buf, &pairs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "k,nu,lambda,residual,zero_count");
        assert!(rows[1].starts_with("1,+,"));
        assert!(rows[2].starts_with("1,-,"));
        assert!(rows[4].starts_with("2,-,"));
    }

    #[test]
    fn nonlinear_problem_rejected() {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(crate::problem::NonlinearitySpec::homogeneous(1.0));
        assert!(half_eigenvalue(&spec, 1, Sign::Plus).is_err());
        assert!(half_spectrum(&ProblemSpec::new(2.0, 1.0), 0).is_err());
    }
}
