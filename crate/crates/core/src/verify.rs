//! Named verification suites. Each suite returns a [`SuiteReport`] that
//! serializes to JSON; randomized suites record their seed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::branch::{
    crossing_window, estimate_bifurcation_set, explicit_family_lambda, explicit_family_problem,
    explicit_family_residual, intervals_overlap_check, logspace, nodal_solution, nodal_solutions_at_unity,
    trace_branch, NodalOptions,
};
use crate::comparison::{
    jumping_trajectory, nonexistence_scan, picone_young_gap, sturm_verdict, zero_divergence_probe, SturmProblem,
    SturmVerdict,
};
use crate::error::{Error, Result};
use crate::ivp::{integrate, Trajectory};
use crate::problem::{CoefficientFn, NonlinearitySpec, ProblemSpec};
use crate::scalar::{fucik_arch_oracle, pi_p, ArchEquation};
use crate::spectrum::{eigenvalue, half_eigenvalue, half_spectrum};
use crate::Sign;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100;

/// Every tolerance used by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub closed_form_rel: f64,
    pub identity_rel: f64,
    pub oracle_rel: f64,
    pub example_residual: f64,
    pub family_agreement: f64,
    pub interval_slack: f64,
    pub endpoint_rel: f64,
    pub boundary_residual: f64,
    pub gap_floor: f64,
    pub gap_equality: f64,
    pub miss_floor: f64,
    pub simple_zero: f64,
}

pub const TOL: Tolerances = Tolerances {
    closed_form_rel: 1e-8,
    identity_rel: 1e-9,
    oracle_rel: 1e-7,
    example_residual: 1e-12,
    family_agreement: 1e-7,
    interval_slack: 1e-6,
    endpoint_rel: 0.02,
    boundary_residual: 1e-8,
    gap_floor: -1e-9,
    gap_equality: 1e-10,
    miss_floor: 1e-3,
    simple_zero: 1e-6,
};

pub const SUITES: [&str; 14] = [
    "closed-form-spectrum",
    "remark31",
    "fucik-oracle",
    "picone",
    "sturm",
    "zero-divergence",
    "nonexistence",
    "example21",
    "branch-endpoints",
    "nodal-existence",
    "intervals-overlap",
    "corollary31-report",
    "interval-containment",
    "simple-zeros",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub pass: bool,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub error: Option<f64>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Informational suites never fail the run.
    pub informational: bool,
    pub pass: bool,
    pub n_cases: usize,
    pub n_pass: usize,
    pub worst_error: Option<f64>,
    pub min_gap: Option<f64>,
    pub min_miss: Option<f64>,
    pub counterexamples: Vec<String>,
    pub seed: Option<u64>,
    pub details: Vec<String>,
    pub tolerances: Tolerances,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            informational: false,
            pass: false,
            n_cases: 0,
            n_pass: 0,
            worst_error: None,
            min_gap: None,
            min_miss: None,
            counterexamples: Vec::new(),
            seed: None,
            details: Vec::new(),
            tolerances: TOL,
            cases: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, measured: f64, expected: Option<f64>, error: Option<f64>) {
        if let Some(e) = error {
            self.worst_error = Some(self.worst_error.map_or(e, |w| w.max(e)));
        }
        self.cases.push(Case { name: name.into(), pass, measured: Some(measured), expected, error, detail: None });
    }

    fn relative(&mut self, name: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let err = (measured - expected).abs() / expected.abs().max(1e-300);
        self.check(name, err <= tol, measured, Some(expected), Some(err));
    }

    fn failed(&mut self, name: impl Into<String>, e: &Error) {
        self.note(name, false, e.to_string());
    }

    fn note(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.cases.push(Case {
            name: name.into(),
            pass,
            measured: None,
            expected: None,
            error: None,
            detail: Some(detail.into()),
        });
    }

    fn detail_last(&mut self, detail: impl Into<String>) {
        if let Some(c) = self.cases.last_mut() {
            c.detail = Some(detail.into());
        }
    }

    fn finish(mut self) -> Self {
        self.n_cases = self.cases.len();
        self.n_pass = self.cases.iter().filter(|c| c.pass).count();
        self.pass = self.n_cases > 0 && self.n_pass == self.n_cases && self.counterexamples.is_empty();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    Ok(match name {
        "closed-form-spectrum" => closed_form_spectrum(),
        "remark31" => one_sided_identities(),
        "fucik-oracle" => fucik_oracle(),
        "picone" => picone(opts),
        "sturm" => sturm(opts),
        "zero-divergence" => zero_divergence(),
        "nonexistence" => nonexistence(),
        "example21" => explicit_family(),
        "branch-endpoints" => branch_endpoints(),
        "nodal-existence" => nodal_existence(0.5),
        "intervals-overlap" => intervals_overlap(),
        "corollary31-report" => equal_jump_report(),
        "interval-containment" => interval_containment(),
        "simple-zeros" => simple_zeros(),
        other => return Err(Error::InvalidInput(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    })
}

/// `λ_k = (k π_p)^p` for `a ≡ 1` on `[0, 1]`, `p ∈ {1.5, 2, 3}`, `k ≤ 5`.
pub fn closed_form_spectrum() -> SuiteReport {
    let mut r = SuiteReport::new("closed-form-spectrum");
    for p in [1.5, 2.0, 3.0] {
        let spec = ProblemSpec::new(p, 1.0);
        let pp = pi_p(p).expect("valid p");
        for k in 1..=5 {
            let exact = (k as f64 * pp).powf(p);
            match eigenvalue(&spec, k) {
                Ok(h) => r.relative(format!("p={p} k={k}"), h.lambda, exact, TOL.closed_form_rel),
                Err(e) => r.failed(format!("p={p} k={k}"), &e),
            }
        }
    }
    r.finish()
}

/// One-sided jumps leave the matching first half-eigenvalue unchanged, and
/// no jumps give `λ_k^± = λ_k`.
pub fn one_sided_identities() -> SuiteReport {
    let mut r = SuiteReport::new("remark31");
    for p in [2.0, 3.0] {
        let base = ProblemSpec::new(p, 1.0).with_weight(CoefficientFn::affine(1.0, 1.0));
        let mut lambdas = Vec::new();
        for k in 1..=5 {
            match eigenvalue(&base, k) {
                Ok(h) => lambdas.push(h.lambda),
                Err(e) => {
                    r.failed(format!("p={p} lambda_{k}"), &e);
                    return r.finish();
                }
            }
        }
        for alpha in [1.0, 3.0] {
            let spec = base.clone().with_jumping(alpha, 0.0);
            match half_eigenvalue(&spec, 1, Sign::Minus) {
                Ok(h) => r.relative(
                    format!("p={p} alpha={alpha} beta=0: lambda_1^-"),
                    h.lambda,
                    lambdas[0],
                    TOL.identity_rel,
                ),
                Err(e) => r.failed(format!("p={p} alpha={alpha}"), &e),
            }
        }
        for beta in [1.0, 3.0] {
            let spec = base.clone().with_jumping(0.0, beta);
            match half_eigenvalue(&spec, 1, Sign::Plus) {
                Ok(h) => {
                    r.relative(format!("p={p} alpha=0 beta={beta}: lambda_1^+"), h.lambda, lambdas[0], TOL.identity_rel)
                }
                Err(e) => r.failed(format!("p={p} beta={beta}"), &e),
            }
        }
        for (k, &lk) in lambdas.iter().enumerate().map(|(i, l)| (i + 1, l)) {
            for nu in Sign::BOTH {
                match half_eigenvalue(&base, k, nu) {
                    Ok(h) => r.relative(format!("p={p} k={k} nu={nu}: lambda_k^nu"), h.lambda, lk, TOL.identity_rel),
                    Err(e) => r.failed(format!("p={p} k={k} nu={nu}"), &e),
                }
            }
        }
    }
    r.finish()
}

/// Shooting against the closed-form arch equation for constant jumps.
pub fn fucik_oracle() -> SuiteReport {
    let mut r = SuiteReport::new("fucik-oracle");
    for (alpha, beta) in [(1.0, 0.0), (2.0, 1.0), (0.5, -0.5)] {
        for p in [2.0, 3.0] {
            let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, beta);
            for k in 1..=3 {
                for nu in Sign::BOTH {
                    let name = format!("alpha={alpha} beta={beta} p={p} k={k} nu={nu}");
                    let oracle = fucik_arch_oracle(&ArchEquation::new(k, nu, p, alpha, beta, 1.0));
                    match (half_eigenvalue(&spec, k, nu), oracle) {
                        (Ok(h), Ok(o)) => r.relative(name, h.lambda, o, TOL.oracle_rel),
                        (Err(e), _) | (_, Err(e)) => r.failed(name, &e),
                    }
                }
            }
        }
    }
    r.finish()
}

/// A random constant-coefficient comparison pair on an arch `(0, d)` of `u1`.
#[derive(Debug, Clone)]
pub struct SturmSample {
    pub problem: SturmProblem,
    /// `b2 = b1` with `slope2 = μ slope1`.
    pub proportional: bool,
}

/// Draws pairs with `b2 ≥ max(b1, b1 + α - β)` and same-sign slopes.
pub fn sturm_samples(seed: u64, n: usize) -> Vec<SturmSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let p = [1.5, 2.0, 3.0][rng.gen_range(0..3)];
            let sigma: f64 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let alpha = rng.gen_range(-2.0..2.0);
            let beta = rng.gen_range(-2.0..2.0);
            let freq: f64 = rng.gen_range(2.0..30.0);
            let b1 = if sigma > 0.0 { freq - alpha } else { freq + beta };
            let d = pi_p(p).expect("valid p") / freq.powf(1.0 / p);
            let slope1 = sigma * rng.gen_range(0.5..2.0);
            let proportional = rng.gen_bool(0.1);
            let (b2, slope2) = if proportional {
                (b1, slope1 * rng.gen_range(0.2..5.0))
            } else {
                let b2 = f64::max(b1, b1 + alpha - beta) + rng.gen_range(0.01..20.0);
                (b2, sigma * rng.gen_range(0.5..2.0))
            };
            SturmSample {
                problem: SturmProblem {
                    p,
                    c: 0.0,
                    d,
                    b1: CoefficientFn::constant(b1),
                    b2: CoefficientFn::constant(b2),
                    alpha,
                    beta,
                    slope1,
                    slope2,
                },
                proportional,
            }
        })
        .collect()
}

fn describe(pr: &SturmProblem) -> String {
    format!(
        "p={} alpha={:.4} beta={:.4} b1={:.4} b2={:.4} slopes=({:.3},{:.3}) d={:.6}",
        pr.p,
        pr.alpha,
        pr.beta,
        pr.b1.eval(0.0),
        pr.b2.eval(0.0),
        pr.slope1,
        pr.slope2,
        pr.d
    )
}

/// Seeded Sturm comparison cases: `u2` must vanish in `(c, d]` or be proportional to `u1`.
pub fn sturm(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("sturm");
    r.seed = Some(opts.seed);
    let mut n_prop = 0;
    for (i, s) in sturm_samples(opts.seed, opts.samples).iter().enumerate() {
        let pr = &s.problem;
        let name = format!("case {i}: {}", describe(pr));
        match sturm_verdict(pr) {
            Ok(SturmVerdict::ZeroFound(t)) => {
                let ok = t > pr.c && t <= pr.d * (1.0 + 1e-9);
                r.check(name, ok, t, Some(pr.d), None);
                r.detail_last(format!("zero at {t:.9}"));
            }
            Ok(SturmVerdict::Proportional(mu)) => {
                n_prop += 1;
                r.check(name, s.proportional, mu, None, None);
                r.detail_last("proportional");
            }
            Ok(SturmVerdict::NoZero) => {
                r.note(name.clone(), false, "u2 has no zero in (c, d]");
                r.counterexamples.push(name);
            }
            Err(e) => r.failed(name, &e),
        }
    }
    r.details.push(format!("{n_prop} proportional verdicts"));
    r.finish()
}

/// Young gap on the Sturm pairs up to the first zero of `u2`, plus a closed-form case.
/// Whichever solution vanishes at both ends of the interval is the numerator.
pub fn picone(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("picone");
    r.seed = Some(opts.seed);
    let mut min_gap = f64::INFINITY;

    // u1 = sin 2πx, u2 = sin πx on (0, 1/2): gap = ∫ 4π² sin⁴(πx) dx = 3π²/4
    let spec = ProblemSpec::new(2.0, 1.0);
    match (integrate(&spec, 4.0 * PI * PI, 2.0 * PI), integrate(&spec, PI * PI, PI)) {
        (Ok(u1), Ok(u2)) => match picone_young_gap(&u1, &u2, 2.0, (0.0, 0.5)) {
            Ok(g) => {
                min_gap = min_gap.min(g);
                r.relative("sin(2 pi x) vs sin(pi x) on (0, 1/2)", g, 0.75 * PI * PI, TOL.oracle_rel);
            }
            Err(e) => r.failed("closed form", &e),
        },
        (Err(e), _) | (_, Err(e)) => r.failed("closed form", &e),
    }

    for (i, s) in sturm_samples(opts.seed, opts.samples).iter().enumerate() {
        let pr = &s.problem;
        let name = format!("case {i}: {}", describe(pr));
        let run = || -> Result<f64> {
            let u1 = jumping_trajectory(pr.p, &pr.b1, pr.alpha, pr.beta, pr.c, pr.d, pr.slope1)?;
            let u2 = jumping_trajectory(pr.p, &pr.b2, pr.alpha, pr.beta, pr.c, pr.d, pr.slope2)?;
            match u2.all_zeros().first() {
                // u2 vanishes first: it goes in the numerator so the gap stays finite
                Some(z) if z.x < pr.d * (1.0 - 1e-8) => picone_young_gap(&u2, &u1, pr.p, (pr.c, z.x)),
                _ => picone_young_gap(&u1, &u2, pr.p, (pr.c, pr.d)),
            }
        };
        match run() {
            Ok(g) => {
                min_gap = min_gap.min(g);
                if s.proportional {
                    r.check(name, g.abs() <= TOL.gap_equality, g, Some(0.0), Some(g.abs()));
                } else {
                    r.check(name, g >= TOL.gap_floor, g, None, None);
                }
            }
            Err(e) => r.failed(name, &e),
        }
    }
    r.min_gap = Some(min_gap);
    r.finish()
}

/// Zero counts along increasing `λ`, and exactly `k - 1` zeros at `λ_k`.
pub fn zero_divergence() -> SuiteReport {
    let mut r = SuiteReport::new("zero-divergence");
    for p in [2.0, 3.0] {
        let spec = ProblemSpec::new(p, 1.0);
        let pp = pi_p(p).expect("valid p");
        let lambdas: Vec<f64> = (1..=6).map(|k| (k as f64 * pp).powf(p)).collect();
        match zero_divergence_probe(&spec, &lambdas) {
            Ok(z) => {
                for (k, &n) in z.counts.iter().enumerate().map(|(i, n)| (i + 1, n)) {
                    r.check(format!("p={p} at lambda_{k}"), n + 1 == k, n as f64, Some((k - 1) as f64), None);
                }
            }
            Err(e) => r.failed(format!("p={p} closed-form levels"), &e),
        }
    }
    let spec = ProblemSpec::new(2.0, 1.0).with_weight(CoefficientFn::affine(1.0, 1.0)).with_jumping(1.0, 0.5);
    let lambdas = logspace(1.0, 2e4, 40);
    match zero_divergence_probe(&spec, &lambdas) {
        Ok(z) => {
            let last = *z.counts.last().unwrap_or(&0);
            r.check("a = 1 + x, alpha = 1, beta = 0.5: monotone and above bound", true, last as f64, None, None);
            r.detail_last(format!("counts {:?}", z.counts));
        }
        Err(e) => r.failed("a = 1 + x, alpha = 1, beta = 0.5", &e),
    }
    r.finish()
}

/// Sampled nonexistence on two ratio-window designs, 400 slopes each.
pub fn nonexistence() -> SuiteReport {
    let mut r = SuiteReport::new("nonexistence");
    let cases = [
        (
            "p=2 homogeneous c=5pi^2/2 r=1 k=1",
            ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(2.5 * PI * PI)),
            1,
        ),
        (
            "p=2 rational(15, 20, 2) r=1 k=1",
            ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(15.0, 20.0, 2.0)),
            1,
        ),
        (
            "p=3 alpha=beta=1 rational(1, 0.6, 2) r=100 k=1",
            ProblemSpec::new(3.0, 1.0)
                .with_jumping(1.0, 1.0)
                .with_f(NonlinearitySpec::rational(1.0, 0.6, 2.0))
                .with_r(100.0),
            1,
        ),
    ];
    let mut min_miss = f64::INFINITY;
    for (name, spec, k) in cases {
        match nonexistence_scan(&spec, k, 200, false) {
            Ok(rep) => {
                min_miss = min_miss.min(rep.min_miss);
                for c in &rep.counterexamples {
                    r.counterexamples
                        .push(format!("{name}: slope {:.6e} miss {:.3e} zeros {}", c.slope, c.miss, c.zero_count));
                }
                r.check(name, rep.passed() && rep.min_miss >= TOL.miss_floor, rep.min_miss, None, None);
                r.detail_last(format!(
                    "{} slopes, ratio range [{:.6}, {:.6}], windows {:?}",
                    rep.n_slopes, rep.ratio_range.0, rep.ratio_range.1, rep.windows
                ));
            }
            Err(e) => r.failed(name, &e),
        }
    }
    r.min_miss = Some(min_miss);
    r.details.push("sampling is consistent with nonexistence; it is not a proof".into());
    r.finish()
}

/// Probe amplitudes for the explicit example: `1/s` sweeps `[1, 6.7]`, so
/// `1 - sin(1/s)` covers `[0, 2]`.
pub fn explicit_family_probes() -> Vec<f64> {
    logspace(0.15, 1.0, 40)
}

/// Residuals of the explicit family and an independent bifurcation-set probe.
pub fn explicit_family() -> SuiteReport {
    let mut r = SuiteReport::new("example21");
    for rho in [1.0, -1.0, 1e-3, -1e-3, 2.0] {
        match explicit_family_residual(rho) {
            Ok(res) => r.check(format!("residual rho={rho}"), res <= TOL.example_residual, res, Some(0.0), Some(res)),
            Err(e) => r.failed(format!("residual rho={rho}"), &e),
        }
    }
    let spec = explicit_family_problem();
    match estimate_bifurcation_set(&spec, 1, Sign::Plus, &explicit_family_probes()) {
        Ok(set) => {
            let vals: Vec<f64> = set.solved().collect();
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let solved = vals.len() == set.estimates.len();
            r.check("every probe solved", solved, vals.len() as f64, Some(set.estimates.len() as f64), None);
            r.check("estimates reach 0.05", lo <= 0.05, lo, Some(0.05), None);
            r.check("estimates reach 1.95", hi >= 1.95, hi, Some(1.95), None);
            let inside = vals.iter().all(|l| (-TOL.interval_slack..=2.0 + TOL.interval_slack).contains(l));
            r.check("estimates inside [0, 2]", inside, hi, Some(2.0), None);
            let worst = set
                .estimates
                .iter()
                .filter_map(|e| e.lambda_estimate.map(|l| (l - explicit_family_lambda(e.s)).abs()))
                .fold(0.0f64, f64::max);
            r.check("estimates follow 1 - sin(1/s)", worst <= TOL.family_agreement, worst, Some(0.0), Some(worst));
        }
        Err(e) => r.failed("bifurcation-set probe", &e),
    }
    r.finish()
}

fn rational_branch_setups() -> [(usize, f64); 2] {
    [(1, 15.0), (2, 50.0)]
}

fn rational_spec(f_inf: f64, r: f64) -> ProblemSpec {
    ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(1.0, f_inf, 2.0)).with_r(r)
}

/// Branch endpoints of the rational nonlinearity and its solution at `λ = 1`.
pub fn branch_endpoints() -> SuiteReport {
    let mut r = SuiteReport::new("branch-endpoints");
    for (k, rr) in rational_branch_setups() {
        let spec = rational_spec(0.5, rr);
        let lk = (k as f64 * PI).powi(2);
        match trace_branch(&spec, k, Sign::Plus, 1e-4, 1e4, 33) {
            Ok(b) => {
                r.relative(
                    format!("k={k} r={rr}: small-amplitude end"),
                    b.endpoints_estimate.0,
                    lk / rr,
                    TOL.endpoint_rel,
                );
                r.relative(
                    format!("k={k} r={rr}: large-amplitude end"),
                    b.endpoints_estimate.1,
                    lk / (0.5 * rr),
                    TOL.endpoint_rel,
                );
            }
            Err(e) => r.failed(format!("k={k} r={rr}: branch"), &e),
        }
        match nodal_solution(&spec, k, Sign::Plus, &NodalOptions::default()) {
            Ok(sol) => {
                let ok = sol.zero_count + 1 == k && sol.residual <= TOL.boundary_residual;
                r.check(
                    format!("k={k} r={rr}: solution at lambda = 1"),
                    ok,
                    sol.residual,
                    Some(0.0),
                    Some(sol.residual),
                );
                r.detail_last(format!("s = {:.9e}, {} interior zeros", sol.s, sol.zero_count));
            }
            Err(e) => r.failed(format!("k={k} r={rr}: solution at lambda = 1"), &e),
        }
    }
    r.finish()
}

/// Two solutions per sign (zero counts 0 and 1) at `λ = 1`, with `r` in the
/// common part of the `k = 1` and `k = 2` crossing windows of `rational(1, f_inf, 2)`.
pub fn nodal_existence(f_inf: f64) -> SuiteReport {
    let mut r = SuiteReport::new("nodal-existence");
    let probe = rational_spec(f_inf, 1.0);
    for nu in Sign::BOTH {
        let (w1, w2) = match (crossing_window(&probe, 1, nu), crossing_window(&probe, 2, nu)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                r.failed(format!("nu={nu}: windows"), &e);
                continue;
            }
        };
        let (lo, hi) = (w1.0.max(w2.0), w1.1.min(w2.1));
        let windows = format!("k=1 window ({:.6}, {:.6}), k=2 window ({:.6}, {:.6})", w1.0, w1.1, w2.0, w2.1);
        if lo >= hi {
            r.note(format!("nu={nu}: common window"), false, format!("{windows} do not intersect"));
            continue;
        }
        let rr = (lo * hi).sqrt();
        r.details.push(format!("nu={nu}: {windows}; r = {rr:.6}"));
        let spec = rational_spec(f_inf, rr);
        match nodal_solutions_at_unity(&spec, 1..=2, &[nu], &NodalOptions::default()) {
            Ok(sols) => {
                for (sol, k) in sols.iter().zip(1..) {
                    let ok = sol.zero_count + 1 == k && sol.residual <= TOL.boundary_residual;
                    r.check(
                        format!("nu={nu} k={k}"),
                        ok,
                        sol.zero_count as f64,
                        Some((k - 1) as f64),
                        Some(sol.residual),
                    );
                }
                r.check(format!("nu={nu}: solution count"), sols.len() == 2, sols.len() as f64, Some(2.0), None);
            }
            Err(e) => r.failed(format!("nu={nu}: solutions"), &e),
        }
    }
    r.details.push(format!("f = rational(1, {f_inf}, 2), p = 2, a = 1, L = 1"));
    r.finish()
}

/// `I_1 ∩ I_2 ≠ ∅` against `M > (2^p + 1) π_p^p / 2` for `p = 2`, `M ∈ {24, 25}`.
pub fn intervals_overlap() -> SuiteReport {
    let mut r = SuiteReport::new("intervals-overlap");
    for m in [24.0, 25.0] {
        match intervals_overlap_check(2.0, m, 4) {
            Ok(rep) => {
                r.check(format!("M={m}"), rep.threshold_consistent, m, Some(rep.stated_threshold), None);
                r.detail_last(format!(
                    "I_1 = [{:.6}, {:.6}], I_2 = [{:.6}, {:.6}], overlap {}, stated threshold {:.6}, exact threshold {:.6}",
                    rep.intervals[0].1,
                    rep.intervals[0].2,
                    rep.intervals[1].1,
                    rep.intervals[1].2,
                    rep.overlap_12,
                    rep.stated_threshold,
                    rep.exact_threshold
                ));
            }
            Err(e) => r.failed(format!("M={m}"), &e),
        }
    }
    r.finish()
}

/// Measured `λ_1^±` for `α = β = 1`, `p = 2`, against the arch oracle. Report only.
pub fn equal_jump_report() -> SuiteReport {
    let mut r = SuiteReport::new("corollary31-report");
    r.informational = true;
    let spec = ProblemSpec::new(2.0, 1.0).with_jumping(1.0, 1.0);
    let mut measured = Vec::new();
    for (nu, oracle) in [(Sign::Plus, PI * PI - 1.0), (Sign::Minus, PI * PI + 1.0)] {
        match half_eigenvalue(&spec, 1, nu) {
            Ok(h) => {
                r.relative(format!("lambda_1^{nu} vs arch oracle"), h.lambda, oracle, TOL.oracle_rel);
                measured.push(h.lambda);
            }
            Err(e) => r.failed(format!("lambda_1^{nu}"), &e),
        }
    }
    if let [lp, lm] = measured[..] {
        let flag = if (lp - lm).abs() > TOL.oracle_rel * lp.abs() { "DISCREPANCY" } else { "equal" };
        r.details.push(format!(
            "{flag}: alpha = beta = 1 gives lambda_1^+ = {lp:.12}, lambda_1^- = {lm:.12} (difference {:.6e})",
            lm - lp
        ));
    }
    let mut r = r.finish();
    r.pass = true;
    r
}

/// Bifurcation-set probes of `C^1`-oscillatory perturbations stay in `I_k`.
pub fn interval_containment() -> SuiteReport {
    let mut r = SuiteReport::new("interval-containment");
    let probes = logspace(0.03, 1.0, 6);
    for p in [2.0, 3.0] {
        for m in [0.5, 1.0] {
            let spec = ProblemSpec::new(p, 1.0).with_f(NonlinearitySpec::oscillatory_c1(m));
            for k in [1, 2] {
                match estimate_bifurcation_set(&spec, k, Sign::Plus, &probes) {
                    Ok(set) => {
                        for e in &set.estimates {
                            let name = format!("p={p} M={m} k={k} s={:.4}", e.s);
                            match e.lambda_estimate {
                                Some(l) => {
                                    let (lo, hi) = set.interval;
                                    let excess = (lo - l).max(l - hi).max(0.0);
                                    r.check(name, e.in_interval, l, Some(0.5 * (lo + hi)), Some(excess));
                                    r.detail_last(format!("I_k = [{lo:.9}, {hi:.9}]"));
                                }
                                None => r.note(name, false, e.error.clone().unwrap_or_default()),
                            }
                        }
                    }
                    Err(e) => r.failed(format!("p={p} M={m} k={k}"), &e),
                }
            }
        }
    }
    r.finish()
}

/// `min |u'(z)| / max |u'|` over interior zeros.
pub fn simple_zero_ratio(t: &Trajectory) -> f64 {
    let max = t.max_slope();
    t.interior_zeros().map(|z| t.du(z.x).abs() / max).fold(f64::INFINITY, f64::min)
}

/// Interior zeros of eigenfunctions and branch solutions are simple.
pub fn simple_zeros() -> SuiteReport {
    let mut r = SuiteReport::new("simple-zeros");
    for (p, alpha, beta) in [(1.5, 0.0, 0.0), (2.0, 0.0, 0.0), (3.0, 0.0, 0.0), (2.0, 2.0, 1.0), (3.0, 0.5, -0.5)] {
        let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, beta);
        match half_spectrum(&spec, 5) {
            Ok(pairs) => {
                for h in pairs.iter().filter(|h| h.k >= 2) {
                    let ratio = simple_zero_ratio(&h.eigenfunction);
                    r.check(
                        format!("eigenfunction p={p} alpha={alpha} beta={beta} k={} nu={}", h.k, h.nu),
                        ratio >= TOL.simple_zero,
                        ratio,
                        Some(TOL.simple_zero),
                        None,
                    );
                }
            }
            Err(e) => r.failed(format!("spectrum p={p} alpha={alpha} beta={beta}"), &e),
        }
    }
    for (k, rr) in [(2, 50.0), (3, 100.0)] {
        let spec = rational_spec(0.5, rr);
        for nu in Sign::BOTH {
            match trace_branch(&spec, k, nu, 1e-3, 1e3, 7) {
                Ok(b) => {
                    for pt in &b.points {
                        let name = format!("branch r={rr} k={k} nu={nu} s={:.3e}", pt.s);
                        match integrate(&spec, pt.lambda, nu.value() * pt.s) {
                            Ok(t) => {
                                let ratio = simple_zero_ratio(&t);
                                r.check(name, ratio >= TOL.simple_zero, ratio, Some(TOL.simple_zero), None);
                            }
                            Err(e) => r.failed(name, &e),
                        }
                    }
                }
                Err(e) => r.failed(format!("branch r={rr} k={k}"), &e),
            }
        }
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_input_error() {
        let e = run_suite("nope", &VerifyOptions::default()).unwrap_err();
        assert!(!e.is_numerical());
    }

    #[test]
    fn samples_are_seeded() {
        let a = sturm_samples(7, 5);
        let b = sturm_samples(7, 5);
        let c = sturm_samples(8, 5);
        assert_eq!(format!("{:?}", a[4].problem), format!("{:?}", b[4].problem));
        assert_ne!(format!("{:?}", a[4].problem), format!("{:?}", c[4].problem));
        for s in &a {
            let pr = &s.problem;
            let (b1, b2) = (pr.b1.eval(0.0), pr.b2.eval(0.0));
            assert!(b2 >= b1.max(b1 + pr.alpha - pr.beta) || s.proportional);
            assert!(pr.slope1 * pr.slope2 > 0.0);
        }
    }

    #[test]
    fn closed_form_suite_passes() {
        let r = closed_form_spectrum();
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.n_cases, 15);
    }

    #[test]
    fn report_counts() {
        let mut r = SuiteReport::new("t");
        r.relative("a", 1.0, 1.0, 1e-9);
        r.relative("b", 1.1, 1.0, 1e-9);
        let r = r.finish();
        assert_eq!((r.n_cases, r.n_pass, r.pass), (2, 1, false));
        assert!((r.worst_error.unwrap() - 0.1).abs() < 1e-12);
    }
}
