//! Problem definitions: coefficient functions, nonlinearities, the full
//! problem record, its validation, and the right-hand side of
//! `-(φ_p(u'))' = rhs(λ, x, u, u')`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{signed_pow, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    Constant,
    Affine,
    Polynomial,
    PiecewiseLinearSamples,
}

impl CoefficientKind {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Self::Constant),
            "affine" => Ok(Self::Affine),
            "polynomial" => Ok(Self::Polynomial),
            "piecewise_linear_samples" => Ok(Self::PiecewiseLinearSamples),
            other => Err(Error::ProblemFile(format!("unknown coefficient kind {other:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Constant => "constant",
            Self::Affine => "affine",
            Self::Polynomial => "polynomial",
            Self::PiecewiseLinearSamples => "piecewise_linear_samples",
        }
    }
}

/// A continuous coefficient on `[0, L]` with exact bounds.
///
/// * `constant`: `[c]`
/// * `affine`: `[c0, c1]`, `c0 + c1 x`
/// * `polynomial`: `[c0, c1, ..., cn]`, `Σ c_i x^i`
/// * `piecewise_linear_samples`: `[y0, ..., yn]` at equally spaced nodes of `[0, L]`
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFn {
    kind: CoefficientKind,
    params: Vec<f64>,
    length: f64,
    min_value: f64,
    max_value: f64,
}

impl CoefficientFn {
    pub fn new(kind: CoefficientKind, params: Vec<f64>) -> Result<Self> {
        let ok = match kind {
            CoefficientKind::Constant => params.len() == 1,
            CoefficientKind::Affine => params.len() == 2,
            CoefficientKind::Polynomial => !params.is_empty(),
            CoefficientKind::PiecewiseLinearSamples => params.len() >= 2,
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "{} coefficient: wrong number of params ({})",
                kind.name(),
                params.len()
            )));
        }
        if params.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("{} coefficient: non-finite parameter", kind.name())));
        }
        let mut c = CoefficientFn { kind, params, length: 1.0, min_value: 0.0, max_value: 0.0 };
        c.compute_bounds();
        Ok(c)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(CoefficientKind::Constant, vec![c]).expect("finite constant")
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn affine(c0: f64, c1: f64) -> Self {
        Self::new(CoefficientKind::Affine, vec![c0, c1]).expect("finite affine coefficients")
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(CoefficientKind::Polynomial, coeffs)
    }

    pub fn piecewise_linear(samples: Vec<f64>) -> Result<Self> {
        Self::new(CoefficientKind::PiecewiseLinearSamples, samples)
    }

    /// Rebinds the coefficient to `[0, length]` and recomputes its bounds.
    pub fn on_domain(mut self, length: f64) -> Self {
        self.length = length;
        self.compute_bounds();
        self
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    /// Largest absolute value on the domain.
    pub fn abs_bound(&self) -> f64 {
        self.min_value.abs().max(self.max_value.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.min_value == 0.0 && self.max_value == 0.0
    }

    pub fn is_constant(&self) -> bool {
        self.min_value == self.max_value
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            CoefficientKind::Constant => self.params[0],
            CoefficientKind::Affine => self.params[0] + self.params[1] * x,
            CoefficientKind::Polynomial => self.params.iter().rev().fold(0.0, |acc, c| acc * x + c),
            CoefficientKind::PiecewiseLinearSamples => {
                let n = self.params.len() - 1;
                let t = (x / self.length).clamp(0.0, 1.0) * n as f64;
                let i = (t.floor() as usize).min(n - 1);
                let w = t - i as f64;
                self.params[i] * (1.0 - w) + self.params[i + 1] * w
            }
        }
    }

    fn compute_bounds(&mut self) {
        let (lo, hi) = match self.kind {
            CoefficientKind::Constant => (self.params[0], self.params[0]),
            CoefficientKind::Affine => {
                let a = self.eval(0.0);
                let b = self.eval(self.length);
                (a.min(b), a.max(b))
            }
            CoefficientKind::PiecewiseLinearSamples => {
                self.params.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| (lo.min(y), hi.max(y)))
            }
            CoefficientKind::Polynomial => self.polynomial_bounds(),
        };
        self.min_value = lo;
        self.max_value = hi;
    }

    /// Extremes of a polynomial on `[0, L]`: endpoints plus the sign changes of
    /// the derivative, each refined by bisection.
    fn polynomial_bounds(&self) -> (f64, f64) {
        let deriv: Vec<f64> = self.params.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
        let dp = |x: f64| deriv.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let mut candidates = vec![0.0, self.length];
        if !deriv.is_empty() {
            let n = 4096;
            let h = self.length / n as f64;
            let mut x_prev = 0.0;
            let mut d_prev = dp(0.0);
            for i in 1..=n {
                let x = i as f64 * h;
                let d = dp(x);
                if d == 0.0 {
                    candidates.push(x);
                } else if d_prev != 0.0 && d.signum() != d_prev.signum() {
                    let (mut a, mut b) = (x_prev, x);
                    for _ in 0..200 {
                        let m = 0.5 * (a + b);
                        if m <= a || m >= b {
                            break;
                        }
                        if dp(m).signum() == d_prev.signum() {
                            a = m;
                        } else {
                            b = m;
                        }
                    }
                    candidates.extend([a, b]);
                }
                x_prev = x;
                d_prev = d;
            }
        }
        candidates
            .into_iter()
            .map(|x| self.eval(x))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonlinearityKind {
    /// `c φ_p(s)`; params `[c]`.
    Homogeneous,
    /// `φ_p(s) (f0 + f_inf |s|^θ) / (1 + |s|^θ)`; params `[f0, f_inf, θ]`.
    Rational,
    /// `M φ_p(s) sin(1/|s|)`, `0` at `s = 0`; params `[M]`.
    OscillatoryC1,
    /// `c |s|^{p-1+σ} sign(s)`; params `[c, σ]`.
    HigherOrderC2,
    /// `M φ_p(s) sin((s² + s'²)^{-1/2})`, depends on the slope; params `[M]`.
    OscillatoryEnergy,
}

impl NonlinearityKind {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "homogeneous" => Ok(Self::Homogeneous),
            "rational" => Ok(Self::Rational),
            "oscillatory_c1" | "oscillatory_C1" => Ok(Self::OscillatoryC1),
            "higher_order_c2" | "higher_order_C2" => Ok(Self::HigherOrderC2),
            "oscillatory_energy" => Ok(Self::OscillatoryEnergy),
            other => Err(Error::ProblemFile(format!("unknown nonlinearity kind {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Homogeneous => "homogeneous",
            Self::Rational => "rational",
            Self::OscillatoryC1 => "oscillatory_c1",
            Self::HigherOrderC2 => "higher_order_c2",
            Self::OscillatoryEnergy => "oscillatory_energy",
        }
    }
}

/// How a nonlinearity enters the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// `λ r a(x) f(u)` replaces `λ a(x) φ_p(u)`.
    EigenEmbedded,
    /// `λ a(x) φ_p(u) + f(u)`: a perturbation of the half-linear problem.
    Additive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearitySpec {
    kind: NonlinearityKind,
    params: Vec<f64>,
    f0: Option<f64>,
    f_inf: Option<f64>,
    bound: Option<f64>,
}

impl NonlinearitySpec {
    pub fn new(kind: NonlinearityKind, params: Vec<f64>) -> Result<Self> {
        let expected = match kind {
            NonlinearityKind::Homogeneous | NonlinearityKind::OscillatoryC1 | NonlinearityKind::OscillatoryEnergy => 1,
            NonlinearityKind::HigherOrderC2 => 2,
            NonlinearityKind::Rational => 3,
        };
        if params.len() != expected {
            return Err(Error::InvalidInput(format!(
                "{} nonlinearity expects {expected} params, got {}",
                kind.name(),
                params.len()
            )));
        }
        if params.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("{} nonlinearity: non-finite parameter", kind.name())));
        }
        let (f0, f_inf, bound) = match kind {
            NonlinearityKind::Homogeneous => (Some(params[0]), Some(params[0]), Some(params[0].abs())),
            NonlinearityKind::Rational => {
                (Some(params[0]), Some(params[1]), Some(params[0].abs().max(params[1].abs())))
            }
            NonlinearityKind::OscillatoryC1 | NonlinearityKind::OscillatoryEnergy => {
                (None, None, Some(params[0].abs()))
            }
            NonlinearityKind::HigherOrderC2 => (Some(0.0), None, None),
        };
        Ok(NonlinearitySpec { kind, params, f0, f_inf, bound })
    }

    pub fn homogeneous(c: f64) -> Self {
        Self::new(NonlinearityKind::Homogeneous, vec![c]).expect("finite c")
    }

    pub fn rational(f0: f64, f_inf: f64, theta: f64) -> Self {
        Self::new(NonlinearityKind::Rational, vec![f0, f_inf, theta]).expect("finite params")
    }

    pub fn oscillatory_c1(m: f64) -> Self {
        Self::new(NonlinearityKind::OscillatoryC1, vec![m]).expect("finite M")
    }

    pub fn oscillatory_energy(m: f64) -> Self {
        Self::new(NonlinearityKind::OscillatoryEnergy, vec![m]).expect("finite M")
    }

    pub fn higher_order_c2(c: f64, sigma: f64) -> Self {
        Self::new(NonlinearityKind::HigherOrderC2, vec![c, sigma]).expect("finite params")
    }

    pub fn kind(&self) -> NonlinearityKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// `lim_{s→0} f(s)/φ_p(s)`, when it exists.
    pub fn f0(&self) -> Option<f64> {
        self.f0
    }

    /// `lim_{|s|→∞} f(s)/φ_p(s)`, when it exists.
    pub fn f_inf(&self) -> Option<f64> {
        self.f_inf
    }

    /// `M` with `|f(s)| <= M |φ_p(s)|`, when such a bound holds globally.
    pub fn bound(&self) -> Option<f64> {
        self.bound
    }

    pub fn coupling(&self) -> Coupling {
        match self.kind {
            NonlinearityKind::Homogeneous | NonlinearityKind::Rational => Coupling::EigenEmbedded,
            _ => Coupling::Additive,
        }
    }

    /// Evaluates at `u` with slope `du` (the slope only matters for `oscillatory_energy`).
    #[inline]
    pub fn eval(&self, e: &Exponent, u: f64, du: f64) -> f64 {
        match self.kind {
            NonlinearityKind::Homogeneous => self.params[0] * e.phi(u),
            NonlinearityKind::Rational => {
                if u == 0.0 {
                    return 0.0;
                }
                let t = (self.params[2] * u.abs().ln()).exp();
                let ratio =
                    if t.is_infinite() { self.params[1] } else { (self.params[0] + self.params[1] * t) / (1.0 + t) };
                e.phi(u) * ratio
            }
            NonlinearityKind::OscillatoryC1 => {
                if u == 0.0 {
                    0.0
                } else {
                    self.params[0] * e.phi(u) * (1.0 / u.abs()).sin()
                }
            }
            NonlinearityKind::OscillatoryEnergy => {
                let r2 = u * u + du * du;
                if u == 0.0 || r2 == 0.0 {
                    0.0
                } else {
                    self.params[0] * e.phi(u) * (1.0 / r2.sqrt()).sin()
                }
            }
            NonlinearityKind::HigherOrderC2 => self.params[0] * signed_pow(u, e.p() - 1.0 + self.params[1]),
        }
    }
}

/// One boundary value problem on `[0, L]` with `u(0) = u(L) = 0`.
///
/// The spectral parameter `λ` is not part of the record; it is passed to
/// [`ProblemSpec::rhs`] and solved for by the spectrum and branch solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub p: f64,
    pub length: f64,
    pub weight: CoefficientFn,
    pub alpha: CoefficientFn,
    pub beta: CoefficientFn,
    pub f: Option<NonlinearitySpec>,
    pub g: Option<NonlinearitySpec>,
    pub r: f64,
}

impl ProblemSpec {
    /// `a ≡ 1`, `α = β ≡ 0`, no nonlinearity, `r = 1`.
    pub fn new(p: f64, length: f64) -> Self {
        ProblemSpec {
            p,
            length,
            weight: CoefficientFn::constant(1.0).on_domain(length),
            alpha: CoefficientFn::zero().on_domain(length),
            beta: CoefficientFn::zero().on_domain(length),
            f: None,
            g: None,
            r: 1.0,
        }
    }

    pub fn with_weight(mut self, a: CoefficientFn) -> Self {
        self.weight = a.on_domain(self.length);
        self
    }

    pub fn with_alpha(mut self, alpha: CoefficientFn) -> Self {
        self.alpha = alpha.on_domain(self.length);
        self
    }

    pub fn with_beta(mut self, beta: CoefficientFn) -> Self {
        self.beta = beta.on_domain(self.length);
        self
    }

    pub fn with_jumping(self, alpha: f64, beta: f64) -> Self {
        self.with_alpha(CoefficientFn::constant(alpha)).with_beta(CoefficientFn::constant(beta))
    }

    pub fn with_f(mut self, f: NonlinearitySpec) -> Self {
        self.f = Some(f);
        self
    }

    pub fn with_g(mut self, g: NonlinearitySpec) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    /// The half-linear problem obtained by dropping `f` and `g`.
    pub fn half_linear(&self) -> Self {
        ProblemSpec { f: None, g: None, ..self.clone() }
    }

    pub fn exponent(&self) -> Result<Exponent> {
        Exponent::new(self.p)
    }

    /// True when no nonlinearity is present, so the problem is positively homogeneous.
    pub fn is_half_linear(&self) -> bool {
        self.f.is_none() && self.g.is_none()
    }

    pub fn has_no_jumping(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(Check { name: name.to_string(), passed, detail });
        };
        push("p>1", self.p.is_finite() && self.p > 1.0, format!("p = {}", self.p));
        push("domain_length>0", self.length.is_finite() && self.length > 0.0, format!("L = {}", self.length));
        push("weight positivity", self.weight.min_value() > 0.0, format!("min a = {}", self.weight.min_value()));
        let same_domain =
            [&self.weight, &self.alpha, &self.beta].iter().all(|c| c.length() == self.length || c.is_constant());
        push("coefficient domains", same_domain, format!("L = {}", self.length));
        if let Some(f) = &self.f {
            if f.kind() == NonlinearityKind::Rational {
                let (f0, fi, th) = (f.params[0], f.params[1], f.params[2]);
                push("rational f0>0", f0 > 0.0, format!("f0 = {f0}"));
                push("rational f_inf>0", fi > 0.0, format!("f_inf = {fi}"));
                push("rational theta>0", th > 0.0, format!("theta = {th}"));
            }
            if f.kind() == NonlinearityKind::HigherOrderC2 {
                push("sigma>0", f.params[1] > 0.0, format!("sigma = {}", f.params[1]));
            }
        }
        if let Some(g) = &self.g {
            push(
                "g is higher_order_c2",
                g.kind() == NonlinearityKind::HigherOrderC2,
                format!("g kind = {}", g.kind().name()),
            );
            if g.kind() == NonlinearityKind::HigherOrderC2 {
                push("sigma>0", g.params[1] > 0.0, format!("sigma = {}", g.params[1]));
            }
        }
        push("r finite", self.r.is_finite(), format!("r = {}", self.r));
        ValidationReport { checks }
    }

    /// Validation as a `Result`, naming the first violated invariant.
    pub fn check(&self) -> Result<Exponent> {
        let report = self.validate();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::InvalidInput(format!("{} violated ({})", bad.name, bad.detail)));
        }
        self.exponent()
    }

    /// Right-hand side at slope `du`:
    ///
    /// `λ a φ_p(u) + α φ_p(u⁺) + β φ_p(u⁻) [+ f] [+ g]`, where an
    /// eigen-embedded `f` replaces the first term by `λ r a f(u)`.
    #[inline]
    pub fn rhs_with_slope(&self, e: &Exponent, lambda: f64, x: f64, u: f64, du: f64) -> f64 {
        let a = self.weight.eval(x);
        let phi_u = e.phi(u);
        // φ_p(u⁺) = φ_p(u) for u > 0; φ_p(u⁻) = -φ_p(u) for u < 0 (u⁻ = -min{u, 0} >= 0)
        let mut val = if u > 0.0 {
            self.alpha.eval(x) * phi_u
        } else if u < 0.0 {
            -self.beta.eval(x) * phi_u
        } else {
            0.0
        };
        match &self.f {
            Some(f) if f.coupling() == Coupling::EigenEmbedded => {
                val += lambda * self.r * a * f.eval(e, u, du);
            }
            Some(f) => {
                val += lambda * a * phi_u + f.eval(e, u, du);
            }
            None => val += lambda * a * phi_u,
        }
        if let Some(g) = &self.g {
            val += g.eval(e, u, du);
        }
        val
    }

    /// Right-hand side with zero slope; equal to [`Self::rhs_with_slope`] for every
    /// nonlinearity that does not depend on `u'`.
    pub fn rhs(&self, lambda: f64, x: f64, u: f64) -> Result<f64> {
        let e = self.exponent()?;
        if !(0.0..=self.length).contains(&x) {
            return Err(Error::InvalidInput(format!("x = {x} outside [0, {}]", self.length)));
        }
        Ok(self.rhs_with_slope(&e, lambda, x, u, 0.0))
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ProblemFile = toml::from_str(text).map_err(|e| Error::ProblemFile(e.message().to_string()))?;
        file.into_spec()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ProblemFile(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        let coef = |c: &CoefficientFn| CoefTable { kind: c.kind.name().to_string(), params: c.params.clone() };
        let nl = |n: &NonlinearitySpec| CoefTable { kind: n.kind.name().to_string(), params: n.params.clone() };
        let file = ProblemFile {
            p: self.p,
            domain_length: Some(self.length),
            weight: Some(coef(&self.weight)),
            alpha: Some(coef(&self.alpha)),
            beta: Some(coef(&self.beta)),
            f: self.f.as_ref().map(nl),
            g: self.g.as_ref().map(nl),
            r: Some(self.r),
        };
        toml::to_string(&file).expect("problem record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        let msgs: Vec<String> = self.failures().map(|c| format!("{} violated ({})", c.name, c.detail)).collect();
        write!(f, "fail: {}", msgs.join("; "))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefTable {
    kind: String,
    params: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    p: f64,
    domain_length: Option<f64>,
    r: Option<f64>,
    weight: Option<CoefTable>,
    alpha: Option<CoefTable>,
    beta: Option<CoefTable>,
    f: Option<CoefTable>,
    g: Option<CoefTable>,
}

impl ProblemFile {
    fn into_spec(self) -> Result<ProblemSpec> {
        let coef = |t: CoefTable| -> Result<CoefficientFn> {
            CoefficientFn::new(CoefficientKind::parse(&t.kind)?, t.params)
                .map_err(|e| Error::ProblemFile(e.to_string()))
        };
        let nl = |t: CoefTable| -> Result<NonlinearitySpec> {
            NonlinearitySpec::new(NonlinearityKind::parse(&t.kind)?, t.params)
                .map_err(|e| Error::ProblemFile(e.to_string()))
        };
        let mut spec = ProblemSpec::new(self.p, self.domain_length.unwrap_or(1.0));
        if let Some(w) = self.weight {
            spec = spec.with_weight(coef(w)?);
        }
        if let Some(a) = self.alpha {
            spec = spec.with_alpha(coef(a)?);
        }
        if let Some(b) = self.beta {
            spec = spec.with_beta(coef(b)?);
        }
        if let Some(f) = self.f {
            spec = spec.with_f(nl(f)?);
        }
        if let Some(g) = self.g {
            spec = spec.with_g(nl(g)?);
        }
        if let Some(r) = self.r {
            spec = spec.with_r(r);
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(ProblemSpec::new(2.0, 1.0).validate().passed());
        let r = ProblemSpec::new(0.5, 1.0).validate();
        assert!(!r.passed());
        assert!(r.to_string().contains("p>1 violated"));
        let r = ProblemSpec::new(2.0, 1.0).with_weight(CoefficientFn::affine(-0.5, 1.0)).validate();
        assert!(r.to_string().contains("weight positivity violated"), "{r}");
        let r = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(-1.0, 0.5, 2.0)).validate();
        assert!(r.to_string().contains("rational f0>0 violated"));
    }

    #[test]
    fn rhs_examples() {
        let s = ProblemSpec::new(2.0, 1.0);
        assert_eq!(s.rhs(3.0, 0.5, 2.0).unwrap(), 6.0);
        let s = ProblemSpec::new(2.0, 1.0).with_jumping(1.0, 0.0);
        assert_eq!(s.rhs(0.0, 0.5, -2.0).unwrap(), 0.0);
        let s = ProblemSpec::new(2.0, 1.0).with_jumping(0.0, 1.0);
        assert_eq!(s.rhs(0.0, 0.5, -2.0).unwrap(), 2.0);
        assert!(s.rhs(0.0, 1.5, 1.0).is_err());
    }

    #[test]
    fn eigen_embedded_f_replaces_first_term() {
        let s = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(3.0)).with_r(2.0);
        assert_relative_eq!(s.rhs(0.5, 0.1, 1.5).unwrap(), 0.5 * 2.0 * 3.0 * 1.5);
        let s = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::oscillatory_c1(1.0));
        let u: f64 = 0.3;
        assert_relative_eq!(s.rhs(2.0, 0.1, u).unwrap(), 2.0 * u + u * (1.0 / u).sin());
    }

    #[test]
    fn rational_limits() {
        let f = NonlinearitySpec::rational(15.0, 20.0, 2.0);
        for p in [1.5, 2.0, 3.0] {
            let ex = e(p);
            for s in [1e-8, -1e-8] {
                assert_relative_eq!(f.eval(&ex, s, 0.0) / ex.phi(s), 15.0, max_relative = 1e-6);
            }
            for s in [1e8, -1e8] {
                assert_relative_eq!(f.eval(&ex, s, 0.0) / ex.phi(s), 20.0, max_relative = 1e-6);
            }
            for s in [-3.0, -0.1, 0.2, 7.0] {
                assert!(s * f.eval(&ex, s, 0.0) > 0.0);
            }
        }
    }

    #[test]
    fn higher_order_vanishes_faster() {
        let g = NonlinearitySpec::higher_order_c2(2.0, 1.0);
        let ex = e(2.5);
        let mut prev = f64::INFINITY;
        for s in [1e-1, 1e-2, 1e-3, 1e-4, 1e-6] {
            let ratio = g.eval(&ex, s, 0.0).abs() / s.powf(1.5);
            assert!(ratio < prev);
            prev = ratio;
        }
        assert!(prev < 1e-5);
        assert_eq!(g.f0(), Some(0.0));
    }

    #[test]
    fn polynomial_bounds_exact() {
        // 1 + (x - 0.3)^2 on [0, 1]: min 1 at 0.3, max 1.49 at 1
        let c = CoefficientFn::polynomial(vec![1.09, -0.6, 1.0]).unwrap().on_domain(1.0);
        assert_relative_eq!(c.min_value(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(c.max_value(), 1.49, max_relative = 1e-14);
        for i in 0..=10_000 {
            let x = i as f64 / 10_000.0;
            let y = c.eval(x);
            assert!(c.min_value() <= y && y <= c.max_value());
        }
    }

    #[test]
    fn piecewise_linear_eval() {
        let c = CoefficientFn::piecewise_linear(vec![1.0, 3.0, 2.0]).unwrap().on_domain(2.0);
        assert_eq!(c.eval(0.0), 1.0);
        assert_eq!(c.eval(0.5), 2.0);
        assert_eq!(c.eval(1.0), 3.0);
        assert_eq!(c.eval(2.0), 2.0);
        assert_eq!((c.min_value(), c.max_value()), (1.0, 3.0));
    }

    #[test]
    fn bad_param_counts() {
        assert!(CoefficientFn::new(CoefficientKind::Affine, vec![1.0]).is_err());
        assert!(NonlinearitySpec::new(NonlinearityKind::Rational, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn problem_file_round_trip() {
        let text = r#"
p = 2.0
domain_length = 1.0
r = 15.0

[weight]
kind = "affine"
params = [1.0, 1.0]

[alpha]
kind = "constant"
params = [0.5]

[f]
kind = "rational"
params = [1.0, 0.5, 2.0]
"#;
        let spec = ProblemSpec::from_toml_str(text).unwrap();
        assert_eq!(spec.r, 15.0);
        assert_eq!(spec.weight.max_value(), 2.0);
        assert!(spec.beta.is_zero());
        let again = ProblemSpec::from_toml_str(&spec.to_toml_string()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn dotted_keys_accepted() {
        let text = "p = 3.0\ndomain_length = 2.0\nweight.kind = \"constant\"\nweight.params = [4.0]\n";
        let spec = ProblemSpec::from_toml_str(text).unwrap();
        assert_eq!(spec.weight.eval(1.0), 4.0);
        assert_eq!(spec.length, 2.0);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ProblemSpec::from_toml_str("p = 2.0\nlambda = 3.0\n").is_err());
        assert!(
            ProblemSpec::from_toml_str("p = 2.0\n[weight]\nkind = \"constant\"\nparams = [1.0]\nextra = 1\n").is_err()
        );
        assert!(ProblemSpec::from_toml_str("p = 2.0\n[weight]\nkind = \"spline\"\nparams = [1.0]\n").is_err());
    }
}
