//! Adaptive shooting integrator.
//!
//! The boundary value problem is recast as the first-order system
//! `u' = φ_p^{-1}(v)`, `v' = -rhs(x, u, u')` with `v = φ_p(u')`, started from
//! `(u, v) = (0, φ_p(s))` and integrated left to right with the Dormand–Prince
//! 5(4) pair. Every sign change of `u` is located on the 4th-order dense
//! interpolant.
//!
//! The system is not Lipschitz at `v = 0` for `p > 2` (at `u = 0` for `p < 2`).
//! Those crossings are transversal for nontrivial solutions; the step size
//! controller rejects steps across them until the local error estimate is
//! within tolerance. Very large or very small `p` may need many rejections.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::scalar::Exponent;

/// Integration tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IvpOptions {
    pub rtol: f64,
    /// Absolute tolerance for a unit initial slope. It is scaled by `|s|` for
    /// `u` and by `|s|^{p-1}` for `v`, so the controller is amplitude invariant.
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for IvpOptions {
    fn default() -> Self {
        IvpOptions { rtol: 1e-10, atol: 1e-12, max_steps: 2_000_000 }
    }
}

/// Zeros closer than this (relative to `L`) to the right endpoint are not interior.
pub const EDGE_BAND: f64 = 1e-8;
/// Simple-zero floor relative to `max |u'|`.
pub const SIMPLE_ZERO_FLOOR: f64 = 1e-6;
/// Zero location accuracy on the dense interpolant.
pub const ZERO_XTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Node {
    pub x: f64,
    pub u: f64,
    /// `φ_p(u')`.
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Zero {
    pub x: f64,
    /// `u'` at the zero.
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    StepFailure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct DenseStep {
    x0: f64,
    h: f64,
    /// Hairer's continuous-extension coefficients, `[component][0..5]`.
    rc: [[f64; 5]; 2],
}

impl DenseStep {
    #[inline]
    fn eval(&self, x: f64) -> [f64; 2] {
        let th = (x - self.x0) / self.h;
        let th1 = 1.0 - th;
        let mut out = [0.0; 2];
        for (i, r) in self.rc.iter().enumerate() {
            out[i] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
        }
        out
    }

    fn x1(&self) -> f64 {
        self.x0 + self.h
    }
}

/// A dense numerical solution of the shooting initial value problem.
#[derive(Debug, Clone)]
pub struct Trajectory {
    exponent: Exponent,
    x_start: f64,
    x_end: f64,
    slope0: f64,
    nodes: Vec<Node>,
    steps: Vec<DenseStep>,
    zeros: Vec<Zero>,
    status: Status,
    failure: Option<(f64, f64)>,
    rejected: usize,
}

impl Trajectory {
    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn start(&self) -> f64 {
        self.x_start
    }

    pub fn end(&self) -> f64 {
        self.x_end
    }

    pub fn slope0(&self) -> f64 {
        self.slope0
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn n_rejected(&self) -> usize {
        self.rejected
    }

    /// Every located sign change of `u` in `(start, end]`, including one that
    /// falls inside the edge band at the right endpoint.
    pub fn all_zeros(&self) -> &[Zero] {
        &self.zeros
    }

    /// Number of sign changes in `(start, end]`, without the edge band.
    pub fn raw_zero_count(&self) -> usize {
        self.zeros.len()
    }

    /// Zeros strictly inside the interval, away from the right edge band.
    pub fn interior_zeros(&self) -> impl Iterator<Item = &Zero> {
        let cut = self.x_end - EDGE_BAND * (self.x_end - self.x_start);
        self.zeros.iter().filter(move |z| z.x < cut)
    }

    /// `(u(end), u'(end))`.
    pub fn endpoint(&self) -> (f64, f64) {
        let n = self.nodes.last().expect("trajectory has a start node");
        (n.u, self.exponent.phi_inv(n.v))
    }

    pub(crate) fn into_result(self) -> Result<Trajectory> {
        match self.status {
            Status::Complete => Ok(self),
            Status::StepFailure => {
                let (x, h) = self.failure.unwrap_or((f64::NAN, f64::NAN));
                Err(Error::StepFailure { x, h })
            }
        }
    }

    fn step_index(&self, x: f64) -> usize {
        let idx = self.steps.partition_point(|s| s.x0 <= x);
        idx.saturating_sub(1).min(self.steps.len().saturating_sub(1))
    }

    /// Dense `(u, v)` at `x`, clamped to the integrated range.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        if self.steps.is_empty() {
            let n = self.nodes[0];
            return (n.u, n.v);
        }
        let x = x.clamp(self.x_start, self.nodes.last().unwrap().x);
        let [u, v] = self.steps[self.step_index(x)].eval(x);
        (u, v)
    }

    pub fn u(&self, x: f64) -> f64 {
        self.eval(x).0
    }

    /// `u'(x) = φ_p^{-1}(v(x))`.
    pub fn du(&self, x: f64) -> f64 {
        self.exponent.phi_inv(self.eval(x).1)
    }

    /// `max |u|` over the dense output (extrema sit at sign changes of `v`).
    pub fn sup_norm(&self) -> f64 {
        let mut best = self.nodes.iter().fold(0.0f64, |m, n| m.max(n.u.abs()));
        for s in &self.steps {
            let v0 = s.eval(s.x0)[1];
            let v1 = s.eval(s.x1())[1];
            if v0 == 0.0 || v0.signum() == v1.signum() {
                continue;
            }
            let (mut a, mut b) = (s.x0, s.x1());
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b || b - a <= 1e-15 * (1.0 + m.abs()) {
                    break;
                }
                if s.eval(m)[1].signum() == v0.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            best = best.max(s.eval(0.5 * (a + b))[0].abs());
        }
        best
    }

    /// `max |u'|` over the dense output.
    pub fn max_slope(&self) -> f64 {
        let mut best = (0.0f64, 0usize, 0.0f64);
        for (i, s) in self.steps.iter().enumerate() {
            for j in 0..=8 {
                let x = s.x0 + s.h * j as f64 / 8.0;
                let v = s.eval(x)[1].abs();
                if v > best.0 {
                    best = (v, i, x);
                }
            }
        }
        if self.steps.is_empty() {
            return self.exponent.phi_inv(self.nodes[0].v).abs();
        }
        // golden-section refinement of |v| around the best sample
        let s = &self.steps[best.1];
        let (mut a, mut b) = ((best.2 - s.h / 8.0).max(s.x0), (best.2 + s.h / 8.0).min(s.x1()));
        let g = 0.618_033_988_749_895;
        let f = |x: f64| s.eval(x)[1].abs();
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        for _ in 0..80 {
            if f(c) > f(d) {
                b = d;
            } else {
                a = c;
            }
            c = b - g * (b - a);
            d = a + g * (b - a);
        }
        let vmax = best.0.max(f(0.5 * (a + b)));
        self.exponent.phi_inv(vmax)
    }

    /// `max |u| + max |u'|`.
    pub fn c1_norm(&self) -> f64 {
        self.sup_norm() + self.max_slope()
    }

    /// The trajectory of `c u` for a positively homogeneous problem.
    pub fn scaled(&self, c: f64) -> Trajectory {
        let cv = self.exponent.phi(c);
        let mut out = self.clone();
        out.slope0 *= c;
        for n in &mut out.nodes {
            n.u *= c;
            n.v *= cv;
        }
        for s in &mut out.steps {
            for k in 0..5 {
                s.rc[0][k] *= c;
                s.rc[1][k] *= cv;
            }
        }
        for z in &mut out.zeros {
            z.slope *= c;
        }
        out
    }

    /// `n` uniformly spaced dense samples `(x, u, u', v)`.
    pub fn samples(&self, n: usize) -> Vec<[f64; 4]> {
        let n = n.max(2);
        let (a, b) = (self.x_start, self.nodes.last().unwrap().x);
        (0..n)
            .map(|i| {
                let x = if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 };
                let (u, v) = self.eval(x);
                [x, u, self.exponent.phi_inv(v), v]
            })
            .collect()
    }

    /// CSV with header `x,u,du,v`.
    pub fn write_csv<W: Write>(&self, mut w: W, samples: usize) -> std::io::Result<()> {
        writeln!(w, "x,u,du,v")?;
        for [x, u, du, v] in self.samples(samples) {
            writeln!(w, "{x:.12e},{u:.12e},{du:.12e},{v:.12e}")?;
        }
        Ok(())
    }
}

/// Interior zero count and locations; fails if a zero is numerically double.
pub fn count_zeros(traj: &Trajectory) -> Result<(usize, Vec<f64>)> {
    if traj.status() != Status::Complete {
        return Err(Error::InvalidInput("trajectory did not complete".into()));
    }
    let floor = SIMPLE_ZERO_FLOOR * traj.max_slope();
    let mut xs = Vec::new();
    for z in traj.interior_zeros() {
        if z.slope.abs() < floor {
            return Err(Error::DegenerateZero { x: z.x, slope: z.slope.abs(), floor });
        }
        xs.push(z.x);
    }
    Ok((xs.len(), xs))
}

/// `max |u|` (see [`Trajectory::sup_norm`]).
pub fn sup_norm(traj: &Trajectory) -> f64 {
    traj.sup_norm()
}

/// `max |u| + max |u'|`.
pub fn c1_norm(traj: &Trajectory) -> f64 {
    traj.c1_norm()
}

/// Shoots `spec` at `λ` from `u(0) = 0, u'(0) = slope0` over `[0, L]`.
pub fn integrate(spec: &ProblemSpec, lambda: f64, slope0: f64) -> Result<Trajectory> {
    integrate_with(spec, lambda, slope0, &IvpOptions::default())
}

pub fn integrate_with(spec: &ProblemSpec, lambda: f64, slope0: f64, opts: &IvpOptions) -> Result<Trajectory> {
    let e = spec.check()?;
    if slope0 == 0.0 || !slope0.is_finite() || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("need finite lambda and slope0 != 0 (got {lambda}, {slope0})")));
    }
    integrate_system(e, 0.0, spec.length, slope0, opts, |x, u, du| spec.rhs_with_slope(&e, lambda, x, u, du))
        .into_result()
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integrates `u' = φ_p^{-1}(v)`, `v' = -rhs(x, u, u')` on `[x0, x1]` from
/// `u(x0) = 0`, `u'(x0) = slope0`. Never panics on step failure; the returned
/// trajectory carries the status.
pub fn integrate_system<F>(e: Exponent, x0: f64, x1: f64, slope0: f64, opts: &IvpOptions, rhs: F) -> Trajectory
where
    F: Fn(f64, f64, f64) -> f64,
{
    let field = |x: f64, y: [f64; 2]| -> [f64; 2] {
        let du = e.phi_inv(y[1]);
        [du, -rhs(x, y[0], du)]
    };
    let span = x1 - x0;
    let scale_u = slope0.abs();
    let scale_v = e.phi(slope0).abs();
    let atol = [opts.atol * scale_u, opts.atol * scale_v];
    let h_min = 1e-14 * span.abs();

    let mut traj = Trajectory {
        exponent: e,
        x_start: x0,
        x_end: x1,
        slope0,
        nodes: Vec::with_capacity(256),
        steps: Vec::with_capacity(256),
        zeros: Vec::new(),
        status: Status::Complete,
        failure: None,
        rejected: 0,
    };

    let mut x = x0;
    let mut y = [0.0, e.phi(slope0)];
    traj.nodes.push(Node { x, u: y[0], v: y[1] });
    let mut k1 = field(x, y);
    let mut h = 1e-3 * span;
    let mut last_rejected = false;

    let mut guard = 0usize;
    while x < x1 {
        guard += 1;
        if guard > opts.max_steps {
            traj.status = Status::StepFailure;
            traj.failure = Some((x, h));
            return traj;
        }
        let mut last = false;
        if x + h >= x1 || x + 1.01 * h >= x1 {
            h = x1 - x;
            last = true;
        }

        let mut yt = [0.0; 2];
        let stage = |yt: &mut [f64; 2], coeffs: &[(f64, &[f64; 2])]| {
            for i in 0..2 {
                yt[i] = y[i] + h * coeffs.iter().map(|(c, k)| c * k[i]).sum::<f64>();
            }
        };
        stage(&mut yt, &[(A21, &k1)]);
        let k2 = field(x + C2 * h, yt);
        stage(&mut yt, &[(A31, &k1), (A32, &k2)]);
        let k3 = field(x + C3 * h, yt);
        stage(&mut yt, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
        let k4 = field(x + C4 * h, yt);
        stage(&mut yt, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
        let k5 = field(x + C5 * h, yt);
        stage(&mut yt, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
        let k6 = field(x + h, yt);
        let mut y_new = [0.0; 2];
        for i in 0..2 {
            y_new[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        let x_new = if last { x1 } else { x + h };
        let k7 = field(x_new, y_new);

        let mut err2 = 0.0;
        for i in 0..2 {
            let ei = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = atol[i] + opts.rtol * y[i].abs().max(y_new[i].abs());
            err2 += (ei / sc).powi(2);
        }
        let err = (0.5 * err2).sqrt();

        if !err.is_finite() || err > 1.0 {
            traj.rejected += 1;
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).max(0.2) } else { 0.1 };
            h *= fac.min(0.9);
            last_rejected = true;
            if h.abs() < h_min {
                traj.status = Status::StepFailure;
                traj.failure = Some((x, h));
                return traj;
            }
            continue;
        }

        let mut rc = [[0.0; 5]; 2];
        for i in 0..2 {
            let dy = y_new[i] - y[i];
            let bspl = h * k1[i] - dy;
            rc[i] = [
                y[i],
                dy,
                bspl,
                dy - h * k7[i] - bspl,
                h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]),
            ];
        }
        let step = DenseStep { x0: x, h: x_new - x, rc };
        locate_zeros(&step, y[0], y_new[0], &e, &mut traj.zeros);
        traj.steps.push(step);
        traj.nodes.push(Node { x: x_new, u: y_new[0], v: y_new[1] });

        x = x_new;
        y = y_new;
        k1 = k7;

        let mut fac = 0.9 * err.max(1e-10).powf(-0.2);
        fac = fac.clamp(0.2, 5.0);
        if last_rejected {
            fac = fac.min(1.0);
        }
        last_rejected = false;
        h *= fac;
        if last {
            break;
        }
    }
    traj
}

/// Appends sign changes of `u` inside one dense step. Sub-samples the
/// interpolant so that a pair of close zeros inside one step is not missed.
fn locate_zeros(step: &DenseStep, u0: f64, u1: f64, e: &Exponent, zeros: &mut Vec<Zero>) {
    const SUB: usize = 4;
    let mut xa = step.x0;
    let mut ua = u0;
    for j in 1..=SUB {
        let xb = if j == SUB { step.x1() } else { step.x0 + step.h * j as f64 / SUB as f64 };
        let ub = if j == SUB { u1 } else { step.eval(xb)[0] };
        let crosses = (ua > 0.0 && ub <= 0.0) || (ua < 0.0 && ub >= 0.0);
        if crosses {
            let (mut a, mut b) = (xa, xb);
            let sa = ua.signum();
            while b - a > ZERO_XTOL {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if step.eval(m)[0].signum() == sa {
                    a = m;
                } else {
                    b = m;
                }
            }
            let z = 0.5 * (a + b);
            let v = step.eval(z)[1];
            zeros.push(Zero { x: z, slope: e.phi_inv(v) });
        }
        if ub != 0.0 {
            ua = ub;
        }
        xa = xb;
    }
}

/// Classical fixed-step RK4 on the same first-order system, used as an
/// independent reference in tests. Returns `(u(x1), u'(x1), sign changes of u)`.
pub fn fixed_step_reference<F>(e: Exponent, x1: f64, slope0: f64, n: usize, rhs: F) -> (f64, f64, usize)
where
    F: Fn(f64, f64, f64) -> f64,
{
    let field = |x: f64, y: [f64; 2]| -> [f64; 2] {
        let du = e.phi_inv(y[1]);
        [du, -rhs(x, y[0], du)]
    };
    let h = x1 / n as f64;
    let mut y = [0.0, e.phi(slope0)];
    let mut changes = 0;
    for i in 0..n {
        let x = i as f64 * h;
        let k1 = field(x, y);
        let k2 = field(x + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = field(x + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = field(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        let un = y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        let vn = y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        if i > 0 && y[0] != 0.0 && un.signum() != y[0].signum() {
            changes += 1;
        }
        y = [un, vn];
    }
    (y[0], e.phi_inv(y[1]), changes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pi_p;
    use std::f64::consts::PI;

    #[test]
    fn linear_first_mode() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let t = integrate(&spec, PI * PI, 1.0).unwrap();
        assert!(t.endpoint().0.abs() < 1e-9, "u(1) = {}", t.endpoint().0);
        assert_eq!(count_zeros(&t).unwrap().0, 0);
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((t.u(x) - (PI * x).sin() / PI).abs() < 1e-9);
        }
        assert!((t.sup_norm() - 1.0 / PI).abs() < 1e-8 / PI);
    }

    #[test]
    fn linear_third_mode_zeros() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let t = integrate(&spec, 9.0 * PI * PI, 1.0).unwrap();
        let (n, xs) = count_zeros(&t).unwrap();
        assert_eq!(n, 2);
        assert!((xs[0] - 1.0 / 3.0).abs() < 1e-9);
        assert!((xs[1] - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn p3_first_eigenfunction_hits_zero() {
        let spec = ProblemSpec::new(3.0, 1.0);
        let lambda = pi_p(3.0).unwrap().powi(3);
        let t = integrate(&spec, lambda, 1.0).unwrap();
        assert!(t.endpoint().0.abs() < 1e-8, "u(1) = {}", t.endpoint().0);
        assert_eq!(count_zeros(&t).unwrap().0, 0);
        let e = Exponent::new(3.0).unwrap();
        let (u_ref, _, _) =
            fixed_step_reference(e, 1.0, 1.0, 1_000_000, |x, u, du| spec.rhs_with_slope(&e, lambda, x, u, du));
        assert!((t.endpoint().0 - u_ref).abs() < 1e-8);
        assert!(t.sup_norm() > 0.0 && t.sup_norm().is_finite());
    }

    #[test]
    fn scaled_trajectory_norms() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let t = integrate(&spec, PI * PI, 1.0).unwrap();
        let t2 = t.scaled(2.0);
        assert_eq!(t2.sup_norm(), 2.0 * t.sup_norm());
    }

    #[test]
    fn csv_export_header_and_rows() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let t = integrate(&spec, PI * PI, 1.0).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, 11).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "x,u,du,v");
        assert_eq!(lines.len(), 12);
    }

    #[test]
    fn zero_slope_rejected() {
        let spec = ProblemSpec::new(2.0, 1.0);
        assert!(integrate(&spec, 1.0, 0.0).is_err());
    }

    #[test]
    fn step_failure_reported() {
        let spec = ProblemSpec::new(2.0, 1.0);
        let e = spec.exponent().unwrap();
        let opts = IvpOptions { max_steps: 3, ..IvpOptions::default() };
        let t = integrate_system(e, 0.0, 1.0, 1.0, &opts, |_, u, _| 1e6 * u);
        assert_eq!(t.status(), Status::StepFailure);
        assert!(matches!(t.into_result(), Err(Error::StepFailure { .. })));
    }

    #[test]
    fn nodes_consistent() {
        let spec = ProblemSpec::new(2.5, 1.0).with_jumping(1.0, 0.5);
        let t = integrate(&spec, 30.0, 1.0).unwrap();
        assert!(t.nodes().windows(2).all(|w| w[0].x < w[1].x));
        assert_eq!(t.nodes().last().unwrap().x, 1.0);
        let e = t.exponent();
        for n in t.nodes() {
            let (u, v) = t.eval(n.x);
            assert!((u - n.u).abs() <= 1e-12 * (1.0 + n.u.abs()));
            assert!((e.phi(e.phi_inv(v)) - n.v).abs() <= 1e-10 * n.v.abs().max(1e-300));
        }
    }
}
