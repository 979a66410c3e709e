//! Scalar kernels: the odd power map `φ_p`, its inverse, the generalized
//! half-period `π_p`, and a closed-form arch solver for constant-coefficient
//! half-eigenvalues.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect_polish;

/// Sign of a solution near `x = 0` (the `ν` of the half-spectrum).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of the `k`-th arch (1-based) of a solution starting with `self`.
    pub fn of_arch(self, k: usize) -> Sign {
        if k % 2 == 1 {
            self
        } else {
            self.flip()
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::InvalidInput(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

/// A validated exponent `p > 1` together with its conjugate `q = p/(p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    p: f64,
    q: f64,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Exponent { p, q: p / (p - 1.0) })
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    /// `|s|^{p-2} s`.
    #[inline]
    pub fn phi(&self, s: f64) -> f64 {
        signed_pow(s, self.p - 1.0)
    }

    /// `φ_p^{-1}(v) = φ_q(v) = |v|^{q-2} v`.
    #[inline]
    pub fn phi_inv(&self, v: f64) -> f64 {
        signed_pow(v, self.q - 1.0)
    }

    pub fn pi_p(&self) -> f64 {
        2.0 * PI * (self.p - 1.0).powf(1.0 / self.p) / (self.p * (PI / self.p).sin())
    }
}

/// `sign(s) |s|^e`, with the `s = 0` branch taken explicitly.
#[inline]
pub(crate) fn signed_pow(s: f64, e: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if e == 1.0 {
        return s;
    }
    let m = (e * s.abs().ln()).exp();
    if s < 0.0 {
        -m
    } else {
        m
    }
}

pub fn phi_p(s: f64, p: f64) -> Result<f64> {
    Ok(Exponent::new(p)?.phi(s))
}

pub fn phi_p_inv(v: f64, p: f64) -> Result<f64> {
    Ok(Exponent::new(p)?.phi_inv(v))
}

/// The generalized half-period `π_p = 2π (p-1)^{1/p} / (p sin(π/p))`.
pub fn pi_p(p: f64) -> Result<f64> {
    Ok(Exponent::new(p)?.pi_p())
}

/// Constant-coefficient half-eigenvalue problem solved by arch lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchEquation {
    pub k: usize,
    pub nu: Sign,
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    pub length: f64,
    /// Constant weight `a0 > 0`.
    pub weight: f64,
}

impl ArchEquation {
    pub fn new(k: usize, nu: Sign, p: f64, alpha: f64, beta: f64, length: f64) -> Self {
        ArchEquation { k, nu, p, alpha, beta, length, weight: 1.0 }
    }

    pub fn with_weight(mut self, a0: f64) -> Self {
        self.weight = a0;
        self
    }

    /// `(positive arches, negative arches)`.
    pub fn arch_counts(&self) -> (usize, usize) {
        let first = self.k.div_ceil(2);
        let second = self.k / 2;
        match self.nu {
            Sign::Plus => (first, second),
            Sign::Minus => (second, first),
        }
    }

    /// Lower end of the admissible `λ` window: every arch frequency present must be positive.
    pub fn window_min(&self) -> f64 {
        let (m_pos, m_neg) = self.arch_counts();
        let mut lo = f64::NEG_INFINITY;
        if m_pos > 0 {
            lo = lo.max(-self.alpha / self.weight);
        }
        if m_neg > 0 {
            lo = lo.max(self.beta / self.weight);
        }
        lo
    }

    /// Total length of the `k` arches at spectral parameter `λ`.
    pub fn arch_length(&self, lambda: f64) -> f64 {
        let e = Exponent { p: self.p, q: self.p / (self.p - 1.0) };
        let pi_p = e.pi_p();
        let (m_pos, m_neg) = self.arch_counts();
        let mut total = 0.0;
        if m_pos > 0 {
            total += m_pos as f64 * pi_p * (self.weight * lambda + self.alpha).powf(-1.0 / self.p);
        }
        if m_neg > 0 {
            total += m_neg as f64 * pi_p * (self.weight * lambda - self.beta).powf(-1.0 / self.p);
        }
        total
    }
}

/// Solves `m⁺ π_p (a0 λ + α)^{-1/p} + m⁻ π_p (a0 λ - β)^{-1/p} = L` for `λ`.
pub fn fucik_arch_oracle(eq: &ArchEquation) -> Result<f64> {
    Exponent::new(eq.p)?;
    if eq.k == 0 {
        return Err(Error::InvalidInput("nodal index k must be >= 1".into()));
    }
    if !(eq.length > 0.0 && eq.weight > 0.0) {
        return Err(Error::InvalidInput("domain length and weight must be positive".into()));
    }
    let lo = eq.window_min() + 1e-9;
    let hi = 1e12;
    let g = |lambda: f64| eq.arch_length(lambda) - eq.length;
    if !(g(lo) > 0.0 && g(hi) < 0.0) {
        return Err(Error::NoBracket(format!("arch length never equals L = {} on ({lo:.3e}, {hi:.0e})", eq.length)));
    }
    bisect_polish(g, lo, hi, 1e-12, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn phi_examples() {
        assert_eq!(phi_p(2.0, 3.0).unwrap(), 4.0);
        assert_eq!(phi_p(-5.0, 2.0).unwrap(), -5.0);
        assert_eq!(phi_p(0.0, 1.5).unwrap(), 0.0);
        assert!(matches!(phi_p(1.0, 1.0), Err(Error::InvalidExponent(_))));
        assert!(phi_p(1.0, 0.5).is_err());
    }

    #[test]
    fn phi_inv_examples() {
        assert_relative_eq!(phi_p_inv(4.0, 3.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(phi_p_inv(-8.0, 3.0).unwrap(), -2.828_427_124_746_190_1, max_relative = 1e-14);
        assert_eq!(phi_p_inv(0.0, 2.5).unwrap(), 0.0);
        assert!(phi_p_inv(1.0, 1.0).is_err());
    }

    #[test]
    fn pi_p_values() {
        assert_relative_eq!(pi_p(2.0).unwrap(), PI, max_relative = 1e-15);
        // reference values from 30-digit quadrature of 2 (p-1)^{1/p} ∫_0^1 (1 - s^p)^{-1/p} ds
        assert_relative_eq!(pi_p(3.0).unwrap(), 3.046_991_999_046_172_3, max_relative = 1e-14);
        assert_relative_eq!(pi_p(1.5).unwrap(), 3.046_991_999_046_172_3, max_relative = 1e-14);
        assert_relative_eq!(pi_p(5.0).unwrap(), 2.821_000_590_042_074_6, max_relative = 1e-14);
        assert!(pi_p(1.0).is_err());
    }

    #[test]
    fn exponent_conjugate() {
        for p in [1.1, 1.5, 2.0, 3.0, 7.5] {
            let e = Exponent::new(p).unwrap();
            assert!((1.0 / e.p() + 1.0 / e.q() - 1.0).abs() < 1e-14);
            assert!(e.q() > 1.0);
        }
    }

    #[test]
    fn arch_oracle_examples() {
        let l = fucik_arch_oracle(&ArchEquation::new(1, Sign::Plus, 2.0, 0.0, 0.0, 1.0)).unwrap();
        assert_relative_eq!(l, PI * PI, max_relative = 1e-12);
        let l = fucik_arch_oracle(&ArchEquation::new(1, Sign::Plus, 2.0, 1.0, 0.0, 1.0)).unwrap();
        assert_relative_eq!(l, PI * PI - 1.0, max_relative = 1e-12);
        // root of π/√(λ+2) + π/√(λ−1) = 1, 30-digit findroot
        let l = fucik_arch_oracle(&ArchEquation::new(2, Sign::Plus, 2.0, 2.0, 1.0, 1.0)).unwrap();
        assert_relative_eq!(l, 39.021_126_543_023_925, max_relative = 1e-12);
    }

    #[test]
    fn arch_counts_alternate() {
        for k in 1..8 {
            for nu in Sign::BOTH {
                let (mp, mn) = ArchEquation::new(k, nu, 2.0, 0.0, 0.0, 1.0).arch_counts();
                assert_eq!(mp + mn, k);
                assert!(mp.abs_diff(mn) <= 1);
                let first = if nu == Sign::Plus { mp } else { mn };
                assert!(first >= k - first);
            }
        }
    }

    #[test]
    fn arch_oracle_no_bracket() {
        let eq = ArchEquation::new(1, Sign::Plus, 2.0, 0.0, 0.0, -1.0);
        assert!(fucik_arch_oracle(&eq).is_err());
    }

    #[test]
    fn sign_parse_display() {
        assert_eq!("+".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("x".parse::<Sign>().is_err());
        assert_eq!(Sign::Minus.to_string(), "-");
        assert_eq!(Sign::Plus.of_arch(2), Sign::Minus);
    }
}
