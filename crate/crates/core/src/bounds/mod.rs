//! Explicit two-sided bounds for the approximation errors of `L^ψ_{β,1}`,
//! the duality integrals behind the lower bounds, and numerical checks of
//! the supporting inequalities.
//!
//! Every bracket carries a *witness*: the Fourier upper proxy
//! `(1/π)‖Ψ_{β,n}‖_s`, which dominates the best-approximation error and is
//! itself dominated by the theorem's explicit upper bound. Lower endpoints
//! are evaluated on the low end of certified tail sums and upper endpoints on
//! the high end, so rounding never strengthens a claim.

mod corollaries;
mod lemmas;
mod theorems;

use std::f64::consts::PI;
use std::fmt;

pub use corollaries::{corollary_suite, CorollaryId};
pub use lemmas::{verify_inequality, InequalityId, InequalityParams};
pub use theorems::{
    duality_lower_s, i1_closed_form, i1_quadrature, i2_closed_form, i2_quadrature, i3_closed_form, i3_quadrature,
    random_low_poly, theorem1_bracket, theorem2_bracket, theorem3_bracket, theorem4_bracket, DualityBound,
};

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::kernel::{sup_norm_kernel, Summability, TruncatedKernel};
use crate::norms::{lp_norm, NormRequest};
use crate::psi::PsiFamily;
use crate::tails::weighted_tail_sum;

/// Knobs shared by all bound computations.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSettings {
    /// Relative tolerance for tail sums and kernel norms.
    pub tol: f64,
    /// `l` in `D(l;n)`; `None` means `l = n`.
    pub l: Option<u64>,
    /// Seed for the random low-degree polynomials in orthogonality checks.
    pub seed: u64,
    /// Largest admissible max/min ratio spread in order-of-growth checks;
    /// `None` uses the calibrated default of each corollary.
    pub spread_factor: Option<f64>,
}

impl Default for BoundSettings {
    fn default() -> Self {
        Self { tol: 1e-8, l: None, seed: 0x5eed_1234, spread_factor: None }
    }
}

impl BoundSettings {
    pub fn l_for(&self, n: u64) -> u64 {
        self.l.unwrap_or(n)
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {}", self.tol)));
        }
        if self.l == Some(0) {
            return Err(Error::Domain("l must be >= 1".into()));
        }
        if let Some(f) = self.spread_factor.filter(|f| !(*f >= 1.0)) {
            return Err(Error::Domain(format!("spread factor must be >= 1, got {f}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Theorem3 => "theorem3",
            Self::Theorem4 => "theorem4",
        };
        f.write_str(s)
    }
}

/// Where a bracket came from.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketContext {
    pub theorem: TheoremId,
    pub family: String,
    /// `f64::INFINITY` for the uniform metric.
    pub s: f64,
    pub beta: f64,
    pub n: u64,
}

/// `lower ≤ witness ≤ upper`, with the auxiliary inequalities checked along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundBracket {
    pub lower: f64,
    pub witness: CertifiedValue,
    pub upper: f64,
    pub context: BracketContext,
    pub checks: Vec<CheckResult>,
}

impl BoundBracket {
    /// The ordering holds up to the witness certificate.
    pub fn ordered(&self) -> bool {
        self.lower <= self.witness.hi() && self.witness.lo() <= self.upper
    }

    /// Ordering plus every auxiliary check.
    pub fn holds(&self) -> bool {
        self.ordered() && self.checks.iter().all(|c| c.pass)
    }
}

/// One numerically checked inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// Combined error certificates of both sides plus a rounding allowance.
    pub allowance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// `lhs ≤ rhs`, failing only when the violation exceeds the certificates.
    pub fn le(id: impl Into<String>, lhs: CertifiedValue, rhs: CertifiedValue) -> Self {
        let slack = rhs.value - lhs.value;
        let rounding = 1e-12 * lhs.value.abs().max(rhs.value.abs());
        let allowance = lhs.error_bound + rhs.error_bound + rounding;
        let pass = slack.is_finite() && slack >= -allowance;
        Self { id: id.into(), lhs: lhs.value, rhs: rhs.value, slack, allowance, pass }
    }

    /// `lhs ≤ rhs` for plain numbers.
    pub fn le_exact(id: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::le(id, CertifiedValue::exact(lhs), CertifiedValue::exact(rhs))
    }

    /// `|lhs - rhs| ≤ tol`, reported with `slack = tol - |lhs - rhs|`.
    pub fn close(id: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = tol - (lhs - rhs).abs();
        Self { id: id.into(), lhs, rhs, slack, allowance: 0.0, pass: slack >= 0.0 }
    }
}

/// `ξ(s) = max{4(π/(s-1))^{1/s}, 14(8π)^{1/s} s}`.
pub fn xi(s: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("xi(s) needs s in (1, ∞), got {s}")));
    }
    let left = 4.0 * (PI / (s - 1.0)).powf(1.0 / s);
    let right = 14.0 * (8.0 * PI).powf(1.0 / s) * s;
    Ok(left.max(right))
}

/// Conjugate exponent `s' = s/(s-1)`.
pub fn conjugate(s: f64) -> f64 {
    if s.is_infinite() {
        1.0
    } else {
        s / (s - 1.0)
    }
}

/// `(1/π)‖Ψ_{β,n}‖_s`, an upper bound for the Fourier approximation error
/// `𝓔_n(L^ψ_{β,1})_s`. `s = ∞` uses the uniform norm of the `L∞`-mode kernel.
pub fn fourier_upper(
    family: &PsiFamily,
    s: f64,
    beta: f64,
    n: u64,
    settings: &BoundSettings,
) -> Result<CertifiedValue> {
    settings.validate()?;
    let norm = if s.is_infinite() {
        let k = TruncatedKernel::new(family, beta, n, Summability::Linf)?;
        sup_norm_kernel(&k, settings.tol)?
    } else {
        if !(s > 1.0) {
            return Err(Error::Domain(format!("s must lie in (1, ∞], got {s}")));
        }
        let k = TruncatedKernel::new(family, beta, n, Summability::Ls(s))?;
        lp_norm(&NormRequest::kernel(&k, s, settings.tol))?
    };
    Ok(norm.scale(1.0 / PI))
}

/// `Σ_{k≥n} ψ^a(k) k^b` with error at most `settings.tol` relative to the sum.
pub(crate) fn tail_sum(family: &PsiFamily, a: f64, b: f64, n: u64, settings: &BoundSettings) -> Result<CertifiedValue> {
    let rough = weighted_tail_sum(family, a, b, n, settings.tol)?;
    let floor = rough.value.abs() - rough.error_bound;
    if rough.error_bound <= settings.tol * floor {
        return Ok(rough);
    }
    if !(floor > 0.0) {
        return Err(Error::ToleranceUnreachable {
            what: format!("relative accuracy of the tail sum from n = {n}"),
            tol: settings.tol,
        });
    }
    weighted_tail_sum(family, a, b, n, settings.tol * floor)
}

/// Turns failures that mean "the family does not satisfy the statement"
/// into hypothesis errors.
fn as_hypothesis<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Divergent(m) => Error::Hypothesis(format!("{what}: {m}")),
        Error::Singular(t) => Error::Hypothesis(format!("{what}: alpha is singular at t = {t}")),
        Error::Hypothesis(m) => Error::Hypothesis(format!("{what}: {m}")),
        other => other,
    })
}

/// `α̲_n(h)` for a family that must lie in `𝔐₀`.
fn alpha_lower(h: &PsiFamily, n: u64, what: &str) -> Result<f64> {
    let a = as_hypothesis(h.alpha_inf_default(n), what)?;
    if !(a.value > 0.0 && a.value.is_finite()) {
        return Err(Error::Hypothesis(format!("{what}: inf alpha = {} is not positive", a.value)));
    }
    Ok(a.value)
}

/// `ᾱ_n(h)`; infinite when unbounded.
fn alpha_upper(h: &PsiFamily, n: u64, what: &str) -> Result<f64> {
    Ok(as_hypothesis(h.alpha_sup_default(n), what)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn xi_values() {
        let x2 = xi(2.0).unwrap();
        assert_relative_eq!(x2, 28.0 * (8.0 * PI).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(x2, 140.371183, max_relative = 1e-8);
        assert!(4.0 * PI.sqrt() < x2);
        assert_relative_eq!(4.0 * PI.sqrt(), 7.0898, max_relative = 1e-4);
        for d in [1e-6, -1e-6] {
            assert!((xi(2.0 + d).unwrap() / x2 - 1.0).abs() < 1e-4);
        }
        assert!(xi(1.0).is_err());
        assert!(xi(f64::INFINITY).is_err());
    }

    #[test]
    fn xi_left_branch_wins_near_one() {
        let s = 1.0001;
        let left = 4.0 * (PI / (s - 1.0)).powf(1.0 / s);
        assert_eq!(xi(s).unwrap(), left);
    }

    #[test]
    fn fourier_upper_examples() {
        let p2 = PsiFamily::power(2.0).unwrap();
        let cfg = BoundSettings::default();
        let v = fourier_upper(&p2, 2.0, 0.0, 1, &cfg).unwrap();
        assert_relative_eq!(v.value, (PI.powi(4) / 90.0).sqrt() / PI.sqrt(), max_relative = 1e-7);
        assert_relative_eq!(v.value, (PI.powi(3) / 90.0).sqrt(), max_relative = 1e-7);
        let v = fourier_upper(&p2, f64::INFINITY, 0.0, 1, &cfg).unwrap();
        assert_relative_eq!(v.value, PI / 6.0, max_relative = 1e-9);
        let v = fourier_upper(&p2, 2.0, 0.0, 4, &cfg).unwrap();
        let tail: f64 = (4..200_000u64).map(|k| (k as f64).powi(-4)).sum();
        assert_relative_eq!(v.value, tail.sqrt() / PI.sqrt(), max_relative = 1e-6);
        let exact = (PI.powi(4) / 90.0 - 1.0 - 1.0 / 16.0 - 1.0 / 81.0).sqrt() / PI.sqrt();
        assert_relative_eq!(v.value, exact, max_relative = 1e-7);
    }

    #[test]
    fn check_result_allowance() {
        let c = CheckResult::le("x", CertifiedValue::new(1.0, 1e-3), CertifiedValue::exact(0.9995));
        assert!(c.pass);
        let c = CheckResult::le("x", CertifiedValue::new(1.0, 1e-6), CertifiedValue::exact(0.999));
        assert!(!c.pass);
        assert!(c.slack < 0.0);
        assert!(CheckResult::le_exact("y", 2.0, 2.0).pass);
        assert!(!CheckResult::le_exact("y", f64::NAN, 2.0).pass);
    }
}
