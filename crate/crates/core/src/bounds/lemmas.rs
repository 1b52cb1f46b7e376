//! Numerical checks of the auxiliary inequalities.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{alpha_lower, alpha_upper, as_hypothesis, conjugate, tail_sum, xi, BoundSettings, CheckResult};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::kernel::{Summability, TruncatedKernel};
use crate::norms::{lp_norm, sup_norm, NormRequest};
use crate::psi::PsiFamily;
use crate::tails::weighted_tail_integral;
use crate::trig::{fejer_kernel, vallee_poussin, TrigPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `‖Σ_{k≥n} ψ(k) cos(kx+γ)‖_p ≤ ξ(p)(Σ ψ^p(k) k^{p-2} + ψ^p(n) n^{p-1})^{1/p}`.
    Lemma1,
    /// `ψ^{p'}(n) n^{p'-1} ≤ (p'/α̲_n(g_p)) Σ_{k≥n} ψ^{p'}(k) k^{p'-2}`.
    Lemma2,
    /// `ψ(n) n ≤ Σ_{k≥n} ψ(k) / α̲_n(g)`, `g = ψ·t`.
    Lemma3,
    /// `(1/ᾱ_n(g)) (nα̲_n/(1 + nα̲_n)) Σ_{k≥n} ψ(k) ≤ ψ(n) n`.
    Lemma3Lower,
    /// `|Σ_{j≤k} sin(jx)/j| ≤ π/2 + 1`.
    SineBound,
    /// `‖F_k‖_1 = π`.
    FejerNorm,
    /// `‖V_m‖_1 ≤ 3π`.
    ValleePoussinNorm,
    /// `∫_n^∞ ≤ Σ_{k≥n} ≤ ψ^s(n)n^{s-2} + ∫_n^∞ ≤ (s/(α̲_n(g_{s'}) n) + 1) ∫_n^∞` for `ψ^s t^{s-2}`.
    TailSandwich,
}

impl InequalityId {
    pub const ALL: [Self; 8] = [
        Self::Lemma1,
        Self::Lemma2,
        Self::Lemma3,
        Self::Lemma3Lower,
        Self::SineBound,
        Self::FejerNorm,
        Self::ValleePoussinNorm,
        Self::TailSandwich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lemma1 => "lemma1",
            Self::Lemma2 => "lemma2",
            Self::Lemma3 => "lemma3",
            Self::Lemma3Lower => "lemma3_lower",
            Self::SineBound => "sine_bound",
            Self::FejerNorm => "fejer_norm",
            Self::ValleePoussinNorm => "vallee_poussin_norm",
            Self::TailSandwich => "tail_sandwich",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| Error::Parse(format!("unknown inequality '{s}'")))
    }
}

/// Parameters of a single check; unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityParams {
    /// Exponent `p` (or `s` for the tail sandwich).
    pub p: f64,
    pub n: u64,
    /// Order `k` or `m` of the trigonometric sums.
    pub order: usize,
    /// Phase `γ` in Lemma 1.
    pub gamma: f64,
}

impl Default for InequalityParams {
    fn default() -> Self {
        Self { p: 2.0, n: 1, order: 1, gamma: 0.0 }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("exponent must lie in (1, ∞), got {p}")));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    Ok(())
}

fn tail(family: &PsiFamily, a: f64, b: f64, n: u64, settings: &BoundSettings) -> Result<CertifiedValue> {
    as_hypothesis(tail_sum(family, a, b, n, settings), "weighted tail sum must converge")
}

/// Checks one inequality; most produce a single row, the sandwich three.
pub fn verify_inequality(
    id: InequalityId,
    family: &PsiFamily,
    params: &InequalityParams,
    settings: &BoundSettings,
) -> Result<Vec<CheckResult>> {
    settings.validate()?;
    let InequalityParams { p, n, order, gamma } = *params;
    let name = id.name();
    let rows = match id {
        InequalityId::Lemma1 => {
            check_exponent(p)?;
            check_n(n)?;
            let s = tail(family, p, p - 2.0, n, settings)?;
            let nf = n as f64;
            let head = family.eval(nf)?.powf(p) * nf.powf(p - 1.0);
            // cos(kx + γ) = cos(kx - βπ/2) with β = -2γ/π
            let k = as_hypothesis(TruncatedKernel::new(family, -2.0 * gamma / PI, n, Summability::Ls(p)), "lemma 1")?;
            let lhs = lp_norm(&NormRequest::kernel(&k, p, settings.tol))?;
            let rhs = xi(p)? * (s.hi() + head).powf(1.0 / p);
            vec![CheckResult::le(name, lhs, CertifiedValue::exact(rhs))]
        }
        InequalityId::Lemma2 => {
            check_exponent(p)?;
            check_n(n)?;
            let pp = conjugate(p);
            let alpha = alpha_lower(&family.g_transform(1.0 / p)?, n, "g_p must lie in M0")?;
            let s = tail(family, pp, pp - 2.0, n, settings)?;
            let nf = n as f64;
            let lhs = family.eval(nf)?.powf(pp) * nf.powf(pp - 1.0);
            vec![CheckResult::le(name, CertifiedValue::exact(lhs), s.scale(pp / alpha))]
        }
        InequalityId::Lemma3 | InequalityId::Lemma3Lower => {
            check_n(n)?;
            let g = family.g_transform(1.0)?;
            let lo = alpha_lower(&g, n, "g = psi*t must lie in M0")?;
            let t = tail(family, 1.0, 0.0, n, settings)?;
            let nf = n as f64;
            let psi_n_n = CertifiedValue::exact(family.eval(nf)? * nf);
            if id == InequalityId::Lemma3 {
                vec![CheckResult::le(name, psi_n_n, t.scale(1.0 / lo))]
            } else {
                let hi = alpha_upper(&g, n, "g = psi*t")?;
                if !hi.is_finite() {
                    return Err(Error::Hypothesis("g = psi*t must lie in MC (sup alpha is unbounded)".into()));
                }
                let c = nf * lo / (1.0 + nf * lo) / hi;
                vec![CheckResult::le(name, t.scale(c), psi_n_n)]
            }
        }
        InequalityId::SineBound => {
            if order == 0 {
                return Err(Error::Domain("sine sum needs k >= 1".into()));
            }
            let sum = TrigPolynomial::new(0.0, Vec::new(), (1..=order).map(|j| 1.0 / j as f64).collect());
            let lhs = sup_norm(&NormRequest::poly(&sum, f64::INFINITY, 1e-9))?;
            vec![CheckResult::le(name, lhs, CertifiedValue::exact(PI / 2.0 + 1.0))]
        }
        InequalityId::FejerNorm => {
            let norm = lp_norm(&NormRequest::poly(&fejer_kernel(order), 1.0, 1e-12))?;
            let pi = CertifiedValue::exact(PI);
            vec![CheckResult::le(format!("{name}.le"), norm, pi), CheckResult::le(format!("{name}.ge"), pi, norm)]
        }
        InequalityId::ValleePoussinNorm => {
            let norm = lp_norm(&NormRequest::poly(&vallee_poussin(order)?, 1.0, 1e-10))?;
            vec![CheckResult::le(name, norm, CertifiedValue::exact(3.0 * PI))]
        }
        InequalityId::TailSandwich => {
            let s = p;
            check_exponent(s)?;
            check_n(n)?;
            let nf = n as f64;
            let alpha = alpha_lower(&family.g_transform(1.0 / conjugate(s))?, n, "g_{s'} must lie in M0")?;
            let int = as_hypothesis(weighted_tail_integral(family, s, s - 2.0, nf), "tail integral must converge")?;
            let sum = tail(family, s, s - 2.0, n, settings)?;
            let head = CertifiedValue::exact(family.eval(nf)?.powf(s) * nf.powf(s - 2.0));
            vec![
                CheckResult::le(format!("{name}.integral_le_sum"), int, sum),
                CheckResult::le(format!("{name}.sum_le_head_plus_integral"), sum, head + int),
                CheckResult::le(
                    format!("{name}.head_plus_integral_le_scaled"),
                    head + int,
                    int.scale(s / (alpha * nf) + 1.0),
                ),
            ]
        }
    };
    Ok(rows)
}
