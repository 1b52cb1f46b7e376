//! Order-of-growth statements checked as bounded ratio spreads over a range of `n`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{
    alpha_lower, alpha_upper, as_hypothesis, conjugate, tail_sum, theorem1_bracket, theorem3_bracket, theorem4_bracket,
    xi, BoundBracket, BoundSettings, CheckResult,
};
use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::psi::{PsiFamily, PsiKind};
use crate::trig::phase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorollaryId {
    /// Sobolev-type classes `ψ = t^{-r}`: explicit constants times `n^{-r+1/s'}`.
    PowerClasses = 1,
    /// `(Σ_{k≥n} ψ^s k^{s-2})^{1/s}`, and `ψ(n)n^{1/s'}` when `g_{s'} ∈ 𝔐_C`.
    TailOrder = 2,
    /// `(ln ln n)^{1/s-γ}` for the doubly logarithmic family.
    LogLogOrder = 3,
    /// Uniform metric: `Σ_{k≥n} ψ(k)`, or `ψ(n)n` for odd `β`.
    UniformOrder = 4,
    /// Uniform metric with `g ∈ 𝔐_C`: `ψ(n)n` for every `β`.
    UniformBoundedAlpha = 5,
    /// `t^{-1} ln^{-γ}(t + e^γ)`: `ψ(n) n ln n`, or `ψ(n)n` for odd `β`.
    HarmonicLogOrder = 6,
}

impl CorollaryId {
    pub const ALL: [Self; 6] = [
        Self::PowerClasses,
        Self::TailOrder,
        Self::LogLogOrder,
        Self::UniformOrder,
        Self::UniformBoundedAlpha,
        Self::HarmonicLogOrder,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    /// Frozen max/min spread allowed when no explicit factor is configured.
    pub fn default_spread(self) -> f64 {
        match self {
            // at n = 2 the factor ln n is small; over n ≥ 2 the observed spread is about 5.1
            Self::HarmonicLogOrder => 6.0,
            _ => 4.0,
        }
    }

    pub fn from_number(k: u8) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.number() == k)
            .ok_or_else(|| Error::Parse(format!("corollary number must be 1..6, got {k}")))
    }
}

impl fmt::Display for CorollaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corollary{}", self.number())
    }
}

impl FromStr for CorollaryId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = s.trim_start_matches("corollary");
        let k: u8 = k.parse().map_err(|_| Error::Parse(format!("unknown corollary '{s}'")))?;
        Self::from_number(k)
    }
}

/// `max/min` of positive ratios, checked against `factor`.
fn spread(id: String, ratios: &[f64], factor: f64) -> CheckResult {
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let value = if min > 0.0 { max / min } else { f64::INFINITY };
    CheckResult::le_exact(id, value, factor)
}

fn bracket_row(id: String, b: &BoundBracket) -> CheckResult {
    let ok = b.holds();
    let mut c = CheckResult::le(id, CertifiedValue::exact(b.lower), b.witness);
    if !ok {
        c.pass = false;
    }
    c
}

fn uniform_bracket(family: &PsiFamily, beta: f64, n: u64, settings: &BoundSettings) -> Result<BoundBracket> {
    if phase(beta).0 == 0.0 {
        theorem4_bracket(family, beta, n, settings)
    } else {
        theorem3_bracket(family, beta, n, settings)
    }
}

fn brackets<F>(ns: &[u64], f: F) -> Result<Vec<BoundBracket>>
where
    F: Fn(u64) -> Result<BoundBracket> + Sync,
{
    ns.par_iter().map(|&n| f(n)).collect()
}

fn tails(family: &PsiFamily, a: f64, b: f64, ns: &[u64], settings: &BoundSettings) -> Result<Vec<CertifiedValue>> {
    ns.par_iter()
        .map(|&n| as_hypothesis(tail_sum(family, a, b, n, settings), "weighted tail sum must converge"))
        .collect()
}

/// Per-`n` rows (bracket ordering, explicit-constant checks) followed by the
/// ratio-spread rows of the corollary.
pub fn corollary_suite(
    id: CorollaryId,
    family: &PsiFamily,
    s: f64,
    beta: f64,
    ns: &[u64],
    settings: &BoundSettings,
) -> Result<Vec<CheckResult>> {
    settings.validate()?;
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::Domain("n range must be nonempty and start at 1 or later".into()));
    }
    let factor = settings.spread_factor.unwrap_or(id.default_spread());
    let tag = id.to_string();
    let psi = |n: u64| family.value(n as f64);
    let mut rows = Vec::new();
    match id {
        CorollaryId::PowerClasses => {
            let PsiKind::Power { r } = *family.kind() else {
                return Err(Error::Hypothesis("power classes need psi = t^-r".into()));
            };
            if family.shift() != 0.0 {
                return Err(Error::Hypothesis("power classes need an untransformed family".into()));
            }
            let sp = conjugate(s);
            if !(r > 1.0 / sp) {
                return Err(Error::Hypothesis(format!("r = {r} must exceed 1/s' = {}", 1.0 / sp)));
            }
            let a = sp + s * (r * sp - 1.0);
            let q = s * (r - 1.0);
            let c_low = (sp / a).powf(1.0 / sp) * (1.0 / (q + 1.0)).powf(1.0 / s) / (8.0 * xi(sp)?);
            let c_up = xi(s)? / std::f64::consts::PI * (a / sp).powf(1.0 / s) * ((q + 2.0) / (q + 1.0)).powf(1.0 / s);
            let bs = brackets(ns, |n| theorem1_bracket(family, s, beta, n, settings))?;
            let mut ratios = Vec::new();
            for (b, &n) in bs.iter().zip(ns) {
                let order = (n as f64).powf(-r + 1.0 / sp);
                rows.push(bracket_row(format!("{tag}.bracket.n{n}"), b));
                rows.push(CheckResult::le_exact(format!("{tag}.explicit_lower.n{n}"), c_low * order, b.lower));
                rows.push(CheckResult::le_exact(format!("{tag}.explicit_upper.n{n}"), b.upper, c_up * order));
                ratios.push(b.witness.value / order);
            }
            rows.push(spread(format!("{tag}.witness_spread"), &ratios, factor));
        }
        CorollaryId::TailOrder => {
            let sp = conjugate(s);
            let g = family.g_transform(1.0 / sp)?;
            let bs = brackets(ns, |n| theorem1_bracket(family, s, beta, n, settings))?;
            let ts = tails(family, s, s - 2.0, ns, settings)?;
            let mut ratios = Vec::new();
            for ((b, t), &n) in bs.iter().zip(&ts).zip(ns) {
                rows.push(bracket_row(format!("{tag}.bracket.n{n}"), b));
                ratios.push(b.witness.value / t.value.powf(1.0 / s));
            }
            rows.push(spread(format!("{tag}.witness_spread"), &ratios, factor));
            let bounded = alpha_upper(&g, ns[0], "g_{s'}").map(|a| a.is_finite()).unwrap_or(false);
            if bounded {
                let r: Vec<f64> = ts
                    .iter()
                    .zip(ns)
                    .map(|(t, &n)| t.value.powf(1.0 / s) / (psi(n) * (n as f64).powf(1.0 / sp)))
                    .collect();
                rows.push(spread(format!("{tag}.power_order_spread"), &r, factor));
            }
        }
        CorollaryId::LogLogOrder => {
            let PsiKind::LogLog { sp, gamma, .. } = *family.kind() else {
                return Err(Error::Hypothesis("the log-log order needs the log-log family".into()));
            };
            if family.shift() != 0.0 || (sp - conjugate(s)).abs() > 1e-12 * sp {
                return Err(Error::Hypothesis(format!("family exponent s' = {sp} does not match s = {s}")));
            }
            if !(gamma > 1.0 / s) {
                return Err(Error::Hypothesis(format!("gamma = {gamma} must exceed 1/s")));
            }
            if ns[0] < 3 {
                return Err(Error::Hypothesis("the log-log order needs n >= 3".into()));
            }
            let ts = tails(family, s, s - 2.0, ns, settings)?;
            let mut direct = Vec::new();
            let mut via_psi = Vec::new();
            for (t, &n) in ts.iter().zip(ns) {
                let nf = n as f64;
                let ll = nf.ln().ln();
                direct.push(t.value.powf(1.0 / s) / ll.powf(1.0 / s - gamma));
                via_psi.push(t.value.powf(1.0 / s) / (psi(n) * nf.powf(1.0 / sp) * (nf.ln() * ll).powf(1.0 / s)));
            }
            rows.push(spread(format!("{tag}.loglog_spread"), &direct, factor));
            rows.push(spread(format!("{tag}.psi_form_spread"), &via_psi, factor));
        }
        CorollaryId::UniformOrder | CorollaryId::UniformBoundedAlpha => {
            let odd = phase(beta).0 == 0.0;
            let bs = brackets(ns, |n| uniform_bracket(family, beta, n, settings))?;
            let ts = tails(family, 1.0, 0.0, ns, settings)?;
            let mut ratios = Vec::new();
            for ((b, t), &n) in bs.iter().zip(&ts).zip(ns) {
                rows.push(bracket_row(format!("{tag}.bracket.n{n}"), b));
                let order = if (odd && id == CorollaryId::UniformOrder) || id == CorollaryId::UniformBoundedAlpha {
                    psi(n) * n as f64
                } else {
                    t.value
                };
                ratios.push(b.witness.value / order);
            }
            rows.push(spread(format!("{tag}.witness_spread"), &ratios, factor));
            if id == CorollaryId::UniformBoundedAlpha {
                let g = family.g_transform(1.0)?;
                let mut sum_ratios = Vec::new();
                for (t, &n) in ts.iter().zip(ns) {
                    let lo = alpha_lower(&g, n, "g = psi*t must lie in M0")?;
                    let hi = alpha_upper(&g, n, "g = psi*t")?;
                    if !hi.is_finite() {
                        return Err(Error::Hypothesis("g = psi*t must lie in MC".into()));
                    }
                    let nf = n as f64;
                    let psi_n_n = CertifiedValue::exact(psi(n) * nf);
                    rows.push(CheckResult::le(
                        format!("{tag}.alpha_lower.n{n}"),
                        t.scale(nf * lo / (1.0 + nf * lo) / hi),
                        psi_n_n,
                    ));
                    rows.push(CheckResult::le(format!("{tag}.alpha_upper.n{n}"), psi_n_n, t.scale(1.0 / lo)));
                    sum_ratios.push(t.value / psi_n_n.value);
                }
                rows.push(spread(format!("{tag}.tail_spread"), &sum_ratios, factor));
            }
        }
        CorollaryId::HarmonicLogOrder => {
            let PsiKind::HarmonicLog { gamma, k1 } = *family.kind() else {
                return Err(Error::Hypothesis("this order needs psi = t^-1 ln^-gamma(t + e^gamma)".into()));
            };
            if family.shift() != 0.0 || !(gamma > 1.0) || (k1 - gamma.exp()).abs() > 1e-12 * k1 {
                return Err(Error::Hypothesis(format!(
                    "needs gamma > 1 and K1 = e^gamma, got gamma = {gamma}, K1 = {k1}"
                )));
            }
            if ns[0] < 2 {
                return Err(Error::Hypothesis("this order needs n >= 2".into()));
            }
            let odd = phase(beta).0 == 0.0;
            let bs = brackets(ns, |n| uniform_bracket(family, beta, n, settings))?;
            let mut ratios = Vec::new();
            for (b, &n) in bs.iter().zip(ns) {
                rows.push(bracket_row(format!("{tag}.bracket.n{n}"), b));
                let nf = n as f64;
                let order = if odd { psi(n) * nf } else { psi(n) * nf * nf.ln() };
                ratios.push(b.witness.value / order);
            }
            rows.push(spread(format!("{tag}.witness_spread"), &ratios, factor));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn dyadic(from: u32, to: u32) -> Vec<u64> {
        (from..=to).map(|j| 1u64 << j).collect()
    }

    fn all_pass(rows: &[CheckResult]) {
        for r in rows {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn power_classes() {
        let f = PsiFamily::power(2.0).unwrap();
        let rows =
            corollary_suite(CorollaryId::PowerClasses, &f, 2.0, 0.0, &dyadic(0, 6), &BoundSettings::default()).unwrap();
        all_pass(&rows);
        assert!(rows.last().unwrap().id.ends_with("witness_spread"));
    }

    #[test]
    fn loglog_order() {
        let f = PsiFamily::log_log(2.0, 1.0, 1.0, 1.72).unwrap();
        let rows =
            corollary_suite(CorollaryId::LogLogOrder, &f, 2.0, 0.0, &dyadic(4, 14), &BoundSettings::default()).unwrap();
        all_pass(&rows);
    }

    #[test]
    fn uniform_orders() {
        let f = PsiFamily::power(1.5).unwrap();
        let ns = dyadic(0, 5);
        for beta in [0.0, 1.0] {
            for id in [CorollaryId::UniformOrder, CorollaryId::UniformBoundedAlpha] {
                let rows = corollary_suite(id, &f, f64::INFINITY, beta, &ns, &BoundSettings::default()).unwrap();
                all_pass(&rows);
            }
        }
    }

    #[test]
    fn harmonic_log_order() {
        let f = PsiFamily::harmonic_log(2.0, E * E).unwrap();
        let ns: Vec<u64> = vec![2, 4, 8, 16, 32, 64];
        for beta in [0.0, 1.0] {
            let rows =
                corollary_suite(CorollaryId::HarmonicLogOrder, &f, f64::INFINITY, beta, &ns, &BoundSettings::default())
                    .unwrap();
            all_pass(&rows);
        }
        let wrong = PsiFamily::harmonic_log(2.0, 3.0).unwrap();
        assert!(matches!(
            corollary_suite(CorollaryId::HarmonicLogOrder, &wrong, f64::INFINITY, 0.0, &ns, &BoundSettings::default()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn tail_order() {
        let f = PsiFamily::power(1.5).unwrap();
        let rows =
            corollary_suite(CorollaryId::TailOrder, &f, 2.0, 0.5, &dyadic(0, 5), &BoundSettings::default()).unwrap();
        all_pass(&rows);
        assert!(rows.iter().any(|r| r.id.ends_with("power_order_spread")));
    }

    #[test]
    fn parse_ids() {
        for id in CorollaryId::ALL {
            assert_eq!(id.to_string().parse::<CorollaryId>().unwrap(), id);
        }
        assert!("corollary7".parse::<CorollaryId>().is_err());
    }
}
