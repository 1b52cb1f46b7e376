//! Brackets for the four main estimates and the duality integrals
//! `I₁`, `I₂`, `I₃` that drive their lower bounds.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    alpha_lower, as_hypothesis, conjugate, fourier_upper, tail_sum, xi, BoundBracket, BoundSettings, BracketContext,
    CheckResult, TheoremId,
};
use crate::certified::{Accumulator, CertifiedValue};
use crate::error::{Error, Result};
use crate::norms::{sup_norm, NormRequest};
use crate::psi::PsiFamily;
use crate::quad;
use crate::tails::{index_b, index_d, weighted_tail_integral};
use crate::trig::{f_lower, f_star, partial_sum, phase, vallee_poussin, TrigPolynomial};

/// Largest truncation index summed term by term.
const EXPLICIT_CAP: u64 = 1 << 22;
/// Largest polynomial degree for quadrature cross-checks.
const QUAD_DEGREE_CAP: u64 = 1024;
/// Largest `D(l;n)` for which the uniform-norm chain is evaluated on `f_D`.
const SUP_CHECK_CAP: u64 = 2048;
const QUAD_AGREEMENT: f64 = 1e-8;

/// Vallée Poussin weight of harmonic `k` in `V_m`; `V_0 = 1/2`.
fn vp_weight(m: u64, k: u64) -> f64 {
    if m == 0 || k >= 2 * m {
        0.0
    } else if k <= m {
        1.0
    } else {
        2.0 * (1.0 - k as f64 / (2 * m) as f64)
    }
}

fn vp(m: u64) -> Result<TrigPolynomial> {
    if m == 0 {
        Ok(TrigPolynomial::constant_term(0.5))
    } else {
        vallee_poussin(m as usize)
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    Ok(())
}

fn context(theorem: TheoremId, family: &PsiFamily, s: f64, beta: f64, n: u64) -> BracketContext {
    BracketContext { theorem, family: family.to_string(), s, beta, n }
}

/// `Σ_{k ∈ range} term(k)`, compensated, with a rounding allowance.
fn sum_terms(range: std::ops::Range<u64>, term: impl Fn(u64) -> f64) -> CertifiedValue {
    let mut acc = Accumulator::default();
    let mut mag = 0.0;
    let count = range.end.saturating_sub(range.start) as f64;
    for k in range {
        let v = term(k);
        acc.add(v);
        mag += v.abs();
    }
    CertifiedValue::new(acc.total(), 4.0 * f64::EPSILON * mag * count.log2().max(1.0))
}

/// Random `t_{n-1}`: degree `n - 1`, coefficients uniform in `[-1, 1]`.
pub fn random_low_poly(n: u64, seed: u64) -> TrigPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.rotate_left(17));
    let c = rng.gen_range(-1.0..=1.0);
    let deg = n.saturating_sub(1) as usize;
    let cos = (0..deg).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let sin = (0..deg).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    TrigPolynomial::new(c, cos, sin)
}

/// `∫_{-π}^{π} p q` by adaptive Gauss–Kronrod on equal subintervals.
fn integrate_product(p: &TrigPolynomial, q: &TrigPolynomial) -> CertifiedValue {
    let pieces = ((p.degree() + q.degree()) / 4).clamp(8, 512);
    let h = 2.0 * PI / pieces as f64;
    let mut acc = Accumulator::default();
    let mut err = 0.0;
    for i in 0..pieces {
        let a = -PI + i as f64 * h;
        let r = quad::integrate(|t| p.eval(t) * q.eval(t), a, a + h, 1e-15, 1e-13);
        acc.add(r.value);
        err += r.error;
    }
    CertifiedValue::new(acc.total(), err)
}

fn quad_degree_ok(deg: u64, what: &str) -> Result<()> {
    if deg > QUAD_DEGREE_CAP {
        return Err(Error::Precondition(format!("{what} quadrature limited to degree {QUAD_DEGREE_CAP}, got {deg}")));
    }
    Ok(())
}

/// `I₁ = (1/4) Σ_{k≥n} w_B(k) ψ^s(k) k^{s-2}` with the Vallée Poussin weights of `V_B`.
pub fn i1_closed_form(family: &PsiFamily, s: f64, n: u64, b: u64) -> Result<CertifiedValue> {
    check_n(n)?;
    if b == 0 || b > EXPLICIT_CAP {
        return Err(Error::Domain(format!("B must lie in [1, {EXPLICIT_CAP}], got {b}")));
    }
    let sum = sum_terms(n..2 * b, |k| {
        let x = k as f64;
        vp_weight(b, k) * family.value(x).powf(s) * x.powf(s - 2.0)
    });
    Ok(sum.scale(0.25))
}

/// `∫ (f_B - t_{n-1}) Σ_{k≥n} ψ^{s-1}(k) k^{s-2} cos(kt - βπ/2) dt`. The dual
/// series is cut at `2B - 1`: higher harmonics are orthogonal to `f_B`.
pub fn i1_quadrature(
    family: &PsiFamily,
    s: f64,
    beta: f64,
    n: u64,
    b: u64,
    t_low: &TrigPolynomial,
) -> Result<CertifiedValue> {
    check_n(n)?;
    quad_degree_ok(2 * b, "I1")?;
    if t_low.degree() as u64 >= n {
        return Err(Error::Precondition(format!("t_(n-1) must have degree < {n}, got {}", t_low.degree())));
    }
    let f = &f_lower(family, beta, b as usize)? - t_low;
    let (c, sn) = phase(beta);
    let w = |k: usize| {
        let x = k as f64;
        if (k as u64) < n {
            0.0
        } else {
            family.value(x).powf(s - 1.0) * x.powf(s - 2.0)
        }
    };
    let top = 2 * b as usize - 1;
    let dual = TrigPolynomial::new(0.0, (1..=top).map(|k| c * w(k)).collect(), (1..=top).map(|k| sn * w(k)).collect());
    Ok(integrate_product(&f, &dual))
}

/// `I₂ = (cos(βπ/2)/4) Σ_{k≥n} w_D(k) ψ(k) (w_D(k) - w_{n-1}(k))`.
pub fn i2_closed_form(family: &PsiFamily, beta: f64, n: u64, d: u64) -> Result<CertifiedValue> {
    check_n(n)?;
    if d < 2 * n || d > EXPLICIT_CAP {
        return Err(Error::Domain(format!("D must lie in [2n, {EXPLICIT_CAP}], got {d}")));
    }
    let (c, _) = phase(beta);
    let sum = sum_terms(n..2 * d, |k| {
        let w = vp_weight(d, k);
        w * family.value(k as f64) * (w - vp_weight(n - 1, k))
    });
    Ok(sum.scale(0.25 * c))
}

/// `∫ (f_D - t_{n-1})(V_D - V_{n-1}) dt`.
pub fn i2_quadrature(family: &PsiFamily, beta: f64, n: u64, d: u64, t_low: &TrigPolynomial) -> Result<CertifiedValue> {
    check_n(n)?;
    quad_degree_ok(2 * d, "I2")?;
    let f = &f_lower(family, beta, d as usize)? - t_low;
    let v = &vp(d)? - &vp(n - 1)?;
    Ok(integrate_product(&f, &v))
}

/// `I₃ = (1/5n²) Σ_{k=n+1}^{2n} ψ(k)(2n+1-k)(k-n)`.
pub fn i3_closed_form(family: &PsiFamily, n: u64) -> Result<CertifiedValue> {
    check_n(n)?;
    let sum = sum_terms(n + 1..2 * n + 1, |k| family.value(k as f64) * (2 * n + 1 - k) as f64 * (k - n) as f64);
    Ok(sum.scale(1.0 / (5.0 * (n as f64).powi(2))))
}

/// `∫ (f*_n - t_{n-1})(V_{2n} - V_n) dt`.
pub fn i3_quadrature(family: &PsiFamily, n: u64, t_low: &TrigPolynomial) -> Result<CertifiedValue> {
    check_n(n)?;
    quad_degree_ok(4 * n, "I3")?;
    let f = &f_star(family, n as usize)? - t_low;
    let v = &vp(2 * n)? - &vp(n)?;
    Ok(integrate_product(&f, &v))
}

/// Outcome of the duality argument for `E_n(L^ψ_{β,1})_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityBound {
    /// `B(n)`, or `None` when it is not representable.
    pub b: Option<u64>,
    /// `I₁` (exact sum), or its lower bound `(T - Φ_s(n)/2n)/4` when `B` is out of reach.
    pub i1: CertifiedValue,
    pub i1_explicit: bool,
    /// `I₁ / (ξ(s')(1 + s/α̲_n(g_{s'}))^{1/s'} T^{1/s'})`.
    pub lower: CertifiedValue,
}

/// Lower bound for `E_n(L^ψ_{β,1})_s` from `I₁`; `b` overrides `B(n)`.
pub fn duality_lower_s(
    family: &PsiFamily,
    s: f64,
    n: u64,
    b: Option<u64>,
    settings: &BoundSettings,
) -> Result<DualityBound> {
    check_n(n)?;
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must lie in (1, ∞), got {s}")));
    }
    let sp = conjugate(s);
    let g = family.g_transform(1.0 / sp)?;
    let alpha = alpha_lower(&g, n, "g_{s'} must lie in M0")?;
    let t = as_hypothesis(tail_sum(family, s, s - 2.0, n, settings), "sum psi^s k^(s-2) must converge")?;
    let b = match b {
        Some(b) => Some(b),
        None => match index_b(family, s, n) {
            Ok(b) => Some(b),
            Err(Error::IndexOverflow(_)) => None,
            Err(e) => return Err(e),
        },
    };
    let (i1, explicit) = match b {
        Some(b) if b <= EXPLICIT_CAP => (i1_closed_form(family, s, n, b)?, true),
        _ => {
            // Σ_{k>B} ≤ Φ_s(B) < Φ_s(n)/(2n)
            let phi = weighted_tail_integral(family, s, s - 2.0, n as f64)?;
            (CertifiedValue::exact(0.25 * (t.lo() - phi.hi() / (2.0 * n as f64))), false)
        }
    };
    let denom = |tt: f64| xi(sp).map(|x| x * (1.0 + s / alpha).powf(1.0 / sp) * tt.powf(1.0 / sp));
    let value = i1.value / denom(t.value)?;
    let safe = i1.lo() / denom(t.hi())?;
    Ok(DualityBound { b, i1, i1_explicit: explicit, lower: CertifiedValue::new(value, (value - safe).max(0.0)) })
}

/// Two-sided bound for `1 < s < ∞` with constants pinned by `α̲_n(g_{s'})`.
pub fn theorem1_bracket(
    family: &PsiFamily,
    s: f64,
    beta: f64,
    n: u64,
    settings: &BoundSettings,
) -> Result<BoundBracket> {
    check_n(n)?;
    settings.validate()?;
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must lie in (1, ∞), got {s}")));
    }
    let sp = conjugate(s);
    let g = family.g_transform(1.0 / sp)?;
    let alpha = alpha_lower(&g, n, "g_{s'} must lie in M0")?;
    let t = as_hypothesis(tail_sum(family, s, s - 2.0, n, settings), "sum psi^s k^(s-2) must converge")?;
    let lower = (alpha / (alpha + s)).powf(1.0 / sp) * t.lo().max(0.0).powf(1.0 / s) / (8.0 * xi(sp)?);
    let upper = xi(s)? / PI * ((alpha + s) / alpha).powf(1.0 / s) * t.hi().powf(1.0 / s);
    let witness = fourier_upper(family, s, beta, n, settings)?;

    let mut checks = Vec::new();
    let dual = duality_lower_s(family, s, n, None, settings)?;
    checks.push(CheckResult::le("theorem1.lower_le_duality", CertifiedValue::exact(lower), dual.lower));
    checks.push(CheckResult::le("theorem1.duality_le_witness", dual.lower, witness));
    if let Some(b) = dual.b.filter(|&b| 2 * b <= QUAD_DEGREE_CAP && dual.i1_explicit) {
        let q = i1_quadrature(family, s, beta, n, b, &random_low_poly(n, settings.seed))?;
        checks.push(CheckResult::close(
            "theorem1.i1_quadrature",
            q.value,
            dual.i1.value,
            QUAD_AGREEMENT * dual.i1.value.abs().max(1.0),
        ));
    }
    Ok(BoundBracket { lower, witness, upper, context: context(TheoremId::Theorem1, family, s, beta, n), checks })
}

fn cos_phase(beta: f64, what: &str) -> Result<f64> {
    let (c, _) = phase(beta);
    if c == 0.0 {
        return Err(Error::Hypothesis(format!("{what} needs cos(beta*pi/2) != 0, beta = {beta}")));
    }
    Ok(c.abs())
}

fn uniform_tail(family: &PsiFamily, n: u64, settings: &BoundSettings) -> Result<CertifiedValue> {
    as_hypothesis(tail_sum(family, 1.0, 0.0, n, settings), "sum psi(k) must converge")
}

/// `D(l;n)` when it can be summed term by term.
fn explicit_d(family: &PsiFamily, l: u64, n: u64) -> Result<Option<u64>> {
    match index_d(family, l, n) {
        Ok(d) if d <= EXPLICIT_CAP => Ok(Some(d)),
        Ok(_) | Err(Error::IndexOverflow(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `Σ_{k>D} ψ(k) ≤ Ψ(D) < Ψ(n)/(2l)`: upper bound for the mass beyond `D(l;n)`.
fn beyond_d(family: &PsiFamily, l: u64, n: u64) -> Result<f64> {
    Ok(weighted_tail_integral(family, 1.0, 0.0, n as f64)?.hi() / (2.0 * l as f64))
}

/// Uniform-metric bracket for `cos(βπ/2) ≠ 0`, with the finite-`l` value
/// witness `|f_D(0) - S_{n-1}(f_D; 0)|` checked against its lower bound.
pub fn theorem2_bracket(family: &PsiFamily, beta: f64, n: u64, settings: &BoundSettings) -> Result<BoundBracket> {
    check_n(n)?;
    settings.validate()?;
    let c = cos_phase(beta, "the uniform lower bound")?;
    let t = uniform_tail(family, n, settings)?;
    let lower = c / (4.0 * PI) * t.lo();
    let upper = t.hi() / PI;
    let witness = fourier_upper(family, f64::INFINITY, beta, n, settings)?;

    let l = settings.l_for(n);
    let value = match explicit_d(family, l, n)? {
        Some(d) => sum_terms(n..2 * d, |k| vp_weight(d, k) * family.value(k as f64)).scale(c / (4.0 * PI)),
        None => CertifiedValue::exact(c / (4.0 * PI) * (t.lo() - beyond_d(family, l, n)?)),
    };
    let floor = t.scale(c / (4.0 * PI) * (1.0 - 1.0 / (2.0 * l as f64)));
    let checks = vec![
        CheckResult::le("theorem2.value_witness_exceeds_nn", floor, value),
        CheckResult::le("theorem2.value_witness_le_witness", value, witness),
    ];
    Ok(BoundBracket {
        lower,
        witness,
        upper,
        context: context(TheoremId::Theorem2, family, f64::INFINITY, beta, n),
        checks,
    })
}

/// `α̲₁(g)` for `g = ψ·t`, required to exceed one.
fn alpha_one(family: &PsiFamily) -> Result<(PsiFamily, f64)> {
    let g = family.g_transform(1.0)?;
    let a = alpha_lower(&g, 1, "g = psi*t must lie in M0")?;
    if !(a > 1.0) {
        return Err(Error::Hypothesis(format!("inf alpha(g) over t >= 1 is {a}, must exceed 1")));
    }
    Ok((g, a))
}

/// `2 Σ_{k=n}^{2n-3} (1 - k/(2n-2)) ψ(k)`.
fn low_band(family: &PsiFamily, n: u64) -> CertifiedValue {
    if n < 3 {
        return CertifiedValue::exact(0.0);
    }
    sum_terms(n..2 * n - 2, |k| 2.0 * (1.0 - k as f64 / (2 * n - 2) as f64) * family.value(k as f64))
}

/// Uniform-metric bracket for the best approximation under `α̲₁(g) > 1`.
pub fn theorem3_bracket(family: &PsiFamily, beta: f64, n: u64, settings: &BoundSettings) -> Result<BoundBracket> {
    check_n(n)?;
    settings.validate()?;
    let c = cos_phase(beta, "the best-approximation lower bound")?;
    let t = uniform_tail(family, n, settings)?;
    let (g, a1) = alpha_one(family)?;
    let an = alpha_lower(&g, n, "g = psi*t must lie in M0")?;
    let lower = c / (48.0 * PI) * (1.0 - 1.0 / a1) * t.lo();
    let upper = t.hi() / PI;
    let witness = fourier_upper(family, f64::INFINITY, beta, n, settings)?;

    let l = settings.l_for(n);
    let band = low_band(family, n);
    let psi_n_n = family.value(n as f64) * n as f64;
    let mut checks = vec![CheckResult::le("theorem3.low_band", band, CertifiedValue::exact(0.5 * psi_n_n))];
    let d = explicit_d(family, l, n)?;
    let i2 = match d {
        Some(d) => {
            let v = i2_closed_form(family, beta, n, d)?;
            CertifiedValue::new(v.value.abs(), v.error_bound)
        }
        None => CertifiedValue::exact(0.25 * c * (t.lo() - beyond_d(family, l, n)? - band.hi())),
    };
    let w2 = t.scale(0.25 * c * (1.0 - 1.0 / (2.0 * l as f64) - 1.0 / (2.0 * an)));
    checks.push(CheckResult::le("theorem3.i2_lower", w2, i2));
    let dual = i2.scale(1.0 / (6.0 * PI));
    checks.push(CheckResult::le("theorem3.lower_le_dual", CertifiedValue::exact(lower), dual));
    checks.push(CheckResult::le("theorem3.dual_le_witness", dual, witness));
    if let Some(d) = d.filter(|&d| d <= SUP_CHECK_CAP) {
        let f = f_lower(family, beta, d as usize)?;
        let r = &f - &partial_sum(&f, n as usize)?;
        let sup = sup_norm(&NormRequest::poly(&r, f64::INFINITY, 1e-10))?;
        checks.push(CheckResult::le("theorem3.i2_le_6pi_sup", i2, sup.scale(6.0 * PI)));
        if 2 * d <= QUAD_DEGREE_CAP {
            let q = i2_quadrature(family, beta, n, d, &random_low_poly(n, settings.seed))?;
            let exact = i2_closed_form(family, beta, n, d)?;
            checks.push(CheckResult::close(
                "theorem3.i2_quadrature",
                q.value,
                exact.value,
                QUAD_AGREEMENT * exact.value.abs().max(1.0),
            ));
        }
    }
    Ok(BoundBracket {
        lower,
        witness,
        upper,
        context: context(TheoremId::Theorem3, family, f64::INFINITY, beta, n),
        checks,
    })
}

/// Uniform-metric bracket for odd `β`, of order `ψ(n)n`.
pub fn theorem4_bracket(family: &PsiFamily, beta: f64, n: u64, settings: &BoundSettings) -> Result<BoundBracket> {
    check_n(n)?;
    settings.validate()?;
    if phase(beta).0 != 0.0 {
        return Err(Error::Hypothesis(format!("the odd-beta bracket needs cos(beta*pi/2) = 0, beta = {beta}")));
    }
    uniform_tail(family, n, settings)?;
    let (g, a1) = alpha_one(family)?;
    let nf = n as f64;
    let psi_n_n = family.value(nf) * nf;
    let lower = (1.0 - 1.0 / a1) * psi_n_n / (360.0 * PI);
    let upper = (1.0 + 2.0 / PI) * psi_n_n;
    let witness = fourier_upper(family, f64::INFINITY, beta, n, settings)?;

    let i3 = i3_closed_form(family, n)?;
    let g_ratio = g.eval(2.0 * nf)? / g.eval(nf)?;
    let dual = i3.scale(1.0 / (6.0 * PI));
    let mut checks = vec![
        CheckResult::le_exact("theorem4.g_ratio", 1.0 - 1.0 / a1, g_ratio),
        CheckResult::le("theorem4.i3_lower", CertifiedValue::exact(psi_n_n * g_ratio / 60.0), i3),
        CheckResult::le("theorem4.lower_le_dual", CertifiedValue::exact(lower), dual),
        CheckResult::le("theorem4.dual_le_witness", dual, witness),
        CheckResult::le("theorem4.abel_bound", witness.scale(PI), CertifiedValue::exact((PI + 2.0) * psi_n_n)),
    ];
    if 4 * n <= QUAD_DEGREE_CAP {
        let q = i3_quadrature(family, n, &random_low_poly(n, settings.seed))?;
        checks.push(CheckResult::close(
            "theorem4.i3_quadrature",
            q.value,
            i3.value,
            QUAD_AGREEMENT * i3.value.abs().max(1.0),
        ));
    }
    Ok(BoundBracket {
        lower,
        witness,
        upper,
        context: context(TheoremId::Theorem4, family, f64::INFINITY, beta, n),
        checks,
    })
}
