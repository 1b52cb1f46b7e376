//! Certified tail sums `Σ_{k≥n} ψ^a(k) k^b` and tail integrals
//! `∫_x^∞ ψ^a(t) t^b dt`, their inverses, and the truncation indices
//! `B(n)` and `D(l;n)`.
//!
//! Tail integrals of built-in families are computed in the variable `ln t`
//! (or `ln ln t` for the doubly-logarithmic critical case), piece by piece,
//! until an envelope bound on the remaining mass falls below the tolerance.
//! The envelopes come from lower bounds on the decay rate of the integrand in
//! the chosen variable, so the truncated part is bounded, not estimated.

use crate::certified::{Accumulator, CertifiedValue};
use crate::error::{Error, Result};
use crate::psi::{ln_shift, PsiFamily, Shape};
use crate::quad;

/// Largest cutoff used for direct tail summation.
pub const SUM_CUTOFF_CAP: u64 = 1_000_000_000;
/// Relative accuracy of tail integrals.
pub const INTEGRAL_REL_TOL: f64 = 1e-13;
const MAX_PIECES: usize = 400;

/// The summand `ψ^a(t)·t^b`.
#[derive(Debug, Clone, Copy)]
pub struct Summand<'a> {
    pub family: &'a PsiFamily,
    pub a: f64,
    pub b: f64,
}

/// How the tail integral is organised.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Level {
    /// `t^{-q}`, `q > 1`: exponential decay in `ln t`.
    Power,
    /// `q = 1`, logarithmic exponent `> 1`: algebraic decay in `ln t`.
    Log,
    /// `q = 1`, logarithmic exponent `1`, log-log exponent `> 1`: algebraic decay in `ln ln t`.
    LogLog,
}

const CRITICAL_EPS: f64 = 1e-9;

impl<'a> Summand<'a> {
    pub fn new(family: &'a PsiFamily, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("need a > 0 and finite b, got a={a}, b={b}")));
        }
        Ok(Self { family, a, b })
    }

    fn shape(&self) -> Option<Shape> {
        self.family.shape()
    }

    /// `ψ^a(t) t^b`.
    pub fn value(&self, t: f64) -> f64 {
        match self.shape() {
            Some(s) => self.ln_value(&s, t.ln()).exp(),
            None => self.family.value(t).powf(self.a) * t.powf(self.b),
        }
    }

    fn ln_value(&self, s: &Shape, lt: f64) -> f64 {
        self.a * s.ln_value(lt) + self.b * lt
    }

    /// Decay exponent `-t f'(t)/f(t)` of the summand at `t = e^{lt}`.
    fn decay(&self, s: &Shape, lt: f64) -> f64 {
        self.a * s.slope(lt) - self.b
    }

    /// `(q, c1, c2)`: power exponent and the two logarithmic exponents.
    fn exponents(&self, s: &Shape) -> (f64, f64, f64) {
        (self.a * s.p - self.b, self.a * s.a1, self.a * s.a2)
    }

    fn level(&self, s: &Shape) -> Result<Level> {
        let (q, c1, c2) = self.exponents(s);
        if q > 1.0 + CRITICAL_EPS {
            return Ok(Level::Power);
        }
        if q >= 1.0 - CRITICAL_EPS {
            if c1 > 1.0 + CRITICAL_EPS {
                return Ok(Level::Log);
            }
            if c1 >= 1.0 - CRITICAL_EPS && c2 > 1.0 + CRITICAL_EPS {
                return Ok(Level::LogLog);
            }
        }
        Err(Error::Divergent(format!(
            "integral of psi^{}(t) t^{} for {} (power {q}, log {c1}, loglog {c2})",
            self.a, self.b, self.family
        )))
    }

    /// Checks convergence of `Σ ψ^a(k) k^b` by the integral test.
    pub fn check_convergent(&self) -> Result<()> {
        match self.shape() {
            Some(s) => self.level(&s).map(|_| ()),
            None => custom_tail_integral(self, 0.0, 1e-6).map(|_| ()),
        }
    }

    /// The summand is convex on `[x, ∞)` (sampled log grid plus the limit).
    fn convex_from(&self, x: f64) -> bool {
        let Some(s) = self.shape() else { return false };
        let (q, _, _) = self.exponents(&s);
        if q * (q + 1.0) <= 0.0 {
            return false;
        }
        let l0 = x.ln();
        (0..120).all(|j| {
            let lt = l0 + 0.25 * j as f64 * (1.0 + j as f64 * 0.05);
            let w = self.decay(&s, lt);
            let h = 1e-4;
            let dw = (self.decay(&s, lt + h) - self.decay(&s, lt - h)) / (2.0 * h);
            w * w + w - dw > 0.0
        })
    }

    /// The summand is nonincreasing on `[x, ∞)`.
    fn decreasing_from(&self, x: f64) -> bool {
        match self.shape() {
            Some(s) => {
                let l0 = x.ln();
                (0..120).all(|j| self.decay(&s, l0 + 0.25 * j as f64 * (1.0 + j as f64 * 0.05)) >= 0.0)
            }
            None => (0..200).all(|j| {
                let t = x * 1.1f64.powi(j);
                self.value(t * 1.05) <= self.value(t)
            }),
        }
    }
}

/// `∫_x^∞ ψ^a(t) t^b dt`, `x ≥ 1`.
pub fn weighted_tail_integral(family: &PsiFamily, a: f64, b: f64, x: f64) -> Result<CertifiedValue> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("tail integral needs x >= 1, got {x}")));
    }
    tail_integral_ln(&Summand::new(family, a, b)?, x.ln(), INTEGRAL_REL_TOL)
}

/// Tail integral from `x = e^{lx}`; `lx` may be far beyond `ln f64::MAX`.
pub(crate) fn tail_integral_ln(sm: &Summand<'_>, lx: f64, rel_tol: f64) -> Result<CertifiedValue> {
    let Some(s) = sm.shape() else {
        return custom_tail_integral(sm, lx, rel_tol);
    };
    let level = sm.level(&s)?;
    let (q, c1, c2) = sm.exponents(&s);
    if s.a1 == 0.0 && s.a2 == 0.0 {
        // t^{-q}
        let v = ((1.0 - q) * lx).exp() / (q - 1.0);
        return Ok(CertifiedValue::new(v, 4.0 * f64::EPSILON * v));
    }
    let lg = LogPart { c1, k1: s.k1, c2, k2: s.k2 };
    match level {
        Level::Power => {
            // variable lt = ln t; decay rate (q - 1) + excess >= q - 1
            let ln_h = |lt: f64| (1.0 - q) * lt + lg.value(lt);
            integrate_exponential(ln_h, |_| q - 1.0, lx, rel_tol)
        }
        Level::Log => {
            // variable u = ln ln t; the exponent of t is exactly critical
            let ln_h = |u: f64| {
                if u > ASYMPTOTIC {
                    -(c1 - 1.0) * u - c2 * u.ln()
                } else {
                    lg.value(u.exp()) + u
                }
            };
            // lt·excess - 1 >= c1·part1(lt) - 1, part1 increasing
            let rate = |u: f64| {
                if u > ASYMPTOTIC {
                    c1 - 1.0
                } else {
                    let lt = u.exp();
                    c1 * lt / ((1.0 + s.k1 * (-lt).exp()) * ln_shift(lt, s.k1)) - 1.0
                }
            };
            let mut acc = Pieces::default();
            let mut u0 = lx.max(f64::MIN_POSITIVE).ln();
            if lx < 1.0 {
                let ln_lt = |lt: f64| lg.value(lt);
                acc.push(quad::integrate(|lt| ln_lt(lt).exp(), lx, 1.0, 0.0, rel_tol * 0.1));
                u0 = 0.0;
            }
            acc.exponential_tail(ln_h, rate, u0, rel_tol)
        }
        Level::LogLog => {
            // variable z = ln ln ln t; both t and ln t exponents exactly critical
            let ln_h = |z: f64| {
                let v = z.exp();
                if v > ASYMPTOTIC {
                    -(c2 - 1.0) * z
                } else {
                    lg.value(v.exp()) + v + z
                }
            };
            let rate = |z: f64| {
                let v = z.exp();
                if v > ASYMPTOTIC {
                    c2 - 1.0
                } else {
                    let lt = v.exp();
                    v * (lt * lg.excess(lt) - 1.0) - 1.0
                }
            };
            // sampled lower bound on the rate over [z, ∞)
            let rate_from = |z: f64| (0..64).map(|j| rate(z + 0.125 * j as f64)).fold(c2 - 1.0, f64::min);
            let mut acc = Pieces::default();
            let mut lt0 = lx;
            if lt0 < 1.0 {
                acc.push(quad::integrate(|lt| lg.value(lt).exp(), lt0, 1.0, 0.0, rel_tol * 0.1));
                lt0 = 1.0;
            }
            let mut v0 = lt0.ln();
            if v0 < 1.0 {
                acc.push(quad::integrate(|v: f64| (lg.value(v.exp()) + v).exp(), v0, 1.0, 0.0, rel_tol * 0.1));
                v0 = 1.0;
            }
            acc.exponential_tail(ln_h, rate_from, v0.ln(), rel_tol)
        }
    }
    .map_err(|e| match e {
        Error::ToleranceUnreachable { tol, .. } => {
            Error::ToleranceUnreachable { what: format!("tail integral of {}", sm.family), tol }
        }
        other => other,
    })
}

/// Beyond this value of `ln t` the shifts `K` no longer affect `ln(t + K)` in `f64`.
const ASYMPTOTIC: f64 = 40.0;

/// `-c1 ln ln(t+K1) - c2 ln ln ln(t+K2)` and its decay contribution.
#[derive(Debug, Clone, Copy)]
struct LogPart {
    c1: f64,
    k1: f64,
    c2: f64,
    k2: f64,
}

impl LogPart {
    fn value(&self, lt: f64) -> f64 {
        let mut v = 0.0;
        if self.c1 != 0.0 {
            v -= self.c1 * ln_shift(lt, self.k1).ln();
        }
        if self.c2 != 0.0 {
            v -= self.c2 * ln_shift(lt, self.k2).ln().ln();
        }
        v
    }

    /// `-t d/dt` of [`LogPart::value`].
    fn excess(&self, lt: f64) -> f64 {
        let mut u = 0.0;
        if self.c1 != 0.0 {
            u += self.c1 / ((1.0 + self.k1 * (-lt).exp()) * ln_shift(lt, self.k1));
        }
        if self.c2 != 0.0 {
            let l2 = ln_shift(lt, self.k2);
            u += self.c2 / ((1.0 + self.k2 * (-lt).exp()) * l2 * l2.ln());
        }
        u
    }
}

#[derive(Default)]
struct Pieces {
    acc: Accumulator,
    err: f64,
}

impl Pieces {
    fn push(&mut self, r: quad::QuadResult) {
        self.acc.add(r.value);
        self.err += r.error;
    }

    /// Adds `∫_{u0}^∞ e^{ln_h(u)} du`, where `rate_from(u)` bounds the decay
    /// rate of `ln_h` from below on `[u, ∞)`.
    fn exponential_tail<H, R>(mut self, ln_h: H, rate_from: R, u0: f64, rel_tol: f64) -> Result<CertifiedValue>
    where
        H: Fn(f64) -> f64,
        R: Fn(f64) -> f64,
    {
        let mut u = u0;
        let mut w = 0.5;
        for _ in 0..MAX_PIECES {
            self.push(quad::integrate(|x| ln_h(x).exp(), u, u + w, 0.0, rel_tol * 0.1));
            u += w;
            w *= 1.5;
            let rate = rate_from(u);
            if rate > 0.0 {
                let tail = ln_h(u).exp() / rate;
                if tail <= rel_tol * self.acc.total().abs() {
                    return Ok(finish(self.acc.total(), tail, self.err));
                }
            }
        }
        Err(Error::ToleranceUnreachable { what: "tail integral".into(), tol: rel_tol })
    }
}

fn integrate_exponential<H, R>(ln_h: H, rate_from: R, u0: f64, rel_tol: f64) -> Result<CertifiedValue>
where
    H: Fn(f64) -> f64,
    R: Fn(f64) -> f64,
{
    Pieces::default().exponential_tail(ln_h, rate_from, u0, rel_tol)
}

fn finish(total: f64, tail: f64, qerr: f64) -> CertifiedValue {
    CertifiedValue::new(total + 0.5 * tail, 0.5 * tail + qerr)
}

/// Custom families: integrate `f(e^{lt}) e^{lt}` with a sampled exponential envelope.
fn custom_tail_integral(sm: &Summand<'_>, lx: f64, rel_tol: f64) -> Result<CertifiedValue> {
    let h = |lt: f64| sm.value(lt.exp()) * lt.exp();
    let rate = |lt: f64| {
        let d = 1e-4;
        -((h(lt + d)).ln() - (h(lt - d)).ln()) / (2.0 * d)
    };
    let mut acc = Accumulator::default();
    let mut qerr = 0.0;
    let mut y = lx;
    let mut w = 0.5;
    while y < 690.0 {
        let r = quad::integrate(h, y, (y + w).min(700.0), 0.0, rel_tol * 0.1);
        acc.add(r.value);
        qerr += r.error;
        y += w;
        w *= 1.5;
        let rt = (0..20).map(|j| rate((y + j as f64 * 2.0).min(700.0))).fold(f64::INFINITY, f64::min);
        if rt > 0.0 {
            let tail = h(y) / rt;
            if tail <= rel_tol * acc.total().abs() {
                return Ok(finish(acc.total(), tail, qerr));
            }
        }
    }
    Err(Error::Divergent(format!("tail integral for {} did not settle", sm.family)))
}

/// `Σ_{k=n}^∞ ψ^a(k) k^b` to absolute accuracy `tol`.
///
/// Direct summation up to a cutoff `M`, then the remainder is bracketed by
/// integrals: `[∫_M^∞, f(M) + ∫_M^∞]` for a decreasing summand, or the tighter
/// `[∫_M^∞ + f(M)/2, ∫_{M-1/2}^∞]` once the summand is convex beyond `M`.
/// `M` doubles until the bracket is narrower than `2·tol`.
pub fn weighted_tail_sum(family: &PsiFamily, a: f64, b: f64, n: u64, tol: f64) -> Result<CertifiedValue> {
    if n == 0 {
        return Err(Error::Domain("tail sums start at n >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let sm = Summand::new(family, a, b)?;
    sm.check_convergent()?;
    let mut head = Accumulator::default();
    let mut head_abs = 0.0;
    let mut k = n;
    let mut m = n.max(8);
    loop {
        while k < m {
            let v = sm.value(k as f64);
            head.add(v);
            head_abs += v.abs();
            k += 1;
        }
        if sm.decreasing_from(m as f64) {
            let mf = m as f64;
            let fm = sm.value(mf);
            let i_m = tail_integral_ln(&sm, mf.ln(), INTEGRAL_REL_TOL)?;
            let (lo, hi, ierr) = if sm.convex_from(mf - 0.5) {
                let i_half = tail_integral_ln(&sm, (mf - 0.5).ln(), INTEGRAL_REL_TOL)?;
                (i_m.value + 0.5 * fm, i_half.value, i_m.error_bound + i_half.error_bound)
            } else {
                (i_m.value, i_m.value + fm, i_m.error_bound)
            };
            let half_width = 0.5 * (hi - lo).abs() + ierr;
            let round = 4.0 * f64::EPSILON * (head_abs + hi.abs()) + (m - n) as f64 * f64::EPSILON * f64::EPSILON;
            if half_width + round <= tol {
                return Ok(CertifiedValue::new(head.total() + 0.5 * (lo + hi), half_width + round));
            }
        }
        if m >= SUM_CUTOFF_CAP {
            return Err(Error::ToleranceUnreachable {
                what: format!("tail sum of {} from n={n} needs a cutoff beyond {SUM_CUTOFF_CAP}", family),
                tol,
            });
        }
        m = (m * 2).min(SUM_CUTOFF_CAP);
    }
}

/// Tail sums for several starting indices, sharing one certified remainder.
pub fn weighted_tail_sums(family: &PsiFamily, a: f64, b: f64, ns: &[u64], tol: f64) -> Result<Vec<CertifiedValue>> {
    let Some(&top) = ns.iter().max() else { return Ok(Vec::new()) };
    let sm = Summand::new(family, a, b)?;
    let base = weighted_tail_sum(family, a, b, top, tol)?;
    let lo = *ns.iter().min().expect("nonempty");
    // suffix[k - lo] = Σ_{j=k}^{top-1} f(j)
    let len = (top - lo) as usize;
    let mut suffix = vec![0.0; len + 1];
    let mut acc = Accumulator::default();
    for i in (0..len).rev() {
        acc.add(sm.value((lo + i as u64) as f64));
        suffix[i] = acc.total();
    }
    Ok(ns
        .iter()
        .map(|&n| {
            let h = suffix[(n - lo) as usize];
            CertifiedValue::new(base.value + h, base.error_bound + 4.0 * f64::EPSILON * h.abs())
        })
        .collect())
}

/// `x` with `∫_x^∞ ψ^a t^b dt = y`.
pub fn invert_tail_integral(family: &PsiFamily, a: f64, b: f64, y: f64) -> Result<f64> {
    let lx = invert_tail_integral_ln(family, a, b, y)?;
    let x = lx.exp();
    if !x.is_finite() {
        return Err(Error::IndexOverflow(format!("inverse tail integral at y={y:e} exceeds f64 (ln x = {lx})")));
    }
    Ok(x)
}

/// `ln x` with `∫_x^∞ ψ^a t^b dt = y`; usable when `x` itself overflows.
pub fn invert_tail_integral_ln(family: &PsiFamily, a: f64, b: f64, y: f64) -> Result<f64> {
    let sm = Summand::new(family, a, b)?;
    if !(y > 0.0) {
        return Err(Error::Range { y, max: f64::NAN });
    }
    let at_one = tail_integral_ln(&sm, 0.0, INTEGRAL_REL_TOL)?.value;
    if y > at_one * (1.0 + 1e-13) {
        return Err(Error::Range { y, max: at_one });
    }
    if y >= at_one * (1.0 - 1e-15) {
        return Ok(0.0);
    }
    if let Some(s) = sm.shape() {
        if s.a1 == 0.0 && s.a2 == 0.0 {
            let q = a * s.p - b;
            return Ok(-((q - 1.0) * y).ln() / (q - 1.0));
        }
    }
    let phi = |lx: f64| tail_integral_ln(&sm, lx, INTEGRAL_REL_TOL).map(|c| c.value);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while phi(hi)? > y {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::IndexOverflow(format!("inverse tail integral at y={y:e} beyond ln x = 1e12")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = phi(mid)?;
        if (v - y).abs() <= 1e-12 * y {
            return Ok(mid);
        }
        if v > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rounds `x` to the nearest integer when within relative `1e-9`, so that
/// exact integers produced with rounding noise floor correctly.
fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

fn to_index(x: f64, what: &str) -> Result<u64> {
    if !(x.is_finite() && x < 9.0e15) {
        return Err(Error::IndexOverflow(format!("{what} = {x:e} is not representable")));
    }
    Ok(x as u64)
}

/// `B(n) = [Φ_s^{-1}(Φ_s(n)/(2n))] + 1`, `Φ_s(x) = ∫_x^∞ ψ^s(t) t^{s-2} dt`.
pub fn index_b(family: &PsiFamily, s: f64, n: u64) -> Result<u64> {
    if !(s > 1.0 && s.is_finite()) || n == 0 {
        return Err(Error::Domain(format!("B(n) needs s in (1, ∞) and n >= 1, got s={s}, n={n}")));
    }
    let phi_n = weighted_tail_integral(family, s, s - 2.0, n as f64)?.value;
    let x = invert_tail_integral(family, s, s - 2.0, phi_n / (2.0 * n as f64))?;
    Ok(to_index(snap(x).floor(), "B(n)")? + 1)
}

/// `D(l;n) = [Ψ^{-1}(Ψ(n)/(2l))] + 2n`, `Ψ(x) = ∫_x^∞ ψ(t) dt`.
pub fn index_d(family: &PsiFamily, l: u64, n: u64) -> Result<u64> {
    if l == 0 || n == 0 {
        return Err(Error::Domain(format!("D(l;n) needs l, n >= 1, got l={l}, n={n}")));
    }
    let big_psi = weighted_tail_integral(family, 1.0, 0.0, n as f64)?.value;
    let x = invert_tail_integral(family, 1.0, 0.0, big_psi / (2.0 * l as f64))?;
    Ok(to_index(snap(x).floor(), "D(l;n)")? + 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, PI};

    /// Brute-force oracle: direct summation plus the integral midpoint of the remainder.
    fn brute_power_tail(r: f64, n: u64) -> f64 {
        let mut acc = Accumulator::default();
        let m = 2_000_000u64;
        for k in n..m {
            acc.add((k as f64).powf(-r));
        }
        let mf = m as f64;
        acc.add(mf.powf(1.0 - r) / (r - 1.0) + 0.5 * mf.powf(-r));
        acc.total()
    }

    #[test]
    fn tail_sum_examples() {
        let p2 = PsiFamily::power(2.0).unwrap();
        let v = weighted_tail_sum(&p2, 2.0, 0.0, 1, 1e-13).unwrap();
        assert_relative_eq!(v.value, PI.powi(4) / 90.0, max_relative = 1e-12);
        assert_relative_eq!(v.value, 1.0823232, max_relative = 1e-7);
        let v = weighted_tail_sum(&p2, 1.0, 0.0, 1, 1e-13).unwrap();
        assert_relative_eq!(v.value, PI * PI / 6.0, max_relative = 1e-12);
        let p15 = PsiFamily::power(1.5).unwrap();
        let v = weighted_tail_sum(&p15, 1.0, 0.0, 4, 1e-12).unwrap();
        let oracle = brute_power_tail(1.5, 4);
        assert!((v.value - oracle).abs() < 1e-9, "{} vs {oracle}", v.value);
        assert_relative_eq!(v.value, 1.0663718684, max_relative = 1e-9);
    }

    #[test]
    fn tail_sum_certificate_contains_truth() {
        let p = PsiFamily::power(3.0).unwrap();
        // Σ_{k≥1} k^{-3} = ζ(3)
        let v = weighted_tail_sum(&p, 1.0, 0.0, 1, 1e-10).unwrap();
        assert!(v.contains(1.2020569031595942));
        assert!(v.error_bound <= 1e-10);
    }

    #[test]
    fn divergent_series_rejected() {
        let p = PsiFamily::power(1.0).unwrap();
        assert!(matches!(weighted_tail_sum(&p, 1.0, 0.0, 1, 1e-6), Err(Error::Divergent(_))));
        let hl = PsiFamily::harmonic_log(1.0, 1.0).unwrap();
        assert!(matches!(weighted_tail_integral(&hl, 1.0, 0.0, 1.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn tail_integral_examples() {
        let p2 = PsiFamily::power(2.0).unwrap();
        assert_relative_eq!(weighted_tail_integral(&p2, 2.0, 0.0, 1.0).unwrap().value, 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(weighted_tail_integral(&p2, 1.0, 0.0, 4.0).unwrap().value, 0.25, max_relative = 1e-15);
        let mut last = f64::INFINITY;
        for x in [1.0, 10.0, 1e3, 1e6, 1e12] {
            let v = weighted_tail_integral(&p2, 2.0, 0.0, x).unwrap().value;
            assert!(v < last && v > 0.0);
            last = v;
        }
        assert!(last < 1e-30);
    }

    #[test]
    fn log_family_integrals_match_closed_forms() {
        // ∫_x^∞ dt / ((t+K) ln^γ(t+K)) = ln^{1-γ}(x+K)/(γ-1); with K→ small the
        // harmonic-log integrand differs, so test through an exact antiderivative:
        // ψ(t) = t^{-1} ln^{-2}(t + K): compare with adaptive quadrature in t on a
        // finite range plus the closed-form envelope is too loose, so use the
        // substitution identity instead: at K→0 limit use K = 1e-300.
        let f = PsiFamily::harmonic_log(2.0, 1e-300).unwrap();
        for x in [2.0, 10.0, 1e4] {
            let v = weighted_tail_integral(&f, 1.0, 0.0, x).unwrap();
            assert_relative_eq!(v.value, 1.0 / x.ln(), max_relative = 1e-10);
        }
        // ∫_x^∞ dt/(t ln t (ln ln t)^2) = 1/ln ln x, same trick for loglog.
        let g = PsiFamily::harmonic_log_log(1.0, 2.0, 1e-300, 1e-300 + E).unwrap();
        let x: f64 = 1e3;
        let v = weighted_tail_integral(&g, 1.0, 0.0, x).unwrap();
        // K2 = e shifts ln ln(t + e) slightly; compare against direct quadrature on a
        // long range plus the oracle tail.
        let lnln = |t: f64| (t + 1e-300 + E).ln().ln();
        let fint = |t: f64| 1.0 / (t * (t + 1e-300).ln() * lnln(t).powi(2));
        let near = quad::integrate(|u: f64| fint(u.exp()) * u.exp(), x.ln(), 200.0, 0.0, 1e-14).value;
        let far = 1.0 / (200.0f64).ln();
        assert_relative_eq!(v.value, near + far, max_relative = 1e-6);
    }

    #[test]
    fn inversion_examples() {
        let p2 = PsiFamily::power(2.0).unwrap();
        assert_relative_eq!(invert_tail_integral(&p2, 2.0, 0.0, 1.0 / 24.0).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(invert_tail_integral(&p2, 1.0, 0.0, 0.125).unwrap(), 8.0, max_relative = 1e-14);
        let hl = PsiFamily::harmonic_log(2.0, E * E).unwrap();
        let top = weighted_tail_integral(&hl, 1.0, 0.0, 1.0).unwrap().value;
        assert_eq!(invert_tail_integral(&hl, 1.0, 0.0, top).unwrap(), 1.0);
        assert!(matches!(invert_tail_integral(&hl, 1.0, 0.0, 2.0 * top), Err(Error::Range { .. })));
        for y in [0.3 * top, 0.05 * top] {
            let x = invert_tail_integral(&hl, 1.0, 0.0, y).unwrap();
            let back = weighted_tail_integral(&hl, 1.0, 0.0, x).unwrap().value;
            assert!((back - y).abs() <= 1e-11 * y, "{back} vs {y}");
        }
        let y = 1e-3 * top;
        assert!(matches!(invert_tail_integral(&hl, 1.0, 0.0, y), Err(Error::IndexOverflow(_))));
        let lx = invert_tail_integral_ln(&hl, 1.0, 0.0, y).unwrap();
        let sm = Summand::new(&hl, 1.0, 0.0).unwrap();
        let back = tail_integral_ln(&sm, lx, INTEGRAL_REL_TOL).unwrap().value;
        assert!((back - y).abs() <= 1e-11 * y, "{back} vs {y}");
    }

    #[test]
    fn index_b_examples() {
        // Φ_2(x) = 1/x for ψ = t^{-1}
        let p1 = PsiFamily::power(1.0).unwrap();
        assert_eq!(index_b(&p1, 2.0, 1).unwrap(), 3);
        assert_eq!(index_b(&p1, 2.0, 2).unwrap(), 9);
        assert_eq!(index_b(&p1, 2.0, 5).unwrap(), 51);
        // ψ = t^{-2}: Φ_2(x) = x^{-3}/3
        let p2 = PsiFamily::power(2.0).unwrap();
        assert_eq!(index_b(&p2, 2.0, 1).unwrap(), 2);
        assert_eq!(index_b(&p2, 2.0, 2).unwrap(), 4);
        assert_eq!(index_b(&p2, 2.0, 5).unwrap(), 11);
    }

    #[test]
    fn index_d_examples() {
        let p2 = PsiFamily::power(2.0).unwrap();
        assert_eq!(index_d(&p2, 1, 3).unwrap(), 12);
        assert_eq!(index_d(&p2, 4, 2).unwrap(), 20);
        let p15 = PsiFamily::power(1.5).unwrap();
        assert_eq!(index_d(&p15, 1, 1).unwrap(), 6);
    }

    #[test]
    fn index_postconditions() {
        let fams = [
            PsiFamily::power(2.0).unwrap(),
            PsiFamily::power(1.5).unwrap(),
            PsiFamily::harmonic_log(2.0, E * E).unwrap(),
        ];
        for f in &fams {
            for n in [1u64, 2, 3, 4] {
                let d = index_d(f, 1, n).unwrap();
                let lhs = weighted_tail_integral(f, 1.0, 0.0, d as f64).unwrap().value;
                let rhs = weighted_tail_integral(f, 1.0, 0.0, n as f64).unwrap().value / 2.0;
                assert!(lhs < rhs, "{f} n={n}");
            }
        }
        let p2 = PsiFamily::power(2.0).unwrap();
        for n in 1..=16u64 {
            let b = index_b(&p2, 2.0, n).unwrap();
            let lhs = weighted_tail_integral(&p2, 2.0, 0.0, b as f64).unwrap().value;
            let rhs = weighted_tail_integral(&p2, 2.0, 0.0, n as f64).unwrap().value / (2.0 * n as f64);
            assert!(lhs < rhs);
        }
    }

    #[test]
    fn integral_sandwich_for_builtins() {
        let fams = [
            (PsiFamily::power(2.0).unwrap(), 1.0, 0.0),
            (PsiFamily::power(1.5).unwrap(), 2.0, 0.0),
            (PsiFamily::log_power(2.0, 1.5, 1.0).unwrap(), 2.0, 0.0),
            (PsiFamily::log_log(2.0, 1.0, 1.0, 1.72).unwrap(), 2.0, 0.0),
            (PsiFamily::harmonic_log(2.0, E * E).unwrap(), 1.0, 0.0),
            (PsiFamily::harmonic_log_log(1.0, 2.0, 20.09, 20.09).unwrap(), 1.0, 0.0),
        ];
        for (f, a, b) in &fams {
            for n in [1u64, 2, 4, 8, 16, 32, 64] {
                let integral = weighted_tail_integral(f, *a, *b, n as f64).unwrap().value;
                let sum = weighted_tail_sum(f, *a, *b, n, 1e-9 * integral).unwrap().value;
                let first = Summand::new(f, *a, *b).unwrap().value(n as f64);
                assert!(integral <= sum * (1.0 + 1e-9), "{f} n={n}");
                assert!(sum <= (first + integral) * (1.0 + 1e-9), "{f} n={n}");
            }
        }
    }

    #[test]
    fn harmonic_sandwich() {
        for alpha in [1.5, 2.0, 3.0] {
            let p = PsiFamily::power(alpha).unwrap();
            for n in 1..=64u64 {
                let s = weighted_tail_sum(&p, 1.0, 0.0, n, 1e-12).unwrap().value;
                let base = (n as f64).powf(1.0 - alpha);
                assert!(base / (alpha - 1.0) <= s);
                assert!(s <= (1.0 + 1.0 / (alpha - 1.0)) * base);
            }
        }
    }

    #[test]
    fn batched_sums_agree() {
        let f = PsiFamily::harmonic_log(2.0, E * E).unwrap();
        let ns: Vec<u64> = (1..=20).collect();
        let batch = weighted_tail_sums(&f, 1.0, 0.0, &ns, 1e-10).unwrap();
        for (n, v) in ns.iter().zip(&batch) {
            let single = weighted_tail_sum(&f, 1.0, 0.0, *n, 1e-10).unwrap();
            assert!((v.value - single.value).abs() <= v.error_bound + single.error_bound + 1e-14);
        }
    }
}
