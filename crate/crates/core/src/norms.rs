//! `L_p` and `L_∞` norms over one period.

use std::cell::RefCell;
use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::kernel::{self, Summability, TruncatedKernel};
use crate::psi::golden_max;
use crate::quad;
use crate::trig::TrigPolynomial;

/// Largest grid used for periodic quadrature.
pub const MAX_GRID: usize = 1 << 24;

/// What to measure.
#[derive(Debug, Clone, Copy)]
pub enum NormTarget<'a> {
    Poly(&'a TrigPolynomial),
    Kernel(&'a TruncatedKernel),
}

/// `‖target‖_p` to relative tolerance `tol`; `p = ∞` selects the sup norm.
#[derive(Debug, Clone, Copy)]
pub struct NormRequest<'a> {
    pub target: NormTarget<'a>,
    pub p: f64,
    pub tol: f64,
}

impl<'a> NormRequest<'a> {
    pub fn poly(p: &'a TrigPolynomial, exponent: f64, tol: f64) -> Self {
        Self { target: NormTarget::Poly(p), p: exponent, tol }
    }

    pub fn kernel(k: &'a TruncatedKernel, exponent: f64, tol: f64) -> Self {
        Self { target: NormTarget::Kernel(k), p: exponent, tol }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        if !(self.p >= 1.0) {
            return Err(Error::Domain(format!("norm exponent must be >= 1, got {}", self.p)));
        }
        Ok(())
    }
}

/// Values of `p` at `t_j = 2πj/N`, `j = 0..N`, by one inverse FFT (`N > deg`).
pub fn sample(p: &TrigPolynomial, n: usize) -> Vec<f64> {
    assert!(n > p.degree(), "grid of {n} points cannot resolve degree {}", p.degree());
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[0] = Complex64::new(p.constant(), 0.0);
    for (k, (a, b)) in p.cos_coeffs().iter().zip(p.sin_coeffs()).enumerate() {
        buf[k + 1] = Complex64::new(*a, -*b);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}

fn initial_grid(p: &TrigPolynomial) -> usize {
    (8 * (p.degree() + 1)).next_power_of_two()
}

/// `‖target‖_p`, `1 ≤ p < ∞`.
pub fn lp_norm(req: &NormRequest<'_>) -> Result<CertifiedValue> {
    req.validate()?;
    if req.p.is_infinite() {
        return sup_norm(req);
    }
    match req.target {
        NormTarget::Poly(p) => poly_lp(p, req.p, req.tol),
        NormTarget::Kernel(k) => kernel_lp(k, req.p, req.tol),
    }
}

/// Antiderivative `c t + Σ (a_k sin kt - b_k cos kt)/k`.
fn antiderivative(p: &TrigPolynomial, t: f64) -> f64 {
    let mut acc = p.constant() * t;
    for (k, (a, b)) in p.cos_coeffs().iter().zip(p.sin_coeffs()).enumerate() {
        let kf = (k + 1) as f64;
        let (sn, cs) = (kf * t).sin_cos();
        acc += (a * sn - b * cs) / kf;
    }
    acc
}

/// Root of `f` in `[a, b]` given `fa·fb < 0` (Illinois variant of regula falsi).
fn illinois(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    let mut side = 0;
    for _ in 0..60 {
        let c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) || b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a) <= 1e-15 * b.abs().max(1.0) {
            break;
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}

/// `∫|p|` from the sign changes seen on an `n`-point grid, integrating
/// exactly between them.
fn l1_by_roots(p: &TrigPolynomial, n: usize) -> f64 {
    let v = sample(p, n);
    let h = 2.0 * PI / n as f64;
    let mut cuts = vec![0.0];
    for j in 0..n {
        let (a, b) = (v[j], v[(j + 1) % n]);
        if a == 0.0 && j > 0 {
            cuts.push(j as f64 * h);
        } else if a * b < 0.0 {
            cuts.push(illinois(|t| p.eval(t), j as f64 * h, (j + 1) as f64 * h, a, b));
        }
    }
    cuts.push(2.0 * PI);
    let f: Vec<f64> = cuts.iter().map(|&t| antiderivative(p, t)).collect();
    f.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// `‖p‖_1` exact up to the root search; two grids must see the same integral.
fn poly_l1(p: &TrigPolynomial, tol: f64) -> Result<CertifiedValue> {
    let scale = p.constant().abs() * 2.0 * PI + 2.0 * p.abs_coeff_sum();
    let mut n = initial_grid(p);
    let mut prev = l1_by_roots(p, n);
    loop {
        n *= 2;
        if n > MAX_GRID {
            return Err(Error::ToleranceUnreachable {
                what: format!("L_1 norm of a degree-{} polynomial", p.degree()),
                tol,
            });
        }
        let cur = l1_by_roots(p, n);
        let round = 8.0 * f64::EPSILON * scale * (p.degree() + 1) as f64;
        let diff = (cur - prev).abs();
        if diff <= tol * cur || cur <= round {
            return Ok(CertifiedValue::new(cur, diff + round));
        }
        prev = cur;
    }
}

/// Periodic trapezoid rule, doubling the grid until two successive integrals agree.
fn poly_lp(p: &TrigPolynomial, s: f64, tol: f64) -> Result<CertifiedValue> {
    if s == 1.0 {
        return poly_l1(p, tol);
    }
    let integral = |n: usize| sample(p, n).iter().map(|v| v.abs().powf(s)).sum::<f64>() * (2.0 * PI / n as f64);
    let mut n = initial_grid(p);
    let mut prev = integral(n);
    loop {
        n *= 2;
        if n > MAX_GRID {
            return Err(Error::ToleranceUnreachable {
                what: format!("L_{s} norm of a degree-{} polynomial", p.degree()),
                tol,
            });
        }
        let cur = integral(n);
        let diff = (cur - prev).abs();
        if diff <= tol * cur || cur == 0.0 {
            let norm = cur.powf(1.0 / s);
            let rel = if cur > 0.0 { diff / cur / s } else { 0.0 };
            return Ok(CertifiedValue::new(norm, rel * norm));
        }
        prev = cur;
    }
}

/// `∫_{-π}^{π} |Ψ|^s` on dyadic pieces `[π2^{-j-1}, π2^{-j}]`, with the mass
/// of `(-δ, δ)` bounded by the kernel envelope.
fn kernel_lp(k: &TruncatedKernel, s: f64, tol: f64) -> Result<CertifiedValue> {
    let eval_tol = 1e-14;
    let symmetric = k.beta().fract() == 0.0;
    let piece = |j: usize, abs_tol: f64| -> Result<(f64, f64)> {
        let b = PI * 0.5f64.powi(j as i32);
        let a = 0.5 * b;
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let f = |t: f64| {
            let side = |x: f64| match kernel::kernel_value(k, x, eval_tol) {
                Ok(v) => v.value.abs().powf(s),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            };
            if symmetric {
                2.0 * side(t)
            } else {
                side(t) + side(-t)
            }
        };
        let r = quad::integrate(f, a, b, abs_tol, 0.01 * tol);
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok((r.value, r.error)),
        }
    };
    let excluded = |j: usize| -> Result<f64> {
        let delta = PI * 0.5f64.powi(j as i32);
        if let Some(sum) = k.coefficient_sum() {
            return Ok(2.0 * delta * sum.hi().powf(s));
        }
        let mut mass = 0.0;
        for i in j..j + 400 {
            let b = PI * 0.5f64.powi(i as i32);
            let a = 0.5 * b;
            let term = 2.0 * (b - a) * k.envelope(a, b)?.powf(s);
            mass += term;
            if term <= 1e-6 * mass {
                break;
            }
        }
        Ok(mass)
    };
    let mut total = 0.0;
    let mut err = 0.0;
    let mut j = 0;
    const BATCH: usize = 8;
    while j < 1000 {
        // pieces far below the running total only need absolute accuracy
        let abs_tol = 1e-3 * tol * total;
        let parts: Vec<Result<(f64, f64)>> = (j..j + BATCH).into_par_iter().map(|i| piece(i, abs_tol)).collect();
        for p in parts {
            let (v, e) = p?;
            total += v;
            err += e;
        }
        j += BATCH;
        let rest = excluded(j)?;
        if rest <= 0.1 * tol * total {
            err += rest;
            break;
        }
    }
    if total <= 0.0 {
        return Ok(CertifiedValue::new(0.0, err.powf(1.0 / s)));
    }
    // pointwise evaluation errors: ∫ s|Ψ|^{s-1} ε ≤ s ε (2π)^{1/s} I^{(s-1)/s}
    err += s * eval_tol * (2.0 * PI).powf(1.0 / s) * total.powf((s - 1.0) / s);
    let norm = total.powf(1.0 / s);
    Ok(CertifiedValue::new(norm, norm * err / total / s))
}

/// `‖target‖_∞`.
pub fn sup_norm(req: &NormRequest<'_>) -> Result<CertifiedValue> {
    if !(req.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", req.tol)));
    }
    match req.target {
        NormTarget::Poly(p) => Ok(poly_sup(p, req.tol)),
        NormTarget::Kernel(k) => {
            if k.mode() != Summability::Linf {
                return Err(Error::Precondition("sup norm of a kernel needs L∞ mode".into()));
            }
            kernel::sup_norm_kernel(k, req.tol)
        }
    }
}

/// Grid maximum, golden-section refinement of the 8 largest cells, and the
/// certificate `max ≤ grid max + min(D₁h/2, D₂h²/8)` with `D_m = Σ k^m (|a_k|+|b_k|)`.
fn poly_sup(p: &TrigPolynomial, tol: f64) -> CertifiedValue {
    if p.degree() == 0 {
        return CertifiedValue::exact(p.constant().abs());
    }
    let d1 = p.derivative_bound();
    let d2: f64 = (1..=p.degree()).map(|k| (k * k) as f64 * (p.cos_coeff(k).abs() + p.sin_coeff(k).abs())).sum();
    let n0 = initial_grid(p).max(1024);
    let g0 = sample(p, n0).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // grid size at which min(D₁h/2, D₂h²/8) ≤ tol·g0 (the grid maximum only grows with N)
    let target = tol * g0;
    let need = (2.0 * PI * (d2 / (8.0 * target)).sqrt()).min(PI * d1 / target);
    let n = if need.is_finite() && need > n0 as f64 {
        (need.ceil() as usize).next_power_of_two().min(MAX_GRID / 4)
    } else {
        n0
    };
    let h = 2.0 * PI / n as f64;
    let vals = sample(p, n);
    let mut order: Vec<usize> = (0..n).collect();
    let top = 8.min(n);
    order.select_nth_unstable_by(top - 1, |&a, &b| vals[b].abs().total_cmp(&vals[a].abs()).then(a.cmp(&b)));
    let grid_max = order[..top].iter().map(|&i| vals[i].abs()).fold(0.0, f64::max);
    let slack = (d1 * h / 2.0).min(d2 * h * h / 8.0);
    let mut best = grid_max;
    for &i in &order[..top] {
        let t0 = i as f64 * h;
        let t = golden_max(|x| p.eval(x).abs(), t0 - h, t0 + h);
        best = best.max(p.eval(t).abs());
    }
    let upper = (grid_max + slack).min(p.abs_coeff_sum()).max(best);
    CertifiedValue::new(best, upper - best)
}

/// `‖p‖₂` from the coefficients: `√(2π c² + π Σ (a_k² + b_k²))`.
pub fn parseval_l2(p: &TrigPolynomial) -> f64 {
    let sq: f64 = p.cos_coeffs().iter().chain(p.sin_coeffs()).map(|x| x * x).sum();
    (2.0 * PI * p.constant() * p.constant() + PI * sq).sqrt()
}

/// `∫_{-π}^{π} p q` from the coefficients.
pub fn inner_product(p: &TrigPolynomial, q: &TrigPolynomial) -> f64 {
    let n = p.degree().min(q.degree());
    let h: f64 = (1..=n).map(|k| p.cos_coeff(k) * q.cos_coeff(k) + p.sin_coeff(k) * q.sin_coeff(k)).sum();
    2.0 * PI * p.constant() * q.constant() + PI * h
}
