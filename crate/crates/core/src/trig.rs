//! Finite trigonometric polynomials and the kernels built from them.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::psi::PsiFamily;

/// `c + Σ_{k=1}^{N} (a_k cos kt + b_k sin kt)`.
///
/// Coefficient vectors are stored from `k = 1`; trailing zero harmonics are
/// trimmed, so `degree()` is the highest index with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    constant: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPolynomial {
    pub fn new(constant: f64, mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let n = cos.len().max(sin.len());
        cos.resize(n, 0.0);
        sin.resize(n, 0.0);
        let mut p = Self { constant, cos, sin };
        p.trim();
        p
    }

    pub fn constant_term(c: f64) -> Self {
        Self::new(c, Vec::new(), Vec::new())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `cos kt` (`k ≥ 1`) or the constant `1` (`k = 0`).
    pub fn cos_harmonic(k: usize) -> Self {
        if k == 0 {
            return Self::constant_term(1.0);
        }
        let mut c = vec![0.0; k];
        c[k - 1] = 1.0;
        Self::new(0.0, c, Vec::new())
    }

    pub fn sin_harmonic(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut s = vec![0.0; k];
        s[k - 1] = 1.0;
        Self::new(0.0, Vec::new(), s)
    }

    fn trim(&mut self) {
        while let (Some(&a), Some(&b)) = (self.cos.last(), self.sin.last()) {
            if a != 0.0 || b != 0.0 {
                break;
            }
            self.cos.pop();
            self.sin.pop();
        }
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    /// `a_k`, zero beyond the degree; `k = 0` gives the constant term.
    pub fn cos_coeff(&self, k: usize) -> f64 {
        if k == 0 {
            self.constant
        } else {
            self.cos.get(k - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn sin_coeff(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.sin.get(k - 1).copied().unwrap_or(0.0)
        }
    }

    /// `a_1, …, a_N`.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0.0 && self.cos.is_empty()
    }

    /// Value at `t`; harmonics come from a rotation recurrence resynchronised every 64 steps.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = self.constant;
        let (s1, c1) = t.sin_cos();
        let (mut s, mut c) = (0.0, 1.0);
        for (i, (&a, &b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = i + 1;
            if k % 64 == 0 {
                (s, c) = (k as f64 * t).sin_cos();
            } else {
                (s, c) = (s * c1 + c * s1, c * c1 - s * s1);
            }
            acc += a * c + b * s;
        }
        acc
    }

    /// `max_t |p'(t)| ≤ Σ k (|a_k| + |b_k|)`.
    pub fn derivative_bound(&self) -> f64 {
        self.cos.iter().zip(&self.sin).enumerate().map(|(i, (a, b))| (i + 1) as f64 * (a.abs() + b.abs())).sum()
    }

    /// `|c| + Σ (|a_k| + |b_k|)`, an upper bound for the sup norm.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.constant.abs() + self.cos.iter().zip(&self.sin).map(|(a, b)| a.abs() + b.abs()).sum::<f64>()
    }

    /// Applies `f(k, a_k, b_k) -> (a'_k, b'_k)` to every harmonic.
    pub fn map_harmonics<F: Fn(usize, f64, f64) -> (f64, f64)>(&self, f: F) -> Self {
        let (cos, sin) = self.cos.iter().zip(&self.sin).enumerate().map(|(i, (&a, &b))| f(i + 1, a, b)).unzip();
        Self::new(self.constant, cos, sin)
    }

    /// Plain-text coefficient table: one `index cos sin` line per harmonic,
    /// starting with `0 constant 0`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "0\t{:.17e}\t{:.17e}", self.constant, 0.0);
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let _ = writeln!(out, "{}\t{:.17e}\t{:.17e}", i + 1, a, b);
        }
        out
    }

    pub fn from_table(text: &str) -> Result<Self> {
        let mut constant = 0.0;
        let mut cos = Vec::new();
        let mut sin = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("coefficient table line {}: {line:?}", ln + 1));
            if f.len() != 3 {
                return Err(bad());
            }
            let k: usize = f[0].parse().map_err(|_| bad())?;
            let a: f64 = f[1].parse().map_err(|_| bad())?;
            let b: f64 = f[2].parse().map_err(|_| bad())?;
            if k == 0 {
                constant = a;
                continue;
            }
            if cos.len() < k {
                cos.resize(k, 0.0);
                sin.resize(k, 0.0);
            }
            cos[k - 1] = a;
            sin[k - 1] = b;
        }
        Ok(Self::new(constant, cos, sin))
    }
}

fn zip_with(p: &TrigPolynomial, q: &TrigPolynomial, f: impl Fn(f64, f64) -> f64) -> TrigPolynomial {
    let n = p.degree().max(q.degree());
    let cos = (1..=n).map(|k| f(p.cos_coeff(k), q.cos_coeff(k))).collect();
    let sin = (1..=n).map(|k| f(p.sin_coeff(k), q.sin_coeff(k))).collect();
    TrigPolynomial::new(f(p.constant, q.constant), cos, sin)
}

impl Add for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn add(self, rhs: Self) -> TrigPolynomial {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn sub(self, rhs: Self) -> TrigPolynomial {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &TrigPolynomial {
    type Output = TrigPolynomial;
    fn mul(self, rhs: f64) -> TrigPolynomial {
        TrigPolynomial::new(
            self.constant * rhs,
            self.cos.iter().map(|a| a * rhs).collect(),
            self.sin.iter().map(|b| b * rhs).collect(),
        )
    }
}

/// `(cos βπ/2, sin βπ/2)`, exact for integer `β`.
pub fn phase(beta: f64) -> (f64, f64) {
    if beta.fract() == 0.0 && beta.abs() < 1e15 {
        match (beta as i64).rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else {
        let (s, c) = (beta * PI / 2.0).sin_cos();
        (c, s)
    }
}

/// Fejér kernel `F_k`; `F_0 = 1/2`.
pub fn fejer_kernel(k: usize) -> TrigPolynomial {
    let cos = (1..=k).map(|j| 1.0 - j as f64 / (k + 1) as f64).collect();
    TrigPolynomial::new(0.5, cos, Vec::new())
}

/// Weights of the Vallée Poussin kernel `V_m` at `k = 1..2m-1`.
fn vp_weight(m: usize, k: usize) -> f64 {
    if k <= m {
        1.0
    } else {
        2.0 * (1.0 - k as f64 / (2 * m) as f64)
    }
}

fn check_order(name: &str, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain(format!("{name} needs an order >= 1")));
    }
    Ok(())
}

/// Vallée Poussin kernel `V_m = 1/2 + Σ_{k≤m} cos kt + 2Σ_{m<k<2m} (1 - k/2m) cos kt`.
pub fn vallee_poussin(m: usize) -> Result<TrigPolynomial> {
    check_order("V_m", m)?;
    let cos = (1..2 * m).map(|k| vp_weight(m, k)).collect();
    Ok(TrigPolynomial::new(0.5, cos, Vec::new()))
}

/// `φ_m = (V_m - 1/2) / 4π`.
pub fn phi_lower(m: usize) -> Result<TrigPolynomial> {
    let v = vallee_poussin(m)?;
    Ok(&(&v - &TrigPolynomial::constant_term(0.5)) * (1.0 / (4.0 * PI)))
}

/// `f_m = (1/4π) Σ w_k ψ(k) cos(kt - βπ/2)` with the Vallée Poussin weights.
pub fn f_lower(family: &PsiFamily, beta: f64, m: usize) -> Result<TrigPolynomial> {
    check_order("f_m", m)?;
    let (c, s) = phase(beta);
    let w: Vec<f64> = (1..2 * m).map(|k| vp_weight(m, k) * family.value(k as f64) / (4.0 * PI)).collect();
    Ok(TrigPolynomial::new(0.0, w.iter().map(|x| x * c).collect(), w.iter().map(|x| x * s).collect()))
}

/// Triangular weights `k` (`k ≤ n`) and `2n+1-k` (`n < k ≤ 2n`).
fn tent(n: usize, k: usize) -> f64 {
    if k <= n {
        k as f64
    } else {
        (2 * n + 1 - k) as f64
    }
}

/// `φ*_n = -(1/5πn) Σ_{k=1}^{2n} tent(k) sin kt`.
pub fn phi_star(n: usize) -> Result<TrigPolynomial> {
    check_order("phi*_n", n)?;
    let scale = -1.0 / (5.0 * PI * n as f64);
    Ok(TrigPolynomial::new(0.0, Vec::new(), (1..=2 * n).map(|k| scale * tent(n, k)).collect()))
}

/// `f*_n = (1/5πn) Σ_{k=1}^{2n} tent(k) ψ(k) cos kt`.
pub fn f_star(family: &PsiFamily, n: usize) -> Result<TrigPolynomial> {
    check_order("f*_n", n)?;
    let scale = 1.0 / (5.0 * PI * n as f64);
    Ok(TrigPolynomial::new(0.0, (1..=2 * n).map(|k| scale * tent(n, k) * family.value(k as f64)).collect(), Vec::new()))
}

/// Fourier partial sum `S_{n-1}`: keeps the constant and harmonics `k ≤ n-1`.
pub fn partial_sum(p: &TrigPolynomial, n: usize) -> Result<TrigPolynomial> {
    check_order("S_{n-1}", n)?;
    let keep = (n - 1).min(p.degree());
    Ok(TrigPolynomial::new(p.constant, p.cos[..keep].to_vec(), p.sin[..keep].to_vec()))
}

/// Convolution `(1/π) ∫ p(τ) Ψ_β(t - τ) dτ` of a zero-mean polynomial:
/// harmonic `k` is scaled by `ψ(k)` and rotated by `βπ/2`.
pub fn convolve_with_kernel(family: &PsiFamily, beta: f64, p: &TrigPolynomial) -> Result<TrigPolynomial> {
    if p.constant != 0.0 {
        return Err(Error::Precondition(format!(
            "convolution needs a zero-mean polynomial, constant term is {}",
            p.constant
        )));
    }
    let (c, s) = phase(beta);
    Ok(p.map_harmonics(|k, a, b| {
        let psi = family.value(k as f64);
        (psi * (a * c - b * s), psi * (a * s + b * c))
    }))
}
