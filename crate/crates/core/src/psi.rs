//! Admissible generators `ψ(t)`, `t ≥ 1`, and the decay characteristic
//! `α(ψ;t) = ψ(t) / (t |ψ'(t)|)`.
//!
//! Every built-in family has the shape
//!
//! ```text
//! ψ(t) = t^{-p} · ln(t + K₁)^{-a₁} · (ln ln(t + K₂))^{-a₂}
//! ```
//!
//! so its logarithmic derivative, `α`, and evaluation at astronomically large
//! `t` (through `ln t`) are all available in closed form. Multiplying by a
//! power `t^e` (the `g`-transform) only shifts `p`.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Number of log-spaced samples used to scan `α` on `[n, horizon]`.
const ALPHA_GRID: usize = 2048;
/// Default horizon factor: `α` is scanned on `[n, 1e6·n]`.
pub const DEFAULT_HORIZON_FACTOR: f64 = 1e6;

/// A user-supplied `ψ`, evaluated through a closure. Derivatives are taken by
/// central differences and class membership is only ever heuristic.
#[derive(Clone)]
pub struct CustomPsi {
    name: String,
    func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomPsi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPsi").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum PsiKind {
    /// `t^{-r}`
    Power {
        r: f64,
    },
    /// `t^{-1/s'} ln^{-γ}(t + K)`
    LogPower {
        sp: f64,
        gamma: f64,
        k: f64,
    },
    /// `t^{-1/s'} ln^{-1/s}(t + K₁) (ln ln(t + K₂))^{-γ}`, `1/s = 1 - 1/s'`
    LogLog {
        sp: f64,
        gamma: f64,
        k1: f64,
        k2: f64,
    },
    /// `t^{-1} ln^{-γ}(t + K₁)`
    HarmonicLog {
        gamma: f64,
        k1: f64,
    },
    /// `t^{-1} ln^{-γ}(t + K₁) (ln ln(t + K₂))^{-δ}`
    HarmonicLogLog {
        gamma: f64,
        delta: f64,
        k1: f64,
        k2: f64,
    },
    Custom(CustomPsi),
}

/// Closed-form description `t^{-p} ln(t+k1)^{-a1} (ln ln(t+k2))^{-a2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Shape {
    pub p: f64,
    pub a1: f64,
    pub k1: f64,
    pub a2: f64,
    pub k2: f64,
}

/// `ln(t + k)` given `lt = ln t`, stable for huge `t`.
pub(crate) fn ln_shift(lt: f64, k: f64) -> f64 {
    if lt < 36.0 {
        (lt.exp() + k).ln()
    } else {
        lt + (k * (-lt).exp()).ln_1p()
    }
}

impl Shape {
    /// `ln ψ` at `t = e^{lt}`.
    pub fn ln_value(&self, lt: f64) -> f64 {
        let mut v = -self.p * lt;
        if self.a1 != 0.0 {
            v -= self.a1 * ln_shift(lt, self.k1).ln();
        }
        if self.a2 != 0.0 {
            v -= self.a2 * ln_shift(lt, self.k2).ln().ln();
        }
        v
    }

    /// `-t ψ'(t)/ψ(t)` at `t = e^{lt}`; `α = 1/|slope|`.
    pub fn slope(&self, lt: f64) -> f64 {
        let mut u = self.p;
        if self.a1 != 0.0 {
            let l1 = ln_shift(lt, self.k1);
            u += self.a1 / ((1.0 + self.k1 * (-lt).exp()) * l1);
        }
        if self.a2 != 0.0 {
            let l2 = ln_shift(lt, self.k2);
            u += self.a2 / ((1.0 + self.k2 * (-lt).exp()) * l2 * l2.ln());
        }
        u
    }
}

/// A smoothness generator `ψ` restricted to `t ≥ 1`, optionally multiplied by
/// `t^shift` (the `g`-transform).
#[derive(Debug, Clone)]
pub struct PsiFamily {
    kind: PsiKind,
    shift: f64,
}

/// Result of `inf`/`sup` of `α` over `[n, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaExtremum {
    /// `f64::INFINITY` flags an unbounded supremum.
    pub value: f64,
    /// `false` when obtained by sampling only (custom families).
    pub certified: bool,
}

impl AlphaExtremum {
    pub fn is_unbounded(&self) -> bool {
        self.value.is_infinite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassLabel {
    /// `α` bounded below by a positive constant.
    M0,
    /// `α` bounded above and below by positive constants.
    MC,
    /// `α` decreasing to zero.
    MInfPlus,
    Unknown,
}

/// Class label with the sampled evidence behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub label: ClassLabel,
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// Sampling only; no certificate.
    pub heuristic: bool,
    /// Sampled second differences found a non-convex stretch.
    pub convexity_warning: bool,
}

impl Membership {
    /// `MC ⊂ M0`.
    pub fn in_m0(&self) -> bool {
        matches!(self.label, ClassLabel::M0 | ClassLabel::MC)
    }
}

fn check_pos(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

impl PsiFamily {
    pub fn power(r: f64) -> Result<Self> {
        check_pos("r", r)?;
        Ok(Self::from_kind(PsiKind::Power { r }))
    }

    pub fn log_power(sp: f64, gamma: f64, k: f64) -> Result<Self> {
        if !(sp >= 1.0 && sp.is_finite()) {
            return Err(Error::Domain(format!("s' must be in [1, ∞), got {sp}")));
        }
        check_pos("gamma", gamma)?;
        check_pos("K", k)?;
        Ok(Self::from_kind(PsiKind::LogPower { sp, gamma, k }))
    }

    pub fn log_log(sp: f64, gamma: f64, k1: f64, k2: f64) -> Result<Self> {
        if !(sp > 1.0 && sp.is_finite()) {
            return Err(Error::Domain(format!("s' must be in (1, ∞), got {sp}")));
        }
        check_pos("gamma", gamma)?;
        check_pos("K1", k1)?;
        if !(k2 > E - 1.0) {
            return Err(Error::Domain(format!("K2 must exceed e - 1 so that ln ln(1 + K2) > 0, got {k2}")));
        }
        Ok(Self::from_kind(PsiKind::LogLog { sp, gamma, k1, k2 }))
    }

    pub fn harmonic_log(gamma: f64, k1: f64) -> Result<Self> {
        check_pos("gamma", gamma)?;
        check_pos("K1", k1)?;
        Ok(Self::from_kind(PsiKind::HarmonicLog { gamma, k1 }))
    }

    pub fn harmonic_log_log(gamma: f64, delta: f64, k1: f64, k2: f64) -> Result<Self> {
        check_pos("gamma", gamma)?;
        check_pos("delta", delta)?;
        check_pos("K1", k1)?;
        if !(k2 > E - 1.0) {
            return Err(Error::Domain(format!("K2 must exceed e - 1 so that ln ln(1 + K2) > 0, got {k2}")));
        }
        Ok(Self::from_kind(PsiKind::HarmonicLogLog { gamma, delta, k1, k2 }))
    }

    pub fn custom<F>(name: impl Into<String>, func: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_kind(PsiKind::Custom(CustomPsi { name: name.into(), func: Arc::new(func) }))
    }

    fn from_kind(kind: PsiKind) -> Self {
        Self { kind, shift: 0.0 }
    }

    pub fn kind(&self) -> &PsiKind {
        &self.kind
    }

    /// Exponent `e` of the `t^e` factor applied by [`PsiFamily::g_transform`].
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.kind, PsiKind::Custom(_))
    }

    /// True for `t^{-r}` (possibly shifted): everything is in closed form.
    pub fn is_power(&self) -> bool {
        matches!(self.kind, PsiKind::Power { .. })
    }

    pub(crate) fn shape(&self) -> Option<Shape> {
        let (p, a1, k1, a2, k2) = match self.kind {
            PsiKind::Power { r } => (r, 0.0, 1.0, 0.0, 2.0),
            PsiKind::LogPower { sp, gamma, k } => (1.0 / sp, gamma, k, 0.0, 2.0),
            PsiKind::LogLog { sp, gamma, k1, k2 } => (1.0 / sp, 1.0 - 1.0 / sp, k1, gamma, k2),
            PsiKind::HarmonicLog { gamma, k1 } => (1.0, gamma, k1, 0.0, 2.0),
            PsiKind::HarmonicLogLog { gamma, delta, k1, k2 } => (1.0, gamma, k1, delta, k2),
            PsiKind::Custom(_) => return None,
        };
        Some(Shape { p: p - self.shift, a1, k1, a2, k2 })
    }

    /// `ψ(t)` without the domain check.
    pub(crate) fn value(&self, t: f64) -> f64 {
        match &self.kind {
            PsiKind::Power { r } => t.powf(self.shift - r),
            PsiKind::Custom(c) => {
                let v = (c.func)(t);
                if self.shift == 0.0 {
                    v
                } else {
                    v * t.powf(self.shift)
                }
            }
            _ => self.shape().map(|s| s.ln_value(t.ln()).exp()).unwrap_or(f64::NAN),
        }
    }

    /// `ψ(t)`, `t ≥ 1`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 1.0) {
            return Err(Error::Domain(format!("psi is defined for t >= 1, got {t}")));
        }
        Ok(self.value(t))
    }

    /// `ψ'(t)`: closed form for built-ins, central differences otherwise.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        if !(t >= 1.0) {
            return Err(Error::Domain(format!("psi is defined for t >= 1, got {t}")));
        }
        Ok(match self.shape() {
            Some(s) => -s.slope(t.ln()) * self.value(t) / t,
            None => {
                let h = (1e-6 * t).max(1e-8);
                (self.value(t + h) - self.value(t - h)) / (2.0 * h)
            }
        })
    }

    /// `-t ψ'(t) / ψ(t)`, the reciprocal of `α` up to sign.
    pub(crate) fn log_slope(&self, t: f64) -> f64 {
        match self.shape() {
            Some(s) => s.slope(t.ln()),
            None => {
                let h = 1e-6;
                -((self.value(t * (1.0 + h))).ln() - (self.value(t * (1.0 - h))).ln()) / (2.0 * h)
            }
        }
    }

    /// `α(ψ;t) = ψ(t) / (t |ψ'(t)|)`.
    pub fn alpha(&self, t: f64) -> Result<f64> {
        if !(t >= 1.0) {
            return Err(Error::Domain(format!("psi is defined for t >= 1, got {t}")));
        }
        let u = self.log_slope(t);
        if u == 0.0 || !u.is_finite() {
            return Err(Error::Singular(t));
        }
        Ok(1.0 / u.abs())
    }

    /// The family `ψ(t)·t^{exponent}`, `exponent ∈ (0, 1]`. With
    /// `exponent = 1/s'` this is `g_{s'}`; with `1` it is `g(t) = ψ(t) t`.
    pub fn g_transform(&self, exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(Error::Domain(format!("g-transform exponent must lie in (0, 1], got {exponent}")));
        }
        Ok(Self { kind: self.kind.clone(), shift: self.shift + exponent })
    }

    /// Samples of the log-slope `u = 1/α` (signed) on a log grid over `[n, horizon]`.
    fn slope_scan(&self, n: f64, horizon: f64) -> Vec<(f64, f64)> {
        let (a, b) = (n.ln(), horizon.max(n).ln());
        (0..ALPHA_GRID)
            .map(|i| {
                let lt = if ALPHA_GRID == 1 { a } else { a + (b - a) * i as f64 / (ALPHA_GRID - 1) as f64 };
                let u = match self.shape() {
                    Some(s) => s.slope(lt),
                    None => self.log_slope(lt.exp()),
                };
                (lt, u)
            })
            .collect()
    }

    /// Extremes of the signed log-slope `u` on `[n, ∞)`: grid scan, golden-section
    /// refinement of the extreme cells, and the limit `p` at infinity.
    fn slope_range(&self, n: u64, horizon: f64) -> Result<(f64, f64, bool)> {
        if n == 0 {
            return Err(Error::Domain("n must be >= 1".into()));
        }
        let n = n as f64;
        if let Some(s) = self.shape() {
            if s.a1 == 0.0 && s.a2 == 0.0 {
                return Ok((s.p, s.p, true));
            }
            let scan = self.slope_scan(n, horizon);
            let (lo_i, hi_i) = extreme_indices(&scan);
            let refine = |i: usize, sign: f64| {
                let a = scan[i.saturating_sub(1)].0;
                let b = scan[(i + 1).min(scan.len() - 1)].0;
                let lt = golden_max(|x| sign * s.slope(x), a, b);
                s.slope(lt)
            };
            let umin = scan[lo_i].1.min(refine(lo_i, -1.0)).min(s.p);
            let umax = scan[hi_i].1.max(refine(hi_i, 1.0)).max(s.p);
            Ok((umin, umax, true))
        } else {
            let scan = self.slope_scan(n, horizon.min(1e12));
            if scan.iter().any(|(_, u)| !u.is_finite()) {
                return Err(Error::Singular(n));
            }
            let (lo_i, hi_i) = extreme_indices(&scan);
            Ok((scan[lo_i].1, scan[hi_i].1, false))
        }
    }

    fn alpha_range(&self, n: u64, horizon: f64) -> Result<(AlphaExtremum, AlphaExtremum)> {
        let (umin, umax, certified) = self.slope_range(n, horizon)?;
        if (umin < 0.0 && umax > 0.0) || (umin == 0.0 && umax == 0.0) {
            return Err(Error::Singular(n as f64));
        }
        let (small, large) = if umin >= 0.0 { (umin, umax) } else { (-umax, -umin) };
        let inf = AlphaExtremum { value: 1.0 / large, certified };
        let sup = AlphaExtremum { value: if small <= 1e-14 { f64::INFINITY } else { 1.0 / small }, certified };
        Ok((inf, sup))
    }

    /// `α̲_n(ψ) = inf_{t ≥ n} α(ψ;t)`.
    pub fn alpha_inf(&self, n: u64, horizon: f64) -> Result<AlphaExtremum> {
        Ok(self.alpha_range(n, horizon)?.0)
    }

    /// `ᾱ_n(ψ) = sup_{t ≥ n} α(ψ;t)`; infinite when `α → ∞`.
    pub fn alpha_sup(&self, n: u64, horizon: f64) -> Result<AlphaExtremum> {
        Ok(self.alpha_range(n, horizon)?.1)
    }

    /// [`alpha_inf`](Self::alpha_inf) with the default horizon `1e6·n`.
    pub fn alpha_inf_default(&self, n: u64) -> Result<AlphaExtremum> {
        self.alpha_inf(n, DEFAULT_HORIZON_FACTOR * n as f64)
    }

    pub fn alpha_sup_default(&self, n: u64) -> Result<AlphaExtremum> {
        self.alpha_sup(n, DEFAULT_HORIZON_FACTOR * n as f64)
    }

    /// Membership in `𝔐₀`, `𝔐_C` or `𝔐∞⁺`.
    pub fn classify(&self) -> Membership {
        let convexity_warning = self.is_custom() && !self.sampled_convex();
        match self.shape() {
            Some(_) => match self.slope_range(1, DEFAULT_HORIZON_FACTOR) {
                Ok((umin, umax, _)) if umin > 0.0 || (umin >= 0.0 && umax > 0.0) => {
                    let alpha_min = 1.0 / umax;
                    let (label, alpha_max) =
                        if umin > 1e-14 { (ClassLabel::MC, 1.0 / umin) } else { (ClassLabel::M0, f64::INFINITY) };
                    Membership { label, alpha_min, alpha_max, heuristic: false, convexity_warning }
                }
                _ => Membership {
                    label: ClassLabel::Unknown,
                    alpha_min: f64::NAN,
                    alpha_max: f64::NAN,
                    heuristic: false,
                    convexity_warning,
                },
            },
            None => self.classify_sampled(convexity_warning),
        }
    }

    fn classify_sampled(&self, convexity_warning: bool) -> Membership {
        let scan: Vec<(f64, f64)> =
            self.slope_scan(1.0, 1e6).into_iter().take_while(|&(lt, _)| self.value(lt.exp()) > 1e-280).collect();
        if scan.len() < 16 {
            return Membership {
                label: ClassLabel::Unknown,
                alpha_min: f64::NAN,
                alpha_max: f64::NAN,
                heuristic: true,
                convexity_warning,
            };
        }
        let alphas: Vec<f64> = scan.iter().map(|&(_, u)| if u > 0.0 { 1.0 / u } else { f64::NAN }).collect();
        let unknown = Membership {
            label: ClassLabel::Unknown,
            alpha_min: f64::NAN,
            alpha_max: f64::NAN,
            heuristic: true,
            convexity_warning,
        };
        if alphas.iter().any(|a| !a.is_finite()) {
            return unknown;
        }
        let amin = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
        let amax = alphas.iter().cloned().fold(0.0, f64::max);
        let decreasing = alphas.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9));
        let (first, last) = (alphas[0], alphas[alphas.len() - 1]);
        let label = if decreasing && last < 1e-2 * first {
            ClassLabel::MInfPlus
        } else if amax / amin < 1e3 {
            ClassLabel::MC
        } else if amin > 1e-3 {
            ClassLabel::M0
        } else {
            ClassLabel::Unknown
        };
        Membership { label, alpha_min: amin, alpha_max: amax, heuristic: true, convexity_warning }
    }

    /// Second differences of `ψ` on a log grid are nonnegative.
    fn sampled_convex(&self) -> bool {
        (0..400).all(|i| {
            let t = 10f64.powf(i as f64 * 0.015);
            let h = 0.05 * t;
            let lo = if t - h < 1.0 { 1.0 } else { t - h };
            let h = t - lo;
            if h <= 0.0 {
                return true;
            }
            let d2 = self.value(t + h) - 2.0 * self.value(t) + self.value(t - h);
            d2 >= -1e-12 * self.value(t)
        })
    }
}

fn extreme_indices(scan: &[(f64, f64)]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, &(_, u)) in scan.iter().enumerate() {
        if u < scan[lo].1 {
            lo = i;
        }
        if u > scan[hi].1 {
            hi = i;
        }
    }
    (lo, hi)
}

/// Golden-section search for the maximiser of `f` on `[a, b]`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if (b - a).abs() <= 1e-14 * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        c
    } else {
        d
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for PsiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PsiKind::Power { r } => write!(f, "power:r={}", fmt_num(*r))?,
            PsiKind::LogPower { sp, gamma, k } => {
                write!(f, "logpower:sp={},gamma={},K={}", fmt_num(*sp), fmt_num(*gamma), fmt_num(*k))?
            }
            PsiKind::LogLog { sp, gamma, k1, k2 } => write!(
                f,
                "loglog:sp={},gamma={},K1={},K2={}",
                fmt_num(*sp),
                fmt_num(*gamma),
                fmt_num(*k1),
                fmt_num(*k2)
            )?,
            PsiKind::HarmonicLog { gamma, k1 } => write!(f, "harmlog:gamma={},K1={}", fmt_num(*gamma), fmt_num(*k1))?,
            PsiKind::HarmonicLogLog { gamma, delta, k1, k2 } => write!(
                f,
                "harmloglog:gamma={},delta={},K1={},K2={}",
                fmt_num(*gamma),
                fmt_num(*delta),
                fmt_num(*k1),
                fmt_num(*k2)
            )?,
            PsiKind::Custom(c) => write!(f, "custom:{}", c.name)?,
        }
        if self.shift != 0.0 {
            write!(f, "*t^{}", fmt_num(self.shift))?;
        }
        Ok(())
    }
}

/// Parses a number, `e`, or `exp(x)`.
fn parse_num(key: &str, s: &str) -> Result<f64> {
    let s = s.trim();
    let v = if s == "e" {
        Some(E)
    } else if let Some(inner) = s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        inner.trim().parse::<f64>().ok().map(f64::exp)
    } else {
        s.parse::<f64>().ok()
    };
    v.filter(|x| x.is_finite()).ok_or_else(|| Error::Parse(format!("invalid value for {key}: {s:?}")))
}

impl FromStr for PsiFamily {
    type Err = Error;

    /// Grammar: `power:r=2`, `logpower:sp=2,gamma=1.5,K=1`,
    /// `loglog:sp=2,gamma=1,K1=1,K2=1.72`, `harmlog:gamma=2,K1=7.389056`,
    /// `harmloglog:gamma=1,delta=2,K1=20.09,K2=20.09`, optionally followed by
    /// `*t^e` for a `g`-transform.
    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (base, shift) = match spec.split_once("*t^") {
            Some((b, e)) => (b, Some(parse_num("exponent", e)?)),
            None => (spec, None),
        };
        let (name, args) = base
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <family>:<key>=<value>,..., got {spec:?}")))?;
        let mut pairs: Vec<(String, f64)> = Vec::new();
        for item in args.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) =
                item.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            let k = k.trim().to_string();
            if pairs.iter().any(|(p, _)| *p == k) {
                return Err(Error::Parse(format!("duplicate key {k}")));
            }
            let v = parse_num(&k, v)?;
            pairs.push((k, v));
        }
        let expect = |keys: &[&str]| -> Result<Vec<f64>> {
            if let Some((k, _)) = pairs.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
                return Err(Error::Parse(format!("unknown key {k} for family {name}")));
            }
            keys.iter()
                .map(|key| {
                    pairs
                        .iter()
                        .find(|(k, _)| k == key)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| Error::Parse(format!("missing key {key} for family {name}")))
                })
                .collect()
        };
        let fam = match name.trim() {
            "power" => {
                let v = expect(&["r"])?;
                Self::power(v[0])
            }
            "logpower" => {
                let v = expect(&["sp", "gamma", "K"])?;
                Self::log_power(v[0], v[1], v[2])
            }
            "loglog" => {
                let v = expect(&["sp", "gamma", "K1", "K2"])?;
                Self::log_log(v[0], v[1], v[2], v[3])
            }
            "harmlog" => {
                let v = expect(&["gamma", "K1"])?;
                Self::harmonic_log(v[0], v[1])
            }
            "harmloglog" => {
                let v = expect(&["gamma", "delta", "K1", "K2"])?;
                Self::harmonic_log_log(v[0], v[1], v[2], v[3])
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        }
        .map_err(|e| Error::Parse(e.to_string()))?;
        match shift {
            Some(e) => fam.g_transform(e).map_err(|e| Error::Parse(e.to_string())),
            None => Ok(fam),
        }
    }
}
