use std::fmt;

/// A value together with an absolute error bound: the true quantity lies in
/// `[value - error_bound, value + error_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    pub value: f64,
    pub error_bound: f64,
}

impl CertifiedValue {
    pub fn new(value: f64, error_bound: f64) -> Self {
        debug_assert!(error_bound >= 0.0 || error_bound.is_nan());
        Self { value, error_bound }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn lo(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn hi(&self) -> f64 {
        self.value + self.error_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(self.value * c, self.error_bound * c.abs())
    }

    /// `x^e` for a positive interval, with the error propagated through the
    /// endpoints.
    pub fn powf(self, e: f64) -> Self {
        let v = self.value.powf(e);
        let lo = self.lo().max(0.0).powf(e);
        let hi = self.hi().powf(e);
        let err = (v - lo).abs().max((hi - v).abs());
        Self::new(v, if err.is_finite() { err } else { f64::INFINITY })
    }
}

impl std::ops::Add for CertifiedValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl std::ops::Sub for CertifiedValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value, self.error_bound)
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
