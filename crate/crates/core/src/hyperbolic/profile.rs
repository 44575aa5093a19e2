use std::fmt;
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Initial profile of a Riemann invariant: a value map, its exact
/// derivative, and the interval of `r` it is defined on (`hi` may be
/// infinite).
#[derive(Clone)]
pub struct Profile {
    name: String,
    value: ScalarFn,
    derivative: ScalarFn,
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile")
            .field("name", &self.name)
            .field("domain", &(self.lo, self.hi))
            .finish()
    }
}

impl Profile {
    pub fn new<F, D>(name: impl Into<String>, value: F, derivative: D, domain: (f64, f64)) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        assert!(domain.0 < domain.1, "empty profile domain");
        Self {
            name: name.into(),
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            lo: domain.0,
            hi: domain.1,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("constant({c})"), move |_| c, |_| 0.0, (f64::NEG_INFINITY, f64::INFINITY))
    }

    /// `Σ coeffs[k] r^k`
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let d: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
        let name = format!("polynomial({coeffs:?})");
        Self::new(name, move |r| horner(&coeffs, r), move |r| horner(&d, r), (f64::NEG_INFINITY, f64::INFINITY))
    }

    /// `base + amplitude * tanh((r - center) / width)`
    pub fn tanh(base: f64, amplitude: f64, center: f64, width: f64) -> Self {
        assert!(width > 0.0);
        Self::new(
            format!("tanh({base}, {amplitude}, {center}, {width})"),
            move |r| base + amplitude * ((r - center) / width).tanh(),
            move |r| amplitude / width / ((r - center) / width).cosh().powi(2),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo < hi);
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.lo && r <= self.hi
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.value)(r)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        (self.derivative)(r)
    }

    /// Largest gap between `derivative` and a central difference with step
    /// `h` over `points`, relative to `1 + |derivative|`.
    pub fn derivative_mismatch(&self, points: &[f64], h: f64) -> f64 {
        points
            .iter()
            .map(|&r| {
                let fd = (self.eval(r + h) - self.eval(r - h)) / (2.0 * h);
                let d = self.derivative(r);
                (fd - d).abs() / (1.0 + d.abs())
            })
            .fold(0.0, f64::max)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * x + ck)
}
