use crate::{Error, Result};

/// Continuous piecewise-linear hats on a uniform mesh of `[0, 1]`. Every
/// hat lies in the weighted space `V`; nothing is imposed at `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedBasis {
    nodes: Vec<f64>,
}

impl WeightedBasis {
    /// `n` elements, `n + 1` nodes.
    pub fn p1(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::AssumptionViolation("P1 mesh needs at least one element".into()));
        }
        Ok(Self { nodes: (0..=n).map(|j| j as f64 / n as f64).collect() })
    }

    pub fn elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn element(&self, e: usize) -> (f64, f64) {
        (self.nodes[e], self.nodes[e + 1])
    }

    fn locate(&self, x: f64) -> usize {
        let n = self.elements();
        ((x * n as f64).floor().max(0.0) as usize).min(n - 1)
    }

    pub fn hat(&self, j: usize, x: f64) -> f64 {
        let s = x * self.elements() as f64 - j as f64;
        (1.0 - s.abs()).max(0.0)
    }

    /// One-sided at the nodes: the value on the element to the right.
    pub fn hat_derivative(&self, j: usize, x: f64) -> f64 {
        let n = self.elements() as f64;
        let s = x * n - j as f64;
        if (-1.0..0.0).contains(&s) {
            n
        } else if (0.0..1.0).contains(&s) {
            -n
        } else {
            0.0
        }
    }

    pub fn check_dim(&self, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: coeffs.len() })
        }
    }

    /// `Σ c_j φ_j(x)`
    pub fn eval(&self, coeffs: &[f64], x: f64) -> f64 {
        let e = self.locate(x);
        let (a, b) = self.element(e);
        let w = (x - a) / (b - a);
        (1.0 - w) * coeffs[e] + w * coeffs[e + 1]
    }

    pub fn eval_derivative(&self, coeffs: &[f64], x: f64) -> f64 {
        let e = self.locate(x);
        let (a, b) = self.element(e);
        (coeffs[e + 1] - coeffs[e]) / (b - a)
    }

    /// Nodal interpolant of `f`.
    pub fn interpolate<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}
