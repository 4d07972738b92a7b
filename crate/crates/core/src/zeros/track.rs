use crate::error::{Edge, Error, Result};
use crate::eval::{eval_point_scaled, FPoint};
use crate::expr::FExpression;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Largest accepted `|Δ log F|` per step predicted from `F'/F`.
const MAX_PREDICTED_STEP: f64 = 0.4;
const MAX_ARG_STEP: f64 = PI / 3.0;
/// Allowed gap between the trapezoid prediction and the actual `Δ log F`.
const PREDICTION_SLACK: f64 = 0.25;
/// Smallest step, as a fraction of the path parameter range.
const MIN_STEP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Path {
    Segment(Complex64, Complex64),
    /// Full counter-clockwise circle starting at `center + radius`.
    Circle { center: Complex64, radius: f64 },
}

impl Path {
    pub fn at(&self, tau: f64) -> Complex64 {
        match *self {
            Path::Segment(a, b) => a + (b - a) * tau,
            Path::Circle { center, radius } => center + Complex64::from_polar(radius, TAU * tau),
        }
    }

    /// `d s / d τ`
    pub fn velocity(&self, tau: f64) -> Complex64 {
        match *self {
            Path::Segment(a, b) => b - a,
            Path::Circle { radius, .. } => Complex64::new(0.0, TAU) * Complex64::from_polar(radius, TAU * tau),
        }
    }
}

pub(super) struct Tracker<'a> {
    expr: &'a FExpression,
    clearance: f64,
}

impl<'a> Tracker<'a> {
    pub fn new(expr: &'a FExpression, clearance: f64) -> Self {
        Tracker { expr, clearance }
    }

    fn sample(&self, s: Complex64, edge: Edge, h: f64) -> Result<FPoint> {
        let p = eval_point_scaled(self.expr, s)?;
        if p.value.norm() <= self.clearance * p.derivative.norm() * h || p.value == Complex64::new(0.0, 0.0) {
            return Err(Error::BoundaryZeroSuspected { at: s, edge });
        }
        Ok(p)
    }

    /// Continuous change of `arg F` along `path`. `h` sets the dip threshold.
    pub fn track(&self, path: Path, edge: Edge, h: f64) -> Result<f64> {
        let mut tau = 0.0;
        let mut p = self.sample(path.at(0.0), edge, h)?;
        let mut rate = p.log_derivative() * path.velocity(0.0);
        let mut step: f64 = 0.05;
        let mut total = 0.0;
        while tau < 1.0 {
            step = step.min(MAX_PREDICTED_STEP / rate.norm().max(1e-300)).min(1.0 - tau);
            loop {
                if step < MIN_STEP {
                    return Err(Error::BoundaryZeroSuspected { at: path.at(tau), edge });
                }
                let next = if tau + step >= 1.0 - 1e-14 { 1.0 } else { tau + step };
                let q = self.sample(path.at(next), edge, h)?;
                // the real scale factors drop out of the imaginary part
                let actual = (q.value / p.value).ln() + Complex64::new(q.log_scale - p.log_scale, 0.0);
                let q_rate = q.log_derivative() * path.velocity(next);
                let predicted = (rate + q_rate) * (0.5 * (next - tau));
                if actual.im.abs() < MAX_ARG_STEP && (actual - predicted).norm() < PREDICTION_SLACK {
                    total += actual.im;
                    step = 2.0 * (next - tau);
                    tau = next;
                    p = q;
                    rate = q_rate;
                    break;
                }
                step *= 0.5;
            }
        }
        Ok(total)
    }
}
