//! Counting and locating zeros of `F` by the argument principle.
//!
//! The argument of `F` is tracked along each contour with steps small enough
//! that `log F` changes by well under one radian, and every step is checked
//! against the trapezoid prediction from `F'/F`. Zeros are then isolated by
//! subdividing boxes with positive winding number and refined by Newton's
//! method with the box's multiplicity.

mod track;

pub use track::Path;

use crate::error::{Edge, Error, Result};
use crate::eval::eval_point;
use crate::export::fmt_f64;
use crate::expr::FExpression;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt::Write as _;
use track::Tracker;

/// Split positions tried, as fractions of the box side.
const SPLIT_FRACTIONS: [f64; 6] = [0.5, 0.513, 0.471, 0.547, 0.429, 0.589];
const SNAP_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let all_finite = [sigma_lo, sigma_hi, t_lo, t_hi].iter().all(|x| x.is_finite());
        if !all_finite || sigma_lo >= sigma_hi || t_lo >= t_hi {
            return Err(Error::InvalidRequest(format!(
                "degenerate rectangle [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]"
            )));
        }
        Ok(Rectangle { sigma_lo, sigma_hi, t_lo, t_hi })
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.sigma_lo + self.sigma_hi), 0.5 * (self.t_lo + self.t_hi))
    }

    pub fn contains(&self, s: Complex64) -> bool {
        (self.sigma_lo..=self.sigma_hi).contains(&s.re) && (self.t_lo..=self.t_hi).contains(&s.im)
    }

    /// Distance from an interior point to the nearest edge.
    pub fn edge_distance(&self, s: Complex64) -> f64 {
        (s.re - self.sigma_lo)
            .min(self.sigma_hi - s.re)
            .min(s.im - self.t_lo)
            .min(self.t_hi - s.im)
    }

    pub fn contains_pole(&self) -> bool {
        self.contains(Complex64::new(1.0, 0.0))
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_lo, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_hi),
            Complex64::new(self.sigma_lo, self.t_hi),
        ]
    }

    /// Move one edge outward by `d`.
    pub fn nudged(&self, edge: Edge, d: f64) -> Rectangle {
        let mut r = *self;
        match edge {
            Edge::Bottom => r.t_lo -= d,
            Edge::Top => r.t_hi += d,
            Edge::Left => r.sigma_lo -= d,
            Edge::Right => r.sigma_hi += d,
            Edge::Circle => {}
        }
        r
    }

    /// Split into two halves along `t` at fraction `f` of the height.
    pub fn split_t(&self, f: f64) -> (Rectangle, Rectangle) {
        let t = self.t_lo + f * self.height();
        (Rectangle { t_hi: t, ..*self }, Rectangle { t_lo: t, ..*self })
    }

    /// Split into two halves along `σ` at fraction `f` of the width.
    pub fn split_sigma(&self, f: f64) -> (Rectangle, Rectangle) {
        let s = self.sigma_lo + f * self.width();
        (Rectangle { sigma_hi: s, ..*self }, Rectangle { sigma_lo: s, ..*self })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub rho: Complex64,
    pub multiplicity: u32,
    /// `|F(rho)|`
    pub residual: f64,
    /// Radius of the circle about `rho` whose winding number certified the zero.
    pub box_radius: f64,
}

impl ZeroRecord {
    pub fn beta(&self) -> f64 {
        self.rho.re
    }

    pub fn gamma(&self) -> f64 {
        self.rho.im
    }
}

/// Rows `beta,gamma,multiplicity,residual`.
pub fn zeros_to_csv(zeros: &[ZeroRecord]) -> String {
    let mut out = String::from("beta,gamma,multiplicity,residual\n");
    for z in zeros {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(z.rho.re),
            fmt_f64(z.rho.im),
            z.multiplicity,
            fmt_f64(z.residual)
        );
    }
    out
}

pub fn total_multiplicity(zeros: &[ZeroRecord]) -> i64 {
    zeros.iter().map(|z| z.multiplicity as i64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FinderConfig {
    /// A contour point within `edge_clearance · H` of a zero (judged by `|F/F'|`)
    /// aborts the contour; `H` is the box height or circle radius.
    pub edge_clearance: f64,
    /// Outer-edge nudge as a fraction of the box height.
    pub nudge_fraction: f64,
    pub max_nudges: usize,
    /// Boxes smaller than this are not split further.
    pub cluster_resolution: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// `|F(rho)| ≤ residual_tol · max(1, scale)`
    pub residual_tol: f64,
    /// Height of the strips a long rectangle is cut into before subdivision.
    pub strip_height: f64,
    pub allow_pole: bool,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            edge_clearance: 1e-8,
            nudge_fraction: 1e-3,
            max_nudges: 5,
            cluster_resolution: 1e-6,
            newton_tol: 1e-11,
            newton_max_iter: 60,
            residual_tol: 1e-9,
            strip_height: 2.0,
            allow_pole: false,
        }
    }
}

impl FinderConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("edge_clearance", self.edge_clearance),
            ("nudge_fraction", self.nudge_fraction),
            ("cluster_resolution", self.cluster_resolution),
            ("newton_tol", self.newton_tol),
            ("residual_tol", self.residual_tol),
            ("strip_height", self.strip_height),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidRequest(format!("{name} must be positive")));
            }
        }
        if self.nudge_fraction >= 0.5 || self.newton_max_iter == 0 {
            return Err(Error::InvalidRequest("nudge_fraction must be below 1/2 and newton_max_iter positive".into()));
        }
        Ok(())
    }
}

pub struct ZeroFinder<'a> {
    expr: &'a FExpression,
    cfg: FinderConfig,
    tracker: Tracker<'a>,
}

fn snap(total_arg: f64) -> Result<i64> {
    let w = total_arg / TAU;
    let n = w.round();
    if (w - n).abs() < SNAP_TOLERANCE {
        Ok(n as i64)
    } else {
        Err(Error::QuadratureUnstable(w))
    }
}

impl<'a> ZeroFinder<'a> {
    pub fn new(expr: &'a FExpression) -> Self {
        Self::with_config(expr, FinderConfig::default())
    }

    pub fn with_config(expr: &'a FExpression, cfg: FinderConfig) -> Self {
        ZeroFinder { expr, cfg, tracker: Tracker::new(expr, cfg.edge_clearance) }
    }

    pub fn config(&self) -> &FinderConfig {
        &self.cfg
    }

    fn check_pole(&self, r: &Rectangle) -> Result<()> {
        if r.contains_pole() && !self.cfg.allow_pole {
            return Err(Error::PoleInRectangle);
        }
        Ok(())
    }

    /// Total argument change around `r`, without nudging.
    fn contour_arg(&self, r: &Rectangle) -> Result<f64> {
        let c = r.corners();
        let h = r.height();
        let edges = [Edge::Bottom, Edge::Right, Edge::Top, Edge::Left];
        let mut total = 0.0;
        for i in 0..4 {
            total += self.tracker.track(Path::Segment(c[i], c[(i + 1) % 4]), edges[i], h)?;
        }
        Ok(total)
    }

    /// Winding number of `r` without nudging; errors on boundary dips.
    pub fn winding_exact(&self, r: &Rectangle) -> Result<i64> {
        self.check_pole(r)?;
        snap(self.contour_arg(r)?)
    }

    /// Winding number of `F` around `r`, nudging an edge outward when a zero
    /// sits on it. Returns the count and the rectangle actually used.
    pub fn winding_count_nudged(&self, rect: &Rectangle) -> Result<(i64, Rectangle)> {
        let mut r = *rect;
        let step = self.cfg.nudge_fraction * rect.height();
        let mut nudges = 0;
        loop {
            self.check_pole(&r)?;
            match self.contour_arg(&r) {
                Ok(total) => return Ok((snap(total)?, r)),
                Err(Error::BoundaryZeroSuspected { edge, .. }) if nudges < self.cfg.max_nudges => {
                    r = r.nudged(edge, step);
                    nudges += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }

    pub fn winding_count(&self, rect: &Rectangle) -> Result<i64> {
        self.winding_count_nudged(rect).map(|(n, _)| n)
    }

    /// Winding number around the circle `|s - center| = radius`.
    pub fn circle_winding(&self, center: Complex64, radius: f64) -> Result<i64> {
        let arg = self.tracker.track(Path::Circle { center, radius }, Edge::Circle, radius)?;
        snap(arg)
    }

    /// All zeros in `rect`, sorted by `γ` then `β`.
    pub fn locate_zeros(&self, rect: &Rectangle) -> Result<Vec<ZeroRecord>> {
        let (total, r) = self.winding_count_nudged(rect)?;
        if total < 0 {
            return Err(Error::QuadratureUnstable(total as f64));
        }
        let strips = self.strip_counts(&r)?;
        let found: i64 = strips.iter().map(|(_, c)| c).sum();
        if found != total {
            return Err(Error::QuadratureUnstable(found as f64));
        }
        let mut zeros: Vec<ZeroRecord> = strips
            .par_iter()
            .filter(|(_, c)| *c > 0)
            .map(|(b, c)| self.resolve(b, *c))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        zeros.sort_by(|a, b| a.rho.im.total_cmp(&b.rho.im).then(a.rho.re.total_cmp(&b.rho.re)));
        Ok(zeros)
    }

    /// Cut `r` into horizontal strips, tracking each interior line once and
    /// nudging it upward when it passes through a zero.
    fn strip_counts(&self, r: &Rectangle) -> Result<Vec<(Rectangle, i64)>> {
        let n = ((r.height() / self.cfg.strip_height).ceil() as usize).max(1);
        let dh = r.height() / n as f64;
        let lines: Vec<(f64, f64)> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let mut t = if i == n { r.t_hi } else { r.t_lo + dh * i as f64 };
                let interior = i > 0 && i < n;
                let mut tries = 0;
                loop {
                    let path = Path::Segment(Complex64::new(r.sigma_lo, t), Complex64::new(r.sigma_hi, t));
                    match self.tracker.track(path, Edge::Bottom, dh) {
                        Ok(a) => return Ok((t, a)),
                        Err(Error::BoundaryZeroSuspected { .. }) if interior && tries < self.cfg.max_nudges => {
                            t += self.cfg.nudge_fraction * dh;
                            tries += 1;
                        }
                        Err(e) => return Err(e),
                    }
                }
            })
            .collect::<Result<_>>()?;
        (0..n)
            .into_par_iter()
            .map(|i| {
                let (t0, h0) = lines[i];
                let (t1, h1) = lines[i + 1];
                let right = Path::Segment(Complex64::new(r.sigma_hi, t0), Complex64::new(r.sigma_hi, t1));
                let left = Path::Segment(Complex64::new(r.sigma_lo, t1), Complex64::new(r.sigma_lo, t0));
                let a = h0 + self.tracker.track(right, Edge::Right, t1 - t0)? - h1
                    + self.tracker.track(left, Edge::Left, t1 - t0)?;
                let b = Rectangle { t_lo: t0, t_hi: t1, ..*r };
                Ok((b, snap(a)?))
            })
            .collect()
    }

    fn children(b: &Rectangle, f: f64) -> Vec<Rectangle> {
        let aspect = b.width() / b.height();
        if aspect > 2.0 {
            let (l, r) = b.split_sigma(f);
            vec![l, r]
        } else if aspect < 0.5 {
            let (lo, hi) = b.split_t(f);
            vec![lo, hi]
        } else {
            let (l, r) = b.split_sigma(f);
            let (ll, lh) = l.split_t(f);
            let (rl, rh) = r.split_t(f);
            vec![ll, rl, lh, rh]
        }
    }

    /// Zeros of a box known to contain `count` of them.
    fn resolve(&self, b: &Rectangle, count: i64) -> Result<Vec<ZeroRecord>> {
        if count <= 0 {
            return Ok(Vec::new());
        }
        if count == 1 || b.diameter() < self.cfg.cluster_resolution {
            return self.refine(b, count as u32).map(|z| vec![z]);
        }
        for f in SPLIT_FRACTIONS {
            let kids = Self::children(b, f);
            let counts: Result<Vec<i64>> = kids.iter().map(|k| self.winding_exact(k)).collect();
            match counts {
                Ok(c) if c.iter().sum::<i64>() == count && c.iter().all(|&x| x >= 0) => {
                    let parts = kids
                        .par_iter()
                        .zip(c.par_iter())
                        .map(|(k, &n)| self.resolve(k, n))
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(parts.into_iter().flatten().collect());
                }
                Ok(_) | Err(Error::BoundaryZeroSuspected { .. }) | Err(Error::QuadratureUnstable(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::QuadratureUnstable(count as f64))
    }

    /// Newton with multiplicity `m` from `seed`, confined to `b`.
    fn newton(&self, b: &Rectangle, seed: Complex64, m: u32) -> Result<Option<Complex64>> {
        let mut s = seed;
        for _ in 0..self.cfg.newton_max_iter {
            let p = eval_point(self.expr, s)?;
            if p.value == Complex64::new(0.0, 0.0) {
                return Ok(Some(s));
            }
            let step = p.value / p.derivative * m as f64;
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Ok(None);
            }
            s -= step;
            if !b.contains(s) {
                return Ok(None);
            }
            if step.norm() < self.cfg.newton_tol {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// Shrink `b` around its zeros by repeated splitting, keeping a child that
    /// still holds all `m` of them.
    fn bisect(&self, b: &Rectangle, m: u32, stop: f64) -> Rectangle {
        let mut cur = *b;
        'outer: while cur.diameter() > stop {
            for f in SPLIT_FRACTIONS {
                let kids = Self::children(&cur, f);
                if let Ok(counts) = kids.iter().map(|k| self.winding_exact(k)).collect::<Result<Vec<_>>>() {
                    if let Some(i) = counts.iter().position(|&c| c == m as i64) {
                        cur = kids[i];
                        continue 'outer;
                    }
                }
            }
            break;
        }
        cur
    }

    fn refine(&self, b: &Rectangle, m: u32) -> Result<ZeroRecord> {
        let mut rho = self.newton(b, b.center(), m)?;
        let mut home = *b;
        if rho.is_none() {
            home = self.bisect(b, m, (1e-3 * b.diameter()).max(self.cfg.cluster_resolution * 1e-3));
            rho = self.newton(b, home.center(), m)?;
        }
        let rho = rho.unwrap_or_else(|| home.center());
        let p = eval_point(self.expr, rho)?;
        let residual = p.value.norm();
        if residual > self.cfg.residual_tol * p.scale.max(1.0) {
            return Err(Error::CertificationFailed(rho));
        }
        let base = if b.diameter() < self.cfg.cluster_resolution {
            b.diameter()
        } else {
            (0.5 * b.edge_distance(rho)).clamp(1e-10, 0.1)
        };
        for r in [base, 0.5 * base, 0.1 * base] {
            match self.circle_winding(rho, r) {
                Ok(w) if w == m as i64 => {
                    return Ok(ZeroRecord { rho, multiplicity: m, residual, box_radius: r });
                }
                Ok(_) | Err(Error::BoundaryZeroSuspected { .. }) | Err(Error::QuadratureUnstable(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Err(Error::CertificationFailed(rho))
    }
}

/// Number of zeros of `F` in the disk `|s + 2n| < epsilon`; the radius is
/// nudged by ±5% steps if a zero lies on the circle.
pub fn trivial_cluster_count(expr: &FExpression, n: u32, epsilon: f64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidRequest("n must be at least 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidRequest("epsilon must lie in (0, 1)".into()));
    }
    let finder = ZeroFinder::new(expr);
    let center = Complex64::new(-2.0 * n as f64, 0.0);
    let mut last = None;
    for k in 0..=finder.cfg.max_nudges {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let r = epsilon * (1.0 + sign * 0.05 * k.div_ceil(2) as f64);
        match finder.circle_winding(center, r) {
            Ok(w) => return Ok(w),
            Err(e @ Error::BoundaryZeroSuspected { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::QuadratureUnstable(f64::NAN)))
}

pub fn winding_count(expr: &FExpression, rect: &Rectangle) -> Result<i64> {
    ZeroFinder::new(expr).winding_count(rect)
}

pub fn locate_zeros(expr: &FExpression, rect: &Rectangle) -> Result<Vec<ZeroRecord>> {
    ZeroFinder::new(expr).locate_zeros(rect)
}
