//! Second-order Riccati equations, their potential data, Legendre maps and
//! the Hamiltonian system on the half-plane `p < 0`.
//!
//! A model is primarily parametrized by the potential
//! `U(t, x) = a0(t) + a1(t) x + a2(t) x^2`. The Lagrangian `L = 1/(v + U)`
//! has Euler-Lagrange equation
//!
//! ```text
//! x'' + (f0 + f1 x) x' + c0 + c1 x + c2 x^2 + c3 x^3 = 0
//! ```
//!
//! with `c3 = a2^2`, `c2 = a2' + 3/2 a1 a2`, `c1 = a1' + a1^2/2 + a0 a2`,
//! `c0 = a0' + a0 a1 / 2`, `f1 = 3 a2` and `f0 = 3/2 a1`.

use crate::timefn::{TimeExpr, TimeFn};
use crate::{Error, Result};

/// A point `(x, p)` of momentum phase space. Operations require `p < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }

    pub fn checked(x: f64, p: f64) -> Result<Self> {
        let s = Self { x, p };
        s.require_domain()?;
        Ok(s)
    }

    pub fn require_domain(&self) -> Result<()> {
        if self.p < 0.0 && self.x.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "phase point ({}, {}) requires p < 0",
                self.x, self.p
            )))
        }
    }

    /// `sqrt(-p)`
    pub fn root(&self) -> f64 {
        (-self.p).sqrt()
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.p]
    }

    pub fn from_array(s: [f64; 2]) -> Self {
        Self { x: s[0], p: s[1] }
    }
}

/// A point `(x, v)` of velocity phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangianPoint {
    pub x: f64,
    pub v: f64,
}

impl LagrangianPoint {
    pub const fn new(x: f64, v: f64) -> Self {
        Self { x, v }
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.v]
    }

    pub fn from_array(s: [f64; 2]) -> Self {
        Self { x: s[0], v: s[1] }
    }
}

/// `U`, `dU/dx` and `dU/dt` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValue {
    pub u: f64,
    pub du_dx: f64,
    pub du_dt: f64,
}

/// The coefficients `(a0, a1, a2)` of `U(t, x) = a0 + a1 x + a2 x^2`.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub a0: TimeExpr,
    pub a1: TimeExpr,
    pub a2: TimeExpr,
}

impl PotentialSpec {
    pub fn new(a0: impl Into<TimeExpr>, a1: impl Into<TimeExpr>, a2: impl Into<TimeExpr>) -> Self {
        Self {
            a0: a0.into(),
            a1: a1.into(),
            a2: a2.into(),
        }
    }

    /// Time-independent potential.
    pub fn constant(a0: f64, a1: f64, a2: f64) -> Self {
        Self::new(
            TimeFn::constant(a0),
            TimeFn::constant(a1),
            TimeFn::constant(a2),
        )
    }

    pub fn coefficients(&self, t: f64) -> [f64; 3] {
        [self.a0.value(t), self.a1.value(t), self.a2.value(t)]
    }

    pub fn eval_u(&self, t: f64, x: f64) -> PotentialValue {
        let a0 = self.a0.jet(t, 1);
        let a1 = self.a1.jet(t, 1);
        let a2 = self.a2.jet(t, 1);
        PotentialValue {
            u: a0[0] + a1[0] * x + a2[0] * x * x,
            du_dx: a1[0] + 2.0 * a2[0] * x,
            du_dt: a0[1] + a1[1] * x + a2[1] * x * x,
        }
    }

    fn u(&self, t: f64, x: f64) -> f64 {
        let [a0, a1, a2] = self.coefficients(t);
        a0 + a1 * x + a2 * x * x
    }

    /// Right-hand side of the Hamilton equations without the domain check;
    /// yields NaN for `p >= 0`.
    pub fn hamilton_field(&self, t: f64, x: f64, p: f64) -> [f64; 2] {
        let [a0, a1, a2] = self.coefficients(t);
        [
            1.0 / (-p).sqrt() - a0 - a1 * x - a2 * x * x,
            p * (a1 + 2.0 * a2 * x),
        ]
    }

    /// `(dx/dt, dp/dt) = (1/sqrt(-p) - U, p dU/dx)`.
    pub fn hamilton_rhs(&self, t: f64, s: PhasePoint) -> Result<[f64; 2]> {
        s.require_domain()?;
        Ok(self.hamilton_field(t, s.x, s.p))
    }

    /// `h(t, x, p) = -2 sqrt(-p) - p U(t, x)`.
    pub fn hamiltonian(&self, t: f64, s: PhasePoint) -> Result<f64> {
        s.require_domain()?;
        Ok(-2.0 * s.root() - s.p * self.u(t, s.x))
    }

    /// `p = dL/dv = -1/(v + U)^2`, restricted to the branch `v + U > 0`.
    pub fn legendre_forward(&self, t: f64, s: LagrangianPoint) -> Result<PhasePoint> {
        let w = s.v + self.u(t, s.x);
        if !(w > 0.0) {
            return Err(Error::domain(format!(
                "v + U = {w} at (x, v) = ({}, {}); the Legendre map needs v + U > 0",
                s.x, s.v
            )));
        }
        Ok(PhasePoint::new(s.x, -1.0 / (w * w)))
    }

    /// `v = 1/sqrt(-p) - U`.
    pub fn legendre_inverse(&self, t: f64, s: PhasePoint) -> Result<LagrangianPoint> {
        s.require_domain()?;
        Ok(LagrangianPoint::new(s.x, 1.0 / s.root() - self.u(t, s.x)))
    }

    /// Coefficients of the second-order Riccati equation generated by this
    /// potential. Requires `a2 > 0` at every grid time.
    pub fn to_riccati(&self, grid: &[f64]) -> Result<RiccatiSpec> {
        for &t in grid {
            let a2 = self.a2.value(t);
            if !(a2 > 0.0) {
                return Err(Error::domain(format!("a2({t}) = {a2}; need a2 > 0")));
            }
        }
        let (a0, a1, a2) = (&self.a0, &self.a1, &self.a2);
        let half_a1 = a1.scale(0.5);
        Ok(RiccatiSpec {
            c0: a0.derivative() + &half_a1 * a0,
            c1: a1.derivative() + (&half_a1 * a1 + a0 * a2),
            c2: a2.derivative() + (a1 * a2).scale(1.5),
            c3: a2 * a2,
            f0: a1.scale(1.5),
            f1: a2.scale(3.0),
        })
    }
}

/// Coefficients `c0..c3` of a second-order Riccati equation together with
/// the friction coefficients `f0`, `f1`.
#[derive(Debug, Clone)]
pub struct RiccatiSpec {
    pub c0: TimeExpr,
    pub c1: TimeExpr,
    pub c2: TimeExpr,
    pub c3: TimeExpr,
    pub f0: TimeExpr,
    pub f1: TimeExpr,
}

/// Pointwise values of a [`RiccatiSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiValues {
    pub c: [f64; 4],
    pub f0: f64,
    pub f1: f64,
}

impl RiccatiSpec {
    /// Builds the equation from `c0..c3`, deriving `f1 = 3 sqrt(c3)` and
    /// `f0 = c2/sqrt(c3) - c3'/(2 c3)`.
    pub fn new(
        c0: impl Into<TimeExpr>,
        c1: impl Into<TimeExpr>,
        c2: impl Into<TimeExpr>,
        c3: impl Into<TimeExpr>,
    ) -> Self {
        let (c0, c1, c2, c3) = (c0.into(), c1.into(), c2.into(), c3.into());
        let (f0, f1) = Self::constrained_friction(&c2, &c3);
        Self {
            c0,
            c1,
            c2,
            c3,
            f0,
            f1,
        }
    }

    fn constrained_friction(c2: &TimeExpr, c3: &TimeExpr) -> (TimeExpr, TimeExpr) {
        let root = c3.sqrt();
        let f0 = c2 / &root - &c3.derivative() / &c3.scale(2.0);
        (f0, root.scale(3.0))
    }

    pub fn values(&self, t: f64) -> RiccatiValues {
        RiccatiValues {
            c: [
                self.c0.value(t),
                self.c1.value(t),
                self.c2.value(t),
                self.c3.value(t),
            ],
            f0: self.f0.value(t),
            f1: self.f1.value(t),
        }
    }

    /// Relative defects `(f1, f0)` of the stored friction coefficients
    /// against `3 sqrt(c3)` and `c2/sqrt(c3) - c3'/(2 c3)`.
    pub fn constraint_residuals(&self, t: f64) -> (f64, f64) {
        let (f0, f1) = Self::constrained_friction(&self.c2, &self.c3);
        let rel = |stored: f64, formula: f64| (stored - formula).abs() / formula.abs().max(1.0);
        (
            rel(self.f1.value(t), f1.value(t)),
            rel(self.f0.value(t), f0.value(t)),
        )
    }

    pub fn require_positive_c3(&self, grid: &[f64]) -> Result<()> {
        for &t in grid {
            let c3 = self.c3.value(t);
            if !(c3 > 0.0) {
                return Err(Error::domain(format!("c3({t}) = {c3}; need c3 > 0")));
            }
        }
        Ok(())
    }

    /// Recovers the potential from `c1, c2, c3` and reports the sup over the
    /// grid of the `c0` consistency defect `|c0 - a0' - a0 a1 / 2|`.
    pub fn to_potential(&self, grid: &[f64]) -> Result<(PotentialSpec, f64)> {
        self.require_positive_c3(grid)?;
        let a2 = self.c3.sqrt();
        let a1 = (&self.c2 / &a2 - &self.c3.derivative() / &self.c3.scale(2.0)).scale(2.0 / 3.0);
        let a0 = (&(&self.c1 - &a1.derivative()) - &(&a1 * &a1).scale(0.5)) / a2.clone();
        let defect = &(&self.c0 - &a0.derivative()) - &(&a0 * &a1).scale(0.5);
        let residual = grid
            .iter()
            .map(|&t| defect.value(t).abs())
            .fold(0.0, f64::max);
        Ok((PotentialSpec { a0, a1, a2 }, residual))
    }

    /// `(dx/dt, dv/dt)` of the second-order equation written as a first-order system.
    pub fn riccati2_rhs(&self, t: f64, s: LagrangianPoint) -> [f64; 2] {
        let RiccatiValues { c, f0, f1 } = self.values(t);
        let x = s.x;
        let forcing = c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        [s.v, -(f0 + f1 * x) * s.v - forcing]
    }
}

/// `n` equally spaced times covering `[t0, t1]`, endpoints included.
pub fn linspace(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t0],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    t1
                } else {
                    t0 + (t1 - t0) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
