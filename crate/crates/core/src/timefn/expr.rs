use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::TimeFn;
use super::jet;

/// Arithmetic over [`TimeFn`]s with exact derivatives.
///
/// Derivatives are propagated through truncated Taylor series, so
/// `eval(t, n)` is exact up to rounding for any `n` as long as every
/// intermediate square root and divisor is nonzero at `t`.
#[derive(Debug, Clone)]
pub enum TimeExpr {
    Const(f64),
    Fn(TimeFn),
    Add(Arc<TimeExpr>, Arc<TimeExpr>),
    Sub(Arc<TimeExpr>, Arc<TimeExpr>),
    Mul(Arc<TimeExpr>, Arc<TimeExpr>),
    Div(Arc<TimeExpr>, Arc<TimeExpr>),
    Scale(f64, Arc<TimeExpr>),
    Sqrt(Arc<TimeExpr>),
    Derivative(Arc<TimeExpr>),
}

impl TimeExpr {
    pub fn constant(c: f64) -> Self {
        TimeExpr::Const(c)
    }

    pub fn sqrt(&self) -> Self {
        TimeExpr::Sqrt(Arc::new(self.clone()))
    }

    pub fn derivative(&self) -> Self {
        TimeExpr::Derivative(Arc::new(self.clone()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        TimeExpr::Scale(factor, Arc::new(self.clone()))
    }

    /// The `order`-th derivative at `t`.
    pub fn eval(&self, t: f64, order: usize) -> f64 {
        self.jet(t, order)[order] * jet::factorial(order)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.eval(t, 0)
    }

    /// Normalized Taylor coefficients `f^(k)(t)/k!`, `k = 0..=order`.
    pub fn jet(&self, t: f64, order: usize) -> Vec<f64> {
        match self {
            TimeExpr::Const(c) => {
                let mut out = vec![0.0; order + 1];
                out[0] = *c;
                out
            }
            TimeExpr::Fn(f) => (0..=order)
                .map(|k| f.eval(t, k) / jet::factorial(k))
                .collect(),
            TimeExpr::Add(a, b) => zip(&a.jet(t, order), &b.jet(t, order), |x, y| x + y),
            TimeExpr::Sub(a, b) => zip(&a.jet(t, order), &b.jet(t, order), |x, y| x - y),
            TimeExpr::Mul(a, b) => jet::mul(&a.jet(t, order), &b.jet(t, order)),
            TimeExpr::Div(a, b) => jet::div(&a.jet(t, order), &b.jet(t, order)),
            TimeExpr::Scale(s, a) => a.jet(t, order).into_iter().map(|x| s * x).collect(),
            TimeExpr::Sqrt(a) => jet::sqrt(&a.jet(t, order)),
            TimeExpr::Derivative(a) => jet::derivative(&a.jet(t, order + 1)),
        }
    }
}

fn zip(a: &[f64], b: &[f64], op: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

impl From<TimeFn> for TimeExpr {
    fn from(f: TimeFn) -> Self {
        TimeExpr::Fn(f)
    }
}

impl From<f64> for TimeExpr {
    fn from(c: f64) -> Self {
        TimeExpr::Const(c)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for TimeExpr {
            type Output = TimeExpr;
            fn $method(self, rhs: TimeExpr) -> TimeExpr {
                TimeExpr::$variant(Arc::new(self), Arc::new(rhs))
            }
        }

        impl $tr for &TimeExpr {
            type Output = TimeExpr;
            fn $method(self, rhs: &TimeExpr) -> TimeExpr {
                TimeExpr::$variant(Arc::new(self.clone()), Arc::new(rhs.clone()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for TimeExpr {
    type Output = TimeExpr;
    fn neg(self) -> TimeExpr {
        TimeExpr::Scale(-1.0, Arc::new(self))
    }
}

impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeExpr::Const(c) => write!(f, "{c:?}"),
            TimeExpr::Fn(g) => write!(f, "[{g}]"),
            TimeExpr::Add(a, b) => write!(f, "({a} + {b})"),
            TimeExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            TimeExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            TimeExpr::Div(a, b) => write!(f, "{a}/{b}"),
            TimeExpr::Scale(s, a) => write!(f, "{s:?}*{a}"),
            TimeExpr::Sqrt(a) => write!(f, "sqrt({a})"),
            TimeExpr::Derivative(a) => write!(f, "d/dt({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn product_rule_through_third_order() {
        // t * sin t
        let f = TimeExpr::from(TimeFn::poly(vec![0.0, 1.0]))
            * TimeExpr::from(TimeFn::sin(1.0, 1.0, 0.0));
        let t: f64 = 0.7;
        assert!(close(f.eval(t, 0), t * t.sin(), 1e-15));
        assert!(close(f.eval(t, 1), t.sin() + t * t.cos(), 1e-15));
        assert!(close(f.eval(t, 2), 2.0 * t.cos() - t * t.sin(), 1e-14));
        assert!(close(f.eval(t, 3), -3.0 * t.sin() - t * t.cos(), 1e-14));
    }

    #[test]
    fn quotient_and_root() {
        // sqrt(e^{2t}) = e^t, and e^t / e^t = 1
        let e2 = TimeExpr::from(TimeFn::exp(1.0, 2.0));
        let root = e2.sqrt();
        let t: f64 = -0.4;
        for k in 0..4 {
            assert!(close(root.eval(t, k), t.exp(), 1e-14));
        }
        let one = &root / &root;
        assert!(close(one.eval(t, 0), 1.0, 1e-15));
        assert!(one.eval(t, 2).abs() < 1e-14);
    }

    #[test]
    fn nested_derivative() {
        // d/dt (t^3) = 3t^2; its second derivative is 6
        let cube = TimeExpr::from(TimeFn::poly(vec![0.0, 0.0, 0.0, 1.0]));
        let d = cube.derivative();
        assert_eq!(d.eval(2.0, 0), 12.0);
        assert_eq!(d.eval(2.0, 2), 6.0);
        assert_eq!(d.derivative().eval(5.0, 1), 6.0);
    }
}
