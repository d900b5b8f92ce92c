//! Analytic scalar functions of time with exact derivatives.
//!
//! A [`TimeFn`] is a finite sum of polynomial, sine, cosine and exponential
//! terms. The class is closed under differentiation, so derivatives of any
//! order are evaluated in closed form. [`TimeExpr`] builds arithmetic on top
//! of these (products, quotients, square roots, derivatives) and evaluates
//! derivatives through truncated Taylor arithmetic.

mod expr;
mod jet;
mod parse;

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

pub use expr::TimeExpr;
pub use parse::parse_timefn;

use crate::Error;

/// One additive term of a [`TimeFn`].
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// `Σ c_k t^k`, coefficients in increasing degree.
    Poly(Vec<f64>),
    /// `amp · sin(omega·t + phase)`
    Sin { amp: f64, omega: f64, phase: f64 },
    /// `amp · cos(omega·t + phase)`
    Cos { amp: f64, omega: f64, phase: f64 },
    /// `amp · exp(rate·t)`
    Exp { amp: f64, rate: f64 },
}

impl Term {
    pub fn eval(&self, t: f64, order: usize) -> f64 {
        match self {
            Term::Poly(coeffs) => eval_poly_derivative(coeffs, t, order),
            Term::Sin { amp, omega, phase } => {
                let arg = omega * t + phase;
                let scale = amp * omega.powi(order as i32);
                scale
                    * match order % 4 {
                        0 => arg.sin(),
                        1 => arg.cos(),
                        2 => -arg.sin(),
                        _ => -arg.cos(),
                    }
            }
            Term::Cos { amp, omega, phase } => {
                let arg = omega * t + phase;
                let scale = amp * omega.powi(order as i32);
                scale
                    * match order % 4 {
                        0 => arg.cos(),
                        1 => -arg.sin(),
                        2 => -arg.cos(),
                        _ => arg.sin(),
                    }
            }
            Term::Exp { amp, rate } => amp * rate.powi(order as i32) * (rate * t).exp(),
        }
    }
}

/// Horner evaluation of the `order`-th derivative of `Σ c_k t^k`.
fn eval_poly_derivative(coeffs: &[f64], t: f64, order: usize) -> f64 {
    if order >= coeffs.len() {
        return 0.0;
    }
    let mut acc = 0.0;
    for k in (order..coeffs.len()).rev() {
        // k! / (k - order)!
        let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
        acc = acc * t + coeffs[k] * falling;
    }
    acc
}

/// A sum of [`Term`]s. The empty sum is the zero function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeFn {
    terms: Vec<Term>,
}

impl TimeFn {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::poly(vec![c])
    }

    pub fn poly(coeffs: Vec<f64>) -> Self {
        Self::new(vec![Term::Poly(coeffs)])
    }

    pub fn sin(amp: f64, omega: f64, phase: f64) -> Self {
        Self::new(vec![Term::Sin { amp, omega, phase }])
    }

    pub fn cos(amp: f64, omega: f64, phase: f64) -> Self {
        Self::new(vec![Term::Cos { amp, omega, phase }])
    }

    pub fn exp(amp: f64, rate: f64) -> Self {
        Self::new(vec![Term::Exp { amp, rate }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The `order`-th derivative at `t`; `order == 0` is the value.
    pub fn eval(&self, t: f64, order: usize) -> f64 {
        self.terms.iter().map(|term| term.eval(t, order)).sum()
    }

    /// Canonical text form, accepted back by [`parse_timefn`].
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Concatenates the term lists.
impl Add for TimeFn {
    type Output = TimeFn;

    fn add(mut self, rhs: TimeFn) -> TimeFn {
        self.terms.extend(rhs.terms);
        self
    }
}

impl fmt::Display for TimeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "poly 0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            match term {
                Term::Poly(coeffs) => {
                    write!(f, "poly")?;
                    if coeffs.is_empty() {
                        write!(f, " 0")?;
                    }
                    for c in coeffs {
                        write!(f, " {c:?}")?;
                    }
                }
                Term::Sin { amp, omega, phase } => write!(f, "sin {amp:?} {omega:?} {phase:?}")?,
                Term::Cos { amp, omega, phase } => write!(f, "cos {amp:?} {omega:?} {phase:?}")?,
                Term::Exp { amp, rate } => write!(f, "exp {amp:?} {rate:?}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for TimeFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_timefn(s)
    }
}
