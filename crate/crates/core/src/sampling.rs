//! Seeded random potentials, phase points and tuples for randomized checks.

use std::f64::consts::TAU;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::model::{PhasePoint, PotentialSpec};
use crate::superpose::{PhaseTuple, integral_f0};
use crate::timefn::TimeFn;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Potential coefficients kept as plain [`TimeFn`]s so they can be printed.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomPotential {
    pub a0: TimeFn,
    pub a1: TimeFn,
    pub a2: TimeFn,
}

impl RandomPotential {
    pub fn spec(&self) -> PotentialSpec {
        PotentialSpec::new(self.a0.clone(), self.a1.clone(), self.a2.clone())
    }
}

/// Polynomial-plus-trigonometric coefficients with `a2 >= 0.6` for
/// `t` in `[-1, 2]`.
pub fn random_potential(rng: &mut StdRng) -> RandomPotential {
    let mut u = |lo: f64, hi: f64| rng.random_range(lo..hi);
    let a0 = TimeFn::poly(vec![u(-0.5, 0.5), u(-0.3, 0.3)])
        + TimeFn::sin(u(0.0, 0.3), u(0.5, 2.0), u(0.0, TAU));
    let a1 = TimeFn::poly(vec![u(-0.5, 0.5), u(-0.2, 0.2)])
        + TimeFn::cos(u(0.0, 0.3), u(0.5, 2.0), u(0.0, TAU));
    let a2 = TimeFn::poly(vec![u(1.0, 1.5), u(-0.1, 0.1)])
        + TimeFn::sin(u(0.0, 0.2), u(0.5, 2.0), u(0.0, TAU));
    RandomPotential { a0, a1, a2 }
}

/// A point with `x` in `[x_lo, x_hi]` and `p` in `[-4, -0.25]`.
pub fn random_phase_point(rng: &mut StdRng, x_lo: f64, x_hi: f64) -> PhasePoint {
    PhasePoint::new(rng.random_range(x_lo..x_hi), rng.random_range(-4.0..-0.25))
}

/// Initial conditions for dynamical checks; the `x` range keeps solutions
/// of the random potentials bounded on `[0, 2]`.
pub fn random_initial_condition(rng: &mut StdRng) -> PhasePoint {
    random_phase_point(rng, -0.5, 1.0)
}

/// A tuple with `|x| <= 3`, `p` in `[-4, -0.25]` whose particular solutions
/// are comfortably generic: `|F0| >= min_f0`.
pub fn random_generic_tuple(rng: &mut StdRng, min_f0: f64) -> PhaseTuple {
    loop {
        let mut draw = || random_phase_point(rng, -3.0, 3.0);
        let tuple = PhaseTuple::new(draw(), draw(), draw(), draw());
        let f0 = integral_f0(tuple.xi1, tuple.xi2, tuple.xi3).expect("sampled points lie in p < 0");
        if f0.abs() >= min_f0 {
            return tuple;
        }
    }
}
