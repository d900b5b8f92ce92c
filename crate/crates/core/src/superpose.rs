//! First integrals on four copies of phase space and the superposition rule.
//!
//! For copies `ξ_i = (x_i, p_i)` and `s_i = sqrt(-p_i)` the integrals are
//!
//! ```text
//! F0 = (x2 - x3) s2 s3 + (x3 - x1) s3 s1 + (x1 - x2) s1 s2
//! F1 = (x1 - x2) s1 s2 + (x2 - x0) s2 s0 + (x0 - x1) s0 s1
//! F2 = (x1 - x3) s1 s3 + (x3 - x0) s3 s0 + (x0 - x1) s0 s1
//! ```
//!
//! Fixing `F1 = k1`, `F2 = k2` and solving for copy 0 gives the general
//! solution in terms of the three particular solutions in copies 1..3.

use crate::integrator::Trajectory;
use crate::model::PhasePoint;
use crate::{Error, Result};

/// Four points of phase space; copy 0 is the unknown slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTuple {
    pub xi0: PhasePoint,
    pub xi1: PhasePoint,
    pub xi2: PhasePoint,
    pub xi3: PhasePoint,
}

impl PhaseTuple {
    pub fn new(xi0: PhasePoint, xi1: PhasePoint, xi2: PhasePoint, xi3: PhasePoint) -> Self {
        Self { xi0, xi1, xi2, xi3 }
    }
}

/// Values `k1 = F1`, `k2 = F2` plus `F0`, which depends on copies 1..3 only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub k1: f64,
    pub k2: f64,
    pub f0: f64,
}

impl Constants {
    pub fn new(k1: f64, k2: f64, f0: f64) -> Self {
        Self { k1, k2, f0 }
    }
}

/// Relative threshold below which `F0` and the rule's denominator count as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Genericity {
    pub eps: f64,
}

impl Default for Genericity {
    fn default() -> Self {
        Self { eps: 1e-12 }
    }
}

/// The cyclic three-copy form shared by all three integrals.
fn cyclic(a: PhasePoint, b: PhasePoint, c: PhasePoint) -> Result<f64> {
    a.require_domain()?;
    b.require_domain()?;
    c.require_domain()?;
    let (sa, sb, sc) = (a.root(), b.root(), c.root());
    Ok((b.x - c.x) * sb * sc + (c.x - a.x) * sc * sa + (a.x - b.x) * sa * sb)
}

pub fn integral_f0(xi1: PhasePoint, xi2: PhasePoint, xi3: PhasePoint) -> Result<f64> {
    cyclic(xi1, xi2, xi3)
}

pub fn integral_f1(xi0: PhasePoint, xi1: PhasePoint, xi2: PhasePoint) -> Result<f64> {
    cyclic(xi0, xi1, xi2)
}

pub fn integral_f2(xi0: PhasePoint, xi1: PhasePoint, xi3: PhasePoint) -> Result<f64> {
    cyclic(xi0, xi1, xi3)
}

pub fn constants_from_four(tuple: &PhaseTuple) -> Result<Constants> {
    Ok(Constants {
        k1: integral_f1(tuple.xi0, tuple.xi1, tuple.xi2)?,
        k2: integral_f2(tuple.xi0, tuple.xi1, tuple.xi3)?,
        f0: integral_f0(tuple.xi1, tuple.xi2, tuple.xi3)?,
    })
}

/// Reconstructs copy 0 from copies 1..3 and the constants.
pub fn superpose_point(
    xi1: PhasePoint,
    xi2: PhasePoint,
    xi3: PhasePoint,
    k: &Constants,
    genericity: &Genericity,
) -> Result<PhasePoint> {
    for xi in [xi1, xi2, xi3] {
        xi.require_domain()?;
    }
    let (s1, s2, s3) = (xi1.root(), xi2.root(), xi3.root());
    let Constants { k1, k2, f0 } = *k;

    let x_scale = 1.0 + xi1.x.abs().max(xi2.x.abs()).max(xi3.x.abs());
    let s_max = s1.max(s2).max(s3);
    if !(f0.abs() > genericity.eps * x_scale * s_max * s_max) {
        return Err(Error::genericity(format!(
            "F0 = {f0} vanishes; the three particular solutions are not generic"
        )));
    }

    if k1 == 0.0 && k2 == 0.0 {
        // zero constants select the first solution; skip the rounding of sqrt(-p1)^2
        return Ok(xi1);
    }

    let gamma = |xa: f64, sa: f64, xb: f64, sb: f64| sa * xa - sb * xb;
    let numerator =
        k1 * gamma(xi1.x, s1, xi3.x, s3) + k2 * gamma(xi2.x, s2, xi1.x, s1) - f0 * xi1.x * s1;
    let denominator = k1 * (s1 - s3) + k2 * (s2 - s1) - s1 * f0;
    let den_scale = (2.0 * (k1.abs() + k2.abs()) + f0.abs()) * s_max;
    if !(denominator.abs() > genericity.eps * den_scale) {
        return Err(Error::genericity(format!(
            "denominator of x0 = {denominator} vanishes"
        )));
    }

    let root0 = (k1 / f0) * (s3 - s1) + (k2 / f0) * (s1 - s2) + s1;
    if !(root0 > 0.0) {
        return Err(Error::Branch {
            message: format!("sqrt(-p0) = {root0} is not positive"),
            t: None,
        });
    }
    Ok(PhasePoint::new(numerator / denominator, -root0 * root0))
}

/// Reconstructed solution on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
}

impl Reconstruction {
    /// The projection `(t, x0(t))`, the general solution of the second-order equation.
    pub fn upsilon(&self) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.points)
            .map(|(&t, s)| (t, s.x))
            .collect()
    }
}

/// Applies [`superpose_point`] to three Hamiltonian trajectories at every grid time.
pub fn superpose_trajectory(
    traj1: &Trajectory<2>,
    traj2: &Trajectory<2>,
    traj3: &Trajectory<2>,
    k: &Constants,
    grid: &[f64],
    genericity: &Genericity,
) -> Result<Reconstruction> {
    let mut points = Vec::with_capacity(grid.len());
    for &t in grid {
        let xi1 = PhasePoint::from_array(traj1.sample_at(t)?);
        let xi2 = PhasePoint::from_array(traj2.sample_at(t)?);
        let xi3 = PhasePoint::from_array(traj3.sample_at(t)?);
        points.push(superpose_point(xi1, xi2, xi3, k, genericity).map_err(|e| e.at(t))?);
    }
    Ok(Reconstruction {
        times: grid.to_vec(),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, p: f64) -> PhasePoint {
        PhasePoint::new(x, p)
    }

    const XI0: PhasePoint = PhasePoint::new(0.0, -1.0);
    const XI1: PhasePoint = PhasePoint::new(1.0, -1.0);
    const XI2: PhasePoint = PhasePoint::new(2.0, -4.0);
    const XI3: PhasePoint = PhasePoint::new(3.0, -9.0);

    #[test]
    fn hand_evaluated_integrals() {
        assert_eq!(integral_f0(XI1, XI2, pt(0.0, -1.0)).unwrap(), 1.0);
        assert_eq!(integral_f0(XI1, XI1, pt(0.5, -2.0)).unwrap(), 0.0);
        assert_eq!(integral_f0(XI1, XI2, XI3).unwrap(), -2.0);
        assert_eq!(integral_f1(XI0, XI1, XI2).unwrap(), 1.0);
        assert_eq!(integral_f2(XI0, XI1, XI3).unwrap(), 2.0);
        assert_eq!(integral_f1(XI1, XI1, XI2).unwrap(), 0.0);
        assert!(integral_f2(XI0, pt(0.0, 0.0), XI3).is_err());
    }

    #[test]
    fn constants_of_worked_tuple() {
        let k = constants_from_four(&PhaseTuple::new(XI0, XI1, XI2, XI3)).unwrap();
        assert_eq!(k, Constants::new(1.0, 2.0, -2.0));
        let same = constants_from_four(&PhaseTuple::new(XI2, XI2, XI2, XI2)).unwrap();
        assert_eq!(same, Constants::new(0.0, 0.0, 0.0));
        let shared = constants_from_four(&PhaseTuple::new(XI1, XI1, XI2, XI3)).unwrap();
        assert_eq!((shared.k1, shared.k2, shared.f0), (0.0, 0.0, -2.0));
    }

    #[test]
    fn worked_tuple_reconstructs_copy_zero() {
        let out = superpose_point(
            XI1,
            XI2,
            XI3,
            &Constants::new(1.0, 2.0, -2.0),
            &Genericity::default(),
        )
        .unwrap();
        assert_eq!(out, XI0);
    }

    #[test]
    fn zero_constants_select_first_solution() {
        let out = superpose_point(
            XI1,
            XI2,
            XI3,
            &Constants::new(0.0, 0.0, -2.0),
            &Genericity::default(),
        )
        .unwrap();
        assert_eq!(out, XI1);
    }

    #[test]
    fn degenerate_configurations() {
        let g = Genericity::default();
        let f0 = integral_f0(XI1, XI1, XI3).unwrap();
        let err = superpose_point(XI1, XI1, XI3, &Constants::new(1.0, 1.0, f0), &g).unwrap_err();
        assert!(matches!(err, Error::Genericity { .. }));
        // (k1/F0)(s3 - s1) + s1 = (3/-2)(3 - 1) + 1 = -2
        let err = superpose_point(XI1, XI2, XI3, &Constants::new(3.0, 0.0, -2.0), &g).unwrap_err();
        assert!(matches!(err, Error::Branch { .. }), "{err:?}");
        assert!(
            superpose_point(XI1, XI2, pt(0.0, 1.0), &Constants::new(1.0, 1.0, 1.0), &g).is_err()
        );
    }

    #[test]
    fn f0_is_cyclic() {
        let (a, b, c) = (pt(0.3, -0.5), pt(-1.2, -2.5), pt(2.0, -0.3));
        let f = integral_f0(a, b, c).unwrap();
        assert!((integral_f0(b, c, a).unwrap() - f).abs() <= 1e-15 * (1.0 + f.abs()) * 4.0);
        assert!((integral_f0(c, a, b).unwrap() - f).abs() <= 1e-15 * (1.0 + f.abs()) * 4.0);
        assert!((integral_f0(b, a, c).unwrap() + f).abs() <= 1e-14);
    }
}
