//! Adaptive Dormand-Prince 5(4) integration with domain guards and
//! cubic Hermite dense output.

use crate::model::{LagrangianPoint, PhasePoint, PotentialSpec, RiccatiSpec};
use crate::{Error, Result};

/// Hamiltonian trajectories must keep `p <= -P_GUARD`.
pub const P_GUARD: f64 = 1e-9;

/// Width in `t` to which a guard crossing is localized before giving up.
pub const GUARD_RESOLUTION: f64 = 1e-10;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// 5th minus embedded 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemTag {
    Hamiltonian,
    Riccati2,
    /// Several copies of the Hamiltonian system advanced together.
    Prolonged,
    Custom,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<const N: usize> {
    pub t: f64,
    pub state: [f64; N],
    pub deriv: [f64; N],
}

/// Accepted steps of one integration, in strictly increasing time.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize = 2> {
    pub samples: Vec<Sample<N>>,
    pub system: SystemTag,
    pub stats: Stats,
}

impl<const N: usize> Trajectory<N> {
    pub fn t_start(&self) -> f64 {
        self.samples[0].t
    }

    pub fn t_end(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    pub fn last_state(&self) -> [f64; N] {
        self.samples[self.samples.len() - 1].state
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    /// Cubic Hermite interpolation between the bracketing samples.
    pub fn sample_at(&self, t: f64) -> Result<[f64; N]> {
        let (start, end) = (self.t_start(), self.t_end());
        if !(t >= start && t <= end) {
            return Err(Error::OutOfRange { t, start, end });
        }
        let i = self.samples.partition_point(|s| s.t <= t);
        if i == 0 {
            return Ok(self.samples[0].state);
        }
        let left = &self.samples[i - 1];
        if left.t == t || i == self.samples.len() {
            return Ok(left.state);
        }
        let right = &self.samples[i];
        let h = right.t - left.t;
        let s = (t - left.t) / h;
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        Ok(std::array::from_fn(|k| {
            left.state[k]
                + h01 * (right.state[k] - left.state[k])
                + h * (h10 * left.deriv[k] + h11 * right.deriv[k])
        }))
    }

    pub fn resample(&self, grid: &[f64]) -> Result<Vec<[f64; N]>> {
        grid.iter().map(|&t| self.sample_at(t)).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    /// Used as both absolute and relative tolerance.
    pub tol: f64,
    pub max_steps: usize,
    /// Initial step; chosen automatically when `None`.
    pub h_init: Option<f64>,
    pub h_max: Option<f64>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_steps: 1_000_000,
            h_init: None,
            h_max: None,
        }
    }
}

impl Options {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

fn rms_norm<const N: usize>(v: &[f64; N], scale: &[f64; N]) -> f64 {
    (v.iter()
        .zip(scale)
        .map(|(x, s)| (x / s) * (x / s))
        .sum::<f64>()
        / N as f64)
        .sqrt()
}

fn all_finite<const N: usize>(v: &[f64; N]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Integrates `y' = rhs(t, y)` from `(t0, y0)` to `t1`.
///
/// Every stage state is checked against `guard` before the right-hand side
/// sees it. A failing step is halved until the crossing is localized to
/// [`GUARD_RESOLUTION`], at which point the integration stops with
/// [`Error::GuardViolation`].
pub fn integrate<const N: usize, F, G>(
    mut rhs: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &Options,
    guard: G,
    system: SystemTag,
) -> Result<Trajectory<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    G: Fn(&[f64; N]) -> bool,
{
    if !(t1 > t0) {
        return Err(Error::domain(format!("need t1 > t0, got [{t0}, {t1}]")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if !guard(&y0) || !all_finite(&y0) {
        return Err(Error::GuardViolation { t_last_valid: t0 });
    }

    let tol = opts.tol;
    let span = t1 - t0;
    let h_max = opts.h_max.unwrap_or(span);
    let mut stats = Stats::default();
    let mut f0 = rhs(t0, &y0);
    stats.rhs_evals += 1;
    if !all_finite(&f0) {
        return Err(Error::GuardViolation { t_last_valid: t0 });
    }

    let mut h = match opts.h_init {
        Some(h) => h,
        None => initial_step(&mut rhs, t0, &y0, &f0, tol, &mut stats),
    }
    .min(h_max)
    .min(span);

    let mut samples = vec![Sample {
        t: t0,
        state: y0,
        deriv: f0,
    }];
    let (mut t, mut y) = (t0, y0);
    let mut err_old: f64 = 1e-4;
    let mut last_rejected = false;

    const BETA: f64 = 0.04;
    const EXPO: f64 = 0.2 - BETA * 0.75;
    const SAFE: f64 = 0.9;

    while t < t1 {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::TooManySteps {
                max_steps: opts.max_steps,
                t,
            });
        }
        if t + h >= t1 || t + 1.01 * h >= t1 {
            h = t1 - t;
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t });
        }

        match try_step(&mut rhs, &guard, t, &y, &f0, h, &mut stats) {
            StepOutcome::Blocked { overflow } => {
                if !overflow && h <= GUARD_RESOLUTION {
                    return Err(Error::GuardViolation { t_last_valid: t });
                }
                stats.rejected += 1;
                h *= 0.5;
                last_rejected = true;
            }
            StepOutcome::Done { y_new, f_new, err } => {
                let scale: [f64; N] =
                    std::array::from_fn(|i| tol + tol * y[i].abs().max(y_new[i].abs()));
                let err = rms_norm(&err, &scale);
                let fac11 = err.powf(EXPO);
                if err <= 1.0 {
                    let mut fac = fac11 / err_old.powf(BETA);
                    fac = (fac / SAFE).clamp(0.1, 5.0);
                    let mut h_new = h / fac;
                    if last_rejected {
                        h_new = h_new.min(h);
                    }
                    err_old = err.max(1e-4);
                    t = if t1 - (t + h) <= 0.0 { t1 } else { t + h };
                    y = y_new;
                    f0 = f_new;
                    samples.push(Sample {
                        t,
                        state: y,
                        deriv: f0,
                    });
                    stats.accepted += 1;
                    last_rejected = false;
                    h = h_new.min(h_max);
                } else {
                    stats.rejected += 1;
                    h /= (fac11 / SAFE).min(5.0);
                    last_rejected = true;
                }
            }
        }
    }

    Ok(Trajectory {
        samples,
        system,
        stats,
    })
}

enum StepOutcome<const N: usize> {
    /// A stage left the guarded set, or produced non-finite values (`overflow`).
    Blocked { overflow: bool },
    Done {
        y_new: [f64; N],
        f_new: [f64; N],
        err: [f64; N],
    },
}

fn try_step<const N: usize, F, G>(
    rhs: &mut F,
    guard: &G,
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    stats: &mut Stats,
) -> StepOutcome<N>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    G: Fn(&[f64; N]) -> bool,
{
    let mut overflow = false;
    let mut eval = |tt: f64, yy: [f64; N]| -> Option<[f64; N]> {
        if !all_finite(&yy) {
            overflow = true;
            return None;
        }
        if !guard(&yy) {
            return None;
        }
        stats.rhs_evals += 1;
        let k = rhs(tt, &yy);
        if !all_finite(&k) {
            overflow = true;
            return None;
        }
        Some(k)
    };
    let stages = (|| {
        let k2 = eval(t + C2 * h, axpy(y, h, &[(A21, k1)]))?;
        let k3 = eval(t + C3 * h, axpy(y, h, &[(A31, k1), (A32, &k2)]))?;
        let k4 = eval(t + C4 * h, axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = eval(
            t + C5 * h,
            axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        )?;
        let k6 = eval(
            t + h,
            axpy(
                y,
                h,
                &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        )?;
        let y_new = axpy(
            y,
            h,
            &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = eval(t + h, y_new)?;
        let err: [f64; N] = std::array::from_fn(|i| {
            h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
        });
        Some((y_new, k7, err))
    })();
    match stages {
        Some((y_new, f_new, err)) => StepOutcome::Done { y_new, f_new, err },
        None => StepOutcome::Blocked { overflow },
    }
}

/// Starting step from the norms of the state, the field and a trial second derivative.
fn initial_step<const N: usize, F>(
    rhs: &mut F,
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    tol: f64,
    stats: &mut Stats,
) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let scale: [f64; N] = std::array::from_fn(|i| tol + tol * y0[i].abs());
    let d0 = rms_norm(y0, &scale);
    let d1 = rms_norm(f0, &scale);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1 = axpy(y0, h0, &[(1.0, f0)]);
    let f1 = rhs(t0 + h0, &y1);
    stats.rhs_evals += 1;
    let diff: [f64; N] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = rms_norm(&diff, &scale) / h0;
    let h1 = if !d2.is_finite() {
        h0
    } else if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

fn hamiltonian_guard(s: &[f64; 2]) -> bool {
    s[1] <= -P_GUARD
}

/// Integrates the Hamilton equations of `potential` from `ic` at `t0` to `t1`.
pub fn integrate_hamiltonian(
    potential: &PotentialSpec,
    t0: f64,
    ic: PhasePoint,
    t1: f64,
    opts: &Options,
) -> Result<Trajectory<2>> {
    ic.require_domain()?;
    integrate(
        |t, s| potential.hamilton_field(t, s[0], s[1]),
        t0,
        ic.to_array(),
        t1,
        opts,
        hamiltonian_guard,
        SystemTag::Hamiltonian,
    )
}

/// Integrates the second-order Riccati equation as a first-order system in `(x, v)`.
pub fn integrate_riccati2(
    riccati: &RiccatiSpec,
    t0: f64,
    ic: LagrangianPoint,
    t1: f64,
    opts: &Options,
) -> Result<Trajectory<2>> {
    integrate(
        |t, s| riccati.riccati2_rhs(t, LagrangianPoint::from_array(*s)),
        t0,
        ic.to_array(),
        t1,
        opts,
        |_| true,
        SystemTag::Riccati2,
    )
}

/// Advances `N / 2` copies of the Hamiltonian system as one state
/// `(x_1, p_1, x_2, p_2, ...)`, so that all copies share output times.
pub fn integrate_prolonged<const N: usize>(
    potential: &PotentialSpec,
    t0: f64,
    ics: &[PhasePoint],
    t1: f64,
    opts: &Options,
) -> Result<Trajectory<N>> {
    if N != 2 * ics.len() {
        return Err(Error::domain(format!(
            "state dimension {N} does not match {} copies",
            ics.len()
        )));
    }
    for ic in ics {
        ic.require_domain()?;
    }
    let y0: [f64; N] = std::array::from_fn(|i| {
        if i % 2 == 0 {
            ics[i / 2].x
        } else {
            ics[i / 2].p
        }
    });
    integrate(
        |t, s| {
            let mut out = [0.0; N];
            for c in 0..N / 2 {
                let [dx, dp] = potential.hamilton_field(t, s[2 * c], s[2 * c + 1]);
                out[2 * c] = dx;
                out[2 * c + 1] = dp;
            }
            out
        },
        t0,
        y0,
        t1,
        opts,
        |s| (0..N / 2).all(|c| s[2 * c + 1] <= -P_GUARD),
        SystemTag::Prolonged,
    )
}

impl<const N: usize> Trajectory<N> {
    /// The `copy`-th `(x, p)` pair of a prolonged trajectory as its own trajectory.
    pub fn copy_component(&self, copy: usize) -> Trajectory<2> {
        let (i, j) = (2 * copy, 2 * copy + 1);
        Trajectory {
            samples: self
                .samples
                .iter()
                .map(|s| Sample {
                    t: s.t,
                    state: [s.state[i], s.state[j]],
                    deriv: [s.deriv[i], s.deriv[j]],
                })
                .collect(),
            system: SystemTag::Hamiltonian,
            stats: self.stats,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical_exact(t: f64) -> [f64; 2] {
        let q = 1.0 + t * t;
        [2.0 * t / q, -q * q / 4.0]
    }

    #[test]
    fn zero_field_is_constant() {
        let traj = integrate(
            |_, _| [0.0, 0.0],
            0.0,
            [1.0, -1.0],
            5.0,
            &Options::default(),
            |_| true,
            SystemTag::Custom,
        )
        .unwrap();
        assert!(traj.samples.iter().all(|s| s.state == [1.0, -1.0]));
        assert_eq!(traj.t_end(), 5.0);
        assert_eq!(traj.sample_at(2.345).unwrap(), [1.0, -1.0]);
    }

    #[test]
    fn free_motion_is_linear() {
        let free = PotentialSpec::constant(0.0, 0.0, 0.0);
        let traj = integrate_hamiltonian(
            &free,
            0.0,
            PhasePoint::new(0.0, -1.0),
            2.0,
            &Options::default(),
        )
        .unwrap();
        for s in &traj.samples {
            assert!((s.state[0] - s.t).abs() <= 1e-10);
            assert_eq!(s.state[1], -1.0);
        }
        let mid = traj.sample_at(0.37).unwrap();
        assert!((mid[0] - 0.37).abs() <= 1e-12);
        assert_eq!(mid[1], -1.0);
    }

    #[test]
    fn canonical_solution_endpoint() {
        let c = PotentialSpec::constant(0.0, 0.0, 1.0);
        let traj = integrate_hamiltonian(
            &c,
            0.0,
            PhasePoint::new(0.0, -0.25),
            1.0,
            &Options::default(),
        )
        .unwrap();
        let [x, p] = traj.last_state();
        assert!(
            (x - 1.0).abs() <= 1e-8 && (p + 1.0).abs() <= 1e-8,
            "{x} {p}"
        );
        for s in &traj.samples {
            let e = canonical_exact(s.t);
            assert!((s.state[0] - e[0]).abs() <= 1e-8);
            assert!((s.state[1] - e[1]).abs() <= 1e-8);
        }
    }

    #[test]
    fn stored_derivatives_match_field() {
        let c = PotentialSpec::constant(0.3, -0.2, 1.0);
        let traj = integrate_hamiltonian(
            &c,
            0.0,
            PhasePoint::new(0.5, -1.0),
            1.0,
            &Options::default(),
        )
        .unwrap();
        for s in &traj.samples {
            assert_eq!(s.deriv, c.hamilton_field(s.t, s.state[0], s.state[1]));
        }
        assert!(traj.samples.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn hermite_reproduces_nodes_and_range() {
        let c = PotentialSpec::constant(0.0, 0.0, 1.0);
        let traj = integrate_hamiltonian(
            &c,
            0.0,
            PhasePoint::new(0.0, -0.25),
            1.0,
            &Options::default(),
        )
        .unwrap();
        for s in &traj.samples {
            assert_eq!(traj.sample_at(s.t).unwrap(), s.state);
        }
        assert!(matches!(traj.sample_at(1.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            traj.sample_at(-0.1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn guard_violation_is_reported() {
        // p' = 1 crosses p = 0 at t = 1.
        let err = integrate(
            |_, _| [0.0, 1.0],
            0.0,
            [0.0, -1.0],
            2.0,
            &Options::default(),
            hamiltonian_guard,
            SystemTag::Custom,
        )
        .unwrap_err();
        match err {
            Error::GuardViolation { t_last_valid } => {
                assert!((t_last_valid - 1.0).abs() < 1e-8, "{t_last_valid}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_time_blowup_underflows() {
        // x' = x^2 from x(0) = 1 has a pole at t = 1.
        let err = integrate(
            |_, s| [s[0] * s[0]],
            0.0,
            [1.0],
            2.0,
            &Options::with_tol(1e-8),
            |_| true,
            SystemTag::Custom,
        )
        .unwrap_err();
        match err {
            Error::StepUnderflow { t } => assert!((t - 1.0).abs() < 1e-3, "{t}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = PotentialSpec::constant(0.0, 0.0, 1.0);
        assert!(
            integrate_hamiltonian(&c, 0.0, PhasePoint::new(0.0, 1.0), 1.0, &Options::default())
                .is_err()
        );
        assert!(
            integrate_hamiltonian(
                &c,
                1.0,
                PhasePoint::new(0.0, -1.0),
                1.0,
                &Options::default()
            )
            .is_err()
        );
        let bad = integrate_prolonged::<6>(
            &c,
            0.0,
            &[PhasePoint::new(0.0, -1.0)],
            1.0,
            &Options::default(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn prolonged_copies_match_single_runs() {
        let c = PotentialSpec::constant(0.1, 0.2, 1.0);
        let ics = [PhasePoint::new(0.0, -0.25), PhasePoint::new(0.5, -2.0)];
        let joint = integrate_prolonged::<4>(&c, 0.0, &ics, 1.0, &Options::default()).unwrap();
        for (copy, ic) in ics.iter().enumerate() {
            let single = integrate_hamiltonian(&c, 0.0, *ic, 1.0, &Options::default()).unwrap();
            let a = joint.copy_component(copy).last_state();
            let b = single.last_state();
            assert!((a[0] - b[0]).abs() < 1e-8 && (a[1] - b[1]).abs() < 1e-8);
        }
    }
}
