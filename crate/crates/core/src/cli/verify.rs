//! Randomized verification suites behind `riccati-lie verify`.

use std::fmt;

use rand::RngExt;
use rand::rngs::StdRng;

use super::config::Scenario;
use crate::Result;
use crate::integrator::{Options, integrate_hamiltonian, integrate_prolonged};
use crate::liealg::{
    DEFAULT_FD_STEP, Direction, GroupElement, StructureConstants, act,
    check_commutation_table_with, combination, compose_subgroup, decompose_rhs_check,
    fundamental_vf, levi_structure_check_with,
};
use crate::model::{PhasePoint, PotentialSpec};
use crate::sampling::{random_generic_tuple, random_initial_condition, random_phase_point, rng};
use crate::superpose::{
    Genericity, PhaseTuple, constants_from_four, integral_f0, integral_f1, integral_f2,
    superpose_point, superpose_trajectory,
};

pub const TABLE_TOL: f64 = 1e-10;
pub const DECOMPOSITION_TOL: f64 = 1e-14;
pub const COMPOSITION_TOL: f64 = 1e-12;
pub const FUNDAMENTAL_TOL: f64 = 1e-6;
pub const DRIFT_TOL: f64 = 1e-7;
pub const INVERSION_TOL: f64 = 1e-9;
pub const RECONSTRUCTION_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Integrals,
    Brackets,
    Action,
    Superposition,
    All,
}

/// One machine-readable verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub passed: bool,
}

impl CheckLine {
    fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tol,
            passed: value <= tol,
        }
    }

    fn flag(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            value: if passed { 0.0 } else { 1.0 },
            tol: 0.0,
            passed,
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} max_residual={:.3e} tol={:.1e}",
            self.name, self.value, self.tol
        )
    }
}

pub struct VerifyContext {
    pub scenario: Scenario,
    pub trials: usize,
    pub table: StructureConstants,
}

impl VerifyContext {
    pub fn new(scenario: Scenario, trials: usize) -> Self {
        Self {
            scenario,
            trials,
            table: StructureConstants::standard(),
        }
    }
}

pub fn run_suite(suite: Suite, ctx: &VerifyContext) -> Result<Vec<CheckLine>> {
    let mut rng = rng(ctx.scenario.seed);
    Ok(match suite {
        Suite::Integrals => integrals(ctx, &mut rng)?,
        Suite::Brackets => brackets(ctx, &mut rng)?,
        Suite::Action => action(ctx, &mut rng)?,
        Suite::Superposition => superposition(ctx, &mut rng)?,
        Suite::All => {
            let mut lines = Vec::new();
            for s in [
                Suite::Integrals,
                Suite::Brackets,
                Suite::Action,
                Suite::Superposition,
            ] {
                lines.extend(run_suite(s, ctx)?);
            }
            lines
        }
    })
}

/// Four initial conditions: the scenario's own, topped up with random ones
/// until the first three are generic.
fn four_ics(scenario: &Scenario, rng: &mut StdRng) -> Result<[PhasePoint; 4]> {
    let given = scenario
        .ics
        .iter()
        .take(4)
        .map(|ic| PhasePoint::checked(ic[0], ic[1]))
        .collect::<Result<Vec<_>>>()?;
    loop {
        let mut ics = given.clone();
        while ics.len() < 4 {
            ics.push(random_initial_condition(rng));
        }
        let generic = integral_f0(ics[0], ics[1], ics[2])?.abs() > 1e-3;
        if generic || given.len() >= 3 {
            return Ok([ics[0], ics[1], ics[2], ics[3]]);
        }
    }
}

/// Maximum over the three integrals of `drift / max(1, |F(t0)|)` along four
/// jointly integrated solutions.
pub fn integral_drift(
    potential: &PotentialSpec,
    t0: f64,
    t1: f64,
    ics: &[PhasePoint; 4],
    opts: &Options,
) -> Result<[f64; 3]> {
    let traj = integrate_prolonged::<8>(potential, t0, ics, t1, opts)?;
    let integrals = |s: &[f64; 8]| -> Result<[f64; 3]> {
        let xi: [PhasePoint; 4] = std::array::from_fn(|c| PhasePoint::new(s[2 * c], s[2 * c + 1]));
        Ok([
            integral_f0(xi[1], xi[2], xi[3])?,
            integral_f1(xi[0], xi[1], xi[2])?,
            integral_f2(xi[0], xi[1], xi[3])?,
        ])
    };
    let start = integrals(&traj.samples[0].state)?;
    let mut worst = [0.0f64; 3];
    for sample in &traj.samples {
        let now = integrals(&sample.state)?;
        for j in 0..3 {
            worst[j] = worst[j].max((now[j] - start[j]).abs() / start[j].abs().max(1.0));
        }
    }
    Ok(worst)
}

fn integrals(ctx: &VerifyContext, rng: &mut StdRng) -> Result<Vec<CheckLine>> {
    let sc = &ctx.scenario;
    let potential = sc.potential()?;
    let opts = Options::with_tol(sc.tol);
    let mut worst = [0.0f64; 3];
    let quadruples = ctx.trials.clamp(1, 20);
    for trial in 0..quadruples {
        let ics = if trial == 0 {
            four_ics(sc, rng)?
        } else {
            std::array::from_fn(|_| random_initial_condition(rng))
        };
        let drift = integral_drift(&potential, sc.t0, sc.t1, &ics, &opts)?;
        for j in 0..3 {
            worst[j] = worst[j].max(drift[j]);
        }
    }
    Ok((0..3)
        .map(|j| CheckLine::at_most(format!("integrals.F{j}_drift"), worst[j], DRIFT_TOL))
        .collect())
}

fn random_points(rng: &mut StdRng, n: usize) -> Vec<PhasePoint> {
    (0..n).map(|_| random_phase_point(rng, -3.0, 3.0)).collect()
}

fn brackets(ctx: &VerifyContext, rng: &mut StdRng) -> Result<Vec<CheckLine>> {
    let points = random_points(rng, ctx.trials);
    let mut lines = vec![CheckLine::at_most(
        "brackets.table",
        check_commutation_table_with(&ctx.table, &points)?,
        TABLE_TOL,
    )];
    for assertion in levi_structure_check_with(&ctx.table).assertions {
        lines.push(CheckLine::flag(
            format!("brackets.levi[{}]", assertion.name),
            assertion.passed,
        ));
    }
    let potential = ctx.scenario.potential()?;
    let (t0, t1) = (ctx.scenario.t0, ctx.scenario.t1);
    let mut worst: f64 = 0.0;
    for s in &points {
        let t = rng.random_range(t0..t1);
        let residual = decompose_rhs_check(&potential, t, *s)?;
        worst = worst.max(residual / (1.0 + s.x.abs() + s.p.abs()));
    }
    lines.push(CheckLine::at_most(
        "brackets.decomposition",
        worst,
        DECOMPOSITION_TOL,
    ));
    Ok(lines)
}

fn random_sl2(rng: &mut StdRng) -> GroupElement {
    let a = rng.random_range(0.5..2.0);
    let b = rng.random_range(-0.5..0.5);
    let c = rng.random_range(-0.5..0.5);
    GroupElement {
        lambda1: 0.0,
        lambda5: 0.0,
        a: [[a, b], [c, (1.0 + b * c) / a]],
    }
}

fn random_translation(rng: &mut StdRng) -> GroupElement {
    GroupElement::translation(rng.random_range(-0.5..0.5), rng.random_range(-0.2..0.2))
}

fn rel_diff(a: PhasePoint, b: PhasePoint) -> f64 {
    ((a.x - b.x).abs() / (1.0 + b.x.abs())).max((a.p - b.p).abs() / (1.0 + b.p.abs()))
}

/// Worst defect of `act(g1 g2, s) = act(g1, act(g2, s))` over random
/// subgroup pairs, skipping points where either side is undefined.
pub fn composition_defect(rng: &mut StdRng, trials: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let (g1, g2) = if trial % 2 == 0 {
            (random_translation(rng), random_translation(rng))
        } else {
            (random_sl2(rng), random_sl2(rng))
        };
        let s = random_phase_point(rng, -3.0, 3.0);
        let joint = act(&compose_subgroup(&g1, &g2)?, s);
        let nested = act(&g2, s).and_then(|inner| act(&g1, inner));
        if let (Ok(a), Ok(b)) = (joint, nested) {
            worst = worst.max(rel_diff(a, b));
        }
    }
    Ok(worst)
}

/// Worst deviation of the finite-difference fundamental fields from their
/// generators, per direction.
pub fn fundamental_defects(points: &[PhasePoint]) -> Result<Vec<(Direction, f64)>> {
    Direction::ALL
        .iter()
        .map(|&dir| {
            let mut worst: f64 = 0.0;
            for &s in points {
                let got = fundamental_vf(dir, s, DEFAULT_FD_STEP)?;
                let want = combination(&dir.generator(), s)?;
                worst = worst
                    .max((got[0] - want[0]).abs())
                    .max((got[1] - want[1]).abs());
            }
            Ok((dir, worst))
        })
        .collect()
}

fn action(ctx: &VerifyContext, rng: &mut StdRng) -> Result<Vec<CheckLine>> {
    let points = random_points(rng, ctx.trials);
    let identity = points
        .iter()
        .map(|&s| act(&GroupElement::identity(), s).map(|out| rel_diff(out, s)))
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))?;
    let mut lines = vec![CheckLine::at_most("action.identity", identity, 0.0)];
    lines.push(CheckLine::at_most(
        "action.composition",
        composition_defect(rng, ctx.trials)?,
        COMPOSITION_TOL,
    ));
    for (dir, worst) in fundamental_defects(&points)? {
        lines.push(CheckLine::at_most(
            format!("action.fundamental[{dir}]"),
            worst,
            FUNDAMENTAL_TOL,
        ));
    }
    Ok(lines)
}

/// Worst relative error of `superpose_point ∘ constants_from_four` on copy 0.
pub fn inversion_defect(tuples: &[PhaseTuple]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for tuple in tuples {
        let k = constants_from_four(tuple)?;
        let back = superpose_point(tuple.xi1, tuple.xi2, tuple.xi3, &k, &Genericity::default())?;
        let scale = tuple.xi0.x.abs().max(tuple.xi0.p.abs());
        let err = (back.x - tuple.xi0.x)
            .abs()
            .max((back.p - tuple.xi0.p).abs());
        worst = worst.max(err / scale);
    }
    Ok(worst)
}

/// Relative sup-norm distance on `grid` between the fourth solution
/// rebuilt from the other three and its direct integration.
pub fn reconstruction_defect(
    potential: &PotentialSpec,
    ics: &[PhasePoint; 4],
    grid: &[f64],
    opts: &Options,
) -> Result<f64> {
    let (t0, t1) = (grid[0], grid[grid.len() - 1]);
    let trajs = ics
        .iter()
        .map(|ic| integrate_hamiltonian(potential, t0, *ic, t1, opts))
        .collect::<Result<Vec<_>>>()?;
    let k = constants_from_four(&PhaseTuple::new(ics[3], ics[0], ics[1], ics[2]))?;
    let rebuilt = superpose_trajectory(
        &trajs[0],
        &trajs[1],
        &trajs[2],
        &k,
        grid,
        &Genericity::default(),
    )?;
    let direct = trajs[3].resample(grid)?;
    let mut diff: f64 = 0.0;
    let mut size: f64 = 0.0;
    for (r, d) in rebuilt.points.iter().zip(&direct) {
        diff = diff.max((r.x - d[0]).abs()).max((r.p - d[1]).abs());
        size = size.max(d[0].abs()).max(d[1].abs());
    }
    Ok(diff / size)
}

fn superposition(ctx: &VerifyContext, rng: &mut StdRng) -> Result<Vec<CheckLine>> {
    let tuples: Vec<_> = (0..ctx.trials)
        .map(|_| random_generic_tuple(rng, 1e-2))
        .collect();
    let mut lines = vec![CheckLine::at_most(
        "superposition.inversion",
        inversion_defect(&tuples)?,
        INVERSION_TOL,
    )];
    let sc = &ctx.scenario;
    let ics = four_ics(sc, rng)?;
    let defect = reconstruction_defect(
        &sc.potential()?,
        &ics,
        &sc.grid(),
        &Options::with_tol(sc.tol),
    )?;
    lines.push(CheckLine::at_most(
        "superposition.reconstruction",
        defect,
        RECONSTRUCTION_TOL,
    ));
    Ok(lines)
}
