//! The `riccati-lie` command-line tool: `simulate`, `derive`, `superpose`
//! and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration or usage
//! error, 3 domain error, 4 genericity error, 5 numerical failure, 6 I/O.

pub mod config;
pub mod table;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{ModelSource, Scenario};
pub use table::SolutionTable;
pub use verify::{CheckLine, Suite, VerifyContext};

use crate::integrator::{Options, integrate_hamiltonian, integrate_riccati2};
use crate::model::{LagrangianPoint, PhasePoint};
use crate::superpose::{
    Constants, Genericity, PhaseTuple, constants_from_four, integral_f0, superpose_point,
};
use crate::{Error, Result};

pub const EXIT_VERIFY_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "riccati-lie",
    version,
    about = "Second-order Riccati equations as Lie systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// `(x, p)` Hamilton equations
    Hamiltonian,
    /// `(x, v)` second-order Riccati equation
    Riccati2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the scenario's initial conditions and write a CSV table.
    Simulate {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "hamiltonian")]
        system: System,
        /// Single initial condition "x,p" (or "x,v"), overriding [ics].
        #[arg(long, allow_hyphen_values = true)]
        ic: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Riccati coefficients of a potential, or the potential of a Riccati equation.
    Derive { config: PathBuf },
    /// Rebuild a solution from three tabulated particular solutions.
    Superpose {
        config: PathBuf,
        /// CSV with columns t,x1,p1,x2,p2,x3,p3.
        #[arg(long)]
        sols: PathBuf,
        #[arg(
            long,
            allow_hyphen_values = true,
            requires = "k2",
            conflicts_with = "fourth_ic"
        )]
        k1: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "k1")]
        k2: Option<f64>,
        /// Initial condition "x,p" of the solution to rebuild, at the first table time.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "k1")]
        fourth_ic: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the projection t,x0.
        #[arg(long)]
        upsilon: Option<PathBuf>,
    },
    /// Run verification suites and print one PASS/FAIL line per check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn load_scenario(path: &Path) -> Result<Scenario> {
    let mut scenario = Scenario::load(path)?;
    scenario.apply_seed_env()?;
    Ok(scenario)
}

fn open_output<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

/// Runs one command, writing reports and default outputs to `stdout`.
/// Returns the process exit code for completed runs.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Simulate {
            config,
            system,
            ic,
            out,
        } => {
            let scenario = load_scenario(&config)?;
            let table = simulate(&scenario, system, ic.as_deref())?;
            let mut sink = open_output(out.as_deref(), stdout)?;
            table.write(&mut sink)?;
            sink.flush()?;
            Ok(0)
        }
        Command::Derive { config } => {
            let scenario = load_scenario(&config)?;
            derive(&scenario, stdout)?;
            Ok(0)
        }
        Command::Superpose {
            config,
            sols,
            k1,
            k2,
            fourth_ic,
            out,
            upsilon,
        } => {
            let _scenario = load_scenario(&config)?;
            let table = SolutionTable::read(File::open(&sols)?)?;
            let source = match (k1, k2, fourth_ic) {
                (Some(k1), Some(k2), _) => ConstantsSource::Given { k1, k2 },
                (_, _, Some(ic)) => {
                    let [x, p] = config::parse_pair(&ic)?;
                    ConstantsSource::FourthIc(PhasePoint::checked(x, p)?)
                }
                _ => return Err(Error::Config("give --k1 and --k2, or --fourth-ic".into())),
            };
            let rebuilt = superpose_table(&table, source, &Genericity::default())?;
            let mut sink = open_output(out.as_deref(), stdout)?;
            rebuilt.write(&mut sink)?;
            sink.flush()?;
            drop(sink);
            if let Some(path) = upsilon {
                let mut view = SolutionTable::new(vec!["t".into(), "x0".into()]);
                for row in &rebuilt.rows {
                    view.push(vec![row[0], row[1]]);
                }
                view.write(BufWriter::new(File::create(path)?))?;
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            config,
            trials,
        } => {
            let scenario = match config {
                Some(path) => load_scenario(&path)?,
                None => {
                    let mut s = Scenario::canonical();
                    s.apply_seed_env()?;
                    s
                }
            };
            let lines = verify::run_suite(suite, &VerifyContext::new(scenario, trials))?;
            for line in &lines {
                writeln!(stdout, "{line}")?;
            }
            Ok(if lines.iter().all(|l| l.passed) {
                0
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

/// Integrates every initial condition and samples on the scenario grid.
pub fn simulate(scenario: &Scenario, system: System, ic: Option<&str>) -> Result<SolutionTable> {
    let ics = match ic {
        Some(raw) => vec![config::parse_pair(raw)?],
        None => scenario.ics.clone(),
    };
    if ics.is_empty() {
        return Err(Error::Config(
            "no initial conditions: add [ics] or pass --ic".into(),
        ));
    }
    let grid = scenario.grid();
    let opts = Options::with_tol(scenario.tol);
    let (t0, t1) = (scenario.t0, scenario.t1);
    let columns = match system {
        System::Hamiltonian => {
            let potential = scenario.potential()?;
            ics.iter()
                .map(|&[x, p]| {
                    let traj = integrate_hamiltonian(
                        &potential,
                        t0,
                        PhasePoint::checked(x, p)?,
                        t1,
                        &opts,
                    )?;
                    traj.resample(&grid)
                })
                .collect::<Result<Vec<_>>>()?
        }
        System::Riccati2 => {
            let riccati = scenario.riccati()?;
            ics.iter()
                .map(|&[x, v]| {
                    let traj =
                        integrate_riccati2(&riccati, t0, LagrangianPoint::new(x, v), t1, &opts)?;
                    traj.resample(&grid)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let momentum = match system {
        System::Hamiltonian => "p",
        System::Riccati2 => "v",
    };
    let mut table = SolutionTable::for_solutions(ics.len(), momentum);
    for (row, &t) in grid.iter().enumerate() {
        let mut values = vec![t];
        for column in &columns {
            values.extend(column[row]);
        }
        table.push(values);
    }
    Ok(table)
}

/// Writes the coefficient report for the scenario's model.
pub fn derive(scenario: &Scenario, out: &mut dyn Write) -> Result<()> {
    let grid = scenario.grid();
    let fmt = table::format_number;
    match &scenario.model {
        ModelSource::Potential { a } => {
            writeln!(
                out,
                "# potential a0 = {}; a1 = {}; a2 = {}",
                a[0], a[1], a[2]
            )?;
            let riccati = scenario.potential()?.to_riccati(&grid)?;
            writeln!(out, "t,c0,c1,c2,c3,f0,f1")?;
            let (mut worst_f1, mut worst_f0) = (0.0f64, 0.0f64);
            for &t in &grid {
                let v = riccati.values(t);
                let (r1, r0) = riccati.constraint_residuals(t);
                worst_f1 = worst_f1.max(r1);
                worst_f0 = worst_f0.max(r0);
                let cells = [t, v.c[0], v.c[1], v.c[2], v.c[3], v.f0, v.f1].map(fmt);
                writeln!(out, "{}", cells.join(","))?;
            }
            writeln!(out, "f1_constraint_residual={}", fmt(worst_f1))?;
            writeln!(out, "f0_constraint_residual={}", fmt(worst_f0))?;
        }
        ModelSource::Riccati { c } => {
            writeln!(
                out,
                "# riccati c0 = {}; c1 = {}; c2 = {}; c3 = {}",
                c[0], c[1], c[2], c[3]
            )?;
            let (potential, residual) = scenario.riccati()?.to_potential(&grid)?;
            writeln!(out, "t,a0,a1,a2")?;
            for &t in &grid {
                let a = potential.coefficients(t);
                writeln!(out, "{},{},{},{}", fmt(t), fmt(a[0]), fmt(a[1]), fmt(a[2]))?;
            }
            writeln!(out, "c0_defect={}", fmt(residual))?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub enum ConstantsSource {
    Given {
        k1: f64,
        k2: f64,
    },
    /// Extract the constants from this point at the first table time.
    FourthIc(PhasePoint),
}

/// Applies the superposition rule row by row to a table of three solutions.
pub fn superpose_table(
    table: &SolutionTable,
    source: ConstantsSource,
    genericity: &Genericity,
) -> Result<SolutionTable> {
    if table.pair_count() != 3 || table.header.len() != 7 {
        return Err(Error::Config(format!(
            "expected columns t,x1,p1,x2,p2,x3,p3, got {}",
            table.header.join(",")
        )));
    }
    if table.rows.is_empty() {
        return Err(Error::Config("solution table has no rows".into()));
    }
    let row_points = |row: usize| -> Result<[PhasePoint; 3]> {
        let pts = [0, 1, 2].map(|i| {
            let [x, p] = table.pair(row, i);
            PhasePoint::new(x, p)
        });
        for s in &pts {
            s.require_domain()?;
        }
        Ok(pts)
    };
    let [xi1, xi2, xi3] = row_points(0)?;
    let constants = match source {
        ConstantsSource::Given { k1, k2 } => Constants::new(k1, k2, integral_f0(xi1, xi2, xi3)?),
        ConstantsSource::FourthIc(xi0) => {
            constants_from_four(&PhaseTuple::new(xi0, xi1, xi2, xi3))?
        }
    };
    let mut out = SolutionTable::new(vec!["t".into(), "x0".into(), "p0".into()]);
    for (row, t) in table.times().enumerate() {
        let [xi1, xi2, xi3] = row_points(row)?;
        let s = superpose_point(xi1, xi2, xi3, &constants, genericity).map_err(|e| e.at(t))?;
        out.push(vec![t, s.x, s.p]);
    }
    Ok(out)
}

/// Entry point of the `riccati-lie` binary.
pub fn main() -> ! {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let code = match run(cli, &mut lock) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("riccati-lie: {e}");
            e.class().exit_code()
        }
    };
    let _ = lock.flush();
    std::process::exit(code)
}
