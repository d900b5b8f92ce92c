//! INI scenario files.
//!
//! ```ini
//! ; or [riccati] with keys c0, c1, c2, c3
//! [potential]
//! a0 = poly 0
//! a1 = poly 0
//! a2 = poly 1
//!
//! [run]
//! t0 = 0
//! t1 = 1
//! step = 0.05
//! tol = 1e-10
//! seed = 7
//!
//! [ics]
//! ic = 0 -0.25
//! ic = 0.5 -1
//! ```
//!
//! Every key of `[ics]` holds one initial condition, two reals, read in
//! file order. Comments must start a line.

use std::path::Path;

use ini::Ini;

use crate::model::{PotentialSpec, RiccatiSpec, linspace};
use crate::timefn::{TimeFn, parse_timefn};
use crate::{Error, Result};

pub const SEED_ENV: &str = "RICCATI_LIE_SEED";

#[derive(Debug, Clone)]
pub enum ModelSource {
    Potential { a: [TimeFn; 3] },
    Riccati { c: [TimeFn; 4] },
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: ModelSource,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub tol: f64,
    pub ics: Vec<[f64; 2]>,
    pub seed: u64,
}

impl Scenario {
    /// `U = x^2` on `[0, 2]`, the equation `x'' + 3 x x' + x^3 = 0`.
    pub fn canonical() -> Self {
        Self {
            model: ModelSource::Potential {
                a: [
                    TimeFn::constant(0.0),
                    TimeFn::constant(0.0),
                    TimeFn::constant(1.0),
                ],
            },
            t0: 0.0,
            t1: 2.0,
            step: 0.05,
            tol: 1e-10,
            ics: vec![[0.0, -0.25]],
            seed: 1,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let function = |section: &str, key: &str| -> Result<TimeFn> {
            let raw = ini
                .section(Some(section))
                .and_then(|s| s.get(key))
                .ok_or_else(|| Error::Config(format!("missing [{section}] {key}")))?;
            parse_timefn(raw)
        };
        let model = match (ini.section(Some("potential")), ini.section(Some("riccati"))) {
            (Some(_), None) => ModelSource::Potential {
                a: [
                    function("potential", "a0")?,
                    function("potential", "a1")?,
                    function("potential", "a2")?,
                ],
            },
            (None, Some(_)) => ModelSource::Riccati {
                c: [
                    function("riccati", "c0")?,
                    function("riccati", "c1")?,
                    function("riccati", "c2")?,
                    function("riccati", "c3")?,
                ],
            },
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "give either [potential] or [riccati], not both".into(),
                ));
            }
            (None, None) => {
                return Err(Error::Config(
                    "missing [potential] or [riccati] section".into(),
                ));
            }
        };

        let run = ini.section(Some("run"));
        let number = |key: &str, default: f64| -> Result<f64> {
            match run.and_then(|s| s.get(key)) {
                None => Ok(default),
                Some(raw) => raw
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        Error::Config(format!("[run] {key} = `{raw}` is not a finite number"))
                    }),
            }
        };
        let t0 = number("t0", 0.0)?;
        let t1 = number("t1", 1.0)?;
        let step = number("step", 0.05)?;
        let tol = number("tol", 1e-10)?;
        let seed = match run.and_then(|s| s.get("seed")) {
            None => 1,
            Some(raw) => raw.trim().parse::<u64>().map_err(|_| {
                Error::Config(format!("[run] seed = `{raw}` is not an unsigned integer"))
            })?,
        };

        let mut ics = Vec::new();
        if let Some(section) = ini.section(Some("ics")) {
            for (key, raw) in section.iter() {
                ics.push(parse_pair(raw).map_err(|e| Error::Config(format!("[ics] {key}: {e}")))?);
            }
        }

        let scenario = Self {
            model,
            t0,
            t1,
            step,
            tol,
            ics,
            seed,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<()> {
        if !(self.t1 > self.t0) {
            return Err(Error::Config(format!(
                "need t1 > t0, got [{}, {}]",
                self.t0, self.t1
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if !(self.step > 0.0) {
            return Err(Error::Config(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        Ok(())
    }

    /// Applies `RICCATI_LIE_SEED` when set.
    pub fn apply_seed_env(&mut self) -> Result<()> {
        if let Ok(raw) = std::env::var(SEED_ENV) {
            self.seed = raw.trim().parse().map_err(|_| {
                Error::Config(format!("{SEED_ENV} = `{raw}` is not an unsigned integer"))
            })?;
        }
        Ok(())
    }

    /// Output times from `t0` to `t1` with spacing close to `step`.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.t1 - self.t0) / self.step).round().max(1.0) as usize + 1;
        linspace(self.t0, self.t1, n)
    }

    pub fn potential(&self) -> Result<PotentialSpec> {
        match &self.model {
            ModelSource::Potential { a: [a0, a1, a2] } => {
                Ok(PotentialSpec::new(a0.clone(), a1.clone(), a2.clone()))
            }
            ModelSource::Riccati { .. } => Ok(self.riccati()?.to_potential(&self.grid())?.0),
        }
    }

    pub fn riccati(&self) -> Result<RiccatiSpec> {
        match &self.model {
            ModelSource::Potential { .. } => self.potential()?.to_riccati(&self.grid()),
            ModelSource::Riccati {
                c: [c0, c1, c2, c3],
            } => {
                let spec = RiccatiSpec::new(c0.clone(), c1.clone(), c2.clone(), c3.clone());
                spec.require_positive_c3(&self.grid())?;
                Ok(spec)
            }
        }
    }
}

/// Two reals separated by whitespace and/or a comma.
pub fn parse_pair(raw: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = raw
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::Config(format!("expected two numbers, got `{raw}`")));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Config(format!("`{s}` is not a finite number")))
    };
    Ok([num(a)?, num(b)?])
}
