//! Two-axis parameter sweeps of the closed-form thermal concurrence.
//!
//! Output format:
//!
//! ```text
//! # spinpair sweep
//! # J=-1 B=fixed... axis1=T:0.01:1:100:linear axis2=B:0:1:100:linear
//! T,B,concurrence
//! 0.01,0,0.909090909091
//! ...
//! ```
//!
//! Rows are in row-major grid order (`axis1` outer) and every number has
//! 12 significant digits, so identical specs give byte-identical files.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use spinpair_core::model::PairParams;
use spinpair_core::thermal::{concurrence_closed_form, ThermalPoint};

use crate::format::sig;
use crate::CliError;

pub const HEADER: &str = "# spinpair sweep";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisName {
    Temperature,
    Field,
    Xi,
    Inhomogeneity,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::Temperature => "T",
            AxisName::Field => "B",
            AxisName::Xi => "xi",
            AxisName::Inhomogeneity => "b",
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxisName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "T" => Ok(AxisName::Temperature),
            "B" => Ok(AxisName::Field),
            "xi" => Ok(AxisName::Xi),
            "b" => Ok(AxisName::Inhomogeneity),
            other => Err(format!("unknown axis {other:?}; expected one of T, B, xi, b")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// Geometric spacing; only honoured on the temperature axis.
    pub log: bool,
}

impl FromStr for Axis {
    type Err = String;

    /// `NAME:MIN:MAX:STEPS`, e.g. `T:0.01:1:100`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(format!("axis {s:?} must look like NAME:MIN:MAX:STEPS"));
        };
        let num = |x: &str| x.parse::<f64>().map_err(|e| format!("axis {s:?}: {x:?}: {e}"));
        Ok(Axis {
            name: name.parse()?,
            min: num(min)?,
            max: num(max)?,
            steps: steps.parse().map_err(|e| format!("axis {s:?}: steps: {e}"))?,
            log: false,
        })
    }
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else if self.log {
                    (self.min.ln() + (self.max.ln() - self.min.ln()) * i as f64 / last).exp()
                } else {
                    self.min + (self.max - self.min) * i as f64 / last
                }
            })
            .collect()
    }

    fn describe(&self) -> String {
        format!(
            "{}:{}:{}:{}:{}",
            self.name,
            sig(self.min),
            sig(self.max),
            self.steps,
            if self.log { "log" } else { "linear" }
        )
    }
}

/// Parameters held constant across the grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FixedParams {
    pub field: Option<f64>,
    pub xi: Option<f64>,
    pub inhomogeneity: Option<f64>,
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    pub coupling: f64,
    pub fixed: FixedParams,
}

impl SweepSpec {
    /// Checks axis ranges and that every parameter is supplied exactly once,
    /// either as an axis or as a fixed value.
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.coupling.is_finite() || self.coupling == 0.0 {
            return Err(CliError::usage("--J must be finite and nonzero"));
        }
        for axis in [&self.axis1, &self.axis2] {
            if axis.steps < 2 {
                return Err(CliError::usage(format!("axis {}: steps must be >= 2", axis.name)));
            }
            if !(axis.min.is_finite() && axis.max.is_finite() && axis.min < axis.max) {
                return Err(CliError::usage(format!("axis {}: need finite min < max", axis.name)));
            }
            match axis.name {
                AxisName::Xi if axis.min < 1.0 => {
                    return Err(CliError::usage("axis xi: values must be >= 1"));
                }
                AxisName::Temperature if axis.min <= 0.0 => {
                    return Err(CliError::usage("axis T: values must be > 0"));
                }
                _ => {}
            }
        }
        let names = [self.axis1.name, self.axis2.name];
        if names[0] == names[1] {
            return Err(CliError::usage("axis names must be distinct"));
        }
        let on_axis = |n: AxisName| names.contains(&n);
        let inhom_axis = on_axis(AxisName::Xi) || on_axis(AxisName::Inhomogeneity);
        if on_axis(AxisName::Xi) && on_axis(AxisName::Inhomogeneity) {
            return Err(CliError::usage("xi and b cannot both be axes"));
        }

        let f = &self.fixed;
        let fixed_inhom = f.xi.is_some() as u8 + f.inhomogeneity.is_some() as u8;
        if fixed_inhom > 1 {
            return Err(CliError::usage("--xi and --b are mutually exclusive"));
        }
        if inhom_axis && fixed_inhom > 0 {
            return Err(CliError::usage("inhomogeneity is already an axis; drop --xi/--b"));
        }
        if !inhom_axis && fixed_inhom == 0 {
            return Err(CliError::usage("one of --xi or --b is required"));
        }
        for (name, value) in [(AxisName::Field, f.field), (AxisName::Temperature, f.temperature)] {
            match (on_axis(name), value) {
                (true, Some(_)) => {
                    return Err(CliError::usage(format!("{name} is an axis; drop --{name}")));
                }
                (false, None) => return Err(CliError::usage(format!("--{name} is required"))),
                _ => {}
            }
        }
        Ok(())
    }

    fn describe_fixed(&self) -> String {
        let f = &self.fixed;
        let mut parts = vec![format!("J={}", sig(self.coupling))];
        for (name, value) in [
            ("B", f.field),
            ("xi", f.xi),
            ("b", f.inhomogeneity),
            ("T", f.temperature),
        ] {
            if let Some(v) = value {
                parts.push(format!("{name}={}", sig(v)));
            }
        }
        parts.push(format!("axis1={}", self.axis1.describe()));
        parts.push(format!("axis2={}", self.axis2.describe()));
        parts.join(" ")
    }

    fn point_at(&self, v1: f64, v2: f64) -> spinpair_core::Result<ThermalPoint> {
        let mut field = self.fixed.field;
        let mut xi = self.fixed.xi;
        let mut inhom = self.fixed.inhomogeneity;
        let mut temperature = self.fixed.temperature;
        for (axis, v) in [(&self.axis1, v1), (&self.axis2, v2)] {
            let slot = match axis.name {
                AxisName::Field => &mut field,
                AxisName::Xi => &mut xi,
                AxisName::Inhomogeneity => &mut inhom,
                AxisName::Temperature => &mut temperature,
            };
            *slot = Some(v);
        }
        let field = field.expect("validated");
        let params = match (xi, inhom) {
            (Some(xi), None) => PairParams::from_xi(self.coupling, field, xi)?,
            (None, Some(b)) => PairParams::new(self.coupling, field, b)?,
            _ => unreachable!("validated"),
        };
        ThermalPoint::new(params, temperature.expect("validated"))
    }
}

/// Concurrence at one grid cell; the same computation as `point --method closed`.
pub fn cell_concurrence(spec: &SweepSpec, v1: f64, v2: f64) -> spinpair_core::Result<f64> {
    Ok(concurrence_closed_form(&spec.point_at(v1, v2)?)?.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub axis1: f64,
    pub axis2: f64,
    pub concurrence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    /// Row-major: `axis1` is the outer index.
    pub cells: Vec<Cell>,
}

impl SweepGrid {
    pub fn axis1_values(&self) -> Vec<f64> {
        self.spec.axis1.values()
    }

    pub fn axis2_values(&self) -> Vec<f64> {
        self.spec.axis2.values()
    }

    pub fn at(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i * self.spec.axis2.steps + j]
    }

    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "{HEADER}")?;
        writeln!(out, "# {}", self.spec.describe_fixed())?;
        writeln!(out, "{},{},concurrence", self.spec.axis1.name, self.spec.axis2.name)?;
        for c in &self.cells {
            writeln!(out, "{},{},{}", sig(c.axis1), sig(c.axis2), sig(c.concurrence))?;
        }
        out.flush()
    }
}

/// Evaluates every cell on `jobs` worker threads (`0` picks the number of
/// cores). The result does not depend on `jobs`.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<SweepGrid, CliError> {
    spec.validate()?;
    let (xs, ys) = (spec.axis1.values(), spec.axis2.values());
    let coords: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::usage(format!("--jobs: {e}")))?;
    let cells = pool.install(|| {
        coords
            .par_iter()
            .map(|&(x, y)| {
                cell_concurrence(spec, x, y).map(|c| Cell {
                    axis1: x,
                    axis2: y,
                    concurrence: c,
                })
            })
            .collect::<spinpair_core::Result<Vec<_>>>()
    })?;
    Ok(SweepGrid {
        spec: spec.clone(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a1: &str, a2: &str, fixed: FixedParams) -> SweepSpec {
        SweepSpec {
            axis1: a1.parse().unwrap(),
            axis2: a2.parse().unwrap(),
            coupling: -1.0,
            fixed,
        }
    }

    #[test]
    fn parses_axes() {
        let a: Axis = "T:0.01:1:100".parse().unwrap();
        assert_eq!(a.name, AxisName::Temperature);
        assert_eq!((a.min, a.max, a.steps), (0.01, 1.0, 100));
        assert!("Q:0:1:2".parse::<Axis>().is_err());
        assert!("T:0:1".parse::<Axis>().is_err());
        assert!("T:a:1:3".parse::<Axis>().is_err());
    }

    #[test]
    fn axis_values_hit_endpoints() {
        let mut a: Axis = "T:0.01:1:5".parse().unwrap();
        let v = a.values();
        assert_eq!(v.len(), 5);
        assert_eq!((v[0], v[4]), (0.01, 1.0));
        a.log = true;
        let v = a.values();
        assert!((v[2] - 0.1).abs() < 1e-15);
        assert_eq!(v[4], 1.0);
    }

    #[test]
    fn validation_catches_missing_and_conflicting_params() {
        let xi = FixedParams {
            xi: Some(1.1),
            ..Default::default()
        };
        assert!(spec("T:0.1:1:3", "B:0:1:3", xi).validate().is_ok());
        assert!(spec("T:0.1:1:3", "T:0.2:1:3", xi).validate().is_err());
        assert!(spec("T:0.1:1:1", "B:0:1:3", xi).validate().is_err());
        assert!(spec("T:1:0.1:3", "B:0:1:3", xi).validate().is_err());
        assert!(spec("T:0:1:3", "B:0:1:3", xi).validate().is_err());
        assert!(spec(
            "T:0.1:1:3",
            "xi:0.5:1:3",
            FixedParams {
                field: Some(0.0),
                ..Default::default()
            }
        )
        .validate()
        .is_err());
        // Missing xi/b.
        assert!(spec("T:0.1:1:3", "B:0:1:3", FixedParams::default()).validate().is_err());
        // Both xi and b.
        let both = FixedParams {
            xi: Some(1.1),
            inhomogeneity: Some(0.2),
            ..Default::default()
        };
        assert!(spec("T:0.1:1:3", "B:0:1:3", both).validate().is_err());
        // Fixed value for an axis parameter.
        let dup = FixedParams {
            xi: Some(1.1),
            field: Some(0.0),
            ..Default::default()
        };
        assert!(spec("T:0.1:1:3", "B:0:1:3", dup).validate().is_err());
        // Missing T.
        let no_t = FixedParams {
            field: Some(0.0),
            ..Default::default()
        };
        assert!(spec("xi:1:2:3", "B:0:1:3", no_t).validate().is_err());
        assert!(spec("xi:1:2:3", "b:0:1:3", no_t).validate().is_err());
    }

    #[test]
    fn two_by_two_grid_has_four_rows() {
        let s = spec(
            "T:0.1:1:2",
            "B:0:1:2",
            FixedParams {
                xi: Some(1.1),
                ..Default::default()
            },
        );
        let grid = run_sweep(&s, 1).unwrap();
        assert_eq!(grid.cells.len(), 4);
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert!(lines[1].starts_with("# J=-1 xi=1.1 axis1=T:0.1:1:2:linear"));
        assert_eq!(lines[2], "T,B,concurrence");
        assert_eq!(lines.len(), 3 + 4);
        assert!(lines[3].starts_with("0.1,0,"));
        assert!(lines[6].starts_with("1,1,"));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let s = spec(
            "T:0.05:2:17",
            "xi:1:2:13",
            FixedParams {
                field: Some(0.3),
                ..Default::default()
            },
        );
        let render = |jobs| {
            let mut buf = Vec::new();
            run_sweep(&s, jobs).unwrap().write_csv(&mut buf).unwrap();
            buf
        };
        let one = render(1);
        assert_eq!(one, render(4));
        assert_eq!(one, render(0));
    }

    #[test]
    fn overflow_is_a_numeric_error() {
        let s = spec(
            "T:0.0001:1:3",
            "B:0:1:3",
            FixedParams {
                xi: Some(1.1),
                ..Default::default()
            },
        );
        assert!(matches!(run_sweep(&s, 1), Err(CliError::Numeric(_))));
    }
}
