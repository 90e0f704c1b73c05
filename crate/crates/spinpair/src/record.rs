//! Single-record outputs. Each record renders as a two-line CSV (header and
//! values) or as one flat JSON object with the same keys.

use serde::Serialize;
use spinpair_core::chain::{Boundary, ChainParams, ChainReport};
use spinpair_core::entanglement::{concurrence_general, entanglement_of_formation};
use spinpair_core::model::{build_hamiltonian, GroundPhase, PairParams};
use spinpair_core::qmat::gibbs_state;
use spinpair_core::thermal::{
    concurrence_closed_form, gibbs_xstate, log_partition_function, ThermalPoint, ThresholdResult,
};

use crate::format::{sig, sig_opt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Method {
    /// Closed-form Gibbs state and X-state concurrence.
    #[default]
    Closed,
    /// Numerical exponentiation of the Hamiltonian and general Wootters concurrence.
    Oracle,
}

fn csv(fields: &[(&str, String)]) -> String {
    let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
    let values: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", header.join(","), values.join(","))
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    #[serde(rename = "J")]
    pub coupling: f64,
    #[serde(rename = "B")]
    pub field: f64,
    pub b: f64,
    pub delta: f64,
    pub xi: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "Z")]
    pub partition: f64,
    pub u_plus: f64,
    pub u_minus: f64,
    pub w: f64,
    pub z: f64,
    pub concurrence: f64,
    pub eof: f64,
}

impl PointRecord {
    pub fn evaluate(pt: &ThermalPoint, method: Method) -> spinpair_core::Result<Self> {
        let p = pt.params();
        let (log_z, u_plus, u_minus, w, z, concurrence) = match method {
            Method::Closed => {
                let x = gibbs_xstate(pt)?;
                let c = concurrence_closed_form(pt)?.value();
                (log_partition_function(pt), x.u_plus, x.u_minus, x.w, x.z, c)
            }
            Method::Oracle => {
                let g = gibbs_state(&build_hamiltonian(p), pt.beta())?;
                let rho = &g.rho;
                let c = concurrence_general(rho)?.value();
                let w = 0.5 * (rho[(1, 1)].re + rho[(2, 2)].re);
                (g.log_partition, rho[(0, 0)].re, rho[(3, 3)].re, w, rho[(1, 2)].re, c)
            }
        };
        Ok(Self {
            coupling: p.coupling(),
            field: p.field(),
            b: p.inhomogeneity(),
            delta: p.delta(),
            xi: p.xi(),
            temperature: pt.temperature(),
            partition: log_z.exp(),
            u_plus,
            u_minus,
            w,
            z,
            concurrence,
            eof: entanglement_of_formation(concurrence)?,
        })
    }

    pub fn to_csv(&self) -> String {
        csv(&[
            ("J", sig(self.coupling)),
            ("B", sig(self.field)),
            ("b", sig(self.b)),
            ("delta", sig(self.delta)),
            ("xi", sig(self.xi)),
            ("T", sig(self.temperature)),
            ("Z", sig(self.partition)),
            ("u_plus", sig(self.u_plus)),
            ("u_minus", sig(self.u_minus)),
            ("w", sig(self.w)),
            ("z", sig(self.z)),
            ("concurrence", sig(self.concurrence)),
            ("eof", sig(self.eof)),
        ])
    }

    pub fn to_json(&self) -> String {
        json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundRecord {
    #[serde(rename = "J")]
    pub coupling: f64,
    #[serde(rename = "B")]
    pub field: f64,
    pub b: f64,
    pub delta: f64,
    pub xi: f64,
    pub phase: String,
    pub energy: f64,
    pub concurrence: f64,
}

impl GroundRecord {
    pub fn new(p: &PairParams, g: &GroundPhase) -> Self {
        Self {
            coupling: p.coupling(),
            field: p.field(),
            b: p.inhomogeneity(),
            delta: p.delta(),
            xi: p.xi(),
            phase: g.label.to_string(),
            energy: g.energy,
            concurrence: g.concurrence,
        }
    }

    pub fn to_csv(&self) -> String {
        csv(&[
            ("J", sig(self.coupling)),
            ("B", sig(self.field)),
            ("b", sig(self.b)),
            ("delta", sig(self.delta)),
            ("xi", sig(self.xi)),
            ("phase", self.phase.clone()),
            ("energy", sig(self.energy)),
            ("concurrence", sig(self.concurrence)),
        ])
    }

    pub fn to_json(&self) -> String {
        json(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRecord {
    #[serde(rename = "J")]
    pub coupling: f64,
    pub xi: f64,
    /// `None` when the threshold equation has no root.
    #[serde(rename = "T_c")]
    pub critical_temperature: Option<f64>,
    pub beta_lo: f64,
    pub beta_hi: f64,
    pub residual: f64,
}

impl ThresholdRecord {
    /// `r` is solved in units of `|J|`; temperatures and the `β` bracket are
    /// rescaled to `coupling`.
    pub fn new(coupling: f64, xi: f64, r: &ThresholdResult) -> Self {
        let scale = coupling.abs();
        Self {
            coupling,
            xi,
            critical_temperature: r.temperature.map(|t| t * scale),
            beta_lo: r.bracket.0 / scale,
            beta_hi: r.bracket.1 / scale,
            residual: r.residual,
        }
    }

    pub fn to_csv(&self) -> String {
        csv(&[
            ("J", sig(self.coupling)),
            ("xi", sig(self.xi)),
            (
                "T_c",
                self.critical_temperature.map(sig).unwrap_or_else(|| "none".into()),
            ),
            ("beta_lo", sig(self.beta_lo)),
            ("beta_hi", sig(self.beta_hi)),
            ("residual", sig(self.residual)),
        ])
    }

    pub fn to_json(&self) -> String {
        json(self)
    }
}

/// One row of the threshold-versus-inhomogeneity curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRow {
    pub xi: f64,
    pub ferro: Option<f64>,
    pub antiferro: Option<f64>,
}

pub const THRESHOLD_CURVE_HEADER: &str = "xi,T_c_ferro,T_c_antiferro";

impl ThresholdRow {
    pub fn to_csv_line(&self) -> String {
        format!("{},{},{}\n", sig(self.xi), sig_opt(self.ferro), sig_opt(self.antiferro))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainRecord {
    pub n: usize,
    #[serde(rename = "J")]
    pub coupling: f64,
    pub boundary: &'static str,
    pub pair_i: usize,
    pub pair_j: usize,
    #[serde(rename = "T")]
    pub temperature: f64,
    pub concurrence: f64,
    pub effective_xi: f64,
    pub pair_model_concurrence: f64,
    pub gap: f64,
}

impl ChainRecord {
    pub fn new(cp: &ChainParams, r: &ChainReport) -> Self {
        Self {
            n: cp.n_sites(),
            coupling: cp.coupling(),
            boundary: match cp.boundary() {
                Boundary::Open => "open",
                Boundary::Periodic => "periodic",
            },
            pair_i: r.pair.0,
            pair_j: r.pair.1,
            temperature: r.temperature,
            concurrence: r.concurrence,
            effective_xi: r.effective_xi,
            pair_model_concurrence: r.pair_model_concurrence,
            gap: r.gap,
        }
    }

    pub fn to_csv(&self) -> String {
        csv(&[
            ("n", self.n.to_string()),
            ("J", sig(self.coupling)),
            ("boundary", self.boundary.to_string()),
            ("pair_i", self.pair_i.to_string()),
            ("pair_j", self.pair_j.to_string()),
            ("T", sig(self.temperature)),
            ("concurrence", sig(self.concurrence)),
            ("effective_xi", sig(self.effective_xi)),
            ("pair_model_concurrence", sig(self.pair_model_concurrence)),
            ("gap", sig(self.gap)),
        ])
    }

    pub fn to_json(&self) -> String {
        json(self)
    }
}
