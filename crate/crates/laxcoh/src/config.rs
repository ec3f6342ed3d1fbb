//! JSON instance configurations.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::connection::{connection_family, minimal_family, ConnectionFamily, ConnectionForm};
use crate::error::{Error, Result};
use crate::lax::{Flavor, FlavorKind, LaxAlgebra, TyurinData};
use crate::linalg::Scalar;
use crate::riemann::{Cycle, MarkedSphere};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlavorConfig {
    pub kind: FlavorKind,
    /// Matrix size, half the matrix size for `sp`.
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakPointConfig {
    pub gamma: Scalar,
    pub alpha: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleConfig {
    /// Point labels `P+`, `gamma1`, `gamma2`, ...
    pub enclosed: Vec<String>,
}

fn default_degree_window() -> (i64, i64) {
    (-6, 6)
}

fn default_jet_window() -> usize {
    crate::riemann::DEFAULT_JET_WINDOW
}

/// One instance: flavor, Tyurin data, windows, connection and cycle choice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub flavor: FlavorConfig,
    #[serde(default)]
    pub weak_points: Vec<WeakPointConfig>,
    #[serde(default = "default_degree_window")]
    pub degree_window: (i64, i64),
    #[serde(default = "default_jet_window")]
    pub jet_window: usize,
    /// Polynomial degree of the connection ansatz; the smallest feasible one
    /// when absent.
    #[serde(default)]
    pub pole_budget: Option<usize>,
    /// Separating cycle when absent.
    #[serde(default)]
    pub cycle: Option<CycleConfig>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub sp_double_pole: bool,
}

/// Jet coefficients needed by the local constraint checks.
pub const MIN_JET_WINDOW: usize = 4;

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: InstanceConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Structural checks, including the full Tyurin-data validation.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.degree_window;
        if lo > hi {
            return Err(Error::Invalid(format!("empty degree window [{lo}, {hi}]")));
        }
        if self.jet_window < MIN_JET_WINDOW {
            return Err(Error::Invalid(format!("jet window {} is below {MIN_JET_WINDOW}", self.jet_window)));
        }
        let alg = self.algebra()?;
        self.cycle_for(alg.sphere())?;
        Ok(())
    }

    pub fn flavor(&self) -> Result<Flavor> {
        Flavor::new(self.flavor.kind, self.flavor.n)
    }

    pub fn algebra(&self) -> Result<Arc<LaxAlgebra>> {
        let flavor = self.flavor()?;
        let sphere = MarkedSphere::new(self.weak_points.iter().map(|w| w.gamma.clone()).collect())?;
        let tyurin = TyurinData::new(sphere, self.weak_points.iter().map(|w| w.alpha.clone()).collect(), &flavor)?;
        Ok(LaxAlgebra::new(flavor, tyurin))
    }

    pub fn cycle_for(&self, sphere: &MarkedSphere) -> Result<Cycle> {
        let c = match &self.cycle {
            Some(c) => Cycle::from_labels(&c.enclosed)?,
            None => Cycle::separating(sphere),
        };
        c.validate(sphere)?;
        Ok(c)
    }

    pub fn connection_family(&self, alg: &LaxAlgebra) -> Result<ConnectionFamily> {
        match self.pole_budget {
            Some(d) => connection_family(alg, d, self.sp_double_pole),
            None if self.sp_double_pole => (0..=crate::connection::form::MAX_POLE_BUDGET)
                .find_map(|d| match connection_family(alg, d, true) {
                    Err(Error::Infeasible(_)) => None,
                    r => Some(r),
                })
                .unwrap_or_else(|| Err(Error::Infeasible("no feasible pole budget".into()))),
            None => minimal_family(alg),
        }
    }

    pub fn connection(&self, alg: &LaxAlgebra) -> Result<ConnectionForm> {
        self.connection_family(alg)?.canonical(alg)
    }
}

/// A second connection `ω′ = ω + Σ c_j θ_j` over the kernel of the
/// connection system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaPrimeConfig {
    pub kernel_coefficients: Vec<Scalar>,
}

impl OmegaPrimeConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn connection(&self, alg: &LaxAlgebra, family: &ConnectionFamily) -> Result<ConnectionForm> {
        family.member(alg, &self.kernel_coefficients)
    }
}
