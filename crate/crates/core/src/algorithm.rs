use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines;
use crate::error::{Error, Result};
use crate::gwo::{self, Decay, Variant};
use crate::problem::Problem;
use crate::run::{RunConfig, RunResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Gwo,
    Mgwo,
    Ebgwo,
    /// GWO with the elite archive only.
    GwoEim,
    /// GWO with the ST-gated balance search only.
    GwoBsm,
    Sca,
    Woa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Ebgwo,
        Algorithm::Gwo,
        Algorithm::Mgwo,
        Algorithm::GwoEim,
        Algorithm::GwoBsm,
        Algorithm::Sca,
        Algorithm::Woa,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Gwo => "GWO",
            Algorithm::Mgwo => "mGWO",
            Algorithm::Ebgwo => "EBGWO",
            Algorithm::GwoEim => "GWO+EIM",
            Algorithm::GwoBsm => "GWO+BSM",
            Algorithm::Sca => "SCA",
            Algorithm::Woa => "WOA",
        }
    }

    pub fn supported_ids() -> String {
        Self::ALL.iter().map(|a| a.id()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace(['-', '_', ' ', '+'], "");
        Self::ALL
            .into_iter()
            .find(|a| a.id().to_ascii_uppercase().replace(['-', '_', ' ', '+'], "") == key)
            .ok_or_else(|| Error::UnknownAlgorithm {
                name: s.to_string(),
                supported: Self::supported_ids(),
            })
    }
}

impl TryFrom<String> for Algorithm {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        value.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> Self {
        a.id().to_string()
    }
}

/// Runs `cfg.algorithm` on `problem`.
pub fn run(problem: &Problem, cfg: &RunConfig) -> Result<RunResult> {
    match cfg.algorithm {
        Algorithm::Gwo => gwo::run_gwo(problem, cfg, Decay::Linear),
        Algorithm::Mgwo => gwo::run_gwo(problem, cfg, Decay::Quadratic),
        Algorithm::Ebgwo => gwo::run_ebgwo(problem, cfg, Variant::Full),
        Algorithm::GwoEim => gwo::run_ebgwo(problem, cfg, Variant::EliteOnly),
        Algorithm::GwoBsm => gwo::run_ebgwo(problem, cfg, Variant::BalanceOnly),
        Algorithm::Sca => baselines::run_sca(problem, cfg),
        Algorithm::Woa => baselines::run_woa(problem, cfg),
    }
}
