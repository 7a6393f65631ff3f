//! Run configuration: the coloring battery, evaluation-point schedule
//! bounds, minor caps, enumeration caps, the permutation guard, and the
//! seed recorded in every output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::AffineQuandleSpec;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Affine coloring targets evaluated in every fingerprint.
    pub battery: Vec<AffineQuandleSpec>,
    /// Elementary-ideal fingerprints are computed for k = 0..=ideal_k_max.
    pub ideal_k_max: usize,
    /// Maximum number of evaluation points per fingerprint.
    pub point_cap: usize,
    /// Alexander polynomials are computed for k = 0..=delta_k_max.
    pub delta_k_max: usize,
    /// Cap on generators for symbolic minor enumeration.
    pub minor_rows_cap: usize,
    /// Cap on symbolic minor size.
    pub minor_size_cap: usize,
    /// Torsion-subgroup enumeration cap for the ν fingerprint.
    pub torsion_cap: u64,
    /// Maximum component count for permutation sweeps.
    pub permutation_guard: usize,
    /// Assignment budget for brute-force coloring enumeration.
    pub brute_budget: u64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            battery: [(2, 1), (3, 2), (4, 3), (5, 2), (5, 3), (7, 3), (8, 3), (9, 2)]
                .into_iter()
                .map(|(n, u)| AffineQuandleSpec { modulus: n, unit: u })
                .collect(),
            ideal_k_max: 4,
            point_cap: 256,
            delta_k_max: 5,
            minor_rows_cap: 14,
            minor_size_cap: 10,
            torsion_cap: 1024,
            permutation_guard: 8,
            brute_budget: 1_000_000,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn minor_caps(&self) -> crate::modulealg::MinorCaps {
        crate::modulealg::MinorCaps { max_rows: self.minor_rows_cap, max_minor: self.minor_size_cap }
    }

    pub fn validate(&self) -> Result<()> {
        if self.point_cap == 0
            || self.torsion_cap == 0
            || self.brute_budget == 0
            || self.minor_rows_cap == 0
            || self.minor_size_cap == 0
        {
            return Err(Error::Usage("all caps must be positive".into()));
        }
        for spec in &self.battery {
            AffineQuandleSpec::new(spec.modulus, spec.unit)?;
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}
