//! Cheeger deformation `P_{s,t} = P_t (Id + s P_t)⁻¹` of diagonal families.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geometry::{Block, Param, PtFamily};

/// Key under which the accumulated deformation parameter is recorded.
pub const PARAM_KEY: &str = "cheeger_s";

/// Deformation parameter, finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheegerParam(f64);

impl CheegerParam {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(invalid("Cheeger parameter s must be finite and >= 0"));
        }
        Ok(CheegerParam(s))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Wraps every block in the deformation `p ↦ p / (1 + s p)`.
///
/// Deforming an already deformed family adds the parameters, which is the
/// composition law of the Möbius map `p ↦ p / (1 + s p)`.
pub fn cheeger_deform(fam: &PtFamily, s: f64) -> Result<PtFamily> {
    let s = CheegerParam::new(s)?.get();
    let blocks = fam
        .blocks
        .iter()
        .map(|b| Ok(Block::new(b.profile.clone().cheeger(s)?, b.multiplicity)))
        .collect::<Result<Vec<_>>>()?;
    let total = fam.param(PARAM_KEY).unwrap_or(0.0) + s;
    let out = PtFamily { blocks, ..fam.clone() }.with_param(PARAM_KEY, Param::Real(total));
    out.validate()?;
    Ok(out)
}
