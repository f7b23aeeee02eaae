use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Cone, Fan};
use crate::error::{Error, Result};
use crate::exact::IVec;

/// `{ambient_dim, rays: [[int]], maximal_cones: [[ray index]], lineality?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<i64>>,
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::SizeGuard(format!("ray entry {x} exceeds i64"))))
        .collect()
}

fn to_big(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl FanJson {
    /// Fans whose maximal cones carry different lineality spaces are not representable.
    pub fn from_fan(fan: &Fan) -> Result<Self> {
        let lineality = fan
            .lineality()
            .ok_or_else(|| Error::InvalidArgument("maximal cones have different lineality spaces".into()))?;
        Ok(Self {
            ambient_dim: fan.ambient_dim(),
            rays: fan.rays().iter().map(|r| to_i64(r)).collect::<Result<_>>()?,
            maximal_cones: fan.cone_ray_indices(),
            lineality: lineality.iter().map(|l| to_i64(l)).collect::<Result<_>>()?,
        })
    }

    pub fn to_fan(&self) -> Result<Fan> {
        let d = self.ambient_dim;
        for r in self.rays.iter().chain(&self.lineality) {
            if r.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: r.len() });
            }
        }
        let lineality: Vec<IVec> = self.lineality.iter().map(|l| to_big(l)).collect();
        let cones = self
            .maximal_cones
            .iter()
            .map(|idx| {
                let rays = idx
                    .iter()
                    .map(|&i| {
                        self.rays
                            .get(i)
                            .map(|r| to_big(r))
                            .ok_or_else(|| Error::InvalidArgument(format!("ray index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Cone::from_generators(d, &rays, &lineality))
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::new(d, cones)
    }
}
