use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{FiberPolytopeResult, Projection, Wall};
use crate::error::{Error, Result};
use crate::exact::Strictness;
use crate::fan::FanJson;
use crate::polytope::json::{parse_tokens, tokens};
use crate::polytope::{PolytopeJson, RationalToken};

/// `{matrix: [[int]], offset?: ["p/q"], source_dim?}`. `source_dim` is only needed when
/// the matrix has no rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<RationalToken>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_dim: Option<usize>,
}

fn small(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::SizeGuard(format!("entry {x} exceeds i64")))
}

impl ProjectionJson {
    pub fn from_projection(pi: &Projection) -> Result<Self> {
        Ok(Self {
            matrix: pi
                .matrix()
                .iter()
                .map(|r| r.iter().map(small).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            offset: pi.has_offset().then(|| tokens(pi.offset())),
            source_dim: pi.matrix().is_empty().then_some(pi.source_dim()),
        })
    }

    pub fn to_projection(&self, mode: Strictness) -> Result<Projection> {
        let d = match (self.matrix.first(), self.source_dim) {
            (Some(r), _) => r.len(),
            (None, Some(d)) => d,
            (None, None) => return Err(Error::Parse("projection without rows needs source_dim".into())),
        };
        let m = self.matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let offset = self.offset.as_ref().map(|o| parse_tokens(o, mode)).transpose()?;
        Projection::new(d, m, offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub normal: Vec<i64>,
    pub offset: RationalToken,
}

impl WallJson {
    fn from_wall(w: &Wall) -> Result<Self> {
        Ok(Self {
            normal: w.normal.iter().map(small).collect::<Result<_>>()?,
            offset: RationalToken::from_rational(&w.offset),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPolytopeJson {
    pub sigma: PolytopeJson,
    pub sigma_dim: usize,
    pub expected_dim: usize,
    pub fan_from_sigma: FanJson,
    pub fan_from_refinement: FanJson,
    pub agreement: bool,
    pub chamber_count: usize,
    pub walls: Vec<WallJson>,
    pub scaling: String,
}

impl FiberPolytopeJson {
    pub fn from_result(r: &FiberPolytopeResult) -> Result<Self> {
        Ok(Self {
            sigma: PolytopeJson::from_polytope(&r.sigma),
            sigma_dim: r.sigma_dim(),
            expected_dim: r.expected_dim(),
            fan_from_sigma: FanJson::from_fan(&r.fan_from_sigma)?,
            fan_from_refinement: FanJson::from_fan(&r.fan_from_refinement)?,
            agreement: r.agreement,
            chamber_count: r.chamber_count(),
            walls: r.complex.walls.iter().map(WallJson::from_wall).collect::<Result<_>>()?,
            scaling: "sigma is the unnormalized sum of chamber volume times barycentric fiber; \
                      only its normal fan is canonical"
                .into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_round_trip() {
        let text = r#"{"matrix": [[1, 0, -1]], "offset": ["-1/2"]}"#;
        let j: ProjectionJson = serde_json::from_str(text).unwrap();
        let pi = j.to_projection(Strictness::Strict).unwrap();
        assert_eq!(pi.source_dim(), 3);
        assert_eq!(pi.kernel_dim(), 2);
        assert_eq!(ProjectionJson::from_projection(&pi).unwrap(), j);
        let empty: ProjectionJson = serde_json::from_str(r#"{"matrix": []}"#).unwrap();
        assert!(empty.to_projection(Strictness::Strict).is_err());
    }
}
