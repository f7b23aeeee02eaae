use serde::{Deserialize, Serialize};

use super::{HPolytope, Polytope};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, QVector, Rational, Strictness};

/// A rational as it appears in JSON: canonically a `"p/q"` string; plain integers are
/// accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalToken {
    Text(String),
    Int(i64),
}

impl RationalToken {
    pub fn from_rational(x: &Rational) -> Self {
        RationalToken::Text(format_rational(x))
    }

    pub fn parse(&self, mode: Strictness) -> Result<Rational> {
        match self {
            RationalToken::Text(s) => parse_rational(s, mode),
            RationalToken::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

pub(crate) fn tokens(v: &[Rational]) -> Vec<RationalToken> {
    v.iter().map(RationalToken::from_rational).collect()
}

pub(crate) fn parse_tokens(v: &[RationalToken], mode: Strictness) -> Result<QVector> {
    v.iter().map(|t| t.parse(mode)).collect()
}

fn row(a: &[Rational], b: &Rational) -> Vec<RationalToken> {
    let mut r = tokens(a);
    r.push(RationalToken::from_rational(b));
    r
}

fn split_rows(rows: &[Vec<RationalToken>], d: usize, mode: Strictness) -> Result<Vec<(QVector, Rational)>> {
    rows.iter()
        .map(|r| {
            if r.len() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    found: r.len(),
                });
            }
            let mut v = parse_tokens(r, mode)?;
            let b = v.pop().expect("row has d + 1 entries");
            Ok((v, b))
        })
        .collect()
}

/// `{ambient_dim, inequalities: [[a.., b]], equations: [[c.., e]], vertices?}` with
/// `a·x <= b` and `c·x = e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    #[serde(default)]
    pub inequalities: Vec<Vec<RationalToken>>,
    #[serde(default)]
    pub equations: Vec<Vec<RationalToken>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<RationalToken>>>,
}

pub type HPolytopeJson = PolytopeJson;

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        let h = p.h_representation();
        let mut out = Self::from_h(&h);
        out.vertices = Some(p.vertices().iter().map(|v| tokens(v)).collect());
        out
    }

    pub fn from_h(h: &HPolytope) -> Self {
        Self {
            ambient_dim: h.ambient_dim,
            inequalities: h.inequalities.iter().map(|(a, b)| row(a, b)).collect(),
            equations: h.equations.iter().map(|(c, e)| row(c, e)).collect(),
            vertices: None,
        }
    }

    pub fn to_h(&self, mode: Strictness) -> Result<HPolytope> {
        let d = self.ambient_dim;
        HPolytope::new(
            d,
            split_rows(&self.inequalities, d, mode)?,
            split_rows(&self.equations, d, mode)?,
        )
    }

    /// Builds the polytope from the vertices when present (checking them against any
    /// constraints also given), otherwise from the constraints.
    pub fn to_polytope(&self, mode: Strictness) -> Result<Polytope> {
        let h = self.to_h(mode)?;
        match &self.vertices {
            Some(vs) => {
                let pts = vs
                    .iter()
                    .map(|v| {
                        if v.len() != self.ambient_dim {
                            return Err(Error::DimensionMismatch {
                                expected: self.ambient_dim,
                                found: v.len(),
                            });
                        }
                        parse_tokens(v, mode)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(bad) = pts.iter().find(|p| !h.contains(p)) {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {:?} violates the given constraints",
                        bad.iter().map(format_rational).collect::<Vec<_>>()
                    )));
                }
                Polytope::from_points(self.ambient_dim, pts)
            }
            None if self.inequalities.is_empty() && self.equations.is_empty() => Err(Error::InvalidArgument(
                "polytope JSON needs inequalities or vertices".into(),
            )),
            None => Polytope::from_h(&h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::from_int;

    #[test]
    fn round_trip_through_json_text() {
        let p = Polytope::from_points(
            2,
            vec![
                vec![from_int(0), from_int(0)],
                vec![from_int(1), from_int(0)],
                vec![from_int(0), crate::exact::rat(1, 2)],
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&PolytopeJson::from_polytope(&p)).unwrap();
        assert!(text.contains("\"1/2\""));
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polytope(Strictness::Strict).unwrap(), p);
    }

    #[test]
    fn integers_and_lenient_strings_accepted() {
        let text = r#"{"ambient_dim":1,"inequalities":[[1,1],["-2/2","0"]]}"#;
        let j: PolytopeJson = serde_json::from_str(text).unwrap();
        assert!(j.to_polytope(Strictness::Strict).is_err());
        let p = j.to_polytope(Strictness::Lenient).unwrap();
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn malformed_inputs() {
        let j: PolytopeJson = serde_json::from_str(r#"{"ambient_dim":2,"inequalities":[[1,1]]}"#).unwrap();
        assert!(matches!(j.to_polytope(Strictness::Lenient), Err(Error::DimensionMismatch { .. })));
        let j: PolytopeJson = serde_json::from_str(r#"{"ambient_dim":2}"#).unwrap();
        assert!(j.to_polytope(Strictness::Lenient).is_err());
        let j: PolytopeJson =
            serde_json::from_str(r#"{"ambient_dim":1,"inequalities":[[1,1]],"vertices":[[2]]}"#).unwrap();
        assert!(j.to_polytope(Strictness::Lenient).is_err());
    }
}
