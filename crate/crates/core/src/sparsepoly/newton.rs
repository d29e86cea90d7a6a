use super::SparsePoly;
use crate::arith::val_rat;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "ratio_str")]
    pub slope: Rational64,
    pub length: u64,
    pub start: (u64, i64),
    pub end: (u64, i64),
}

impl Segment {
    /// Valuation `-slope` of the roots attached to this segment, when integral.
    pub fn root_valuation(&self) -> Option<i64> {
        if self.slope.is_integer() {
            Some(-self.slope.to_integer())
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(u64, i64)>,
    pub segments: Vec<Segment>,
}

/// Lower convex hull of `(exponent, v_p(coeff))`.
pub fn newton_polygon(f: &SparsePoly, p: u64) -> NewtonPolygon {
    let pts: Vec<(u64, i64)> = f.terms().iter().map(|(e, c)| (*e, val_rat(c, p))).collect();
    lower_hull(&pts)
}

pub(crate) fn lower_hull(pts: &[(u64, i64)]) -> NewtonPolygon {
    let mut hull: Vec<(u64, i64)> = Vec::new();
    for &pt in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b unless it lies strictly below segment a→pt
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment {
                slope: Rational64::new(w[1].1 - w[0].1, len as i64),
                length: len,
                start: w[0],
                end: w[1],
            }
        })
        .collect();
    NewtonPolygon { vertices: hull, segments }
}

mod ratio_str {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
