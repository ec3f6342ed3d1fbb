use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// P¹ with `P₊ = 0`, `P₋ = ∞` and the weak points `γ_s`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MarkedSphere {
    weak_points: Vec<Scalar>,
}

impl MarkedSphere {
    pub fn new(weak_points: Vec<Scalar>) -> Result<Arc<Self>> {
        for (s, g) in weak_points.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::Invalid(format!("weak point {s} coincides with P+")));
            }
            if weak_points[..s].contains(g) {
                return Err(Error::Invalid(format!("duplicate weak point {g}")));
            }
        }
        Ok(Arc::new(MarkedSphere { weak_points }))
    }

    /// The sphere without weak points.
    pub fn plain() -> Arc<Self> {
        Arc::new(MarkedSphere { weak_points: Vec::new() })
    }

    pub fn weak_points(&self) -> &[Scalar] {
        &self.weak_points
    }

    pub fn num_weak(&self) -> usize {
        self.weak_points.len()
    }

    pub fn gamma(&self, s: usize) -> &Scalar {
        &self.weak_points[s]
    }

    /// All marked points: `P₊`, the weak points, `P₋`.
    pub fn points(&self) -> Vec<Point> {
        let mut v = vec![Point::Zero];
        v.extend((0..self.num_weak()).map(Point::Weak));
        v.push(Point::Infinity);
        v
    }
}

/// A marked point of the sphere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    /// `P₊`, local coordinate `z`.
    Zero,
    /// `γ_s`, local coordinate `z − γ_s`.
    Weak(usize),
    /// `P₋`, local coordinate `w = 1/z`.
    Infinity,
}

impl Point {
    pub fn label(&self) -> String {
        match self {
            Point::Zero => "P+".into(),
            Point::Weak(s) => format!("gamma{}", s + 1),
            Point::Infinity => "P-".into(),
        }
    }

    pub fn parse_label(s: &str) -> Result<Point> {
        match s {
            "P+" => Ok(Point::Zero),
            "P-" => Ok(Point::Infinity),
            _ => s
                .strip_prefix("gamma")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(|k| Point::Weak(k - 1))
                .ok_or_else(|| Error::Parse(format!("unknown point label '{s}'"))),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A cycle, recorded by the marked points it encloses counterclockwise.
///
/// `P₋` is never enclosed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cycle {
    enclosed: BTreeSet<Point>,
}

impl Cycle {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let enclosed: BTreeSet<Point> = points.into_iter().collect();
        if enclosed.contains(&Point::Infinity) {
            return Err(Error::Invalid("a cycle never encloses P-".into()));
        }
        Ok(Cycle { enclosed })
    }

    /// Encloses `P₊` and every weak point.
    pub fn separating(sphere: &MarkedSphere) -> Self {
        let mut enclosed = BTreeSet::from([Point::Zero]);
        enclosed.extend((0..sphere.num_weak()).map(Point::Weak));
        Cycle { enclosed }
    }

    /// A small circle around `P₊` only.
    pub fn around_zero() -> Self {
        Cycle { enclosed: BTreeSet::from([Point::Zero]) }
    }

    pub fn enclosed(&self) -> impl Iterator<Item = &Point> {
        self.enclosed.iter()
    }

    pub fn encloses(&self, p: Point) -> bool {
        self.enclosed.contains(&p)
    }

    pub fn validate(&self, sphere: &MarkedSphere) -> Result<()> {
        for p in &self.enclosed {
            if let Point::Weak(s) = p {
                if *s >= sphere.num_weak() {
                    return Err(Error::Invalid(format!("cycle encloses unknown point {p}")));
                }
            }
        }
        Ok(())
    }

    pub fn labels(&self) -> Vec<String> {
        self.enclosed.iter().map(Point::label).collect()
    }

    pub fn from_labels(labels: &[String]) -> Result<Self> {
        Cycle::new(labels.iter().map(|l| Point::parse_label(l)).collect::<Result<Vec<_>>>()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_points_are_validated() {
        assert!(MarkedSphere::new(vec![Scalar::zero()]).is_err());
        assert!(MarkedSphere::new(vec![Scalar::one(), Scalar::one()]).is_err());
        assert!(MarkedSphere::new(vec![Scalar::one(), Scalar::i()]).is_ok());
    }

    #[test]
    fn labels_round_trip() {
        for p in [Point::Zero, Point::Weak(0), Point::Weak(3), Point::Infinity] {
            assert_eq!(Point::parse_label(&p.label()).unwrap(), p);
        }
        assert!(Point::parse_label("gamma0").is_err());
        assert!(Cycle::new([Point::Infinity]).is_err());
    }
}
