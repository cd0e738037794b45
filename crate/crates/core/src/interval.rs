use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nondegenerate real interval [lo, hi]; the domain of every function here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct OrderedInterval {
    lo: f64,
    hi: f64,
}

impl OrderedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "interval needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(OrderedInterval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

impl TryFrom<[f64; 2]> for OrderedInterval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        OrderedInterval::new(v[0], v[1])
    }
}

impl From<OrderedInterval> for [f64; 2] {
    fn from(i: OrderedInterval) -> Self {
        [i.lo, i.hi]
    }
}

/// A finite chain lo = t_0 < t_1 < ... < t_n = hi inside an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "partition needs at least two points".into(),
            ));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("partition points must be finite".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "partition points must be strictly increasing".into(),
            ));
        }
        Ok(Partition { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        *self.points.last().unwrap()
    }

    /// The interval this partition spans.
    pub fn span(&self) -> OrderedInterval {
        OrderedInterval::new(self.lo(), self.hi()).unwrap()
    }

    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        self.lo() == coarser.lo()
            && self.hi() == coarser.hi()
            && coarser.points.iter().all(|p| self.points.contains(p))
    }
}

impl TryFrom<Vec<f64>> for Partition {
    type Error = Error;
    fn try_from(points: Vec<f64>) -> Result<Self> {
        Partition::new(points)
    }
}

impl From<Partition> for Vec<f64> {
    fn from(p: Partition) -> Self {
        p.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_needs_lo_below_hi() {
        assert!(OrderedInterval::new(0.0, 1.0).is_ok());
        assert!(OrderedInterval::new(1.0, 1.0).is_err());
        assert!(OrderedInterval::new(2.0, 1.0).is_err());
        assert!(OrderedInterval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn partition_needs_strict_increase() {
        assert!(Partition::new(vec![0.0, 0.5, 1.0]).is_ok());
        assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Partition::new(vec![0.0]).is_err());
    }

    #[test]
    fn refinement_is_superset_with_same_ends() {
        let coarse = Partition::new(vec![0.0, 1.0]).unwrap();
        let fine = Partition::new(vec![0.0, 0.25, 1.0]).unwrap();
        assert!(fine.is_refinement_of(&coarse));
        assert!(!coarse.is_refinement_of(&fine));
    }
}
