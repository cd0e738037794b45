use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::interval::OrderedInterval;
use crate::space::SpaceDescriptor;

/// How a function behaves between its breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterpolationMode {
    /// Affine interpolation between the bracketing breakpoints.
    #[serde(rename = "linear")]
    PiecewiseLinear,
    /// Value of the greatest breakpoint at or below the parameter.
    #[serde(rename = "constant_right")]
    PiecewiseConstantRight,
}

/// A finitely represented function from an interval into one of the ordered
/// spaces: one value per breakpoint plus an interpolation mode.
///
/// Breakpoints strictly increase and span the interval exactly; all values
/// live in a single space. These invariants are established at construction
/// and preserved by every operation.
#[derive(Debug, Clone, PartialEq)]
pub struct BVFunction {
    interval: OrderedInterval,
    breakpoints: Vec<f64>,
    values: Vec<Element>,
    mode: InterpolationMode,
}

impl BVFunction {
    pub fn new(
        interval: OrderedInterval,
        breakpoints: Vec<f64>,
        values: Vec<Element>,
        mode: InterpolationMode,
    ) -> Result<Self> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "need matching breakpoints/values with length >= 2, got {}/{}",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if breakpoints[0] != interval.lo() || *breakpoints.last().unwrap() != interval.hi() {
            return Err(Error::InvalidArgument(
                "breakpoints must start and end at the interval endpoints".into(),
            ));
        }
        let space = values[0].space();
        for v in &values {
            if v.space() != space {
                return Err(Error::SpaceMismatch(
                    "function values span different spaces".into(),
                ));
            }
            v.check_finite()?;
        }
        Ok(BVFunction {
            interval,
            breakpoints,
            values,
            mode,
        })
    }

    /// Build from breakpoints alone; the interval is their span.
    pub fn from_points(
        breakpoints: Vec<f64>,
        values: Vec<Element>,
        mode: InterpolationMode,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidArgument(
                "need at least two breakpoints".into(),
            ));
        }
        let interval = OrderedInterval::new(breakpoints[0], *breakpoints.last().unwrap())?;
        BVFunction::new(interval, breakpoints, values, mode)
    }

    /// The constant function with the given value.
    pub fn constant(interval: OrderedInterval, value: Element, mode: InterpolationMode) -> Self {
        BVFunction {
            interval,
            breakpoints: vec![interval.lo(), interval.hi()],
            values: vec![value.clone(), value],
            mode,
        }
    }

    pub fn interval(&self) -> OrderedInterval {
        self.interval
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn mode(&self) -> InterpolationMode {
        self.mode
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.values[0].space()
    }

    pub fn value_at_lo(&self) -> &Element {
        &self.values[0]
    }

    pub fn value_at_hi(&self) -> &Element {
        self.values.last().unwrap()
    }

    /// Evaluate at a parameter inside the interval. A parameter equal to a
    /// breakpoint returns the stored value in both modes.
    pub fn evaluate(&self, t: f64) -> Result<Element> {
        if !t.is_finite() || !self.interval.contains(t) {
            return Err(Error::OutOfDomain(format!(
                "t = {t} outside [{}, {}]",
                self.interval.lo(),
                self.interval.hi()
            )));
        }
        // index of the greatest breakpoint <= t; t >= lo makes this >= 1
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        let i = idx - 1;
        if self.breakpoints[i] == t {
            return Ok(self.values[i].clone());
        }
        match self.mode {
            InterpolationMode::PiecewiseConstantRight => Ok(self.values[i].clone()),
            InterpolationMode::PiecewiseLinear => {
                let (b0, b1) = (self.breakpoints[i], self.breakpoints[i + 1]);
                let u = (t - b0) / (b1 - b0);
                let step = self.values[i + 1].sub(&self.values[i]);
                Ok(self.values[i].add(&step.scale(u)))
            }
        }
    }

    /// Re-represent on a finer (or equal) grid spanning the same interval.
    pub fn resample(&self, grid: &[f64]) -> Result<BVFunction> {
        if grid == self.breakpoints {
            return Ok(self.clone());
        }
        let values = grid
            .iter()
            .map(|&t| self.evaluate(t))
            .collect::<Result<Vec<_>>>()?;
        BVFunction::new(self.interval, grid.to_vec(), values, self.mode)
    }

    /// Sorted union of both breakpoint grids.
    pub fn merged_grid(&self, other: &BVFunction) -> Vec<f64> {
        let mut grid: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup();
        grid
    }

    fn check_compatible(&self, other: &BVFunction) -> Result<()> {
        if self.interval != other.interval {
            return Err(Error::IntervalMismatch);
        }
        self.values[0].same_space(&other.values[0])?;
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    /// Combine two functions value-by-value on the merged breakpoint grid.
    pub fn zip_with(
        &self,
        other: &BVFunction,
        op: impl Fn(&Element, &Element) -> Result<Element>,
    ) -> Result<BVFunction> {
        self.check_compatible(other)?;
        let grid = self.merged_grid(other);
        let a = self.resample(&grid)?;
        let b = other.resample(&grid)?;
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| op(x, y))
            .collect::<Result<Vec<_>>>()?;
        BVFunction::new(self.interval, grid, values, self.mode)
    }

    pub fn add(&self, other: &BVFunction) -> Result<BVFunction> {
        self.zip_with(other, |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, other: &BVFunction) -> Result<BVFunction> {
        self.zip_with(other, |a, b| Ok(a.sub(b)))
    }

    pub fn scale(&self, alpha: f64) -> BVFunction {
        BVFunction {
            interval: self.interval,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.scale(alpha)).collect(),
            mode: self.mode,
        }
    }

    pub fn neg(&self) -> BVFunction {
        self.scale(-1.0)
    }

    /// Apply a fallible map to every value, keeping the grid.
    pub fn map_values(&self, op: impl Fn(&Element) -> Result<Element>) -> Result<BVFunction> {
        let values = self.values.iter().map(op).collect::<Result<Vec<_>>>()?;
        BVFunction::new(self.interval, self.breakpoints.clone(), values, self.mode)
    }

    /// Same grid and mode, new values.
    pub(crate) fn with_values(&self, values: Vec<Element>) -> BVFunction {
        debug_assert_eq!(values.len(), self.breakpoints.len());
        BVFunction {
            interval: self.interval,
            breakpoints: self.breakpoints.clone(),
            values,
            mode: self.mode,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawBVFunction {
    interval: [f64; 2],
    mode: InterpolationMode,
    breakpoints: Vec<f64>,
    values: Vec<serde_json::Value>,
    space: SpaceDescriptor,
}

impl Serialize for BVFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawBVFunction {
            interval: self.interval.into(),
            mode: self.mode,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v.data_json()).collect(),
            space: self.space(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BVFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawBVFunction::deserialize(deserializer)?;
        let interval = OrderedInterval::try_from(raw.interval).map_err(D::Error::custom)?;
        let values = raw
            .values
            .iter()
            .map(|v| Element::data_from_json(raw.space, v))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        BVFunction::new(interval, raw.breakpoints, values, raw.mode).map_err(D::Error::custom)
    }
}
