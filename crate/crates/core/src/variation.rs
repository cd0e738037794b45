//! Variation sums over partitions, total variation, the variation function,
//! and the Jordan split into monotone cone-valued pieces.
//!
//! On a lattice codomain the supremum over all partitions is attained on the
//! full breakpoint grid: refining inside a segment adds nothing because each
//! component is monotone there (affine pieces) or constant (step pieces).
//! That makes total variation exactly computable. On the symmetric-matrix
//! codomain the supremum may fail to exist, so only the grid sum
//! [`BVFunction::grid_variation`] is offered there.

use serde::{Deserialize, Serialize};

use crate::bv::BVFunction;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::interval::Partition;
use crate::report::CheckReport;
use crate::space::Tolerance;

/// Enumeration cap for the brute-force oracle: breakpoints inside the
/// queried window, giving at most 2^12 sub-partitions.
pub const BRUTE_FORCE_CAP: usize = 12;

/// The Jordan pieces of a function: both monotone increasing, both starting
/// at zero, with `f = f(lo) + vplus - vminus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanPair {
    pub vplus: BVFunction,
    pub vminus: BVFunction,
}

impl BVFunction {
    /// Sum of `|f(t_i) - f(t_{i-1})|` over a partition inside the interval.
    pub fn variation_sum(&self, partition: &Partition) -> Result<Element> {
        let mut prev = self.evaluate(partition.lo())?;
        let mut acc = self.space().zero();
        for &t in &partition.points()[1..] {
            let cur = self.evaluate(t)?;
            acc = acc.add(&cur.sub(&prev).abs_val()?);
            prev = cur;
        }
        Ok(acc)
    }

    /// The positive/negative split of the increments over a partition:
    /// `sum of (df)+` and `sum of (df)-`. Their sum is the variation sum,
    /// their difference telescopes to `f(hi) - f(lo)` of the partition.
    pub fn signed_variation_sums(&self, partition: &Partition) -> Result<(Element, Element)> {
        let mut prev = self.evaluate(partition.lo())?;
        let mut plus = self.space().zero();
        let mut minus = self.space().zero();
        for &t in &partition.points()[1..] {
            let cur = self.evaluate(t)?;
            let step = cur.sub(&prev);
            plus = plus.add(&step.pos_part()?);
            minus = minus.add(&step.neg_part()?);
            prev = cur;
        }
        Ok((plus, minus))
    }

    /// Breakpoint grid restricted to `[a, b]`: `a`, every breakpoint strictly
    /// between, then `b`.
    fn window_grid(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        if !(self.interval().contains(a) && self.interval().contains(b) && a < b) {
            return Err(Error::OutOfDomain(format!(
                "window [{a}, {b}] is not a subinterval of [{}, {}]",
                self.interval().lo(),
                self.interval().hi()
            )));
        }
        let mut grid = vec![a];
        grid.extend(
            self.breakpoints()
                .iter()
                .cloned()
                .filter(|&t| a < t && t < b),
        );
        grid.push(b);
        Ok(grid)
    }

    /// Variation sum over the full breakpoint grid restricted to `[a, b]`.
    /// Defined on every codomain; on a lattice it equals the total variation.
    pub fn grid_variation(&self, a: f64, b: f64) -> Result<Element> {
        let grid = self.window_grid(a, b)?;
        self.variation_sum(&Partition::new(grid)?)
    }

    /// Total variation over `[a, b]`: the exact supremum of variation sums
    /// over all partitions. Lattice codomains only.
    pub fn total_variation(&self, a: f64, b: f64) -> Result<Element> {
        if !self.space().is_lattice() {
            return Err(Error::NonLatticeSpace);
        }
        self.grid_variation(a, b)
    }

    /// Total variation over the whole interval.
    pub fn total_variation_full(&self) -> Result<Element> {
        self.total_variation(self.interval().lo(), self.interval().hi())
    }

    /// Independent oracle for [`total_variation`](Self::total_variation):
    /// enumerate every sub-partition of the restricted grid and take the
    /// entrywise maximum of their variation sums.
    pub fn brute_force_variation(&self, a: f64, b: f64) -> Result<Element> {
        if !self.space().is_lattice() {
            return Err(Error::NonLatticeSpace);
        }
        let inside = self
            .breakpoints()
            .iter()
            .filter(|&&t| a <= t && t <= b)
            .count();
        if inside > BRUTE_FORCE_CAP {
            return Err(Error::TooManyBreakpoints {
                cap: BRUTE_FORCE_CAP,
                got: inside,
            });
        }
        let grid = self.window_grid(a, b)?;
        let pts: Vec<Element> = grid
            .iter()
            .map(|&t| self.evaluate(t))
            .collect::<Result<Vec<_>>>()?;

        let interior = pts.len() - 2;
        let mut best: Option<Element> = None;
        for mask in 0u32..(1 << interior) {
            let mut prev = &pts[0];
            let mut acc = self.space().zero();
            for (k, p) in pts.iter().enumerate().skip(1) {
                let keep = k == pts.len() - 1 || mask & (1 << (k - 1)) != 0;
                if keep {
                    acc = acc.add(&p.sub(prev).abs_val()?);
                    prev = p;
                }
            }
            best = Some(match best {
                None => acc,
                Some(b) => entrywise_max(&b, &acc),
            });
        }
        Ok(best.unwrap())
    }

    /// The running total variation `z -> V(f, lo, z)`, represented on the
    /// same breakpoints and in the same mode as `f` (that representation is
    /// exact for both modes). Starts at zero and increases monotonically.
    pub fn variation_function(&self) -> Result<BVFunction> {
        if !self.space().is_lattice() {
            return Err(Error::NonLatticeSpace);
        }
        let mut values = Vec::with_capacity(self.values().len());
        let mut acc = self.space().zero();
        values.push(acc.clone());
        for w in self.values().windows(2) {
            acc = acc.add(&w[1].sub(&w[0]).abs_val()?);
            values.push(acc.clone());
        }
        Ok(self.with_values(values))
    }

    /// Jordan split `v+- = (V_f +- (f - f(lo))) / 2`: monotone increasing,
    /// cone-valued, with `v+ + v- = V_f` and `f = f(lo) + v+ - v-`.
    pub fn jordan_variations(&self) -> Result<JordanPair> {
        let vf = self.variation_function()?;
        let f0 = self.value_at_lo();
        let mut plus = Vec::with_capacity(self.values().len());
        let mut minus = Vec::with_capacity(self.values().len());
        for (v, f) in vf.values().iter().zip(self.values()) {
            let drift = f.sub(f0);
            plus.push(v.add(&drift).scale(0.5));
            minus.push(v.sub(&drift).scale(0.5));
        }
        Ok(JordanPair {
            vplus: self.with_values(plus),
            vminus: self.with_values(minus),
        })
    }

    /// Compare `V(f, lo, hi)` with `V(f, lo, z) + V(f, z, hi)`.
    pub fn additivity_check(&self, z: f64, tol: &Tolerance) -> Result<CheckReport> {
        let (lo, hi) = (self.interval().lo(), self.interval().hi());
        if !(lo < z && z < hi) {
            return Err(Error::OutOfDomain(format!(
                "split point {z} must lie strictly inside [{lo}, {hi}]"
            )));
        }
        let whole = self.total_variation(lo, hi)?;
        let split = self
            .total_variation(lo, z)?
            .add(&self.total_variation(z, hi)?);
        let dev = whole.sub(&split).order_unit_norm()?;
        let mut report = CheckReport::new("thm5.additivity");
        report.record(dev <= tol.eps_cone, dev, || {
            serde_json::json!({ "f": self, "z": z })
        });
        Ok(report)
    }

    /// Constant within tolerance: the grid variation has negligible norm.
    pub fn is_constant(&self, tol: &Tolerance) -> Result<bool> {
        let v = self.grid_variation(self.interval().lo(), self.interval().hi())?;
        Ok(v.order_unit_norm()? <= tol.eps_cone)
    }

    /// Monotone increasing: every consecutive breakpoint increment is in the
    /// cone. This covers both interpolation modes.
    pub fn is_monotone_increasing(&self, tol: &Tolerance) -> Result<bool> {
        for w in self.values().windows(2) {
            if !w[1].sub(&w[0]).in_cone(tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact entrywise maximum on packed coordinates; peer route to
/// [`Element::join`] used by the enumeration oracle.
fn entrywise_max(a: &Element, b: &Element) -> Element {
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| x.max(*y))
        .collect();
    Element::from_raw(a.space(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bv::InterpolationMode;
    use crate::space::SpaceDescriptor;

    fn vec2(a: f64, b: f64) -> Element {
        Element::vector(vec![a, b]).unwrap()
    }

    /// (0,0) -> (1,-1) -> (0,0), linear.
    fn e1() -> BVFunction {
        BVFunction::from_points(
            vec![0.0, 0.5, 1.0],
            vec![vec2(0.0, 0.0), vec2(1.0, -1.0), vec2(0.0, 0.0)],
            InterpolationMode::PiecewiseLinear,
        )
        .unwrap()
    }

    /// t -> (t, 2t) on [0, 1].
    fn ramp() -> BVFunction {
        BVFunction::from_points(
            vec![0.0, 1.0],
            vec![vec2(0.0, 0.0), vec2(1.0, 2.0)],
            InterpolationMode::PiecewiseLinear,
        )
        .unwrap()
    }

    fn constant() -> BVFunction {
        BVFunction::constant(
            crate::interval::OrderedInterval::new(0.0, 1.0).unwrap(),
            vec2(3.0, -1.0),
            InterpolationMode::PiecewiseLinear,
        )
    }

    #[test]
    fn variation_sum_over_coarse_and_fine_partitions() {
        let f = e1();
        let coarse = Partition::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(f.variation_sum(&coarse).unwrap(), vec2(0.0, 0.0));
        let fine = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(f.variation_sum(&fine).unwrap(), vec2(2.0, 2.0));
        assert!(constant().variation_sum(&fine).unwrap().is_zero());
    }

    #[test]
    fn signed_sums_split_the_increments() {
        let f = e1();
        let fine = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        let (plus, minus) = f.signed_variation_sums(&fine).unwrap();
        assert_eq!(plus, vec2(1.0, 1.0));
        assert_eq!(minus, vec2(1.0, 1.0));

        let coarse = Partition::new(vec![0.0, 1.0]).unwrap();
        let (plus, minus) = f.signed_variation_sums(&coarse).unwrap();
        assert!(plus.is_zero());
        assert!(minus.is_zero());

        let (_, minus) = ramp()
            .signed_variation_sums(&Partition::new(vec![0.0, 0.5, 1.0]).unwrap())
            .unwrap();
        assert!(minus.is_zero());
    }

    #[test]
    fn total_variation_on_windows() {
        let f = e1();
        assert_eq!(f.total_variation(0.0, 1.0).unwrap(), vec2(2.0, 2.0));
        assert_eq!(f.total_variation(0.0, 0.5).unwrap(), vec2(1.0, 1.0));
        assert_eq!(ramp().total_variation(0.0, 1.0).unwrap(), vec2(1.0, 2.0));
    }

    #[test]
    fn total_variation_needs_lattice() {
        let m0 = Element::sym_from_square(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let m1 = Element::sym_from_square(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let f = BVFunction::from_points(
            vec![0.0, 1.0],
            vec![m0, m1],
            InterpolationMode::PiecewiseLinear,
        )
        .unwrap();
        assert_eq!(f.total_variation(0.0, 1.0), Err(Error::NonLatticeSpace));
        // the grid sum is still available: |f(1) - f(0)| = identity
        let g = f.grid_variation(0.0, 1.0).unwrap();
        let id = SpaceDescriptor::sym(2).unwrap().unit();
        assert!(g.sub(&id).order_unit_norm().unwrap() < 1e-12);
    }

    #[test]
    fn grid_variation_single_segment() {
        let f = ramp();
        assert_eq!(f.grid_variation(0.25, 0.75).unwrap(), vec2(0.5, 1.0));
    }

    #[test]
    fn empty_window_is_rejected() {
        assert!(matches!(
            e1().total_variation(0.6, 0.4),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            e1().total_variation(0.5, 0.5),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn brute_force_agrees_on_e1() {
        let f = e1();
        assert_eq!(f.brute_force_variation(0.0, 1.0).unwrap(), vec2(2.0, 2.0));
        assert_eq!(
            f.brute_force_variation(0.0, 1.0).unwrap(),
            f.total_variation(0.0, 1.0).unwrap()
        );
    }

    #[test]
    fn brute_force_monotone_is_endpoint_difference() {
        let f = ramp();
        assert_eq!(f.brute_force_variation(0.0, 1.0).unwrap(), vec2(1.0, 2.0));
    }

    #[test]
    fn brute_force_cap_is_enforced() {
        let n = 16;
        let bps: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let vals: Vec<Element> = (0..n).map(|i| vec2(i as f64, (i % 2) as f64)).collect();
        let f = BVFunction::from_points(bps, vals, InterpolationMode::PiecewiseLinear).unwrap();
        assert!(matches!(
            f.brute_force_variation(0.0, 1.0),
            Err(Error::TooManyBreakpoints { cap: 12, got: 16 })
        ));
    }

    #[test]
    fn variation_function_runs_the_tv() {
        let vf = e1().variation_function().unwrap();
        assert_eq!(vf.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(vf.values()[0], vec2(0.0, 0.0));
        assert_eq!(vf.values()[1], vec2(1.0, 1.0));
        assert_eq!(vf.values()[2], vec2(2.0, 2.0));
    }

    #[test]
    fn variation_function_of_monotone_zero_start_is_identity() {
        let f = ramp();
        assert_eq!(f.variation_function().unwrap(), f);
        assert!(constant()
            .variation_function()
            .unwrap()
            .values()
            .iter()
            .all(Element::is_zero));
    }

    #[test]
    fn jordan_pieces_of_e1() {
        let jp = e1().jordan_variations().unwrap();
        assert_eq!(jp.vplus.values()[1], vec2(1.0, 0.0));
        assert_eq!(jp.vplus.values()[2], vec2(1.0, 1.0));
        assert_eq!(jp.vminus.values()[1], vec2(0.0, 1.0));
        assert_eq!(jp.vminus.values()[2], vec2(1.0, 1.0));
    }

    #[test]
    fn jordan_of_monotone_has_zero_minus() {
        let jp = ramp().jordan_variations().unwrap();
        assert!(jp.vminus.values().iter().all(Element::is_zero));
        let jp = constant().jordan_variations().unwrap();
        assert!(jp.vplus.values().iter().all(Element::is_zero));
        assert!(jp.vminus.values().iter().all(Element::is_zero));
    }

    #[test]
    fn additivity_at_breakpoint_and_off_grid() {
        let tol = Tolerance::default();
        let f = e1();
        assert!(f.additivity_check(0.5, &tol).unwrap().all_passed());
        assert!(f.additivity_check(0.25, &tol).unwrap().all_passed());
        // the off-grid split really does produce (0.5,0.5) + (1.5,1.5)
        assert_eq!(f.total_variation(0.0, 0.25).unwrap(), vec2(0.5, 0.5));
        assert_eq!(f.total_variation(0.25, 1.0).unwrap(), vec2(1.5, 1.5));
        assert!(ramp().additivity_check(0.7, &tol).unwrap().all_passed());
    }

    #[test]
    fn constancy_and_monotonicity_predicates() {
        let tol = Tolerance::default();
        assert!(constant().is_constant(&tol).unwrap());
        assert!(!e1().is_constant(&tol).unwrap());
        assert!(ramp().is_monotone_increasing(&tol).unwrap());
        assert!(!e1().is_monotone_increasing(&tol).unwrap());
        assert!(constant().is_monotone_increasing(&tol).unwrap());
    }

    #[test]
    fn hairline_wiggle_counts_as_constant() {
        let f = BVFunction::from_points(
            vec![0.0, 0.5, 1.0],
            vec![vec2(1.0, 1.0), vec2(1.0, 1.0 + 1e-15), vec2(1.0, 1.0)],
            InterpolationMode::PiecewiseLinear,
        )
        .unwrap();
        assert!(f.is_constant(&Tolerance::default()).unwrap());
    }
}
