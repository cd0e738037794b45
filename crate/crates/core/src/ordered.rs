//! Cone tests, absolute value, lattice operations, the order-unit norm, and
//! orthogonality predicates on the two concrete spaces.
//!
//! The componentwise lattice computes everything entrywise and exactly. The
//! symmetric-matrix space routes its absolute value, positive/negative parts
//! and norm through the spectral calculus of [`crate::eigen`]. Cone
//! membership is tolerance-relative: an entry (or eigenvalue) may sit below
//! zero by `eps_cone` times the element's scale, `max(1, ||a||)`.

use rand::Rng;

use crate::eigen::sym_eigendecomposition;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::space::{SpaceDescriptor, SpaceKind, Tolerance};

/// Cone defect (how far the most negative entry/eigenvalue sits below zero)
/// together with the scale `max(1, ||a||)` used to normalize it.
fn cone_defect_and_scale(a: &Element, eps_eig: f64) -> Result<(f64, f64)> {
    a.check_finite()?;
    match a.space().kind {
        SpaceKind::ComponentwiseLattice => {
            let min = a.data().iter().cloned().fold(f64::INFINITY, f64::min);
            Ok(((-min).max(0.0), a.max_abs_entry().max(1.0)))
        }
        SpaceKind::SymmetricMatrices => {
            let eig = sym_eigendecomposition(a, eps_eig)?;
            let min = eig.values().iter().cloned().fold(f64::INFINITY, f64::min);
            let spectral = eig.values().iter().fold(0.0f64, |m, l| m.max(l.abs()));
            Ok(((-min).max(0.0), spectral.max(1.0)))
        }
    }
}

impl Element {
    /// Cone membership, relative to `eps_cone` at the element's scale.
    pub fn in_cone(&self, tol: &Tolerance) -> Result<bool> {
        let (defect, scale) = cone_defect_and_scale(self, tol.eps_eig)?;
        Ok(defect <= tol.eps_cone * scale)
    }

    /// The partial order: `self <= other` iff `other - self` is in the cone.
    pub fn leq(&self, other: &Element, tol: &Tolerance) -> Result<bool> {
        self.same_space(other)?;
        other.sub(self).in_cone(tol)
    }

    /// Absolute value: entrywise on vectors, spectral on matrices.
    pub fn abs_val(&self) -> Result<Element> {
        self.check_finite()?;
        match self.space().kind {
            SpaceKind::ComponentwiseLattice => Ok(Element::from_raw(
                self.space(),
                self.data().iter().map(|v| v.abs()).collect(),
            )),
            SpaceKind::SymmetricMatrices => {
                let eig = sym_eigendecomposition(self, Tolerance::default().eps_eig)?;
                Ok(Element::from_raw(self.space(), eig.map_packed(f64::abs)))
            }
        }
    }

    /// Positive part of the orthogonal decomposition `a = a+ - a-`.
    pub fn pos_part(&self) -> Result<Element> {
        self.check_finite()?;
        match self.space().kind {
            SpaceKind::ComponentwiseLattice => Ok(Element::from_raw(
                self.space(),
                self.data().iter().map(|v| v.max(0.0)).collect(),
            )),
            SpaceKind::SymmetricMatrices => {
                let eig = sym_eigendecomposition(self, Tolerance::default().eps_eig)?;
                Ok(Element::from_raw(
                    self.space(),
                    eig.map_packed(|l| l.max(0.0)),
                ))
            }
        }
    }

    /// Negative part of the orthogonal decomposition `a = a+ - a-`.
    pub fn neg_part(&self) -> Result<Element> {
        self.check_finite()?;
        match self.space().kind {
            SpaceKind::ComponentwiseLattice => Ok(Element::from_raw(
                self.space(),
                self.data().iter().map(|v| (-v).max(0.0)).collect(),
            )),
            SpaceKind::SymmetricMatrices => {
                let eig = sym_eigendecomposition(self, Tolerance::default().eps_eig)?;
                Ok(Element::from_raw(
                    self.space(),
                    eig.map_packed(|l| (-l).max(0.0)),
                ))
            }
        }
    }

    /// `(a + b + |a - b|) / 2`; the entrywise maximum on the lattice.
    pub fn join(&self, other: &Element) -> Result<Element> {
        self.same_space(other)?;
        let diff_abs = self.sub(other).abs_val()?;
        Ok(self.add(other).add(&diff_abs).scale(0.5))
    }

    /// `(a + b - |a - b|) / 2`; the entrywise minimum on the lattice.
    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.same_space(other)?;
        let diff_abs = self.sub(other).abs_val()?;
        Ok(self.add(other).sub(&diff_abs).scale(0.5))
    }

    /// Norm determined by the order unit: max absolute entry on the lattice,
    /// spectral radius on symmetric matrices.
    pub fn order_unit_norm(&self) -> Result<f64> {
        self.check_finite()?;
        match self.space().kind {
            SpaceKind::ComponentwiseLattice => Ok(self.max_abs_entry()),
            SpaceKind::SymmetricMatrices => {
                let eig = sym_eigendecomposition(self, Tolerance::default().eps_eig)?;
                Ok(eig.values().iter().fold(0.0f64, |m, l| m.max(l.abs())))
            }
        }
    }

    /// How far `|a - b| = a + b` is from holding, in the order-unit norm.
    pub fn orthogonality_defect(&self, other: &Element) -> Result<f64> {
        self.same_space(other)?;
        let lhs = self.sub(other).abs_val()?;
        lhs.sub(&self.add(other)).order_unit_norm()
    }

    /// Orthogonality of cone elements: `|a - b| = a + b` within tolerance.
    pub fn orthogonal(&self, other: &Element, tol: &Tolerance) -> Result<bool> {
        if !self.in_cone(tol)? || !other.in_cone(tol)? {
            return Err(Error::NotInCone);
        }
        let scale = 1.0f64
            .max(self.order_unit_norm()?)
            .max(other.order_unit_norm()?);
        Ok(self.orthogonality_defect(other)? <= tol.eps_cone * scale)
    }
}

/// Sampled check of infinity-orthogonality: `||x a + y b|| = max(||x a||, ||y b||)`
/// over random coefficient pairs in [-10, 10]^2. This samples the identity,
/// it does not prove it; the check id says so.
pub fn infty_orthogonal_sampled<R: Rng>(
    a: &Element,
    b: &Element,
    samples: u32,
    tol: &Tolerance,
    rng: &mut R,
) -> Result<CheckReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    if !a.in_cone(tol)? || !b.in_cone(tol)? {
        return Err(Error::NotInCone);
    }
    let mut report = CheckReport::new("perp_infty.sampled");
    for _ in 0..samples {
        let alpha: f64 = rng.gen_range(-10.0..10.0);
        let beta: f64 = rng.gen_range(-10.0..10.0);
        let sa = a.scale(alpha);
        let sb = b.scale(beta);
        let lhs = sa.add(&sb).order_unit_norm()?;
        let rhs = sa.order_unit_norm()?.max(sb.order_unit_norm()?);
        let dev = (lhs - rhs).abs();
        report.record(dev <= tol.eps_cone * rhs.max(1.0), dev, || {
            serde_json::json!({ "alpha": alpha, "beta": beta, "a": a, "b": b })
        });
    }
    Ok(report)
}

/// An orthogonal pair (x, y) plus, on demand, elements dominated by y or
/// sharing y's support block; used to construct hypotheses for the
/// absolute-value axioms instead of rejection sampling.
struct OrthogonalFamily {
    x: Element,
    y: Element,
    /// 0 <= z <= y, orthogonal to x by construction.
    z_below_y: Element,
    /// Cone element on y's support block, orthogonal to x.
    w_beside_y: Element,
}

fn orthogonal_family<R: Rng>(space: SpaceDescriptor, scale: f64, rng: &mut R) -> Result<OrthogonalFamily> {
    let n = space.dim;
    let mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let pos = |rng: &mut R| rng.gen_range(0.0..scale);
    match space.kind {
        SpaceKind::ComponentwiseLattice => {
            let mut x = vec![0.0; n];
            let mut y = vec![0.0; n];
            let mut z = vec![0.0; n];
            let mut w = vec![0.0; n];
            for i in 0..n {
                if mask[i] {
                    x[i] = pos(rng);
                } else {
                    y[i] = pos(rng);
                    z[i] = y[i] * rng.gen_range(0.0..=1.0);
                    w[i] = pos(rng);
                }
            }
            Ok(OrthogonalFamily {
                x: Element::from_raw(space, x),
                y: Element::from_raw(space, y),
                z_below_y: Element::from_raw(space, z),
                w_beside_y: Element::from_raw(space, w),
            })
        }
        SpaceKind::SymmetricMatrices => {
            // Build everything in one random eigenbasis, so supports commute.
            let seed = crate::harness::gen_element(space, scale.max(1.0), rng);
            let eig = sym_eigendecomposition(&seed, Tolerance::default().eps_eig)?;
            let mut dx = vec![0.0; n];
            let mut dy = vec![0.0; n];
            let mut dz = vec![0.0; n];
            let mut dw = vec![0.0; n];
            for i in 0..n {
                if mask[i] {
                    dx[i] = pos(rng);
                } else {
                    dy[i] = pos(rng);
                    dz[i] = dy[i] * rng.gen_range(0.0..=1.0);
                    dw[i] = pos(rng);
                }
            }
            Ok(OrthogonalFamily {
                x: Element::from_raw(space, eig.with_diagonal(&dx)),
                y: Element::from_raw(space, eig.with_diagonal(&dy)),
                z_below_y: Element::from_raw(space, eig.with_diagonal(&dz)),
                w_beside_y: Element::from_raw(space, eig.with_diagonal(&dw)),
            })
        }
    }
}

/// Randomized verification of the five absolute-value axioms on a space:
/// (a) fixes the cone, (b) straddles it, (c) is absolutely homogeneous,
/// (d) passes orthogonality down dominated elements, (e) passes it through
/// absolute values of sums. Hypotheses for (d)/(e) are constructed from
/// disjoint supports (or commuting spectral blocks) rather than sampled.
pub fn check_abs_axioms<R: Rng>(
    space: SpaceDescriptor,
    trials: u32,
    tol: &Tolerance,
    rng: &mut R,
) -> Result<Vec<CheckReport>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let scale = 4.0;
    let suffix = match space.kind {
        SpaceKind::ComponentwiseLattice => "lattice",
        SpaceKind::SymmetricMatrices => "sym",
    };
    let mut reports: Vec<CheckReport> = ["a", "b", "c", "d", "e"]
        .iter()
        .map(|axiom| CheckReport::new(format!("def3.4{axiom}.{suffix}")))
        .collect();

    for _ in 0..trials {
        // (a) |x| = x on the cone
        let x = crate::harness::gen_cone_element(space, scale, rng)?;
        let dev = x.abs_val()?.sub(&x).order_unit_norm()?;
        let s = x.order_unit_norm()?.max(1.0);
        reports[0].record(dev <= tol.eps_cone * s, dev, || serde_json::json!({ "x": x }));

        // (b) |x| +- x in the cone
        let x = crate::harness::gen_element(space, scale, rng);
        let ax = x.abs_val()?;
        let (d1, s1) = cone_defect_and_scale(&ax.add(&x), tol.eps_eig)?;
        let (d2, s2) = cone_defect_and_scale(&ax.sub(&x), tol.eps_eig)?;
        let ok = d1 <= tol.eps_cone * s1 && d2 <= tol.eps_cone * s2;
        reports[1].record(ok, d1.max(d2), || serde_json::json!({ "x": x }));

        // (c) |alpha x| = |alpha| |x|
        let x = crate::harness::gen_element(space, scale, rng);
        let alpha: f64 = rng.gen_range(-scale..scale);
        let dev = x
            .scale(alpha)
            .abs_val()?
            .sub(&x.abs_val()?.scale(alpha.abs()))
            .order_unit_norm()?;
        let s = (alpha.abs() * x.order_unit_norm()?).max(1.0);
        reports[2].record(dev <= tol.eps_cone * s, dev, || {
            serde_json::json!({ "x": x, "alpha": alpha })
        });

        // (d) x orthogonal to y and 0 <= z <= y implies x orthogonal to z
        let fam = orthogonal_family(space, scale, rng)?;
        let dev = fam.x.orthogonality_defect(&fam.z_below_y)?;
        let s = 1.0f64
            .max(fam.x.order_unit_norm()?)
            .max(fam.z_below_y.order_unit_norm()?);
        reports[3].record(dev <= tol.eps_cone * s, dev, || {
            serde_json::json!({ "x": fam.x, "y": fam.y, "z": fam.z_below_y })
        });

        // (e) x orthogonal to y and z implies x orthogonal to |y +- z|
        let fam = orthogonal_family(space, scale, rng)?;
        let (y, w) = (&fam.y, &fam.w_beside_y);
        let plus = y.add(w).abs_val()?;
        let minus = y.sub(w).abs_val()?;
        let d1 = fam.x.orthogonality_defect(&plus)?;
        let d2 = fam.x.orthogonality_defect(&minus)?;
        let s = 1.0f64
            .max(fam.x.order_unit_norm()?)
            .max(plus.order_unit_norm()?)
            .max(minus.order_unit_norm()?);
        let ok = d1 <= tol.eps_cone * s && d2 <= tol.eps_cone * s;
        reports[4].record(ok, d1.max(d2), || {
            serde_json::json!({ "x": fam.x, "y": y, "z": w })
        });
    }
    Ok(reports)
}
