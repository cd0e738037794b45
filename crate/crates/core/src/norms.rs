//! The ordered-normed-space layer on BV functions.
//!
//! Two distinct order structures coexist here and are deliberately kept
//! apart in the API. The `pointwise_*` operations use the codomain's
//! absolute value point by point (cone `BV+` of cone-valued functions).
//! The `orderv_*` operations use the variation-based absolute value
//! `|f|_V = |f(lo)| + V_f` (cone `BV0+` of monotone increasing cone-valued
//! functions). Mixing the two silently is a classic source of confusion, so
//! nothing here is named plain `join` or `abs`.

use serde::{Deserialize, Serialize};

use crate::bv::BVFunction;
use crate::error::Result;
use crate::space::Tolerance;

/// How a norm value was obtained, and with what evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    /// Direct formula on the function's data.
    #[serde(rename = "closed_form")]
    ClosedForm,
    /// Infimum over a feasible set, reported with its minimizer.
    #[serde(rename = "certified_infimum")]
    CertifiedInfimum,
}

/// A computed norm; for infimum norms the optimizing function comes along
/// as a feasibility certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub method: NormMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BVFunction>,
}

impl NormResult {
    fn closed_form(value: f64) -> Self {
        NormResult {
            value,
            method: NormMethod::ClosedForm,
            certificate: None,
        }
    }

    fn certified(value: f64, certificate: BVFunction) -> Self {
        NormResult {
            value,
            method: NormMethod::CertifiedInfimum,
            certificate: Some(certificate),
        }
    }
}

/// Membership in `BV+`: every value lands in the codomain's cone. Checking
/// breakpoints suffices; segments stay inside by convexity of the cone.
pub fn in_bv_plus(f: &BVFunction, tol: &Tolerance) -> Result<bool> {
    for v in f.values() {
        if !v.in_cone(tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `BV0+`: cone-valued and monotone increasing.
pub fn in_bv0_plus(f: &BVFunction, tol: &Tolerance) -> Result<bool> {
    Ok(in_bv_plus(f, tol)? && f.is_monotone_increasing(tol)?)
}

/// The order-unit norm of BV under the pointwise cone: the sup norm.
/// Attained at a breakpoint because segments are affine or constant.
pub fn sup_norm(f: &BVFunction) -> Result<f64> {
    let mut best = 0.0f64;
    for v in f.values() {
        best = best.max(v.order_unit_norm()?);
    }
    Ok(best)
}

pub fn sup_norm_result(f: &BVFunction) -> Result<NormResult> {
    Ok(NormResult::closed_form(sup_norm(f)?))
}

/// The variation-based absolute value `z -> |f(lo)| + V_f(z)`, a member of
/// `BV0+` with `variation_abs(f) +- f` in `BV0+` as well.
pub fn variation_abs(f: &BVFunction) -> Result<BVFunction> {
    let start_abs = f.value_at_lo().abs_val()?;
    let vf = f.variation_function()?;
    vf.map_values(|v| Ok(start_abs.add(v)))
}

/// `||f||_BV = || |f(lo)| + V(f) ||`, the norm of the terminal value of
/// [`variation_abs`]. Dominates the sup norm.
pub fn bv_norm(f: &BVFunction) -> Result<f64> {
    let total = f.total_variation_full()?;
    f.value_at_lo().abs_val()?.add(&total).order_unit_norm()
}

pub fn bv_norm_result(f: &BVFunction) -> Result<NormResult> {
    Ok(NormResult::closed_form(bv_norm(f)?))
}

/// The infimum norm `inf { sup_norm(g) : g in BV0+, g +- f in BV0+ }`.
///
/// The minimizer is `g* = variation_abs(f)`, in closed form: it is feasible,
/// and any feasible g dominates it pointwise, since monotonicity of `g +- f`
/// forces `g`'s increments above `|f|`'s increments and cone-membership of
/// `g +- f` forces `g(lo) >= |f(lo)|`. Being monotone, `g*` attains its sup
/// norm at the right endpoint, so the value equals [`bv_norm`].
pub fn inf_norm_sup_objective(f: &BVFunction) -> Result<NormResult> {
    let g = variation_abs(f)?;
    Ok(NormResult::certified(sup_norm(&g)?, g))
}

/// The infimum norm `inf { bv_norm(g) : g in BV0+, g +- f in BV0+ }`, with
/// the same minimizer as [`inf_norm_sup_objective`]: for monotone
/// cone-valued g the two objectives agree (`|g(lo)| + V(g) = g(hi)`), so
/// pointwise domination at the right endpoint settles both.
pub fn inf_norm_bv_objective(f: &BVFunction) -> Result<NormResult> {
    let g = variation_abs(f)?;
    Ok(NormResult::certified(bv_norm(&g)?, g))
}

/// Join in the variation order: `(f + g + |f - g|_V) / 2`.
pub fn orderv_join(f: &BVFunction, g: &BVFunction) -> Result<BVFunction> {
    let vabs = variation_abs(&f.sub(g)?)?;
    Ok(f.add(g)?.add(&vabs)?.scale(0.5))
}

/// Meet in the variation order: `(f + g - |f - g|_V) / 2`, equivalently
/// `-((-f) orderv_join (-g))`.
pub fn orderv_meet(f: &BVFunction, g: &BVFunction) -> Result<BVFunction> {
    let vabs = variation_abs(&f.sub(g)?)?;
    Ok(f.add(g)?.sub(&vabs)?.scale(0.5))
}

/// Pointwise absolute value `z -> |f(z)|`, on f's own grid.
pub fn pointwise_abs(f: &BVFunction) -> Result<BVFunction> {
    f.map_values(|v| v.abs_val())
}

/// Pointwise join `z -> f(z) join g(z)` on the merged grid.
pub fn pointwise_join(f: &BVFunction, g: &BVFunction) -> Result<BVFunction> {
    f.zip_with(g, |a, b| a.join(b))
}

/// Pointwise meet `z -> f(z) meet g(z)` on the merged grid.
pub fn pointwise_meet(f: &BVFunction, g: &BVFunction) -> Result<BVFunction> {
    f.zip_with(g, |a, b| a.meet(b))
}
