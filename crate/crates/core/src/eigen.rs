use crate::element::Element;
use crate::error::{Error, Result};
use crate::space::SpaceKind;

/// Eigendecomposition a = Q diag(values) Q^T of a symmetric matrix element.
#[derive(Debug, Clone)]
pub struct SymEigen {
    dim: usize,
    /// Row-major d x d orthogonal matrix; column k is the k-th eigenvector.
    vectors: Vec<f64>,
    values: Vec<f64>,
}

impl SymEigen {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entry Q[i][k].
    pub fn vector_entry(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.dim + k]
    }

    /// Packed lower triangle of Q g(diag) Q^T, for spectral functions g.
    pub fn map_packed(&self, g: impl Fn(f64) -> f64) -> Vec<f64> {
        let mapped: Vec<f64> = self.values.iter().map(|&l| g(l)).collect();
        self.with_diagonal(&mapped)
    }

    /// Packed lower triangle of Q diag(entries) Q^T for arbitrary diagonals;
    /// lets callers build commuting families in one eigenbasis.
    pub fn with_diagonal(&self, diag: &[f64]) -> Vec<f64> {
        let d = self.dim;
        debug_assert_eq!(diag.len(), d);
        let mut out = vec![0.0; d * (d + 1) / 2];
        for i in 0..d {
            for j in 0..=i {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += self.vector_entry(i, k) * diag[k] * self.vector_entry(j, k);
                }
                out[i * (i + 1) / 2 + j] = acc;
            }
        }
        out
    }
}

/// Frobenius norm of a packed symmetric matrix.
fn fro_norm_packed(data: &[f64], d: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..=i {
            let v = data[i * (i + 1) / 2 + j];
            acc += if i == j { v * v } else { 2.0 * v * v };
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a symmetric matrix element.
///
/// Sweeps rotate away each off-diagonal entry in turn until the off-diagonal
/// Frobenius mass drops to `eps_eig` times the Frobenius norm of the input.
/// Convergence on symmetric input is unconditional; the sweep cap of
/// 100 d^2 only guards against non-finite input slipping through.
pub fn sym_eigendecomposition(a: &Element, eps_eig: f64) -> Result<SymEigen> {
    if a.space().kind != SpaceKind::SymmetricMatrices {
        return Err(Error::InvalidArgument(
            "eigendecomposition needs a symmetric-matrix element".into(),
        ));
    }
    a.check_finite()?;
    let d = a.space().dim;
    let target = eps_eig * fro_norm_packed(a.data(), d);

    // Work on the full square form; g is overwritten in place.
    let mut g = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            g[i * d + j] = a.sym_entry(i, j);
        }
    }
    let mut q = vec![0.0; d * d];
    for i in 0..d {
        q[i * d + i] = 1.0;
    }

    let max_sweeps = 100 * d * d;
    for _ in 0..=max_sweeps {
        let mut off = 0.0;
        for p in 0..d {
            for r in (p + 1)..d {
                off += 2.0 * g[p * d + r] * g[p * d + r];
            }
        }
        if off.sqrt() <= target {
            let values = (0..d).map(|i| g[i * d + i]).collect();
            return Ok(SymEigen {
                dim: d,
                vectors: q,
                values,
            });
        }

        for p in 0..d {
            for r in (p + 1)..d {
                let apq = g[p * d + r];
                if apq == 0.0 {
                    continue;
                }
                let tau = (g[r * d + r] - g[p * d + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // columns p, r of g  (g <- g J)
                for i in 0..d {
                    let gip = g[i * d + p];
                    let gir = g[i * d + r];
                    g[i * d + p] = c * gip - s * gir;
                    g[i * d + r] = s * gip + c * gir;
                }
                // rows p, r of g  (g <- J^T g)
                for j in 0..d {
                    let gpj = g[p * d + j];
                    let grj = g[r * d + j];
                    g[p * d + j] = c * gpj - s * grj;
                    g[r * d + j] = s * gpj + c * grj;
                }
                // accumulate q <- q J
                for i in 0..d {
                    let qip = q[i * d + p];
                    let qir = q[i * d + r];
                    q[i * d + p] = c * qip - s * qir;
                    q[i * d + r] = s * qip + c * qir;
                }
            }
        }
    }

    Err(Error::NumericalFailure(format!(
        "Jacobi sweep cap of {max_sweeps} reached"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// Closed-form eigenvalues of [[a,b],[b,c]], ascending.
    fn eig2x2(a: f64, b: f64, c: f64) -> (f64, f64) {
        let mean = 0.5 * (a + c);
        let disc = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        (mean - disc, mean + disc)
    }

    #[test]
    fn diagonal_matrix_is_left_alone() {
        let m = Element::sym_from_square(&[vec![2.0, 0.0], vec![0.0, 5.0]]).unwrap();
        let e = sym_eigendecomposition(&m, 1e-12).unwrap();
        assert_eq!(sorted(e.values().to_vec()), vec![2.0, 5.0]);
        assert_eq!(e.vector_entry(0, 0).abs(), 1.0);
        assert_eq!(e.vector_entry(1, 1).abs(), 1.0);
    }

    #[test]
    fn swap_matrix_has_unit_eigenvalues() {
        let m = Element::sym_from_square(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = sym_eigendecomposition(&m, 1e-12).unwrap();
        let v = sorted(e.values().to_vec());
        assert!((v[0] + 1.0).abs() < 1e-12);
        assert!((v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_eigenvalues_are_ones() {
        let m = Element::sym_from_square(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let e = sym_eigendecomposition(&m, 1e-12).unwrap();
        assert_eq!(e.values(), &[1.0, 1.0]);
    }

    #[test]
    fn matches_2x2_closed_form() {
        let cases = [
            (3.0, 1.5, -2.0),
            (0.0, 4.0, 0.0),
            (1e-3, 1e3, -1e-3),
            (7.0, 0.0, 7.0),
        ];
        for (a, b, c) in cases {
            let m = Element::sym_from_square(&[vec![a, b], vec![b, c]]).unwrap();
            let e = sym_eigendecomposition(&m, 1e-12).unwrap();
            let got = sorted(e.values().to_vec());
            let (lo, hi) = eig2x2(a, b, c);
            let scale = 1.0f64.max(hi.abs()).max(lo.abs());
            assert!((got[0] - lo).abs() <= 1e-12 * scale, "{got:?} vs ({lo},{hi})");
            assert!((got[1] - hi).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn reconstruction_error_within_contract() {
        // deterministic pseudo-random symmetric 5x5
        let d = 5;
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 8.0 - 4.0
        };
        let mut rows = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..=i {
                let v = next();
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        let m = Element::sym_from_square(&rows).unwrap();
        let eps = 1e-12;
        let e = sym_eigendecomposition(&m, eps).unwrap();
        let rebuilt = e.map_packed(|l| l);
        let mut diff = vec![0.0; rebuilt.len()];
        for (k, v) in diff.iter_mut().enumerate() {
            *v = rebuilt[k] - m.data()[k];
        }
        let err = fro_norm_packed(&diff, d);
        let fro = fro_norm_packed(m.data(), d);
        assert!(err <= 10.0 * eps * fro, "reconstruction error {err}");
    }

    #[test]
    fn zero_matrix_is_fine() {
        let m = Element::sym_from_square(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let e = sym_eigendecomposition(&m, 1e-12).unwrap();
        assert_eq!(e.values(), &[0.0, 0.0]);
    }

    #[test]
    fn one_by_one_collapses_to_scalar() {
        let m = Element::sym_from_square(&[vec![-3.5]]).unwrap();
        let e = sym_eigendecomposition(&m, 1e-12).unwrap();
        assert_eq!(e.values(), &[-3.5]);
    }
}
