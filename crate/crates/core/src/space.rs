use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};

/// The two concrete ordered vector spaces implemented here.
///
/// `ComponentwiseLattice` is R^n under the entrywise order: a Dedekind
/// complete vector lattice and an AM-space under the max norm.
/// `SymmetricMatrices` is Sym(d) under the positive-semidefinite order with
/// the spectral absolute value: absolutely ordered but not a lattice.
/// Together they separate lattice-dependent results from lattice-free ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    #[serde(rename = "lattice")]
    ComponentwiseLattice,
    #[serde(rename = "sym")]
    SymmetricMatrices,
}

/// Identifies a concrete ordered vector space: which instance and its size.
///
/// For `ComponentwiseLattice`, `dim` is the vector length n; for
/// `SymmetricMatrices` it is the matrix side d. The order unit is determined
/// by the space: the all-ones vector, respectively the identity matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub dim: usize,
}

impl SpaceDescriptor {
    pub fn new(kind: SpaceKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("space dimension must be >= 1".into()));
        }
        Ok(SpaceDescriptor { kind, dim })
    }

    pub fn lattice(dim: usize) -> Result<Self> {
        Self::new(SpaceKind::ComponentwiseLattice, dim)
    }

    pub fn sym(dim: usize) -> Result<Self> {
        Self::new(SpaceKind::SymmetricMatrices, dim)
    }

    /// Number of stored coordinates: n for vectors, d(d+1)/2 packed entries
    /// for symmetric matrices.
    pub fn storage_len(&self) -> usize {
        match self.kind {
            SpaceKind::ComponentwiseLattice => self.dim,
            SpaceKind::SymmetricMatrices => self.dim * (self.dim + 1) / 2,
        }
    }

    /// The order unit e: all-ones vector or identity matrix.
    pub fn unit(&self) -> Element {
        match self.kind {
            SpaceKind::ComponentwiseLattice => {
                Element::from_raw(*self, vec![1.0; self.dim])
            }
            SpaceKind::SymmetricMatrices => {
                let mut data = vec![0.0; self.storage_len()];
                for i in 0..self.dim {
                    data[i * (i + 1) / 2 + i] = 1.0;
                }
                Element::from_raw(*self, data)
            }
        }
    }

    pub fn zero(&self) -> Element {
        Element::from_raw(*self, vec![0.0; self.storage_len()])
    }

    pub fn is_lattice(&self) -> bool {
        self.kind == SpaceKind::ComponentwiseLattice
    }
}

/// Numerical slack for cone membership and the eigensolver target.
///
/// `eps_cone` bounds how far below zero an entry or eigenvalue may sit while
/// still counting as inside the cone (relative to the element's scale);
/// `eps_eig` is the off-diagonal mass target of the Jacobi sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_cone: f64,
    pub eps_eig: f64,
}

impl Tolerance {
    pub fn new(eps_cone: f64, eps_eig: f64) -> Result<Self> {
        if !(eps_eig > 0.0 && eps_eig <= eps_cone && eps_cone < 1e-3) {
            return Err(Error::InvalidArgument(
                "tolerances must satisfy 0 < eps_eig <= eps_cone < 1e-3".into(),
            ));
        }
        Ok(Tolerance { eps_cone, eps_eig })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_cone: 1e-9,
            eps_eig: 1e-12,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_all_ones_vector() {
        let s = SpaceDescriptor::lattice(3).unwrap();
        assert_eq!(s.unit().data(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn unit_is_identity_matrix() {
        let s = SpaceDescriptor::sym(2).unwrap();
        let e = s.unit();
        assert_eq!(e.sym_entry(0, 0), 1.0);
        assert_eq!(e.sym_entry(0, 1), 0.0);
        assert_eq!(e.sym_entry(1, 1), 1.0);
    }

    #[test]
    fn zero_dim_rejected() {
        assert!(SpaceDescriptor::lattice(0).is_err());
    }

    #[test]
    fn tolerance_bounds_enforced() {
        assert!(Tolerance::new(1e-9, 1e-12).is_ok());
        assert!(Tolerance::new(1e-12, 1e-9).is_err());
        assert!(Tolerance::new(1e-2, 1e-12).is_err());
        assert!(Tolerance::new(1e-9, 0.0).is_err());
    }
}
