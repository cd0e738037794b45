use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::space::{SpaceDescriptor, SpaceKind};

/// Absolute symmetry slack accepted when reading a full square matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A value of one of the concrete ordered spaces.
///
/// Vectors store their entries directly. Symmetric matrices store the lower
/// triangle row-major (d(d+1)/2 entries), so symmetry is structural rather
/// than a runtime invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    space: SpaceDescriptor,
    data: Vec<f64>,
}

impl Element {
    /// Build without validation. Callers guarantee the data length matches
    /// the space; every public constructor and operation goes through here.
    pub(crate) fn from_raw(space: SpaceDescriptor, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), space.storage_len());
        Element { space, data }
    }

    /// A lattice vector from its entries.
    pub fn vector(entries: Vec<f64>) -> Result<Self> {
        let space = SpaceDescriptor::lattice(entries.len())?;
        let e = Element::from_raw(space, entries);
        e.check_finite()?;
        Ok(e)
    }

    /// A symmetric matrix from its full square form. The input is validated
    /// symmetric within [`SYMMETRY_TOL`] and then symmetrized exactly.
    pub fn sym_from_square(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        let space = SpaceDescriptor::sym(d)?;
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let mut data = vec![0.0; space.storage_len()];
        for i in 0..d {
            for j in 0..=i {
                if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
                data[i * (i + 1) / 2 + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        let e = Element::from_raw(space, data);
        e.check_finite()?;
        Ok(e)
    }

    /// An element of `space` from its packed coordinates.
    pub fn from_coords(space: SpaceDescriptor, data: Vec<f64>) -> Result<Self> {
        if data.len() != space.storage_len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                space.storage_len(),
                data.len()
            )));
        }
        let e = Element::from_raw(space, data);
        e.check_finite()?;
        Ok(e)
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.space
    }

    /// Packed coordinates: entries for vectors, lower triangle for matrices.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Matrix entry (i, j); symmetric lookups resolve through the triangle.
    pub fn sym_entry(&self, i: usize, j: usize) -> f64 {
        debug_assert_eq!(self.space.kind, SpaceKind::SymmetricMatrices);
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.data[r * (r + 1) / 2 + c]
    }

    /// Full square form of a symmetric matrix element.
    pub fn to_square(&self) -> Vec<Vec<f64>> {
        debug_assert_eq!(self.space.kind, SpaceKind::SymmetricMatrices);
        let d = self.space.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.sym_entry(i, j)).collect())
            .collect()
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidElement)
        }
    }

    pub fn same_space(&self, other: &Element) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "{:?} vs {:?}",
                self.space, other.space
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.space, other.space, "element space mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Element::from_raw(self.space, data)
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.space, other.space, "element space mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Element::from_raw(self.space, data)
    }

    pub fn scale(&self, alpha: f64) -> Element {
        Element::from_raw(self.space, self.data.iter().map(|v| alpha * v).collect())
    }

    pub fn neg(&self) -> Element {
        Element::from_raw(self.space, self.data.iter().map(|v| -v).collect())
    }

    /// The wire form of the coordinate block: flat array for vectors, full
    /// square array-of-rows for matrices.
    pub fn data_json(&self) -> serde_json::Value {
        match self.space.kind {
            SpaceKind::ComponentwiseLattice => serde_json::json!(self.data),
            SpaceKind::SymmetricMatrices => serde_json::json!(self.to_square()),
        }
    }

    /// Parse the coordinate block of `space` from its wire form.
    pub fn data_from_json(space: SpaceDescriptor, value: &serde_json::Value) -> Result<Element> {
        match space.kind {
            SpaceKind::ComponentwiseLattice => {
                let entries: Vec<f64> = serde_json::from_value(value.clone())
                    .map_err(|e| Error::Parse(format!("bad vector data: {e}")))?;
                if entries.len() != space.dim {
                    return Err(Error::Parse(format!(
                        "expected {} entries, got {}",
                        space.dim,
                        entries.len()
                    )));
                }
                Element::from_coords(space, entries)
            }
            SpaceKind::SymmetricMatrices => {
                let rows: Vec<Vec<f64>> = serde_json::from_value(value.clone())
                    .map_err(|e| Error::Parse(format!("bad matrix data: {e}")))?;
                if rows.len() != space.dim {
                    return Err(Error::Parse(format!(
                        "expected a {0}x{0} matrix, got {1} rows",
                        space.dim,
                        rows.len()
                    )));
                }
                Element::sym_from_square(&rows)
            }
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Element", 2)?;
        s.serialize_field("space", &self.space)?;
        s.serialize_field("data", &self.data_json())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: SpaceDescriptor,
            data: serde_json::Value,
        }
        let raw = Raw::deserialize(deserializer)?;
        Element::data_from_json(raw.space, &raw.data).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_storage_roundtrips_square_form() {
        let m = Element::sym_from_square(&[vec![1.0, 2.0], vec![2.0, 3.0]]).unwrap();
        assert_eq!(m.data(), &[1.0, 2.0, 3.0]);
        assert_eq!(m.to_square(), vec![vec![1.0, 2.0], vec![2.0, 3.0]]);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let r = Element::sym_from_square(&[vec![1.0, 2.0], vec![2.1, 3.0]]);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            Element::vector(vec![1.0, f64::NAN]),
            Err(Error::InvalidElement)
        );
        assert_eq!(
            Element::vector(vec![f64::INFINITY]),
            Err(Error::InvalidElement)
        );
    }

    #[test]
    fn json_roundtrip_vector() {
        let v = Element::vector(vec![1.0, -2.0]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"space":{"kind":"lattice","dim":2},"data":[1.0,-2.0]}"#
        );
        let back: Element = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_roundtrip_matrix() {
        let text = r#"{"space":{"kind":"sym","dim":2},"data":[[0,1],[1,0]]}"#;
        let m: Element = serde_json::from_str(text).unwrap();
        assert_eq!(m.data(), &[0.0, 1.0, 0.0]);
        let back: Element = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn arithmetic_is_entrywise() {
        let a = Element::vector(vec![1.0, 2.0]).unwrap();
        let b = Element::vector(vec![0.5, -1.0]).unwrap();
        assert_eq!(a.add(&b).data(), &[1.5, 1.0]);
        assert_eq!(a.sub(&b).data(), &[0.5, 3.0]);
        assert_eq!(a.scale(-2.0).data(), &[-2.0, -4.0]);
    }
}
