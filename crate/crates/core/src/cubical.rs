//! T- and V-construction filtered cubical complexes from image arrays,
//! plus the padding and negation preprocessing used by the duality pipeline.
//!
//! Cells are indexed by lattice coordinates: an even coordinate means the
//! cell is degenerate (vertex-like) along that axis, an odd coordinate means
//! it spans an interval. The coordinate vector doubles as the canonical cell
//! id, which feeds the deterministic filtration-order tie-breaking.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{Cell, CellId, ExtendedValue, FilteredComplex};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ImageError {
    #[error("image must have at least one axis")]
    EmptyShape,
    #[error("axis {axis} has extent 0")]
    ZeroExtent { axis: usize },
    #[error("expected {expected} values for shape {shape:?}, got {got}")]
    LengthMismatch {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("value at index {index} is not finite")]
    NonFinite { index: usize },
}

/// A dense nD array of finite pixel values, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageArray {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl ImageArray {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self, ImageError> {
        if shape.is_empty() {
            return Err(ImageError::EmptyShape);
        }
        if let Some(axis) = shape.iter().position(|&n| n == 0) {
            return Err(ImageError::ZeroExtent { axis });
        }
        let expected: usize = shape.iter().product();
        if values.len() != expected {
            return Err(ImageError::LengthMismatch {
                shape,
                expected,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(ImageError::NonFinite { index });
        }
        Ok(ImageArray { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Nominal dimension `d` of the image.
    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut flat = 0;
        for (i, &c) in idx.iter().enumerate() {
            debug_assert!(c < self.shape[i]);
            flat = flat * self.shape[i] + c;
        }
        self.values[flat]
    }
}

/// Pointwise negation.
pub fn negate(image: &ImageArray) -> ImageArray {
    ImageArray {
        shape: image.shape.clone(),
        values: image.values.iter().map(|v| -v).collect(),
    }
}

/// Grows every axis by 2, filling the new one-pixel border with `pad_value`.
pub fn pad(image: &ImageArray, pad_value: f64) -> ImageArray {
    let shape: Vec<usize> = image.shape.iter().map(|n| n + 2).collect();
    let len: usize = shape.iter().product();
    let mut values = vec![pad_value; len];
    let d = shape.len();
    let mut idx = vec![0usize; d];
    'outer: loop {
        let inner: Vec<usize> = idx.iter().map(|&c| c + 1).collect();
        let mut flat = 0;
        for (i, &c) in inner.iter().enumerate() {
            flat = flat * shape[i] + c;
        }
        values[flat] = image.get(&idx);
        for axis in (0..d).rev() {
            idx[axis] += 1;
            if idx[axis] < image.shape[axis] {
                continue 'outer;
            }
            idx[axis] = 0;
        }
        break;
    }
    ImageArray { shape, values }
}

/// The default padding sentinel: one more than the maximal pixel value.
pub fn default_pad_value(image: &ImageArray) -> f64 {
    image.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0
}

/// Iterates all coordinate vectors of a lattice with the given extents.
fn lattice_coords(extents: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(extents.iter().product());
    let mut c = vec![0usize; extents.len()];
    'outer: loop {
        out.push(c.clone());
        for axis in (0..c.len()).rev() {
            c[axis] += 1;
            if c[axis] < extents[axis] {
                continue 'outer;
            }
            c[axis] = 0;
        }
        break;
    }
    out
}

fn cell_id(coords: &[usize]) -> CellId {
    let s: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    CellId::new(s.join("-"))
}

/// Facets of a lattice cell: one odd coordinate stepped to each side.
fn lattice_boundary(coords: &[usize]) -> BTreeSet<CellId> {
    let mut boundary = BTreeSet::new();
    for (axis, &c) in coords.iter().enumerate() {
        if c % 2 == 1 {
            let mut lo = coords.to_vec();
            lo[axis] = c - 1;
            let mut hi = coords.to_vec();
            hi[axis] = c + 1;
            boundary.insert(cell_id(&lo));
            boundary.insert(cell_id(&hi));
        }
    }
    boundary
}

/// V-construction: pixels are vertices, each cell takes the max of its
/// vertex values. An `n1 x ... x nd` image yields `prod(2 ni - 1)` cells.
pub fn build_v(image: &ImageArray) -> FilteredComplex {
    let extents: Vec<usize> = image.shape.iter().map(|n| 2 * n - 1).collect();
    let mut cells = Vec::new();
    for coords in lattice_coords(&extents) {
        let dim = coords.iter().filter(|&&c| c % 2 == 1).count();
        // vertices of the cell: even coordinates stay, odd spread to c +/- 1
        let mut value = f64::NEG_INFINITY;
        for corner in cell_corners(&coords) {
            let pixel: Vec<usize> = corner.iter().map(|&c| c / 2).collect();
            value = value.max(image.get(&pixel));
        }
        cells.push(Cell {
            id: cell_id(&coords),
            dim,
            value: ExtendedValue::finite(value),
            boundary: lattice_boundary(&coords),
        });
    }
    FilteredComplex::new(cells, image.dim())
}

/// T-construction: pixels are top-dimensional cells, each lower cell takes
/// the min over the pixels containing it. An `n1 x ... x nd` image yields
/// `prod(2 ni + 1)` cells.
pub fn build_t(image: &ImageArray) -> FilteredComplex {
    let extents: Vec<usize> = image.shape.iter().map(|n| 2 * n + 1).collect();
    let mut cells = Vec::new();
    for coords in lattice_coords(&extents) {
        let dim = coords.iter().filter(|&&c| c % 2 == 1).count();
        let mut value = f64::INFINITY;
        for pixel in containing_pixels(&coords, &image.shape) {
            value = value.min(image.get(&pixel));
        }
        cells.push(Cell {
            id: cell_id(&coords),
            dim,
            value: ExtendedValue::finite(value),
            boundary: lattice_boundary(&coords),
        });
    }
    FilteredComplex::new(cells, image.dim())
}

/// Corner vertices of a V-lattice cell (coordinates all even).
fn cell_corners(coords: &[usize]) -> Vec<Vec<usize>> {
    let mut corners = vec![Vec::with_capacity(coords.len())];
    for &c in coords {
        if c % 2 == 0 {
            for corner in &mut corners {
                corner.push(c);
            }
        } else {
            let mut doubled = Vec::with_capacity(corners.len() * 2);
            for corner in corners {
                let mut lo = corner.clone();
                lo.push(c - 1);
                let mut hi = corner;
                hi.push(c + 1);
                doubled.push(lo);
                doubled.push(hi);
            }
            corners = doubled;
        }
    }
    corners
}

/// Pixels of the T-lattice whose closed top cell contains the given cell.
fn containing_pixels(coords: &[usize], shape: &[usize]) -> Vec<Vec<usize>> {
    let mut pixels = vec![Vec::with_capacity(coords.len())];
    for (axis, &c) in coords.iter().enumerate() {
        if c % 2 == 1 {
            let p = (c - 1) / 2;
            for pixel in &mut pixels {
                pixel.push(p);
            }
        } else {
            let mut candidates = Vec::new();
            if c > 0 {
                candidates.push(c / 2 - 1);
            }
            if c / 2 < shape[axis] {
                candidates.push(c / 2);
            }
            let mut widened = Vec::with_capacity(pixels.len() * candidates.len());
            for pixel in pixels {
                for &p in &candidates {
                    let mut next = pixel.clone();
                    next.push(p);
                    widened.push(next);
                }
            }
            pixels = widened;
        }
    }
    pixels
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_image(max_d: usize, max_extent: usize) -> impl Strategy<Value = ImageArray> {
        (1..=max_d)
            .prop_flat_map(move |d| proptest::collection::vec(1..=max_extent, d))
            .prop_flat_map(|shape| {
                let len: usize = shape.iter().product();
                (
                    Just(shape),
                    proptest::collection::vec(0.0..100.0f64, len),
                )
            })
            .prop_map(|(shape, values)| ImageArray::new(shape, values).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cell_count_formulas_hold(img in arb_image(3, 4)) {
            let v = build_v(&img);
            let t = build_t(&img);
            let v_expected: usize = img.shape().iter().map(|n| 2 * n - 1).product();
            let t_expected: usize = img.shape().iter().map(|n| 2 * n + 1).product();
            prop_assert_eq!(v.len(), v_expected);
            prop_assert_eq!(t.len(), t_expected);
        }

        #[test]
        fn constructions_validate(img in arb_image(3, 4)) {
            prop_assert!(build_v(&img).validate().is_empty());
            prop_assert!(build_t(&img).validate().is_empty());
        }
    }
}
