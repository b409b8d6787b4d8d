//! Shared fixtures: the running 3x3 image and the cube-sphere CW complex
//! with its hand-picked filtered vector field.
#![allow(dead_code)]

use dualbar_core::complex::{Cell, CellId, ExtendedValue, FilteredComplex};
use dualbar_core::cubical::ImageArray;
use dualbar_core::morse::VectorField;

pub fn sample_image() -> ImageArray {
    ImageArray::new(
        vec![3, 3],
        vec![5.0, 1.0, 6.0, 2.0, 9.0, 4.0, 8.0, 3.0, 7.0],
    )
    .unwrap()
}

fn v(x: f64) -> ExtendedValue {
    ExtendedValue::finite(x)
}

/// CW decomposition of a sphere as the surface of a cube: vertices carry the
/// values 1..8 and every higher cell takes the max of its vertices.
///
/// Vertex layout (front face = a, v2, v6, v8; back face = v7, v3, v5, v4):
///
/// ```text
///        v7 ------ v3
///       /|        /|
///      a ------ v2 |
///      | v5 ----|- v4
///      |/       |/
///      v6 ----- v8
/// ```
pub fn cube_complex() -> FilteredComplex {
    let empty = Vec::<CellId>::new();
    let cells = vec![
        // vertices, valued by their label
        Cell::new("a", 0, v(1.0), empty.clone()),
        Cell::new("v2", 0, v(2.0), empty.clone()),
        Cell::new("v3", 0, v(3.0), empty.clone()),
        Cell::new("v4", 0, v(4.0), empty.clone()),
        Cell::new("v5", 0, v(5.0), empty.clone()),
        Cell::new("v6", 0, v(6.0), empty.clone()),
        Cell::new("v7", 0, v(7.0), empty.clone()),
        Cell::new("v8", 0, v(8.0), empty),
        // edges
        Cell::new("e12", 1, v(2.0), ["a", "v2"]),
        Cell::new("e23", 1, v(3.0), ["v2", "v3"]),
        Cell::new("e37", 1, v(7.0), ["v3", "v7"]),
        Cell::new("e17", 1, v(7.0), ["a", "v7"]),
        Cell::new("e68", 1, v(8.0), ["v6", "v8"]),
        Cell::new("e48", 1, v(8.0), ["v4", "v8"]),
        Cell::new("e45", 1, v(5.0), ["v4", "v5"]),
        Cell::new("b", 1, v(6.0), ["v5", "v6"]),
        Cell::new("e16", 1, v(6.0), ["a", "v6"]),
        Cell::new("e28", 1, v(8.0), ["v2", "v8"]),
        Cell::new("e34", 1, v(4.0), ["v3", "v4"]),
        Cell::new("e57", 1, v(7.0), ["v5", "v7"]),
        // faces: top, bottom (d), front, back, left (c), right
        Cell::new("ftop", 2, v(7.0), ["e12", "e23", "e37", "e17"]),
        Cell::new("d", 2, v(8.0), ["e68", "e48", "e45", "b"]),
        Cell::new("ffront", 2, v(8.0), ["e12", "e28", "e68", "e16"]),
        Cell::new("fback", 2, v(7.0), ["e34", "e45", "e57", "e37"]),
        Cell::new("c", 2, v(7.0), ["e17", "e57", "b", "e16"]),
        Cell::new("fright", 2, v(8.0), ["e23", "e34", "e48", "e28"]),
    ];
    FilteredComplex::new(cells, 2)
}

/// A filtered vector field on [`cube_complex`] whose critical cells are
/// `a, b, c, d` -- the vertex valued 1, the edge valued 6, the left face
/// and the bottom face.
pub fn cube_field() -> VectorField {
    VectorField::new([
        ("v2", "e12"),
        ("v3", "e23"),
        ("v4", "e34"),
        ("v5", "e45"),
        ("v6", "e16"),
        ("v7", "e17"),
        ("v8", "e28"),
        ("e37", "ftop"),
        ("e57", "fback"),
        ("e68", "ffront"),
        ("e48", "fright"),
    ])
}
