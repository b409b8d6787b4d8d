//! Combinatorial dualization of closed d-complexes and the one-point
//! compactifications that close the image constructions into spheres.
//!
//! Dualization is pure incidence reversal: cell dimensions complement to
//! `d`, facet relations flip, and filtration values negate. No geometric
//! embedding is computed.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{Cell, CellId, ExtendedValue, FilteredComplex};

#[derive(Clone, Debug, Error)]
pub enum DualizeError {
    #[error("cell {cell} has dimension {dim}, exceeding ambient dimension {ambient}")]
    DimensionExceeded {
        cell: CellId,
        dim: usize,
        ambient: usize,
    },
    #[error("not a closed pseudomanifold: {} codimension-1 cells without exactly two cofacets (first: {})", cells.len(), cells[0])]
    NotPseudomanifold { cells: Vec<CellId> },
}

/// Builds the dual filtered complex: one cell of dimension `d - k` per
/// k-cell, reversed incidences, negated values. Requires every
/// codimension-1 cell to have exactly two top-dimensional cofacets.
pub fn dual_complex(complex: &FilteredComplex, d: usize) -> Result<FilteredComplex, DualizeError> {
    for cell in complex.cells() {
        if cell.dim > d {
            return Err(DualizeError::DimensionExceeded {
                cell: cell.id.clone(),
                dim: cell.dim,
                ambient: d,
            });
        }
    }

    let cofacets = complex.cofacet_indices();
    let mut offending = Vec::new();
    for (i, cell) in complex.cells().iter().enumerate() {
        if cell.dim + 1 == d {
            let top_cofacets = cofacets[i]
                .iter()
                .filter(|&&j| complex.cells()[j].dim == d)
                .count();
            if top_cofacets != 2 {
                offending.push(cell.id.clone());
            }
        }
    }
    if !offending.is_empty() {
        offending.sort();
        return Err(DualizeError::NotPseudomanifold { cells: offending });
    }

    let cells = complex
        .cells()
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let boundary: BTreeSet<CellId> = cofacets[i]
                .iter()
                .map(|&j| complex.cells()[j].id.clone())
                .collect();
            Cell {
                id: cell.id.clone(),
                dim: d - cell.dim,
                value: -cell.value,
                boundary,
            }
        })
        .collect();
    Ok(FilteredComplex::new(cells, d))
}

/// Id of the top cell glued by [`compactify_t`].
pub const CAP_ID: &str = "cap";
/// Id of the cone apex added by [`compactify_v`].
pub const APEX_ID: &str = "apex";

fn cone_id(base: &CellId) -> CellId {
    CellId::new(format!("cone-{base}"))
}

/// Glues one top-dimensional cell whose Z2 boundary is the set of
/// codimension-1 cells with exactly one top cofacet. Closes a T-construction
/// grid into a sphere.
pub fn compactify_t(complex: &FilteredComplex, value: ExtendedValue) -> FilteredComplex {
    let d = complex.ambient_dim();
    let cofacets = complex.cofacet_indices();
    let mut rim = BTreeSet::new();
    for (i, cell) in complex.cells().iter().enumerate() {
        if cell.dim + 1 == d {
            let top_cofacets = cofacets[i]
                .iter()
                .filter(|&&j| complex.cells()[j].dim == d)
                .count();
            if top_cofacets == 1 {
                rim.insert(cell.id.clone());
            }
        }
    }
    let mut cells = complex.cells().to_vec();
    cells.push(Cell {
        id: CellId::new(CAP_ID),
        dim: d,
        value,
        boundary: rim,
    });
    FilteredComplex::new(cells, d)
}

/// Cones the topological boundary of a V-construction grid to a new apex
/// vertex: one cone cell of dimension `k + 1` per boundary k-cell, all
/// carrying the given value. Closes the grid into a sphere.
pub fn compactify_v(complex: &FilteredComplex, value: ExtendedValue) -> FilteredComplex {
    let d = complex.ambient_dim();
    let cofacets = complex.cofacet_indices();

    // boundary of the grid: closure of the codim-1 cells missing a cofacet
    let mut boundary_ids: BTreeSet<CellId> = BTreeSet::new();
    let mut stack: Vec<CellId> = Vec::new();
    for (i, cell) in complex.cells().iter().enumerate() {
        if cell.dim + 1 == d {
            let top_cofacets = cofacets[i]
                .iter()
                .filter(|&&j| complex.cells()[j].dim == d)
                .count();
            if top_cofacets < 2 {
                stack.push(cell.id.clone());
            }
        }
    }
    while let Some(id) = stack.pop() {
        if !boundary_ids.insert(id.clone()) {
            continue;
        }
        if let Some(cell) = complex.get(&id) {
            stack.extend(cell.boundary.iter().cloned());
        }
    }

    let mut cells = complex.cells().to_vec();
    cells.push(Cell {
        id: CellId::new(APEX_ID),
        dim: 0,
        value,
        boundary: BTreeSet::new(),
    });
    for id in &boundary_ids {
        let base = complex.get(id).expect("boundary cell resolves");
        let mut cone_boundary: BTreeSet<CellId> = BTreeSet::new();
        cone_boundary.insert(id.clone());
        if base.dim == 0 {
            cone_boundary.insert(CellId::new(APEX_ID));
        } else {
            for facet in &base.boundary {
                cone_boundary.insert(cone_id(facet));
            }
        }
        cells.push(Cell {
            id: cone_id(id),
            dim: base.dim + 1,
            value,
            boundary: cone_boundary,
        });
    }
    FilteredComplex::new(cells, d)
}
