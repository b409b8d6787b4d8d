//! Filtered chain complexes over Z2.
//!
//! Cells carry a dimension, a filtration value and a Z2 boundary (a set of
//! facet ids). Every other module in this crate builds on top of
//! [`FilteredComplex`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// A filtration value or bar endpoint: a finite real or one of the two
/// infinities. Finite values are kept exact as `f64`; the infinities are
/// explicit variants so that negation and ordering never go through
/// sentinel floats.
#[derive(Clone, Copy, Debug)]
pub enum ExtendedValue {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtendedValue {
    /// Wraps a finite float. Panics on NaN or infinite input; parsers are
    /// expected to reject those before constructing values.
    pub fn finite(v: f64) -> Self {
        assert!(v.is_finite(), "filtration value must be finite, got {v}");
        ExtendedValue::Finite(v)
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        matches!(self, ExtendedValue::PosInf)
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtendedValue::NegInf)
    }
}

impl From<f64> for ExtendedValue {
    fn from(v: f64) -> Self {
        ExtendedValue::finite(v)
    }
}

impl std::ops::Neg for ExtendedValue {
    type Output = ExtendedValue;

    fn neg(self) -> ExtendedValue {
        match self {
            ExtendedValue::NegInf => ExtendedValue::PosInf,
            ExtendedValue::Finite(v) => ExtendedValue::Finite(-v),
            ExtendedValue::PosInf => ExtendedValue::NegInf,
        }
    }
}

impl PartialEq for ExtendedValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtendedValue {}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedValue::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::NegInf => write!(f, "-inf"),
            ExtendedValue::Finite(v) => write!(f, "{v}"),
            ExtendedValue::PosInf => write!(f, "inf"),
        }
    }
}

/// Opaque cell identifier. Ids are compared lexicographically, which is the
/// final tie-break of the filtration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(String);

impl CellId {
    pub fn new(id: impl Into<String>) -> Self {
        CellId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CellId {
    fn from(s: &str) -> Self {
        CellId(s.to_owned())
    }
}

impl From<String> for CellId {
    fn from(s: String) -> Self {
        CellId(s)
    }
}

/// A single cell: dimension, filtration value and Z2 boundary as a set of
/// facet ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: usize,
    pub value: ExtendedValue,
    pub boundary: BTreeSet<CellId>,
}

impl Cell {
    pub fn new<I, T>(id: impl Into<CellId>, dim: usize, value: ExtendedValue, boundary: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<CellId>,
    {
        Cell {
            id: id.into(),
            dim,
            value,
            boundary: boundary.into_iter().map(Into::into).collect(),
        }
    }
}

/// A violated complex invariant, as reported by [`FilteredComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationIssue {
    #[error("cell {cell} has duplicate id")]
    DuplicateId { cell: CellId },
    #[error("cell {cell} references missing boundary cell {missing}")]
    DanglingBoundary { cell: CellId, missing: CellId },
    #[error("cell {cell} (dim {dim}) has boundary cell {facet} of dim {facet_dim}, expected dim {}", dim.saturating_sub(1))]
    FacetDimension {
        cell: CellId,
        dim: usize,
        facet: CellId,
        facet_dim: usize,
    },
    #[error("cell {cell} (value {value}) has facet {facet} with larger value {facet_value}")]
    NonMonotone {
        cell: CellId,
        value: ExtendedValue,
        facet: CellId,
        facet_value: ExtendedValue,
    },
    #[error("boundary of boundary of {cell} contains {grand_facet} an odd number of times")]
    BoundarySquareNonzero { cell: CellId, grand_facet: CellId },
}

/// Outcome of validation: the full list of violated invariants. Validation
/// never aborts early; an empty report means the complex is valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "no issues");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error)]
pub enum ComplexError {
    #[error("invalid filtered complex: {report}")]
    Invalid { report: ValidationReport },
}

/// A filtered CW/chain complex over Z2 with an ambient dimension `d`.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    cells: Vec<Cell>,
    index: HashMap<CellId, usize>,
    ambient_dim: usize,
}

impl FilteredComplex {
    /// Assembles a complex from cells. Duplicate ids are tolerated here and
    /// reported by [`validate`](Self::validate); lookups resolve to the first
    /// occurrence.
    pub fn new(cells: Vec<Cell>, ambient_dim: usize) -> Self {
        let mut index = HashMap::with_capacity(cells.len());
        for (i, cell) in cells.iter().enumerate() {
            index.entry(cell.id.clone()).or_insert(i);
        }
        FilteredComplex {
            cells,
            index,
            ambient_dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, id: &CellId) -> Option<&Cell> {
        self.index.get(id).map(|&i| &self.cells[i])
    }

    pub fn contains(&self, id: &CellId) -> bool {
        self.index.contains_key(id)
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Cofacet lists indexed like [`cells`](Self::cells): `cofacets[i]` holds
    /// the positions of the cells whose boundary contains cell `i`.
    pub fn cofacet_indices(&self) -> Vec<Vec<usize>> {
        let mut cofacets = vec![Vec::new(); self.cells.len()];
        for (j, cell) in self.cells.iter().enumerate() {
            for facet in &cell.boundary {
                if let Some(&i) = self.index.get(facet) {
                    cofacets[i].push(j);
                }
            }
        }
        cofacets
    }

    /// Checks every complex invariant and reports all violations:
    /// duplicate ids, dangling boundary references, facet dimensions,
    /// filtration monotonicity, and boundary-of-boundary parity over Z2.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();

        let mut seen: HashMap<&CellId, usize> = HashMap::new();
        for cell in &self.cells {
            *seen.entry(&cell.id).or_insert(0) += 1;
        }
        for cell in &self.cells {
            if seen.get(&cell.id) == Some(&1) {
                continue;
            }
            // report once per duplicated id
            if seen.remove(&cell.id).is_some() {
                issues.push(ValidationIssue::DuplicateId {
                    cell: cell.id.clone(),
                });
            }
        }

        for cell in &self.cells {
            let mut resolved = true;
            for facet_id in &cell.boundary {
                match self.get(facet_id) {
                    None => {
                        resolved = false;
                        issues.push(ValidationIssue::DanglingBoundary {
                            cell: cell.id.clone(),
                            missing: facet_id.clone(),
                        });
                    }
                    Some(facet) => {
                        if cell.dim == 0 || facet.dim != cell.dim - 1 {
                            issues.push(ValidationIssue::FacetDimension {
                                cell: cell.id.clone(),
                                dim: cell.dim,
                                facet: facet_id.clone(),
                                facet_dim: facet.dim,
                            });
                        }
                        if facet.value > cell.value {
                            issues.push(ValidationIssue::NonMonotone {
                                cell: cell.id.clone(),
                                value: cell.value,
                                facet: facet_id.clone(),
                                facet_value: facet.value,
                            });
                        }
                    }
                }
            }
            if resolved {
                // parity of each grand-facet across all facets must be even
                let mut parity: HashMap<&CellId, usize> = HashMap::new();
                for facet_id in &cell.boundary {
                    if let Some(facet) = self.get(facet_id) {
                        for gf in &facet.boundary {
                            *parity.entry(gf).or_insert(0) += 1;
                        }
                    }
                }
                let mut odd: Vec<&CellId> = parity
                    .into_iter()
                    .filter(|(_, n)| n % 2 == 1)
                    .map(|(id, _)| id)
                    .collect();
                odd.sort();
                for gf in odd {
                    issues.push(ValidationIssue::BoundarySquareNonzero {
                        cell: cell.id.clone(),
                        grand_facet: gf.clone(),
                    });
                }
            }
        }

        ValidationReport { issues }
    }

    /// Deterministic total order of the cells by `(value, dim, id)`.
    /// Monotonicity guarantees every facet precedes its cofacets, so every
    /// prefix of the order is a subcomplex.
    pub fn filtration_order(&self) -> Result<FiltrationOrder, ComplexError> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(ComplexError::Invalid { report });
        }
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by(|&a, &b| {
            let ca = &self.cells[a];
            let cb = &self.cells[b];
            ca.value
                .cmp(&cb.value)
                .then(ca.dim.cmp(&cb.dim))
                .then(ca.id.cmp(&cb.id))
        });
        let ids: Vec<CellId> = order.iter().map(|&i| self.cells[i].id.clone()).collect();
        let pos = ids
            .iter()
            .enumerate()
            .map(|(p, id)| (id.clone(), p))
            .collect();
        Ok(FiltrationOrder { ids, pos })
    }
}

/// A total order on cell ids, sorted by `(value, dim, id)`.
#[derive(Clone, Debug)]
pub struct FiltrationOrder {
    ids: Vec<CellId>,
    pos: HashMap<CellId, usize>,
}

impl FiltrationOrder {
    pub fn ids(&self) -> &[CellId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn position(&self, id: &CellId) -> Option<usize> {
        self.pos.get(id).copied()
    }
}
