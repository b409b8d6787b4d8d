//! Filtered discrete Morse machinery: gradient vector fields, their duals,
//! V-paths, critical cells and Morse chain complexes.
//!
//! A filtered field pairs a facet with a cofacet of equal filtration value;
//! acyclicity of the induced V-path digraph is part of validation. The Morse
//! complex keeps only the critical cells, with Z2 boundary coefficients
//! given by the parity of connecting V-paths.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::complex::{Cell, CellId, ComplexError, FilteredComplex};
use crate::dualize::{dual_complex, DualizeError};

/// A discrete vector field: a partial matching of cells with cofacets,
/// stored as `(tail, head)` pairs with `dim head = dim tail + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    pairs: Vec<(CellId, CellId)>,
}

impl VectorField {
    pub fn new<I, T, H>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (T, H)>,
        T: Into<CellId>,
        H: Into<CellId>,
    {
        VectorField {
            pairs: pairs
                .into_iter()
                .map(|(t, h)| (t.into(), h.into()))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(CellId, CellId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn head_of(&self, tail: &CellId) -> Option<&CellId> {
        self.pairs.iter().find(|(t, _)| t == tail).map(|(_, h)| h)
    }

    pub fn tail_of(&self, head: &CellId) -> Option<&CellId> {
        self.pairs.iter().find(|(_, h)| h == head).map(|(t, _)| t)
    }

    pub fn is_paired(&self, cell: &CellId) -> bool {
        self.pairs.iter().any(|(t, h)| t == cell || h == cell)
    }
}

/// A violated vector-field invariant, reported by [`validate_field`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FieldIssue {
    #[error("pair ({tail}, {head}) references a cell missing from the complex")]
    UnknownCell { tail: CellId, head: CellId },
    #[error("{tail} is not a facet of {head}")]
    NotFacet { tail: CellId, head: CellId },
    #[error("paired cells {tail} and {head} have different filtration values")]
    ValueMismatch { tail: CellId, head: CellId },
    #[error("cell {cell} appears in more than one pair")]
    DoublePairing { cell: CellId },
    #[error("closed V-path through {cell}")]
    ClosedVPath { cell: CellId },
}

#[derive(Clone, Debug, Default)]
pub struct FieldReport {
    pub issues: Vec<FieldIssue>,
}

impl FieldReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for FieldReport {
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
pub enum MorseError {
    #[error("invalid vector field: {report}")]
    InvalidField { report: FieldReport },
    #[error(transparent)]
    InvalidComplex(#[from] ComplexError),
    #[error(transparent)]
    Dualize(#[from] DualizeError),
    #[error("invalid V-path: {reason}")]
    InvalidPath { reason: String },
}

/// Checks facet relations, value equality, single pairing, and acyclicity
/// of the V-path digraph. Reporting semantics: never aborts.
pub fn validate_field(field: &VectorField, complex: &FilteredComplex) -> FieldReport {
    let mut issues = Vec::new();

    let mut seen: HashMap<&CellId, usize> = HashMap::new();
    for (tail, head) in field.pairs() {
        *seen.entry(tail).or_insert(0) += 1;
        *seen.entry(head).or_insert(0) += 1;
    }
    let mut doubled: Vec<&CellId> = seen
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(&id, _)| id)
        .collect();
    doubled.sort();
    for cell in doubled {
        issues.push(FieldIssue::DoublePairing { cell: cell.clone() });
    }

    for (tail, head) in field.pairs() {
        let (tail_cell, head_cell) = match (complex.get(tail), complex.get(head)) {
            (Some(t), Some(h)) => (t, h),
            _ => {
                issues.push(FieldIssue::UnknownCell {
                    tail: tail.clone(),
                    head: head.clone(),
                });
                continue;
            }
        };
        if !head_cell.boundary.contains(tail) || head_cell.dim != tail_cell.dim + 1 {
            issues.push(FieldIssue::NotFacet {
                tail: tail.clone(),
                head: head.clone(),
            });
        }
        if tail_cell.value != head_cell.value {
            issues.push(FieldIssue::ValueMismatch {
                tail: tail.clone(),
                head: head.clone(),
            });
        }
    }

    // acyclicity: DFS over the digraph tail -> (other facets of its head
    // that are themselves tails)
    if issues.is_empty() {
        let head_by_tail: HashMap<&CellId, &CellId> =
            field.pairs().iter().map(|(t, h)| (t, h)).collect();
        let mut color: HashMap<&CellId, u8> = HashMap::new(); // 1 = open, 2 = done
        let mut reported = HashSet::new();
        for (start, _) in field.pairs() {
            if color.contains_key(start) {
                continue;
            }
            // iterative DFS with explicit stack of (node, successor iter state)
            let mut stack: Vec<(&CellId, Vec<&CellId>)> = Vec::new();
            let successors = |tail: &CellId| -> Vec<&CellId> {
                let head = head_by_tail[tail];
                complex
                    .get(head)
                    .map(|h| {
                        h.boundary
                            .iter()
                            .filter(|f| *f != tail && head_by_tail.contains_key(f))
                            .collect()
                    })
                    .unwrap_or_default()
            };
            color.insert(start, 1);
            stack.push((start, successors(start)));
            while let Some((node, succs)) = stack.last_mut() {
                match succs.pop() {
                    None => {
                        color.insert(*node, 2);
                        stack.pop();
                    }
                    Some(next) => match color.get(next) {
                        Some(1) => {
                            if reported.insert(next.clone()) {
                                issues.push(FieldIssue::ClosedVPath { cell: next.clone() });
                            }
                        }
                        Some(_) => {}
                        None => {
                            color.insert(next, 1);
                            stack.push((next, successors(next)));
                        }
                    },
                }
            }
        }
    }

    FieldReport { issues }
}

fn require_valid(field: &VectorField, complex: &FilteredComplex) -> Result<(), MorseError> {
    let report = validate_field(field, complex);
    if report.is_empty() {
        Ok(())
    } else {
        Err(MorseError::InvalidField { report })
    }
}

/// The dual field on the dual complex: each pair `(tail, head)` becomes
/// `(head, tail)`, with dimensions complementing through `d`.
pub fn dual_field(
    field: &VectorField,
    complex: &FilteredComplex,
    d: usize,
) -> Result<VectorField, MorseError> {
    require_valid(field, complex)?;
    // the dual complex must exist; its construction checks the precondition
    dual_complex(complex, d)?;
    Ok(VectorField::new(
        field.pairs().iter().map(|(t, h)| (h.clone(), t.clone())),
    ))
}

/// All unpaired cells, in filtration order.
pub fn critical_cells(
    field: &VectorField,
    complex: &FilteredComplex,
) -> Result<Vec<CellId>, MorseError> {
    require_valid(field, complex)?;
    let order = complex.filtration_order()?;
    Ok(order
        .ids()
        .iter()
        .filter(|id| !field.is_paired(id))
        .cloned()
        .collect())
}

/// An alternating V-path `t0 < s0 > t1 < ... > tn < sn`: each `(ti, si)` is
/// a pair of the field and each `t(i+1)` is a facet of `si` distinct
/// from `ti`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPath {
    steps: Vec<(CellId, CellId)>,
}

impl VPath {
    pub fn new<I, T, H>(steps: I) -> Self
    where
        I: IntoIterator<Item = (T, H)>,
        T: Into<CellId>,
        H: Into<CellId>,
    {
        VPath {
            steps: steps
                .into_iter()
                .map(|(t, h)| (t.into(), h.into()))
                .collect(),
        }
    }

    pub fn steps(&self) -> &[(CellId, CellId)] {
        &self.steps
    }

    /// Checks the path against a field and complex: every step is a pair of
    /// the field and consecutive steps are linked by a facet relation.
    pub fn validate(
        &self,
        field: &VectorField,
        complex: &FilteredComplex,
    ) -> Result<(), MorseError> {
        if self.steps.is_empty() {
            return Err(MorseError::InvalidPath {
                reason: "a V-path has at least one pair".into(),
            });
        }
        for (tail, head) in &self.steps {
            if field.head_of(tail) != Some(head) {
                return Err(MorseError::InvalidPath {
                    reason: format!("({tail}, {head}) is not a pair of the field"),
                });
            }
        }
        for window in self.steps.windows(2) {
            let (prev_tail, prev_head) = &window[0];
            let (next_tail, _) = &window[1];
            let head_cell = complex.get(prev_head).ok_or_else(|| MorseError::InvalidPath {
                reason: format!("cell {prev_head} missing from the complex"),
            })?;
            if next_tail == prev_tail || !head_cell.boundary.contains(next_tail) {
                return Err(MorseError::InvalidPath {
                    reason: format!(
                        "{next_tail} does not continue the path after ({prev_tail}, {prev_head})"
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Dualizes a V-path: the step sequence reverses and each pair flips, giving
/// a valid V-path of the dual field. An involution.
pub fn dual_v_path(
    path: &VPath,
    field: &VectorField,
    complex: &FilteredComplex,
) -> Result<VPath, MorseError> {
    path.validate(field, complex)?;
    Ok(VPath {
        steps: path
            .steps
            .iter()
            .rev()
            .map(|(t, h)| (h.clone(), t.clone()))
            .collect(),
    })
}

/// Builds the Morse chain complex on the critical cells. The Z2 coefficient
/// of a critical k-cell in the boundary of a critical (k+1)-cell is the
/// parity of the number of V-paths connecting them, computed by memoized
/// traversal (acyclicity guarantees termination).
pub fn morse_complex(
    field: &VectorField,
    complex: &FilteredComplex,
) -> Result<FilteredComplex, MorseError> {
    let critical = critical_cells(field, complex)?;
    let critical_set: HashSet<&CellId> = critical.iter().collect();
    let head_by_tail: HashMap<&CellId, &CellId> =
        field.pairs().iter().map(|(t, h)| (t, h)).collect();

    // flow(cell) = set of critical cells reachable by an odd number of
    // V-paths starting at `cell`
    let mut flow_cache: HashMap<CellId, BTreeSet<CellId>> = HashMap::new();

    fn flow<'a>(
        cell: &CellId,
        complex: &FilteredComplex,
        critical_set: &HashSet<&'a CellId>,
        head_by_tail: &HashMap<&'a CellId, &'a CellId>,
        cache: &mut HashMap<CellId, BTreeSet<CellId>>,
    ) -> BTreeSet<CellId> {
        if let Some(hit) = cache.get(cell) {
            return hit.clone();
        }
        let result = if critical_set.contains(cell) {
            BTreeSet::from([cell.clone()])
        } else if let Some(&head) = head_by_tail.get(cell) {
            let mut acc = BTreeSet::new();
            let head_cell = complex.get(head).expect("validated field resolves");
            for facet in &head_cell.boundary {
                if facet == cell {
                    continue;
                }
                for target in flow(facet, complex, critical_set, head_by_tail, cache) {
                    // Z2: toggle membership
                    if !acc.remove(&target) {
                        acc.insert(target);
                    }
                }
            }
            acc
        } else {
            // paired as a head: no V-path continues through it
            BTreeSet::new()
        };
        cache.insert(cell.clone(), result.clone());
        result
    }

    let mut cells = Vec::with_capacity(critical.len());
    for id in &critical {
        let cell = complex.get(id).expect("critical cell resolves");
        let mut boundary = BTreeSet::new();
        for facet in &cell.boundary {
            for target in flow(facet, complex, &critical_set, &head_by_tail, &mut flow_cache) {
                if !boundary.remove(&target) {
                    boundary.insert(target);
                }
            }
        }
        cells.push(Cell {
            id: id.clone(),
            dim: cell.dim,
            value: cell.value,
            boundary,
        });
    }
    Ok(FilteredComplex::new(cells, complex.ambient_dim()))
}

/// Greedy filtered gradient: repeatedly performs a free-pair collapse inside
/// each filtration value class, scanning in filtration order. Deterministic;
/// exists so callers and tests can generate valid fields, not an optimal
/// matching.
pub fn build_gradient(complex: &FilteredComplex) -> Result<VectorField, ComplexError> {
    let order = complex.filtration_order()?;
    let n = order.len();
    let positions: Vec<usize> = (0..n).collect();
    let cells: Vec<&Cell> = order
        .ids()
        .iter()
        .map(|id| complex.get(id).expect("ordered id resolves"))
        .collect();
    let mut facet_positions: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cofacet_positions: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &j in &positions {
        for facet in &cells[j].boundary {
            let i = order.position(facet).expect("facet resolves");
            facet_positions[j].push(i);
            cofacet_positions[i].push(j);
        }
    }

    let mut remaining = vec![true; n];
    let mut remaining_cofacets: Vec<usize> = cofacet_positions.iter().map(Vec::len).collect();
    let mut pairs = Vec::new();
    loop {
        let mut found = None;
        for i in 0..n {
            if !remaining[i] || remaining_cofacets[i] != 1 {
                continue;
            }
            let head = cofacet_positions[i]
                .iter()
                .copied()
                .find(|&j| remaining[j])
                .expect("counted cofacet exists");
            if cells[i].value == cells[head].value {
                found = Some((i, head));
                break;
            }
        }
        let Some((tail, head)) = found else {
            break;
        };
        remaining[tail] = false;
        remaining[head] = false;
        for removed in [tail, head] {
            for &i in &facet_positions[removed] {
                remaining_cofacets[i] -= 1;
            }
        }
        pairs.push((cells[tail].id.clone(), cells[head].id.clone()));
    }
    Ok(VectorField::new(pairs))
}
