//! Barcode computation for filtered complexes over Z2, plus the diagram
//! post-processing used by the image duality pipeline.
//!
//! The reduction processes dimensions top-down with the clearing
//! optimization over bit-packed columns. A naive left-to-right reduction
//! lives in the test suite as an independent oracle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{ComplexError, ExtendedValue, FilteredComplex};

/// A single interval `[birth, death)` of k-dimensional homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bar {
    pub dim: usize,
    pub birth: ExtendedValue,
    pub death: ExtendedValue,
}

impl Bar {
    pub fn new(dim: usize, birth: ExtendedValue, death: ExtendedValue) -> Self {
        assert!(birth <= death, "bar birth {birth} exceeds death {death}");
        Bar { dim, birth, death }
    }

    pub fn finite(dim: usize, birth: f64, death: f64) -> Self {
        Bar::new(
            dim,
            ExtendedValue::finite(birth),
            ExtendedValue::finite(death),
        )
    }

    pub fn essential(dim: usize, birth: ExtendedValue) -> Self {
        Bar::new(dim, birth, ExtendedValue::PosInf)
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_pos_inf()
    }

    pub fn is_zero_persistence(&self) -> bool {
        self.birth == self.death
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})_{}", self.birth, self.death, self.dim)
    }
}

/// Which filtered model a diagram was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    V,
    T,
    DualT,
    DualV,
    Abstract,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::V => "V",
            Construction::T => "T",
            Construction::DualT => "dual-T",
            Construction::DualV => "dual-V",
            Construction::Abstract => "abstract",
        }
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "V" => Ok(Construction::V),
            "T" => Ok(Construction::T),
            "dual-T" => Ok(Construction::DualT),
            "dual-V" => Ok(Construction::DualV),
            "abstract" => Ok(Construction::Abstract),
            other => Err(format!("unknown construction {other:?}")),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A barcode: a multiset of bars with the originating ambient dimension and
/// provenance metadata. Equality of content is order-insensitive; use
/// [`sorted_bars`](Self::sorted_bars) for canonical comparisons and output.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub ambient_dim: usize,
    pub construction: Construction,
    pub reduced: bool,
    /// The padding sentinel the originating image was padded with, if any.
    pub sentinel: Option<f64>,
    bars: Vec<Bar>,
}

impl Diagram {
    pub fn new(ambient_dim: usize, construction: Construction, bars: Vec<Bar>) -> Self {
        let mut diagram = Diagram {
            ambient_dim,
            construction,
            reduced: false,
            sentinel: None,
            bars,
        };
        diagram.bars.sort();
        diagram
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    /// Bars in canonical `(dim, birth, death)` order.
    pub fn sorted_bars(&self) -> Vec<Bar> {
        let mut bars = self.bars.clone();
        bars.sort();
        bars
    }

    /// Multiset equality of bar content, ignoring metadata.
    pub fn same_bars(&self, other: &Diagram) -> bool {
        self.sorted_bars() == other.sorted_bars()
    }

    pub fn essential_count(&self) -> usize {
        self.bars.iter().filter(|b| b.is_essential()).count()
    }

    pub fn finite_count(&self) -> usize {
        self.bars.len() - self.essential_count()
    }
}

#[derive(Clone, Debug, Error)]
pub enum DiagramError {
    #[error("no essential 0-dimensional bar with minimal birth to remove")]
    NoMinimalEssentialBar,
    #[error("{count} essential 0-dimensional bars share the minimal birth {birth}")]
    AmbiguousMinimalBar { count: usize, birth: ExtendedValue },
    #[error("bar {bar} has an endpoint beyond the sentinel {sentinel}")]
    SentinelNotSeparated { bar: Bar, sentinel: f64 },
    #[error("sentinel {sentinel} is not a positive finite value")]
    InvalidSentinel { sentinel: f64 },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReductionOptions {
    /// Keep pairs with equal birth and death values. Off by default; the
    /// finite-padding identities rely on dropping them.
    pub keep_zero_bars: bool,
}

/// Bit-packed Z2 column; bit `i` is set when cell at filtration position `i`
/// appears in the chain.
struct BitColumn {
    words: Vec<u64>,
}

impl BitColumn {
    fn new(len_words: usize) -> Self {
        BitColumn {
            words: vec![0; len_words],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn low(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate().rev() {
            if word != 0 {
                return Some(w * 64 + 63 - word.leading_zeros() as usize);
            }
        }
        None
    }

    fn add_assign(&mut self, other: &BitColumn) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Computes the persistent homology barcode of a valid filtered complex.
/// Deterministic: the pairing is a function of the filtration order alone.
pub fn compute_barcode(complex: &FilteredComplex) -> Result<Diagram, ComplexError> {
    compute_barcode_with(complex, ReductionOptions::default())
}

pub fn compute_barcode_with(
    complex: &FilteredComplex,
    options: ReductionOptions,
) -> Result<Diagram, ComplexError> {
    let order = complex.filtration_order()?;
    let n = order.len();
    let len_words = n.div_ceil(64);

    let mut dims = vec![0usize; n];
    let mut values = vec![ExtendedValue::PosInf; n];
    let mut columns: Vec<Option<BitColumn>> = Vec::with_capacity(n);
    for (pos, id) in order.ids().iter().enumerate() {
        let cell = complex.get(id).expect("ordered id resolves");
        dims[pos] = cell.dim;
        values[pos] = cell.value;
        let mut col = BitColumn::new(len_words);
        for facet in &cell.boundary {
            col.set(order.position(facet).expect("facet resolves"));
        }
        columns.push(Some(col));
    }

    let max_dim = dims.iter().copied().max().unwrap_or(0);
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for k in (1..=max_dim).rev() {
        for j in 0..n {
            if dims[j] != k || cleared[j] {
                continue;
            }
            let mut col = columns[j].take().expect("column present");
            while let Some(low) = col.low() {
                match pivot_owner[low] {
                    Some(owner) => {
                        let owner_col = columns[owner].as_ref().expect("pivot column retained");
                        col.add_assign(owner_col);
                    }
                    None => break,
                }
            }
            if let Some(low) = col.low() {
                pivot_owner[low] = Some(j);
                cleared[low] = true;
                pairs.push((low, j));
            }
            columns[j] = Some(col);
        }
    }

    let mut is_paired = vec![false; n];
    for &(i, j) in &pairs {
        is_paired[i] = true;
        is_paired[j] = true;
    }

    let mut bars = Vec::new();
    for &(i, j) in &pairs {
        let bar = Bar::new(dims[i], values[i], values[j]);
        if options.keep_zero_bars || !bar.is_zero_persistence() {
            bars.push(bar);
        }
    }
    for i in 0..n {
        if !is_paired[i] {
            bars.push(Bar::essential(dims[i], values[i]));
        }
    }

    Ok(Diagram::new(complex.ambient_dim(), Construction::Abstract, bars))
}

/// Removes the single essential 0-dimensional bar whose birth is the global
/// minimum; the reduced-homology diagram of the duality theorems.
pub fn reduce_diagram(diagram: &Diagram) -> Result<Diagram, DiagramError> {
    let min_birth = diagram
        .bars
        .iter()
        .map(|b| b.birth)
        .min()
        .ok_or(DiagramError::NoMinimalEssentialBar)?;
    let candidates: Vec<usize> = diagram
        .bars
        .iter()
        .enumerate()
        .filter(|(_, b)| b.dim == 0 && b.is_essential() && b.birth == min_birth)
        .map(|(i, _)| i)
        .collect();
    match candidates.len() {
        0 => Err(DiagramError::NoMinimalEssentialBar),
        1 => {
            let mut bars = diagram.bars.clone();
            bars.remove(candidates[0]);
            let mut out = Diagram::new(diagram.ambient_dim, diagram.construction, bars);
            out.reduced = true;
            out.sentinel = diagram.sentinel;
            Ok(out)
        }
        count => Err(DiagramError::AmbiguousMinimalBar {
            count,
            birth: min_birth,
        }),
    }
}

/// Relabels the finite padding sentinel back to infinity: left endpoints
/// `-N` become `-inf`, right endpoints `+N` become `+inf`, and bars living
/// entirely at the sentinel (padding artifacts) are removed.
pub fn drop_sentinel(diagram: &Diagram, sentinel: f64) -> Result<Diagram, DiagramError> {
    if !(sentinel.is_finite() && sentinel > 0.0) {
        return Err(DiagramError::InvalidSentinel { sentinel });
    }
    let pos = ExtendedValue::finite(sentinel);
    let neg = ExtendedValue::finite(-sentinel);
    for bar in &diagram.bars {
        for endpoint in [bar.birth, bar.death] {
            if let Some(v) = endpoint.as_finite() {
                if v.abs() > sentinel {
                    return Err(DiagramError::SentinelNotSeparated {
                        bar: *bar,
                        sentinel,
                    });
                }
            }
        }
    }
    let mut bars = Vec::with_capacity(diagram.bars.len());
    for bar in &diagram.bars {
        if bar.birth == pos || (bar.is_zero_persistence() && bar.birth == neg) {
            continue;
        }
        let birth = if bar.birth == neg {
            ExtendedValue::NegInf
        } else {
            bar.birth
        };
        let death = if bar.death == pos {
            ExtendedValue::PosInf
        } else {
            bar.death
        };
        bars.push(Bar::new(bar.dim, birth, death));
    }
    let mut out = Diagram::new(diagram.ambient_dim, diagram.construction, bars);
    out.reduced = diagram.reduced;
    Ok(out)
}

/// Per-dimension bar counts, handy for reports.
pub fn bars_by_dim(diagram: &Diagram) -> HashMap<usize, usize> {
    let mut counts = HashMap::new();
    for bar in diagram.bars() {
        *counts.entry(bar.dim).or_insert(0) += 1;
    }
    counts
}

/// Decomposes a cell id count check: every cell is exactly one of
/// birth/death, so `cells = 2 * finite (incl. zero-persistence) + essential`.
pub fn counting_identity_holds(complex: &FilteredComplex) -> Result<bool, ComplexError> {
    let full = compute_barcode_with(
        complex,
        ReductionOptions {
            keep_zero_bars: true,
        },
    )?;
    Ok(complex.len() == 2 * full.finite_count() + full.essential_count())
}
