//! Barcode-level duality bijections: the dual-complex map for abstract
//! filtered complexes and the image conversions between the T- and
//! V-construction barcodes (with their sentinel accounting already folded
//! into infinite endpoints).
//!
//! All operations act purely on diagrams; callers who start from a complex
//! compute its barcode first.

use thiserror::Error;

use crate::complex::ExtendedValue;
use crate::persistence::{Bar, Construction, Diagram};

#[derive(Clone, Debug, Error)]
pub enum TransformError {
    #[error("bar {bar} has dimension {} but the ambient dimension is {ambient}", bar.dim)]
    DimensionOutOfRange { bar: Bar, ambient: usize },
    #[error("bar {bar} is outside the bijection's domain: {reason}")]
    UnexpectedBar { bar: Bar, reason: &'static str },
    #[error("expected exactly one essential 0-dimensional bar, found {count}")]
    EssentialBarCount { count: usize },
    #[error("expected exactly one bar of the form [-inf, q)_(d-1), found {count}")]
    NegInfBarCount { count: usize },
}

/// The abstract duality map: `[p,q)_k <-> [-q,-p)_(d-k-1)` for finite bars
/// and `[p,inf)_k <-> [-p,inf)_(d-k)` for essential ones. An involution.
pub fn dual_barcode(diagram: &Diagram, d: usize) -> Result<Diagram, TransformError> {
    let mut bars = Vec::with_capacity(diagram.bars().len());
    for bar in diagram.bars() {
        if bar.birth.is_neg_inf() {
            return Err(TransformError::UnexpectedBar {
                bar: *bar,
                reason: "birth -inf does not occur for finitely filtered dual complexes",
            });
        }
        if bar.is_essential() {
            if bar.dim > d {
                return Err(TransformError::DimensionOutOfRange {
                    bar: *bar,
                    ambient: d,
                });
            }
            bars.push(Bar::new(d - bar.dim, -bar.birth, ExtendedValue::PosInf));
        } else {
            if bar.dim + 1 > d {
                return Err(TransformError::DimensionOutOfRange {
                    bar: *bar,
                    ambient: d,
                });
            }
            bars.push(Bar::new(d - bar.dim - 1, -bar.death, -bar.birth));
        }
    }
    let mut out = Diagram::new(d, Construction::Abstract, bars);
    out.reduced = diagram.reduced;
    Ok(out)
}

fn convert_image_diagram(
    diagram: &Diagram,
    d: usize,
    target: Construction,
) -> Result<Diagram, TransformError> {
    let essential: Vec<&Bar> = diagram.bars().iter().filter(|b| b.is_essential()).collect();
    if essential.len() != 1 {
        return Err(TransformError::EssentialBarCount {
            count: essential.len(),
        });
    }
    let pivot = essential[0];
    if pivot.dim != 0 {
        return Err(TransformError::UnexpectedBar {
            bar: *pivot,
            reason: "the essential bar of an image barcode must have dimension 0",
        });
    }
    if d == 0 {
        return Err(TransformError::DimensionOutOfRange {
            bar: *pivot,
            ambient: d,
        });
    }

    let mut bars = Vec::with_capacity(diagram.bars().len());
    for bar in diagram.bars() {
        if !bar.birth.is_finite() {
            return Err(TransformError::UnexpectedBar {
                bar: *bar,
                reason: "image barcodes have finite births",
            });
        }
        if bar.is_essential() {
            bars.push(Bar::new(d - 1, ExtendedValue::NegInf, -bar.birth));
        } else {
            if bar.dim + 1 > d {
                return Err(TransformError::DimensionOutOfRange {
                    bar: *bar,
                    ambient: d,
                });
            }
            bars.push(Bar::new(d - bar.dim - 1, -bar.death, -bar.birth));
        }
    }
    let mut out = Diagram::new(d, target, bars);
    out.reduced = true;
    Ok(out)
}

/// Converts `Dgm(I_V)` into the reduced diagram of the negated, padded
/// T-construction, per the image duality theorem.
pub fn convert_v_to_t(diagram: &Diagram, d: usize) -> Result<Diagram, TransformError> {
    convert_image_diagram(diagram, d, Construction::DualT)
}

/// Converts `Dgm(I_T)` into the reduced diagram of the negated, padded
/// V-construction; the mirror of [`convert_v_to_t`].
pub fn convert_t_to_v(diagram: &Diagram, d: usize) -> Result<Diagram, TransformError> {
    convert_image_diagram(diagram, d, Construction::DualV)
}

/// Inverts either image conversion: the single `[-inf, -p0)_(d-1)` bar maps
/// back to `[p0, inf)_0` and every finite bar maps through the involutive
/// duality formula.
pub fn invert_conversion(diagram: &Diagram, d: usize) -> Result<Diagram, TransformError> {
    if d == 0 {
        return Err(TransformError::NegInfBarCount { count: 0 });
    }
    let neg_inf: Vec<&Bar> = diagram
        .bars()
        .iter()
        .filter(|b| b.birth.is_neg_inf())
        .collect();
    if neg_inf.len() != 1 {
        return Err(TransformError::NegInfBarCount {
            count: neg_inf.len(),
        });
    }
    let pivot = neg_inf[0];
    if pivot.dim != d - 1 || !pivot.death.is_finite() {
        return Err(TransformError::UnexpectedBar {
            bar: *pivot,
            reason: "the -inf bar must be finite-death and of dimension d-1",
        });
    }

    let mut bars = Vec::with_capacity(diagram.bars().len());
    for bar in diagram.bars() {
        if bar.birth.is_neg_inf() {
            bars.push(Bar::new(0, -bar.death, ExtendedValue::PosInf));
            continue;
        }
        if !bar.birth.is_finite() || !bar.death.is_finite() {
            return Err(TransformError::UnexpectedBar {
                bar: *bar,
                reason: "all other bars of a converted image barcode are finite",
            });
        }
        if bar.dim + 1 > d {
            return Err(TransformError::DimensionOutOfRange {
                bar: *bar,
                ambient: d,
            });
        }
        bars.push(Bar::new(d - bar.dim - 1, -bar.death, -bar.birth));
    }
    Ok(Diagram::new(d, Construction::Abstract, bars))
}
