//! Persistent homology of greyscale images under the two dual cubical
//! models of pixel connectivity, and the barcode-level bijections between
//! them.
//!
//! The crate is organized around a small number of building blocks:
//!
//! * [`complex`] - filtered chain complexes over Z2 and their validation.
//! * [`cubical`] - the T-construction (pixels are top cells) and
//!   V-construction (pixels are vertices) of an image, plus padding and
//!   negation preprocessing.
//! * [`persistence`] - barcode computation by column reduction with the
//!   clearing optimization, and diagram post-processing (reduced diagrams,
//!   sentinel relabelling).
//! * [`dualize`] - combinatorial dual complexes and the one-point
//!   compactifications closing image grids into spheres.
//! * [`transform`] - the barcode bijections: the abstract duality map and
//!   the image T/V conversions.
//! * [`morse`] - filtered discrete gradient fields, dual fields, V-paths,
//!   critical cells and Morse complexes.

pub mod complex;
pub mod cubical;
pub mod dualize;
pub mod morse;
pub mod persistence;
pub mod transform;

pub use complex::{Cell, CellId, ExtendedValue, FilteredComplex, FiltrationOrder};
pub use cubical::ImageArray;
pub use persistence::{Bar, Construction, Diagram};
pub use morse::{VPath, VectorField};
