//! Dihedral colorings of link diagrams.
//!
//! Diagrams are read from planar-diagram (PD) codes or generated from a few
//! standard families. Colorings assign dihedral group elements to arcs; the
//! crate decides two-tone colorability, surjectivity and Fox colorability with
//! exact integer linear algebra, and cross-checks them against brute force.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coloring;
pub mod diagram;
pub mod dihedral;
pub mod invariants;
pub mod verify;
pub mod zlinalg;

pub use diagram::{parse_link_text, ArcId, ComponentId, Diagram, DiagramError, Sign};
pub use dihedral::DihedralElement;
pub use zlinalg::Modulus;
