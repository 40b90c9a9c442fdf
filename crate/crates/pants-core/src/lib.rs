//! A combinatorial calculus for pair-of-pants decompositions of smooth
//! 4-manifolds. A decomposition is encoded by a labeled special 2-complex:
//! the complex records the stratified base, upper-triangular integer
//! matrices on the face sides record the gluings of the basic fibrations,
//! and admissibility of the labels is the exact condition for the data to
//! assemble into a fibration. The crate provides the data model and checker,
//! blowup and surgery moves with the polygon classification, the nodal
//! surface and homology invariants, the tropical model geometry and fiber
//! samplers, and a constructive pipeline realizing any finitely presented
//! group as the fundamental group of a certified fibration.

pub mod complex;
pub mod fixtures;
pub mod gl2z;
pub mod groups;
pub mod invariants;
pub mod io;
pub mod labeling;
pub mod moves;
pub mod tropical;

pub use complex::{SpecialComplex, StrataCensus, ValidationReport};
pub use gl2z::{Gl2z, LabelMatrix, VertexType};
pub use labeling::{check_admissible, euler_characteristic, AdmissibilityVerdict, Labeling};
