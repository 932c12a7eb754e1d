//! Resonance and characteristic varieties of rational line arrangements.
//!
//! Given a line arrangement in ℙ²(ℚ) the library computes its intersection
//! lattice, decides whether its points of multiplicity ≥ 3 lie on one or two
//! member lines (classes C1 and C2), and describes the first resonance
//! variety both pointwise, through the rank of the Aomoto complex, and in
//! closed form as a list of linear components (parallel families, pencils
//! and parallelograms). Rank-one local systems are handled through torsion
//! characters and admissible residue witnesses.
//!
//! All arithmetic is exact.

pub mod arrangement;
pub mod charvar;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod osalg;
pub mod rational;
pub mod resonance;

pub use arrangement::{
    classify, intersection_lattice, parse_arrangement, tutte_polynomial, Arrangement, ClassInfo,
    ClassTag, Flat, Lattice, ProjectiveLine, ProjectivePoint, TuttePolynomial,
};
pub use error::{Error, Result};
pub use linalg::Subspace;
pub use osalg::{aomoto_h1_dim, cup_matrix, make_chart, orth_complement, wedge, Chart, OneForm, TwoForm};
pub use rational::Rational;
pub use resonance::{
    enumerate_components, is_resonant, parallelograms, resonance_k, verify_oracle, Component,
    ComponentKind, Parallelogram, VerificationReport,
};
pub use charvar::{
    admissible_witness, char_components, exp_residues, local_system_h1, AdmissibilityReport,
    CharComponent, LocalSystem, ProjectiveResidues,
};
