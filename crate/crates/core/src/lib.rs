//! Exact-arithmetic toolkit for positive ternary quadratic forms.
//!
//! Provides complete lattice-point enumeration of representations, automorph
//! groups and orbit partitions ("essentially unique" representation),
//! imaginary-quadratic class numbers and class-group structures, exact p-adic
//! local densities with Siegel-count assembly for idoneal forms, a q-series
//! engine with a catalog of theta/eta identities, and prelist/unique-list
//! solvers.  All arithmetic is exact (integers and rationals); no floating
//! point enters any result.

pub mod arith;
pub mod automorphs;
pub mod binaryqf;
pub mod forms;
pub mod identities;
pub mod localdensity;
pub mod prelist;
pub mod reference;

pub use forms::TernaryForm;
