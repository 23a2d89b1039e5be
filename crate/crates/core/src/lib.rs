//! Topology of links of non-normal complex surface germs, computed from
//! combinatorial data.
//!
//! A singular link is described by the plumbing graph of the exterior of its
//! singular circles together with, for every singular curve, the branch
//! degrees of the normalization above it. From this the crate computes the
//! first homology of the link, decides manifoldness, rebuilds the link of the
//! normalization by Dehn filling along the curling meridians and reduces the
//! resulting plumbing graphs.
//!
//! Module map:
//!
//! - [`pinched_model`]: permutations, singular pinched solid tori and their sheets.
//! - [`zlattice`]: exact integer matrices, Smith normal form, abelian groups.
//! - [`plumbing`]: plumbing graphs, H_1 presentations, Dehn filling, reduction.
//! - [`normalization`]: the singular-link pipeline and its certificates.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod normalization;
pub mod pinched_model;
pub mod plumbing;
pub mod zlattice;

pub use normalization::{
    Attachment, LinkError, NormalizationResult, NormalizedComponent, Obstruction,
    ObstructionReport, SingularLinkDescription, SmoothVerdict, Witness,
};
pub use pinched_model::{
    BoundaryClasses, BoundaryFraming, CycleDecomposition, Permutation, PinchedError, Sheet,
    SingularCurveData, SingularPinchedTorus,
};
pub use plumbing::{
    Arrow, ArrowFraming, BlowUpSite, Generator, GraphError, H1Presentation, Move, PlumbingGraph,
    Reduction, S3Verdict, Slope, Vertex,
};
pub use zlattice::{AbelianGroup, IntMatrix, LatticeError, SmithForm};

pub use num_bigint::BigInt;
