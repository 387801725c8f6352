//! Plumbing graphs for boundaries of Milnor fibers of `f + zg`.
//!
//! Two plane curve germs `f, g: (C^2, 0) -> (C, 0)` without common factors
//! define the hypersurface germ `Phi = f + zg` on `(C^3, 0)`. The boundary
//! of the Milnor fiber of `Phi` is a graph manifold, and this crate computes
//! a plumbing graph for it, together with the multiplicity system of the
//! coordinate function `z`, starting from a decorated embedded-resolution
//! graph of the pair `(f, g)`.
//!
//! The pipeline:
//!
//! * [`resolution`] holds the input side: decorated resolution graphs, the
//!   balance conditions their multiplicities satisfy, the partition of
//!   vertices by comparing the multiplicities of `f` and `g`, and connected
//!   components of the low side with their invariants. [`tab`] generates
//!   the standard family `f = x^a + y^b`, `g = xy` as test input.
//! * [`construct`] assembles the output plumbing graph from pieces (one per
//!   component, arrowhead and connecting edge of the input), computes the
//!   multiplicity system of `z` along every chain by solving the chain
//!   equations exactly, and re-verifies the whole result against the
//!   vertex-by-vertex integer identity it must satisfy.
//! * [`plumbing`], [`iso`] and [`dot`] hold the output side: plumbing
//!   graphs with signed edges, multiplicity systems and their residual
//!   identity, decorated-graph isomorphism, and Graphviz export.
//! * [`calculus`] applies plumbing moves (sign flips, blow-downs) that
//!   change the graph without changing the manifold it describes.
//! * [`cfrac`] supplies the negative continued fractions underlying every
//!   chain, and [`format`] reads and writes the JSON documents the command
//!   line tool speaks.
//!
//! All computations are exact over machine integers; arithmetic that would
//! overflow is reported as an error, never wrapped.

#![forbid(unsafe_code)]

pub mod calculus;
pub mod cfrac;
pub mod construct;
pub mod dot;
pub mod error;
pub mod format;
pub mod iso;
pub mod plumbing;
pub mod resolution;
pub mod tab;

pub use error::{Error, Result};
