//! Exact algorithmic toolkit for conflict-free graph coloring.
//!
//! A coloring of a graph is *open-neighborhood conflict-free* (ONCF) when
//! every vertex has some color appearing exactly once among its neighbors,
//! and *closed-neighborhood conflict-free* (CNCF) when the same holds with
//! the vertex itself included. This crate implements, at desk scale and with
//! exact arithmetic where it matters:
//!
//! * [`graph`] — canonical graph representation, `.gr` parsing, exact
//!   minimum vertex cover / feedback vertex set, star classification;
//! * [`decomp`] — tree decompositions: validation, a min-fill heuristic,
//!   conversion to nice form, `.td` parsing;
//! * [`oracle`] — colorings and brute-force reference oracles for both
//!   variants, including partial-coloring and extension problems;
//! * [`convolution`] — fast subset convolution (ring and max-sum);
//! * [`dp`] — treewidth dynamic programming deciding q-ONCF / q-CNCF
//!   colorability, with witnesses, precolorings, and a convolution-based
//!   join;
//! * [`bounds`] — constructive upper bounds from tree decompositions,
//!   feedback vertex sets, and vertex covers;
//! * [`kernel`] — polynomial-CSP kernelization for 2-CNCF coloring
//!   parameterized by vertex cover, and the extension-problem kernel;
//! * [`gen`] — gadget and reduction instance generators.

pub mod bounds;
pub mod convolution;
pub mod decomp;
pub mod dp;
pub mod error;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
