//! Toolkit for comparing finite-dimensional quantum channels.
//!
//! A channel can be stronger than another in more than one sense. The
//! strictest notion implemented here is post-processing: `a` is above `b`
//! when `b = theta ∘ a` for some quantum channel `theta`. The loosest is
//! statistics recovery: `a` is above `b` when the output state of `b` can be
//! reconstructed, for every unknown input, from the measurement statistics
//! of `a` via an informationally complete measurement. The latter relation
//! holds exactly when a Hermitian-preserving trace-preserving (HPTP)
//! connecting map exists, and equivalently when the kernel of `a` is
//! contained in the kernel of `b`. This crate builds all the machinery to
//! decide the relations and to construct the connecting maps explicitly:
//!
//! - [`numkit`] — dense complex-matrix primitives with explicit tolerances;
//! - [`channels`] — channel representations (Kraus / Choi / transfer),
//!   duals, conjugates, and classification of general operator maps;
//! - [`povm`] — POVMs, informational completeness, minimal-IC construction
//!   and reduction, and linear-inversion state reconstruction;
//! - [`preorder`] — the preorder deciders, both connecting-map
//!   constructions, witness measurements, and full comparison reports;
//! - [`feasibility`] — an affine ∩ PSD feasibility engine (Dykstra
//!   alternating projections) backing the post-processing decision;
//! - [`compat`] — channel–channel and measurement–channel compatibility;
//! - [`tomosim`] — finite-sample tomography simulation with a counter-based
//!   RNG for reproducible statistics;
//! - [`io`] + [`cli`] — JSON/CSV file formats and the command-line wrapper.
//!
//! Every runnable capability has a dedicated example under `examples/`;
//! start with `compare_channels`.

pub mod channels;
pub mod cli;
pub mod compat;
pub mod feasibility;
pub mod io;
pub mod numkit;
pub mod povm;
pub mod preorder;
pub mod rng;
pub mod sampling;
pub mod tomosim;

pub use channels::{LinearMapOnOperators, MapClassification, OperatorMap, QuantumChannel};
pub use numkit::{ComplexMatrix, ComplexVector, Tolerance};
pub use povm::Povm;
pub use preorder::PreorderReport;
