//! Discrete Wigner functions for finite-dimensional quantum systems on a
//! doubled phase-space grid, together with the protocols that live naturally
//! in that representation: phase-space teleportation through a maximally
//! entangled basis, and direct measurement of individual Wigner values with
//! a single ancilla qubit.
//!
//! For an `N`-state system the phase space is a `2N x 2N` integer grid. Each
//! point carries a Hermitian phase-point operator; the Wigner function is the
//! normalized expectation of those operators and behaves like a (possibly
//! negative) joint quasi-probability: its sums along odd-numbered horizontal
//! and vertical lines vanish, sums along even lines reproduce position and
//! momentum probabilities, and the state can be rebuilt linearly from any
//! fundamental `N x N` subgrid.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex vectors/operators, density matrices, partial
//!   traces, fidelities and a Hermitian eigensolver.
//! - [`phase_space`]: grids, phase points, the translation operators and the
//!   phase-point operators.
//! - [`wigner`]: Wigner values and grids for single and composite systems,
//!   marginals, overlaps and state reconstruction.
//! - [`lines`]: phase-space lines and separable two-system slices, their
//!   point sets and the associated averaged projection operators.
//! - [`bell`]: the maximally entangled basis indexed by phase-space
//!   displacements, its Wigner functions and the change-of-basis
//!   coefficients to products of phase-point operators.
//! - [`teleport`]: the end-to-end teleportation protocol, with both the
//!   operator-level simulation and the phase-space propagation kernel.
//! - [`tomography`]: the ancilla-qubit interference circuit that reads off
//!   one Wigner value per run.
//! - [`state_spec`], [`export`], [`verify`], [`cli`]: the text interfaces —
//!   state descriptions, CSV/JSON grid export and the self-check suites
//!   behind the `dwigner` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod bell;
pub mod cli;
pub mod error;
pub mod export;
pub mod linalg;
pub mod lines;
pub mod phase_space;
pub mod state_spec;
pub mod teleport;
pub mod tomography;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};

/// Default absolute tolerance for exact algebraic identities checked in
/// floating point (unitarity, Hermiticity, trace conditions, marginals).
pub const TOLERANCE: f64 = 1e-10;

/// Tighter tolerance for small, well-conditioned quantities such as single
/// matrix elements and phases.
pub const STRICT_TOLERANCE: f64 = 1e-12;
