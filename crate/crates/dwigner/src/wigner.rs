//! Wigner functions: quasi-probability values on the doubled grid for single
//! and composite systems, their marginals, overlaps and the linear inverse
//! back to the density matrix.
//!
//! The Wigner value at a point is `W(pt) = Re Tr[A(pt) rho]` with `A` the
//! phase-point operator of [`crate::phase_space`]. Because `A(pt)` has one
//! nonzero entry per column, every value costs `O(N)` once the density
//! matrix is in hand; all grid builders below exploit that.

use ndarray::{Array2, Array4};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, DensityOperator, LinearOperator, Subsystem};
use crate::phase_space::{GridSpec, PhasePoint};

/// Largest `N` for which the `(2N)^4`-entry composite grid is materialized.
/// Streaming functions such as [`composite_overlap`] have no such limit.
pub const MAX_COMPOSITE_GRID_N: usize = 4;

/// The nonzero structure of a phase-point operator: column `c` has its only
/// entry at `rows[c]`, with value `vals[c]`.
fn sparse_phase_point(g: &GridSpec, pt: PhasePoint) -> (Vec<usize>, Vec<C64>) {
    let n = g.n() as i64;
    let q = pt.q() as i64;
    let p = pt.p() as i64;
    let scale = 1.0 / (2.0 * g.n() as f64);
    let mut rows = Vec::with_capacity(g.n());
    let mut vals = Vec::with_capacity(g.n());
    for col in 0..n {
        rows.push((q - col).rem_euclid(n) as usize);
        vals.push(g.phase(p * q - 2 * p * col) * scale);
    }
    (rows, vals)
}

/// The Wigner value of `rho` at one grid point.
pub fn wigner_point(g: &GridSpec, rho: &DensityOperator, pt: PhasePoint) -> Result<f64> {
    if rho.dim() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} on a grid for N = {}",
            rho.dim(),
            g.n()
        )));
    }
    let (rows, vals) = sparse_phase_point(g, pt);
    let mut total = C64::new(0.0, 0.0);
    for (col, (&row, &val)) in rows.iter().zip(vals.iter()).enumerate() {
        total += val * rho.operator().entry(col, row);
    }
    debug_assert!(
        total.im.abs() < 1e-9,
        "Wigner value has imaginary part {:.3e}",
        total.im
    );
    Ok(total.re)
}

/// The Wigner function of a single system on the full `2N x 2N` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    g: GridSpec,
    values: Array2<f64>,
}

impl WignerGrid {
    pub fn g(&self) -> &GridSpec {
        &self.g
    }

    /// Raw values indexed `[q][p]`.
    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn value(&self, pt: PhasePoint) -> f64 {
        self.values[(pt.q(), pt.p())]
    }

    /// Sum over the whole doubled grid; equals `Tr rho = 1`.
    pub fn total(&self) -> f64 {
        self.values.sum()
    }

    /// Sum along the horizontal line at height `p`. For even `p` this is the
    /// probability of momentum `p/2`; odd lines sum to zero.
    pub fn horizontal_sum(&self, p: usize) -> f64 {
        (0..self.g.side()).map(|q| self.values[(q, p % self.g.side())]).sum()
    }

    /// Sum along the vertical line at position `q`. For even `q` this is the
    /// probability of position `q/2`; odd lines sum to zero.
    pub fn vertical_sum(&self, q: usize) -> f64 {
        (0..self.g.side()).map(|p| self.values[(q % self.g.side(), p)]).sum()
    }

    /// The `N` momentum probabilities, read off the even horizontal lines.
    pub fn momentum_probabilities(&self) -> Vec<f64> {
        (0..self.g.n()).map(|k| self.horizontal_sum(2 * k)).collect()
    }

    /// The `N` position probabilities, read off the even vertical lines.
    pub fn position_probabilities(&self) -> Vec<f64> {
        (0..self.g.n()).map(|q0| self.vertical_sum(2 * q0)).collect()
    }

    /// `Tr(rho rho')` computed entirely in phase space:
    /// `N sum_{full grid} W W'`.
    pub fn overlap(&self, other: &WignerGrid) -> Result<f64> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch(format!(
                "overlap between grids for N = {} and N = {}",
                self.g.n(),
                other.g.n()
            )));
        }
        let dot: f64 = self.values.iter().zip(other.values.iter()).map(|(a, b)| a * b).sum();
        Ok(self.g.n() as f64 * dot)
    }
}

/// Evaluates the Wigner function of `rho` at every point of the doubled grid.
pub fn wigner_grid(g: &GridSpec, rho: &DensityOperator) -> Result<WignerGrid> {
    if rho.dim() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} on a grid for N = {}",
            rho.dim(),
            g.n()
        )));
    }
    let side = g.side();
    let mut values = Array2::zeros((side, side));
    for pt in g.full_grid_points() {
        values[(pt.q(), pt.p())] = wigner_point(g, rho, pt)?;
    }
    Ok(WignerGrid { g: *g, values })
}

/// Rebuilds the density matrix from the fundamental subgrid:
/// `rho = 4N sum_{subgrid} W(a) A(a)`.
///
/// The result is returned as a raw operator; for a grid that really came
/// from a state it is that state's density matrix to rounding accuracy.
pub fn reconstruct(grid: &WignerGrid) -> LinearOperator {
    let g = grid.g;
    let mut acc = LinearOperator::zeros(g.n());
    for pt in g.subgrid_points() {
        let w = grid.value(pt);
        acc = &acc + &g.phase_point_op(pt).scaled(C64::new(4.0 * g.n() as f64 * w, 0.0));
    }
    acc
}

/// Rebuilds the density matrix from the full doubled grid:
/// `rho = N sum_{full grid} W(a) A(a)`. Redundant with [`reconstruct`], but
/// a useful cross-check of the sign structure relating the two grids.
pub fn reconstruct_full(grid: &WignerGrid) -> LinearOperator {
    let g = grid.g;
    let mut acc = LinearOperator::zeros(g.n());
    for pt in g.full_grid_points() {
        let w = grid.value(pt);
        acc = &acc + &g.phase_point_op(pt).scaled(C64::new(g.n() as f64 * w, 0.0));
    }
    acc
}

/// Builds a full-grid Wigner function from its values on the fundamental
/// `N x N` subgrid, using the sign rule that relates every doubled-grid
/// point to its subgrid representative.
pub fn extend_subgrid(g: &GridSpec, sub: &Array2<f64>) -> WignerGrid {
    assert_eq!(sub.dim(), (g.n(), g.n()), "subgrid values must be N x N");
    let side = g.side();
    let mut values = Array2::zeros((side, side));
    for pt in g.full_grid_points() {
        let (rep, sign) = g.subgrid_rep(pt);
        values[(pt.q(), pt.p())] = sign * sub[(rep.q(), rep.p())];
    }
    WignerGrid { g: *g, values }
}

/// Contracts the first factor of a two-system density matrix with a
/// phase-point operator: `X[m, l] = sum_{i,k} A1[i, k] rho[(k,m), (i,l)]`,
/// so that `W(pt1, pt2) = Re Tr[A(pt2) X]` for every `pt2`.
fn contract_first_factor(g: &GridSpec, rho: &LinearOperator, pt1: PhasePoint) -> Array2<C64> {
    let n = g.n();
    let (rows, vals) = sparse_phase_point(g, pt1);
    let mut x = Array2::zeros((n, n));
    for m in 0..n {
        for l in 0..n {
            let mut entry = C64::new(0.0, 0.0);
            for k in 0..n {
                // A1[i, k] is nonzero only at i = rows[k].
                entry += vals[k] * rho.entry(k * n + m, rows[k] * n + l);
            }
            x[(m, l)] = entry;
        }
    }
    x
}

/// Wigner value at the pair of grid points of a two-system state on
/// `H (x) H` (dimension `N^2`).
pub fn composite_wigner_point(
    g: &GridSpec,
    rho: &DensityOperator,
    pt1: PhasePoint,
    pt2: PhasePoint,
) -> Result<f64> {
    check_composite_dim(g, rho.dim())?;
    let x = contract_first_factor(g, rho.operator(), pt1);
    Ok(contract_second_factor(g, &x, pt2))
}

/// Finishes a composite Wigner value from the precomputed first-factor
/// contraction: `Re sum A2[l, m] X[m, l]` using the sparsity of `A2`.
fn contract_second_factor(g: &GridSpec, x: &Array2<C64>, pt2: PhasePoint) -> f64 {
    let (rows, vals) = sparse_phase_point(g, pt2);
    let mut total = C64::new(0.0, 0.0);
    for (m, (&l, &val)) in rows.iter().zip(vals.iter()).enumerate() {
        total += val * x[(m, l)];
    }
    debug_assert!(
        total.im.abs() < 1e-9,
        "composite Wigner value has imaginary part {:.3e}",
        total.im
    );
    total.re
}

fn check_composite_dim(g: &GridSpec, dim: usize) -> Result<()> {
    if dim != g.n() * g.n() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {dim} on a composite grid for N x N = {}",
            g.n() * g.n()
        )));
    }
    Ok(())
}

/// The Wigner function of a two-system state on the `(2N)^4`-point product
/// grid, materialized as a dense array.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeWignerGrid {
    g: GridSpec,
    values: Array4<f64>,
}

impl CompositeWignerGrid {
    pub fn g(&self) -> &GridSpec {
        &self.g
    }

    /// Raw values indexed `[q1][p1][q2][p2]`.
    pub fn values(&self) -> &Array4<f64> {
        &self.values
    }

    pub fn value(&self, pt1: PhasePoint, pt2: PhasePoint) -> f64 {
        self.values[(pt1.q(), pt1.p(), pt2.q(), pt2.p())]
    }

    /// Sum over all `(2N)^4` points; equals 1 for a density matrix.
    pub fn total(&self) -> f64 {
        self.values.sum()
    }

    /// Marginal Wigner function of one subsystem, obtained by summing the
    /// other subsystem's coordinates over its full doubled grid.
    pub fn reduced(&self, keep: Subsystem) -> WignerGrid {
        let side = self.g.side();
        let mut values = Array2::zeros((side, side));
        for q in 0..side {
            for p in 0..side {
                let mut sum = 0.0;
                for q2 in 0..side {
                    for p2 in 0..side {
                        sum += match keep {
                            Subsystem::First => self.values[(q, p, q2, p2)],
                            Subsystem::Second => self.values[(q2, p2, q, p)],
                        };
                    }
                }
                values[(q, p)] = sum;
            }
        }
        WignerGrid { g: self.g, values }
    }

    /// `Tr(rho rho')` in phase space: `N^2 sum_{full x full} W W'`.
    pub fn overlap(&self, other: &CompositeWignerGrid) -> Result<f64> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch(format!(
                "overlap between composite grids for N = {} and N = {}",
                self.g.n(),
                other.g.n()
            )));
        }
        let dot: f64 = self.values.iter().zip(other.values.iter()).map(|(a, b)| a * b).sum();
        Ok((self.g.n() * self.g.n()) as f64 * dot)
    }
}

/// Materializes the composite Wigner function of a two-system state.
///
/// Fails with [`Error::GridTooLarge`] beyond [`MAX_COMPOSITE_GRID_N`]; use
/// the streaming functions for larger systems.
pub fn composite_wigner_grid(g: &GridSpec, rho: &DensityOperator) -> Result<CompositeWignerGrid> {
    check_composite_dim(g, rho.dim())?;
    if g.n() > MAX_COMPOSITE_GRID_N {
        return Err(Error::GridTooLarge(g.n(), MAX_COMPOSITE_GRID_N));
    }
    let side = g.side();
    let mut values = Array4::zeros((side, side, side, side));
    for pt1 in g.full_grid_points() {
        let x = contract_first_factor(g, rho.operator(), pt1);
        for pt2 in g.full_grid_points() {
            values[(pt1.q(), pt1.p(), pt2.q(), pt2.p())] = contract_second_factor(g, &x, pt2);
        }
    }
    Ok(CompositeWignerGrid { g: *g, values })
}

/// Rebuilds a two-system density matrix from its Wigner function on the
/// product of fundamental subgrids:
/// `rho = (4N)^2 sum_{sub x sub} W(a1, a2) A(a1) (x) A(a2)`.
pub fn composite_reconstruct(grid: &CompositeWignerGrid) -> LinearOperator {
    let g = grid.g;
    let dim = g.n() * g.n();
    let scale = (4.0 * g.n() as f64) * (4.0 * g.n() as f64);
    let mut acc = LinearOperator::zeros(dim);
    for pt1 in g.subgrid_points() {
        let a1 = g.phase_point_op(pt1);
        for pt2 in g.subgrid_points() {
            let w = grid.value(pt1, pt2);
            let term = a1.tensor(&g.phase_point_op(pt2));
            acc = &acc + &term.scaled(C64::new(scale * w, 0.0));
        }
    }
    acc
}

/// `Tr(rho sigma)` between two-system states, computed point by point in
/// phase space without materializing either grid:
/// `N^2 sum_{full x full} W_rho W_sigma`.
pub fn composite_overlap(
    g: &GridSpec,
    rho: &DensityOperator,
    sigma: &DensityOperator,
) -> Result<f64> {
    check_composite_dim(g, rho.dim())?;
    check_composite_dim(g, sigma.dim())?;
    let mut dot = 0.0;
    for pt1 in g.full_grid_points() {
        let x_rho = contract_first_factor(g, rho.operator(), pt1);
        let x_sigma = contract_first_factor(g, sigma.operator(), pt1);
        for pt2 in g.full_grid_points() {
            dot += contract_second_factor(g, &x_rho, pt2)
                * contract_second_factor(g, &x_sigma, pt2);
        }
    }
    Ok((g.n() * g.n()) as f64 * dot)
}

/// The marginal Wigner grid of one factor of a two-system state, computed
/// from the reduced density matrix (no composite grid required).
pub fn reduced_wigner(g: &GridSpec, rho: &DensityOperator, keep: Subsystem) -> Result<WignerGrid> {
    check_composite_dim(g, rho.dim())?;
    let reduced = partial_trace(rho.operator(), (g.n(), g.n()), keep)?;
    wigner_grid(g, &DensityOperator::from_operator_unchecked(reduced))
}
