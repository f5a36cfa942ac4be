//! Direct measurement of Wigner values with a single ancilla qubit.
//!
//! The interference circuit `H . controlled-M . H` run on an ancilla
//! prepared in `|0>` leaves the ancilla's Pauli expectations holding the
//! complex number `Tr(M rho)` of the target system: the `z` reading is its
//! real part and the (sign-adjusted, see [`AncillaReadings::sy`]) `y`
//! reading its imaginary part. Choosing `M` as a rescaled phase-point
//! operator — `2N A(pt)`, which is unitary — turns one interference
//! experiment into one Wigner value, with no state reconstruction step.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, tensor, DensityOperator, LinearOperator, Subsystem};
use crate::phase_space::{GridSpec, PhasePoint};

/// Ancilla Pauli expectations after one interference run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaReadings {
    /// `<sigma_z>` of the ancilla, equal to `Re Tr(M rho)`.
    pub sz: f64,
    /// `Im Tr(M rho)`. Note this is the *negative* of the physical
    /// `<sigma_y>` expectation; the sign is flipped on readout so that
    /// `(sz, sy)` are literally the real and imaginary parts of `Tr(M rho)`.
    pub sy: f64,
}

/// One measured Wigner value, with the raw readings that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerMeasurement {
    /// Raw `z` reading, a rescaled Wigner value.
    pub sz: f64,
    /// Raw `y` reading; vanishes up to rounding because the observable is
    /// Hermitian.
    pub sy: f64,
    /// The Wigner value itself (`sz` divided by the rescaling factor).
    pub value: f64,
}

/// Runs the interference circuit for a unitary `M` against `rho` and
/// returns the ancilla readings.
///
/// The simulation is exact: the ancilla-plus-system state
/// `|0><0| (x) rho` is conjugated by `(H (x) 1) C_M (H (x) 1)` with
/// `C_M = |0><0| (x) 1 + |1><1| (x) M`, and the ancilla is traced out.
pub fn ancilla_circuit(m: &LinearOperator, rho: &DensityOperator) -> Result<AncillaReadings> {
    let d = rho.dim();
    if m.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "controlled operator of dimension {} against a state of dimension {d}",
            m.dim()
        )));
    }
    let unitary_defect = (&(m * &m.adjoint()) - &LinearOperator::identity(d)).max_abs();
    if unitary_defect > 1e-8 {
        return Err(Error::NotUnitary(unitary_defect));
    }

    let h = hadamard();
    let h_full = tensor(&h, &LinearOperator::identity(d));
    let controlled = controlled_op(m);
    let circuit = &(&h_full * &controlled) * &h_full;

    let ancilla0 = LinearOperator::from_fn(2, |i, j| {
        if i == 0 && j == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let joint = tensor(&ancilla0, rho.operator());
    let evolved = &(&circuit * &joint) * &circuit.adjoint();
    let ancilla = partial_trace(&evolved, (2, d), Subsystem::First)?;

    let sz = (ancilla.entry(0, 0) - ancilla.entry(1, 1)).re;
    // The physical <sigma_y> is -Im Tr(M rho); report the sign-flipped value
    // so (sz, sy) = Tr(M rho) as a complex pair.
    let sy = 2.0 * ancilla.entry(0, 1).im;
    Ok(AncillaReadings { sz, sy })
}

fn hadamard() -> LinearOperator {
    let h = 1.0 / 2.0_f64.sqrt();
    LinearOperator::from_fn(2, |i, j| {
        if i == 1 && j == 1 {
            C64::new(-h, 0.0)
        } else {
            C64::new(h, 0.0)
        }
    })
}

/// `|0><0| (x) 1 + |1><1| (x) M` on the ancilla-first composite space.
fn controlled_op(m: &LinearOperator) -> LinearOperator {
    let d = m.dim();
    LinearOperator::from_fn(2 * d, |row, col| {
        let (a, i) = (row / d, row % d);
        let (b, j) = (col / d, col % d);
        if a != b {
            C64::new(0.0, 0.0)
        } else if a == 0 {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        } else {
            m.entry(i, j)
        }
    })
}

/// Measures one Wigner value of a single system by interference, using
/// `M = 2N A(pt)`; the Wigner value is `sz / 2N`.
pub fn measure_wigner_point(
    g: &GridSpec,
    rho: &DensityOperator,
    pt: PhasePoint,
) -> Result<WignerMeasurement> {
    if rho.dim() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} on a grid for N = {}",
            rho.dim(),
            g.n()
        )));
    }
    let scale = 2.0 * g.n() as f64;
    let m = g.phase_point_op(pt).scaled(C64::new(scale, 0.0));
    let readings = ancilla_circuit(&m, rho)?;
    debug_assert!(readings.sy.abs() < 1e-9, "Hermitian observable: sy = {:.3e}", readings.sy);
    Ok(WignerMeasurement { sz: readings.sz, sy: readings.sy, value: readings.sz / scale })
}

/// Measures one Wigner value of a two-system state by interference, using
/// `M = (2N A(pt1)) (x) (2N A(pt2))`; the Wigner value is `sz / (2N)^2`.
pub fn measure_composite_wigner_point(
    g: &GridSpec,
    rho: &DensityOperator,
    pt1: PhasePoint,
    pt2: PhasePoint,
) -> Result<WignerMeasurement> {
    let n = g.n();
    if rho.dim() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} on a composite grid for N x N = {}",
            rho.dim(),
            n * n
        )));
    }
    let scale = 2.0 * n as f64;
    let m1 = g.phase_point_op(pt1).scaled(C64::new(scale, 0.0));
    let m2 = g.phase_point_op(pt2).scaled(C64::new(scale, 0.0));
    let m = tensor(&m1, &m2);
    let readings = ancilla_circuit(&m, rho)?;
    debug_assert!(readings.sy.abs() < 1e-9, "Hermitian observable: sy = {:.3e}", readings.sy);
    Ok(WignerMeasurement {
        sz: readings.sz,
        sy: readings.sy,
        value: readings.sz / (scale * scale),
    })
}
