//! Reads grid values off an ancilla-qubit interference circuit instead of
//! computing traces: one controlled application of the rescaled point
//! operator between two Hadamards puts the value into the ancilla's
//! z expectation.
//!
//! Run with `cargo run --example tomography_circuit`.

use dwigner::bell::{bell_state, BellIndex};
use dwigner::linalg::{random_unitary, trace_product, DensityOperator};
use dwigner::phase_space::GridSpec;
use dwigner::tomography::{ancilla_circuit, measure_composite_wigner_point, measure_wigner_point};
use dwigner::wigner::{composite_wigner_point, wigner_grid};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);

    // Sweep a random single-system state: at every grid point the circuit
    // readout equals the directly computed value.
    let rho = DensityOperator::random(g.n(), &mut rng);
    let grid = wigner_grid(&g, &rho)?;
    let mut worst = 0.0f64;
    for pt in g.full_grid_points() {
        let measured = measure_wigner_point(&g, &rho, pt)?;
        worst = worst.max((measured.value - grid.value(pt)).abs());
    }
    println!("single-system sweep, circuit vs direct: {worst:.3e}");
    assert!(worst < dwigner::TOLERANCE);

    // The same works for a pair, with the controlled operation acting on
    // both factors. For the entangled reference state at the origin the
    // value is 1/(2N)^2.
    let pair = DensityOperator::from_pure(&bell_state(&g, BellIndex::new(&g, 0, 0)))?;
    let origin = g.point(0, 0);
    let measured = measure_composite_wigner_point(&g, &pair, origin, origin)?;
    let direct = composite_wigner_point(&g, &pair, origin, origin)?;
    println!("entangled pair at the origin: circuit {:.6}, direct {:.6}", measured.value, direct);
    assert!((measured.value - 1.0 / 16.0).abs() < dwigner::TOLERANCE);

    // The raw ancilla readings behind those values implement the general
    // identity sz + i sy = Tr(M rho) for any unitary M.
    let mut worst = 0.0f64;
    for dim in [2, 3, 4, 6] {
        let m = random_unitary(dim, &mut rng);
        let rho = DensityOperator::random(dim, &mut rng);
        let readings = ancilla_circuit(&m, &rho)?;
        let expected = trace_product(&m, rho.operator());
        worst = worst.max((C64::new(readings.sz, readings.sy) - expected).norm());
    }
    println!("generic readout identity over unitaries: {worst:.3e}");
    assert!(worst < dwigner::TOLERANCE);

    // A Hermitian observable (here the rescaled point operator) leaves no
    // imaginary part: the y reading vanishes.
    let measured = measure_wigner_point(&g, &rho, g.point(1, 3))?;
    println!("y reading for a Hermitian observable:    {:.3e}", measured.sy.abs());
    Ok(())
}
