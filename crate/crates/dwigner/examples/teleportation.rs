//! Runs the phase-space teleportation protocol end to end and shows the
//! equivalent picture as a signed permutation of grid values.
//!
//! Run with `cargo run --example teleportation`.

use dwigner::bell::all_bell_indices;
use dwigner::linalg::{DensityOperator, StateVector};
use dwigner::phase_space::GridSpec;
use dwigner::teleport::{
    conditional_state, outcome_probabilities, prepare_initial, teleport, z_kernel,
    z_kernel_closed_form,
};
use dwigner::wigner::wigner_grid;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rho_in = DensityOperator::from_pure(&StateVector::random(g.n(), &mut rng))?;

    // Every measurement outcome is equally likely, whatever the input.
    let rho123 = prepare_initial(&g, &rho_in)?;
    let probabilities = outcome_probabilities(&g, &rho123)?;
    println!("outcome probabilities (all should be 1/N^2 = {:.6}):", 1.0 / 9.0);
    println!("  min {:.6}, max {:.6}", min(&probabilities), max(&probabilities));

    // A handful of full protocol runs: sample an outcome, apply the
    // matching displacement, compare with the input.
    for seed in 0..5 {
        let run = teleport(&g, &rho_in, seed)?;
        println!(
            "run with seed {seed}: outcome = {}  probability = {:.6}  fidelity = {:.15}",
            run.outcome, run.outcome_probability, run.fidelity
        );
        assert!(run.fidelity > 1.0 - dwigner::TOLERANCE);
    }

    // In phase space the whole protocol is a signed permutation of grid
    // values: for outcome beta, the conditional grid value at alpha is the
    // input value at alpha + 2 beta, taken from the literal double sum over
    // the measured and resource grids or from its closed form.
    println!("\npropagation kernel (rows: target points, columns: source points):");
    let input_grid = wigner_grid(&g, &rho_in)?;
    let mut worst_kernel = 0.0f64;
    let mut worst_grid = 0.0f64;
    for beta in all_bell_indices(&g) {
        let literal = z_kernel(&g, beta);
        let closed = z_kernel_closed_form(&g, beta);
        worst_kernel = literal
            .values()
            .iter()
            .zip(closed.values())
            .map(|(a, b)| (a - b).abs())
            .fold(worst_kernel, f64::max);
        // Push the input grid through the kernel and compare against the
        // directly computed conditional state.
        let propagated = literal.apply(&input_grid)?;
        let (_, conditional) = conditional_state(&g, &rho123, beta)?;
        let expected = wigner_grid(&g, &conditional)?;
        for pt in g.full_grid_points() {
            worst_grid = worst_grid.max((propagated.value(pt) - expected.value(pt)).abs());
        }
    }
    println!("  literal vs closed form over all outcomes: {worst_kernel:.3e}");
    println!("  propagated vs conditional grids:          {worst_grid:.3e}");
    assert!(worst_kernel < dwigner::TOLERANCE && worst_grid < dwigner::TOLERANCE);

    // The kernel rows each hold exactly one nonzero entry, +1 or -1.
    let closed = z_kernel_closed_form(&g, dwigner::bell::BellIndex::new(&g, 1, 0));
    let signs: Vec<i32> = closed
        .values()
        .rows()
        .into_iter()
        .map(|row| row.iter().map(|v| v.round() as i32).sum())
        .collect();
    println!("  row sums of one kernel (each a single +/-1): {signs:?}");
    Ok(())
}

fn min(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}
