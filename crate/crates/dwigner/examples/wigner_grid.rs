//! Computes the discrete Wigner function of a few single-system states on
//! the doubled `2N x 2N` grid and prints the resulting tables.
//!
//! Run with `cargo run --example wigner_grid`.

use dwigner::linalg::{trace_product, DensityOperator, StateVector};
use dwigner::phase_space::GridSpec;
use dwigner::wigner::wigner_grid;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn print_grid(g: &GridSpec, label: &str, grid: &dwigner::wigner::WignerGrid) {
    println!("{label} (rows: q = 0..{}, columns: p):", g.side() - 1);
    for q in 0..g.side() as i64 {
        let row: Vec<String> = (0..g.side() as i64)
            .map(|p| format!("{:>7.3}", grid.value(g.point(q, p))))
            .collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(3)?;

    // A position eigenstate: the grid concentrates on two vertical lines,
    // q = 2 q0 with constant weight and q = 2 q0 + N with alternating signs.
    let rho = DensityOperator::from_pure(&g.position_state(1))?;
    let grid = wigner_grid(&g, &rho)?;
    print_grid(&g, "position eigenstate |1>", &grid);
    println!("total mass over the full grid: {:.6}\n", grid.total());

    // A random pure state still has unit mass, and its even-line sums
    // reproduce the position and momentum distributions exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let psi = StateVector::random(g.n(), &mut rng);
    let rho = DensityOperator::from_pure(&psi)?;
    let grid = wigner_grid(&g, &rho)?;
    print_grid(&g, "random pure state", &grid);
    println!("position marginals: {:?}", rounded(&grid.position_probabilities()));
    println!("momentum marginals: {:?}", rounded(&grid.momentum_probabilities()));
    let direct: Vec<f64> =
        (0..g.n()).map(|k| psi.amplitude(k).norm_sqr()).collect();
    println!("|<k|psi>|^2 direct: {:?}\n", rounded(&direct));

    // State overlaps can be computed entirely in phase space.
    let sigma = DensityOperator::random(g.n(), &mut rng);
    let sigma_grid = wigner_grid(&g, &sigma)?;
    let from_grids = grid.overlap(&sigma_grid)?;
    let from_traces = trace_product(rho.operator(), sigma.operator()).re;
    println!("overlap via grids:  {from_grids:.12}");
    println!("overlap via traces: {from_traces:.12}");
    assert!((from_grids - from_traces).abs() < dwigner::TOLERANCE);
    Ok(())
}

fn rounded(values: &[f64]) -> Vec<f64> {
    values.iter().map(|v| (v * 1e6).round() / 1e6).collect()
}
