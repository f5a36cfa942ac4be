//! Rebuilds a density matrix from its phase-space grid, showing that the
//! `N x N` fundamental subgrid already carries the complete state.
//!
//! Run with `cargo run --example reconstruction`.

use dwigner::linalg::DensityOperator;
use dwigner::phase_space::GridSpec;
use dwigner::wigner::{extend_subgrid, reconstruct, reconstruct_full, wigner_grid};
use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rho = DensityOperator::random(g.n(), &mut rng);
    let grid = wigner_grid(&g, &rho)?;

    // Route 1: sum over the N^2 fundamental-subgrid points with weight 4N.
    let from_subgrid = reconstruct(&grid);
    // Route 2: sum over all (2N)^2 points with weight N.
    let from_full = reconstruct_full(&grid);
    println!(
        "reconstruction error (subgrid route):  {:.3e}",
        from_subgrid.max_abs_diff(rho.operator())
    );
    println!(
        "reconstruction error (full-grid route): {:.3e}",
        from_full.max_abs_diff(rho.operator())
    );
    assert!(from_subgrid.max_abs_diff(rho.operator()) < dwigner::TOLERANCE);
    assert!(from_full.max_abs_diff(rho.operator()) < dwigner::TOLERANCE);

    // The redundancy is explicit: every full-grid value is a signed copy of
    // a subgrid value, so the subgrid alone regenerates the whole table.
    let sub = Array2::from_shape_fn((g.n(), g.n()), |(q, p)| {
        grid.value(g.point(q as i64, p as i64))
    });
    let extended = extend_subgrid(&g, &sub);
    let mut max_diff = 0.0f64;
    for pt in g.full_grid_points() {
        max_diff = max_diff.max((extended.value(pt) - grid.value(pt)).abs());
    }
    println!("subgrid extension error:               {max_diff:.3e}");
    assert!(max_diff < dwigner::TOLERANCE);

    // Round trip once more through the reconstructed state.
    let again = wigner_grid(&g, &DensityOperator::new(from_subgrid)?)?;
    let mut round_trip = 0.0f64;
    for pt in g.full_grid_points() {
        round_trip = round_trip.max((again.value(pt) - grid.value(pt)).abs());
    }
    println!("grid -> state -> grid round trip:      {round_trip:.3e}");
    assert!(round_trip < dwigner::TOLERANCE);
    println!("state of dimension {} fully determined by {} subgrid values", g.n(), g.n() * g.n());
    Ok(())
}
