//! Tours the generalized entangled basis of a pair of `N`-dimensional
//! systems: orthonormality, displacement structure, and the closed-form
//! phase-space grid with its two-line support.
//!
//! Run with `cargo run --example bell_states`.

use dwigner::bell::{
    all_bell_indices, bell_state, bell_wigner, k_coefficients, product_op_from_k, BellIndex,
};
use dwigner::linalg::tensor;
use dwigner::phase_space::GridSpec;

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(3)?;
    let n = g.n();

    // The N^2 basis states are orthonormal.
    let basis: Vec<_> = all_bell_indices(&g).map(|b| bell_state(&g, b)).collect();
    let mut worst = 0.0f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b)?.norm() - expected).abs());
        }
    }
    println!("orthonormality defect over all {} pairs: {worst:.3e}", basis.len() * basis.len());

    // Every basis state is a phase-space displacement of the reference one:
    // boost the first system by p and shift the second by -q.
    let mut worst = 0.0f64;
    for beta in all_bell_indices(&g) {
        let displaced = tensor(&g.boost(beta.p() as i64), &g.shift(-(beta.q() as i64)))
            .apply(&basis[0])?;
        let target = &basis[beta.q() * n + beta.p()];
        let diff = displaced
            .amplitudes()
            .iter()
            .zip(target.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst = worst.max(diff);
    }
    println!("displacement-structure defect:           {worst:.3e}");

    // The reference state's grid is supported on the pair of conditions
    // q1 = q2 and p1 = -p2 (mod N), with values of constant magnitude.
    let beta0 = BellIndex::new(&g, 0, 0);
    println!("\nreference-state grid support (q1, p1, q2, p2 with nonzero value):");
    let mut count = 0;
    for pt1 in g.full_grid_points() {
        for pt2 in g.full_grid_points() {
            let w = bell_wigner(&g, beta0, pt1, pt2);
            if w.abs() > dwigner::TOLERANCE {
                count += 1;
                if count <= 6 {
                    println!("  {pt1} {pt2}  ->  {w:+.6}");
                }
                let dq = (pt1.q() + 2 * n - pt2.q()) % n;
                let dp = (pt1.p() + pt2.p()) % n;
                assert_eq!((dq, dp), (0, 0), "support obeys the two congruences");
                assert!((w.abs() - 1.0 / ((2 * n) as f64).powi(2)).abs() < dwigner::TOLERANCE);
            }
        }
    }
    println!("  ... {count} supported points in total, all of magnitude 1/(2N)^2\n");

    // Shifting the index displaces the support of the first system's
    // argument by (2q, 2p) without touching the second.
    let beta = BellIndex::new(&g, 1, 2);
    let mut worst = 0.0f64;
    for pt1 in g.full_grid_points() {
        for pt2 in g.full_grid_points() {
            let moved = g.sub(pt1, g.point(2 * beta.q() as i64, 2 * beta.p() as i64));
            worst = worst.max((bell_wigner(&g, beta, pt1, pt2) - bell_wigner(&g, beta0, moved, pt2)).abs());
        }
    }
    println!("index-shift covariance defect:           {worst:.3e}");

    // The expansion coefficients of a product of point operators over basis
    // outer products rebuild that product exactly.
    let k = k_coefficients(&g, g.point(1, 0), g.point(0, 2));
    let rebuilt = product_op_from_k(&g, &k);
    let direct = tensor(&g.phase_point_op(g.point(1, 0)), &g.phase_point_op(g.point(0, 2)));
    println!("expansion-coefficient rebuild defect:    {:.3e}", rebuilt.max_abs_diff(&direct));
    assert!(rebuilt.max_abs_diff(&direct) < dwigner::TOLERANCE);
    Ok(())
}
