//! Sums point operators along lines of the doubled grid and shows that the
//! sums are projectors, diagonal in the line's translation, and that the
//! two line-manifolds attached to an entangled basis state multiply to its
//! projector.
//!
//! Run with `cargo run --example lines_and_projectors`.

use dwigner::bell::{bell_manifolds, bell_state, BellIndex};
use dwigner::lines::{
    line_points, line_projector, line_projector_group_average, manifold_projector,
    translation_eigenvalue, Line,
};
use dwigner::phase_space::GridSpec;

fn main() -> dwigner::Result<()> {
    let g = GridSpec::new(3)?;
    let side = g.side() as i64;

    // A line is the solution set of a p - b q = c on the doubled grid. Its
    // point-operator sum is always a projector; the rank depends on the
    // direction's common divisor with 2N.
    println!("line (a, b, c) -> points, rank, translation eigenvalue check");
    for line in [Line::new(1, 1, 0), Line::new(1, 1, 1), Line::new(2, 4, 2), Line::new(1, 0, 3)] {
        let points = line_points(&g, &line)?;
        let projector = line_projector(&g, &line)?;
        let idempotency = (&projector * &projector).max_abs_diff(&projector);
        let rank = projector.trace().re;
        // The projector is invariant, up to the offset phase, under the
        // translation generated by the line's own direction.
        let t = g.translation(line.a, line.b);
        let eigen_defect = (&t * &projector)
            .max_abs_diff(&projector.scaled(translation_eigenvalue(&g, line.c)));
        println!(
            "  ({}, {}, {}) -> {:>2} points, rank {:.3}, idempotency {:.1e}, eigenrelation {:.1e}",
            line.a,
            line.b,
            line.c,
            points.len(),
            rank,
            idempotency,
            eigen_defect,
        );
        assert!(idempotency < dwigner::TOLERANCE && eigen_defect < dwigner::TOLERANCE);
        // The group-average route (a phase-weighted sum of translation
        // powers) reproduces the pointwise sum.
        let averaged = line_projector_group_average(&g, &line)?;
        assert!(projector.max_abs_diff(&averaged) < dwigner::TOLERANCE);
    }

    // The 2N parallel lines of one direction resolve the identity.
    let mut completeness = dwigner::linalg::LinearOperator::zeros(g.n());
    for c in 0..side {
        completeness = &completeness + &line_projector(&g, &Line::new(1, 2, c))?;
    }
    let identity = dwigner::linalg::LinearOperator::identity(g.n());
    println!("\ncompleteness over offsets of (1, 2): {:.3e}", completeness.max_abs_diff(&identity));

    // Horizontal lines with odd offsets sum to zero; even offsets give
    // momentum projectors.
    for c in [0, 1] {
        let proj = line_projector(&g, &Line::new(1, 0, c))?;
        println!("horizontal line with offset {c}: largest entry {:.3e}", proj.max_abs());
    }

    // Each entangled basis state is cut out by two line-manifolds on the
    // product grid; their projectors commute and multiply to the state.
    println!("\nmanifold products against basis projectors:");
    for (q, p) in [(0, 0), (1, 2)] {
        let beta = BellIndex::new(&g, q, p);
        let (m1, m2) = bell_manifolds(beta);
        let p1 = manifold_projector(&g, &m1)?;
        let p2 = manifold_projector(&g, &m2)?;
        let psi = bell_state(&g, beta);
        let defect = (&p1 * &p2).max_abs_diff(&psi.outer(&psi));
        println!("  beta = {beta}: |P1 P2 - |state><state|| = {defect:.3e}");
        assert!(defect < dwigner::TOLERANCE);
    }
    Ok(())
}
