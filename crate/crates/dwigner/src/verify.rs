//! Self-check suites behind the `verify` command.
//!
//! Each suite exercises one block of the library against exact identities —
//! operator algebra, quasi-probability properties, reconstruction, the
//! entangled basis, line projectors, the propagation kernel, the
//! interference circuit and the end-to-end protocol — and reports the worst
//! absolute deviation it saw. A suite passes when that deviation stays below
//! the report threshold (default `1e-9`, overridable through the
//! `DWIGNER_TOLERANCE` environment variable). All randomness is seeded per
//! suite and dimension, so repeated runs produce identical reports.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bell::{
    all_bell_indices, bell_manifolds, bell_operator, bell_operator_from_k, bell_state,
    bell_transpose_projection, bell_wigner, k_coefficients, product_op_from_k, u_plus, v_minus,
    BellIndex,
};
use crate::error::{Error, Result};
use crate::linalg::{
    random_unitary, tensor, trace_distance, trace_product, uhlmann_fidelity, DensityOperator,
    LinearOperator, StateVector,
};
use crate::lines::{
    line_points, line_projector, line_projector_group_average, manifold_projector,
    manifold_projector_group_average, translation_eigenvalue, Line,
};
use crate::phase_space::GridSpec;
use crate::teleport::{
    conditional_state, outcome_probabilities, prepare_initial, teleport, z_kernel,
    z_kernel_closed_form,
};
use crate::tomography::{
    ancilla_circuit, measure_composite_wigner_point, measure_wigner_point,
};
use crate::wigner::{composite_wigner_point, reconstruct, reconstruct_full, wigner_grid};

/// Threshold used for pass/fail decisions when `DWIGNER_TOLERANCE` is unset.
pub const DEFAULT_REPORT_TOLERANCE: f64 = 1e-9;

/// Reads the report threshold, honoring the `DWIGNER_TOLERANCE` override.
pub fn report_tolerance() -> Result<f64> {
    let Some(raw) = std::env::var_os("DWIGNER_TOLERANCE") else {
        return Ok(DEFAULT_REPORT_TOLERANCE);
    };
    raw.to_str()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .ok_or_else(|| {
            Error::InvalidState(format!(
                "DWIGNER_TOLERANCE={raw:?} is not a positive finite number"
            ))
        })
}

/// Outcome of one suite at one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: &'static str,
    pub n: usize,
    pub max_err: f64,
    pub passed: bool,
}

/// Running maximum of absolute deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Worst(f64);

impl Worst {
    fn note(&mut self, err: f64) {
        if err > self.0 || err.is_nan() {
            self.0 = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn note_bool(&mut self, ok: bool) {
        if !ok {
            self.note(f64::INFINITY);
        }
    }
}

fn suite_rng(name: &str, n: usize) -> ChaCha8Rng {
    let mut seed = 0xD1_57_C0_DEu64;
    for b in name.bytes() {
        seed = seed.wrapping_mul(0x100000001b3).wrapping_add(b as u64);
    }
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64))
}

/// All suites, in report order.
pub const SUITE_NAMES: [&str; 9] = [
    "operator-algebra",
    "wigner-properties",
    "reconstruction",
    "position-eigenstate",
    "bell-basis",
    "projectors",
    "z-kernel",
    "tomography",
    "teleport",
];

/// Runs every suite at every requested dimension.
///
/// `tolerance` is the pass/fail threshold applied to each suite's worst
/// deviation; the deviations themselves are reported unrounded.
pub fn run_all(ns: &[usize], tolerance: f64) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for &n in ns {
        let g = GridSpec::new(n)?;
        for suite in SUITE_NAMES {
            let max_err = run_suite(&g, suite)?;
            reports.push(CheckReport { suite, n, max_err, passed: max_err <= tolerance });
        }
    }
    Ok(reports)
}

fn run_suite(g: &GridSpec, suite: &str) -> Result<f64> {
    match suite {
        "operator-algebra" => operator_algebra(g),
        "wigner-properties" => wigner_properties(g),
        "reconstruction" => reconstruction(g),
        "position-eigenstate" => position_eigenstate(g),
        "bell-basis" => bell_basis_suite(g),
        "projectors" => projectors(g),
        "z-kernel" => z_kernel_suite(g),
        "tomography" => tomography_suite(g),
        "teleport" => teleport_suite(g),
        other => Err(Error::InvalidState(format!("unknown suite `{other}`"))),
    }
}

/// Commutation, Fourier, translation and point-operator identities.
fn operator_algebra(g: &GridSpec) -> Result<f64> {
    let n = g.n() as i64;
    let side = 2 * n;
    let mut worst = Worst::default();

    // Boost-shift commutation: V^p U^q = U^q V^p w^{pq}.
    for q in 0..n {
        for p in 0..n {
            let lhs = &g.boost(p) * &g.shift(q);
            let rhs = (&g.shift(q) * &g.boost(p)).scaled(g.omega(p * q));
            worst.note(lhs.max_abs_diff(&rhs));
        }
    }

    // Fourier facts: F^2 is the reflection and F^4 the identity.
    let f = g.fourier();
    let f2 = &f * &f;
    worst.note(f2.max_abs_diff(&g.reflection()));
    worst.note((&f2 * &f2).max_abs_diff(&LinearOperator::identity(g.n())));
    worst.note_bool(f.is_unitary(1e-12));

    // Translation composition and periodicity on the doubled range.
    for &(a, b, c, d) in &[(0, 1, 1, 0), (1, 1, 1, 1), (2, 1, 0, 3), (side - 1, 2, 3, side - 1)] {
        let lhs = &g.translation(a, b) * &g.translation(c, d);
        let rhs = g.translation(a + c, b + d).scaled(g.phase(b * c - a * d));
        worst.note(lhs.max_abs_diff(&rhs));
    }
    for &(a, b) in &[(1, 0), (0, 1), (1, 1), (side - 1, 3)] {
        worst.note(g.translation(a + side, b).max_abs_diff(&g.translation(a, b)));
        worst.note(g.translation(a, b + side).max_abs_diff(&g.translation(a, b)));
    }

    // Covariance: conjugating a point operator translates its argument by
    // twice the translation vector.
    for &(a, b) in &[(1, 0), (0, 1), (1, 2), (3, 1)] {
        let t = g.translation(a, b);
        for &(q, p) in &[(0, 0), (1, 0), (2, 3), (side - 1, 1)] {
            let lhs = &(&t * &g.phase_point_op(g.point(q, p))) * &t.adjoint();
            let rhs = g.phase_point_op(g.point(q + 2 * a, p + 2 * b));
            worst.note(lhs.max_abs_diff(&rhs));
        }
    }

    // Point operators: Hermitian, unitary after rescaling by 2N, and the
    // origin operator is the reflection over 2N.
    let scale = C64::new(2.0 * g.n() as f64, 0.0);
    for pt in g.full_grid_points() {
        let a = g.phase_point_op(pt);
        worst.note(a.max_abs_diff(&a.adjoint()));
        let u = a.scaled(scale);
        worst.note((&u * &u.adjoint()).max_abs_diff(&LinearOperator::identity(g.n())));
    }
    worst.note(
        g.phase_point_op(g.point(0, 0))
            .max_abs_diff(&g.reflection().scaled(C64::new(1.0 / (2.0 * g.n() as f64), 0.0))),
    );

    // Full-grid values are signed copies of fundamental-subgrid values.
    for pt in g.full_grid_points() {
        let (rep, sign) = g.subgrid_rep(pt);
        let expected = g.phase_point_op(rep).scaled(C64::new(sign, 0.0));
        worst.note(g.phase_point_op(pt).max_abs_diff(&expected));
    }

    // Orthogonality on the fundamental subgrid: Tr[A(x) A(y)] = d_xy / 4N.
    let sub_ops: Vec<_> = g.subgrid_points().map(|pt| g.phase_point_op(pt)).collect();
    for (i, a) in sub_ops.iter().enumerate() {
        for (j, b) in sub_ops.iter().enumerate() {
            let expected = if i == j { 1.0 / (4.0 * g.n() as f64) } else { 0.0 };
            worst.note((trace_product(a, b) - C64::new(expected, 0.0)).norm());
        }
    }

    // Row and column sums: even rows give momentum projectors, even columns
    // position projectors, odd ones vanish; everything sums to the identity.
    let mut total = LinearOperator::zeros(g.n());
    for q in 0..side {
        let mut col = LinearOperator::zeros(g.n());
        for p in 0..side {
            col = &col + &g.phase_point_op(g.point(q, p));
        }
        let expected = if q % 2 == 0 {
            let psi = g.position_state(q / 2);
            psi.outer(&psi)
        } else {
            LinearOperator::zeros(g.n())
        };
        worst.note(col.max_abs_diff(&expected));
        total = &total + &col;
    }
    worst.note(total.max_abs_diff(&LinearOperator::identity(g.n())));
    for p in 0..side {
        let mut row = LinearOperator::zeros(g.n());
        for q in 0..side {
            row = &row + &g.phase_point_op(g.point(q, p));
        }
        let expected = if p % 2 == 0 {
            let psi = g.momentum_state(p / 2);
            psi.outer(&psi)
        } else {
            LinearOperator::zeros(g.n())
        };
        worst.note(row.max_abs_diff(&expected));
    }

    Ok(worst.0)
}

/// Realness, normalization, overlap and marginal rules for grids.
fn wigner_properties(g: &GridSpec) -> Result<f64> {
    let mut rng = suite_rng("wigner-properties", g.n());
    let mut worst = Worst::default();
    let mut states = vec![
        DensityOperator::from_pure(&g.momentum_state(1))?,
        DensityOperator::maximally_mixed(g.n()),
    ];
    for _ in 0..3 {
        states.push(DensityOperator::from_pure(&StateVector::random(g.n(), &mut rng))?);
    }
    states.push(DensityOperator::random(g.n(), &mut rng));
    states.push(DensityOperator::random(g.n(), &mut rng));

    let grids: Vec<_> =
        states.iter().map(|rho| wigner_grid(g, rho)).collect::<Result<Vec<_>>>()?;

    for (rho, grid) in states.iter().zip(&grids) {
        // Realness: the defining trace has no imaginary part.
        for pt in g.full_grid_points() {
            let tr = trace_product(&g.phase_point_op(pt), rho.operator());
            worst.note(tr.im.abs());
            worst.note((tr.re - grid.value(pt)).abs());
        }
        // The full grid carries total mass 1.
        worst.note((grid.total() - 1.0).abs());
        // Marginals reproduce the position and momentum distributions.
        let pos = grid.position_probabilities();
        let mom = grid.momentum_probabilities();
        for k in 0..g.n() {
            let psi = g.position_state(k as i64);
            worst.note((pos[k] - rho.expectation(&psi.outer(&psi)).re).abs());
            let phi = g.momentum_state(k as i64);
            worst.note((mom[k] - rho.expectation(&phi.outer(&phi)).re).abs());
        }
    }

    // Overlaps of grids reproduce trace inner products.
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let expected = trace_product(a.operator(), b.operator()).re;
            worst.note((grids[i].overlap(&grids[j])? - expected).abs());
        }
    }

    Ok(worst.0)
}

/// Round trips between states and grids, both subgrid and full-grid routes.
fn reconstruction(g: &GridSpec) -> Result<f64> {
    let mut rng = suite_rng("reconstruction", g.n());
    let mut worst = Worst::default();
    for rho in [
        DensityOperator::random(g.n(), &mut rng),
        DensityOperator::from_pure(&StateVector::random(g.n(), &mut rng))?,
    ] {
        let grid = wigner_grid(g, &rho)?;
        worst.note(reconstruct(&grid).max_abs_diff(rho.operator()));
        worst.note(reconstruct_full(&grid).max_abs_diff(rho.operator()));
        // Extending the fundamental subgrid regenerates the full table.
        let sub = ndarray::Array2::from_shape_fn((g.n(), g.n()), |(q, p)| {
            grid.value(g.point(q as i64, p as i64))
        });
        let extended = crate::wigner::extend_subgrid(g, &sub);
        for pt in g.full_grid_points() {
            worst.note((extended.value(pt) - grid.value(pt)).abs());
        }
    }
    Ok(worst.0)
}

/// The two-column pattern of position eigenstates.
fn position_eigenstate(g: &GridSpec) -> Result<f64> {
    let n = g.n() as i64;
    let side = 2 * n;
    let mut worst = Worst::default();
    for q0 in 0..n {
        let rho = DensityOperator::from_pure(&g.position_state(q0))?;
        let grid = wigner_grid(g, &rho)?;
        let main = (2 * q0).rem_euclid(side);
        let shadow = (2 * q0 + n).rem_euclid(side);
        for pt in g.full_grid_points() {
            let q = pt.q() as i64;
            let p = pt.p() as i64;
            let expected = if q == main {
                1.0 / (2.0 * n as f64)
            } else if q == shadow {
                (if p % 2 == 0 { 1.0 } else { -1.0 }) / (2.0 * n as f64)
            } else {
                0.0
            };
            worst.note((grid.value(pt) - expected).abs());
            // Cross-check against the defining trace.
            let direct = trace_product(&g.phase_point_op(pt), rho.operator()).re;
            worst.note((grid.value(pt) - direct).abs());
        }
    }
    Ok(worst.0)
}

/// Orthonormality, eigenrelations and phase-space structure of the basis.
fn bell_basis_suite(g: &GridSpec) -> Result<f64> {
    let n = g.n();
    let mut worst = Worst::default();
    let basis: Vec<StateVector> = all_bell_indices(g).map(|b| bell_state(g, b)).collect();

    // Orthonormality.
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let expected = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            worst.note((a.inner(b)? - expected).norm());
        }
    }

    // Joint eigenrelations of the two commuting product operators.
    let up = u_plus(g);
    let vm = v_minus(g);
    worst.note((&up * &vm).max_abs_diff(&(&vm * &up)));
    for beta in all_bell_indices(g) {
        let psi = &basis[beta.q() * n + beta.p()];
        let shifted = up.apply(psi)?;
        let expected: Vec<C64> = psi
            .amplitudes()
            .iter()
            .map(|z| z * g.omega(-(beta.p() as i64)))
            .collect();
        let diff = shifted
            .amplitudes()
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst.note(diff);
        let boosted = vm.apply(psi)?;
        let expected: Vec<C64> =
            psi.amplitudes().iter().map(|z| z * g.omega(beta.q() as i64)).collect();
        let diff = boosted
            .amplitudes()
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst.note(diff);
    }

    // Displacing the reference state reaches every basis state exactly.
    let theta0 = &basis[0];
    for beta in all_bell_indices(g) {
        let displacement =
            tensor(&g.boost(beta.p() as i64), &g.shift(-(beta.q() as i64)));
        let displaced = displacement.apply(theta0)?;
        let psi = &basis[beta.q() * n + beta.p()];
        let diff = displaced
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst.note(diff);
    }

    // Closed-form grid values against the generic two-system machinery,
    // exhaustively for small N and on a stride for larger N.
    let betas: Vec<BellIndex> = all_bell_indices(g).collect();
    let probe_betas: Vec<BellIndex> =
        if n <= 3 { betas.clone() } else { vec![betas[0], betas[1], betas[n], betas[n + 1]] };
    for &beta in &probe_betas {
        let rho = DensityOperator::from_pure(&bell_state(g, beta))?;
        let side = 2 * n as i64;
        let stride = if n <= 3 { 1 } else { 3 };
        for q1 in (0..side).step_by(stride) {
            for p1 in (0..side).step_by(stride) {
                for q2 in (0..side).step_by(stride) {
                    for p2 in (0..side).step_by(stride) {
                        let pt1 = g.point(q1, p1);
                        let pt2 = g.point(q2, p2);
                        let closed = bell_wigner(g, beta, pt1, pt2);
                        let generic = composite_wigner_point(g, &rho, pt1, pt2)?;
                        worst.note((closed - generic).abs());
                        // Shift rule: the index only displaces the first
                        // argument relative to the reference state.
                        let origin = BellIndex::new(g, 0, 0);
                        let moved = g.sub(
                            pt1,
                            g.point(2 * beta.q() as i64, 2 * beta.p() as i64),
                        );
                        worst.note((closed - bell_wigner(g, origin, moved, pt2)).abs());
                    }
                }
            }
        }
    }

    // Expansion coefficients: diagonals are grid values, and the expansion
    // rebuilds the product of point operators.
    let probe_pts = [
        (g.point(0, 0), g.point(0, 0)),
        (g.point(1, 0), g.point(0, 1)),
        (g.point(2, 1), g.point(1, 3)),
    ];
    for (pt1, pt2) in probe_pts {
        let k = k_coefficients(g, pt1, pt2);
        for beta in all_bell_indices(g) {
            let diag = k.value(beta, beta);
            worst.note(diag.im.abs());
            worst.note((diag.re - bell_wigner(g, beta, pt1, pt2)).abs());
        }
        let rebuilt = product_op_from_k(g, &k);
        let direct = tensor(&g.phase_point_op(pt1), &g.phase_point_op(pt2));
        worst.note(rebuilt.max_abs_diff(&direct));
    }

    // The reverse expansion recovers basis outer products from grid data.
    let pairs = [(betas[0], betas[0]), (betas[0], betas[betas.len() - 1])];
    for (b1, b2) in pairs {
        let direct = bell_operator(g, b1, b2);
        let from_k = bell_operator_from_k(g, b1, b2)?;
        worst.note(from_k.max_abs_diff(&direct));
    }

    // Projecting one factor of a point operator against the reference state
    // transposes it (up to the 1/N weight).
    for pt in g.full_grid_points() {
        let projected = bell_transpose_projection(g, pt)?;
        let expected =
            g.phase_point_op(pt).transpose().scaled(C64::new(1.0 / n as f64, 0.0));
        worst.note(projected.max_abs_diff(&expected));
    }

    Ok(worst.0)
}

/// Line sums: projector property, eigenrelations, counts and completeness.
fn projectors(g: &GridSpec) -> Result<f64> {
    let n = g.n();
    let side = 2 * n as i64;
    let mut worst = Worst::default();

    for a in 0..side {
        for b in 0..side {
            if a == 0 && b == 0 {
                // The all-zero direction defines no lines and is refused by
                // the constructor-facing functions.
                worst.note_bool(line_points(g, &Line::new(0, 0, 0)).is_err());
                continue;
            }
            let mut completeness = LinearOperator::zeros(n);
            for c in 0..side {
                let line = Line::new(a, b, c);
                let direct = line_projector(g, &line)?;
                completeness = &completeness + &direct;
                // The group-average route agrees with the direct sum.
                worst.note(direct.max_abs_diff(&line_projector_group_average(g, &line)?));
                // Always a Hermitian projector.
                worst.note(direct.max_abs_diff(&direct.adjoint()));
                worst.note((&direct * &direct).max_abs_diff(&direct));
                // Eigenrelation under the line's own translation.
                let t = g.translation(a, b);
                let lhs = &t * &direct;
                let rhs = direct.scaled(translation_eigenvalue(g, c));
                worst.note(lhs.max_abs_diff(&rhs));
                // Point count: 2N gcd(a, b, 2N) when that gcd divides c.
                let gcd = gcd3(a, b, side);
                let expected = if c % gcd == 0 { (side * gcd) as usize } else { 0 };
                worst.note_bool(line_points(g, &line)?.len() == expected);
            }
            // Offsets of one direction partition the grid.
            worst.note(completeness.max_abs_diff(&LinearOperator::identity(n)));
        }
    }

    // Horizontal lines: odd offsets vanish, even offsets are momentum
    // projectors.
    for c in 0..side {
        let proj = line_projector(g, &Line::new(1, 0, c))?;
        if c % 2 == 0 {
            let psi = g.momentum_state(c / 2);
            worst.note(proj.max_abs_diff(&psi.outer(&psi)));
        } else {
            worst.note(proj.max_abs());
        }
    }

    // Products of the two basis manifolds project onto basis states.
    for beta in all_bell_indices(g) {
        let (m1, m2) = bell_manifolds(beta);
        let p1 = manifold_projector_group_average(g, &m1)?;
        let p2 = manifold_projector_group_average(g, &m2)?;
        if n <= 3 {
            worst.note(p1.max_abs_diff(&manifold_projector(g, &m1)?));
            worst.note(p2.max_abs_diff(&manifold_projector(g, &m2)?));
        }
        worst.note((&p1 * &p2).max_abs_diff(&(&p2 * &p1)));
        let psi = bell_state(g, beta);
        worst.note((&p1 * &p2).max_abs_diff(&psi.outer(&psi)));
    }

    Ok(worst.0)
}

/// Propagation kernel: literal sum, closed form and action on grids.
fn z_kernel_suite(g: &GridSpec) -> Result<f64> {
    let mut rng = suite_rng("z-kernel", g.n());
    let mut worst = Worst::default();

    for beta in all_bell_indices(g) {
        let literal = z_kernel(g, beta);
        let closed = z_kernel_closed_form(g, beta);
        let mut diff = 0.0f64;
        for (a, b) in literal.values().iter().zip(closed.values()) {
            diff = diff.max((a - b).abs());
        }
        worst.note(diff);
        // Each row has exactly one nonzero entry, of magnitude 1.
        for row in closed.values().rows() {
            let nonzero: Vec<f64> = row.iter().copied().filter(|v| v.abs() > 0.5).collect();
            worst.note_bool(nonzero.len() == 1);
            if let Some(v) = nonzero.first() {
                worst.note((v.abs() - 1.0).abs());
            }
        }
    }

    // Applying the kernel reproduces the conditional state's grid.
    let rho_in = DensityOperator::from_pure(&StateVector::random(g.n(), &mut rng))?;
    let input_grid = wigner_grid(g, &rho_in)?;
    let rho123 = prepare_initial(g, &rho_in)?;
    let betas: Vec<BellIndex> = all_bell_indices(g).collect();
    let probe = if g.n() <= 3 { betas.clone() } else { betas[..3].to_vec() };
    for beta in probe {
        let (_, conditional) = conditional_state(g, &rho123, beta)?;
        let expected = wigner_grid(g, &conditional)?;
        let propagated = z_kernel(g, beta).apply(&input_grid)?;
        for pt in g.full_grid_points() {
            worst.note((propagated.value(pt) - expected.value(pt)).abs());
        }
    }

    Ok(worst.0)
}

/// Interference circuit against direct traces, plus the generic identity.
fn tomography_suite(g: &GridSpec) -> Result<f64> {
    let mut rng = suite_rng("tomography", g.n());
    let mut worst = Worst::default();

    // Single system: circuit values match the defining trace everywhere.
    let rho = DensityOperator::random(g.n(), &mut rng);
    let grid = wigner_grid(g, &rho)?;
    for pt in g.full_grid_points() {
        let measured = measure_wigner_point(g, &rho, pt)?;
        worst.note((measured.value - grid.value(pt)).abs());
        worst.note(measured.sy.abs());
    }

    // Two systems: sampled points of a random product state.
    let rho2 = DensityOperator::random(g.n(), &mut rng);
    let pair = rho.tensor(&rho2);
    let side = 2 * g.n() as i64;
    for &(q1, p1, q2, p2) in
        &[(0, 0, 0, 0), (1, 0, 0, 1), (2, 1, 1, 2), (side - 1, 1, 3, side - 1)]
    {
        let pt1 = g.point(q1, p1);
        let pt2 = g.point(q2, p2);
        let measured = measure_composite_wigner_point(g, &pair, pt1, pt2)?;
        let direct = composite_wigner_point(g, &pair, pt1, pt2)?;
        worst.note((measured.value - direct).abs());
    }

    // Generic readout identity: sz + i sy = Tr(M rho) for unitary M.
    for dim in [2, 3, 5, 8] {
        for _ in 0..3 {
            let m = random_unitary(dim, &mut rng);
            let rho = DensityOperator::random(dim, &mut rng);
            let readings = ancilla_circuit(&m, &rho)?;
            let expected = trace_product(&m, rho.operator());
            worst.note((C64::new(readings.sz, readings.sy) - expected).norm());
        }
    }

    // Non-unitary observables are refused.
    let stretched = LinearOperator::identity(2).scaled(C64::new(2.0, 0.0));
    worst.note_bool(matches!(
        ancilla_circuit(&stretched, &DensityOperator::maximally_mixed(2)),
        Err(Error::NotUnitary(_))
    ));

    Ok(worst.0)
}

/// End-to-end protocol: uniform outcomes, exact conditioning, unit fidelity.
fn teleport_suite(g: &GridSpec) -> Result<f64> {
    let mut rng = suite_rng("teleport", g.n());
    let mut worst = Worst::default();
    let n2 = (g.n() * g.n()) as f64;

    for rho_in in [
        DensityOperator::from_pure(&StateVector::random(g.n(), &mut rng))?,
        DensityOperator::random(g.n(), &mut rng),
    ] {
        let rho123 = prepare_initial(g, &rho_in)?;
        // Outcome distribution is uniform regardless of the input.
        for p in outcome_probabilities(g, &rho123)? {
            worst.note((p - 1.0 / n2).abs());
        }
        // Conditionals are exact displaced copies of the input.
        let betas: Vec<BellIndex> = all_bell_indices(g).collect();
        let probe = if g.n() <= 4 { betas.clone() } else { betas[..4].to_vec() };
        for beta in probe {
            let (p, conditional) = conditional_state(g, &rho123, beta)?;
            worst.note((p - 1.0 / n2).abs());
            let t = g.translation(beta.q() as i64, beta.p() as i64);
            let expected = &(&t.adjoint() * rho_in.operator()) * &t;
            worst.note(conditional.operator().max_abs_diff(&expected));
        }
        // Sampled runs recover the input exactly.
        for seed in [3u64, 17, 40] {
            let run = teleport(g, &rho_in, seed)?;
            worst.note((run.fidelity - 1.0).abs());
            worst.note((run.outcome_probability - 1.0 / n2).abs());
            worst.note(trace_distance(&run.recovered, &rho_in)?);
            // Identical seeds replay the identical outcome.
            let replay = teleport(g, &rho_in, seed)?;
            worst.note_bool(replay.outcome == run.outcome);
        }
    }

    // A pure-state fidelity cross-check via the Uhlmann route.
    let psi = StateVector::random(g.n(), &mut rng);
    let pure = DensityOperator::from_pure(&psi)?;
    worst.note((uhlmann_fidelity(&pure, &pure)? - 1.0).abs());

    Ok(worst.0)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn gcd(mut x: i64, mut y: i64) -> i64 {
        while y != 0 {
            let r = x % y;
            x = y;
            y = r;
        }
        x.abs()
    }
    gcd(gcd(a, b), c).max(1)
}
