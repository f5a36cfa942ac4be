//! The maximally entangled basis of a two-system space, indexed by
//! phase-space displacements, and its phase-space portrait.
//!
//! For each pair `beta = (q, p)` with `0 <= q, p < N` the state
//!
//! ```text
//! |Theta_beta> = (1/sqrt N) sum_n omega^{p n} |n> |n - q>
//! ```
//!
//! is a joint eigenvector of the commuting pair `U (x) U` (eigenvalue
//! `e^{-2 i pi p / N}`) and `V (x) V^dag` (eigenvalue `e^{+2 i pi q / N}`).
//! The `N^2` of them form an orthonormal basis; `beta = (0, 0)` is the
//! standard maximally entangled pairing.
//!
//! Phase space sees these states sharply: their Wigner function is supported
//! on the intersection of two manifolds (`p1 + p2` fixed, `q1 - q2` fixed)
//! and takes the closed form implemented in [`bell_wigner`]. The coefficients
//! connecting products of phase-point operators to the entangled basis are
//! the `K` coefficients of [`k_coefficients`]; they drive the phase-space
//! picture of teleportation in [`crate::teleport`].

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::linalg::{tensor, LinearOperator, StateVector};
use crate::lines::Manifold;
use crate::phase_space::{GridSpec, PhasePoint};

/// An index `(q, p)` into the entangled basis, stored reduced modulo `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BellIndex {
    q: usize,
    p: usize,
}

impl BellIndex {
    pub fn new(g: &GridSpec, q: i64, p: i64) -> Self {
        let n = g.n() as i64;
        Self { q: q.rem_euclid(n) as usize, p: p.rem_euclid(n) as usize }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

impl std::fmt::Display for BellIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.q, self.p)
    }
}

/// All `N^2` basis indices, `q`-major.
pub fn all_bell_indices(g: &GridSpec) -> impl Iterator<Item = BellIndex> + '_ {
    let n = g.n();
    (0..n).flat_map(move |q| (0..n).map(move |p| BellIndex { q, p }))
}

/// The entangled basis state `|Theta_beta>` on `H (x) H` (dimension `N^2`).
pub fn bell_state(g: &GridSpec, beta: BellIndex) -> StateVector {
    let n = g.n();
    let scale = 1.0 / (n as f64).sqrt();
    let mut amplitudes = vec![C64::new(0.0, 0.0); n * n];
    for m in 0..n {
        let partner = (m + n - beta.q) % n;
        amplitudes[m * n + partner] = g.omega((beta.p * m) as i64) * scale;
    }
    StateVector::new(amplitudes).expect("nonzero by construction")
}

/// The whole basis, in [`all_bell_indices`] order.
pub fn bell_basis(g: &GridSpec) -> Vec<StateVector> {
    all_bell_indices(g).map(|beta| bell_state(g, beta)).collect()
}

/// `U (x) U`, whose eigenvalue on `|Theta_beta>` is `e^{-2 i pi p / N}`.
pub fn u_plus(g: &GridSpec) -> LinearOperator {
    tensor(&g.shift(1), &g.shift(1))
}

/// `V (x) V^dag`, whose eigenvalue on `|Theta_beta>` is `e^{+2 i pi q / N}`.
pub fn v_minus(g: &GridSpec) -> LinearOperator {
    tensor(&g.boost(1), &g.boost(-1))
}

/// The rank-one operator `|Theta_b1><Theta_b2|`.
pub fn bell_operator(g: &GridSpec, b1: BellIndex, b2: BellIndex) -> LinearOperator {
    bell_state(g, b1).outer(&bell_state(g, b2))
}

/// The two manifolds whose projectors intersect on `|Theta_beta>`:
/// `p1 + p2 = 2p (mod 2N)` and `q1 - q2 = 2q (mod 2N)`.
pub fn bell_manifolds(beta: BellIndex) -> (Manifold, Manifold) {
    let momentum = Manifold::new(1, 0, 1, 0, 2 * beta.p as i64);
    let position = Manifold::new(0, -1, 0, 1, 2 * beta.q as i64);
    (momentum, position)
}

/// Closed-form Wigner value of `|Theta_beta>` at a pair of grid points.
///
/// The `beta = (0,0)` pattern is
/// `W_0 = delta_N(q1 - q2) delta_N(p1 + p2) (-1)^{(q1 p1 + q2 p2)/N} / (2N)^2`
/// (the exponent is an integer wherever the deltas fire), and a general
/// `beta` just shifts the first argument: `W_beta(a1, a2) = W_0(a1 - 2 beta, a2)`.
pub fn bell_wigner(g: &GridSpec, beta: BellIndex, pt1: PhasePoint, pt2: PhasePoint) -> f64 {
    let n = g.n() as i64;
    let q1 = pt1.q() as i64 - 2 * beta.q as i64;
    let p1 = pt1.p() as i64 - 2 * beta.p as i64;
    let q2 = pt2.q() as i64;
    let p2 = pt2.p() as i64;
    if (q1 - q2).rem_euclid(n) != 0 || (p1 + p2).rem_euclid(n) != 0 {
        return 0.0;
    }
    let exponent = (q1 * p1 + q2 * p2).div_euclid(n);
    debug_assert_eq!((q1 * p1 + q2 * p2).rem_euclid(n), 0, "integer on the support");
    let sign = if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let side = (2 * n) as f64;
    sign / (side * side)
}

/// The change-of-basis coefficients from one product of phase-point
/// operators to the entangled basis, for all `beta` pairs:
/// `K(b1, b2 | a) = <Theta_b2| A(a1) (x) A(a2) |Theta_b1>`.
///
/// Values are stored for a fixed point pair `(a1, a2)` with both `beta`
/// indices running over the `N^2` basis labels.
#[derive(Debug, Clone, PartialEq)]
pub struct KCoefficients {
    n: usize,
    pt1: PhasePoint,
    pt2: PhasePoint,
    values: Vec<C64>,
}

impl KCoefficients {
    pub fn pt1(&self) -> PhasePoint {
        self.pt1
    }

    pub fn pt2(&self) -> PhasePoint {
        self.pt2
    }

    fn index(&self, b1: BellIndex, b2: BellIndex) -> usize {
        let m = self.n * self.n;
        (b1.q * self.n + b1.p) * m + (b2.q * self.n + b2.p)
    }

    /// `K(b1, b2 | a)` for the point pair this table was built at.
    pub fn value(&self, b1: BellIndex, b2: BellIndex) -> C64 {
        self.values[self.index(b1, b2)]
    }
}

/// Builds the `K` table at one pair of grid points, in `O(N^5)` total time
/// (each of the `N^4` entries costs one `O(N)` sum thanks to the one-entry
/// columns of the phase-point operators).
pub fn k_coefficients(g: &GridSpec, pt1: PhasePoint, pt2: PhasePoint) -> KCoefficients {
    let n = g.n();
    let ni = n as i64;
    let m2 = n * n;
    let mut values = vec![C64::new(0.0, 0.0); m2 * m2];
    let scale = 1.0 / n as f64;
    for b1 in all_bell_indices(g) {
        for b2 in all_bell_indices(g) {
            // K = (1/N) sum_m omega^{p_{b1} m - p_{b2} n(m)}
            //         A1[n(m), m] A2[(n(m) - q_{b2}) mod N, (m - q_{b1}) mod N],
            // where n(m) = q_{a1} - m mod N is forced by the sparsity of A1.
            let mut total = C64::new(0.0, 0.0);
            for m in 0..ni {
                let row1 = (pt1.q() as i64 - m).rem_euclid(ni);
                let a1 = phase_point_entry(g, pt1, row1, m);
                if a1.norm_sqr() == 0.0 {
                    continue;
                }
                let row2 = (row1 - b2.q as i64).rem_euclid(ni);
                let col2 = (m - b1.q as i64).rem_euclid(ni);
                let a2 = phase_point_entry(g, pt2, row2, col2);
                if a2.norm_sqr() == 0.0 {
                    continue;
                }
                let character = g.omega(b1.p as i64 * m - b2.p as i64 * row1);
                total += character * a1 * a2;
            }
            let idx = (b1.q * n + b1.p) * m2 + (b2.q * n + b2.p);
            values[idx] = total * scale;
        }
    }
    KCoefficients { n, pt1, pt2, values }
}

/// One matrix element of a phase-point operator, without building the
/// matrix: nonzero only when `row = q - col mod N`.
fn phase_point_entry(g: &GridSpec, pt: PhasePoint, row: i64, col: i64) -> C64 {
    let n = g.n() as i64;
    if (row - (pt.q() as i64 - col)).rem_euclid(n) != 0 {
        return C64::new(0.0, 0.0);
    }
    let p = pt.p() as i64;
    let q = pt.q() as i64;
    g.phase(p * q - 2 * p * col) / (2.0 * g.n() as f64)
}

/// Rebuilds `A(a1) (x) A(a2)` from its `K` table:
/// `A (x) A = sum_{b1, b2} conj(K(b1, b2 | a)) |Theta_b1><Theta_b2|`.
pub fn product_op_from_k(g: &GridSpec, k: &KCoefficients) -> LinearOperator {
    let mut acc = LinearOperator::zeros(g.n() * g.n());
    for b1 in all_bell_indices(g) {
        for b2 in all_bell_indices(g) {
            let coeff = k.value(b1, b2).conj();
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            acc = &acc + &bell_operator(g, b1, b2).scaled(coeff);
        }
    }
    acc
}

/// Rebuilds `|Theta_b1><Theta_b2|` from `K` tables over the fundamental
/// subgrid: `B(b1, b2) = (4N)^2 sum_{a in sub x sub} K(b1, b2 | a) A(a1) (x) A(a2)`.
pub fn bell_operator_from_k(g: &GridSpec, b1: BellIndex, b2: BellIndex) -> Result<LinearOperator> {
    let n = g.n();
    let scale = (4.0 * n as f64) * (4.0 * n as f64);
    let mut acc = LinearOperator::zeros(n * n);
    for pt1 in g.subgrid_points() {
        let a1 = g.phase_point_op(pt1);
        for pt2 in g.subgrid_points() {
            let k = k_coefficients(g, pt1, pt2);
            let coeff = k.value(b1, b2) * scale;
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            acc = &acc + &tensor(&a1, &g.phase_point_op(pt2)).scaled(coeff);
        }
    }
    Ok(acc)
}

/// Projects one phase-point operator through the standard entangled pairing:
/// `Tr_1[(A(pt) (x) 1) |Theta_0><Theta_0|]`, which equals `A(pt)^T / N` —
/// and the transpose is itself a phase-point operator, `A(q, -p)`.
pub fn bell_transpose_projection(g: &GridSpec, pt: PhasePoint) -> Result<LinearOperator> {
    let theta0 = bell_state(g, BellIndex::new(g, 0, 0));
    let rho0 = theta0.outer(&theta0);
    let lifted = tensor(&g.phase_point_op(pt), &LinearOperator::identity(g.n()));
    crate::linalg::partial_trace(
        &(&lifted * &rho0),
        (g.n(), g.n()),
        crate::linalg::Subsystem::Second,
    )
}
