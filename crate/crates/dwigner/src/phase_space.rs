//! Phase-space grids, integer phase points and the operator toolbox of a
//! single `N`-state system.
//!
//! Position and momentum of an `N`-state system take `N` values each, but
//! the Wigner function below lives on a doubled `2N x 2N` grid: only with
//! half-integer points included does a clean, basis-independent phase-point
//! operator exist for every `N`. The fundamental `N x N` subgrid (even
//! coordinates halved) already determines everything; the remaining points
//! carry the same operators up to signs, see [`GridSpec::subgrid_rep`].
//!
//! All integer arithmetic on grid coordinates is performed modulo `2N`, and
//! all phases are reduced modulo `2N` before being exponentiated, so entries
//! of the returned matrices are exact up to one `sin`/`cos` rounding.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{LinearOperator, StateVector};

/// The phase-space geometry of a single system with `N` basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    n: usize,
}

/// A point of the doubled grid, stored with canonical coordinates in
/// `[0, 2N)`. Construct via [`GridSpec::point`] so the reduction is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    q: usize,
    p: usize,
}

impl PhasePoint {
    /// Position coordinate, in `[0, 2N)`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Momentum coordinate, in `[0, 2N)`.
    pub fn p(&self) -> usize {
        self.p
    }
}

impl std::fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.q, self.p)
    }
}

impl GridSpec {
    /// A grid for an `N`-state system, `N >= 2`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n })
    }

    /// Hilbert-space dimension `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Side length `2N` of the doubled grid.
    pub fn side(&self) -> usize {
        2 * self.n
    }

    /// The canonical representative of `(q, p)` modulo `2N`.
    pub fn point(&self, q: i64, p: i64) -> PhasePoint {
        let side = self.side() as i64;
        PhasePoint { q: q.rem_euclid(side) as usize, p: p.rem_euclid(side) as usize }
    }

    /// Componentwise sum modulo `2N`.
    pub fn add(&self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        self.point((a.q + b.q) as i64, (a.p + b.p) as i64)
    }

    /// `a - b` modulo `2N`.
    pub fn sub(&self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        self.point(a.q as i64 - b.q as i64, a.p as i64 - b.p as i64)
    }

    /// All `(2N)^2` points of the doubled grid, position-major.
    pub fn full_grid_points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        let side = self.side();
        (0..side).flat_map(move |q| (0..side).map(move |p| PhasePoint { q, p }))
    }

    /// The `N^2` points of the fundamental subgrid `[0, N) x [0, N)`.
    pub fn subgrid_points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        let n = self.n;
        (0..n).flat_map(move |q| (0..n).map(move |p| PhasePoint { q, p }))
    }

    /// `exp(i pi num / N)`, with `num` reduced modulo `2N` first so the
    /// angle stays small and periodicity is exact.
    pub fn phase(&self, num: i64) -> C64 {
        let reduced = num.rem_euclid(2 * self.n as i64);
        C64::from_polar(1.0, std::f64::consts::PI * reduced as f64 / self.n as f64)
    }

    /// `exp(2 i pi num / N)`, the `N`-th root of unity to the power `num`.
    pub fn omega(&self, num: i64) -> C64 {
        self.phase(2 * num.rem_euclid(self.n as i64))
    }

    /// The position eigenstate `|q0>` (a computational basis vector).
    pub fn position_state(&self, q0: i64) -> StateVector {
        let q0 = q0.rem_euclid(self.n as i64) as usize;
        StateVector::basis_state(self.n, q0).expect("index already reduced")
    }

    /// The momentum eigenstate `|k>`, the discrete-Fourier partner of the
    /// position basis: amplitudes `omega^{k n} / sqrt(N)`.
    pub fn momentum_state(&self, k: i64) -> StateVector {
        let scale = 1.0 / (self.n as f64).sqrt();
        let amplitudes = (0..self.n as i64).map(|n| self.omega(k * n) * scale).collect();
        StateVector::new(amplitudes).expect("nonzero by construction")
    }

    /// Cyclic position shift `U^m`: `U^m |n> = |n + m mod N>`.
    pub fn shift(&self, m: i64) -> LinearOperator {
        let n = self.n as i64;
        let m = m.rem_euclid(n);
        LinearOperator::from_fn(self.n, |row, col| {
            if row as i64 == (col as i64 + m).rem_euclid(n) {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Momentum boost `V^m`: diagonal with `V^m |n> = omega^{m n} |n>`.
    pub fn boost(&self, m: i64) -> LinearOperator {
        LinearOperator::from_fn(self.n, |row, col| {
            if row == col {
                self.omega(m * row as i64)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// The discrete Fourier matrix `F[m, n] = omega^{m n} / sqrt(N)`. It maps
    /// position eigenstates to momentum eigenstates; its square is the
    /// reflection `R`, so `F^4 = 1`.
    pub fn fourier(&self) -> LinearOperator {
        let scale = 1.0 / (self.n as f64).sqrt();
        LinearOperator::from_fn(self.n, |row, col| self.omega((row * col) as i64) * scale)
    }

    /// The reflection `R |n> = |-n mod N>`.
    pub fn reflection(&self) -> LinearOperator {
        let n = self.n as i64;
        LinearOperator::from_fn(self.n, |row, col| {
            if row as i64 == (-(col as i64)).rem_euclid(n) {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// The phase-space translation `T(a, b) = U^a V^b exp(i pi a b / N)`.
    ///
    /// The symmetrizing phase makes the family `2N`-periodic in both
    /// arguments (not `N`-periodic!) and gives it the group law
    /// `T(a, b)^k = T(k a, k b)`, hence `T^{2N} = 1` for every point.
    pub fn translation(&self, a: i64, b: i64) -> LinearOperator {
        let side = 2 * self.n as i64;
        let a = a.rem_euclid(side);
        let b = b.rem_euclid(side);
        let global = self.phase(a * b);
        let shift = self.shift(a);
        let boost = self.boost(b);
        (&shift * &boost).scaled(global)
    }

    /// The Hermitian phase-point operator at a grid point.
    ///
    /// Its matrix elements in the position basis are
    /// `A[n', n] = exp(i pi (p q - 2 p n) / N) / 2N` when `n' = q - n mod N`
    /// and zero otherwise, i.e. one nonzero entry per column. `2N A` is
    /// unitary as well as Hermitian.
    pub fn phase_point_op(&self, pt: PhasePoint) -> LinearOperator {
        let n = self.n as i64;
        let q = pt.q as i64;
        let p = pt.p as i64;
        let scale = 1.0 / (2.0 * self.n as f64);
        let mut entries = ndarray::Array2::zeros((self.n, self.n));
        for col in 0..n {
            let row = (q - col).rem_euclid(n);
            entries[(row as usize, col as usize)] = self.phase(p * q - 2 * p * col) * scale;
        }
        LinearOperator::new(entries).expect("square finite matrix")
    }

    /// Maps a full-grid point to its fundamental-subgrid representative and
    /// the sign relating the two phase-point operators:
    /// `A(pt) = sign * A(rep)`.
    pub fn subgrid_rep(&self, pt: PhasePoint) -> (PhasePoint, f64) {
        let n = self.n;
        let rep = PhasePoint { q: pt.q % n, p: pt.p % n };
        let sq = pt.q / n;
        let sp = pt.p / n;
        let exponent = sp * rep.q + sq * rep.p + sq * sp * n;
        let sign = if exponent % 2 == 0 { 1.0 } else { -1.0 };
        (rep, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::trace_product;
    use crate::{STRICT_TOLERANCE, TOLERANCE};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0).is_err());
        assert!(GridSpec::new(1).is_err());
        let g = GridSpec::new(3).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.side(), 6);
        assert_eq!(g.full_grid_points().count(), 36);
        assert_eq!(g.subgrid_points().count(), 9);
    }

    #[test]
    fn point_reduction_and_arithmetic() {
        let g = GridSpec::new(3).unwrap();
        let pt = g.point(-1, 14);
        assert_eq!((pt.q(), pt.p()), (5, 2));
        let a = g.point(4, 5);
        let b = g.point(3, 3);
        assert_eq!(g.add(a, b), g.point(1, 2));
        assert_eq!(g.sub(a, b), g.point(1, 2));
    }

    #[test]
    fn phase_is_periodic_and_exact_at_special_angles() {
        let g = GridSpec::new(3).unwrap();
        assert!((g.phase(0) - c(1.0, 0.0)).norm() < STRICT_TOLERANCE);
        assert!((g.phase(3) - c(-1.0, 0.0)).norm() < STRICT_TOLERANCE);
        assert!((g.phase(6) - c(1.0, 0.0)).norm() < STRICT_TOLERANCE);
        assert!((g.phase(-1) - g.phase(5)).norm() < STRICT_TOLERANCE);
        assert!((g.phase(6004) - g.phase(4)).norm() < STRICT_TOLERANCE);
        let g2 = GridSpec::new(2).unwrap();
        assert!((g2.phase(1) - c(0.0, 1.0)).norm() < STRICT_TOLERANCE);
        assert!((g2.omega(1) - c(-1.0, 0.0)).norm() < STRICT_TOLERANCE);
    }

    #[test]
    fn shift_and_boost_satisfy_the_weyl_relation() {
        // V^p U^q = U^q V^p omega^{p q}.
        for n in [2usize, 3, 5] {
            let g = GridSpec::new(n).unwrap();
            for q in 0..n as i64 {
                for p in 0..n as i64 {
                    let lhs = &g.boost(p) * &g.shift(q);
                    let rhs = (&g.shift(q) * &g.boost(p)).scaled(g.omega(p * q));
                    assert!(lhs.approx_eq(&rhs, STRICT_TOLERANCE), "n={n} q={q} p={p}");
                }
            }
            assert!(g.shift(1).is_unitary(STRICT_TOLERANCE));
            assert!(g.boost(1).is_unitary(STRICT_TOLERANCE));
        }
    }

    #[test]
    fn momentum_states_diagonalize_the_shift() {
        // U |k> = exp(-2 i pi k / N) |k>, and the boost ladders |k> -> |k+1>.
        for n in [2usize, 3, 4, 7] {
            let g = GridSpec::new(n).unwrap();
            let u = g.shift(1);
            let v = g.boost(1);
            for k in 0..n as i64 {
                let mk = g.momentum_state(k);
                let shifted = u.apply(&mk).unwrap();
                let expected = g.omega(-k);
                for i in 0..n {
                    assert!(
                        (shifted.amplitude(i) - expected * mk.amplitude(i)).norm()
                            < STRICT_TOLERANCE
                    );
                }
                let boosted = v.apply(&mk).unwrap();
                let next = g.momentum_state(k + 1);
                for i in 0..n {
                    assert!((boosted.amplitude(i) - next.amplitude(i)).norm() < STRICT_TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn fourier_squares_to_reflection() {
        for n in [2usize, 3, 6] {
            let g = GridSpec::new(n).unwrap();
            let f = g.fourier();
            assert!(f.is_unitary(TOLERANCE));
            let r = g.reflection();
            assert!((&f * &f).approx_eq(&r, TOLERANCE));
            assert!((&r * &r).approx_eq(&LinearOperator::identity(n), STRICT_TOLERANCE));
            // R U R = U^{-1}.
            let u = g.shift(1);
            let conj = &(&r * &u) * &r;
            assert!(conj.approx_eq(&g.shift(-1), STRICT_TOLERANCE));
            // F maps position eigenstates to momentum eigenstates.
            for q0 in 0..n as i64 {
                let mapped = f.apply(&g.position_state(q0)).unwrap();
                let target = g.momentum_state(q0);
                for i in 0..n {
                    assert!((mapped.amplitude(i) - target.amplitude(i)).norm() < TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn translations_form_a_projective_group() {
        for n in [2usize, 3, 4] {
            let g = GridSpec::new(n).unwrap();
            let side = g.side() as i64;
            for a in 0..side {
                for b in 0..side {
                    let t = g.translation(a, b);
                    assert!(t.is_unitary(TOLERANCE), "n={n} a={a} b={b}");
                    // Powers follow the ray rule T(a,b)^k = T(ka, kb).
                    let mut power = LinearOperator::identity(n);
                    for k in 1..=side {
                        power = &power * &t;
                        let direct = g.translation(k * a, k * b);
                        assert!(
                            power.approx_eq(&direct, TOLERANCE),
                            "n={n} a={a} b={b} k={k}"
                        );
                    }
                    // Period 2N in particular, with a sign at half period.
                    assert!(power.approx_eq(&LinearOperator::identity(n), TOLERANCE));
                    let half = g.translation(n as i64 * a, n as i64 * b);
                    let parity = if (n * (a as usize) * (b as usize)) % 2 == 0 { 1.0 } else { -1.0 };
                    assert!(half
                        .approx_eq(&LinearOperator::identity(n).scaled(c(parity, 0.0)), TOLERANCE));
                    // 2N-periodicity in each argument.
                    assert!(g.translation(a + side, b).approx_eq(&t, TOLERANCE));
                    assert!(g.translation(a, b - side).approx_eq(&t, TOLERANCE));
                }
            }
        }
    }

    #[test]
    fn phase_point_ops_are_hermitian_and_scaled_unitary() {
        for n in [2usize, 3, 5] {
            let g = GridSpec::new(n).unwrap();
            for pt in g.full_grid_points() {
                let a = g.phase_point_op(pt);
                assert!(a.is_hermitian(STRICT_TOLERANCE), "n={n} pt={pt}");
                let scaled = a.scaled(c(2.0 * n as f64, 0.0));
                assert!(scaled.is_unitary(TOLERANCE), "n={n} pt={pt}");
            }
        }
    }

    #[test]
    fn phase_point_op_at_origin_is_scaled_reflection() {
        for n in [2usize, 3, 4] {
            let g = GridSpec::new(n).unwrap();
            let a0 = g.phase_point_op(g.point(0, 0));
            let r = g.reflection().scaled(c(1.0 / (2.0 * n as f64), 0.0));
            assert!(a0.approx_eq(&r, STRICT_TOLERANCE));
        }
    }

    #[test]
    fn phase_point_ops_sum_to_projectors_along_grid_lines() {
        // Summing over a column (fixed p) gives a momentum projector for
        // even p and zero for odd p; rows behave the same way in position.
        for n in [2usize, 3, 4] {
            let g = GridSpec::new(n).unwrap();
            let side = g.side();
            for p in 0..side {
                let mut total = LinearOperator::zeros(n);
                for q in 0..side {
                    total = &total + &g.phase_point_op(g.point(q as i64, p as i64));
                }
                if p % 2 == 0 {
                    let k = g.momentum_state((p / 2) as i64);
                    let proj = k.outer(&k);
                    assert!(total.approx_eq(&proj, TOLERANCE), "n={n} p={p}");
                } else {
                    assert!(total.max_abs() < TOLERANCE, "n={n} p={p}");
                }
            }
            for q in 0..side {
                let mut total = LinearOperator::zeros(n);
                for p in 0..side {
                    total = &total + &g.phase_point_op(g.point(q as i64, p as i64));
                }
                if q % 2 == 0 {
                    let x = g.position_state((q / 2) as i64);
                    let proj = x.outer(&x);
                    assert!(total.approx_eq(&proj, TOLERANCE), "n={n} q={q}");
                } else {
                    assert!(total.max_abs() < TOLERANCE, "n={n} q={q}");
                }
            }
            // Everything together resolves the identity.
            let mut everything = LinearOperator::zeros(n);
            for pt in g.full_grid_points() {
                everything = &everything + &g.phase_point_op(pt);
            }
            assert!(everything.approx_eq(&LinearOperator::identity(n), TOLERANCE));
        }
    }

    #[test]
    fn subgrid_ops_are_trace_orthogonal() {
        // Tr[A(a) A(a')] = delta / 4N on the fundamental subgrid.
        for n in [2usize, 3, 4] {
            let g = GridSpec::new(n).unwrap();
            let pts: Vec<PhasePoint> = g.subgrid_points().collect();
            for &a in &pts {
                for &b in &pts {
                    let t = trace_product(&g.phase_point_op(a), &g.phase_point_op(b));
                    let expected = if a == b { 1.0 / (4.0 * n as f64) } else { 0.0 };
                    assert!(
                        (t - c(expected, 0.0)).norm() < TOLERANCE,
                        "n={n} a={a} b={b} got {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn full_grid_ops_reduce_to_signed_subgrid_reps() {
        for n in [2usize, 3, 4, 5] {
            let g = GridSpec::new(n).unwrap();
            for pt in g.full_grid_points() {
                let (rep, sign) = g.subgrid_rep(pt);
                assert!(rep.q() < n && rep.p() < n);
                let direct = g.phase_point_op(pt);
                let reduced = g.phase_point_op(rep).scaled(c(sign, 0.0));
                assert!(
                    direct.approx_eq(&reduced, STRICT_TOLERANCE),
                    "n={n} pt={pt} rep={rep} sign={sign}"
                );
            }
        }
    }

    #[test]
    fn translations_displace_phase_point_ops() {
        // T(a,b) A(q,p) T(a,b)^dag = A(q + 2a, p + 2b).
        for n in [2usize, 3] {
            let g = GridSpec::new(n).unwrap();
            for (a, b) in [(1i64, 0i64), (0, 1), (1, 1), (2, 3)] {
                let t = g.translation(a, b);
                let td = t.adjoint();
                for pt in g.full_grid_points() {
                    let moved = &(&t * &g.phase_point_op(pt)) * &td;
                    let target =
                        g.phase_point_op(g.point(pt.q() as i64 + 2 * a, pt.p() as i64 + 2 * b));
                    assert!(moved.approx_eq(&target, TOLERANCE), "n={n} a={a} b={b} pt={pt}");
                }
            }
        }
    }

    #[test]
    fn translation_matches_its_factored_form() {
        // Hand check at N=2: T(1,1) = U V e^{i pi / 2}.
        let g = GridSpec::new(2).unwrap();
        let t = g.translation(1, 1);
        let expected = (&g.shift(1) * &g.boost(1)).scaled(c(0.0, 1.0));
        assert!(t.approx_eq(&expected, STRICT_TOLERANCE));
        // And one literal matrix: U at N=2 is the Pauli X, V is diag(1, -1),
        // so T(1,1) = i X diag(1,-1) = [[0, -i], [i, 0]] (Pauli Y).
        assert!((t.entry(0, 1) - c(0.0, -1.0)).norm() < STRICT_TOLERANCE);
        assert!((t.entry(1, 0) - c(0.0, 1.0)).norm() < STRICT_TOLERANCE);
        assert!(t.entry(0, 0).norm() < STRICT_TOLERANCE);
        assert!(t.entry(1, 1).norm() < STRICT_TOLERANCE);
    }
}
