//! Dense complex vectors, operators and density matrices.
//!
//! Everything here is straightforward dense algebra over [`Complex64`] backed
//! by row-major [`ndarray`] storage. The dimensions in this crate stay small
//! (a few hundred at most, for tripartite protocol states), so no sparsity or
//! factorization tricks are attempted. All types are immutable after
//! construction and all operations are pure functions, so values can be
//! shared freely across threads.
//!
//! Tensor products use the row-major composite index convention
//! `(i1, i2) -> i1 * dim2 + i2`: the first factor varies slowest.

pub mod eig;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::TOLERANCE;

/// Which subsystem of a bipartite operator to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// Keep the first tensor factor, trace out the second.
    First,
    /// Keep the second tensor factor, trace out the first.
    Second,
}

/// A complex column vector; the amplitudes of a pure state in some basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Array1<C64>,
}

impl StateVector {
    /// Wraps raw amplitudes. Rejects empty and non-finite input; does not
    /// normalize or require normalization.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("empty amplitude vector".into()));
        }
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("state vector"));
        }
        Ok(Self { amplitudes: Array1::from_vec(amplitudes) })
    }

    /// The computational basis state `|n>` in `dim` dimensions.
    pub fn basis_state(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::IndexOutOfRange(format!(
                "basis label {n} for dimension {dim}"
            )));
        }
        let mut amplitudes = Array1::zeros(dim);
        amplitudes[n] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// A normalized state with independent standard complex Gaussian
    /// amplitudes drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let amplitudes: Array1<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let vector = Self { amplitudes };
        vector
            .normalized()
            .expect("Gaussian vector has zero norm only with vanishing probability")
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> C64 {
        self.amplitudes[n]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Returns the state rescaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-300 {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        let inv = C64::new(1.0 / norm, 0.0);
        Ok(Self { amplitudes: self.amplitudes.mapv(|z| z * inv) })
    }

    /// Inner product `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product between dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product `self (x) other` in the row-major index convention.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Array1::zeros(self.dim() * other.dim());
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                amplitudes[i * other.dim() + j] = a * b;
            }
        }
        Self { amplitudes }
    }

    /// The rank-one operator `|self><other|`.
    pub fn outer(&self, other: &Self) -> LinearOperator {
        let mut entries = Array2::zeros((self.dim(), other.dim()));
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                entries[(i, j)] = a * b.conj();
            }
        }
        LinearOperator { entries }
    }
}

/// A dense square complex matrix acting on a single Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    entries: Array2<C64>,
}

impl LinearOperator {
    /// Wraps a square matrix. Rejects non-square, empty and non-finite input.
    pub fn new(entries: Array2<C64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidState("empty operator".into()));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("operator"));
        }
        Ok(Self { entries })
    }

    /// Builds a `dim x dim` operator entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self { entries: Array2::from_shape_fn((dim, dim), |(i, j)| f(i, j)) }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: Array2::zeros((dim, dim)) }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.t().map(|z| z.conj()) }
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> Self {
        Self { entries: self.entries.t().to_owned() }
    }

    pub fn trace(&self) -> C64 {
        self.entries.diag().sum()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self { entries: self.entries.mapv(|z| z * factor) }
    }

    /// Applies the operator to a state vector.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.dim() != state.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator of dimension {} applied to state of dimension {}",
                self.dim(),
                state.dim()
            )));
        }
        Ok(StateVector { amplitudes: self.entries.dot(state.amplitudes()) })
    }

    /// Largest entry magnitude; the norm used by all approximate comparisons.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff between different dimensions");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) < tolerance
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) < tolerance
    }

    pub fn is_unitary(&self, tolerance: f64) -> bool {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.dim())) < tolerance
    }

    pub fn is_projector(&self, tolerance: f64) -> bool {
        self.is_hermitian(tolerance) && (self * self).max_abs_diff(self) < tolerance
    }

    /// Tensor product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Self {
        tensor(self, other)
    }
}

impl std::ops::Add for &LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim(), rhs.dim(), "adding operators of different dimensions");
        LinearOperator { entries: &self.entries + &rhs.entries }
    }
}

impl std::ops::Sub for &LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim(), rhs.dim(), "subtracting operators of different dimensions");
        LinearOperator { entries: &self.entries - &rhs.entries }
    }
}

/// Matrix product.
impl std::ops::Mul for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim(), rhs.dim(), "multiplying operators of different dimensions");
        LinearOperator { entries: self.entries.dot(&rhs.entries) }
    }
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
///
/// The checked constructors enforce all three properties at [`TOLERANCE`]
/// (eigenvalues may dip to `-1e-10` to absorb rounding).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: LinearOperator,
}

impl DensityOperator {
    /// Validates and wraps an operator as a density matrix.
    pub fn new(op: LinearOperator) -> Result<Self> {
        if !op.is_hermitian(TOLERANCE) {
            return Err(Error::InvalidState("density matrix is not Hermitian".into()));
        }
        let trace = op.trace();
        if (trace.re - 1.0).abs() > TOLERANCE || trace.im.abs() > TOLERANCE {
            return Err(Error::InvalidState(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        let (eigenvalues, _) = eig::eigh(&op)?;
        if eigenvalues.iter().any(|&lambda| lambda < -TOLERANCE) {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {:.3e}",
                eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
            )));
        }
        Ok(Self { op })
    }

    /// Wraps an operator without validating it. Intended for outputs of
    /// reconstruction-style sums where garbage in gives garbage out.
    pub fn from_operator_unchecked(op: LinearOperator) -> Self {
        Self { op }
    }

    /// The pure state `|psi><psi|`. The input must be normalized.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        if (psi.norm() - 1.0).abs() > TOLERANCE {
            return Err(Error::InvalidState(format!(
                "pure-state vector has norm {:.12} instead of 1",
                psi.norm()
            )));
        }
        Ok(Self { op: psi.outer(psi) })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: LinearOperator::identity(dim).scaled(C64::new(1.0 / dim as f64, 0.0)) }
    }

    /// A random full-rank density matrix: `A A^dag / Tr(A A^dag)` with `A`
    /// filled by standard complex Gaussians.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let a = LinearOperator::from_fn(dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let mut product = &a * &a.adjoint();
        let trace = product.trace().re;
        product = product.scaled(C64::new(1.0 / trace, 0.0));
        // Symmetrize away the last bits of rounding noise.
        let hermitian = LinearOperator {
            entries: (&product.entries + &product.adjoint().entries).mapv(|z| 0.5 * z),
        };
        Self { op: hermitian }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &LinearOperator {
        &self.op
    }

    pub fn into_operator(self) -> LinearOperator {
        self.op
    }

    /// `Tr(rho^2)`; equals 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        trace_product(&self.op, &self.op).re
    }

    /// `Tr(rho M)`.
    pub fn expectation(&self, observable: &LinearOperator) -> C64 {
        trace_product(observable, &self.op)
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig::eigh(&self.op).expect("density matrices are Hermitian").0
    }

    /// Product state `self (x) other`; valid by construction, so unchecked.
    pub fn tensor(&self, other: &Self) -> Self {
        Self { op: tensor(&self.op, &other.op) }
    }
}

/// Tensor (Kronecker) product in the row-major index convention
/// `(i1, i2) -> i1 * dim2 + i2`.
pub fn tensor(a: &LinearOperator, b: &LinearOperator) -> LinearOperator {
    LinearOperator { entries: ndarray::linalg::kron(&a.entries, &b.entries) }
}

/// A Haar-like random unitary: modified Gram-Schmidt applied to a matrix of
/// independent standard complex Gaussians.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> LinearOperator {
    let mut cols: Vec<Array1<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for i in 0..j {
            let overlap: C64 = cols[i].iter().zip(cols[j].iter()).map(|(a, b)| a.conj() * b).sum();
            let prior = cols[i].clone();
            cols[j].zip_mut_with(&prior, |b, a| *b -= overlap * a);
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-150, "Gaussian columns are independent almost surely");
        cols[j].mapv_inplace(|z| z / norm);
    }
    LinearOperator::from_fn(dim, |i, j| cols[j][i])
}

/// Partial trace of a bipartite operator with factor dimensions `dims`.
pub fn partial_trace(
    op: &LinearOperator,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<LinearOperator> {
    let (d1, d2) = dims;
    if d1 * d2 != op.dim() {
        return Err(Error::DimensionMismatch(format!(
            "partial trace with factors {d1}x{d2} on operator of dimension {}",
            op.dim()
        )));
    }
    let entries = match keep {
        Subsystem::First => Array2::from_shape_fn((d1, d1), |(i, j)| {
            (0..d2).map(|k| op.entries[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::Second => Array2::from_shape_fn((d2, d2), |(i, j)| {
            (0..d1).map(|k| op.entries[(k * d2 + i, k * d2 + j)]).sum()
        }),
    };
    Ok(LinearOperator { entries })
}

/// `Tr(A B)` without forming the product matrix.
pub fn trace_product(a: &LinearOperator, b: &LinearOperator) -> C64 {
    assert_eq!(a.dim(), b.dim(), "trace_product between different dimensions");
    let mut total = C64::new(0.0, 0.0);
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            total += a.entries[(i, j)] * b.entries[(j, i)];
        }
    }
    total
}

/// `<psi| rho |psi>`: the fidelity of `rho` against a normalized pure state.
pub fn fidelity(rho: &DensityOperator, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity between state of dimension {} and operator of dimension {}",
            psi.dim(),
            rho.dim()
        )));
    }
    let image = rho.operator().apply(psi)?;
    let value = psi.inner(&image)?;
    assert!(
        value.im.abs() < TOLERANCE,
        "fidelity has non-negligible imaginary part {:.3e}",
        value.im
    );
    Ok(value.re)
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2` between two
/// density matrices. Reduces to `<psi|sigma|psi>` when `rho` is pure.
pub fn uhlmann_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity between operators of dimension {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let root = eig::sqrtm_psd(rho.operator())?;
    let inner = &(&root * sigma.operator()) * &root;
    let (eigenvalues, _) = eig::eigh(&inner)?;
    // Same cutoff rationale as in sqrtm_psd: spurious eigenvalues at noise
    // level would contribute sqrt(noise) each, swamping the result.
    let lambda_max = eigenvalues.iter().cloned().fold(0.0, f64::max);
    let cutoff = 1e-13 * lambda_max;
    let trace_root: f64 = eigenvalues
        .iter()
        .map(|&lambda| if lambda > cutoff { lambda.sqrt() } else { 0.0 })
        .sum();
    Ok(trace_root * trace_root)
}

/// Trace distance `||a - b||_1 / 2`.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "trace distance between operators of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let difference = a.operator() - b.operator();
    let (eigenvalues, _) = eig::eigh(&difference)?;
    Ok(0.5 * eigenvalues.iter().map(|lambda| lambda.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_states_are_orthonormal() {
        for dim in [2, 3, 5] {
            for n in 0..dim {
                for m in 0..dim {
                    let a = StateVector::basis_state(dim, n).unwrap();
                    let b = StateVector::basis_state(dim, m).unwrap();
                    let expected = if n == m { 1.0 } else { 0.0 };
                    assert!((a.inner(&b).unwrap() - c(expected, 0.0)).norm() < 1e-15);
                }
            }
        }
        assert!(StateVector::basis_state(3, 3).is_err());
    }

    #[test]
    fn tensor_product_matches_hand_expansion() {
        // ((1, 2i) (x) (3, 4)) laid out with the first factor varying slowest.
        let a = StateVector::new(vec![c(1.0, 0.0), c(0.0, 2.0)]).unwrap();
        let b = StateVector::new(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let t = a.tensor(&b);
        let expected = [c(3.0, 0.0), c(4.0, 0.0), c(0.0, 6.0), c(0.0, 8.0)];
        for (i, e) in expected.iter().enumerate() {
            assert!((t.amplitude(i) - e).norm() < 1e-15);
        }
    }

    #[test]
    fn operator_tensor_matches_naive_kron() {
        // Independent quadruple-loop oracle for the kron layout.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = LinearOperator::from_fn(3, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let b = LinearOperator::from_fn(2, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let t = tensor(&a, &b);
        assert_eq!(t.dim(), 6);
        for i1 in 0..3 {
            for i2 in 0..2 {
                for j1 in 0..3 {
                    for j2 in 0..2 {
                        let expected = a.entry(i1, j1) * b.entry(i2, j2);
                        let got = t.entry(i1 * 2 + i2, j1 * 2 + j2);
                        assert!((got - expected).norm() < 1e-15);
                    }
                }
            }
        }
        // Trace is multiplicative.
        let product = a.trace() * b.trace();
        assert!((t.trace() - product).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_recovers_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = DensityOperator::random(3, &mut rng);
        let b = DensityOperator::random(4, &mut rng);
        let joint = a.tensor(&b);
        let first = partial_trace(joint.operator(), (3, 4), Subsystem::First).unwrap();
        let second = partial_trace(joint.operator(), (3, 4), Subsystem::Second).unwrap();
        assert!(first.max_abs_diff(a.operator()) < 1e-12);
        assert!(second.max_abs_diff(b.operator()) < 1e-12);
        // Trace is preserved.
        assert!((first.trace() - joint.operator().trace()).norm() < 1e-12);
        assert!(partial_trace(joint.operator(), (5, 2), Subsystem::First).is_err());
    }

    #[test]
    fn partial_trace_matches_index_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let joint = DensityOperator::random(6, &mut rng);
        let kept = partial_trace(joint.operator(), (2, 3), Subsystem::Second).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = c(0.0, 0.0);
                for k in 0..2 {
                    expected += joint.operator().entry(k * 3 + i, k * 3 + j);
                }
                assert!((kept.entry(i, j) - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn density_constructor_validates() {
        // Non-unit trace.
        let doubled = LinearOperator::identity(2);
        assert!(DensityOperator::new(doubled).is_err());
        // Not Hermitian.
        let skew = LinearOperator::from_fn(2, |i, j| {
            if i == 0 && j == 1 {
                c(0.9, 0.0)
            } else if i == j {
                c(0.5, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!(DensityOperator::new(skew).is_err());
        // Hermitian, unit trace, but indefinite.
        let indefinite = LinearOperator::from_fn(2, |i, j| {
            if i == j {
                c(0.5, 0.0)
            } else {
                c(0.9, 0.0)
            }
        });
        assert!(DensityOperator::new(indefinite).is_err());
        // A legitimate mixed state passes.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let rho = DensityOperator::random(4, &mut rng);
        assert!(DensityOperator::new(rho.operator().clone()).is_ok());
        assert!((rho.operator().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_against_matrix_element_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let rho = DensityOperator::random(5, &mut rng);
        let psi = StateVector::random(5, &mut rng);
        // Oracle: Tr(rho |psi><psi|) via the explicit outer product.
        let projector = psi.outer(&psi);
        let expected = trace_product(rho.operator(), &projector).re;
        let got = fidelity(&rho, &psi).unwrap();
        assert!((got - expected).abs() < 1e-12);
        // Fidelity of a pure state against itself is 1.
        let pure = DensityOperator::from_pure(&psi).unwrap();
        assert!((fidelity(&pure, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uhlmann_fidelity_reduces_to_matrix_element_for_pure_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let psi = StateVector::random(4, &mut rng);
        let pure = DensityOperator::from_pure(&psi).unwrap();
        let sigma = DensityOperator::random(4, &mut rng);
        let direct = fidelity(&sigma, &psi).unwrap();
        let uhlmann = uhlmann_fidelity(&pure, &sigma).unwrap();
        assert!((uhlmann - direct).abs() < 1e-10);
        // Identical states have fidelity 1 and trace distance 0.
        assert!((uhlmann_fidelity(&sigma, &sigma).unwrap() - 1.0).abs() < 1e-10);
        assert!(trace_distance(&sigma, &sigma).unwrap() < 1e-12);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityOperator::from_pure(&StateVector::basis_state(3, 0).unwrap()).unwrap();
        let b = DensityOperator::from_pure(&StateVector::basis_state(3, 1).unwrap()).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn operator_predicates() {
        let id = LinearOperator::identity(3);
        assert!(id.is_hermitian(1e-12));
        assert!(id.is_unitary(1e-12));
        assert!(id.is_projector(1e-12));
        let psi = StateVector::basis_state(3, 1).unwrap();
        let proj = psi.outer(&psi);
        assert!(proj.is_projector(1e-12));
        assert!(!proj.is_unitary(1e-12));
    }

    #[test]
    fn trace_product_matches_full_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = LinearOperator::from_fn(4, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let b = LinearOperator::from_fn(4, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let expected = (&a * &b).trace();
        assert!((trace_product(&a, &b) - expected).norm() < 1e-12);
    }

    #[test]
    fn random_unitary_is_unitary_and_seeded() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(99);
        let mut rng2 = ChaCha8Rng::seed_from_u64(99);
        let u1 = random_unitary(5, &mut rng1);
        let u2 = random_unitary(5, &mut rng2);
        assert!(u1.is_unitary(1e-12));
        assert!(u1.approx_eq(&u2, 1e-15));
        assert!((u1.adjoint().entries().dot(u1.entries()).diag().sum().re - 5.0).abs() < 1e-12);
    }

    #[test]
    fn random_state_is_normalized_and_seeded() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(42);
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let a = StateVector::random(6, &mut rng1);
        let b = StateVector::random(6, &mut rng2);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        assert_eq!(a, b);
    }
}
