//! Teleportation of an `N`-state system through the standard entangled
//! pairing, simulated at the operator level and mirrored in phase space.
//!
//! Protocol: the input state `rho` occupies system 1; systems 2 and 3 share
//! `|Theta_00>`. A measurement of systems 1 and 2 in the entangled basis
//! yields an outcome `beta = (q, p)` — always with probability `1/N^2`,
//! whatever the input — and leaves system 3 in `T(beta)^dag rho T(beta)`.
//! Applying the translation `T(beta)` recovers `rho` exactly.
//!
//! In phase space the same story is a permutation with signs: conditioned
//! on `beta`, the Wigner function of system 3 is the input Wigner function
//! rigidly displaced by `2 beta`, and the kernel implementing that map on
//! the fundamental subgrid is computed here both from its defining sum over
//! the entangled basis's Wigner functions ([`z_kernel`]) and in closed form
//! ([`z_kernel_closed_form`]).

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bell::{all_bell_indices, bell_state, bell_wigner, BellIndex};
use crate::error::{Error, Result};
use crate::linalg::{uhlmann_fidelity, DensityOperator, LinearOperator, StateVector};
use crate::phase_space::{GridSpec, PhasePoint};
use crate::wigner::{extend_subgrid, WignerGrid};

/// `rho (x) |Theta_00><Theta_00|`: input on system 1, the shared resource on
/// systems 2 and 3. Dimension `N^3`.
pub fn prepare_initial(g: &GridSpec, rho_in: &DensityOperator) -> Result<DensityOperator> {
    if rho_in.dim() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "input state of dimension {} for N = {}",
            rho_in.dim(),
            g.n()
        )));
    }
    let theta0 = bell_state(g, BellIndex::new(g, 0, 0));
    let resource = DensityOperator::from_pure(&theta0)?;
    Ok(rho_in.tensor(&resource))
}

/// `<theta| rho_123 |theta>` taken over systems 1 and 2 only: the
/// unnormalized post-measurement operator on system 3.
fn project_first_two(
    g: &GridSpec,
    rho123: &DensityOperator,
    theta: &StateVector,
) -> LinearOperator {
    let n = g.n();
    // The measurement vector is sparse (N of N^2 amplitudes); collect its
    // support once.
    let support: Vec<(usize, C64)> = theta
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm_sqr() > 0.0)
        .map(|(i, z)| (i, *z))
        .collect();
    LinearOperator::from_fn(n, |k, l| {
        let mut entry = C64::new(0.0, 0.0);
        for &(i, ci) in &support {
            for &(j, cj) in &support {
                entry += ci.conj() * cj * rho123.operator().entry(i * n + k, j * n + l);
            }
        }
        entry
    })
}

fn check_tripartite(g: &GridSpec, rho123: &DensityOperator) -> Result<()> {
    let dim = g.n() * g.n() * g.n();
    if rho123.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "protocol state of dimension {} where N^3 = {dim} was expected",
            rho123.dim()
        )));
    }
    Ok(())
}

/// The probability of each measurement outcome, in [`all_bell_indices`]
/// order. For the standard resource these are all exactly `1/N^2`.
pub fn outcome_probabilities(g: &GridSpec, rho123: &DensityOperator) -> Result<Vec<f64>> {
    check_tripartite(g, rho123)?;
    all_bell_indices(g)
        .map(|beta| {
            let projected = project_first_two(g, rho123, &bell_state(g, beta));
            let p = projected.trace();
            if p.re < -1e-12 || p.im.abs() > 1e-12 {
                return Err(Error::InvalidState(format!(
                    "outcome probability {p} for beta = {beta}"
                )));
            }
            Ok(p.re.max(0.0))
        })
        .collect()
}

/// Post-measurement state of system 3 for outcome `beta`, together with the
/// outcome's probability.
pub fn conditional_state(
    g: &GridSpec,
    rho123: &DensityOperator,
    beta: BellIndex,
) -> Result<(f64, DensityOperator)> {
    check_tripartite(g, rho123)?;
    let projected = project_first_two(g, rho123, &bell_state(g, beta));
    let p = projected.trace().re;
    if p <= 1e-300 {
        return Err(Error::InvalidState(format!(
            "outcome beta = {beta} has vanishing probability"
        )));
    }
    let normalized = projected.scaled(C64::new(1.0 / p, 0.0));
    Ok((p, DensityOperator::new(normalized)?))
}

/// Samples one measurement outcome and returns it with its probability and
/// the conditional state of system 3.
pub fn bell_measure<R: Rng + ?Sized>(
    g: &GridSpec,
    rho123: &DensityOperator,
    rng: &mut R,
) -> Result<(BellIndex, f64, DensityOperator)> {
    let probabilities = outcome_probabilities(g, rho123)?;
    let draw: f64 = rng.gen();
    let mut cumulative = 0.0;
    let mut chosen = None;
    for (beta, &p) in all_bell_indices(g).zip(probabilities.iter()) {
        cumulative += p;
        if draw < cumulative {
            chosen = Some((beta, p));
            break;
        }
    }
    // Guard against cumulative rounding just below 1.
    let (beta, p) = chosen.unwrap_or_else(|| {
        let last = all_bell_indices(g).last().expect("nonempty basis");
        (last, probabilities[probabilities.len() - 1])
    });
    let (_, state) = conditional_state(g, rho123, beta)?;
    Ok((beta, p, state))
}

/// The correction `T(q, p)` that the receiver applies for outcome `beta`.
pub fn recovery_operator(g: &GridSpec, beta: BellIndex) -> LinearOperator {
    g.translation(beta.q() as i64, beta.p() as i64)
}

/// Applies the recovery translation: `T(beta) rho T(beta)^dag`.
pub fn recover(g: &GridSpec, conditional: &DensityOperator, beta: BellIndex) -> DensityOperator {
    let t = recovery_operator(g, beta);
    let corrected = &(&t * conditional.operator()) * &t.adjoint();
    DensityOperator::from_operator_unchecked(corrected)
}

/// One complete protocol run.
#[derive(Debug, Clone)]
pub struct TeleportRun {
    /// The state handed to system 1.
    pub input: DensityOperator,
    /// The sampled measurement outcome.
    pub outcome: BellIndex,
    /// Probability of that outcome (always `1/N^2` here).
    pub outcome_probability: f64,
    /// System 3 after the measurement, before correction.
    pub conditional: DensityOperator,
    /// System 3 after the correction.
    pub recovered: DensityOperator,
    /// Fidelity between input and recovered state (1 up to rounding).
    pub fidelity: f64,
}

/// Runs the whole protocol once with a seeded measurement draw.
pub fn teleport(g: &GridSpec, rho_in: &DensityOperator, seed: u64) -> Result<TeleportRun> {
    let rho123 = prepare_initial(g, rho_in)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (outcome, outcome_probability, conditional) = bell_measure(g, &rho123, &mut rng)?;
    let recovered = recover(g, &conditional, outcome);
    let fidelity = uhlmann_fidelity(rho_in, &recovered)?;
    Ok(TeleportRun { input: rho_in.clone(), outcome, outcome_probability, conditional, recovered, fidelity })
}

/// The phase-space propagation kernel conditioned on outcome `beta`, as an
/// `N^2 x N^2` matrix over fundamental-subgrid points (row: target point on
/// system 3, column: source point on system 1, both indexed `q N + p`).
#[derive(Debug, Clone, PartialEq)]
pub struct ZKernel {
    g: GridSpec,
    beta: BellIndex,
    values: Array2<f64>,
}

impl ZKernel {
    pub fn g(&self) -> &GridSpec {
        &self.g
    }

    pub fn beta(&self) -> BellIndex {
        self.beta
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    /// Kernel entry for subgrid points `pt3` (target) and `pt1` (source).
    pub fn value(&self, pt3: PhasePoint, pt1: PhasePoint) -> f64 {
        let n = self.g.n();
        self.values[(pt3.q() * n + pt3.p(), pt1.q() * n + pt1.p())]
    }

    /// Propagates an input Wigner function through the kernel:
    /// `W_3(a3) = sum_{a1 in subgrid} Z(a3, a1) W_1(a1)`, extended from the
    /// subgrid back to the full doubled grid.
    pub fn apply(&self, input: &WignerGrid) -> Result<WignerGrid> {
        if input.g() != &self.g {
            return Err(Error::DimensionMismatch(format!(
                "kernel for N = {} applied to a grid for N = {}",
                self.g.n(),
                input.g().n()
            )));
        }
        let n = self.g.n();
        let mut sub = Array2::zeros((n, n));
        for pt3 in self.g.subgrid_points() {
            let mut acc = 0.0;
            for pt1 in self.g.subgrid_points() {
                acc += self.value(pt3, pt1) * input.value(pt1);
            }
            sub[(pt3.q(), pt3.p())] = acc;
        }
        Ok(extend_subgrid(&self.g, &sub))
    }
}

/// The kernel from its defining sum: contract the resource's Wigner function
/// with the measured pairing's over the shared subgrid coordinate,
/// `Z(a3, a1) = (2N)^4 sum_{a2 in subgrid} W_00(a3, a2) W_beta(a1, a2)`.
pub fn z_kernel(g: &GridSpec, beta: BellIndex) -> ZKernel {
    let n = g.n();
    let beta0 = BellIndex::new(g, 0, 0);
    let side = 2.0 * n as f64;
    let scale = side * side * side * side;
    let mut values = Array2::zeros((n * n, n * n));
    for pt3 in g.subgrid_points() {
        for pt1 in g.subgrid_points() {
            let mut acc = 0.0;
            for pt2 in g.subgrid_points() {
                acc += bell_wigner(g, beta0, pt3, pt2) * bell_wigner(g, beta, pt1, pt2);
            }
            values[(pt3.q() * n + pt3.p(), pt1.q() * n + pt1.p())] = scale * acc;
        }
    }
    ZKernel { g: *g, beta, values }
}

/// The same kernel in closed form: a signed permutation. The target point
/// `a3` pulls its value from the subgrid representative of `a3 + 2 beta`,
/// weighted by the sign relating that representative to the displaced point.
pub fn z_kernel_closed_form(g: &GridSpec, beta: BellIndex) -> ZKernel {
    let n = g.n();
    let mut values = Array2::zeros((n * n, n * n));
    for pt3 in g.subgrid_points() {
        let displaced =
            g.point(pt3.q() as i64 + 2 * beta.q() as i64, pt3.p() as i64 + 2 * beta.p() as i64);
        let (rep, sign) = g.subgrid_rep(displaced);
        values[(pt3.q() * n + pt3.p(), rep.q() * n + rep.p())] = sign;
    }
    ZKernel { g: *g, beta, values }
}
