//! Textual state descriptions for the command-line tools.
//!
//! A state spec is one of
//!
//! - `pos:q0` — a position eigenstate
//! - `mom:k0` — a momentum eigenstate
//! - `bell:q,p` — an entangled basis state (two systems)
//! - `random:seed` — a normalized pure state with seeded standard complex
//!   Gaussian amplitudes
//! - `file:path` — a JSON file holding either a pure state as an array of
//!   `[re, im]` pairs or a density matrix as a nested array of such pairs
//!
//! Parsing is pure syntax; [`StateSpec::realize`] turns the description into
//! a density matrix for a single system (dimension `N`) or a pair (dimension
//! `N^2`). On a pair, `pos:i` means the product position state
//! `|i / N> (x) |i mod N>` with `0 <= i < N^2`, and `mom:k` the analogous
//! product of momentum states.

use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::bell::{bell_state, BellIndex};
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, StateVector};
use crate::phase_space::GridSpec;
use num_complex::Complex64 as C64;

/// A parsed state description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpec {
    Position { q0: i64 },
    Momentum { k0: i64 },
    Bell { q: i64, p: i64 },
    Random { seed: u64 },
    File { path: PathBuf },
}

/// Which system a state description should be realized on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSystem {
    /// One system, dimension `N`.
    Single,
    /// A pair, dimension `N^2`.
    Composite,
    /// Decide from the description: `bell` is composite, `pos`/`mom`/`random`
    /// are single, and files choose by their dimension.
    Auto,
}

/// A realized state plus the kind of system it lives on.
#[derive(Debug, Clone)]
pub struct RealizedState {
    pub rho: DensityOperator,
    /// True when the state lives on a pair (dimension `N^2`).
    pub composite: bool,
    /// Human-readable echo of the description string, for export metadata.
    pub description: String,
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidState(format!("state spec `{s}` lacks a `kind:` prefix")))?;
        let parse_int = |v: &str, what: &str| -> Result<i64> {
            v.trim().parse::<i64>().map_err(|_| {
                Error::InvalidState(format!("state spec `{s}`: `{v}` is not an integer {what}"))
            })
        };
        match kind {
            "pos" => Ok(Self::Position { q0: parse_int(rest, "position label")? }),
            "mom" => Ok(Self::Momentum { k0: parse_int(rest, "momentum label")? }),
            "bell" => {
                let (q, p) = rest.split_once(',').ok_or_else(|| {
                    Error::InvalidState(format!(
                        "state spec `{s}`: bell takes two comma-separated indices"
                    ))
                })?;
                Ok(Self::Bell { q: parse_int(q, "index")?, p: parse_int(p, "index")? })
            }
            "random" => {
                let seed = rest.trim().parse::<u64>().map_err(|_| {
                    Error::InvalidState(format!("state spec `{s}`: `{rest}` is not a valid seed"))
                })?;
                Ok(Self::Random { seed })
            }
            "file" => {
                if rest.is_empty() {
                    return Err(Error::InvalidState(format!("state spec `{s}`: empty path")));
                }
                Ok(Self::File { path: PathBuf::from(rest) })
            }
            other => Err(Error::InvalidState(format!(
                "state spec `{s}`: unknown kind `{other}` (expected pos, mom, bell, random or file)"
            ))),
        }
    }
}

impl std::fmt::Display for StateSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Position { q0 } => write!(f, "pos:{q0}"),
            Self::Momentum { k0 } => write!(f, "mom:{k0}"),
            Self::Bell { q, p } => write!(f, "bell:{q},{p}"),
            Self::Random { seed } => write!(f, "random:{seed}"),
            Self::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

/// On-disk state payload: a pure amplitude vector or a density matrix.
#[derive(Deserialize)]
#[serde(untagged)]
enum FilePayload {
    Pure(Vec<[f64; 2]>),
    Density(Vec<Vec<[f64; 2]>>),
}

impl StateSpec {
    /// Resolves the description into a density matrix on the requested system.
    pub fn realize(&self, g: &GridSpec, target: TargetSystem) -> Result<RealizedState> {
        let n = g.n();
        let description = self.to_string();
        let composite = match (target, self) {
            (TargetSystem::Single, Self::Bell { .. }) => {
                return Err(Error::DimensionMismatch(
                    "bell states live on a pair of systems, not a single one".into(),
                ))
            }
            (TargetSystem::Single, _) => false,
            (TargetSystem::Composite, _) => true,
            (TargetSystem::Auto, Self::Bell { .. }) => true,
            (TargetSystem::Auto, Self::File { path }) => {
                let dim = read_file_payload(path)?.1;
                if dim == n {
                    false
                } else if dim == n * n {
                    true
                } else {
                    return Err(Error::DimensionMismatch(format!(
                        "file state has dimension {dim}; expected {n} or {}",
                        n * n
                    )));
                }
            }
            (TargetSystem::Auto, _) => false,
        };
        let dim = if composite { n * n } else { n };

        let rho = match self {
            Self::Position { q0 } => {
                let q0 = q0.rem_euclid(dim as i64);
                let psi = if composite {
                    let first = g.position_state(q0 / n as i64);
                    let second = g.position_state(q0 % n as i64);
                    first.tensor(&second)
                } else {
                    g.position_state(q0)
                };
                DensityOperator::from_pure(&psi)?
            }
            Self::Momentum { k0 } => {
                let k0 = k0.rem_euclid(dim as i64);
                let psi = if composite {
                    let first = g.momentum_state(k0 / n as i64);
                    let second = g.momentum_state(k0 % n as i64);
                    first.tensor(&second)
                } else {
                    g.momentum_state(k0)
                };
                DensityOperator::from_pure(&psi)?
            }
            Self::Bell { q, p } => {
                DensityOperator::from_pure(&bell_state(g, BellIndex::new(g, *q, *p)))?
            }
            Self::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                DensityOperator::from_pure(&StateVector::random(dim, &mut rng))?
            }
            Self::File { path } => {
                let (payload, file_dim) = read_file_payload(path)?;
                if file_dim != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "file state has dimension {file_dim}; expected {dim}"
                    )));
                }
                realize_payload(payload)?
            }
        };
        Ok(RealizedState { rho, composite, description })
    }
}

fn read_file_payload(path: &PathBuf) -> Result<(FilePayload, usize)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidState(format!("cannot read {}: {e}", path.display())))?;
    let payload: FilePayload = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidState(format!("{} is not a valid state file: {e}", path.display()))
    })?;
    let dim = match &payload {
        FilePayload::Pure(v) => v.len(),
        FilePayload::Density(rows) => rows.len(),
    };
    if dim == 0 {
        return Err(Error::InvalidState(format!("{} holds an empty state", path.display())));
    }
    Ok((payload, dim))
}

fn realize_payload(payload: FilePayload) -> Result<DensityOperator> {
    match payload {
        FilePayload::Pure(pairs) => {
            let amplitudes: Vec<C64> = pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect();
            let psi = StateVector::new(amplitudes)?;
            if (psi.norm() - 1.0).abs() > crate::TOLERANCE {
                return Err(Error::InvalidState(format!(
                    "pure state in file has norm {:.12}, expected 1",
                    psi.norm()
                )));
            }
            DensityOperator::from_pure(&psi)
        }
        FilePayload::Density(rows) => {
            let dim = rows.len();
            for (i, row) in rows.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::InvalidState(format!(
                        "density matrix row {i} has {} entries, expected {dim}",
                        row.len()
                    )));
                }
            }
            let entries = ndarray::Array2::from_shape_fn((dim, dim), |(i, j)| {
                C64::new(rows[i][j][0], rows[i][j][1])
            });
            DensityOperator::new(crate::linalg::LinearOperator::new(entries)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::{composite_wigner_point, wigner_point};
    use crate::TOLERANCE;

    #[test]
    fn parsing_accepts_the_documented_forms() {
        assert_eq!("pos:1".parse::<StateSpec>().unwrap(), StateSpec::Position { q0: 1 });
        assert_eq!("mom:-2".parse::<StateSpec>().unwrap(), StateSpec::Momentum { k0: -2 });
        assert_eq!("bell:1,0".parse::<StateSpec>().unwrap(), StateSpec::Bell { q: 1, p: 0 });
        assert_eq!("random:42".parse::<StateSpec>().unwrap(), StateSpec::Random { seed: 42 });
        assert_eq!(
            "file:/tmp/x.json".parse::<StateSpec>().unwrap(),
            StateSpec::File { path: PathBuf::from("/tmp/x.json") }
        );
    }

    #[test]
    fn parsing_rejects_malformed_specs() {
        for bad in ["", "pos", "pos:x", "bell:1", "bell:a,b", "random:-1", "file:", "nope:3"] {
            assert!(bad.parse::<StateSpec>().is_err(), "`{bad}` should not parse");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["pos:1", "mom:0", "bell:2,1", "random:7", "file:states/a.json"] {
            let spec: StateSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn single_realizations_match_library_states() {
        let g = GridSpec::new(3).unwrap();
        let spec: StateSpec = "pos:1".parse().unwrap();
        let realized = spec.realize(&g, TargetSystem::Auto).unwrap();
        assert!(!realized.composite);
        let expected = DensityOperator::from_pure(&g.position_state(1)).unwrap();
        assert!(realized.rho.operator().approx_eq(expected.operator(), 1e-14));

        let spec: StateSpec = "mom:2".parse().unwrap();
        let realized = spec.realize(&g, TargetSystem::Single).unwrap();
        let expected = DensityOperator::from_pure(&g.momentum_state(2)).unwrap();
        assert!(realized.rho.operator().approx_eq(expected.operator(), 1e-14));
    }

    #[test]
    fn bell_realizations_are_composite_only() {
        let g = GridSpec::new(2).unwrap();
        let spec: StateSpec = "bell:0,0".parse().unwrap();
        let auto = spec.realize(&g, TargetSystem::Auto).unwrap();
        assert!(auto.composite);
        assert_eq!(auto.rho.dim(), 4);
        assert!(spec.realize(&g, TargetSystem::Single).is_err());
        // The realized state has the expected Wigner value at the origin.
        let w = composite_wigner_point(&g, &auto.rho, g.point(0, 0), g.point(0, 0)).unwrap();
        assert!((w - 1.0 / 16.0).abs() < TOLERANCE);
    }

    #[test]
    fn composite_product_labels_factor_as_documented() {
        let g = GridSpec::new(2).unwrap();
        let spec: StateSpec = "pos:3".parse().unwrap();
        let realized = spec.realize(&g, TargetSystem::Composite).unwrap();
        // 3 = 1 * 2 + 1 -> |1> (x) |1>.
        let expected = DensityOperator::from_pure(
            &g.position_state(1).tensor(&g.position_state(1)),
        )
        .unwrap();
        assert!(realized.rho.operator().approx_eq(expected.operator(), 1e-14));
    }

    #[test]
    fn random_realizations_are_seed_deterministic() {
        let g = GridSpec::new(4).unwrap();
        let spec: StateSpec = "random:9".parse().unwrap();
        let a = spec.realize(&g, TargetSystem::Single).unwrap();
        let b = spec.realize(&g, TargetSystem::Single).unwrap();
        assert!(a.rho.operator().approx_eq(b.rho.operator(), 0.0_f64.max(1e-16)));
        let other = "random:10".parse::<StateSpec>().unwrap();
        let c = other.realize(&g, TargetSystem::Single).unwrap();
        assert!(a.rho.operator().max_abs_diff(c.rho.operator()) > 1e-3);
        // A composite target draws a dimension-N^2 state.
        let d = spec.realize(&g, TargetSystem::Composite).unwrap();
        assert_eq!(d.rho.dim(), 16);
    }

    #[test]
    fn file_states_round_trip_and_validate() {
        let dir = std::env::temp_dir().join("dwigner-state-spec-tests");
        std::fs::create_dir_all(&dir).unwrap();

        // A pure state for N = 2.
        let pure_path = dir.join("pure.json");
        let amp = 1.0 / 2.0_f64.sqrt();
        std::fs::write(&pure_path, format!("[[{amp},0.0],[0.0,{amp}]]")).unwrap();
        let spec = StateSpec::File { path: pure_path.clone() };
        let g = GridSpec::new(2).unwrap();
        let realized = spec.realize(&g, TargetSystem::Auto).unwrap();
        assert!(!realized.composite);
        assert!((realized.rho.purity() - 1.0).abs() < 1e-12);
        let w = wigner_point(&g, &realized.rho, g.point(0, 0)).unwrap();
        assert!(w.is_finite());

        // A density matrix (maximally mixed, N = 2).
        let mixed_path = dir.join("mixed.json");
        std::fs::write(&mixed_path, "[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]").unwrap();
        let spec = StateSpec::File { path: mixed_path };
        let realized = spec.realize(&g, TargetSystem::Auto).unwrap();
        assert!((realized.rho.purity() - 0.5).abs() < 1e-12);

        // Unnormalized pure input is refused.
        let bad_path = dir.join("bad.json");
        std::fs::write(&bad_path, "[[1.0,0.0],[1.0,0.0]]").unwrap();
        let spec = StateSpec::File { path: bad_path };
        assert!(spec.realize(&g, TargetSystem::Auto).is_err());

        // Dimension 3 state on an N = 2 grid is refused.
        let dim3_path = dir.join("dim3.json");
        std::fs::write(&dim3_path, "[[1.0,0.0],[0.0,0.0],[0.0,0.0]]").unwrap();
        let spec = StateSpec::File { path: dim3_path };
        assert!(spec.realize(&g, TargetSystem::Auto).is_err());

        // Missing file errors out cleanly.
        let spec = StateSpec::File { path: dir.join("missing.json") };
        assert!(spec.realize(&g, TargetSystem::Auto).is_err());

        // Non-square density matrix is refused.
        let ragged_path = dir.join("ragged.json");
        std::fs::write(&ragged_path, "[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0]]]").unwrap();
        let spec = StateSpec::File { path: ragged_path };
        assert!(spec.realize(&g, TargetSystem::Auto).is_err());
    }
}
