//! Serialization of phase-space grids to CSV and JSON.
//!
//! Both formats list one grid point per row/entry in lexicographic index
//! order, so repeated exports of the same state are byte-identical. CSV is a
//! plain table with a header (`q,p,value` for one system, `q1,p1,q2,p2,value`
//! for a pair) and values printed with 17 significant digits, enough to
//! reconstruct every `f64` exactly. JSON wraps the same rows in a document
//! that also records the grid size and the state description, and
//! round-trips through [`GridExport::from_json`] without loss.
//!
//! Values whose magnitude falls below `1e-10` are reported as exact zeros:
//! at that size they are indistinguishable from rounding noise in the
//! underlying sums, and genuine grid values are integer multiples of
//! `1/(2N)^2` far above it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wigner::{CompositeWignerGrid, WignerGrid};

/// Magnitude below which exported values are reported as exact zeros.
const EXPORT_ZERO_TOLERANCE: f64 = 1e-10;

/// One exported grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridRow {
    Composite { q1: i64, p1: i64, q2: i64, p2: i64, value: f64 },
    Single { q: i64, p: i64, value: f64 },
}

/// Whether an export covers one system or a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Single,
    Composite,
}

/// Provenance recorded alongside exported values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportMetadata {
    /// The state description the grid was computed for.
    pub state: String,
    /// Version of the crate that produced the export.
    pub tool_version: String,
}

/// A full grid of quasi-probability values ready for serialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridExport {
    /// System dimension `N` (the grid itself has side `2N`).
    pub n: usize,
    pub grid_kind: GridKind,
    pub metadata: ExportMetadata,
    pub values: Vec<GridRow>,
}

fn clamp(value: f64) -> f64 {
    if value.abs() < EXPORT_ZERO_TOLERANCE {
        0.0
    } else {
        value
    }
}

impl GridExport {
    /// Packages a single-system grid, rows ordered by `(q, p)`.
    pub fn from_grid(grid: &WignerGrid, state: &str) -> Self {
        let side = 2 * grid.g().n() as i64;
        let mut values = Vec::with_capacity((side * side) as usize);
        for q in 0..side {
            for p in 0..side {
                let pt = grid.g().point(q, p);
                values.push(GridRow::Single { q, p, value: clamp(grid.value(pt)) });
            }
        }
        Self {
            n: grid.g().n(),
            grid_kind: GridKind::Single,
            metadata: ExportMetadata {
                state: state.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
            values,
        }
    }

    /// Packages a two-system grid, rows ordered by `(q1, p1, q2, p2)`.
    pub fn from_composite_grid(grid: &CompositeWignerGrid, state: &str) -> Self {
        let g = grid.g();
        let side = 2 * g.n() as i64;
        let mut values = Vec::with_capacity((side * side * side * side) as usize);
        for q1 in 0..side {
            for p1 in 0..side {
                for q2 in 0..side {
                    for p2 in 0..side {
                        let value = clamp(grid.value(g.point(q1, p1), g.point(q2, p2)));
                        values.push(GridRow::Composite { q1, p1, q2, p2, value });
                    }
                }
            }
        }
        Self {
            n: g.n(),
            grid_kind: GridKind::Composite,
            metadata: ExportMetadata {
                state: state.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
            values,
        }
    }

    /// Renders the grid as CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.grid_kind {
            GridKind::Single => out.push_str("q,p,value\n"),
            GridKind::Composite => out.push_str("q1,p1,q2,p2,value\n"),
        }
        for row in &self.values {
            match row {
                GridRow::Single { q, p, value } => {
                    out.push_str(&format!("{q},{p},{value:.16e}\n"));
                }
                GridRow::Composite { q1, p1, q2, p2, value } => {
                    out.push_str(&format!("{q1},{p1},{q2},{p2},{value:.16e}\n"));
                }
            }
        }
        out
    }

    /// Renders the grid as pretty-printed JSON.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::InvalidState(format!("cannot serialize grid: {e}")))
    }

    /// Parses a JSON export produced by [`GridExport::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidState(format!("cannot parse grid export: {e}")))
    }
}
