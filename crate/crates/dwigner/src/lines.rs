//! Lines in phase space and their projection operators.
//!
//! A line is the solution set of one congruence `a p - b q = c (mod 2N)` on
//! the doubled grid. Summing the phase-point operators along a line always
//! yields a projector, and remarkably the same operator can be written as a
//! character-weighted average of the powers of a single translation:
//!
//! ```text
//! sum_{(q,p) on line} A(q,p)  =  (1/2N) sum_{k=0}^{2N-1} e^{i pi k c / N} T(a,b)^k
//! ```
//!
//! which also shows `T(a,b) P_L = e^{-i pi c / N} P_L`: the line projector
//! lives in a single eigenspace of the translation along its direction. Both
//! routes are implemented here so each can serve as the other's cross-check.
//!
//! The same construction with a single congruence on a two-system product
//! grid gives the "manifolds" whose intersections carve out maximally
//! entangled states; see [`crate::bell`].

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{tensor, LinearOperator};
use crate::phase_space::{GridSpec, PhasePoint};

/// The line `a p - b q = c (mod 2N)` on the doubled grid.
///
/// Coefficients are arbitrary integers; everything is `2N`-periodic. The
/// direction `(a, b)` must not reduce to `(0, 0)` modulo `2N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Line {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }
}

fn check_line(g: &GridSpec, line: &Line) -> Result<()> {
    let side = g.side() as i64;
    if line.a.rem_euclid(side) == 0 && line.b.rem_euclid(side) == 0 {
        return Err(Error::DegenerateCoefficients(format!(
            "line direction ({}, {}) vanishes modulo {side}",
            line.a, line.b
        )));
    }
    Ok(())
}

/// All grid points on the line, position-major. Empty when the congruence
/// has no solution (`gcd(a, b, 2N)` does not divide `c`).
pub fn line_points(g: &GridSpec, line: &Line) -> Result<Vec<PhasePoint>> {
    check_line(g, line)?;
    let side = g.side() as i64;
    let (a, b, c) = (line.a.rem_euclid(side), line.b.rem_euclid(side), line.c.rem_euclid(side));
    let mut points = Vec::new();
    for q in 0..side {
        for p in 0..side {
            if (a * p - b * q - c).rem_euclid(side) == 0 {
                points.push(g.point(q, p));
            }
        }
    }
    Ok(points)
}

/// The line projector as a direct sum of phase-point operators.
pub fn line_projector(g: &GridSpec, line: &Line) -> Result<LinearOperator> {
    let mut acc = LinearOperator::zeros(g.n());
    for pt in line_points(g, line)? {
        acc = &acc + &g.phase_point_op(pt);
    }
    Ok(acc)
}

/// The line projector as a character-weighted average of translation powers.
/// Mathematically identical to [`line_projector`]; kept as an independent
/// construction for cross-checking.
pub fn line_projector_group_average(g: &GridSpec, line: &Line) -> Result<LinearOperator> {
    check_line(g, line)?;
    group_average(g, &g.translation(line.a, line.b), line.c)
}

/// `(1/2N) sum_k phase(k c) T^k` for a translation-like unitary `T` with
/// `T^{2N} = 1`.
fn group_average(g: &GridSpec, t: &LinearOperator, c: i64) -> Result<LinearOperator> {
    let side = g.side();
    let scale = C64::new(1.0 / side as f64, 0.0);
    let mut acc = LinearOperator::zeros(t.dim());
    let mut power = LinearOperator::identity(t.dim());
    for k in 0..side {
        acc = &acc + &power.scaled(g.phase(k as i64 * line_c_reduced(g, c)) * scale);
        power = &power * t;
    }
    Ok(acc)
}

fn line_c_reduced(g: &GridSpec, c: i64) -> i64 {
    c.rem_euclid(g.side() as i64)
}

/// A single congruence `a1 p1 - b1 q1 + a2 p2 - b2 q2 = c (mod 2N)` on the
/// product of two doubled grids. The four direction coefficients must not
/// all vanish modulo `2N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Manifold {
    pub a1: i64,
    pub b1: i64,
    pub a2: i64,
    pub b2: i64,
    pub c: i64,
}

impl Manifold {
    pub fn new(a1: i64, b1: i64, a2: i64, b2: i64, c: i64) -> Self {
        Self { a1, b1, a2, b2, c }
    }
}

fn check_manifold(g: &GridSpec, m: &Manifold) -> Result<()> {
    let side = g.side() as i64;
    if [m.a1, m.b1, m.a2, m.b2].iter().all(|x| x.rem_euclid(side) == 0) {
        return Err(Error::DegenerateCoefficients(format!(
            "manifold direction ({}, {}, {}, {}) vanishes modulo {side}",
            m.a1, m.b1, m.a2, m.b2
        )));
    }
    Ok(())
}

/// All point pairs on the manifold, ordered with the first system's
/// coordinates varying slowest.
pub fn manifold_points(g: &GridSpec, m: &Manifold) -> Result<Vec<(PhasePoint, PhasePoint)>> {
    check_manifold(g, m)?;
    let side = g.side() as i64;
    let mut points = Vec::new();
    for q1 in 0..side {
        for p1 in 0..side {
            let partial = m.a1 * p1 - m.b1 * q1 - m.c;
            for q2 in 0..side {
                for p2 in 0..side {
                    if (partial + m.a2 * p2 - m.b2 * q2).rem_euclid(side) == 0 {
                        points.push((g.point(q1, p1), g.point(q2, p2)));
                    }
                }
            }
        }
    }
    Ok(points)
}

/// The manifold projector `sum_{(a1,a2) on M} A(a1) (x) A(a2)`, acting on
/// the `N^2`-dimensional two-system space.
pub fn manifold_projector(g: &GridSpec, m: &Manifold) -> Result<LinearOperator> {
    let points = manifold_points(g, m)?;
    let mut acc = LinearOperator::zeros(g.n() * g.n());
    // Group terms by the first point so each A(pt1) is built once.
    let mut index = 0;
    while index < points.len() {
        let pt1 = points[index].0;
        let a1 = g.phase_point_op(pt1);
        let mut partial = LinearOperator::zeros(g.n());
        while index < points.len() && points[index].0 == pt1 {
            partial = &partial + &g.phase_point_op(points[index].1);
            index += 1;
        }
        acc = &acc + &tensor(&a1, &partial);
    }
    Ok(acc)
}

/// The manifold projector as a character-weighted average of powers of the
/// product translation `T(a1, b1) (x) T(a2, b2)`. Mathematically identical
/// to [`manifold_projector`].
pub fn manifold_projector_group_average(g: &GridSpec, m: &Manifold) -> Result<LinearOperator> {
    check_manifold(g, m)?;
    let t = tensor(&g.translation(m.a1, m.b1), &g.translation(m.a2, m.b2));
    group_average(g, &t, m.c)
}

/// The eigenvalue of the defining translation on the line projector:
/// `T(a,b) P = e^{-i pi c / N} P` (and likewise for manifolds).
pub fn translation_eigenvalue(g: &GridSpec, c: i64) -> C64 {
    g.phase(-line_c_reduced(g, c))
}
