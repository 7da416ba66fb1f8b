//! Point sets in `[0,1)^s` and half-open axis-parallel boxes.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// How points on a box face are counted.
///
/// `Open` uses strict inequalities on every face, `Closed` non-strict ones.
/// Evaluating both captures the one-sided limits of the empirical measure at
/// a critical-grid box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxKind {
    /// `[0, y)` — lower corner pinned to the origin.
    Anchored,
    /// `[a, b)` with arbitrary `0 <= a <= b <= 1`.
    Unanchored,
}

/// A half-open axis-parallel box in the unit cube.
#[derive(Debug, Clone, PartialEq)]
pub struct Box {
    pub kind: BoxKind,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Box {
    pub fn anchored(upper: Vec<f64>) -> Result<Self> {
        let lower = vec![0.0; upper.len()];
        Self::new(BoxKind::Anchored, lower, upper)
    }

    pub fn unanchored(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Self::new(BoxKind::Unanchored, lower, upper)
    }

    pub fn new(kind: BoxKind, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::domain("box dimension must be at least 1"));
        }
        for (a, b) in lower.iter().zip(&upper) {
            if !(0.0 <= *a && a <= b && *b <= 1.0) {
                return Err(Error::domain(format!(
                    "box coordinates must satisfy 0 <= {a} <= {b} <= 1"
                )));
            }
        }
        if kind == BoxKind::Anchored && lower.iter().any(|&a| a != 0.0) {
            return Err(Error::domain("anchored box must have an all-zero lower corner"));
        }
        Ok(Box { kind, lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| b - a)
            .product()
    }

    pub fn contains(&self, point: &[f64], mode: CountMode) -> bool {
        debug_assert_eq!(point.len(), self.dim());
        match mode {
            CountMode::Open => point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (a, b))| a < x && x < b),
            CountMode::Closed => point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (a, b))| a <= x && x <= b),
        }
    }

    /// Componentwise containment of `self` in `other` (as point sets this is
    /// `[a,b) subseteq [c,d)`, ignoring degenerate-interval subtleties).
    pub fn subset_of(&self, other: &Box) -> bool {
        self.lower
            .iter()
            .zip(&other.lower)
            .all(|(a, c)| c <= a)
            && self.upper.iter().zip(&other.upper).all(|(b, d)| b <= d)
    }
}

/// An ordered finite sequence of points in `[0,1)^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("point set must contain at least one point"));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::domain("points must have dimension at least 1"));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            for &c in p {
                if !(0.0..1.0).contains(&c) {
                    return Err(Error::domain(format!(
                        "coordinate {c} outside the half-open unit interval [0,1)"
                    )));
                }
            }
        }
        Ok(PointSet { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Reads one point per row, `s` comma-separated decimal coordinates.
    /// Lines starting with `#` are skipped.
    pub fn from_csv_reader(reader: impl BufRead) -> Result<Self> {
        let mut points = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad coordinate {tok:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            points.push(row);
        }
        PointSet::new(points)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|c| format!("{c}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}
