//! Exact star and extreme discrepancy via critical-grid enumeration, plus a
//! randomized lower-bound estimator for instances beyond the exact budget.
//!
//! The supremum over boxes with real endpoints is attained as a maximum over
//! per-coordinate grids built from the point coordinates plus `{1}` (anchored)
//! or `{0, 1}` (unanchored); evaluating both open and closed counts at each
//! grid box captures the one-sided limits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Box, CountMode, PointSet};

const STAR_BUDGET: f64 = 1e8;
const EXTREME_BUDGET: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyKind {
    Star,
    Extreme,
}

impl std::str::FromStr for DiscrepancyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(DiscrepancyKind::Star),
            "extreme" => Ok(DiscrepancyKind::Extreme),
            other => Err(Error::Parse(format!("unknown discrepancy kind {other:?}"))),
        }
    }
}

/// A discrepancy value together with the box that attains (exact) or
/// certifies a lower bound on (estimate) it.
#[derive(Debug, Clone)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub witness: Box,
    pub exact: bool,
}

/// Signed local discrepancy `count/N - volume` of one box.
pub fn local_discrepancy(points: &PointSet, bx: &Box, mode: CountMode) -> Result<f64> {
    if bx.dim() != points.dim() {
        return Err(Error::DimensionMismatch {
            expected: points.dim(),
            got: bx.dim(),
        });
    }
    let count = points
        .points()
        .iter()
        .filter(|p| bx.contains(p, mode))
        .count();
    Ok(count as f64 / points.len() as f64 - bx.volume())
}

/// Per-coordinate critical grid: the point coordinates plus the given extras.
fn critical_grids(points: &PointSet, extras: &[f64]) -> Vec<Vec<f64>> {
    (0..points.dim())
        .map(|j| {
            let mut g: Vec<f64> = points.points().iter().map(|p| p[j]).collect();
            g.extend_from_slice(extras);
            g.sort_by(|a, b| a.partial_cmp(b).unwrap());
            g.dedup();
            g
        })
        .collect()
}

/// Exact star discrepancy; budget guard `(N+1)^s <= 1e8`.
pub fn star_discrepancy_exact(points: &PointSet) -> Result<DiscrepancyResult> {
    let n = points.len();
    let s = points.dim();
    if ((n + 1) as f64).powi(s as i32) > STAR_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "(N+1)^s = ({})^{s} exceeds 1e8; use discrepancy_lower_bound",
            n + 1
        )));
    }
    let grids = critical_grids(points, &[1.0]);
    let nf = n as f64;

    // points pre-sorted by last coordinate so per-prefix filtering keeps order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        points.points()[a][s - 1]
            .partial_cmp(&points.points()[b][s - 1])
            .unwrap()
    });

    let mut best = f64::NEG_INFINITY;
    let mut witness_upper = vec![1.0; s];

    let mut idx = vec![0usize; s - 1];
    let mut open_last = Vec::with_capacity(n);
    let mut closed_last = Vec::with_capacity(n);
    loop {
        let vol_pre: f64 = idx.iter().enumerate().map(|(j, &i)| grids[j][i]).product();

        open_last.clear();
        closed_last.clear();
        for &pi in &order {
            let p = &points.points()[pi];
            let mut open = true;
            let mut closed = true;
            for (j, &i) in idx.iter().enumerate() {
                let y = grids[j][i];
                open &= p[j] < y;
                closed &= p[j] <= y;
                if !closed {
                    break;
                }
            }
            if open {
                open_last.push(p[s - 1]);
            }
            if closed {
                closed_last.push(p[s - 1]);
            }
        }

        // sweep the last coordinate ascending
        let (mut po, mut pc) = (0usize, 0usize);
        for &g in &grids[s - 1] {
            while po < open_last.len() && open_last[po] < g {
                po += 1;
            }
            while pc < closed_last.len() && closed_last[pc] <= g {
                pc += 1;
            }
            let vol = vol_pre * g;
            let d = (vol - po as f64 / nf).max(pc as f64 / nf - vol);
            if d > best {
                best = d;
                for (j, &i) in idx.iter().enumerate() {
                    witness_upper[j] = grids[j][i];
                }
                witness_upper[s - 1] = g;
            }
        }

        // odometer over the first s-1 grids, lexicographic
        let mut j = s - 1;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < grids[j].len() {
                break;
            }
            idx[j] = 0;
        }
        if s == 1 || (j == 0 && idx[0] == 0) {
            break;
        }
    }

    Ok(DiscrepancyResult {
        value: best,
        witness: Box::anchored(witness_upper)?,
        exact: true,
    })
}

/// Exact extreme (unanchored) discrepancy; budget guard `(N+2)^(2s) <= 1e8`.
pub fn extreme_discrepancy_exact(points: &PointSet) -> Result<DiscrepancyResult> {
    let n = points.len();
    let s = points.dim();
    if ((n + 2) as f64).powi(2 * s as i32) > EXTREME_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "(N+2)^(2s) = ({})^{} exceeds 1e8; use discrepancy_lower_bound",
            n + 2,
            2 * s
        )));
    }
    let grids = critical_grids(points, &[0.0, 1.0]);
    let nf = n as f64;

    // per-prefix-coordinate pair list (u <= v), lexicographic
    let pairs: Vec<Vec<(usize, usize)>> = grids[..s - 1]
        .iter()
        .map(|g| {
            let mut v = Vec::new();
            for u in 0..g.len() {
                for w in u..g.len() {
                    v.push((u, w));
                }
            }
            v
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        points.points()[a][s - 1]
            .partial_cmp(&points.points()[b][s - 1])
            .unwrap()
    });

    let last = &grids[s - 1];
    let m = last.len();
    let mut best = f64::NEG_INFINITY;
    let mut witness_lower = vec![0.0; s];
    let mut witness_upper = vec![1.0; s];

    let mut idx = vec![0usize; s - 1];
    let mut open_last = Vec::with_capacity(n);
    let mut closed_last = Vec::with_capacity(n);
    // cumulative counts at grid values: strictly-below and at-or-below
    let mut lt_open = vec![0usize; m];
    let mut le_open = vec![0usize; m];
    let mut lt_closed = vec![0usize; m];
    let mut le_closed = vec![0usize; m];
    loop {
        let mut vol_pre = 1.0;
        for (j, &pi) in idx.iter().enumerate() {
            let (u, v) = pairs[j][pi];
            vol_pre *= grids[j][v] - grids[j][u];
        }

        open_last.clear();
        closed_last.clear();
        for &p_idx in &order {
            let p = &points.points()[p_idx];
            let mut open = true;
            let mut closed = true;
            for (j, &pi) in idx.iter().enumerate() {
                let (u, v) = pairs[j][pi];
                let (a, b) = (grids[j][u], grids[j][v]);
                open &= a < p[j] && p[j] < b;
                closed &= a <= p[j] && p[j] <= b;
                if !closed {
                    break;
                }
            }
            if open {
                open_last.push(p[s - 1]);
            }
            if closed {
                closed_last.push(p[s - 1]);
            }
        }

        let fill = |vals: &[f64], lt: &mut [usize], le: &mut [usize]| {
            let (mut a, mut b) = (0usize, 0usize);
            for (t, &g) in last.iter().enumerate() {
                while a < vals.len() && vals[a] < g {
                    a += 1;
                }
                while b < vals.len() && vals[b] <= g {
                    b += 1;
                }
                lt[t] = a;
                le[t] = b;
            }
        };
        fill(&open_last, &mut lt_open, &mut le_open);
        fill(&closed_last, &mut lt_closed, &mut le_closed);

        for u in 0..m {
            for v in u..m {
                let vol = vol_pre * (last[v] - last[u]);
                let open = lt_open[v].saturating_sub(le_open[u]);
                let closed = le_closed[v] - lt_closed[u];
                let d = (vol - open as f64 / nf).max(closed as f64 / nf - vol);
                if d > best {
                    best = d;
                    for (j, &pi) in idx.iter().enumerate() {
                        let (a, b) = pairs[j][pi];
                        witness_lower[j] = grids[j][a];
                        witness_upper[j] = grids[j][b];
                    }
                    witness_lower[s - 1] = last[u];
                    witness_upper[s - 1] = last[v];
                }
            }
        }

        let mut j = s - 1;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < pairs[j].len() {
                break;
            }
            idx[j] = 0;
        }
        if s == 1 || (j == 0 && idx[0] == 0) {
            break;
        }
    }

    Ok(DiscrepancyResult {
        value: best,
        witness: Box::unanchored(witness_lower, witness_upper)?,
        exact: true,
    })
}

/// Randomized lower bound: the max local discrepancy (both count modes,
/// absolute value) over `trials` random boxes snapped to the critical grids.
pub fn discrepancy_lower_bound(
    points: &PointSet,
    kind: DiscrepancyKind,
    trials: u64,
    rng_seed: u64,
) -> Result<DiscrepancyResult> {
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let s = points.dim();
    let grids = match kind {
        DiscrepancyKind::Star => critical_grids(points, &[1.0]),
        DiscrepancyKind::Extreme => critical_grids(points, &[0.0, 1.0]),
    };
    let snap = |g: &[f64], x: f64| -> f64 {
        // nearest grid value
        let i = g.partition_point(|&v| v < x);
        if i == 0 {
            g[0]
        } else if i == g.len() {
            g[i - 1]
        } else if x - g[i - 1] <= g[i] - x {
            g[i - 1]
        } else {
            g[i]
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut best = f64::NEG_INFINITY;
    let mut witness: Option<Box> = None;
    for _ in 0..trials {
        let bx = match kind {
            DiscrepancyKind::Star => {
                let upper: Vec<f64> = (0..s)
                    .map(|j| snap(&grids[j], rng.gen::<f64>()))
                    .collect();
                Box::anchored(upper)?
            }
            DiscrepancyKind::Extreme => {
                let mut lower = Vec::with_capacity(s);
                let mut upper = Vec::with_capacity(s);
                for j in 0..s {
                    let (x, y) = (rng.gen::<f64>(), rng.gen::<f64>());
                    let (a, b) = if x <= y { (x, y) } else { (y, x) };
                    let (mut a, mut b) = (snap(&grids[j], a), snap(&grids[j], b));
                    if a > b {
                        std::mem::swap(&mut a, &mut b);
                    }
                    lower.push(a);
                    upper.push(b);
                }
                Box::unanchored(lower, upper)?
            }
        };
        let open = local_discrepancy(points, &bx, CountMode::Open)?.abs();
        let closed = local_discrepancy(points, &bx, CountMode::Closed)?.abs();
        let d = open.max(closed);
        if d > best {
            best = d;
            witness = Some(bx);
        }
    }

    Ok(DiscrepancyResult {
        value: best,
        witness: witness.expect("at least one trial"),
        exact: false,
    })
}
