//! Explicit delta-covers and delta-bracketing covers for the anchored box
//! class `C^s` and the unanchored class `R^s`, randomized validation of the
//! covering property, and the cardinality bounds they are measured against.
//!
//! The constructions are plain `eps = delta/s` grids: suboptimal in size but
//! provably valid, which is what the validation harness needs. Large
//! constructed families are kept in grid form instead of materialized lists;
//! the sandwich found for a queried box is always re-verified numerically.

use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constants::c_factor;
use crate::error::{Error, Result};
use crate::geometry::Box;

/// Floating-point slack on volume comparisons.
const VOLUME_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverFamily {
    /// Anchored boxes `[0, x)`.
    AnchoredC,
    /// Unanchored boxes `[x, y)`.
    UnanchoredR,
}

impl CoverFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverFamily::AnchoredC => "anchored",
            CoverFamily::UnanchoredR => "unanchored",
        }
    }
}

impl std::str::FromStr for CoverFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anchored" => Ok(CoverFamily::AnchoredC),
            "unanchored" => Ok(CoverFamily::UnanchoredR),
            other => Err(Error::Parse(format!("unknown cover family {other:?}"))),
        }
    }
}

/// A bracket: lower member (possibly the empty set) and upper member.
pub type Bracket = (Option<Box>, Box);

#[derive(Debug, Clone)]
enum Backing {
    /// Explicit delta-cover elements.
    Boxes(Vec<Box>),
    /// Explicit bracketing pairs.
    Brackets(Vec<Bracket>),
    /// Anchored grid cover: upper corners from `grid^s`.
    GridAnchored { grid: Vec<f64> },
    /// Unanchored bracketing cover: one pair per corner pair `p <= q` in
    /// `grid^s x grid^s`, with the inner box shrunk by one grid step.
    GridBrackets { grid: Vec<f64> },
}

/// A finite family claimed to be a delta-cover or delta-bracketing cover.
#[derive(Debug, Clone)]
pub struct CoverSet {
    pub family: CoverFamily,
    pub delta: f64,
    pub dim: usize,
    pub bracketing: bool,
    backing: Backing,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain(format!("delta must lie in (0, 1], got {delta}")));
    }
    Ok(())
}

fn check_dim(s: u32) -> Result<()> {
    if s == 0 {
        Err(Error::domain("dimension s must be at least 1"))
    } else {
        Ok(())
    }
}

/// `{eps, 2 eps, ..., 1}` with the last value clamped to exactly 1.
fn upper_grid(eps: f64) -> Vec<f64> {
    let m = (1.0 / eps).ceil() as usize;
    let mut g: Vec<f64> = (1..=m).map(|i| (i as f64 * eps).min(1.0)).collect();
    *g.last_mut().unwrap() = 1.0;
    g.dedup();
    g
}

impl CoverSet {
    /// Wraps an explicit list of cover elements.
    pub fn from_boxes(family: CoverFamily, delta: f64, dim: usize, elements: Vec<Box>) -> Result<Self> {
        check_delta(delta)?;
        Ok(CoverSet {
            family,
            delta,
            dim,
            bracketing: false,
            backing: Backing::Boxes(elements),
        })
    }

    /// Wraps an explicit list of bracketing pairs; every pair must be nested
    /// with volume gap at most delta.
    pub fn from_brackets(
        family: CoverFamily,
        delta: f64,
        dim: usize,
        elements: Vec<Bracket>,
    ) -> Result<Self> {
        check_delta(delta)?;
        for (u, v) in &elements {
            if let Some(u) = u {
                if !u.subset_of(v) {
                    return Err(Error::domain("bracket members must be nested"));
                }
                if v.volume() - u.volume() > delta + VOLUME_SLACK {
                    return Err(Error::domain("bracket volume gap exceeds delta"));
                }
            } else if v.volume() > delta + VOLUME_SLACK {
                return Err(Error::domain("bracket volume gap exceeds delta"));
            }
        }
        Ok(CoverSet {
            family,
            delta,
            dim,
            bracketing: true,
            backing: Backing::Brackets(elements),
        })
    }

    /// Number of elements of the family (pairs, for bracketing covers).
    ///
    /// Returned as `f64` because grid families in higher dimension overflow
    /// any integer width long before they can be materialized.
    pub fn cardinality(&self) -> f64 {
        match &self.backing {
            Backing::Boxes(v) => v.len() as f64,
            Backing::Brackets(v) => v.len() as f64,
            Backing::GridAnchored { grid } => (grid.len() as f64).powi(self.dim as i32),
            Backing::GridBrackets { grid } => {
                let m = grid.len() as f64;
                (m * (m + 1.0) / 2.0).powi(self.dim as i32)
            }
        }
    }

    /// Finds `U subseteq a subseteq V` in the family with
    /// `vol(V) - vol(U) <= delta` (plus fp slack). `None` means no valid
    /// sandwich exists in the family.
    pub fn find_sandwich(&self, a: &Box) -> Option<Bracket> {
        let gap_ok = |u: &Option<Box>, v: &Box| {
            let uvol = u.as_ref().map_or(0.0, Box::volume);
            v.volume() - uvol <= self.delta + VOLUME_SLACK
        };
        match &self.backing {
            Backing::Boxes(elements) => {
                // best inner = max-volume subset (or the empty set),
                // best outer = min-volume superset
                let mut inner: Option<&Box> = None;
                let mut outer: Option<&Box> = None;
                for e in elements {
                    if e.subset_of(a) && inner.map_or(true, |i| e.volume() > i.volume()) {
                        inner = Some(e);
                    }
                    if a.subset_of(e) && outer.map_or(true, |o| e.volume() < o.volume()) {
                        outer = Some(e);
                    }
                }
                let v = outer?.clone();
                let u = inner.cloned();
                gap_ok(&u, &v).then_some((u, v))
            }
            Backing::Brackets(elements) => elements
                .iter()
                .find(|(u, v)| {
                    a.subset_of(v)
                        && u.as_ref().map_or(true, |u| u.subset_of(a))
                        && gap_ok(u, v)
                })
                .cloned(),
            Backing::GridAnchored { grid } => {
                // snap the upper corner down (inner) and up (outer)
                let mut lower = Vec::with_capacity(self.dim);
                let mut upper = Vec::with_capacity(self.dim);
                let mut inner_empty = false;
                for &x in &a.upper {
                    let i = grid.partition_point(|&g| g <= x);
                    if i == 0 {
                        inner_empty = true;
                    } else {
                        lower.push(grid[i - 1]);
                    }
                    upper.push(if i < grid.len() && grid[i.saturating_sub(1)] == x {
                        x
                    } else {
                        grid[i.min(grid.len() - 1)]
                    });
                }
                let v = Box::anchored(upper).ok()?;
                if !a.subset_of(&v) {
                    return None;
                }
                let u = if inner_empty {
                    None
                } else {
                    let u = Box::anchored(lower).ok()?;
                    if !u.subset_of(a) {
                        return None;
                    }
                    Some(u)
                };
                gap_ok(&u, &v).then_some((u, v))
            }
            Backing::GridBrackets { grid } => {
                // outer corners: lower snapped down, upper snapped up;
                // inner corners: one grid step inside
                let mut v_lo = Vec::with_capacity(self.dim);
                let mut v_hi = Vec::with_capacity(self.dim);
                let mut u_lo = Vec::with_capacity(self.dim);
                let mut u_hi = Vec::with_capacity(self.dim);
                let mut inner_empty = false;
                for (&x, &y) in a.lower.iter().zip(&a.upper) {
                    let i = grid.partition_point(|&g| g <= x);
                    let lo_idx = i.saturating_sub(1); // grid contains 0, so i >= 1
                    let j = grid.partition_point(|&g| g < y);
                    let hi_idx = j.min(grid.len() - 1);
                    v_lo.push(grid[lo_idx]);
                    v_hi.push(grid[hi_idx]);
                    if lo_idx + 1 > hi_idx.saturating_sub(1) || hi_idx == 0 {
                        inner_empty = true;
                    } else {
                        u_lo.push(grid[lo_idx + 1]);
                        u_hi.push(grid[hi_idx - 1]);
                    }
                }
                let v = Box::unanchored(v_lo, v_hi).ok()?;
                if !a.subset_of(&v) {
                    return None;
                }
                let u = if inner_empty {
                    None
                } else {
                    let u = Box::unanchored(u_lo, u_hi).ok()?;
                    if !u.subset_of(a) {
                        return None;
                    }
                    Some(u)
                };
                gap_ok(&u, &v).then_some((u, v))
            }
        }
    }

    /// Writes the family as CSV: `kind,lower_1..lower_s,upper_1..upper_s`.
    /// Bracket pairs emit a `u` row (or `empty`) followed by a `v` row.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        const EXPORT_LIMIT: f64 = 1e6;
        if self.cardinality() > EXPORT_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "cover with {} elements exceeds the CSV export limit of {EXPORT_LIMIT}",
                self.cardinality()
            )));
        }
        let header: Vec<String> = std::iter::once("kind".to_string())
            .chain((1..=self.dim).map(|j| format!("lower_{j}")))
            .chain((1..=self.dim).map(|j| format!("upper_{j}")))
            .collect();
        writeln!(w, "{}", header.join(","))?;
        let write_row = |w: &mut dyn Write, kind: &str, lower: &[f64], upper: &[f64]| {
            let row: Vec<String> = std::iter::once(kind.to_string())
                .chain(lower.iter().map(|c| format!("{c}")))
                .chain(upper.iter().map(|c| format!("{c}")))
                .collect();
            writeln!(w, "{}", row.join(","))
        };
        let zeros = vec![0.0; self.dim];
        match &self.backing {
            Backing::Boxes(elements) => {
                for e in elements {
                    write_row(&mut w, "box", &e.lower, &e.upper)?;
                }
            }
            Backing::Brackets(elements) => {
                for (u, v) in elements {
                    match u {
                        Some(u) => write_row(&mut w, "u", &u.lower, &u.upper)?,
                        None => write_row(&mut w, "empty", &zeros, &zeros)?,
                    }
                    write_row(&mut w, "v", &v.lower, &v.upper)?;
                }
            }
            Backing::GridAnchored { .. } | Backing::GridBrackets { .. } => {
                for item in self.enumerate() {
                    match item {
                        (None, v) => write_row(&mut w, "box", &v.lower, &v.upper)?,
                        (Some(u), v) => {
                            write_row(&mut w, "u", &u.lower, &u.upper)?;
                            write_row(&mut w, "v", &v.lower, &v.upper)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Materializes grid families for export; small covers only.
    fn enumerate(&self) -> Vec<Bracket> {
        match &self.backing {
            Backing::Boxes(v) => v.iter().map(|b| (None, b.clone())).collect(),
            Backing::Brackets(v) => v.clone(),
            Backing::GridAnchored { grid } => {
                let mut out = Vec::new();
                let mut idx = vec![0usize; self.dim];
                loop {
                    let upper: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
                    out.push((None, Box::anchored(upper).unwrap()));
                    if !advance(&mut idx, grid.len()) {
                        break;
                    }
                }
                out
            }
            Backing::GridBrackets { grid } => {
                let mut pairs = Vec::new();
                for u in 0..grid.len() {
                    for v in u..grid.len() {
                        pairs.push((u, v));
                    }
                }
                let mut out = Vec::new();
                let mut idx = vec![0usize; self.dim];
                loop {
                    let mut v_lo = Vec::with_capacity(self.dim);
                    let mut v_hi = Vec::with_capacity(self.dim);
                    let mut u_lo = Vec::with_capacity(self.dim);
                    let mut u_hi = Vec::with_capacity(self.dim);
                    let mut inner_empty = false;
                    for &pi in &idx {
                        let (lo_idx, hi_idx) = pairs[pi];
                        v_lo.push(grid[lo_idx]);
                        v_hi.push(grid[hi_idx]);
                        if hi_idx == 0 || lo_idx + 1 > hi_idx - 1 {
                            inner_empty = true;
                        } else {
                            u_lo.push(grid[lo_idx + 1]);
                            u_hi.push(grid[hi_idx - 1]);
                        }
                    }
                    let v = Box::unanchored(v_lo, v_hi).unwrap();
                    let u = if inner_empty {
                        None
                    } else {
                        Some(Box::unanchored(u_lo, u_hi).unwrap())
                    };
                    out.push((u, v));
                    if !advance(&mut idx, pairs.len()) {
                        break;
                    }
                }
                out
            }
        }
    }
}

fn advance(idx: &mut [usize], len: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < len {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Grid delta-cover of the anchored class: upper corners on the
/// `eps = delta/s` grid. Cardinality at most `ceil(s/delta)^s`.
pub fn build_cover_anchored(delta: f64, s: u32) -> Result<CoverSet> {
    check_delta(delta)?;
    check_dim(s)?;
    let eps = delta / f64::from(s);
    Ok(CoverSet {
        family: CoverFamily::AnchoredC,
        delta,
        dim: s as usize,
        bracketing: false,
        backing: Backing::GridAnchored { grid: upper_grid(eps) },
    })
}

/// Grid delta-bracketing cover of the unanchored class, built from the
/// `delta/2` anchored grid applied to both corners.
pub fn build_bracketing_unanchored(delta: f64, s: u32) -> Result<CoverSet> {
    check_delta(delta)?;
    check_dim(s)?;
    let eps = delta / 2.0 / f64::from(s);
    let mut grid = upper_grid(eps);
    grid.insert(0, 0.0);
    Ok(CoverSet {
        family: CoverFamily::UnanchoredR,
        delta,
        dim: s as usize,
        bracketing: true,
        backing: Backing::GridBrackets { grid },
    })
}

/// Outcome of randomized cover validation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<Box>,
}

/// Draws `samples` random boxes from the declared family and checks each has
/// a sandwich in the cover.
pub fn validate_cover(cover: &CoverSet, samples: u64, rng_seed: u64) -> Result<ValidationReport> {
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let bx = match cover.family {
            CoverFamily::AnchoredC => {
                let upper: Vec<f64> = (0..cover.dim).map(|_| rng.gen::<f64>()).collect();
                Box::anchored(upper)?
            }
            CoverFamily::UnanchoredR => {
                let mut lower = Vec::with_capacity(cover.dim);
                let mut upper = Vec::with_capacity(cover.dim);
                for _ in 0..cover.dim {
                    let (x, y) = (rng.gen::<f64>(), rng.gen::<f64>());
                    lower.push(x.min(y));
                    upper.push(x.max(y));
                }
                Box::unanchored(lower, upper)?
            }
        };
        if cover.find_sandwich(&bx).is_none() {
            failures.push(bx);
        }
    }
    Ok(ValidationReport {
        passed: failures.is_empty(),
        checked: samples,
        failures,
    })
}

/// Upper bound `C_s (s^s / s!) (1/delta + 1)^s` on the minimal bracketing
/// number of the anchored class.
pub fn bracketing_bound_anchored(delta: f64, s: u32) -> Result<f64> {
    check_delta(delta)?;
    check_dim(s)?;
    let base = 1.0 / delta + 1.0;
    if s <= 30 {
        let ratio: f64 = (1..=s).map(|i| f64::from(s) / f64::from(i)).product();
        Ok(c_factor(s)? * ratio * base.powi(s as i32))
    } else {
        // log-domain: ln C_s + sum ln(s/i) + s ln(1/delta + 1)
        let ln_c = if s <= 101 {
            0.0
        } else {
            (f64::from(s) - 101.0) * 1.1f64.ln()
        };
        let ln_ratio: f64 = (1..=s).map(|i| (f64::from(s) / f64::from(i)).ln()).sum();
        Ok((ln_c + ln_ratio + f64::from(s) * base.ln()).exp())
    }
}

/// `N_[](delta, R^s) <= N_[](delta/2, C^s)^2`.
pub fn bracketing_bound_unanchored(delta: f64, s: u32) -> Result<f64> {
    let half = bracketing_bound_anchored(delta / 2.0, s)?;
    Ok(half * half)
}

/// The sandwich relation `N <= 2 N_[] <= N (1 + N)` between minimal cover
/// and bracketing-cover sizes.
pub fn cover_bracketing_relation_check(cover_size: u64, bracket_size: u64) -> bool {
    let n = cover_size as u128;
    let nb = bracket_size as u128;
    n <= 2 * nb && 2 * nb <= n * (1 + n)
}

/// Minimal delta-cover size for the 1D anchored class, by exhaustive search
/// over endpoint subsets of the 1/12 grid.
///
/// A family `{[0,g_1), ..., [0,g_m)}` is a delta-cover of `C^1` iff
/// `g_1 <= delta`, consecutive gaps are at most delta, and `g_m = 1`.
pub fn minimal_cover_size_1d(delta: f64) -> Result<u64> {
    check_delta(delta)?;
    let grid: Vec<f64> = (1..=12).map(|i| i as f64 / 12.0).collect();
    let mut best = u64::MAX;
    for mask in 1u32..(1 << 12) {
        let chosen: Vec<f64> = (0..12).filter(|i| mask & (1 << i) != 0).map(|i| grid[i]).collect();
        if *chosen.last().unwrap() != 1.0 {
            continue;
        }
        if chosen[0] > delta + VOLUME_SLACK {
            continue;
        }
        if chosen.windows(2).any(|w| w[1] - w[0] > delta + VOLUME_SLACK) {
            continue;
        }
        best = best.min(chosen.len() as u64);
    }
    if best == u64::MAX {
        return Err(Error::Precision(format!(
            "no valid 1D cover on the 1/12 grid for delta = {delta}"
        )));
    }
    Ok(best)
}

/// Minimal delta-bracketing-cover size for the 1D anchored class, candidate
/// bracket endpoints on the 1/12 grid.
///
/// A pair `([0,u), [0,v))` brackets `[0,x)` iff `u <= x <= v`, so the minimal
/// family is the minimal number of grid intervals of length at most delta
/// covering `[0,1]`; computed by dynamic programming over the grid.
pub fn minimal_bracketing_size_1d(delta: f64) -> Result<u64> {
    check_delta(delta)?;
    let grid: Vec<f64> = (0..=12).map(|i| i as f64 / 12.0).collect();
    // m[t] = minimal intervals covering [0, grid[t]]
    let mut m = vec![u64::MAX; grid.len()];
    for t in 0..grid.len() {
        let mut best = u64::MAX;
        // choose an interval [grid[u], grid[v]] with v >= t that extends
        // coverage ending at grid[u]
        for u in 0..=t {
            for v in t..grid.len() {
                if grid[v] - grid[u] > delta + VOLUME_SLACK {
                    continue;
                }
                let prev = if u == 0 {
                    0
                } else if m[u] == u64::MAX {
                    continue;
                } else {
                    m[u]
                };
                best = best.min(prev + 1);
            }
        }
        m[t] = best;
    }
    let result = m[grid.len() - 1];
    if result == u64::MAX {
        return Err(Error::Precision(format!(
            "no valid 1D bracketing cover on the 1/12 grid for delta = {delta}"
        )));
    }
    Ok(result)
}
