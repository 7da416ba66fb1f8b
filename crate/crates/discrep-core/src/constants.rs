//! The explicit numeric quantities behind the probabilistic discrepancy
//! bounds: the sequence `b_k`, the three dimension-dependent `a_{k,s}`
//! variants, the series `A_s` and `B` with certified truncation, the
//! bracketing-number prefactor `C_s`, the Riemann zeta function and its
//! inverse, and the bound curves `c(N, s)`.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// Which bound family a profile evaluates.
///
/// `Extreme` and `Star` are the unanchored / anchored cases of the improved
/// bound; `AwDep` is the earlier bound with its implicit dimension dependency
/// made explicit; `AwConst` is the earlier bound with the fixed constants
/// `A = 1165`, `B = 178`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariantTag {
    Extreme,
    Star,
    AwDep,
    AwConst,
}

impl VariantTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantTag::Extreme => "extreme",
            VariantTag::Star => "star",
            VariantTag::AwDep => "aw-dep",
            VariantTag::AwConst => "aw-const",
        }
    }
}

impl std::str::FromStr for VariantTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "extreme" => Ok(VariantTag::Extreme),
            "star" => Ok(VariantTag::Star),
            "aw-dep" | "awdep" => Ok(VariantTag::AwDep),
            "aw-const" | "awconst" => Ok(VariantTag::AwConst),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Fixed constants of the dimension-independent bound.
pub const AW_A: f64 = 1165.0;
pub const AW_B: f64 = 178.0;

/// Cap on the adaptive series cutoff.
const MAX_SERIES_CUTOFF: i64 = 10_000;

/// `b_{-1} = b_0 = 3`, `b_k = 2^{-k+3} (1 - 2^{-k})` for `k > 0`.
pub fn b_seq(k: i64) -> Result<f64> {
    if k < -1 {
        return Err(Error::domain(format!("b_seq requires k >= -1, got {k}")));
    }
    if k <= 0 {
        Ok(3.0)
    } else {
        Ok(pow2(-k + 3) * (1.0 - pow2(-k)))
    }
}

/// `C_s = max(1, 1.1^(s-101))`. Equals 1 for `s <= 101`, then grows.
pub fn c_factor(s: u32) -> Result<f64> {
    check_dim(s)?;
    if s <= 101 {
        Ok(1.0)
    } else {
        Ok(1.1f64.powi(s as i32 - 101))
    }
}

/// `ln C_s`, safe for dimensions where `C_s` itself overflows.
fn ln_c_factor(s: u32) -> f64 {
    if s <= 101 {
        0.0
    } else {
        (s as f64 - 101.0) * 1.1f64.ln()
    }
}

fn pow2(e: i64) -> f64 {
    (2.0f64).powi(e as i32)
}

/// `ln(2^e + 1)` without forming `2^e`.
fn ln_pow2_plus_1(e: i64) -> f64 {
    e as f64 * LN_2 + pow2(-e).ln_1p()
}

fn check_dim(s: u32) -> Result<()> {
    if s == 0 {
        Err(Error::domain("dimension s must be at least 1"))
    } else {
        Ok(())
    }
}

/// The term `a_{k,s}` of the requested variant, with `a_{-1,s} = a_{0,s}`.
///
/// Extreme: `b_k ( ln(C_s^2 2^{k+2} / pi)/s + 2 ln(2e(2^{k+2}+1)) )`
/// Star:    `b_k ( ln(C_s 2^{k+2} sqrt(2/pi))/s + ln(2e(2^{k+1}+1)) )`
/// AwDep:   `b_k ( ln(2^{k+1} sqrt(2/pi))/s + ln(4e(2^{k+1}+1)) )`
pub fn a_term(variant: VariantTag, k: i64, s: u32) -> Result<f64> {
    check_dim(s)?;
    if k < -1 {
        return Err(Error::domain(format!("a_term requires k >= -1, got {k}")));
    }
    let k = k.max(0);
    let bk = b_seq(k)?;
    let sf = f64::from(s);
    let half_ln_2_over_pi = 0.5 * (2.0 / PI).ln();
    let value = match variant {
        VariantTag::Extreme => {
            let dim_part = (2.0 * ln_c_factor(s) + (k + 2) as f64 * LN_2 - PI.ln()) / sf;
            let main_part = 2.0 * (LN_2 + 1.0 + ln_pow2_plus_1(k + 2));
            bk * (dim_part + main_part)
        }
        VariantTag::Star => {
            let dim_part = (ln_c_factor(s) + (k + 2) as f64 * LN_2 + half_ln_2_over_pi) / sf;
            let main_part = LN_2 + 1.0 + ln_pow2_plus_1(k + 1);
            bk * (dim_part + main_part)
        }
        VariantTag::AwDep => {
            let dim_part = ((k + 1) as f64 * LN_2 + half_ln_2_over_pi) / sf;
            let main_part = 2.0 * LN_2 + 1.0 + ln_pow2_plus_1(k + 1);
            bk * (dim_part + main_part)
        }
        VariantTag::AwConst => {
            return Err(Error::UnsupportedVariant(
                "aw-const has no a_{k,s} terms; it uses the fixed A = 1165".into(),
            ))
        }
    };
    Ok(value)
}

/// Closed-form majorant of the tail `sum_{k > cutoff} sqrt(a_{k,s})`.
///
/// Uses `b_k <= 2^{-k+3}` and `ln(2^e + 1) <= (e+1) ln 2` to dominate
/// `sqrt(a_{k,s})` by `2^{(3-k)/2} sqrt(u + v k)`, then sums the geometric
/// series with `sqrt(u + v(K+1) + vj) <= sqrt(u + v(K+1)) + sqrt(v) j`.
fn a_tail_bound(variant: VariantTag, s: u32, cutoff: i64) -> f64 {
    let sf = f64::from(s);
    let half_ln_2_over_pi = 0.5 * (2.0 / PI).ln();
    // Linear majorant u + v*k of the bracketed factor for k >= 0.
    let (u, v) = match variant {
        VariantTag::Extreme => (
            (2.0 * ln_c_factor(s) + 2.0 * LN_2 - PI.ln()) / sf + 2.0 * (LN_2 + 1.0 + 3.0 * LN_2),
            LN_2 / sf + 2.0 * LN_2,
        ),
        VariantTag::Star => (
            (ln_c_factor(s) + 2.0 * LN_2 + half_ln_2_over_pi) / sf + LN_2 + 1.0 + 2.0 * LN_2,
            LN_2 / sf + LN_2,
        ),
        VariantTag::AwDep => (
            (LN_2 + half_ln_2_over_pi) / sf + 2.0 * LN_2 + 1.0 + 2.0 * LN_2,
            LN_2 / sf + LN_2,
        ),
        VariantTag::AwConst => unreachable!("no series for aw-const"),
    };
    let q = std::f64::consts::FRAC_1_SQRT_2;
    let head = (u + v * (cutoff + 1) as f64).sqrt();
    // sum_{j>=0} 2^{-j/2} (head + sqrt(v) j), scaled by 2^{(3-(K+1))/2}.
    pow2(2 - cutoff).sqrt() * (head / (1.0 - q) + v.sqrt() * q / ((1.0 - q) * (1.0 - q)))
}

/// Generic certified evaluation of `2 (sum_k sqrt(t_k))^2`.
///
/// `term(k)` yields `t_k`, `tail(cutoff)` a proven upper bound on
/// `sum_{k > cutoff} sqrt(t_k)`. The returned value is an upper bound on the
/// true series value and differs from it by at most `tol`.
fn certified_series(
    tol: f64,
    term: impl Fn(i64) -> Result<f64>,
    tail: impl Fn(i64) -> f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let mut partial = 0.0;
    let mut k = -1i64;
    let mut cutoff = 64i64;
    loop {
        while k <= cutoff {
            partial += term(k)?.sqrt();
            k += 1;
        }
        let t = tail(cutoff);
        // true A in [2 partial^2, 2 (partial+t)^2]; report the upper end.
        let slack = 2.0 * t * (2.0 * partial + t);
        if slack <= tol {
            return Ok(2.0 * (partial + t) * (partial + t));
        }
        if cutoff >= MAX_SERIES_CUTOFF {
            return Err(Error::Precision(format!(
                "series tail still {slack:e} > {tol:e} at cutoff {cutoff}"
            )));
        }
        cutoff = (cutoff * 2).min(MAX_SERIES_CUTOFF);
    }
}

/// `A_s = 2 (sum_{k=-1}^inf sqrt(a_{k,s}))^2`, truncated with a certified
/// tail bound; the result is an upper bound within `tol` of the true value.
pub fn big_a(variant: VariantTag, s: u32, tol: f64) -> Result<f64> {
    check_dim(s)?;
    if variant == VariantTag::AwConst {
        return Err(Error::UnsupportedVariant(
            "aw-const has no A_s series; use the fixed A = 1165".into(),
        ));
    }
    certified_series(tol, |k| a_term(variant, k, s), |cutoff| a_tail_bound(variant, s, cutoff))
}

/// `B = 2 (sum_{k=-1}^inf sqrt(b_k))^2 < 178`, same truncation contract.
pub fn big_b(tol: f64) -> Result<f64> {
    certified_series(tol, b_seq, |cutoff| {
        // sqrt(b_k) <= 2^{(3-k)/2}; geometric tail from cutoff+1.
        let q = std::f64::consts::FRAC_1_SQRT_2;
        pow2(2 - cutoff).sqrt() / (1.0 - q)
    })
}

// Bernoulli numbers B_2, B_4, ..., B_20 for the Euler-Maclaurin correction.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Riemann zeta on `(1, inf)` by Euler-Maclaurin summation, absolute error
/// below 1e-12 on the whole domain.
pub fn zeta(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::domain(format!("zeta requires x > 1, got {x}")));
    }
    let n = 20.0f64;
    let mut sum = 0.0;
    let mut i = 1.0;
    while i < n {
        sum += i.powf(-x);
        i += 1.0;
    }
    sum += 0.5 * n.powf(-x);
    sum += n.powf(1.0 - x) / (x - 1.0);
    // Correction terms B_{2j}/(2j)! * (x)(x+1)...(x+2j-2) * n^{-x-2j+1}.
    let mut rising = 1.0; // (x)(x+1)...(x+2j-2)
    let mut fact = 1.0; // (2j)!
    for (j, b2j) in BERNOULLI_EVEN.iter().enumerate() {
        let two_j = 2.0 * (j as f64 + 1.0);
        if j == 0 {
            rising = x;
            fact = 2.0;
        } else {
            rising *= (x + two_j - 3.0) * (x + two_j - 2.0);
            fact *= (two_j - 1.0) * two_j;
        }
        sum += b2j / fact * rising * n.powf(-x - two_j + 1.0);
    }
    Ok(sum)
}

/// Inverse of `zeta` by bisection on `[1 + 1e-9, 50]`, absolute tolerance 1e-10.
pub fn zeta_inv(y: f64) -> Result<f64> {
    if !(y > 1.0) {
        return Err(Error::domain(format!("zeta_inv requires y > 1, got {y}")));
    }
    let mut lo = 1.0 + 1e-9;
    let mut hi = 50.0;
    if y < zeta(hi)? {
        return Err(Error::domain(format!(
            "zeta_inv({y}) outside the invertible range reached on [1+1e-9, 50]"
        )));
    }
    if y > zeta(lo)? {
        return Err(Error::domain(format!(
            "zeta_inv({y}) outside the invertible range reached on [1+1e-9, 50]"
        )));
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if zeta(mid)? > y {
            lo = mid; // zeta is decreasing: still above y means root is right of mid
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(zeta(alpha) - 1)(zeta(beta) - 1)`, the failure-probability budget.
pub fn failure_budget(alpha: f64, beta: f64) -> Result<f64> {
    Ok((zeta(alpha)? - 1.0) * (zeta(beta)? - 1.0))
}

/// A bound query: sample size and dimension.
#[derive(Debug, Clone, Copy)]
pub struct BoundQuery {
    pub n: u64,
    pub s: u32,
}

impl BoundQuery {
    pub fn new(n: u64, s: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("sample size must be >= 2, got {n}")));
        }
        check_dim(s)?;
        Ok(BoundQuery { n, s })
    }
}

/// A variant together with its evaluated constants.
#[derive(Debug, Clone)]
pub struct ConstantProfile {
    pub variant: VariantTag,
    pub alpha: f64,
    pub beta: f64,
    pub tol: f64,
    a_values: BTreeMap<u32, f64>,
    pub b_value: f64,
}

impl ConstantProfile {
    /// Evaluates `A_s` for every requested dimension plus `B`.
    ///
    /// For `AwConst` the fixed `A = 1165`, `B = 178` are stored instead and
    /// `dims` is ignored.
    pub fn new(variant: VariantTag, alpha: f64, beta: f64, tol: f64, dims: &[u32]) -> Result<Self> {
        if !(alpha > 1.0) || !(beta > 1.0) {
            return Err(Error::domain("alpha and beta must exceed 1 (zeta diverges at 1)"));
        }
        if !(tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        let mut a_values = BTreeMap::new();
        let b_value = if variant == VariantTag::AwConst {
            AW_B
        } else {
            for &s in dims {
                a_values.insert(s, big_a(variant, s, tol)?);
            }
            big_b(tol)?
        };
        Ok(ConstantProfile {
            variant,
            alpha,
            beta,
            tol,
            a_values,
            b_value,
        })
    }

    pub fn a_value(&self, s: u32) -> Result<f64> {
        if self.variant == VariantTag::AwConst {
            return Ok(AW_A);
        }
        self.a_values
            .get(&s)
            .copied()
            .ok_or_else(|| Error::domain(format!("A_s not evaluated for s = {s} in this profile")))
    }

    /// The `N`-dependent factor `c` such that the bound is `c sqrt(s/N)`.
    ///
    /// Dimension-dependent variants: `sqrt(alpha A_s + beta B ln(log2 N)/s)`.
    /// `AwConst`: `sqrt(alpha (A + B ln(log2 N)/s))`.
    pub fn bound_c(&self, q: BoundQuery) -> Result<f64> {
        if q.n < 2 {
            return Err(Error::domain("bound_c requires N >= 2"));
        }
        let ln_log = (q.n as f64).log2().ln();
        let sf = f64::from(q.s);
        let c_sq = match self.variant {
            VariantTag::AwConst => self.alpha * (AW_A + AW_B * ln_log / sf),
            _ => self.alpha * self.a_value(q.s)? + self.beta * self.b_value * ln_log / sf,
        };
        Ok(c_sq.sqrt())
    }

    /// The full bound `c(N, s) sqrt(s/N)`.
    pub fn bound(&self, q: BoundQuery) -> Result<f64> {
        Ok(self.bound_c(q)? * (f64::from(q.s) / q.n as f64).sqrt())
    }
}
