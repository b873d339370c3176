//! Exact bounded searches.
//!
//! Three equations are searched:
//!
//! - the cubic `x³ + y³ + n²z³ = nxyz`, with `1 ≤ x ≤ y ≤ B`, `1 ≤ z ≤ B`;
//! - the system `xyz = ab²`, `x + y + z = abc` over positive rationals, with one
//!   coordinate of height at most `H`;
//! - `(x+y+z)³ = n·xyz` with `1 ≤ x ≤ y ≤ z ≤ B`.
//!
//! For the two integer problems, fixing two coordinates leaves a cubic in the
//! third that is convex on the positive axis. The kernel splits the range at
//! the turning point and bisects each monotone half, so a bound `B` costs
//! `O(B² log B)` evaluations. Evaluation happens in `i128` whenever every
//! intermediate provably fits, and in `BigInt` otherwise.
//!
//! Work is split into contiguous ranges of the outer coordinate and run on a
//! rayon pool; results are merged and sorted, so reports do not depend on the
//! thread count.

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Sub};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd3, is_square_rat, require_positive, ExactInt, ExactRat};
use crate::error::Result;
use crate::sylvester::{cubic_residual, IntTriple};

/// For `n` below this value the cubic has no positive solution at all:
/// AM-GM gives `x³ + y³ + n²z³ ≥ 3·n^(2/3)·xyz`, and `3·n^(2/3) > n` iff
/// `27n² > n³` iff `n < 27`.
pub const AMGM_FAST_PATH_BELOW: u32 = 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Worker threads; `0` uses rayon's default.
    pub threads: usize,
}

impl SearchOptions {
    pub fn threads(threads: usize) -> Self {
        SearchOptions { threads }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    Cubic,
    System,
    Guy,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchParams {
    #[serde(
        with = "crate::serde_exact::opt_int",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub n: Option<ExactInt>,
    #[serde(
        with = "crate::serde_exact::opt_int",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub a: Option<ExactInt>,
    #[serde(
        with = "crate::serde_exact::opt_int",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub b: Option<ExactInt>,
    #[serde(
        with = "crate::serde_exact::opt_int",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub c: Option<ExactInt>,
}

/// One solution of the cubic, normalized to `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubicHit {
    #[serde(with = "crate::serde_exact::int")]
    pub x: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub y: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub z: ExactInt,
    /// `gcd(x, y, z) = 1`
    pub primitive: bool,
}

/// One rational solution of the system, sorted `x ≤ y ≤ z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatTriple {
    #[serde(with = "crate::serde_exact::rat")]
    pub x: ExactRat,
    #[serde(with = "crate::serde_exact::rat")]
    pub y: ExactRat,
    #[serde(with = "crate::serde_exact::rat")]
    pub z: ExactRat,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport<S> {
    pub equation: Equation,
    pub params: SearchParams,
    /// `B` for the integer searches, `H` for the system.
    pub bound: u64,
    /// Size of the search domain: triples for the integer searches,
    /// candidate values of `z` for the system.
    pub triples_examined: u128,
    /// The domain was settled by the AM-GM bound without enumeration.
    pub fast_path: bool,
    pub solutions: Vec<S>,
    /// Wall time. Not serialized, so reports compare equal across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl<S: Serialize> SearchReport<S> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl SearchReport<CubicHit> {
    pub fn contains(&self, x: i64, y: i64, z: i64) -> bool {
        self.solutions
            .iter()
            .any(|h| h.x == x.into() && h.y == y.into() && h.z == z.into())
    }

    pub fn verify(&self) -> bool {
        let n = self.params.n.as_ref().expect("cubic report has n");
        self.solutions
            .iter()
            .all(|h| cubic_residual(&h.x, &h.y, &h.z, n).is_zero())
    }
}

impl SearchReport<IntTriple> {
    pub fn contains(&self, x: i64, y: i64, z: i64) -> bool {
        self.solutions
            .iter()
            .any(|t| t.x == x.into() && t.y == y.into() && t.z == z.into())
    }

    pub fn verify(&self) -> bool {
        let n = self.params.n.as_ref().expect("guy report has n");
        self.solutions.iter().all(|t| guy_holds(&t.x, &t.y, &t.z, n))
    }
}

impl SearchReport<RatTriple> {
    pub fn contains(&self, x: &ExactRat, y: &ExactRat, z: &ExactRat) -> bool {
        let mut want = [x.clone(), y.clone(), z.clone()];
        want.sort();
        self.solutions
            .iter()
            .any(|t| t.x == want[0] && t.y == want[1] && t.z == want[2])
    }

    pub fn verify(&self) -> bool {
        let a = self.params.a.as_ref().expect("system report has a");
        let b = self.params.b.as_ref().expect("system report has b");
        let c = self.params.c.as_ref().expect("system report has c");
        self.solutions
            .iter()
            .all(|t| system_holds(&t.x, &t.y, &t.z, a, b, c))
    }
}

/// `(x+y+z)³ = n·xyz`
pub fn guy_holds(x: &ExactInt, y: &ExactInt, z: &ExactInt, n: &ExactInt) -> bool {
    let s = x + y + z;
    &s * &s * &s == n * x * y * z
}

/// `xyz = ab²` and `x + y + z = abc`
pub fn system_holds(
    x: &ExactRat,
    y: &ExactRat,
    z: &ExactRat,
    a: &ExactInt,
    b: &ExactInt,
    c: &ExactInt,
) -> bool {
    x * y * z == BigRational::from_integer(a * b * b)
        && x + y + z == BigRational::from_integer(a * b * c)
}

/// Arithmetic the kernels need; implemented for `i128` and `BigInt`.
trait Word:
    Clone + Ord + Send + Sync + From<i64> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl Word for i128 {}

impl Word for BigInt {}

fn w<T: Word>(v: u64) -> T {
    T::from(v as i64)
}

/// Smallest `v` in `[lo, hi]` with `pred(v)`, assuming `pred` is monotone
/// false-then-true. `None` if it never holds.
fn first_true(lo: u64, hi: u64, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    if lo > hi || !pred(hi) {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// Integer zeros in `[lo, hi]` of a function that is strictly decreasing on
/// `[lo, turn]` and strictly increasing on `[turn + 1, hi]`.
fn convex_zeros<T: Word>(lo: u64, hi: u64, turn: Option<u64>, eval: impl Fn(u64) -> T) -> Vec<u64> {
    let zero = w::<T>(0);
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let split = turn.map(|t| t.min(hi));
    if let Some(t) = split.filter(|&t| t >= lo) {
        if let Some(v) = first_true(lo, t, |v| eval(v) <= zero) {
            if eval(v) == zero {
                out.push(v);
            }
        }
    }
    let rise_lo = match split {
        Some(t) if t >= lo => t + 1,
        _ => lo,
    };
    if let Some(v) = first_true(rise_lo, hi, |v| eval(v) >= zero) {
        if eval(v) == zero {
            out.push(v);
        }
    }
    out
}

/// Last `v` in `[lo, hi]` with `pred(v)` for `pred` monotone true-then-false.
fn last_true(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
    if lo > hi || !pred(lo) {
        return None;
    }
    match first_true(lo, hi, |v| !pred(v)) {
        Some(v) => Some(v - 1),
        None => Some(hi),
    }
}

fn fits_i128(magnitude: &BigInt) -> bool {
    magnitude.bits() < 120
}

fn run_ranges<R, F>(bound: u64, opts: SearchOptions, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64, u64) -> Vec<R> + Sync + Send,
{
    let threads = if opts.threads == 0 {
        rayon::current_num_threads()
    } else {
        opts.threads
    };
    if threads <= 1 || bound < 2 {
        return work(1, bound);
    }
    let chunks = (threads as u64 * 8).min(bound);
    let step = bound.div_ceil(chunks);
    let ranges: Vec<(u64, u64)> = (0..chunks)
        .map(|i| (1 + i * step, ((i + 1) * step).min(bound)))
        .filter(|(lo, hi)| lo <= hi)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        ranges
            .into_par_iter()
            .map(|(lo, hi)| work(lo, hi))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

fn cubic_kernel<T: Word>(n: T, z_lo: u64, z_hi: u64, bound: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for z in z_lo..=z_hi {
        let zt: T = w(z);
        let nnz3 = n.clone() * n.clone() * zt.clone() * zt.clone() * zt.clone();
        let nz = n.clone() * zt;
        for y in 1..=bound {
            let yt: T = w(y);
            let p = nz.clone() * yt.clone();
            let q = yt.clone() * yt.clone() * yt + nnz3.clone();
            // x³ − p·x + q falls while 3x² ≤ p.
            let turn = last_true(0, y, |x| {
                let xt: T = w(x);
                w::<T>(3) * xt.clone() * xt <= p
            });
            let eval = |x: u64| {
                let xt: T = w(x);
                xt.clone() * xt.clone() * xt.clone() + q.clone() - p.clone() * xt
            };
            for x in convex_zeros(1, y, turn, eval) {
                out.push((x, y, z));
            }
        }
    }
    out
}

/// All `(x, y, z)` with `1 ≤ x ≤ y ≤ B`, `1 ≤ z ≤ B` and
/// `x³ + y³ + n²z³ = nxyz`.
pub fn search_cubic(n: &ExactInt, bound: u64) -> Result<SearchReport<CubicHit>> {
    search_cubic_with(n, bound, SearchOptions::default())
}

pub fn search_cubic_with(
    n: &ExactInt,
    bound: u64,
    opts: SearchOptions,
) -> Result<SearchReport<CubicHit>> {
    require_positive("n", n)?;
    let started = Instant::now();
    let b = bound as u128;
    let domain = b * b * (b + 1) / 2;
    let fast_path = *n < BigInt::from(AMGM_FAST_PATH_BELOW);

    let mut hits: Vec<(u64, u64, u64)> = if fast_path || bound == 0 {
        Vec::new()
    } else {
        let bb = BigInt::from(bound);
        let worst = (n * n + n + 4u32) * &bb * &bb * &bb * 4u32;
        if fits_i128(&worst) {
            let nn = n.to_i128().expect("fits");
            run_ranges(bound, opts, |lo, hi| cubic_kernel::<i128>(nn, lo, hi, bound))
        } else {
            run_ranges(bound, opts, |lo, hi| cubic_kernel::<BigInt>(n.clone(), lo, hi, bound))
        }
    };
    hits.sort_unstable();

    let solutions = hits
        .into_iter()
        .map(|(x, y, z)| {
            let (x, y, z) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
            let primitive = gcd3(&x, &y, &z).is_one();
            CubicHit { x, y, z, primitive }
        })
        .collect();
    Ok(SearchReport {
        equation: Equation::Cubic,
        params: SearchParams {
            n: Some(n.clone()),
            ..Default::default()
        },
        bound,
        triples_examined: domain,
        fast_path,
        solutions,
        elapsed: started.elapsed(),
    })
}

fn guy_kernel<T: Word>(n: T, x_lo: u64, x_hi: u64, bound: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for x in x_lo..=x_hi {
        for y in x..=bound {
            let s: T = w(x + y);
            let nxy = n.clone() * w(x) * w(y);
            // (s + z)³ − nxy·z falls while 3(s + z)² ≤ nxy.
            let turn = last_true(y, bound, |z| {
                let t = s.clone() + w(z);
                w::<T>(3) * t.clone() * t <= nxy
            });
            let eval = |z: u64| {
                let t = s.clone() + w(z);
                t.clone() * t.clone() * t - nxy.clone() * w(z)
            };
            for z in convex_zeros(y, bound, turn, eval) {
                out.push((x, y, z));
            }
        }
    }
    out
}

/// All `1 ≤ x ≤ y ≤ z ≤ B` with `(x+y+z)³ = n·xyz`.
pub fn search_guy(n: &ExactInt, bound: u64) -> Result<SearchReport<IntTriple>> {
    search_guy_with(n, bound, SearchOptions::default())
}

pub fn search_guy_with(
    n: &ExactInt,
    bound: u64,
    opts: SearchOptions,
) -> Result<SearchReport<IntTriple>> {
    require_positive("n", n)?;
    let started = Instant::now();
    let b = bound as u128;
    let domain = b * (b + 1) * (b + 2) / 6;

    let mut hits: Vec<(u64, u64, u64)> = if bound == 0 {
        Vec::new()
    } else {
        let bb = BigInt::from(bound);
        let worst = (n + 27u32) * &bb * &bb * &bb * 4u32;
        if fits_i128(&worst) {
            let nn = n.to_i128().expect("fits");
            run_ranges(bound, opts, |lo, hi| guy_kernel::<i128>(nn, lo, hi, bound))
        } else {
            run_ranges(bound, opts, |lo, hi| guy_kernel::<BigInt>(n.clone(), lo, hi, bound))
        }
    };
    hits.sort_unstable();

    let solutions = hits
        .into_iter()
        .map(|(x, y, z)| IntTriple::new(x.into(), y.into(), z.into()))
        .collect();
    Ok(SearchReport {
        equation: Equation::Guy,
        params: SearchParams {
            n: Some(n.clone()),
            ..Default::default()
        },
        bound,
        triples_examined: domain,
        fast_path: false,
        solutions,
        elapsed: started.elapsed(),
    })
}

fn system_kernel(
    sum: &ExactRat,
    prod: &ExactRat,
    v_lo: u64,
    v_hi: u64,
    height: u64,
) -> (u128, Vec<RatTriple>) {
    let four = BigRational::from_integer(BigInt::from(4));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut examined = 0u128;
    let mut out = Vec::new();
    for v in v_lo..=v_hi {
        for u in 1..=height {
            if u.gcd(&v) != 1 {
                continue;
            }
            examined += 1;
            let z = BigRational::new(u.into(), v.into());
            let s = sum - &z;
            if !s.is_positive() {
                continue;
            }
            let p = prod / &z;
            let disc = &s * &s - &four * &p;
            if disc.is_negative() {
                continue;
            }
            let Some(root) = is_square_rat(&disc).expect("nonnegative") else {
                continue;
            };
            let x = (&s - &root) / &two;
            let y = (&s + &root) / &two;
            if !x.is_positive() {
                continue;
            }
            let mut t = [x, y, z];
            t.sort();
            let [x, y, z] = t;
            out.push(RatTriple { x, y, z });
        }
    }
    (examined, out)
}

/// Positive rational solutions of `xyz = ab²`, `x + y + z = abc` in which some
/// coordinate is `u/v` with `1 ≤ u, v ≤ H`.
///
/// The system is symmetric, so each solution is reported once, sorted.
pub fn search_system(
    a: &ExactInt,
    b: &ExactInt,
    c: &ExactInt,
    height: u64,
) -> Result<SearchReport<RatTriple>> {
    search_system_with(a, b, c, height, SearchOptions::default())
}

pub fn search_system_with(
    a: &ExactInt,
    b: &ExactInt,
    c: &ExactInt,
    height: u64,
    opts: SearchOptions,
) -> Result<SearchReport<RatTriple>> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_positive("c", c)?;
    let started = Instant::now();
    let sum = BigRational::from_integer(a * b * c);
    let prod = BigRational::from_integer(a * b * b);

    let parts = run_ranges(height, opts, |lo, hi| {
        vec![system_kernel(&sum, &prod, lo, hi, height)]
    });
    let mut examined = 0u128;
    let mut found = BTreeSet::new();
    for (count, sols) in parts {
        examined += count;
        found.extend(sols);
    }
    Ok(SearchReport {
        equation: Equation::System,
        params: SearchParams {
            a: Some(a.clone()),
            b: Some(b.clone()),
            c: Some(c.clone()),
            ..Default::default()
        },
        bound: height,
        triples_examined: examined,
        fast_path: false,
        solutions: found.into_iter().collect(),
        elapsed: started.elapsed(),
    })
}
