//! Checks for the identities and rewrites the non-existence argument relies on.
//!
//! Each check evaluates both sides exactly at concrete points; the test suites
//! sweep them over the ranges listed in the README.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    cubefree_decompose, gcd, gcd3, is_cubefree, jacobi, prime_divisors, require_positive, v2,
    ExactInt,
};
use crate::error::{Error, Result};

/// `x³ + y³ + n²z³ = nxyz` rewritten as `x³ + y³ + A·z₀³ = Bc·x·y·z₀` with
/// `z₀ = sigma·z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCubic {
    /// Coefficient of `z₀³`, cubefree.
    #[serde(with = "crate::serde_exact::int")]
    pub a: ExactInt,
    /// Coefficient of `x·y·z₀`.
    #[serde(with = "crate::serde_exact::int")]
    pub bc: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub sigma: ExactInt,
}

impl ReducedCubic {
    /// `x³ + y³ + A(σz)³ − Bc·x·y·(σz)`
    pub fn eval(&self, x: &ExactInt, y: &ExactInt, z: &ExactInt) -> ExactInt {
        let z0 = &self.sigma * z;
        x * x * x + y * y * y + &self.a * &z0 * &z0 * &z0 - &self.bc * x * y * &z0
    }
}

/// With `n = Q₁·Q₂²·Q₃³`: `A = Q₁²Q₂`, `Bc = Q₁Q₂Q₃`, `sigma = Q₂Q₃²`.
pub fn case_transform(n: &ExactInt) -> Result<ReducedCubic> {
    let d = cubefree_decompose(n)?;
    Ok(ReducedCubic {
        a: &d.p1 * &d.p1 * &d.p2,
        bc: &d.p1 * &d.p2 * &d.p3,
        sigma: &d.p2 * &d.p3 * &d.p3,
    })
}

/// `x³ + y³ + n²z³ − nxyz`, the left side of the rewrite.
pub fn original_cubic(n: &ExactInt, x: &ExactInt, y: &ExactInt, z: &ExactInt) -> ExactInt {
    crate::sylvester::cubic_residual(x, y, z, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeReport {
    /// `(label, gcd)` for `(x,y)`, `(y,z)`, `(z,x)`, `(x,A)`, `(y,A)`.
    pub gcds: Vec<(String, String)>,
    /// Pairs whose gcd is not 1. Nonempty would contradict the claim.
    pub violations: Vec<String>,
}

impl CoprimeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `x³ + y³ + A·z³ = Bc·xyz` with `A` cubefree, `gcd(x,y,z) = 1`, and
/// every prime of `A` dividing `Bc`: reports the pairwise gcds
/// `(x,y)`, `(y,z)`, `(z,x)`, `(x,A)`, `(y,A)`, all of which should be 1.
pub fn check_claim_coprime(
    x: &ExactInt,
    y: &ExactInt,
    z: &ExactInt,
    a: &ExactInt,
    bc: &ExactInt,
) -> Result<CoprimeReport> {
    for (name, v) in [("x", x), ("y", y), ("z", z), ("A", a), ("Bc", bc)] {
        require_positive(name, v)?;
    }
    if x * x * x + y * y * y + a * z * z * z != bc * x * y * z {
        return Err(Error::precondition("x³ + y³ + A·z³ ≠ Bc·xyz"));
    }
    if !is_cubefree(a)? {
        return Err(Error::precondition(format!("A = {a} is not cubefree")));
    }
    if !gcd3(x, y, z).is_one() {
        return Err(Error::precondition("gcd(x,y,z) ≠ 1"));
    }
    for p in prime_divisors(a)? {
        if !bc.is_multiple_of(&p) {
            return Err(Error::precondition(format!(
                "prime {p} divides A but not Bc"
            )));
        }
    }

    let pairs = [
        ("(x,y)", gcd(x, y)),
        ("(y,z)", gcd(y, z)),
        ("(z,x)", gcd(z, x)),
        ("(x,A)", gcd(x, a)),
        ("(y,A)", gcd(y, a)),
    ];
    let violations = pairs
        .iter()
        .filter(|(_, g)| !g.is_one())
        .map(|(l, g)| format!("{l} = {g}"))
        .collect();
    Ok(CoprimeReport {
        gcds: pairs
            .iter()
            .map(|(l, g)| (l.to_string(), g.to_string()))
            .collect(),
        violations,
    })
}

/// `4(A³+B³+C³−3ABC) − (A+B+C)((2A−B−C)² + 3(B−C)²)`; always zero.
pub fn quadform_identity_check(a: &ExactInt, b: &ExactInt, c: &ExactInt) -> ExactInt {
    let lhs = (a * a * a + b * b * b + c * c * c - a * b * c * 3) * 4;
    let u = a * 2 - b - c;
    let v = b - c;
    let rhs = (a + b + c) * (&u * &u + &v * &v * 3);
    lhs - rhs
}

/// Whether `v₂(r² + 3s²)` is even; always true.
pub fn v2_quadform_parity(r: &ExactInt, s: &ExactInt) -> Result<bool> {
    if r.is_zero() && s.is_zero() {
        return Err(Error::domain("r² + 3s² must be positive"));
    }
    Ok(v2(&(r * r + s * s * 3))? % 2 == 0)
}

/// Whether `[u+v+w+uv+vw+wu even] ⇔ [u, v, w all of one parity]`; always true.
pub fn parity_identity_check(u: &ExactInt, v: &ExactInt, w: &ExactInt) -> bool {
    let sum = u + v + w + u * v + v * w + w * u;
    let same = u.is_even() == v.is_even() && v.is_even() == w.is_even();
    sum.is_even() == same
}

/// Whether `(m/n)(n/m) = (−1)^(((m−1)/2)((n−1)/2))` for odd coprime `m, n > 0`.
pub fn reciprocity_check(m: &ExactInt, n: &ExactInt) -> Result<bool> {
    for v in [m, n] {
        if *v < BigInt::one() || v.is_even() {
            return Err(Error::domain(format!("{v} is not an odd positive integer")));
        }
    }
    if !gcd(m, n).is_one() {
        return Err(Error::domain(format!("{m} and {n} are not coprime")));
    }
    let lhs = jacobi(m, n)? * jacobi(n, m)?;
    let e: BigInt = ((m - 1u32) / 2u32) * ((n - 1u32) / 2u32);
    let rhs = if e.is_even() { 1 } else { -1 };
    Ok(lhs == rhs)
}

/// Sweep sizes for [`run_suites`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn small_primes_below(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize];
    let mut out = Vec::new();
    for p in 2..limit {
        if sieve[p as usize] {
            out.push(p);
            let mut q = p * p;
            while q < limit {
                sieve[q as usize] = false;
                q += p;
            }
        }
    }
    out
}

/// Runs every identity sweep. `Full` uses the acceptance ranges.
pub fn run_suites(level: Level) -> Vec<SuiteResult> {
    let full = level == Level::Full;
    let i = |v: i64| BigInt::from(v);
    let mut out = Vec::new();

    let mut t = Tally::new("case_transform identity");
    let max_n = if full { 2000 } else { 200 };
    for n in 1..=max_n {
        let nn = i(n);
        let rc = case_transform(&nn).expect("small n factors");
        for x in -5..=5 {
            for y in -5..=5 {
                for z in -5..=5 {
                    let (x, y, z) = (i(x), i(y), i(z));
                    let ok = original_cubic(&nn, &x, &y, &z) == rc.eval(&x, &y, &z);
                    t.record(ok, || format!("n={n} ({x},{y},{z})"));
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("quadform identity");
    let r = if full { 20 } else { 8 };
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let ok = quadform_identity_check(&i(a), &i(b), &i(c)).is_zero();
                t.record(ok, || format!("({a},{b},{c})"));
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("v2(r^2+3s^2) even");
    let r = if full { 200 } else { 50 };
    for a in -r..=r {
        for b in -r..=r {
            if a == 0 && b == 0 {
                continue;
            }
            let ok = v2_quadform_parity(&i(a), &i(b)).unwrap_or(false);
            t.record(ok, || format!("({a},{b})"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("parity identity");
    for (u, v, w) in (0..8).map(|m| (m & 1, (m >> 1) & 1, (m >> 2) & 1)) {
        t.record(parity_identity_check(&i(u), &i(v), &i(w)), || {
            format!("({u},{v},{w})")
        });
    }
    let r = if full { 5 } else { 2 };
    for u in -r..=r {
        for v in -r..=r {
            for w in -r..=r {
                t.record(parity_identity_check(&i(u), &i(v), &i(w)), || {
                    format!("({u},{v},{w})")
                });
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("jacobi vs Euler criterion");
    let limit = if full { 2000 } else { 300 };
    for p in small_primes_below(limit).into_iter().filter(|&p| p > 2) {
        let bp = i(p as i64);
        let e = i(((p - 1) / 2) as i64);
        for a in 1..p {
            let ba = i(a as i64);
            let euler = ba.modpow(&e, &bp);
            let expected = if euler.is_one() { 1 } else { -1 };
            let ok = jacobi(&ba, &bp).ok() == Some(expected);
            t.record(ok, || format!("({a}/{p})"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("cube root mod 2^e");
    let max_e = if full { 14 } else { 10 };
    for e in 3..=max_e {
        let modulus = i(1i64 << e);
        for p in (1..(1i64 << e)).step_by(2) {
            let ok = match crate::arith::cube_root_mod_2pow(&i(p), e) {
                Ok(u) => u.is_odd() && u < modulus && (&u * &u * &u).mod_floor(&modulus) == i(p),
                Err(_) => false,
            };
            t.record(ok, || format!("p={p} e={e}"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("quadratic reciprocity");
    let limit = if full { 500 } else { 100 };
    for m in (1..limit).step_by(2) {
        for n in (1..limit).step_by(2) {
            if m.gcd(&n) != 1 {
                continue;
            }
            let ok = reciprocity_check(&i(m), &i(n)).unwrap_or(false);
            t.record(ok, || format!("({m},{n})"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("coprimality claim");
    let r = if full { 30 } else { 12 };
    for (x, y, z, a, bc) in claim_instances(r) {
        let ok = check_claim_coprime(&i(x), &i(y), &i(z), &i(a), &i(bc))
            .map(|rep| rep.holds())
            .unwrap_or(false);
        t.record(ok, || format!("x={x} y={y} z={z} A={a} Bc={bc}"));
    }
    out.push(t.finish());

    out
}

/// Every `(x, y, z, A, Bc)` with `x, y, z, A ≤ limit`, `A` cubefree,
/// `gcd(x,y,z) = 1`, `xyz | x³+y³+Az³` (defining `Bc`) and `rad(A) | Bc`.
pub fn claim_instances(limit: i64) -> Vec<(i64, i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=limit {
        let factors = crate::arith::factorize(&BigInt::from(a), 1 << 20).expect("small");
        if factors.iter().any(|(_, e)| *e >= 3) {
            continue;
        }
        let primes: Vec<i64> = factors
            .iter()
            .map(|(p, _)| p.try_into().expect("small"))
            .collect();
        for x in 1..=limit {
            for y in 1..=limit {
                for z in 1..=limit {
                    if x.gcd(&y).gcd(&z) != 1 {
                        continue;
                    }
                    let lhs = x * x * x + y * y * y + a * z * z * z;
                    let xyz = x * y * z;
                    if lhs % xyz != 0 {
                        continue;
                    }
                    let bc = lhs / xyz;
                    if primes.iter().all(|p| bc % p == 0) {
                        out.push((x, y, z, a, bc));
                    }
                }
            }
        }
    }
    out
}
