//! Exact integer and rational primitives.
//!
//! Everything here is a pure function over arbitrary-precision values. No
//! floating point is used anywhere in the crate.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer. Zero has a single representation.
pub type ExactInt = BigInt;

/// Exact rational, always reduced with a positive denominator.
pub type ExactRat = BigRational;

/// Default upper bound on trial-division candidates.
pub const DEFAULT_FACTOR_CAP: u64 = 1 << 32;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Nonnegative greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: &ExactInt, b: &ExactInt) -> ExactInt {
    a.gcd(b)
}

pub fn gcd3(a: &ExactInt, b: &ExactInt, c: &ExactInt) -> ExactInt {
    a.gcd(b).gcd(c)
}

/// Splits `n ≥ 1` as `2^r · odd`.
pub fn v2_split(n: &ExactInt) -> Result<(u64, ExactInt)> {
    if !n.is_positive() {
        return Err(Error::domain(format!("v2_split requires n >= 1, got {n}")));
    }
    let r = n.trailing_zeros().expect("nonzero");
    Ok((r, n >> r))
}

/// 2-adic valuation of a nonzero integer (sign ignored).
pub fn v2(n: &ExactInt) -> Result<u64> {
    n.trailing_zeros()
        .ok_or_else(|| Error::domain("2-adic valuation of 0 is undefined"))
}

/// Jacobi symbol `(a/m)` for odd `m ≥ 1`.
///
/// Returns `0` when `gcd(a, m) > 1` and `1` when `m = 1`.
pub fn jacobi(a: &ExactInt, m: &ExactInt) -> Result<i8> {
    if !m.is_positive() || m.is_even() {
        return Err(Error::domain(format!(
            "Jacobi symbol needs an odd positive modulus, got {m}"
        )));
    }
    let mut n: BigUint = m.magnitude().clone();
    let mut a: BigUint = a.mod_floor(m).into_parts().1;
    let mut sign = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().expect("nonzero");
        if tz > 0 {
            a >>= tz;
            let r = low_bits(&n, 3);
            if tz % 2 == 1 && (r == 3 || r == 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if low_bits(&a, 2) == 3 && low_bits(&n, 2) == 3 {
            sign = -sign;
        }
        a %= &n;
    }
    Ok(if n.is_one() { sign } else { 0 })
}

fn low_bits(x: &BigUint, bits: u32) -> u64 {
    x.iter_u64_digits().next().unwrap_or(0) & ((1u64 << bits) - 1)
}

/// `m = p1 · p2² · p3³` with `p1`, `p2` squarefree and coprime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubefreeDecomp {
    #[serde(with = "crate::serde_exact::int")]
    pub p1: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub p2: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub p3: ExactInt,
}

impl CubefreeDecomp {
    pub fn reconstruct(&self) -> ExactInt {
        &self.p1 * &self.p2 * &self.p2 * &self.p3 * &self.p3 * &self.p3
    }
}

/// Prime factorization of `m ≥ 1` by trial division, ascending by prime.
///
/// Candidates above `cap` are never tried; if the cofactor is still not known
/// to be prime at that point the call fails with [`Error::FactorizationLimit`].
pub fn factorize(m: &ExactInt, cap: u64) -> Result<Vec<(ExactInt, u32)>> {
    if !m.is_positive() {
        return Err(Error::domain(format!("factorization needs m >= 1, got {m}")));
    }
    let mut factors: Vec<(ExactInt, u32)> = Vec::new();
    let mut rest: BigUint = m.magnitude().clone();
    let mut d: u64 = 2;

    // Big cofactor: divide by u64 candidates until it fits in a machine word.
    while rest.to_u64().is_none() {
        if d > cap {
            return Err(Error::FactorizationLimit {
                cofactor: rest.to_string(),
                cap,
            });
        }
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            factors.push((BigInt::from(rest), 1));
            return Ok(factors);
        }
        let mut e = 0u32;
        while (&rest % d).is_zero() {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((BigInt::from(d), e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }

    let mut r = rest.to_u64().expect("fits");
    while r > 1 {
        if (d as u128) * (d as u128) > r as u128 {
            factors.push((BigInt::from(r), 1));
            break;
        }
        if d > cap {
            return Err(Error::FactorizationLimit {
                cofactor: r.to_string(),
                cap,
            });
        }
        let mut e = 0u32;
        while r.is_multiple_of(d) {
            r /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((BigInt::from(d), e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    Ok(factors)
}

/// Cubefree decomposition with the default candidate cap.
pub fn cubefree_decompose(m: &ExactInt) -> Result<CubefreeDecomp> {
    cubefree_decompose_with_cap(m, DEFAULT_FACTOR_CAP)
}

pub fn cubefree_decompose_with_cap(m: &ExactInt, cap: u64) -> Result<CubefreeDecomp> {
    let mut out = CubefreeDecomp {
        p1: BigInt::one(),
        p2: BigInt::one(),
        p3: BigInt::one(),
    };
    for (p, e) in factorize(m, cap)? {
        match e % 3 {
            1 => out.p1 *= &p,
            2 => out.p2 *= &p,
            _ => {}
        }
        out.p3 *= num_traits::pow(p, (e / 3) as usize);
    }
    Ok(out)
}

/// Whether no prime square divides `m ≥ 1`.
pub fn is_squarefree(m: &ExactInt) -> Result<bool> {
    Ok(factorize(m, DEFAULT_FACTOR_CAP)?.iter().all(|(_, e)| *e < 2))
}

/// Whether no prime cube divides `m ≥ 1`.
pub fn is_cubefree(m: &ExactInt) -> Result<bool> {
    Ok(factorize(m, DEFAULT_FACTOR_CAP)?.iter().all(|(_, e)| *e < 3))
}

/// Distinct primes dividing `m ≥ 1`.
pub fn prime_divisors(m: &ExactInt) -> Result<Vec<ExactInt>> {
    Ok(factorize(m, DEFAULT_FACTOR_CAP)?
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

/// The odd `u` in `[1, 2^e)` with `u³ ≡ p (mod 2^e)`.
///
/// Cubing permutes the odd residues modulo `2^e`, and their group has exponent
/// `2^(e-2)`, so `u = p^t` where `3t ≡ 1 (mod 2^(e-2))`. For `e = 2m + 2`
/// this `t` is `(2^(2m+1) + 1) / 3`.
pub fn cube_root_mod_2pow(p: &ExactInt, e: u32) -> Result<ExactInt> {
    if e < 3 {
        return Err(Error::domain(format!("cube root mod 2^e needs e >= 3, got {e}")));
    }
    if !p.is_positive() || p.is_even() {
        return Err(Error::domain(format!(
            "cube root mod 2^e needs an odd positive base, got {p}"
        )));
    }
    let modulus = BigInt::one() << e;
    let t = inverse_of_three_mod_2pow(e - 2);
    Ok(p.modpow(&t, &modulus))
}

/// Smallest positive `t` with `3t ≡ 1 (mod 2^k)`.
pub fn inverse_of_three_mod_2pow(k: u32) -> ExactInt {
    let pow: ExactInt = BigInt::one() << k;
    // 2^k ≡ 1 (mod 3) for even k, 2 (mod 3) for odd k.
    let t: ExactInt = if k.is_multiple_of(2) {
        (&pow * 2 + 1) / 3
    } else {
        (&pow + 1) / 3
    };
    t.mod_floor(&pow).max(BigInt::one())
}

/// Nonnegative rational square root, if `q` is the square of a rational.
pub fn is_square_rat(q: &ExactRat) -> Result<Option<ExactRat>> {
    if q.is_negative() {
        return Err(Error::domain(format!("square root of negative rational {q}")));
    }
    let num = exact_sqrt(q.numer());
    let den = exact_sqrt(q.denom());
    Ok(match (num, den) {
        (Some(n), Some(d)) => Some(BigRational::new(n, d)),
        _ => None,
    })
}

/// Integer square root of `n ≥ 0` when `n` is a perfect square.
pub fn exact_sqrt(n: &ExactInt) -> Option<ExactInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Parses `"p/q"` or an integer literal into a reduced rational.
pub fn parse_rat(s: &str) -> Result<ExactRat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n)?, parse_int(d)?),
        None => (parse_int(s)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::domain(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_int(s: &str) -> Result<ExactInt> {
    let s = s.trim();
    let digits = s.strip_prefix('+').unwrap_or(s);
    digits
        .parse::<BigInt>()
        .map_err(|_| Error::domain(format!("not an integer: {s:?}")))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rat(q: &ExactRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn require_positive(name: &str, v: &ExactInt) -> Result<()> {
    if v.sign() == Sign::Plus {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {v}")))
    }
}
