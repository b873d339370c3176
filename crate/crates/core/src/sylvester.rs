//! Sylvester's transformation and the reductions built on it.
//!
//! Given `Aα³ + Bβ³ + Cγ³ = Dαβγ`, the transformation produces `f, g, h` with
//! `f³ + g³ + ABC·h³ = D·f·g·h`. Two reductions land on the cubic
//! `X³ + Y³ + n²Z³ = nXYZ`:
//!
//! - a positive rational solution of `xyz = ab²`, `x + y + z = abc` gives a
//!   positive integer solution with `n = a²bc³`;
//! - positive integers with `(x+y+z)³ = n·xyz` give one for that `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, gcd3, require_positive, ExactInt, ExactRat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylvesterTriple {
    #[serde(with = "crate::serde_exact::rat")]
    pub f: ExactRat,
    #[serde(with = "crate::serde_exact::rat")]
    pub g: ExactRat,
    #[serde(with = "crate::serde_exact::rat")]
    pub h: ExactRat,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntTriple {
    #[serde(with = "crate::serde_exact::int")]
    pub x: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub y: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub z: ExactInt,
}

impl IntTriple {
    pub fn new(x: ExactInt, y: ExactInt, z: ExactInt) -> Self {
        IntTriple { x, y, z }
    }
}

/// Positive solution of `X³ + Y³ + n²Z³ = nXYZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSolution {
    #[serde(with = "crate::serde_exact::int")]
    pub x: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub y: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub z: ExactInt,
    #[serde(with = "crate::serde_exact::int")]
    pub n: ExactInt,
    pub primitive: bool,
    /// The integer triple before division by its gcd.
    pub raw: IntTriple,
}

impl CubicSolution {
    pub fn verify(&self) -> bool {
        cubic_residual(&self.x, &self.y, &self.z, &self.n).is_zero()
    }
}

/// `x³ + y³ + n²z³ − nxyz`.
pub fn cubic_residual(x: &ExactInt, y: &ExactInt, z: &ExactInt, n: &ExactInt) -> ExactInt {
    x * x * x + y * y * y + n * n * z * z * z - n * x * y * z
}

/// Applies the transformation to `Aα³ + Bβ³ + Cγ³ = Dαβγ`.
///
/// The relation is checked exactly first; a nonzero residual is refused.
#[allow(clippy::too_many_arguments)]
pub fn sylvester_transform(
    a: &ExactRat,
    b: &ExactRat,
    c: &ExactRat,
    d: &ExactRat,
    alpha: &ExactRat,
    beta: &ExactRat,
    gamma: &ExactRat,
) -> Result<SylvesterTriple> {
    let cube = |v: &ExactRat| v * v * v;
    let p = a * cube(alpha);
    let q = b * cube(beta);
    let r = c * cube(gamma);
    let abg = alpha * beta * gamma;

    let residual = &p + &q + &r - d * &abg;
    if !residual.is_zero() {
        return Err(Error::precondition(format!(
            "A·α³ + B·β³ + C·γ³ − D·αβγ = {} (must be 0)",
            format_rat(&residual)
        )));
    }

    let pqr3 = &p * &q * &r * BigRational::from_integer(BigInt::from(3));
    let f = &p * &p * &q + &q * &q * &r + &r * &r * &p - &pqr3;
    let g = &p * &q * &q + &q * &r * &r + &r * &p * &p - &pqr3;
    let h = abg * (&p * &p + &q * &q + &r * &r - &p * &q - &q * &r - &r * &p);
    Ok(SylvesterTriple { f, g, h })
}

/// Scales a rational triple to integers by the least common denominator,
/// then divides by the gcd. Returns `(primitive, raw)`.
fn clear_and_reduce(vals: [&ExactRat; 3]) -> (IntTriple, IntTriple) {
    let lcd = vals
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<ExactInt> = vals
        .iter()
        .map(|v| v.numer() * (&lcd / v.denom()))
        .collect();
    let raw = IntTriple::new(scaled[0].clone(), scaled[1].clone(), scaled[2].clone());
    let prim = primitive(&raw);
    (prim, raw)
}

fn primitive(t: &IntTriple) -> IntTriple {
    let g = gcd3(&t.x, &t.y, &t.z);
    if g.is_zero() || g.is_one() {
        return t.clone();
    }
    IntTriple::new(&t.x / &g, &t.y / &g, &t.z / &g)
}

/// Sends a positive rational solution of `xyz = ab²`, `x + y + z = abc` to a
/// primitive positive solution of the cubic with `n = a²bc³`.
pub fn reduce_system_to_cubic(
    x: &ExactRat,
    y: &ExactRat,
    z: &ExactRat,
    a: &ExactInt,
    b: &ExactInt,
    c: &ExactInt,
) -> Result<CubicSolution> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_positive("c", c)?;
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        if !v.is_positive() {
            return Err(Error::precondition(format!(
                "{name} must be positive, got {}",
                format_rat(v)
            )));
        }
    }
    let product = x * y * z;
    let want_product = BigRational::from_integer(a * b * b);
    if product != want_product {
        return Err(Error::precondition(format!(
            "xyz = {} but ab² = {}",
            format_rat(&product),
            want_product
        )));
    }
    let sum = x + y + z;
    let d = BigRational::from_integer(a * b * c);
    if sum != d {
        return Err(Error::precondition(format!(
            "x + y + z = {} but abc = {}",
            format_rat(&sum),
            d
        )));
    }
    if x == y && y == z {
        return Err(Error::Degenerate(
            "x = y = z forces a²bc³ = 27 and the transformation vanishes".into(),
        ));
    }

    let one = BigRational::one();
    let t = sylvester_transform(x, y, z, &d, &one, &one, &one)?;
    let h1 = &t.h / BigRational::from_integer(a * c * c);
    let (prim, raw) = clear_and_reduce([&t.f, &t.g, &h1]);
    let sol = CubicSolution {
        x: prim.x,
        y: prim.y,
        z: prim.z,
        n: a * a * b * c * c * c,
        primitive: true,
        raw,
    };
    debug_assert!(sol.verify());
    Ok(sol)
}

/// Sends positive integers with `(x+y+z)³ = n·xyz` to a primitive positive
/// solution of the cubic for the same `n`, via `X = nf`, `Y = ng`,
/// `Z = (x+y+z)h`.
pub fn reduce_guy_to_cubic(x: &ExactInt, y: &ExactInt, z: &ExactInt) -> Result<CubicSolution> {
    require_positive("x", x)?;
    require_positive("y", y)?;
    require_positive("z", z)?;
    let s = x + y + z;
    let xyz = x * y * z;
    let (n, rem) = (&s * &s * &s).div_rem(&xyz);
    if !rem.is_zero() {
        return Err(Error::NotRepresentable(format!(
            "({x}+{y}+{z})³ = {} is not a multiple of xyz = {xyz}",
            &s * &s * &s
        )));
    }
    if x == y && y == z {
        return Err(Error::Degenerate(
            "x = y = z gives n = 27 and f = g = h = 0".into(),
        ));
    }

    let r = |v: &ExactInt| BigRational::from_integer(v.clone());
    let one = BigRational::one();
    let t = sylvester_transform(&r(x), &r(y), &r(z), &r(&s), &one, &one, &one)?;
    // With integer A, B, C and unit weights all three are integers.
    let raw = IntTriple::new(
        &n * t.f.to_integer(),
        &n * t.g.to_integer(),
        &s * t.h.to_integer(),
    );
    let prim = primitive(&raw);
    let sol = CubicSolution {
        x: prim.x,
        y: prim.y,
        z: prim.z,
        n,
        primitive: true,
        raw,
    };
    debug_assert!(sol.verify());
    Ok(sol)
}
