//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line and
//! fails if its criterion does not hold.
//!
//! Run with `cargo test -p ratcube --test acceptance -- --nocapture` to see
//! the lines.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ratcube::arith::{cube_root_mod_2pow, jacobi, rat};
use ratcube::classify::{check_corollary, check_theorem, classify_n, Condition, FormKind};
use ratcube::prooflab::{
    case_transform, parity_identity_check, quadform_identity_check, v2_quadform_parity,
};
use ratcube::search::{
    search_cubic, search_cubic_with, search_guy, search_guy_with, search_system,
    search_system_with, SearchOptions,
};
use ratcube::sylvester::{reduce_guy_to_cubic, reduce_system_to_cubic, sylvester_transform};
use ratcube::VerdictStatus;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn report(id: &str, what: &str, ok: bool, detail: String, elapsed: Duration) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {what}: {detail} ({:.2}s)", elapsed.as_secs_f64());
    assert!(ok, "{id} failed: {detail}");
}

// Brute-force generation of the five families, independent of classify_n.
fn generate_families(max: u64) -> Vec<Option<FormKind>> {
    let mut tag: Vec<Option<FormKind>> = vec![None; max as usize + 1];
    let mut collisions = 0;
    let mut put = |n: u64, f: FormKind, tag: &mut Vec<Option<FormKind>>| {
        if tag[n as usize].is_some() {
            collisions += 1;
        }
        tag[n as usize] = Some(f);
    };
    for k in 1.. {
        let mut any = false;
        for (n, f) in [
            (16 * k - 4, FormKind::F16kMinus4),
            (64 * k, FormKind::F64k),
            (32 * k - 16, FormKind::F32kMinus16),
            (8 * k - 1, FormKind::F8kMinus1),
        ] {
            if n <= max {
                put(n, f, &mut tag);
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    for m in 1..32u32 {
        let pow = 1u64 << (2 * m + 1);
        if pow + 27 > max {
            break;
        }
        for k in 1.. {
            let n = pow * (2 * k - 1) + 27;
            if n > max {
                break;
            }
            put(n, FormKind::F2PowPlus27, &mut tag);
        }
    }
    assert_eq!(collisions, 0, "families overlap");
    tag
}

#[test]
fn ac1_classification_oracle_equivalence() {
    let start = Instant::now();
    const N: u64 = 1_000_000;
    let oracle = generate_families(N);
    let mut mismatches = 0u64;
    let mut first = None;
    for n in 1..=N {
        let got = classify_n(&BigInt::from(n)).unwrap();
        let want = oracle[n as usize].unwrap_or(FormKind::NotCovered);
        let witnesses_ok = got.reconstruct().is_none_or(|r| r == BigInt::from(n));
        if got.kind() != want || !witnesses_ok {
            mismatches += 1;
            first.get_or_insert(n);
        }
    }
    let elapsed = start.elapsed();
    report(
        "AC1",
        "classification vs brute-force families, n <= 10^6",
        mismatches == 0 && elapsed < Duration::from_secs(30),
        format!("{mismatches} mismatches, first {first:?}"),
        elapsed,
    );
}

#[test]
fn ac2_negative_control_cubic() {
    let start = Instant::now();
    let mut covered = 0;
    let mut offenders = Vec::new();
    for n in 1..=300i64 {
        if !classify_n(&big(n)).unwrap().is_covered() {
            continue;
        }
        covered += 1;
        let r = search_cubic(&big(n), 60).unwrap();
        if !r.solutions.is_empty() {
            offenders.push(n);
        }
    }
    let elapsed = start.elapsed();
    report(
        "AC2",
        "search_cubic(n, 60) empty for covered n <= 300",
        offenders.is_empty() && covered > 0 && elapsed < Duration::from_secs(120),
        format!("{covered} covered n searched, offenders {offenders:?}"),
        elapsed,
    );
}

fn cubic_holds_i128(x: i128, y: i128, z: i128, n: i128) -> bool {
    x.pow(3) + y.pow(3) + n * n * z.pow(3) == n * x * y * z
}

#[test]
fn ac3_positive_controls() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let r = search_cubic(&big(27), 10).unwrap();
    if !(r.contains(9, 9, 1) && cubic_holds_i128(9, 9, 1, 27)) {
        failures.push("cubic 27 (9,9,1)");
    }
    let r = search_cubic(&big(125), 30).unwrap();
    if !(r.contains(25, 25, 2) && cubic_holds_i128(25, 25, 2, 125)) {
        failures.push("cubic 125 (25,25,2)");
    }
    let r = search_guy(&big(36), 5).unwrap();
    if !(r.contains(1, 2, 3) && 6i64.pow(3) == 36 * 6) {
        failures.push("guy 36 (1,2,3)");
    }
    let r = search_guy(&big(32), 10).unwrap();
    if !(r.contains(1, 1, 2) && 4i64.pow(3) == 32 * 2) {
        failures.push("guy 32 (1,1,2)");
    }
    let r = search_system(&big(1), &big(1), &big(5), 4).unwrap();
    let (h, f) = (rat(1, 2), rat(4, 1));
    let substituted = &h * &h * &f == rat(1, 1) && &h + &h + &f == rat(5, 1);
    if !(r.contains(&h, &h, &f) && substituted) {
        failures.push("system (1,1,5) (1/2,1/2,4)");
    }

    report(
        "AC3",
        "positive controls found and re-verified",
        failures.is_empty(),
        format!("failures {failures:?}"),
        start.elapsed(),
    );
}

#[test]
fn ac4_negative_control_system() {
    let start = Instant::now();
    let mut proved = 0;
    let mut offenders = Vec::new();
    for a in 1..=6i64 {
        for n in 1..=12i64 {
            let v = check_corollary(&big(a), &big(n)).unwrap();
            if v.status != VerdictStatus::ProvedNoSolutions {
                continue;
            }
            proved += 1;
            let r = search_system(&big(a), &big(1), &big(n), 12).unwrap();
            if !r.solutions.is_empty() {
                offenders.push((a, n));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "AC4",
        "search_system(a,1,n,12) empty where the corollary applies",
        offenders.is_empty() && proved > 0 && elapsed < Duration::from_secs(60),
        format!("{proved} proved pairs, offenders {offenders:?}"),
        elapsed,
    );
}

#[test]
fn ac5_condition_to_form_mapping() {
    use FormKind::*;
    let start = Instant::now();
    let asserted = |c: Condition| -> &'static [FormKind] {
        match c {
            Condition::T1 => &[F64k],
            Condition::T2 => &[F64k, F32kMinus16, F16kMinus4, F8kMinus1],
            Condition::T3 => &[F64k, F32kMinus16],
            Condition::T4 => &[F64k, F32kMinus16, F16kMinus4],
            Condition::T5 => &[F64k, F32kMinus16],
            _ => &[],
        }
    };
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut samples = 0;
    let mut failures = Vec::new();
    while samples < 10_000 {
        let (a, b, c) = (
            rng.gen_range(1..=50i64),
            rng.gen_range(1..=50i64),
            rng.gen_range(1..=50i64),
        );
        let v = check_theorem(&big(a), &big(b), &big(c)).unwrap();
        let bullets: Vec<_> = v
            .matched
            .iter()
            .copied()
            .filter(|c| *c != Condition::T6)
            .collect();
        if bullets.is_empty() {
            continue;
        }
        samples += 1;
        let n = big(a * a * b * c * c * c);
        let kind = classify_n(&n).unwrap().kind();
        for cond in bullets {
            if !asserted(cond).contains(&kind) {
                failures.push((a, b, c, cond, kind));
            }
        }
    }
    report(
        "AC5",
        "T1-T5 land in the asserted forms (10^4 random triples)",
        failures.is_empty(),
        format!("{} failures, first {:?}", failures.len(), failures.first()),
        start.elapsed(),
    );
}

fn random_rat(rng: &mut StdRng, nonzero: bool) -> BigRational {
    loop {
        let num = rng.gen_range(-40..=40i64);
        let den = rng.gen_range(1..=25i64);
        if nonzero && num == 0 {
            continue;
        }
        return rat(num, den);
    }
}

#[test]
fn ac6_sylvester_identity_fuzz() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut residuals = 0;
    for _ in 0..10_000 {
        let a = random_rat(&mut rng, false);
        let b = random_rat(&mut rng, false);
        let c = random_rat(&mut rng, false);
        let alpha = random_rat(&mut rng, true);
        let beta = random_rat(&mut rng, true);
        let gamma = random_rat(&mut rng, true);
        let cube = |v: &BigRational| v * v * v;
        let d = (&a * cube(&alpha) + &b * cube(&beta) + &c * cube(&gamma))
            / (&alpha * &beta * &gamma);
        let t = sylvester_transform(&a, &b, &c, &d, &alpha, &beta, &gamma).unwrap();
        let lhs = cube(&t.f) + cube(&t.g) + &a * &b * &c * cube(&t.h);
        let rhs = &d * &t.f * &t.g * &t.h;
        if !(lhs - rhs).is_zero() {
            residuals += 1;
        }
    }
    report(
        "AC6",
        "f^3 + g^3 + ABC h^3 = Dfgh on 10^4 random rational tuples",
        residuals == 0,
        format!("{residuals} nonzero residuals"),
        start.elapsed(),
    );
}

#[test]
fn ac7_reduction_chain() {
    let start = Instant::now();
    let s = reduce_system_to_cubic(&rat(1, 2), &rat(1, 2), &rat(4, 1), &big(1), &big(1), &big(5))
        .unwrap();
    let sys_ok = (s.x.clone(), s.y.clone(), s.z.clone(), s.n.clone())
        == (big(25), big(25), big(2), big(125))
        && s.primitive
        && cubic_holds_i128(25, 25, 2, 125);
    let g = reduce_guy_to_cubic(&big(1), &big(2), &big(3)).unwrap();
    let guy_ok = (g.x.clone(), g.y.clone(), g.z.clone(), g.n.clone())
        == (big(10), big(14), big(1), big(36))
        && g.primitive
        && cubic_holds_i128(10, 14, 1, 36);
    report(
        "AC7",
        "system and (x+y+z)^3 reductions",
        sys_ok && guy_ok,
        format!("system {sys_ok}, guy {guy_ok}"),
        start.elapsed(),
    );
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

#[test]
fn ac8_identity_suites() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // Rewrite identity, both sides evaluated independently in i128.
    for n in 1..=2000i128 {
        let t = case_transform(&BigInt::from(n)).unwrap();
        let (a, bc, sigma) = (
            t.a.to_i128().unwrap(),
            t.bc.to_i128().unwrap(),
            t.sigma.to_i128().unwrap(),
        );
        for x in -5..=5i128 {
            for y in -5..=5i128 {
                for z in -5..=5i128 {
                    let lhs = x.pow(3) + y.pow(3) + n * n * z.pow(3) - n * x * y * z;
                    let z0 = sigma * z;
                    let rhs = x.pow(3) + y.pow(3) + a * z0.pow(3) - bc * x * y * z0;
                    if lhs != rhs {
                        failures.push(format!("case_transform n={n} ({x},{y},{z})"));
                    }
                }
            }
        }
    }

    for a in -20..=20i64 {
        for b in -20..=20i64 {
            for c in -20..=20i64 {
                if !quadform_identity_check(&big(a), &big(b), &big(c)).is_zero() {
                    failures.push(format!("quadform ({a},{b},{c})"));
                }
            }
        }
    }

    for r in -200..=200i64 {
        for s in -200..=200i64 {
            if (r, s) == (0, 0) {
                continue;
            }
            if !v2_quadform_parity(&big(r), &big(s)).unwrap() {
                failures.push(format!("v2 parity ({r},{s})"));
            }
        }
    }

    for mask in 0..8i64 {
        let (u, v, w) = (mask & 1, (mask >> 1) & 1, (mask >> 2) & 1);
        if !parity_identity_check(&big(u), &big(v), &big(w)) {
            failures.push(format!("parity ({u},{v},{w})"));
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for _ in 0..1000 {
        let (u, v, w) = (
            rng.gen_range(-1000..=1000i64),
            rng.gen_range(-1000..=1000i64),
            rng.gen_range(-1000..=1000i64),
        );
        if !parity_identity_check(&big(u), &big(v), &big(w)) {
            failures.push(format!("parity ({u},{v},{w})"));
        }
    }

    let mut sieve = vec![true; 2000];
    for p in 2..2000usize {
        if !sieve[p] {
            continue;
        }
        for q in (p * p..2000).step_by(p) {
            sieve[q] = false;
        }
        if p == 2 {
            continue;
        }
        let p = p as u64;
        for a in 1..p {
            let euler = pow_mod(a, (p - 1) / 2, p);
            let want = if euler == 1 { 1 } else { -1 };
            if jacobi(&big(a as i64), &big(p as i64)).unwrap() != want {
                failures.push(format!("jacobi ({a}/{p})"));
            }
        }
    }

    for e in 3..=14u32 {
        let m = 1u64 << e;
        for p in (1..m).step_by(2) {
            let u = cube_root_mod_2pow(&big(p as i64), e).unwrap().to_u64().unwrap();
            let ok = u % 2 == 1 && u < m && u * u % m * u % m == p;
            let unique = (1..m).step_by(2).filter(|w| w * w % m * w % m == p).count() == 1;
            if !(ok && unique) {
                failures.push(format!("cube root p={p} e={e}"));
            }
        }
    }

    let elapsed = start.elapsed();
    report(
        "AC8",
        "identity suites",
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!("{} violations, first {:?}", failures.len(), failures.first()),
        elapsed,
    );
}

#[test]
fn ac9_search_determinism() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut diffs = Vec::new();
    let k = 4;
    for i in 0..20 {
        let (one, many) = match i % 3 {
            0 => {
                let n = big(rng.gen_range(1..=400));
                let b = rng.gen_range(1..=60);
                (
                    search_cubic_with(&n, b, SearchOptions::threads(1)).unwrap().to_json(),
                    search_cubic_with(&n, b, SearchOptions::threads(k)).unwrap().to_json(),
                )
            }
            1 => {
                let n = big(rng.gen_range(1..=60));
                let b = rng.gen_range(1..=60);
                (
                    search_guy_with(&n, b, SearchOptions::threads(1)).unwrap().to_json(),
                    search_guy_with(&n, b, SearchOptions::threads(k)).unwrap().to_json(),
                )
            }
            _ => {
                let (a, b, c) = (
                    big(rng.gen_range(1..=6)),
                    big(rng.gen_range(1..=3)),
                    big(rng.gen_range(1..=12)),
                );
                let h = rng.gen_range(1..=12);
                (
                    search_system_with(&a, &b, &c, h, SearchOptions::threads(1))
                        .unwrap()
                        .to_json(),
                    search_system_with(&a, &b, &c, h, SearchOptions::threads(k))
                        .unwrap()
                        .to_json(),
                )
            }
        };
        if one != many {
            diffs.push(i);
        }
    }
    report(
        "AC9",
        "search reports byte-identical for 1 and 4 threads (20 sets)",
        diffs.is_empty(),
        format!("differing sets {diffs:?}"),
        start.elapsed(),
    );
}
