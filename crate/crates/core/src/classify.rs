//! Membership in the covered families of `n` and the condition checkers.
//!
//! For `n` in one of
//!
//! ```text
//! 16k − 4,  64k,  32k − 16,  8k − 1,  2^(2m+1)(2k − 1) + 27      (k, m ≥ 1)
//! ```
//!
//! the cubic `x³ + y³ + n²z³ = nxyz` has no positive integer solution. Every
//! query about the system `xyz = ab²`, `x + y + z = abc` is routed through
//! `n = a²bc³`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{require_positive, v2_split, ExactInt};
use crate::error::Result;

/// Which covered family `n` belongs to, with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum NForm {
    #[serde(rename = "16k-4")]
    Form16kMinus4 {
        #[serde(with = "crate::serde_exact::int")]
        k: ExactInt,
    },
    #[serde(rename = "64k")]
    Form64k {
        #[serde(with = "crate::serde_exact::int")]
        k: ExactInt,
    },
    #[serde(rename = "32k-16")]
    Form32kMinus16 {
        #[serde(with = "crate::serde_exact::int")]
        k: ExactInt,
    },
    #[serde(rename = "8k-1")]
    Form8kMinus1 {
        #[serde(with = "crate::serde_exact::int")]
        k: ExactInt,
    },
    #[serde(rename = "2^(2m+1)(2k-1)+27")]
    Form2PowPlus27 {
        #[serde(with = "crate::serde_exact::int")]
        m: ExactInt,
        #[serde(with = "crate::serde_exact::int")]
        k: ExactInt,
    },
    #[serde(rename = "none")]
    NotCovered,
}

/// Witness-free tag of an [`NForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    F16kMinus4,
    F64k,
    F32kMinus16,
    F8kMinus1,
    F2PowPlus27,
    NotCovered,
}

impl FormKind {
    pub fn label(self) -> &'static str {
        match self {
            FormKind::F16kMinus4 => "16k-4",
            FormKind::F64k => "64k",
            FormKind::F32kMinus16 => "32k-16",
            FormKind::F8kMinus1 => "8k-1",
            FormKind::F2PowPlus27 => "2^(2m+1)(2k-1)+27",
            FormKind::NotCovered => "none",
        }
    }
}

impl NForm {
    pub fn kind(&self) -> FormKind {
        match self {
            NForm::Form16kMinus4 { .. } => FormKind::F16kMinus4,
            NForm::Form64k { .. } => FormKind::F64k,
            NForm::Form32kMinus16 { .. } => FormKind::F32kMinus16,
            NForm::Form8kMinus1 { .. } => FormKind::F8kMinus1,
            NForm::Form2PowPlus27 { .. } => FormKind::F2PowPlus27,
            NForm::NotCovered => FormKind::NotCovered,
        }
    }

    pub fn is_covered(&self) -> bool {
        !matches!(self, NForm::NotCovered)
    }

    pub fn label(&self) -> &'static str {
        self.kind().label()
    }

    pub fn k(&self) -> Option<&ExactInt> {
        match self {
            NForm::Form16kMinus4 { k }
            | NForm::Form64k { k }
            | NForm::Form32kMinus16 { k }
            | NForm::Form8kMinus1 { k }
            | NForm::Form2PowPlus27 { k, .. } => Some(k),
            NForm::NotCovered => None,
        }
    }

    pub fn m(&self) -> Option<&ExactInt> {
        match self {
            NForm::Form2PowPlus27 { m, .. } => Some(m),
            _ => None,
        }
    }

    /// Evaluates the family's defining formula on the stored witnesses.
    pub fn reconstruct(&self) -> Option<ExactInt> {
        Some(match self {
            NForm::Form16kMinus4 { k } => k * 16 - 4,
            NForm::Form64k { k } => k * 64,
            NForm::Form32kMinus16 { k } => k * 32 - 16,
            NForm::Form8kMinus1 { k } => k * 8 - 1,
            NForm::Form2PowPlus27 { m, k } => {
                let e = m.to_u64()? * 2 + 1;
                (BigInt::one() << e) * (k * 2 - 1) + 27
            }
            NForm::NotCovered => return None,
        })
    }
}

impl fmt::Display for NForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NForm::NotCovered => write!(f, "not covered"),
            NForm::Form2PowPlus27 { m, k } => {
                write!(f, "covered, form {}, m={m} k={k}", self.label())
            }
            other => write!(
                f,
                "covered, form {}, k={}",
                other.label(),
                other.k().expect("covered")
            ),
        }
    }
}

fn low_bits(n: &ExactInt, bits: u32) -> u64 {
    n.magnitude().iter_u64_digits().next().unwrap_or(0) & ((1u64 << bits) - 1)
}

/// Classifies `n ≥ 1` into at most one covered family.
pub fn classify_n(n: &ExactInt) -> Result<NForm> {
    require_positive("n", n)?;
    let r64 = low_bits(n, 6);
    Ok(if r64 == 0 {
        NForm::Form64k { k: n >> 6 }
    } else if r64 % 32 == 16 {
        NForm::Form32kMinus16 { k: (n + 16) >> 5 }
    } else if r64 % 16 == 12 {
        NForm::Form16kMinus4 { k: (n + 4) >> 4 }
    } else if r64 % 8 == 7 {
        NForm::Form8kMinus1 { k: (n + 1) >> 3 }
    } else if n.is_odd() && *n > BigInt::from(27) {
        let (r, odd) = v2_split(&(n - 27))?;
        if r >= 3 && r % 2 == 1 {
            NForm::Form2PowPlus27 {
                m: BigInt::from((r - 1) / 2),
                k: (odd + 1) >> 1,
            }
        } else {
            NForm::NotCovered
        }
    } else {
        NForm::NotCovered
    })
}

/// All covered `n ≤ max` in ascending order.
pub fn covered_upto(max: &ExactInt) -> Result<Vec<(ExactInt, NForm)>> {
    let mut out = Vec::new();
    let mut n = BigInt::one();
    while n <= *max {
        let form = classify_n(&n)?;
        if form.is_covered() {
            out.push((n.clone(), form));
        }
        n += 1;
    }
    Ok(out)
}

/// A bullet of the theorem (`T*`) or of its `b = 1` corollary (`C*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `c ≡ 0 (mod 4)`
    T1,
    /// `bc ≡ 7 (mod 8)`
    T2,
    /// `a ≡ 0 (mod 4)` and `b` odd
    T3,
    /// `a` even and `bc ≡ 3 (mod 4)`
    T4,
    /// `a` odd, `b ≡ 2 (mod 4)` and `c` even
    T5,
    /// `a²bc³ = 2^(2m+1)(2k − 1) + 27`
    T6,
    /// `n ≡ 0 (mod 4)`
    C1,
    /// `n ≡ 7 (mod 8)`
    C2,
    /// `a ≡ 0 (mod 4)`
    C3,
    /// `a` even and `n ≡ 3 (mod 4)`
    C4,
    /// `a²n³ = 2^(2m+1)(2k − 1) + 27`
    C5,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::T1 => "T1",
            Condition::T2 => "T2",
            Condition::T3 => "T3",
            Condition::T4 => "T4",
            Condition::T5 => "T5",
            Condition::T6 => "T6",
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
            Condition::C4 => "C4",
            Condition::C5 => "C5",
        }
    }

    /// Forms `a²bc³` can take when this bullet holds.
    pub fn implied_forms(self) -> &'static [FormKind] {
        use FormKind::*;
        match self {
            Condition::T1 | Condition::C1 => &[F64k],
            Condition::T2 | Condition::C2 => &[F64k, F32kMinus16, F16kMinus4, F8kMinus1],
            Condition::T3 | Condition::C3 => &[F64k, F32kMinus16],
            Condition::T4 | Condition::C4 => &[F64k, F32kMinus16, F16kMinus4],
            Condition::T5 => &[F64k, F32kMinus16],
            Condition::T6 | Condition::C5 => &[F2PowPlus27],
        }
    }

    /// Corollary label of a theorem bullet when `b = 1`. `T5` needs `b ≡ 2 (mod 4)`.
    pub fn as_corollary(self) -> Option<Condition> {
        match self {
            Condition::T1 => Some(Condition::C1),
            Condition::T2 => Some(Condition::C2),
            Condition::T3 => Some(Condition::C3),
            Condition::T4 => Some(Condition::C4),
            Condition::T6 => Some(Condition::C5),
            _ => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Query {
    Theorem {
        #[serde(with = "crate::serde_exact::int")]
        a: ExactInt,
        #[serde(with = "crate::serde_exact::int")]
        b: ExactInt,
        #[serde(with = "crate::serde_exact::int")]
        c: ExactInt,
    },
    Corollary {
        #[serde(with = "crate::serde_exact::int")]
        a: ExactInt,
        #[serde(with = "crate::serde_exact::int")]
        n: ExactInt,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    ProvedNoSolutions,
    /// No criterion applies. Says nothing about solvability.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub query: Query,
    pub matched: Vec<Condition>,
    /// `a²bc³`, the parameter of the associated cubic.
    #[serde(with = "crate::serde_exact::int")]
    pub n: ExactInt,
    pub n_form: NForm,
    pub status: VerdictStatus,
}

/// Evaluates every bullet of the theorem for `(a, b, c)`.
pub fn check_theorem(a: &ExactInt, b: &ExactInt, c: &ExactInt) -> Result<Verdict> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_positive("c", c)?;

    let n = a * a * b * c * c * c;
    let n_form = classify_n(&n)?;

    let a8 = low_bits(a, 3);
    let b8 = low_bits(b, 3);
    let c8 = low_bits(c, 3);
    let bc8 = (b8 * c8) % 8;

    let mut matched = Vec::new();
    if c8.is_multiple_of(4) {
        matched.push(Condition::T1);
    }
    if bc8 == 7 {
        matched.push(Condition::T2);
    }
    if a8.is_multiple_of(4) && b8 % 2 == 1 {
        matched.push(Condition::T3);
    }
    if a8.is_multiple_of(2) && bc8 % 4 == 3 {
        matched.push(Condition::T4);
    }
    if a8 % 2 == 1 && b8 % 4 == 2 && c8.is_multiple_of(2) {
        matched.push(Condition::T5);
    }
    if n_form.kind() == FormKind::F2PowPlus27 {
        matched.push(Condition::T6);
    }

    let status = if matched.is_empty() {
        VerdictStatus::Unknown
    } else {
        VerdictStatus::ProvedNoSolutions
    };
    Ok(Verdict {
        query: Query::Theorem {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        matched,
        n,
        n_form,
        status,
    })
}

/// The `b = 1` specialization, with corollary labels.
pub fn check_corollary(a: &ExactInt, n: &ExactInt) -> Result<Verdict> {
    let mut v = check_theorem(a, &BigInt::one(), n)?;
    v.matched = v
        .matched
        .iter()
        .map(|c| c.as_corollary().expect("T5 cannot hold with b = 1"))
        .collect();
    v.query = Query::Corollary {
        a: a.clone(),
        n: n.clone(),
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn form(n: i64) -> NForm {
        classify_n(&int(n)).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(form(12), NForm::Form16kMinus4 { k: int(1) });
        assert_eq!(
            form(35),
            NForm::Form2PowPlus27 {
                m: int(1),
                k: int(1)
            }
        );
        assert_eq!(form(27), NForm::NotCovered);
        assert_eq!(form(64), NForm::Form64k { k: int(1) });
        assert_eq!(form(16), NForm::Form32kMinus16 { k: int(1) });
        assert_eq!(form(7), NForm::Form8kMinus1 { k: int(1) });
        assert!(classify_n(&int(0)).is_err());
        assert!(classify_n(&int(-7)).is_err());
    }

    #[test]
    fn fifth_form_needs_m_at_least_one() {
        // 29 = 2·1 + 27 would need m = 0.
        assert_eq!(form(29), NForm::NotCovered);
        // 59 = 2^5·1 + 27: m = 2, k = 1.
        assert_eq!(
            form(59),
            NForm::Form2PowPlus27 {
                m: int(2),
                k: int(1)
            }
        );
        // 43 = 2^4 + 27 has even valuation.
        assert_eq!(form(43), NForm::NotCovered);
        // 51 = 2^3·3 + 27: m = 1, k = 2.
        assert_eq!(
            form(51),
            NForm::Form2PowPlus27 {
                m: int(1),
                k: int(2)
            }
        );
    }

    #[test]
    fn witnesses_reconstruct() {
        for n in 1..=20_000i64 {
            let f = form(n);
            if let Some(r) = f.reconstruct() {
                assert_eq!(r, int(n), "{f:?}");
                assert!(*f.k().unwrap() >= int(1));
                if let Some(m) = f.m() {
                    assert!(*m >= int(1));
                }
            }
        }
    }

    #[test]
    fn covered_upto_examples() {
        let small: Vec<_> = covered_upto(&int(16))
            .unwrap()
            .into_iter()
            .map(|(n, f)| (n, f.kind()))
            .collect();
        assert_eq!(
            small,
            vec![
                (int(7), FormKind::F8kMinus1),
                (int(12), FormKind::F16kMinus4),
                (int(15), FormKind::F8kMinus1),
                (int(16), FormKind::F32kMinus16),
            ]
        );
        assert!(covered_upto(&int(1)).unwrap().is_empty());
        assert!(covered_upto(&int(35))
            .unwrap()
            .iter()
            .any(|(n, f)| *n == int(35) && f.kind() == FormKind::F2PowPlus27));
    }

    #[test]
    fn theorem_examples() {
        let v = check_theorem(&int(1), &int(1), &int(4)).unwrap();
        assert_eq!(v.matched, vec![Condition::T1]);
        assert_eq!(v.n, int(64));
        assert_eq!(v.n_form.kind(), FormKind::F64k);
        assert_eq!(v.status, VerdictStatus::ProvedNoSolutions);

        let v = check_theorem(&int(2), &int(1), &int(3)).unwrap();
        assert_eq!(v.matched, vec![Condition::T4]);
        assert_eq!(v.n, int(108));
        assert_eq!(v.n_form.kind(), FormKind::F16kMinus4);

        let v = check_theorem(&int(1), &int(1), &int(3)).unwrap();
        assert!(v.matched.is_empty());
        assert_eq!(v.n, int(27));
        assert_eq!(v.n_form, NForm::NotCovered);
        assert_eq!(v.status, VerdictStatus::Unknown);

        assert!(check_theorem(&int(0), &int(1), &int(1)).is_err());
    }

    #[test]
    fn theorem_reports_overlapping_bullets() {
        // a = 4, b = 1, c = 4 hits T1 and T3 at once.
        let v = check_theorem(&int(4), &int(1), &int(4)).unwrap();
        assert_eq!(v.matched, vec![Condition::T1, Condition::T3]);
        // a = 1, b = 2, c = 2: T5, n = 16.
        let v = check_theorem(&int(1), &int(2), &int(2)).unwrap();
        assert_eq!(v.matched, vec![Condition::T5]);
        assert_eq!(v.n_form.kind(), FormKind::F32kMinus16);
    }

    #[test]
    fn corollary_examples() {
        let v = check_corollary(&int(1), &int(7)).unwrap();
        assert_eq!(v.matched, vec![Condition::C2]);
        assert_eq!(v.status, VerdictStatus::ProvedNoSolutions);

        let v = check_corollary(&int(1), &int(5)).unwrap();
        assert_eq!(v.status, VerdictStatus::Unknown);

        let v = check_corollary(&int(4), &int(1)).unwrap();
        assert_eq!(v.matched, vec![Condition::C3]);
        assert_eq!(v.n, int(16));
        assert_eq!(v.n_form.kind(), FormKind::F32kMinus16);
    }

    #[test]
    fn corollary_agrees_with_theorem() {
        for a in 1..=40i64 {
            for n in 1..=40i64 {
                let t = check_theorem(&int(a), &int(1), &int(n)).unwrap();
                let c = check_corollary(&int(a), &int(n)).unwrap();
                assert_eq!(t.n, c.n);
                assert_eq!(t.n_form, c.n_form);
                assert_eq!(t.status, c.status);
                let relabeled: Vec<_> =
                    t.matched.iter().map(|m| m.as_corollary().unwrap()).collect();
                assert_eq!(relabeled, c.matched);
            }
        }
    }

    #[test]
    fn verdict_invariants_small_cube() {
        for a in 1..=20i64 {
            for b in 1..=20i64 {
                for c in 1..=20i64 {
                    let v = check_theorem(&int(a), &int(b), &int(c)).unwrap();
                    assert_eq!(
                        v.status == VerdictStatus::ProvedNoSolutions,
                        !v.matched.is_empty()
                    );
                    for cond in &v.matched {
                        assert!(
                            cond.implied_forms().contains(&v.n_form.kind()),
                            "({a},{b},{c}) {cond} -> {:?}",
                            v.n_form
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_json_round_trip() {
        for (a, b, c) in [(1, 1, 4), (2, 1, 3), (1, 1, 3), (1, 1, 2)] {
            let v = check_theorem(&int(a), &int(b), &int(c)).unwrap();
            let s = serde_json::to_string(&v).unwrap();
            let back: Verdict = serde_json::from_str(&s).unwrap();
            assert_eq!(back, v);
        }
        let v = check_theorem(&int(1), &int(1), &int(4)).unwrap();
        let s = serde_json::to_value(&v).unwrap();
        assert_eq!(s["matched"], serde_json::json!(["T1"]));
        assert_eq!(s["n_form"]["form"], "64k");
        assert_eq!(s["status"], "proved_no_solutions");
    }
}
