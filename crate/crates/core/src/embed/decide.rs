use super::translate::least_witness;
use super::{Exhaustiveness, FeCertificate, FeRefutation, FeVerdict, PrefixWitness, ResidueStep};
use crate::error::{Error, Result};
use crate::natset::{FiniteSet, Inclusion, NatSet, Periodic};
use crate::verdict::{Horizon, Verdict3};
use num_integer::Integer;
use serde::Serialize;

fn decidable_pair(a: &NatSet, b: &NatSet, op: &'static str) -> Result<(Periodic, Periodic)> {
    match (a.as_periodic(), b.as_periodic()) {
        (Some(pa), Some(pb)) => Ok((pa, pb)),
        _ => Err(Error::TierError { op }),
    }
}

/// Exact decision of `A ≤fe B` for finite or eventually periodic operands.
///
/// Embeds with the least `k` such that `A ⊆ B - k`; otherwise a refutation
/// listing, for every shift `k < t_B + p_B`, an element of `A` it misses.
pub fn fe_decide(a: &NatSet, b: &NatSet) -> Result<FeVerdict> {
    let (_, pb) = decidable_pair(a, b, "fe_decide")?;
    let (t, p) = (pb.threshold(), pb.period());
    let mut steps = Vec::new();
    for k in 0..t + p {
        match a.is_subset(&b.shift_left(k)) {
            Inclusion::Holds => {
                return Ok(FeVerdict::Embeds {
                    certificate: FeCertificate::ClosureShift { k },
                })
            }
            Inclusion::Fails { witness } => steps.push(ResidueStep {
                shift: k,
                period: (k >= t).then_some(p),
                violated: witness,
            }),
            Inclusion::Unknown { .. } => unreachable!("decidable subset test"),
        }
    }
    Ok(FeVerdict::Refuted {
        refutation: refutation_from_steps(&pb, steps),
    })
}

fn refutation_from_steps(pb: &Periodic, steps: Vec<ResidueStep>) -> FeRefutation {
    let finite_part = FiniteSet::new(steps.iter().map(|s| s.violated).collect());
    let exhaustiveness = if pb.is_finite() {
        Exhaustiveness::BoundedDomain {
            bound: pb.threshold(),
            steps,
        }
    } else {
        Exhaustiveness::ResidueProof {
            threshold: pb.threshold(),
            period: pb.period(),
            steps,
        }
    };
    FeRefutation {
        finite_part: finite_part.elements().to_vec(),
        exhaustiveness,
    }
}

/// Refutes a single finite `F` against eventually periodic `B`, if no shift works.
fn refute_finite(f: &FiniteSet, pb: &Periodic) -> Option<FeRefutation> {
    let (t, p) = (pb.threshold(), pb.period());
    let mut steps = Vec::new();
    for k in 0..t + p {
        let bad = f.elements().iter().find(|&&x| !pb.member(x + k))?;
        steps.push(ResidueStep {
            shift: k,
            period: (k >= t).then_some(p),
            violated: *bad,
        });
    }
    Some(refutation_from_steps(pb, steps))
}

/// Bounded semi-decision on any tiers: prefixes `A ∩ n` for `n <= n_max`, shifts `k < k_max`.
///
/// Decidable pairs are delegated to [`fe_decide`]. A failing prefix is a
/// refutation only when `B` is eventually periodic and the shift range covers
/// `t_B + p_B`; otherwise the answer is `Unknown` at the exhausted bounds.
pub fn fe_bounded(a: &NatSet, b: &NatSet, n_max: u64, k_max: u64) -> FeVerdict {
    if a.is_decidable() && b.is_decidable() {
        return fe_decide(a, b).expect("decidable pair");
    }
    let mut lengths: Vec<u64> = a.iter_range(0, n_max).map(|x| x + 1).collect();
    if lengths.last() != Some(&n_max) {
        lengths.push(n_max);
    }
    let mut witnesses = Vec::new();
    let mut k_from = 0;
    for n in lengths {
        let f = a.prefix(n);
        match least_witness(&f, b, k_from, k_max) {
            Some(k) => {
                witnesses.push(PrefixWitness { n, k });
                k_from = k;
            }
            None => {
                if let Some(pb) = b.as_periodic() {
                    if k_max >= pb.threshold() + pb.period() {
                        if let Some(refutation) = refute_finite(&f, &pb) {
                            return FeVerdict::Refuted { refutation };
                        }
                    }
                }
                return FeVerdict::Unknown {
                    horizon: Horizon::new(k_max, format!("no shift k < k_max embeds A∩{n} (n_max {n_max})")),
                };
            }
        }
    }
    FeVerdict::Embeds {
        certificate: FeCertificate::PrefixWitnesses { witnesses },
    }
}

/// Result of [`proper_fe`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperFeReport {
    pub fe: FeVerdict,
    /// Every finite subset of `A` has infinitely many witnesses.
    pub proper: bool,
    /// A shift `k >= t_B` with `A + k ⊆ B`; it recurs every `p_B`.
    pub tail_shift: Option<u64>,
    /// When embeddable but not properly: the shift with `A + k ⊆ B`.
    pub uniform_shift: Option<u64>,
}

/// Proper finite embeddability for finite or eventually periodic operands.
///
/// Witness sets for a finite `F` are eventually periodic with period `p_B`,
/// so they are infinite iff some witness is `>= t_B`. Shrinking residue sets
/// over the prefixes of `A` force one residue to serve all of `A`, hence
/// proper embeddability is `A + k ⊆ B` for some `k ∈ [t_B, t_B + p_B)`.
pub fn proper_fe(a: &NatSet, b: &NatSet) -> Result<ProperFeReport> {
    let (_, pb) = decidable_pair(a, b, "proper_fe")?;
    let fe = fe_decide(a, b)?;
    let (t, p) = (pb.threshold(), pb.period());
    let tail_shift = (t..t + p).find(|&k| a.is_subset(&b.shift_left(k)).holds());
    let uniform_shift = match (&fe, tail_shift) {
        (FeVerdict::Embeds { certificate: FeCertificate::ClosureShift { k } }, None) => Some(*k),
        _ => None,
    };
    Ok(ProperFeReport {
        fe,
        proper: tail_shift.is_some(),
        tail_shift,
        uniform_shift,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslateVerdict {
    pub verdict: Verdict3,
    /// Least `k` with `A + k ⊆ B` when the verdict is true.
    pub k: Option<u64>,
}

const TRANSLATE_SCAN_CAP: u64 = 4096;

/// Whether a rightward translate of the whole of `A` lies in `B`.
pub fn includes_translate(a: &NatSet, b: &NatSet, horizon: u64) -> TranslateVerdict {
    let found = |k| TranslateVerdict {
        verdict: Verdict3::True,
        k: Some(k),
    };
    if let (Some(_), Some(pb)) = (a.as_periodic(), b.as_periodic()) {
        let t = pb.threshold() + pb.period();
        return match (0..t).find(|&k| a.is_subset(&b.shift_left(k)).holds()) {
            Some(k) => found(k),
            None => TranslateVerdict {
                verdict: Verdict3::False,
                k: None,
            },
        };
    }
    if let (Some(_), Some(pb)) = (a.shape(), b.as_periodic()) {
        // B - k repeats after t_B + p_B, and shape inclusion in B - k is exact
        let mut undecided = false;
        for k in 0..pb.threshold() + pb.period() {
            match a.is_subset_within(&b.shift_left(k), horizon) {
                Inclusion::Holds => return found(k),
                Inclusion::Fails { .. } => {}
                Inclusion::Unknown { .. } => undecided = true,
            }
        }
        if !undecided {
            return TranslateVerdict {
                verdict: Verdict3::False,
                k: None,
            };
        }
    }
    if let Some(f) = a.as_finite() {
        if let Some(k) = least_witness(f, b, 0, horizon) {
            return found(k);
        }
    } else {
        let cap = horizon.min(TRANSLATE_SCAN_CAP);
        for k in 0..cap {
            if a.is_subset_within(&b.shift_left(k), horizon).holds() {
                return found(k);
            }
        }
    }
    TranslateVerdict {
        verdict: Verdict3::unknown(horizon, "no translate found below the horizon"),
        k: None,
    }
}

/// Both directions; exact when decidable, bounded otherwise.
pub fn fe_equiv(a: &NatSet, b: &NatSet, n_max: u64, k_max: u64) -> (FeVerdict, FeVerdict) {
    (fe_bounded(a, b, n_max, k_max), fe_bounded(b, a, n_max, k_max))
}

/// Re-checks the evidence in `verdict` by direct membership tests.
///
/// Returns `True` when the evidence is valid, `False` when it is not, and
/// `Unknown` for unknown verdicts or generator-tier claims that cannot be
/// re-checked within `horizon`.
pub fn verify_verdict(a: &NatSet, b: &NatSet, verdict: &FeVerdict, horizon: u64) -> Verdict3 {
    match verdict {
        FeVerdict::Embeds { certificate } => match certificate {
            FeCertificate::UniformShift { k } | FeCertificate::ClosureShift { k } => {
                match (a.as_periodic(), b.as_periodic()) {
                    (Some(pa), Some(pb)) => {
                        let bound = pa.threshold().max(pb.threshold()) + pa.period().lcm(&pb.period());
                        Verdict3::from_bool((0..bound).all(|x| !pa.member(x) || pb.member(x + k)))
                    }
                    _ => a.shift_right(*k).is_subset_within(b, horizon).verdict(),
                }
            }
            FeCertificate::PrefixWitnesses { witnesses } => Verdict3::from_bool(
                witnesses
                    .iter()
                    .all(|w| a.iter_range(0, w.n).all(|x| b.member(x + w.k))),
            ),
        },
        FeVerdict::Refuted { refutation } => verify_refutation(a, b, refutation),
        FeVerdict::Unknown { horizon } => Verdict3::Unknown {
            horizon: horizon.clone(),
        },
    }
}

fn verify_refutation(a: &NatSet, b: &NatSet, r: &FeRefutation) -> Verdict3 {
    let Some(pb) = b.as_periodic() else {
        return Verdict3::False;
    };
    let f = &r.finite_part;
    if f.is_empty() || !f.iter().all(|&x| a.member(x)) {
        return Verdict3::False;
    }
    let (steps, covered_to) = match &r.exhaustiveness {
        Exhaustiveness::ResidueProof { threshold, period, steps } => {
            // B - k for k >= threshold must depend only on k mod period
            if *threshold < pb.threshold() || *period % pb.period() != 0 {
                return Verdict3::False;
            }
            (steps, threshold + period)
        }
        Exhaustiveness::BoundedDomain { bound, steps } => {
            if !pb.is_finite() || pb.threshold() > *bound {
                return Verdict3::False;
            }
            (steps, *bound)
        }
    };
    let ok = (0..covered_to).all(|k| {
        steps
            .iter()
            .any(|s| s.shift == k && f.contains(&s.violated) && !b.member(s.violated + k))
    });
    Verdict3::from_bool(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr;
    use crate::testutil::arb_periodic;
    use proptest::prelude::*;

    fn s(e: &str) -> NatSet {
        parse_expr(e).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert_eq!(
            fe_decide(&s("ap(0,2)"), &s("N")).unwrap(),
            FeVerdict::Embeds {
                certificate: FeCertificate::ClosureShift { k: 0 }
            }
        );
        let v = fe_decide(&s("ap(0,3)"), &s("ap(0,6)")).unwrap();
        match &v {
            FeVerdict::Refuted { refutation } => assert_eq!(refutation.finite_part, vec![0, 3]),
            other => panic!("{other:?}"),
        }
        assert!(verify_verdict(&s("ap(0,3)"), &s("ap(0,6)"), &v, 100).is_true());
        assert!(fe_decide(&s("{0,2}"), &s("ap(0,2)")).unwrap().embeds());
        assert_eq!(
            fe_decide(&s("qset"), &s("N")).unwrap_err(),
            Error::TierError { op: "fe_decide" }
        );
    }

    #[test]
    fn finite_rhs_uses_bounded_domain() {
        let v = fe_decide(&s("{0,1}"), &s("{4,7}")).unwrap();
        match &v {
            FeVerdict::Refuted { refutation } => {
                assert!(matches!(refutation.exhaustiveness, Exhaustiveness::BoundedDomain { bound: 8, .. }))
            }
            other => panic!("{other:?}"),
        }
        assert!(verify_verdict(&s("{0,1}"), &s("{4,7}"), &v, 100).is_true());
        let v = fe_decide(&s("{3}"), &s("empty")).unwrap();
        assert!(v.refuted());
        assert!(verify_verdict(&s("{3}"), &s("empty"), &v, 100).is_true());
        assert!(fe_decide(&s("empty"), &s("empty")).unwrap().embeds());
    }

    #[test]
    fn bounded_examples() {
        let v = fe_bounded(&s("interval(0,10)"), &s("qset"), 10, 1 << 12);
        match &v {
            FeVerdict::Embeds {
                certificate: FeCertificate::PrefixWitnesses { witnesses },
            } => assert_eq!(witnesses.last().unwrap(), &PrefixWitness { n: 10, k: 1024 }),
            other => panic!("{other:?}"),
        }
        let v = fe_bounded(&s("N"), &s("qset"), 6, 1 << 10);
        assert!(v.embeds());
        assert!(verify_verdict(&s("N"), &s("qset"), &v, 100).is_true());
        assert!(fe_bounded(&s("{0,1}"), &s("ap(0,2)"), 5, 10).refuted());
        // generator on the left, periodic on the right: exhaustive refutation
        let v = fe_bounded(&s("qset"), &s("ap(0,2)"), 8, 100);
        assert!(v.refuted());
        assert!(verify_verdict(&s("qset"), &s("ap(0,2)"), &v, 100).is_true());
        // generator on the right never refutes
        assert!(fe_bounded(&s("interval(0,30)"), &s("qset"), 30, 1000).is_unknown());
    }

    #[test]
    fn proper_examples() {
        let r = proper_fe(&s("{0,2}"), &s("ap(0,2)")).unwrap();
        assert!(r.proper && r.fe.embeds());
        let r = proper_fe(&s("{0}"), &s("{5}")).unwrap();
        assert!(r.fe.embeds() && !r.proper);
        assert_eq!(r.uniform_shift, Some(5));
    }

    #[test]
    fn translate_examples() {
        let t = includes_translate(&s("ap(0,6)"), &s("ap(0,3)"), 100);
        assert_eq!((t.verdict, t.k), (Verdict3::True, Some(0)));
        let t = includes_translate(&s("ap(0,2)"), &s("ap(1,2)"), 100);
        assert_eq!(t.k, Some(1));
        assert!(includes_translate(&s("ap(0,3)"), &s("ap(0,6)"), 100).verdict.is_false());
        let t = includes_translate(&s("pow2 \\ {1}"), &s("qset"), 100);
        assert_eq!(t.k, Some(0));
        let t = includes_translate(&NatSet::powers_of_two().tail(8), &s("qset"), 100);
        assert_eq!(t.k, Some(0));
    }

    #[test]
    fn equiv_examples() {
        let (x, y) = fe_equiv(&s("ap(0,2)"), &s("ap(1,2)"), 10, 10);
        assert!(x.embeds() && y.embeds());
        let (x, y) = fe_equiv(&s("N"), &s("ap(0,2)"), 10, 10);
        assert!(x.refuted() && y.embeds());
        if let FeVerdict::Refuted { refutation } = x {
            assert_eq!(refutation.finite_part, vec![0, 1]);
        }
    }

    // Brute-force oracle: every prefix up to n0 has a shift up to k0.
    fn oracle(a: &Periodic, b: &Periodic) -> bool {
        let n0 = a.threshold() + b.threshold() + 2 * a.period().lcm(&b.period()) * b.period();
        let k0 = b.threshold() + b.period() + n0;
        (0..=n0).all(|n| (0..=k0).any(|k| (0..n).all(|x| !a.member(x) || b.member(x + k))))
    }

    proptest! {
        #[test]
        fn decide_matches_oracle(a in arb_periodic(8, 6), b in arb_periodic(8, 6)) {
            let v = fe_decide(&a.clone().into(), &b.clone().into()).unwrap();
            prop_assert_eq!(v.embeds(), oracle(&a, &b));
            prop_assert!(verify_verdict(&a.clone().into(), &b.clone().into(), &v, 1000).is_true());
        }

        #[test]
        fn proper_implies_fe(a in arb_periodic(8, 6), b in arb_periodic(8, 6)) {
            let r = proper_fe(&a.into(), &b.into()).unwrap();
            if r.proper {
                prop_assert!(r.fe.embeds());
            }
            if r.fe.embeds() && !r.proper {
                prop_assert!(r.uniform_shift.is_some());
            }
        }
    }
}
