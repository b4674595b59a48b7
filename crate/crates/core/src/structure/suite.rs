//! Transfer checks: properties that `A ≤fe B` must carry from `A` to `B`.

use super::ap::{diff_member, find_ap, shifted_intersection};
use super::classify::is_piecewise_syndetic;
use super::density::exact_density;
use crate::embed::{fe_decide, FeCertificate, FeVerdict};
use crate::natset::{FiniteSet, NatSet};
use crate::random;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Longest progression length transferred.
    pub k_max: u64,
    /// Differences `d < d_max` are compared.
    pub d_max: u64,
    /// Shift families `G ⊆ [0, g_max)`, `1 <= |G| <= 3`.
    pub g_max: u64,
    /// Progressions in `A` are searched below this bound.
    pub ap_horizon: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k_max: 5,
            d_max: 256,
            g_max: 6,
            ap_horizon: 256,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: CheckStatus,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub a: String,
    pub b: String,
    pub fe: FeVerdict,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count()
    }
}

fn check(name: &str, failure: Option<String>) -> CheckResult {
    CheckResult {
        check: name.to_string(),
        status: if failure.is_some() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
        counterexample: failure,
    }
}

/// All `G ⊆ [0, g_max)` with `1 <= |G| <= 3`, in lexicographic order.
pub fn small_shift_families(g_max: u64) -> Vec<FiniteSet> {
    let mut out = Vec::new();
    for a in 0..g_max {
        out.push(FiniteSet::new(vec![a]));
        for b in a + 1..g_max {
            out.push(FiniteSet::new(vec![a, b]));
            for c in b + 1..g_max {
                out.push(FiniteSet::new(vec![a, b, c]));
            }
        }
    }
    out
}

/// Runs the transfer checks on a decidable pair. When `A ≤fe B` fails the
/// checks are reported as vacuous.
pub fn property_suite(a: &NatSet, b: &NatSet, config: &SuiteConfig) -> crate::Result<SuiteReport> {
    let fe = fe_decide(a, b)?;
    let names = [
        "piecewise_syndetic",
        "arithmetic_progressions",
        "banach_density",
        "differences",
        "shifted_intersections",
    ];
    let shift = match &fe {
        FeVerdict::Embeds {
            certificate: FeCertificate::ClosureShift { k } | FeCertificate::UniformShift { k },
        } => *k,
        _ => {
            let checks = names
                .iter()
                .map(|n| CheckResult {
                    check: n.to_string(),
                    status: CheckStatus::Vacuous,
                    counterexample: None,
                })
                .collect();
            return Ok(SuiteReport {
                a: a.to_string(),
                b: b.to_string(),
                fe,
                checks,
            });
        }
    };
    let mut checks = Vec::with_capacity(names.len());

    let pw = is_piecewise_syndetic(a, 1, 1).is_true() && !is_piecewise_syndetic(b, 1, 1).is_true();
    checks.push(check(names[0], pw.then(|| "A piecewise syndetic, B not".to_string())));

    // a progression in A below h shows up in B below h + shift when it transfers at all
    let mut ap_fail = None;
    for k in 1..=config.k_max {
        if let Some((s, d)) = find_ap(a, k, config.ap_horizon) {
            if find_ap(b, k, config.ap_horizon + shift).is_none() {
                ap_fail = Some(format!("{k}-AP ({s},{d}) in A, none in B"));
                break;
            }
        }
    }
    checks.push(check(names[1], ap_fail));

    let (da, db) = (exact_density(a).expect("decidable"), exact_density(b).expect("decidable"));
    checks.push(check(names[2], (da > db).then(|| format!("BD(A)={da} > BD(B)={db}"))));

    let diff_fail = (0..config.d_max)
        .find(|&d| diff_member(a, d, 1).is_true() && !diff_member(b, d, 1).is_true())
        .map(|d| format!("d={d} in A-A but not in B-B"));
    checks.push(check(names[3], diff_fail));

    let mut si_fail = None;
    for g in small_shift_families(config.g_max) {
        let (sa, sb) = (shifted_intersection(a, &g), shifted_intersection(b, &g));
        if !fe_decide(&sa, &sb)?.embeds() {
            si_fail = Some(format!("G={:?}", g.elements()));
            break;
        }
    }
    checks.push(check(names[4], si_fail));

    Ok(SuiteReport {
        a: a.to_string(),
        b: b.to_string(),
        fe,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRun {
    pub seed: u64,
    pub count: u64,
    pub max_threshold: usize,
    pub max_period: usize,
    pub violations: usize,
    pub vacuous: usize,
    /// Reports with at least one failing check, ordered by case index.
    pub failures: Vec<(u64, SuiteReport)>,
    /// Every case, when requested.
    pub cases: Option<Vec<SuiteReport>>,
}

/// Randomized suite over `count` embeddable pairs. Case `i` draws from its own
/// stream seeded by `(seed, i)`, so results do not depend on scheduling.
pub fn run_suite(
    seed: u64,
    count: u64,
    max_t: usize,
    max_p: usize,
    config: &SuiteConfig,
    keep_cases: bool,
) -> crate::Result<SuiteRun> {
    let reports: Vec<SuiteReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = random::rng(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let (a, b) = random::embeddable_pair(&mut rng, max_t, max_p);
            property_suite(&a, &b, config)
        })
        .collect::<crate::Result<_>>()?;
    let violations = reports.iter().map(SuiteReport::violations).sum();
    let vacuous = reports
        .iter()
        .filter(|r| r.checks.iter().any(|c| c.status == CheckStatus::Vacuous))
        .count();
    let failures = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.violations() > 0)
        .map(|(i, r)| (i as u64, r.clone()))
        .collect();
    Ok(SuiteRun {
        seed,
        count,
        max_threshold: max_t,
        max_period: max_p,
        violations,
        vacuous,
        failures,
        cases: keep_cases.then_some(reports),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evens_in_naturals() {
        let r = property_suite(&NatSet::ap(0, 2), &NatSet::naturals(), &SuiteConfig::default()).unwrap();
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass), "{r:?}");
    }

    #[test]
    fn mult6_in_mult3() {
        let (a, b) = (NatSet::ap(0, 6), NatSet::ap(0, 3));
        let r = property_suite(&a, &b, &SuiteConfig::default()).unwrap();
        assert_eq!(r.violations(), 0);
        assert_eq!(exact_density(&a).unwrap().to_string(), "1/6");
        assert_eq!(exact_density(&b).unwrap().to_string(), "1/3");
    }

    #[test]
    fn non_embeddable_is_vacuous() {
        let r = property_suite(&NatSet::ap(0, 3), &NatSet::ap(0, 6), &SuiteConfig::default()).unwrap();
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Vacuous));
    }

    #[test]
    fn families_count() {
        // 6 + 15 + 20
        assert_eq!(small_shift_families(6).len(), 41);
    }

    #[test]
    fn small_run_is_deterministic() {
        let c = SuiteConfig::default();
        let x = run_suite(3, 20, 16, 12, &c, true).unwrap();
        let y = run_suite(3, 20, 16, 12, &c, true).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.violations, 0);
    }
}
