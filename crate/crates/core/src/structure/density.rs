use crate::error::{Error, Result};
use crate::natset::NatSet;
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use std::fmt;

/// Exact non-negative rational; serializes as `"num/den"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<u64>);

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(Ratio::from_integer(0))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub n: u64,
    pub count: u64,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub natural_density: Option<Rational>,
    pub density_samples: Vec<Sample>,
    pub banach_upper: Option<Rational>,
    /// For each window length `n`: the best `|S ∩ [k, k+n)|` with `k + n <= horizon`.
    pub banach_samples: Vec<Sample>,
    pub horizon: u64,
}

/// Exact tail density `ones / period` of a decidable set (zero when finite).
pub fn exact_density(s: &NatSet) -> Option<Rational> {
    let p = s.as_periodic()?;
    Some(Rational::new(p.tail_ones(), p.period()))
}

/// `(n, |S ∩ n| / n)` at each requested `n >= 1`.
pub fn density_samples(s: &NatSet, ns: &[u64]) -> Vec<Sample> {
    let top = ns.iter().copied().max().unwrap_or(0);
    let w = s.window(0, top);
    let mut sorted: Vec<u64> = ns.iter().copied().filter(|&n| n > 0).collect();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .map(|n| {
            let count = w.bits.count_ones_range(0, n as usize) as u64;
            Sample {
                n,
                count,
                value: Rational::new(count, n),
            }
        })
        .collect()
}

/// Sample points `2^m + m` for `m = 2..=m_max`, where `|Q ∩ n| / n` peaks.
pub fn q_peak_points(m_max: u32) -> Vec<u64> {
    (2..=m_max).map(|m| (1u64 << m) + m as u64).collect()
}

/// Maximum count of members in any length-`len` window inside `[0, horizon)`.
pub fn max_window_count(s: &NatSet, len: u64, horizon: u64) -> u64 {
    if len == 0 || len > horizon {
        return 0;
    }
    let w = s.window(0, horizon);
    let bits = &w.bits;
    let len = len as usize;
    let mut cur = bits.count_ones_range(0, len) as u64;
    let mut best = cur;
    for k in 1..=(horizon as usize - len) {
        cur += u64::from(bits.get(k + len - 1));
        cur -= u64::from(bits.get(k - 1));
        best = best.max(cur);
    }
    best
}

pub fn density_report(s: &NatSet, horizon: u64, window_lengths: &[u64]) -> Result<DensityReport> {
    if let Some(&m) = window_lengths.iter().max() {
        if m > horizon {
            return Err(Error::InvalidArgument(format!(
                "horizon {horizon} is below the largest window length {m}"
            )));
        }
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let mut ns: Vec<u64> = window_lengths.to_vec();
    ns.push(horizon);
    let exact = exact_density(s);
    let banach_samples = window_lengths
        .iter()
        .filter(|&&n| n > 0)
        .map(|&n| {
            let count = max_window_count(s, n, horizon);
            Sample {
                n,
                count,
                value: Rational::new(count, n),
            }
        })
        .collect();
    Ok(DensityReport {
        natural_density: exact,
        density_samples: density_samples(s, &ns),
        banach_upper: exact,
        banach_samples,
        horizon,
    })
}

/// CSV rows `n,count,value` for plotting.
pub fn samples_csv(samples: &[Sample]) -> String {
    let mut out = String::from("n,count,value\n");
    for s in samples {
        out.push_str(&format!("{},{},{}\n", s.n, s.count, s.value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evens_density() {
        let r = density_report(&NatSet::ap(0, 2), 64, &[1, 2, 7]).unwrap();
        assert_eq!(r.natural_density, Some(Rational::new(1, 2)));
        assert_eq!(r.banach_upper, Some(Rational::new(1, 2)));
        assert_eq!(r.banach_samples[0].value, Rational::new(1, 1));
        assert_eq!(r.banach_samples[2].value, Rational::new(4, 7));
    }

    #[test]
    fn q_peaks_closed_form() {
        let q = NatSet::q_set();
        let samples = density_samples(&q, &q_peak_points(20));
        assert_eq!(samples.len(), 19);
        for (m, s) in (2u64..=20).zip(&samples) {
            assert_eq!(s.count, m * (m + 1) / 2);
            assert_eq!(s.value, Rational::new(m * m + m, (1 << (m + 1)) + 2 * m));
        }
    }

    #[test]
    fn q_banach_windows_reach_one() {
        let q = NatSet::q_set();
        let r = density_report(&q, 1 << 21, &(1..=20).collect::<Vec<_>>()).unwrap();
        assert!(r.banach_samples.iter().all(|s| s.value == Rational::new(1, 1)));
        assert_eq!(r.banach_upper, None);
    }

    #[test]
    fn horizon_precondition() {
        assert!(density_report(&NatSet::naturals(), 4, &[8]).is_err());
    }

    #[test]
    fn csv_format() {
        let s = density_samples(&NatSet::ap(0, 3), &[3, 4]);
        assert_eq!(samples_csv(&s), "n,count,value\n3,1,1/3\n4,2,1/2\n");
    }
}
