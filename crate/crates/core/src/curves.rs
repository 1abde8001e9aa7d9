//! Disclosure curves: against the amount of background knowledge, and
//! against the minimum bucket entropy of a synthetic family.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::disclosure::{max_disclosure_negated_atoms, AtomPartition, DisclosureEngine};
use crate::error::{Error, Result};
use crate::prob::Probability;
use crate::table::{Bucketization, SensitiveDomain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnowledgeKind {
    Implications,
    Negations,
}

impl KnowledgeKind {
    pub fn name(self) -> &'static str {
        match self {
            KnowledgeKind::Implications => "implications",
            KnowledgeKind::Negations => "negations",
        }
    }
}

/// Horizontal coordinate of a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Abscissa {
    K(usize),
    /// Bits.
    Entropy(f64),
}

impl Abscissa {
    pub fn value(self) -> f64 {
        match self {
            Abscissa::K(k) => k as f64,
            Abscissa::Entropy(h) => h,
        }
    }
}

impl fmt::Display for Abscissa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Abscissa::K(k) => write!(f, "{k}"),
            Abscissa::Entropy(h) => write!(f, "{h:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub series: String,
    pub x: Abscissa,
    pub k: usize,
    pub disclosure: Probability,
}

impl CurvePoint {
    /// Order used for emission: by series, then by `x`.
    pub fn emission_order(&self, other: &Self) -> Ordering {
        self.series
            .cmp(&other.series)
            .then_with(|| self.x.value().total_cmp(&other.x.value()))
    }
}

/// Both series for `k = 0..=k_max`.
pub fn disclosure_vs_k(buckets: &Bucketization, k_max: usize) -> Vec<CurvePoint> {
    let mut engine = DisclosureEngine::new();
    let mut points = Vec::with_capacity(2 * (k_max + 1));
    for k in 0..=k_max {
        points.push(CurvePoint {
            series: KnowledgeKind::Implications.name().into(),
            x: Abscissa::K(k),
            k,
            disclosure: engine.max_disclosure(buckets, k).disclosure,
        });
    }
    for k in 0..=k_max {
        points.push(CurvePoint {
            series: KnowledgeKind::Negations.name().into(),
            x: Abscissa::K(k),
            k,
            disclosure: max_disclosure_negated_atoms(buckets, k).disclosure,
        });
    }
    points
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyShape {
    /// One value holds `t` tuples and the rest are spread as evenly as
    /// possible over the other values, for every `t` from `n` down to `⌈n/m⌉`.
    Skewed,
    /// Every histogram of `n` tuples over at most `m` values.
    Exhaustive,
}

/// Single-bucket tables over `domain_size` values with `bucket_size` tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntropyFamily {
    pub domain_size: usize,
    pub bucket_size: u64,
    pub shape: FamilyShape,
}

impl EntropyFamily {
    pub fn new(domain_size: usize, bucket_size: u64, shape: FamilyShape) -> Result<Self> {
        if domain_size == 0 {
            return Err(Error::InvalidFamily("domain size must be positive"));
        }
        if bucket_size == 0 {
            return Err(Error::InvalidFamily("bucket size must be positive"));
        }
        if shape == FamilyShape::Exhaustive && bucket_size > 40 {
            return Err(Error::InvalidFamily("exhaustive family is limited to 40 tuples"));
        }
        Ok(Self { domain_size, bucket_size, shape })
    }

    /// Count profiles of the members, non-increasing.
    pub fn members(&self) -> Vec<Vec<u64>> {
        let n = self.bucket_size;
        let m = self.domain_size as u64;
        match self.shape {
            FamilyShape::Skewed => {
                let least = n.div_ceil(m);
                (least..=n)
                    .rev()
                    .filter_map(|t| {
                        let rest = n - t;
                        let others = m - 1;
                        let mut counts = alloc::vec![t];
                        if others == 0 {
                            return (rest == 0).then_some(counts);
                        }
                        let (q, r) = (rest / others, rest % others);
                        counts.extend((0..others).map(|i| q + u64::from(i < r)).filter(|&c| c > 0));
                        // t must stay the most frequent value
                        (counts.get(1).is_none_or(|&c| c <= t)).then_some(counts)
                    })
                    .collect()
            }
            FamilyShape::Exhaustive => AtomPartition::all(n as usize, self.domain_size)
                .into_iter()
                .map(|p| p.counts().iter().map(|&c| c as u64).collect())
                .collect(),
        }
    }

    fn domain(&self) -> SensitiveDomain {
        SensitiveDomain::new((0..self.domain_size).map(|i| format!("s{i}")))
    }
}

/// For each distinct entropy `h` in the family and each `k`, the least
/// maximum disclosure over members whose entropy is `h`. Series are named
/// `k=<k>`; points come out in emission order.
pub fn entropy_vs_disclosure(family: &EntropyFamily, ks: &[usize]) -> Result<Vec<CurvePoint>> {
    let domain = family.domain();
    let mut engine = DisclosureEngine::new();
    let k_max = ks.iter().copied().max().unwrap_or(0);
    // (entropy, per-k disclosure)
    let mut rows: Vec<(f64, Vec<Probability>)> = Vec::new();
    for counts in family.members() {
        let b = Bucketization::from_counts(domain.clone(), &[counts])?;
        let h = b.buckets()[0].entropy();
        let values: Vec<Probability> = (0..=k_max).map(|k| engine.max_disclosure(&b, k).disclosure).collect();
        match rows.iter_mut().find(|(e, _)| (e - h).abs() < 1e-9) {
            Some((_, best)) => {
                for (slot, v) in best.iter_mut().zip(values) {
                    if v < *slot {
                        *slot = v;
                    }
                }
            }
            None => rows.push((h, values)),
        }
    }
    let mut points: Vec<CurvePoint> = ks
        .iter()
        .flat_map(|&k| {
            rows.iter().map(move |(h, v)| CurvePoint {
                series: format!("k={k}"),
                x: Abscissa::Entropy(*h),
                k,
                disclosure: v[k].clone(),
            })
        })
        .collect();
    points.sort_by(|a, b| a.emission_order(b));
    Ok(points)
}
