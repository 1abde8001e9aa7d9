//! Maximum disclosure with respect to `k` basic implications.
//!
//! The worst case is always `k` simple implications `A_i -> A` sharing one
//! consequent, so the maximum is `1 / (1 + r)` where `r` is the least
//! `Pr(¬A ∧ ¬A_0 ∧ … ∧ ¬A_{k-1} | B) / Pr(A | B)`. The numerator factors over
//! buckets; within a bucket it depends only on how many atoms each person
//! receives.

mod across;
mod frac;
mod negated;
mod within;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

pub use negated::{max_disclosure_negated_atoms, NegationReport};
pub use within::{lemma4_value, minimize_within_bucket, AtomPartition};

use within::WithinBucket;

use crate::knowledge::{Atom, Knowledge, SimpleImplication};
use crate::prob::Probability;
use crate::table::{Bucket, Bucketization, ValueId};

/// The bucket's values by descending frequency, then the values it lacks in
/// ascending order: `|S|` entries.
pub(crate) fn ranked_values(bucket: &Bucket, domain_len: usize) -> Vec<ValueId> {
    let mut order: Vec<ValueId> = bucket.histogram().iter().map(|&(v, _)| v).collect();
    order.extend((0..domain_len).filter(|&v| bucket.count_of(v) == 0));
    order
}

/// Result of the cross-bucket minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    /// Least `Pr(¬A ∧ ∧¬A_i | B) / Pr(A | B)`.
    pub ratio: BigRational,
    /// Bucket holding the target atom `A`.
    pub target_bucket: usize,
    /// `h_i`, antecedent atoms in each bucket.
    pub antecedents_per_bucket: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisclosureReport {
    pub k: usize,
    pub disclosure: Probability,
    pub ratio: BigRational,
    pub target: Atom,
    pub target_bucket: usize,
    pub antecedents: Vec<Atom>,
    pub antecedents_per_bucket: Vec<usize>,
    /// `A_i -> A` for each antecedent.
    pub implications: Vec<SimpleImplication>,
}

impl DisclosureReport {
    pub fn knowledge(&self) -> Knowledge {
        Knowledge::from_simple(self.implications.iter().copied())
    }
}

/// Counters for the memo tables, for checking the size bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub tables_built: usize,
    pub table_reuses: usize,
    /// Largest number of within-bucket states in one table.
    pub within_entries_max: usize,
    pub within_entries_total: usize,
    /// Cross-bucket states filled by the last query.
    pub across_entries: usize,
}

/// Keeps one within-bucket table per distinct count profile, so repeated
/// queries over bucketizations that share buckets only pay for new ones.
#[derive(Debug, Default)]
pub struct DisclosureEngine {
    tables: BTreeMap<Vec<u64>, WithinBucket>,
    stats: EngineStats,
}

impl DisclosureEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = EngineStats::default();
    }

    pub fn cached_tables(&self) -> usize {
        self.tables.len()
    }

    fn prepare(&mut self, buckets: &Bucketization, max_atoms: usize) -> Vec<Vec<u64>> {
        let profiles: Vec<Vec<u64>> = buckets.buckets().iter().map(Bucket::count_profile).collect();
        for profile in &profiles {
            match self.tables.get(profile) {
                Some(t) if t.max_atoms >= max_atoms => self.stats.table_reuses += 1,
                _ => {
                    let t = WithinBucket::build(profile, max_atoms);
                    self.stats.tables_built += 1;
                    self.stats.within_entries_max = self.stats.within_entries_max.max(t.entries);
                    self.stats.within_entries_total += t.entries;
                    self.tables.insert(profile.clone(), t);
                }
            }
        }
        profiles
    }

    fn run(&mut self, buckets: &Bucketization, k: usize) -> (Vec<Vec<u64>>, across::Sweep) {
        let profiles = self.prepare(buckets, k + 1);
        let tables: Vec<&WithinBucket> = profiles.iter().map(|p| &self.tables[p]).collect();
        let sweep = across::sweep(&tables, k);
        self.stats.across_entries = sweep.entries;
        (profiles, sweep)
    }

    pub fn minimize_across_buckets(&mut self, buckets: &Bucketization, k: usize) -> Placement {
        let (_, sweep) = self.run(buckets, k);
        Placement {
            ratio: sweep.ratio.to_ratio(),
            target_bucket: sweep.target_bucket,
            antecedents_per_bucket: sweep.antecedents,
        }
    }

    pub fn max_disclosure(&mut self, buckets: &Bucketization, k: usize) -> DisclosureReport {
        let (profiles, sweep) = self.run(buckets, k);
        let ratio = sweep.ratio.to_ratio();
        let disclosure = BigRational::one() / (BigRational::one() + &ratio);
        let domain_len = buckets.domain().len();

        let mut target = None;
        let mut antecedents = Vec::with_capacity(k);
        for (i, bucket) in buckets.buckets().iter().enumerate() {
            let h = sweep.antecedents[i];
            let is_target = i == sweep.target_bucket;
            let atoms = h + usize::from(is_target);
            if atoms == 0 {
                continue;
            }
            let partition = &self.tables[&profiles[i]].partitions[atoms];
            let order = ranked_values(bucket, domain_len);
            for (j, &count) in partition.counts().iter().enumerate() {
                let person = bucket.members()[j];
                for rank in 0..count {
                    let atom = Atom::new(person, order.get(rank).copied().unwrap_or(order[0]));
                    if is_target && j == 0 && rank == 0 {
                        target = Some(atom);
                    } else {
                        antecedents.push(atom);
                    }
                }
            }
        }
        let target = target.expect("the sweep places the target");
        debug_assert_eq!(antecedents.len(), k);
        let implications = antecedents.iter().map(|&a| SimpleImplication::new(a, target)).collect();
        DisclosureReport {
            k,
            disclosure: Probability::from_ratio(disclosure).expect("1/(1+r) with r ≥ 0"),
            ratio,
            target,
            target_bucket: sweep.target_bucket,
            antecedents,
            antecedents_per_bucket: sweep.antecedents,
            implications,
        }
    }
}

/// Maximum disclosure of `buckets` with respect to conjunctions of `k` basic
/// implications, with a witness of `k` simple implications.
pub fn max_disclosure(buckets: &Bucketization, k: usize) -> DisclosureReport {
    DisclosureEngine::new().max_disclosure(buckets, k)
}

pub fn minimize_across_buckets(buckets: &Bucketization, k: usize) -> Placement {
    DisclosureEngine::new().minimize_across_buckets(buckets, k)
}
