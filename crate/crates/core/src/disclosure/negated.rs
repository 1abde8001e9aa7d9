//! Worst case over `k` negated atoms `¬(p = s)`, the knowledge that
//! ℓ-diversity style guarantees are built around.

use alloc::vec::Vec;

use super::ranked_values;
use crate::error::Result;
use crate::knowledge::{negation_as_implication, Atom, Knowledge};
use crate::prob::Probability;
use crate::table::{Bucketization, SensitiveDomain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegationReport {
    pub k: usize,
    pub disclosure: Probability,
    pub target: Atom,
    /// Atoms asserted false, all about the target's person.
    pub negated: Vec<Atom>,
}

impl NegationReport {
    /// The negations in implication form `(p=s) -> (p=s')`.
    pub fn knowledge(&self, domain: &SensitiveDomain) -> Result<Knowledge> {
        let implications = self
            .negated
            .iter()
            .map(|&a| negation_as_implication(a, domain))
            .collect::<Result<Vec<_>>>()?;
        Ok(Knowledge::from_simple(implications))
    }
}

/// All `k` negations land on one person `p` of some bucket `b`; the posterior
/// of `p = s_b^m` is then `n_b(s_b^m) / (n_b − Σ excluded counts)`, and the
/// excluded values are the `k` most frequent ones other than `s_b^m`.
pub fn max_disclosure_negated_atoms(buckets: &Bucketization, k: usize) -> NegationReport {
    let domain_len = buckets.domain().len();
    let mut best: Option<(u64, u64, usize, usize)> = None;
    for (b, bucket) in buckets.buckets().iter().enumerate() {
        let n = bucket.size();
        let excluded_counts: Vec<u64> = (0..bucket.distinct()).map(|r| bucket.count_at(r)).collect();
        for (m, &c) in excluded_counts.iter().enumerate() {
            let removed: u64 = excluded_counts
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != m)
                .take(k)
                .map(|(_, &x)| x)
                .sum();
            let den = n - removed;
            let better = match best {
                None => true,
                Some((bn, bd, _, _)) => u128::from(c) * u128::from(bd) > u128::from(bn) * u128::from(den),
            };
            if better {
                best = Some((c, den, b, m));
            }
        }
    }
    let (num, den, b, m) = best.expect("bucketization is non-empty");
    let bucket = &buckets.buckets()[b];
    let person = bucket.members()[0];
    let order = ranked_values(bucket, domain_len);
    let target = Atom::new(person, order[m]);
    let others: Vec<_> = order.iter().enumerate().filter(|&(r, _)| r != m).map(|(_, &v)| v).collect();
    let negated = (0..k)
        .filter(|_| !others.is_empty())
        .map(|j| Atom::new(person, others[j % others.len()]))
        .collect();
    NegationReport { k, disclosure: Probability::from_counts(num, den), target, negated }
}
