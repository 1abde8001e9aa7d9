//! Minimizing `Pr(¬A_0 ∧ … ∧ ¬A_{k-1} | B)` over atoms inside one bucket.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::frac::Frac;
use crate::error::{Error, Result};
use crate::prob::Probability;
use crate::table::Bucket;

/// How `k` atoms spread over the persons of a bucket: person `i` is named by
/// `counts[i]` atoms, `counts` non-increasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomPartition(Vec<usize>);

impl AtomPartition {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.contains(&0) {
            return Err(Error::InvalidPartition("zero count"));
        }
        if counts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("counts must be non-increasing"));
        }
        Ok(Self(counts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// `l`, the number of involved persons.
    pub fn persons(&self) -> usize {
        self.0.len()
    }

    /// `k = Σ k_i`.
    pub fn atoms(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every partition of `atoms` into non-increasing positive parts, at
    /// most `max_persons` of them.
    pub fn all(atoms: usize, max_persons: usize) -> Vec<AtomPartition> {
        fn go(rem: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<AtomPartition>) {
            if rem == 0 {
                out.push(AtomPartition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for part in (1..=cap.min(rem)).rev() {
                cur.push(part);
                go(rem - part, part, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(atoms, atoms, max_persons, &mut Vec::new(), &mut out);
        out
    }
}

/// Probability that persons `p_0 … p_{l-1}` of the bucket each avoid their
/// `k_i` most frequent values:
/// `∏_i (n_b − i − Σ_{j<k_i} n_b(s_b^j)) / (n_b − i)`, each factor clamped at 0.
pub fn lemma4_value(bucket: &Bucket, partition: &AtomPartition) -> Result<Probability> {
    let n = bucket.size();
    if partition.persons() as u64 > n {
        return Err(Error::TooManyPersons { persons: partition.persons(), size: n as usize });
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for (i, &k_i) in partition.counts().iter().enumerate() {
        let excluded: u64 = (0..k_i).map(|j| bucket.count_at(j)).sum();
        let remaining = n - i as u64;
        num *= remaining.saturating_sub(excluded);
        den *= remaining;
    }
    Probability::from_ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Scaled DP values: either machine integers or big integers.
trait Scaled: Clone + Ord {
    fn from_u64(x: u64) -> Self;
    fn times(&self, x: u64) -> Self;
    fn into_big(self) -> BigUint;
}

impl Scaled for u128 {
    fn from_u64(x: u64) -> Self {
        u128::from(x)
    }
    fn times(&self, x: u64) -> Self {
        self * u128::from(x)
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Scaled for BigUint {
    fn from_u64(x: u64) -> Self {
        BigUint::from(x)
    }
    fn times(&self, x: u64) -> Self {
        self * x
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Memoized recursion over `(i, k̂_i, k̂)`: person `i` is next, it may take at
/// most `k̂_i` atoms, and `k̂` atoms remain to be placed.
///
/// Values are scaled by the falling factorial `(n−i)(n−i−1)…(n−L+1)` so every
/// state is an integer; `L = min(n, K)` bounds the number of persons.
struct Memo<T> {
    size: u64,
    /// `prefix[j] = Σ_{t<j} n_b(s_b^t)`
    prefix: Vec<u64>,
    max_atoms: usize,
    persons_cap: usize,
    /// `tail[i] = ∏_{t=i}^{L-1} (n − t)`
    tail: Vec<T>,
    cells: Vec<Option<(T, usize)>>,
    entries: usize,
}

impl<T: Scaled> Memo<T> {
    fn new(size: u64, prefix: Vec<u64>, max_atoms: usize) -> Self {
        let persons_cap = (size as usize).min(max_atoms);
        let mut tail = vec![T::from_u64(1); persons_cap + 1];
        for i in (0..persons_cap).rev() {
            tail[i] = tail[i + 1].times(size - i as u64);
        }
        let side = max_atoms + 1;
        Self {
            size,
            prefix,
            max_atoms,
            persons_cap,
            tail,
            cells: vec![None; (persons_cap + 1) * side * side],
            entries: 0,
        }
    }

    fn index(&self, i: usize, cap: usize, rem: usize) -> usize {
        let side = self.max_atoms + 1;
        (i * side + cap) * side + rem
    }

    fn solve(&mut self, i: usize, cap: usize, rem: usize) -> T {
        if rem == 0 || i == self.persons_cap {
            // i == L with atoms left only happens when every tuple is already
            // involved; the leftovers can only repeat earlier atoms.
            return self.tail[i].clone();
        }
        let idx = self.index(i, cap, rem);
        if let Some((value, _)) = &self.cells[idx] {
            return value.clone();
        }
        let mut best: Option<(T, usize)> = None;
        for k_i in 1..=cap.min(rem) {
            let free = (self.size - i as u64).saturating_sub(self.prefix[k_i]);
            let value = if free == 0 {
                T::from_u64(0)
            } else {
                self.solve(i + 1, k_i, rem - k_i).times(free)
            };
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, k_i));
            }
        }
        let best = best.expect("cap and rem are positive");
        self.entries += 1;
        self.cells[idx] = Some(best.clone());
        best.0
    }

    fn partition(&mut self, atoms: usize) -> AtomPartition {
        let (mut i, mut cap, mut rem) = (0, atoms, atoms);
        let mut counts = Vec::new();
        while rem > 0 && i < self.persons_cap {
            self.solve(i, cap, rem);
            let k_i = self.cells[self.index(i, cap, rem)].as_ref().expect("solved").1;
            counts.push(k_i);
            i += 1;
            cap = k_i;
            rem -= k_i;
        }
        if rem > 0 {
            // every tuple is involved; extra atoms on person 0 cannot raise the product
            counts[0] += rem;
        }
        AtomPartition(counts)
    }
}

/// Minimum of the within-bucket product for every atom budget `0..=max_atoms`,
/// with a minimizing partition for each.
#[derive(Clone, Debug)]
pub(crate) struct WithinBucket {
    pub max_atoms: usize,
    pub values: Vec<Frac>,
    /// `values[h + 1] · n_b / n_b(s_b^0)` for `h < max_atoms`.
    pub targeted: Vec<Frac>,
    pub partitions: Vec<AtomPartition>,
    /// Number of memoized `(i, k̂_i, k̂)` states.
    pub entries: usize,
}

impl WithinBucket {
    pub fn build(counts: &[u64], max_atoms: usize) -> Self {
        let size: u64 = counts.iter().sum();
        let mut prefix = vec![0u64; max_atoms + 1];
        for j in 1..=max_atoms {
            prefix[j] = prefix[j - 1] + counts.get(j - 1).copied().unwrap_or(0);
        }
        let persons_cap = (size as usize).min(max_atoms);
        let fits = (0..persons_cap as u64)
            .try_fold(1u128, |acc, t| acc.checked_mul(u128::from(size - t)))
            .is_some();
        let (values, partitions, entries) = if fits {
            Self::run::<u128>(size, prefix, max_atoms)
        } else {
            Self::run::<BigUint>(size, prefix, max_atoms)
        };
        let top_count = counts.first().copied().unwrap_or(0);
        let targeted = values[1..].iter().map(|v| v.mul_ratio(size, top_count)).collect();
        Self {
            max_atoms,
            values,
            targeted,
            partitions,
            entries,
        }
    }

    fn run<T: Scaled>(size: u64, prefix: Vec<u64>, max_atoms: usize) -> (Vec<Frac>, Vec<AtomPartition>, usize) {
        let mut memo = Memo::<T>::new(size, prefix, max_atoms);
        let scale = memo.tail[0].clone().into_big();
        let mut values = Vec::with_capacity(max_atoms + 1);
        let mut partitions = Vec::with_capacity(max_atoms + 1);
        for atoms in 0..=max_atoms {
            let scaled = memo.solve(0, atoms, atoms).into_big();
            values.push(Frac::reduced(scaled, scale.clone()));
            partitions.push(memo.partition(atoms));
        }
        (values, partitions, memo.entries)
    }

    /// `MinimizeWithinBucket(b, 0, h + 1, h + 1) · n_b / n_b(s_b^0)`: the best
    /// ratio when the target atom is `s_b^0` of this bucket's first person and
    /// `h` antecedent atoms also fall here.
    pub fn with_target(&self, h: usize) -> &Frac {
        &self.targeted[h]
    }
}

/// `MinimizeWithinBucket(b, 0, k, k)`: the least probability that `k` atoms
/// about persons of `bucket` are all false, with a minimizing partition.
pub fn minimize_within_bucket(bucket: &Bucket, k: usize) -> (Probability, AtomPartition) {
    let table = WithinBucket::build(&bucket.count_profile(), k);
    let p = Probability::from_ratio(table.values[k].to_ratio()).expect("product of probabilities");
    (p, table.partitions[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::fixtures::by_sex;
    use crate::table::{Bucketization, SensitiveDomain};
    use alloc::string::ToString;

    fn male() -> Bucket {
        by_sex().buckets()[0].clone()
    }

    fn part(v: &[usize]) -> AtomPartition {
        AtomPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let b = male();
        assert_eq!(lemma4_value(&b, &part(&[2])).unwrap().to_string(), "1/5");
        assert_eq!(lemma4_value(&b, &part(&[1, 1])).unwrap().to_string(), "3/10");
        assert_eq!(lemma4_value(&b, &AtomPartition::empty()).unwrap().to_string(), "1/1");
        assert_eq!(lemma4_value(&b, &part(&[3])).unwrap().to_string(), "0/1");
        assert_eq!(
            lemma4_value(&b, &part(&[1; 6])).unwrap_err(),
            Error::TooManyPersons { persons: 6, size: 5 }
        );
    }

    #[test]
    fn partition_validation() {
        assert!(AtomPartition::new(vec![1, 2]).is_err());
        assert!(AtomPartition::new(vec![2, 0]).is_err());
        assert_eq!(AtomPartition::all(4, 4).len(), 5);
        assert_eq!(AtomPartition::all(4, 2).len(), 3);
        assert_eq!(AtomPartition::all(0, 0), vec![AtomPartition::empty()]);
    }

    #[test]
    fn within_bucket_examples() {
        let b = male();
        let (p, best) = minimize_within_bucket(&b, 1);
        assert_eq!((p.to_string(), best.counts().to_vec()), ("3/5".to_string(), vec![1]));
        let (p, best) = minimize_within_bucket(&b, 2);
        assert_eq!((p.to_string(), best.counts().to_vec()), ("1/5".to_string(), vec![2]));
        let (p, best) = minimize_within_bucket(&b, 0);
        assert!(p.is_one() && best.counts().is_empty());
    }

    #[test]
    fn more_atoms_than_tuples() {
        let b = Bucketization::from_histograms(SensitiveDomain::new(["a", "b"]), &[vec![("a", 1), ("b", 1)]]).unwrap();
        let bucket = &b.buckets()[0];
        for k in 0..8 {
            let (p, best) = minimize_within_bucket(bucket, k);
            assert_eq!(best.atoms(), k);
            assert!(best.persons() <= 2);
            assert_eq!(lemma4_value(bucket, &best).unwrap(), p);
        }
        assert!(minimize_within_bucket(bucket, 2).0.is_zero());
    }

    #[test]
    fn big_integer_path_matches_closed_form() {
        // n^(L) overflows u128, forcing the big-integer memo
        let counts = [3_000_000_000u64, 2_000_000_000, 1_000_000_000, 7];
        let table = WithinBucket::build(&counts, 6);
        for atoms in 0..=6 {
            let brute = AtomPartition::all(atoms, atoms)
                .into_iter()
                .map(|p| {
                    let mut num = BigUint::from(1u32);
                    let mut den = BigUint::from(1u32);
                    let n: u64 = counts.iter().sum();
                    for (i, &k_i) in p.counts().iter().enumerate() {
                        let excl: u64 = counts.iter().take(k_i).sum();
                        num *= (n - i as u64).saturating_sub(excl);
                        den *= n - i as u64;
                    }
                    BigRational::new(num.into(), den.into())
                })
                .min()
                .unwrap();
            assert_eq!(table.values[atoms].to_ratio(), brute);
        }
    }

    proptest::proptest! {
        #[test]
        fn dp_is_min_over_partitions(counts in proptest::collection::vec(1u64..6, 1..5), k in 0usize..7) {
            let mut counts = counts;
            counts.sort_unstable_by(|a, b| b.cmp(a));
            let names = ["a", "b", "c", "d", "e"];
            let hist: Vec<(&str, u64)> = counts.iter().enumerate().map(|(i, &c)| (names[i], c)).collect();
            let b = Bucketization::from_histograms(SensitiveDomain::new(names), &[hist]).unwrap();
            let bucket = &b.buckets()[0];
            let n = bucket.size() as usize;
            let brute = AtomPartition::all(k, n.min(k))
                .iter()
                .map(|p| lemma4_value(bucket, p).unwrap())
                .min();
            let (p, best) = minimize_within_bucket(bucket, k);
            proptest::prop_assert_eq!(Some(p.clone()), brute);
            proptest::prop_assert_eq!(lemma4_value(bucket, &best).unwrap(), p);
            proptest::prop_assert_eq!(best.atoms(), k);
        }

        #[test]
        fn more_atoms_never_help_less(counts in proptest::collection::vec(1u64..5, 1..5), k in 0usize..6) {
            let table = WithinBucket::build(&counts.iter().copied().collect::<Vec<_>>(), k + 1);
            proptest::prop_assert!(table.values[k + 1].cmp(&table.values[k]) != core::cmp::Ordering::Greater);
        }
    }
}
