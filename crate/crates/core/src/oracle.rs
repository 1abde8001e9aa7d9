//! Exact random-worlds reasoning by enumerating every table consistent with a
//! bucketization.
//!
//! Every distinct assignment of a bucket's multiset to its members is induced
//! by the same number of permutations, so enumerating distinct assignments
//! with uniform weight is exact. The cost is exponential; this module is the
//! ground truth the polynomial algorithms in [`crate::disclosure`] are
//! checked against.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::knowledge::{negation_as_implication, Atom, BasicImplication, Knowledge, SimpleImplication};
use crate::prob::Probability;
use crate::table::{Bucketization, ValueId};

/// Default cap on the number of enumerated worlds.
pub const DEFAULT_WORLD_BUDGET: u64 = 10_000_000;

/// Number of distinct tables consistent with the bucketization:
/// `∏_b n_b! / ∏_s n_b(s)!`.
pub fn world_count(buckets: &Bucketization) -> BigUint {
    let mut total = BigUint::one();
    for bucket in buckets.buckets() {
        let mut placed = 0u64;
        for &(_, count) in bucket.histogram() {
            // multiply by C(placed + count, count), built up incrementally
            for i in 1..=count {
                placed += 1;
                total *= placed;
                total /= i;
            }
        }
    }
    total
}

fn check_budget(buckets: &Bucketization, budget: u64) -> Result<u64> {
    let count = world_count(buckets);
    match count.to_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::BudgetExceeded { worlds: count.to_str_radix(10), budget }),
    }
}

fn next_permutation(v: &mut [ValueId]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `visit` once per consistent world, given as `world[person] = value`.
/// Order is lexicographic in the bucket arrangements, last bucket fastest.
pub fn for_each_world(buckets: &Bucketization, mut visit: impl FnMut(&[ValueId])) {
    let mut arrangements: Vec<Vec<ValueId>> = buckets
        .buckets()
        .iter()
        .map(|b| {
            let mut values: Vec<ValueId> = b
                .histogram()
                .iter()
                .flat_map(|&(v, c)| core::iter::repeat_n(v, c as usize))
                .collect();
            values.sort_unstable();
            values
        })
        .collect();
    let mut world = vec![0; buckets.person_count()];
    let write = |world: &mut [ValueId], b: usize, arrangement: &[ValueId]| {
        for (&person, &value) in buckets.buckets()[b].members().iter().zip(arrangement) {
            world[person] = value;
        }
    };
    for (b, arrangement) in arrangements.iter().enumerate() {
        write(&mut world, b, arrangement);
    }
    loop {
        visit(&world);
        let mut b = arrangements.len();
        loop {
            if b == 0 {
                return;
            }
            b -= 1;
            let advanced = next_permutation(&mut arrangements[b]);
            write(&mut world, b, &arrangements[b]);
            if advanced {
                break;
            }
        }
    }
}

/// `Pr(target | B ∧ knowledge)` as the exact fraction of knowledge-satisfying
/// worlds in which `target` holds.
pub fn exact_posterior(
    buckets: &Bucketization,
    knowledge: &Knowledge,
    target: Atom,
    budget: u64,
) -> Result<Probability> {
    knowledge.check_bounds(buckets.person_count(), buckets.domain().len())?;
    Knowledge::from_simple([SimpleImplication::new(target, target)])
        .check_bounds(buckets.person_count(), buckets.domain().len())?;
    check_budget(buckets, budget)?;
    let (mut consistent, mut hits) = (0u64, 0u64);
    for_each_world(buckets, |world| {
        if knowledge.holds_in(world) {
            consistent += 1;
            hits += u64::from(target.holds_in(world));
        }
    });
    if consistent == 0 {
        return Err(Error::InconsistentKnowledge);
    }
    Ok(Probability::from_counts(hits, consistent))
}

/// A set of worlds as a bitset over the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WorldMask(Vec<u64>);

impl WorldMask {
    fn zeros(words: usize) -> Self {
        Self(vec![0; words])
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn or_assign(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn count(&self) -> u64 {
        self.0.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    fn count_and(&self, other: &Self) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| u64::from((a & b).count_ones()))
            .sum()
    }
}

/// All worlds of a (small) bucketization, materialized as per-atom bitsets so
/// that many knowledge formulas can be evaluated cheaply.
#[derive(Clone, Debug)]
pub struct WorldSet {
    worlds: u64,
    full: WorldMask,
    /// `masks[person][value]`, `None` when the value is absent from the
    /// person's bucket (the atom is false in every world).
    masks: Vec<Vec<Option<WorldMask>>>,
    persons: usize,
    domain: usize,
}

impl WorldSet {
    pub fn enumerate(buckets: &Bucketization, budget: u64) -> Result<Self> {
        let worlds = check_budget(buckets, budget)?;
        let words = (worlds as usize).div_ceil(64);
        let domain = buckets.domain().len();
        let mut masks: Vec<Vec<Option<WorldMask>>> = (0..buckets.person_count())
            .map(|p| {
                let bucket = &buckets.buckets()[buckets.bucket_of(p)];
                (0..domain)
                    .map(|v| (bucket.count_of(v) > 0).then(|| WorldMask::zeros(words)))
                    .collect()
            })
            .collect();
        let mut index = 0usize;
        for_each_world(buckets, |world| {
            let (word, bit) = (index / 64, index % 64);
            for (person, &value) in world.iter().enumerate() {
                if let Some(mask) = &mut masks[person][value] {
                    mask.0[word] |= 1 << bit;
                }
            }
            index += 1;
        });
        let mut full = WorldMask(vec![u64::MAX; words]);
        if worlds % 64 != 0 {
            full.0[words - 1] = (1u64 << (worlds % 64)) - 1;
        }
        Ok(Self {
            worlds,
            full,
            masks,
            persons: buckets.person_count(),
            domain,
        })
    }

    pub fn len(&self) -> u64 {
        self.worlds
    }

    pub fn is_empty(&self) -> bool {
        self.worlds == 0
    }

    fn zeros(&self) -> WorldMask {
        WorldMask::zeros(self.full.0.len())
    }

    fn complement(&self, mask: &WorldMask) -> WorldMask {
        WorldMask(mask.0.iter().zip(&self.full.0).map(|(m, f)| !m & f).collect())
    }

    /// Atoms that hold in at least one world, in `(person, value)` order.
    pub fn live_atoms(&self) -> Vec<Atom> {
        (0..self.persons)
            .flat_map(|p| (0..self.domain).map(move |v| Atom::new(p, v)))
            .filter(|a| self.masks[a.person][a.value].is_some())
            .collect()
    }

    pub fn atom_mask(&self, atom: Atom) -> WorldMask {
        self.masks[atom.person][atom.value]
            .clone()
            .unwrap_or_else(|| self.zeros())
    }

    pub fn implication_mask(&self, implication: &BasicImplication) -> WorldMask {
        let mut antecedent = self.full.clone();
        for &a in implication.antecedent() {
            antecedent.and_assign(&self.atom_mask(a));
        }
        let mut mask = self.complement(&antecedent);
        for &b in implication.consequent() {
            mask.or_assign(&self.atom_mask(b));
        }
        mask
    }

    pub fn knowledge_mask(&self, knowledge: &Knowledge) -> WorldMask {
        let mut mask = self.full.clone();
        for imp in knowledge.implications() {
            mask.and_assign(&self.implication_mask(imp));
        }
        mask
    }

    pub fn posterior(&self, knowledge: &Knowledge, target: Atom) -> Result<Probability> {
        knowledge.check_bounds(self.persons, self.domain)?;
        let k = self.knowledge_mask(knowledge);
        let consistent = k.count();
        if consistent == 0 {
            return Err(Error::InconsistentKnowledge);
        }
        Ok(Probability::from_counts(k.count_and(&self.atom_mask(target)), consistent))
    }

    /// Largest posterior of any atom under the knowledge, with the least
    /// such atom; `None` if the knowledge is inconsistent.
    pub fn disclosure_risk(&self, knowledge: &Knowledge) -> Option<(Probability, Atom)> {
        let k = self.knowledge_mask(knowledge);
        let consistent = k.count();
        if consistent == 0 {
            return None;
        }
        let (hits, atom) = self.best_target(&k);
        Some((Probability::from_counts(hits, consistent), atom))
    }

    fn best_target(&self, k: &WorldMask) -> (u64, Atom) {
        let mut best = (0u64, Atom::new(0, 0));
        let mut first = true;
        for (p, row) in self.masks.iter().enumerate() {
            for (v, mask) in row.iter().enumerate() {
                if let Some(mask) = mask {
                    let hits = k.count_and(mask);
                    if first || hits > best.0 {
                        best = (hits, Atom::new(p, v));
                        first = false;
                    }
                }
            }
        }
        best
    }
}

/// Knowledge classes searched by [`brute_force_max_disclosure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnowledgeClass {
    /// Any `k` simple implications `A → B`.
    Simple,
    /// `k` simple implications sharing one consequent.
    SimpleCommonConsequent,
    /// `k` negated atoms `¬A`, encoded as same-person implications.
    NegatedAtoms,
}

/// Result of an exhaustive maximum-disclosure search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceMax {
    pub disclosure: Probability,
    pub knowledge: Knowledge,
    pub target: Atom,
}

struct Candidate {
    implication: SimpleImplication,
    mask: WorldMask,
}

/// Keeps the first implication for each distinct set of satisfying worlds;
/// logically equivalent implications give identical posteriors.
fn dedup(candidates: impl Iterator<Item = (SimpleImplication, WorldMask)>) -> Vec<Candidate> {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (implication, mask) in candidates {
        if seen.insert(mask.0.clone()) {
            out.push(Candidate { implication, mask });
        }
    }
    out
}

struct Search<'a> {
    worlds: &'a WorldSet,
    best: Option<(u64, u64, Atom, Vec<SimpleImplication>)>,
}

impl Search<'_> {
    fn offer(&mut self, mask: &WorldMask, chosen: &[&Candidate]) {
        let consistent = mask.count();
        if consistent == 0 {
            return;
        }
        let (hits, target) = self.worlds.best_target(mask);
        let better = match &self.best {
            None => true,
            Some((bh, bc, bt, bi)) => {
                let (lhs, rhs) = (u128::from(hits) * u128::from(*bc), u128::from(*bh) * u128::from(consistent));
                lhs > rhs
                    || (lhs == rhs && (target < *bt || (target == *bt && sorted(chosen) < *bi)))
            }
        };
        if better {
            self.best = Some((hits, consistent, target, sorted(chosen)));
        }
    }

    /// Offers every multiset of `remaining` candidates at index ≥ `start`.
    fn multisets<'c>(
        &mut self,
        candidates: &'c [Candidate],
        start: usize,
        remaining: usize,
        mask: &WorldMask,
        chosen: &mut Vec<&'c Candidate>,
    ) {
        if remaining == 0 {
            self.offer(mask, chosen);
            return;
        }
        for i in start..candidates.len() {
            let next = mask.and(&candidates[i].mask);
            if next.count() == 0 {
                continue;
            }
            chosen.push(&candidates[i]);
            self.multisets(candidates, i, remaining - 1, &next, chosen);
            chosen.pop();
        }
    }
}

fn sorted(chosen: &[&Candidate]) -> Vec<SimpleImplication> {
    let mut v: Vec<SimpleImplication> = chosen.iter().map(|c| c.implication).collect();
    v.sort_unstable();
    v
}

/// Exhaustive maximum of `Pr(A | B ∧ φ)` over every target atom `A` and every
/// `φ` made of `k` implications of the given class.
///
/// For implications, atoms naming a value absent from the person's bucket are
/// always false and add nothing a same-person implication cannot express, so
/// only atoms that hold in some world are enumerated. Ties go to the least
/// `(target, sorted implications)`.
pub fn brute_force_max_disclosure(
    buckets: &Bucketization,
    k: usize,
    class: KnowledgeClass,
    budget: u64,
) -> Result<BruteForceMax> {
    let worlds = WorldSet::enumerate(buckets, budget)?;
    brute_force_on(&worlds, buckets, k, class)
}

/// [`brute_force_max_disclosure`] over an already enumerated world set.
pub fn brute_force_on(
    worlds: &WorldSet,
    buckets: &Bucketization,
    k: usize,
    class: KnowledgeClass,
) -> Result<BruteForceMax> {
    let atoms = worlds.live_atoms();
    let mut search = Search { worlds, best: None };
    let implication_mask = |imp: SimpleImplication| worlds.implication_mask(&imp.into());
    match class {
        KnowledgeClass::Simple => {
            let candidates = dedup(atoms.iter().flat_map(|&a| {
                atoms.iter().map(move |&b| {
                    let imp = SimpleImplication::new(a, b);
                    (imp, implication_mask(imp))
                })
            }));
            search.multisets(&candidates, 0, k, &worlds.full, &mut Vec::new());
        }
        KnowledgeClass::SimpleCommonConsequent => {
            for &consequent in &atoms {
                let candidates = dedup(atoms.iter().map(|&a| {
                    let imp = SimpleImplication::new(a, consequent);
                    (imp, implication_mask(imp))
                }));
                search.multisets(&candidates, 0, k, &worlds.full, &mut Vec::new());
            }
        }
        KnowledgeClass::NegatedAtoms => {
            // negating an atom that never holds is a tautology; keep those too
            // so that k negations are always available
            let domain = buckets.domain();
            let negations = (0..buckets.person_count())
                .flat_map(|p| (0..domain.len()).map(move |v| Atom::new(p, v)))
                .map(|a| negation_as_implication(a, domain))
                .collect::<Result<Vec<_>>>();
            match negations {
                Ok(negations) => {
                    let candidates = dedup(negations.into_iter().map(|imp| (imp, implication_mask(imp))));
                    search.multisets(&candidates, 0, k, &worlds.full, &mut Vec::new());
                }
                // single-value domain: every bucket is pure and no negation is consistent
                Err(Error::DomainTooSmall) if k > 0 => return Err(Error::InconsistentKnowledge),
                Err(Error::DomainTooSmall) => search.multisets(&[], 0, 0, &worlds.full, &mut Vec::new()),
                Err(e) => return Err(e),
            }
        }
    }
    let (hits, consistent, target, implications) = search.best.ok_or(Error::InconsistentKnowledge)?;
    Ok(BruteForceMax {
        disclosure: Probability::from_counts(hits, consistent),
        knowledge: Knowledge::from_simple(implications),
        target,
    })
}
