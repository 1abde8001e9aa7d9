//! Placement of the target atom and `k` antecedent atoms over buckets.

use alloc::vec;
use alloc::vec::Vec;

use super::frac::{improves, Frac};
use super::within::WithinBucket;

/// Where the minimizing placement put things.
#[derive(Clone, Debug)]
pub(crate) struct Sweep {
    pub ratio: Frac,
    pub target_bucket: usize,
    /// `h_i`: antecedent atoms per bucket, target atom excluded.
    pub antecedents: Vec<usize>,
    /// Number of `(i, h_i, a)` states filled.
    pub entries: usize,
}

#[derive(Clone, Copy)]
struct Choice {
    here: usize,
    target_here: bool,
}

/// Bottom-up over buckets; `next[h][a]` holds the suffix minimum for buckets
/// `i+1..` when `h` antecedent atoms remain and `a` says whether the target
/// has already been placed (in an earlier bucket).
pub(crate) fn sweep(tables: &[&WithinBucket], k: usize) -> Sweep {
    let m = tables.len();
    assert!(m > 0, "bucketization has at least one bucket");
    let mut next: Vec<[Option<Frac>; 2]> = (0..=k).map(|_| [None, None]).collect();
    next[0][1] = Some(Frac::one());
    let mut choices: Vec<Vec<[Choice; 2]>> = vec![Vec::new(); m];
    let mut entries = 0;

    for i in (0..m).rev() {
        let w = tables[i];
        let mut cur: Vec<[Option<Frac>; 2]> = (0..=k).map(|_| [None, None]).collect();
        let mut pick = vec![[Choice { here: 0, target_here: false }; 2]; k + 1];
        for h in 0..=k {
            for a in [true, false] {
                let mut best: Option<Frac> = None;
                let mut arg = Choice { here: 0, target_here: false };
                for here in 0..=h {
                    let rest = h - here;
                    if let Some(tail) = &next[rest][1] {
                        if !a {
                            let v = w.with_target(here).mul(tail);
                            if improves(&v, &best) {
                                best = Some(v);
                                arg = Choice { here, target_here: true };
                            }
                        }
                    }
                    if let Some(tail) = &next[rest][usize::from(a)] {
                        let v = w.values[here].mul(tail);
                        if improves(&v, &best) {
                            best = Some(v);
                            arg = Choice { here, target_here: false };
                        }
                    }
                }
                entries += 1;
                cur[h][usize::from(a)] = best;
                pick[h][usize::from(a)] = arg;
            }
        }
        choices[i] = pick;
        next = cur;
    }

    let ratio = next[k][0].clone().expect("some bucket can hold the target");
    let mut antecedents = vec![0; m];
    let mut target_bucket = 0;
    let (mut h, mut a) = (k, false);
    for (i, bucket_choices) in choices.iter().enumerate() {
        let c = bucket_choices[h][usize::from(a)];
        antecedents[i] = c.here;
        if c.target_here {
            target_bucket = i;
            a = true;
        }
        h -= c.here;
    }
    debug_assert!(a && h == 0);
    Sweep { ratio, target_bucket, antecedents, entries }
}
