//! Full-domain generalization: per-attribute hierarchies, the lattice of
//! generalization vectors, `(c, k)`-safety and the searches over it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::disclosure::DisclosureEngine;
use crate::error::{Error, Result};
use crate::table::{Bucketization, Table};

/// One generalization step above the raw values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    /// Explicit raw value to label map; must cover every value in the table.
    Map(BTreeMap<String, String>),
    /// Keep the first `n` characters and append `*`.
    Prefix(usize),
    /// Integer interval `[lo-hi]` of the given width, aligned at multiples of it.
    Bin(u64),
    /// Everything becomes `*`.
    Suppress,
}

impl Level {
    pub fn label(&self, raw: &str) -> Result<String> {
        match self {
            Level::Map(map) => map
                .get(raw)
                .cloned()
                .ok_or_else(|| Error::Hierarchy(format!("no label for `{raw}`"))),
            Level::Prefix(n) => {
                let mut label: String = raw.chars().take(*n).collect();
                label.push('*');
                Ok(label)
            }
            Level::Bin(width) => {
                let v: i64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Hierarchy(format!("`{raw}` is not an integer")))?;
                let w = *width as i64;
                let lo = v.div_euclid(w) * w;
                Ok(format!("[{lo}-{}]", lo + w - 1))
            }
            Level::Suppress => Ok("*".to_string()),
        }
    }
}

/// Levels `1..=L` of one attribute; level 0 is the raw value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributeHierarchy {
    pub attribute: String,
    pub levels: Vec<Level>,
}

impl AttributeHierarchy {
    pub fn new(attribute: impl Into<String>, levels: Vec<Level>) -> Self {
        Self { attribute: attribute.into(), levels }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn label(&self, level: usize, raw: &str) -> Result<String> {
        match level {
            0 => Ok(raw.to_string()),
            l => self
                .levels
                .get(l - 1)
                .ok_or_else(|| Error::NodeOutOfBounds(format!("{}={l}", self.attribute)))?
                .label(raw),
        }
    }
}

/// Hierarchies for the quasi-identifier attributes, bound to a table's
/// columns. Attributes without a hierarchy take no part in grouping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    attributes: Vec<AttributeHierarchy>,
    columns: Vec<usize>,
}

impl Hierarchy {
    /// Checks that every level labels every value of its column, that each
    /// level refines the next, and that the top level is a single label.
    pub fn new(table: &Table, attributes: Vec<AttributeHierarchy>) -> Result<Self> {
        let mut columns = Vec::with_capacity(attributes.len());
        let mut seen = BTreeSet::new();
        for a in &attributes {
            if !seen.insert(a.attribute.as_str()) {
                return Err(Error::Hierarchy(format!("attribute `{}` listed twice", a.attribute)));
            }
            let column = table
                .attribute_index(&a.attribute)
                .ok_or_else(|| Error::UnknownAttribute(a.attribute.clone()))?;
            columns.push(column);
            let raw: BTreeSet<&str> = (0..table.len()).map(|p| table.attribute(p, column)).collect();
            // label of each raw value at the previous level
            let mut below: BTreeMap<&str, String> = raw.iter().map(|&v| (v, v.to_string())).collect();
            for (l, level) in a.levels.iter().enumerate() {
                let mut up: BTreeMap<String, String> = BTreeMap::new();
                let mut current = BTreeMap::new();
                for &v in &raw {
                    let label = level
                        .label(v)
                        .map_err(|e| Error::Hierarchy(format!("{} level {}: {e}", a.attribute, l + 1)))?;
                    if let Some(prev) = up.insert(below[v].clone(), label.clone()) {
                        if prev != label {
                            return Err(Error::Hierarchy(format!(
                                "{} level {} does not coarsen level {l}: `{}` maps to both `{prev}` and `{label}`",
                                a.attribute,
                                l + 1,
                                below[v]
                            )));
                        }
                    }
                    current.insert(v, label);
                }
                below = current;
            }
            if !a.levels.is_empty() {
                let top: BTreeSet<&String> = below.values().collect();
                if top.len() > 1 {
                    return Err(Error::Hierarchy(format!("top level of {} has {} labels", a.attribute, top.len())));
                }
            }
        }
        Ok(Self { attributes, columns })
    }

    pub fn attributes(&self) -> &[AttributeHierarchy] {
        &self.attributes
    }

    pub fn heights(&self) -> Vec<usize> {
        self.attributes.iter().map(AttributeHierarchy::height).collect()
    }

    /// `∏ (L_a + 1)`, saturating.
    pub fn lattice_size(&self) -> u128 {
        self.attributes
            .iter()
            .fold(1u128, |acc, a| acc.saturating_mul(a.height() as u128 + 1))
    }

    pub fn bottom(&self) -> LatticeNode {
        LatticeNode(vec![0; self.attributes.len()])
    }

    pub fn top(&self) -> LatticeNode {
        LatticeNode(self.heights())
    }

    pub fn check(&self, node: &LatticeNode) -> Result<()> {
        if node.0.len() != self.attributes.len() || node.0.iter().zip(self.heights()).any(|(&l, h)| l > h) {
            return Err(Error::NodeOutOfBounds(node.to_string()));
        }
        Ok(())
    }

    /// Every node, by total height and then lexicographically.
    pub fn nodes(&self) -> Vec<LatticeNode> {
        let heights = self.heights();
        let mut out = vec![LatticeNode(Vec::new())];
        for &h in &heights {
            out = out
                .into_iter()
                .flat_map(|n| {
                    (0..=h).map(move |l| {
                        let mut v = n.0.clone();
                        v.push(l);
                        LatticeNode(v)
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        out
    }

    /// Parses `attr=lo..hi` and `attr=v` items into a chain that raises the
    /// ranged attributes in the order given; unnamed attributes stay at 0.
    pub fn chain(&self, spec: &[(String, usize, usize)]) -> Result<Vec<LatticeNode>> {
        let mut node = self.bottom();
        let index = |name: &str| {
            self.attributes
                .iter()
                .position(|a| a.attribute == name)
                .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
        };
        for (name, lo, _) in spec {
            node.0[index(name)?] = *lo;
        }
        self.check(&node)?;
        let mut chain = vec![node.clone()];
        for (name, lo, hi) in spec {
            let i = index(name)?;
            for l in lo + 1..=*hi {
                node.0[i] = l;
                self.check(&node)?;
                chain.push(node.clone());
            }
        }
        Ok(chain)
    }
}

/// A generalization vector: one level per hierarchy attribute.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeNode(pub Vec<usize>);

impl LatticeNode {
    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.iter().sum()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &LatticeNode) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Nodes one level lower in a single coordinate.
    pub fn predecessors(&self) -> impl Iterator<Item = LatticeNode> + '_ {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).map(|i| {
            let mut v = self.0.clone();
            v[i] -= 1;
            LatticeNode(v)
        })
    }
}

impl fmt::Display for LatticeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Groups the table by its generalized quasi-identifier tuple.
pub fn apply(table: &Table, hierarchy: &Hierarchy, node: &LatticeNode) -> Result<Bucketization> {
    hierarchy.check(node)?;
    let keys = (0..table.len())
        .map(|p| {
            hierarchy
                .attributes
                .iter()
                .zip(&hierarchy.columns)
                .zip(&node.0)
                .map(|((a, &col), &level)| a.label(level, table.attribute(p, col)))
                .collect::<Result<Vec<String>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Bucketization::by_key(table, &keys, |k| if k.is_empty() { "*".to_string() } else { k.join("|") }))
}

/// `B ⪯ B'`: every bucket of `upper` is a union of buckets of `lower`.
pub fn leq(lower: &Bucketization, upper: &Bucketization) -> Result<bool> {
    if lower.persons() != upper.persons() {
        return Err(Error::MismatchedPersons);
    }
    Ok(lower.buckets().iter().all(|b| {
        let mut members = b.members().iter().map(|&p| upper.bucket_of(p));
        let first = members.next();
        members.all(|x| Some(x) == first)
    }))
}

/// `(c, k)`: maximum disclosure w.r.t. `k` implications must stay below `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyThreshold {
    c: BigRational,
    k: usize,
}

impl SafetyThreshold {
    pub fn new(c: BigRational, k: usize) -> Result<Self> {
        if c < BigRational::zero() || c > BigRational::one() {
            return Err(Error::InvalidProbability(c.to_string()));
        }
        Ok(Self { c, k })
    }

    pub fn from_ratio(num: u64, den: u64, k: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidProbability(format!("{num}/{den}")));
        }
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), k)
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Strict: disclosure `< c`.
pub fn is_safe(buckets: &Bucketization, threshold: &SafetyThreshold) -> bool {
    is_safe_with(&mut DisclosureEngine::new(), buckets, threshold)
}

pub fn is_safe_with(engine: &mut DisclosureEngine, buckets: &Bucketization, threshold: &SafetyThreshold) -> bool {
    engine.max_disclosure(buckets, threshold.k).disclosure.as_ratio() < &threshold.c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    /// Lowest safe node, if the chain top is safe.
    pub node: Option<LatticeNode>,
    pub probes: usize,
}

/// Binary search for the lowest safe node of a chain ordered bottom to top.
/// Relies on safety being upward closed.
pub fn binary_search_chain(
    table: &Table,
    hierarchy: &Hierarchy,
    chain: &[LatticeNode],
    threshold: &SafetyThreshold,
) -> Result<ChainResult> {
    for node in chain {
        hierarchy.check(node)?;
    }
    if let Some(i) = chain.windows(2).position(|w| !w[0].le(&w[1])) {
        return Err(Error::UnorderedChain(i + 1));
    }
    let mut engine = DisclosureEngine::new();
    let (mut lo, mut hi) = (0, chain.len());
    let mut probes = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        probes += 1;
        if is_safe_with(&mut engine, &apply(table, hierarchy, &chain[mid])?, threshold) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(ChainResult { node: chain.get(lo).cloned(), probes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSafe {
    /// Safe nodes none of whose strict predecessors are safe, by height then
    /// lexicographically.
    pub nodes: Vec<LatticeNode>,
    pub evaluated: usize,
}

/// Bottom-up by height. A node with a safe direct predecessor is safe
/// without evaluation and not minimal; otherwise it is evaluated, and if
/// safe it is minimal.
pub fn all_minimal_safe(
    table: &Table,
    hierarchy: &Hierarchy,
    threshold: &SafetyThreshold,
    budget: u64,
) -> Result<MinimalSafe> {
    let size = hierarchy.lattice_size();
    if size > u128::from(budget) {
        return Err(Error::LatticeTooLarge { nodes: size.to_string(), budget });
    }
    let mut engine = DisclosureEngine::new();
    let mut safe: BTreeSet<LatticeNode> = BTreeSet::new();
    let mut nodes = Vec::new();
    let mut evaluated = 0;
    for node in hierarchy.nodes() {
        if node.predecessors().any(|p| safe.contains(&p)) {
            safe.insert(node);
            continue;
        }
        evaluated += 1;
        if is_safe_with(&mut engine, &apply(table, hierarchy, &node)?, threshold) {
            safe.insert(node.clone());
            nodes.push(node);
        }
    }
    Ok(MinimalSafe { nodes, evaluated })
}

/// Cost of releasing a node; lower is better.
pub trait UtilityMetric {
    fn cost(&self, table: &Table, hierarchy: &Hierarchy, node: &LatticeNode) -> Result<u128>;
}

/// Total generalization height.
#[derive(Clone, Copy, Debug, Default)]
pub struct Height;

impl UtilityMetric for Height {
    fn cost(&self, _: &Table, hierarchy: &Hierarchy, node: &LatticeNode) -> Result<u128> {
        hierarchy.check(node)?;
        Ok(node.height() as u128)
    }
}

/// Discernibility: `Σ_b n_b²`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Discernibility;

impl UtilityMetric for Discernibility {
    fn cost(&self, table: &Table, hierarchy: &Hierarchy, node: &LatticeNode) -> Result<u128> {
        let b = apply(table, hierarchy, node)?;
        Ok(b.buckets().iter().map(|x| u128::from(x.size()).pow(2)).sum())
    }
}

/// Least-cost node, ties to the lexicographically least vector.
pub fn select_by_utility(
    nodes: &[LatticeNode],
    table: &Table,
    hierarchy: &Hierarchy,
    metric: &dyn UtilityMetric,
) -> Result<LatticeNode> {
    let mut best: Option<(u128, &LatticeNode)> = None;
    for node in nodes {
        let cost = metric.cost(table, hierarchy, node)?;
        if best.is_none_or(|(c, n)| (cost, node) < (c, n)) {
            best = Some((cost, node));
        }
    }
    best.map(|(_, n)| n.clone()).ok_or(Error::NoCandidates)
}
