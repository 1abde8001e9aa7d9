//! Tables, buckets, and bucketizations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

/// Index of a sensitive value in its [`SensitiveDomain`]. Index order is the
/// lexicographic order of the value strings.
pub type ValueId = usize;

/// The finite, sorted set of sensitive values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SensitiveDomain {
    values: Vec<String>,
}

impl SensitiveDomain {
    pub fn new<I, S>(values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut values: Vec<String> = values.into_iter().map(Into::into).collect();
        values.sort();
        values.dedup();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, value: &str) -> Option<ValueId> {
        self.values.binary_search_by(|v| v.as_str().cmp(value)).ok()
    }

    pub fn name(&self, id: ValueId) -> &str {
        &self.values[id]
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }
}

/// One input row: a person id, the non-sensitive attribute values in schema
/// order, and the sensitive value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub id: String,
    pub attributes: Vec<String>,
    pub sensitive: String,
}

/// A validated table. Persons are addressed by their row position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    attribute_names: Vec<String>,
    sensitive_name: String,
    domain: SensitiveDomain,
    ids: Vec<String>,
    attributes: Vec<Vec<String>>,
    sensitive: Vec<ValueId>,
    by_id: BTreeMap<String, usize>,
}

impl Table {
    /// Validates `records` against the schema. The sensitive domain is the
    /// set of observed values plus `declared_domain`.
    pub fn new(
        attribute_names: Vec<String>,
        sensitive_name: impl Into<String>,
        records: Vec<Record>,
        declared_domain: &[String],
    ) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyTable);
        }
        let domain = SensitiveDomain::new(
            records
                .iter()
                .map(|r| r.sensitive.clone())
                .chain(declared_domain.iter().cloned()),
        );
        let mut by_id = BTreeMap::new();
        let mut ids = Vec::with_capacity(records.len());
        let mut attributes = Vec::with_capacity(records.len());
        let mut sensitive = Vec::with_capacity(records.len());
        for (row, record) in records.into_iter().enumerate() {
            if record.id.is_empty() {
                return Err(Error::EmptyPersonId);
            }
            if record.attributes.len() != attribute_names.len() {
                let attribute = attribute_names
                    .get(record.attributes.len())
                    .cloned()
                    .unwrap_or_else(|| "<extra>".to_string());
                return Err(Error::MissingAttribute { person: record.id, attribute });
            }
            if by_id.insert(record.id.clone(), row).is_some() {
                return Err(Error::DuplicatePerson(record.id));
            }
            sensitive.push(domain.index_of(&record.sensitive).expect("domain covers observed values"));
            ids.push(record.id);
            attributes.push(record.attributes);
        }
        Ok(Self {
            attribute_names,
            sensitive_name: sensitive_name.into(),
            domain,
            ids,
            attributes,
            sensitive,
            by_id,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_names.iter().position(|a| a == name)
    }

    pub fn sensitive_name(&self) -> &str {
        &self.sensitive_name
    }

    pub fn domain(&self) -> &SensitiveDomain {
        &self.domain
    }

    pub fn person_id(&self, person: usize) -> &str {
        &self.ids[person]
    }

    pub fn person_index(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn attribute(&self, person: usize, attribute: usize) -> &str {
        &self.attributes[person][attribute]
    }

    pub fn attributes_of(&self, person: usize) -> &[String] {
        &self.attributes[person]
    }

    pub fn sensitive_of(&self, person: usize) -> ValueId {
        self.sensitive[person]
    }

    /// The sensitive column as a world: `assignment()[p]` is person `p`'s value.
    pub fn assignment(&self) -> &[ValueId] {
        &self.sensitive
    }

    /// Restricts the table to the given rows, keeping the declared domain.
    pub fn subset(&self, rows: &[usize]) -> Result<Table> {
        let records = rows
            .iter()
            .map(|&r| Record {
                id: self.ids[r].clone(),
                attributes: self.attributes[r].clone(),
                sensitive: self.domain.name(self.sensitive[r]).to_string(),
            })
            .collect();
        Table::new(
            self.attribute_names.clone(),
            self.sensitive_name.clone(),
            records,
            self.domain.values(),
        )
    }
}

/// A bucket of a bucketization: its members and the histogram of their
/// sensitive values, most frequent first (ties by value order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bucket {
    id: String,
    members: Vec<usize>,
    histogram: Vec<(ValueId, u64)>,
}

impl Bucket {
    fn new(id: String, members: Vec<usize>, values: impl Iterator<Item = ValueId>) -> Self {
        let mut counts: BTreeMap<ValueId, u64> = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_default() += 1;
        }
        let mut histogram: Vec<(ValueId, u64)> = counts.into_iter().collect();
        histogram.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        Self { id, members, histogram }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// `n_b`, the number of tuples.
    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn histogram(&self) -> &[(ValueId, u64)] {
        &self.histogram
    }

    pub fn distinct(&self) -> usize {
        self.histogram.len()
    }

    /// `s_b^j`, if the bucket has more than `j` distinct values.
    pub fn value_at(&self, rank: usize) -> Option<ValueId> {
        self.histogram.get(rank).map(|&(v, _)| v)
    }

    /// `n_b(s_b^j)`; zero past the last distinct value.
    pub fn count_at(&self, rank: usize) -> u64 {
        self.histogram.get(rank).map_or(0, |&(_, c)| c)
    }

    pub fn count_of(&self, value: ValueId) -> u64 {
        self.histogram
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0, |&(_, c)| c)
    }

    /// Histogram counts in rank order. Two buckets with equal count profiles
    /// have identical disclosure behaviour.
    pub fn count_profile(&self) -> Vec<u64> {
        self.histogram.iter().map(|&(_, c)| c).collect()
    }

    /// Shannon entropy of the sensitive values, in bits.
    pub fn entropy(&self) -> f64 {
        let n = self.size() as f64;
        self.histogram
            .iter()
            .map(|&(_, c)| {
                let p = c as f64 / n;
                -p * Float::log2(p)
            })
            .sum::<f64>()
            .max(0.0)
    }
}

/// How to group a table into buckets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grouping {
    /// One bucket per distinct combination of the named attributes.
    Attributes(Vec<String>),
    /// Explicit `(person id, bucket id)` pairs covering every person once.
    Explicit(Vec<(String, String)>),
}

/// A partition of persons into buckets. This is what gets published: the
/// per-bucket multisets of sensitive values, not who holds which value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bucketization {
    persons: Vec<String>,
    domain: SensitiveDomain,
    buckets: Vec<Bucket>,
    bucket_of: Vec<usize>,
}

impl Bucketization {
    /// Groups rows by key; buckets are ordered by first appearance in the table.
    fn from_keys<K: Ord + Clone>(table: &Table, keys: &[K], mut name: impl FnMut(&K) -> String) -> Self {
        let mut index: BTreeMap<K, usize> = BTreeMap::new();
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        for (person, key) in keys.iter().enumerate() {
            let slot = *index.entry(key.clone()).or_insert_with(|| {
                groups.push((name(key), Vec::new()));
                groups.len() - 1
            });
            groups[slot].1.push(person);
        }
        Self::from_groups(table, groups)
    }

    fn from_groups(table: &Table, groups: Vec<(String, Vec<usize>)>) -> Self {
        let mut bucket_of = alloc::vec![0; table.len()];
        let buckets = groups
            .into_iter()
            .enumerate()
            .map(|(b, (id, members))| {
                for &p in &members {
                    bucket_of[p] = b;
                }
                let values = members.iter().map(|&p| table.sensitive_of(p));
                Bucket::new(id, members.clone(), values)
            })
            .collect();
        Self {
            persons: table.ids.clone(),
            domain: table.domain.clone(),
            buckets,
            bucket_of,
        }
    }

    /// Groups persons by equal values of the given attributes. With no
    /// attributes every person lands in one bucket.
    pub fn by_attributes<S: AsRef<str>>(table: &Table, attributes: &[S]) -> Result<Self> {
        let cols = attributes
            .iter()
            .map(|a| {
                table
                    .attribute_index(a.as_ref())
                    .ok_or_else(|| Error::UnknownAttribute(a.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let keys: Vec<Vec<&str>> = (0..table.len())
            .map(|p| cols.iter().map(|&c| table.attribute(p, c)).collect())
            .collect();
        Ok(Self::from_keys(table, &keys, |k| {
            if k.is_empty() {
                "*".to_string()
            } else {
                k.join("|")
            }
        }))
    }

    /// Builds buckets from explicit `(person, bucket)` pairs.
    pub fn by_assignment(table: &Table, assignment: &[(String, String)]) -> Result<Self> {
        let mut bucket_ids: BTreeMap<&str, usize> = BTreeMap::new();
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        let mut seen = alloc::vec![false; table.len()];
        for (person, bucket) in assignment {
            let p = table
                .person_index(person)
                .ok_or_else(|| Error::UnknownPerson(person.clone()))?;
            if core::mem::replace(&mut seen[p], true) {
                return Err(Error::ReassignedPerson(person.clone()));
            }
            let slot = *bucket_ids.entry(bucket.as_str()).or_insert_with(|| {
                groups.push((bucket.clone(), Vec::new()));
                groups.len() - 1
            });
            groups[slot].1.push(p);
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::UnassignedPerson(table.person_id(p).to_string()));
        }
        for (_, members) in &mut groups {
            members.sort_unstable();
        }
        Ok(Self::from_groups(table, groups))
    }

    /// Groups by the key returned for each person.
    pub fn by_key<K: Ord + Clone>(table: &Table, keys: &[K], name: impl FnMut(&K) -> String) -> Self {
        assert_eq!(keys.len(), table.len());
        Self::from_keys(table, keys, name)
    }

    /// `B_⊤`: everybody in one bucket.
    pub fn top(table: &Table) -> Self {
        let keys = alloc::vec![(); table.len()];
        Self::from_keys(table, &keys, |_| "*".to_string())
    }

    /// `B_⊥`: one bucket per person.
    pub fn bottom(table: &Table) -> Self {
        let keys: Vec<usize> = (0..table.len()).collect();
        Self::from_keys(table, &keys, |&p| table.person_id(p).to_string())
    }

    /// A synthetic bucketization from per-bucket `(value, count)` lists, with
    /// generated person ids `b{bucket}p{member}`. Values not in `domain` are
    /// rejected.
    pub fn from_histograms(domain: SensitiveDomain, histograms: &[Vec<(&str, u64)>]) -> Result<Self> {
        let mut persons = Vec::new();
        let mut buckets = Vec::new();
        let mut bucket_of = Vec::new();
        for (b, hist) in histograms.iter().enumerate() {
            let mut members = Vec::new();
            let mut values = Vec::new();
            for &(name, count) in hist {
                let v = domain.index_of(name).ok_or_else(|| Error::UnknownValue(name.to_string()))?;
                for _ in 0..count {
                    members.push(persons.len());
                    persons.push(format!("b{b}p{}", members.len() - 1));
                    bucket_of.push(b);
                    values.push(v);
                }
            }
            if members.is_empty() {
                return Err(Error::EmptyTable);
            }
            buckets.push(Bucket::new(format!("b{b}"), members, values.into_iter()));
        }
        if buckets.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(Self { persons, domain, buckets, bucket_of })
    }

    /// Like [`Bucketization::from_histograms`] but with value indices and bare counts:
    /// bucket `b` holds `counts[b][v]` copies of value `v`.
    pub fn from_counts(domain: SensitiveDomain, counts: &[Vec<u64>]) -> Result<Self> {
        let names: Vec<Vec<(&str, u64)>> = counts
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &c)| c > 0)
                    .map(|(v, &c)| (domain.name(v), c))
                    .collect()
            })
            .collect();
        let domain_len = domain.len();
        if counts.iter().any(|row| row.len() > domain_len) {
            return Err(Error::UnknownValue("<index past domain>".into()));
        }
        Self::from_histograms(domain.clone(), &names)
    }

    pub fn buckets(&self) -> &[Bucket] {
        &self.buckets
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn person_count(&self) -> usize {
        self.persons.len()
    }

    pub fn persons(&self) -> &[String] {
        &self.persons
    }

    pub fn domain(&self) -> &SensitiveDomain {
        &self.domain
    }

    pub fn bucket_of(&self, person: usize) -> usize {
        self.bucket_of[person]
    }

    /// Minimum over buckets of the sensitive-value entropy, in bits.
    pub fn min_bucket_entropy(&self) -> f64 {
        self.buckets
            .iter()
            .map(Bucket::entropy)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Forms a bucketization of `table`.
pub fn partition(table: &Table, grouping: &Grouping) -> Result<Bucketization> {
    match grouping {
        Grouping::Attributes(attrs) => Bucketization::by_attributes(table, attrs),
        Grouping::Explicit(pairs) => Bucketization::by_assignment(table, pairs),
    }
}
