//! Background knowledge: atoms, implications, and their conjunctions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::table::{Bucketization, SensitiveDomain, Table, ValueId};

/// `t_p[S] = s` for a person index and a value index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub person: usize,
    pub value: ValueId,
}

impl Atom {
    pub fn new(person: usize, value: ValueId) -> Self {
        Self { person, value }
    }

    pub fn holds_in(&self, world: &[ValueId]) -> bool {
        world[self.person] == self.value
    }
}

/// `(A_0 ∧ … ∧ A_{m-1}) → (B_0 ∨ … ∨ B_{n-1})` with `m, n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicImplication {
    antecedent: Vec<Atom>,
    consequent: Vec<Atom>,
}

impl BasicImplication {
    pub fn new(antecedent: Vec<Atom>, consequent: Vec<Atom>) -> Result<Self> {
        if antecedent.is_empty() {
            return Err(Error::InvalidImplication("empty antecedent"));
        }
        if consequent.is_empty() {
            return Err(Error::InvalidImplication("empty consequent"));
        }
        Ok(Self { antecedent, consequent })
    }

    pub fn antecedent(&self) -> &[Atom] {
        &self.antecedent
    }

    pub fn consequent(&self) -> &[Atom] {
        &self.consequent
    }

    pub fn holds_in(&self, world: &[ValueId]) -> bool {
        !self.antecedent.iter().all(|a| a.holds_in(world)) || self.consequent.iter().any(|b| b.holds_in(world))
    }

    /// The single-atom form, if this is a simple implication.
    pub fn as_simple(&self) -> Option<SimpleImplication> {
        match (self.antecedent.as_slice(), self.consequent.as_slice()) {
            ([a], [b]) => Some(SimpleImplication::new(*a, *b)),
            _ => None,
        }
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.antecedent.iter().chain(&self.consequent)
    }
}

/// `A → B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleImplication {
    pub antecedent: Atom,
    pub consequent: Atom,
}

impl SimpleImplication {
    pub fn new(antecedent: Atom, consequent: Atom) -> Self {
        Self { antecedent, consequent }
    }

    pub fn holds_in(&self, world: &[ValueId]) -> bool {
        !self.antecedent.holds_in(world) || self.consequent.holds_in(world)
    }
}

impl From<SimpleImplication> for BasicImplication {
    fn from(s: SimpleImplication) -> Self {
        Self {
            antecedent: alloc::vec![s.antecedent],
            consequent: alloc::vec![s.consequent],
        }
    }
}

/// A conjunction of `k ≥ 0` basic implications.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Knowledge {
    implications: Vec<BasicImplication>,
}

impl Knowledge {
    pub fn new(implications: Vec<BasicImplication>) -> Self {
        Self { implications }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_simple(implications: impl IntoIterator<Item = SimpleImplication>) -> Self {
        Self::new(implications.into_iter().map(Into::into).collect())
    }

    pub fn implications(&self) -> &[BasicImplication] {
        &self.implications
    }

    /// Number of basic implications, `k`.
    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn push(&mut self, implication: BasicImplication) {
        self.implications.push(implication);
    }

    pub fn and(mut self, other: Knowledge) -> Knowledge {
        self.implications.extend(other.implications);
        self
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.implications.iter().flat_map(BasicImplication::atoms)
    }

    pub fn holds_in(&self, world: &[ValueId]) -> bool {
        self.implications.iter().all(|i| i.holds_in(world))
    }

    /// Fails if an atom references a person or value outside the given sizes.
    pub fn check_bounds(&self, persons: usize, domain: usize) -> Result<()> {
        for atom in self.atoms() {
            if atom.person >= persons {
                return Err(Error::UnknownPerson(alloc::format!("#{}", atom.person)));
            }
            if atom.value >= domain {
                return Err(Error::UnknownValue(alloc::format!("#{}", atom.value)));
            }
        }
        Ok(())
    }

    /// Renders in the knowledge-file grammar, one implication per line.
    pub fn display<'a, D: PersonDirectory + ?Sized>(&'a self, names: &'a D) -> impl fmt::Display + 'a {
        DisplayKnowledge { knowledge: self, names }
    }
}

/// Whether the table's actual sensitive values satisfy every implication.
pub fn holds(table: &Table, knowledge: &Knowledge) -> Result<bool> {
    knowledge.check_bounds(table.len(), table.domain().len())?;
    Ok(knowledge.holds_in(table.assignment()))
}

/// Encodes `¬(p = s)` as `(p = s) → (p = s′)` with `s′` the first domain
/// value other than `s`. Since a tuple has exactly one value the two are
/// equivalent.
pub fn negation_as_implication(atom: Atom, domain: &SensitiveDomain) -> Result<SimpleImplication> {
    if domain.len() < 2 {
        return Err(Error::DomainTooSmall);
    }
    if atom.value >= domain.len() {
        return Err(Error::UnknownValue(alloc::format!("#{}", atom.value)));
    }
    let other = if atom.value == 0 { 1 } else { 0 };
    Ok(SimpleImplication::new(atom, Atom::new(atom.person, other)))
}

/// Resolves person and value names. Implemented by [`Table`] and
/// [`Bucketization`], which share person indexing.
pub trait PersonDirectory {
    fn person_index(&self, id: &str) -> Option<usize>;
    fn person_name(&self, person: usize) -> &str;
    fn sensitive_domain(&self) -> &SensitiveDomain;

    fn atom(&self, person: &str, value: &str) -> Result<Atom> {
        let p = self
            .person_index(person)
            .ok_or_else(|| Error::UnknownPerson(person.to_string()))?;
        let v = self
            .sensitive_domain()
            .index_of(value)
            .ok_or_else(|| Error::UnknownValue(value.to_string()))?;
        Ok(Atom::new(p, v))
    }

    fn display_atom(&self, atom: Atom) -> String {
        alloc::format!(
            "{}={}",
            quoted(self.person_name(atom.person)),
            quoted(self.sensitive_domain().name(atom.value))
        )
    }
}

impl PersonDirectory for Table {
    fn person_index(&self, id: &str) -> Option<usize> {
        Table::person_index(self, id)
    }

    fn person_name(&self, person: usize) -> &str {
        self.person_id(person)
    }

    fn sensitive_domain(&self) -> &SensitiveDomain {
        self.domain()
    }
}

impl PersonDirectory for Bucketization {
    fn person_index(&self, id: &str) -> Option<usize> {
        self.persons().iter().position(|p| p == id)
    }

    fn person_name(&self, person: usize) -> &str {
        &self.persons()[person]
    }

    fn sensitive_domain(&self) -> &SensitiveDomain {
        self.domain()
    }
}

/// Quotes an identifier or value when it would not lex as a bare word.
pub fn quoted(s: &str) -> String {
    let bare = !s.is_empty()
        && !s.contains('#')
        && !s.contains("->")
        && s != "AND"
        && s != "OR"
        && s.chars().all(|c| !c.is_whitespace() && !"()&|=\"".contains(c));
    if bare {
        s.to_string()
    } else {
        let mut out = String::with_capacity(s.len() + 2);
        out.push('"');
        for c in s.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}

struct DisplayKnowledge<'a, D: ?Sized> {
    knowledge: &'a Knowledge,
    names: &'a D,
}

impl<D: PersonDirectory + ?Sized> fmt::Display for DisplayKnowledge<'_, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for imp in self.knowledge.implications() {
            let side = |atoms: &[Atom], sep: &str| {
                atoms
                    .iter()
                    .map(|&a| self.names.display_atom(a))
                    .collect::<Vec<_>>()
                    .join(sep)
            };
            writeln!(f, "({}) -> ({})", side(imp.antecedent(), " & "), side(imp.consequent(), " | "))?;
        }
        Ok(())
    }
}
