use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("table has no records")]
    EmptyTable,
    #[error("person id must not be empty")]
    EmptyPersonId,
    #[error("duplicate person id `{0}`")]
    DuplicatePerson(String),
    #[error("record `{person}` does not supply attribute `{attribute}`")]
    MissingAttribute { person: String, attribute: String },
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("unknown person `{0}`")]
    UnknownPerson(String),
    #[error("unknown sensitive value `{0}`")]
    UnknownValue(String),
    #[error("sensitive domain has a single value; negation is not expressible")]
    DomainTooSmall,
    #[error("partition does not assign person `{0}`")]
    UnassignedPerson(String),
    #[error("partition assigns person `{0}` more than once")]
    ReassignedPerson(String),
    #[error("invalid implication: {0}")]
    InvalidImplication(&'static str),
    #[error("invalid atom partition: {0}")]
    InvalidPartition(&'static str),
    #[error("partition involves {persons} persons but the bucket only has {size} tuples")]
    TooManyPersons { persons: usize, size: usize },
    #[error("probability {0} lies outside [0, 1]")]
    InvalidProbability(String),
    #[error("background knowledge is inconsistent with the bucketization")]
    InconsistentKnowledge,
    #[error("{worlds} possible worlds exceed the enumeration budget of {budget}")]
    BudgetExceeded { worlds: String, budget: u64 },
    #[error("bucketizations are over different person sets")]
    MismatchedPersons,
    #[error("hierarchy: {0}")]
    Hierarchy(String),
    #[error("lattice node {0} is out of bounds")]
    NodeOutOfBounds(String),
    #[error("chain is not totally ordered at position {0}")]
    UnorderedChain(usize),
    #[error("lattice has {nodes} nodes, over the budget of {budget}")]
    LatticeTooLarge { nodes: String, budget: u64 },
    #[error("no candidate nodes to choose from")]
    NoCandidates,
    #[error("invalid curve family: {0}")]
    InvalidFamily(&'static str),
}
