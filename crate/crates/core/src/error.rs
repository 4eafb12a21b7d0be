use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported group family {kind}:{order}")]
    UnsupportedFamily { kind: String, order: usize },

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("invalid permutation generators: {0}")]
    InvalidPermutation(String),

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup {inner:#x} is not contained in {outer:#x}")]
    NotContained { inner: u128, outer: u128 },

    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),

    #[error("mark vector is not in the image of the Burnside ring")]
    NotIntegral,

    #[error("element has a mark different from +1 and -1")]
    NotUnit,

    #[error("{0} subgroup classes exceed the search budget of {1} candidates")]
    BudgetExceeded(usize, u64),

    #[error("groups do not match: {0}")]
    GroupMismatch(String),

    #[error("malformed biset: {0}")]
    MalformedBiset(String),

    #[error("subgroup is not genetic")]
    NotGenetic,

    #[error("linkage is not transitive on {0}")]
    LinkageNotTransitive(String),

    #[error("no explicit faithful generator for a group of type {0}")]
    UnsupportedUpsilon(String),

    #[error("cannot parse group descriptor {0:?}")]
    Descriptor(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{name}: {source}")]
    InGroup { name: String, source: Box<Error> },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the request rather than by a failed computation.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::UnsupportedFamily { .. }
            | Error::OrderCapExceeded { .. }
            | Error::InvalidTable(_)
            | Error::InvalidPermutation(_)
            | Error::NotPGroup(_)
            | Error::Descriptor(_)
            | Error::Input(_) => true,
            Error::InGroup { source, .. } => source.is_usage(),
            _ => false,
        }
    }

    pub(crate) fn in_group(self, name: &str) -> Error {
        Error::InGroup { name: name.to_string(), source: Box::new(self) }
    }
}
