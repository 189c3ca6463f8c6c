use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row {row}, column {col}: {message}")]
    Entry { row: usize, col: usize, message: String },

    #[error("matrix is not symmetric: cell ({row},{col}) differs from cell ({col},{row})")]
    Asymmetric { row: usize, col: usize },

    #[error("invalid taxon label `{0}`")]
    InvalidLabel(String),

    #[error("duplicate taxon label `{0}`")]
    DuplicateLabel(String),

    #[error("{0} taxa requested, at most {max} are supported", max = crate::taxa::MAX_TAXA)]
    TooManyTaxa(usize),

    #[error("at least {needed} taxa are required, found {found}")]
    TooFewTaxa { needed: usize, found: usize },

    #[error("unknown taxon `{0}`")]
    UnknownTaxon(String),

    #[error("taxon label `{0}` already present")]
    LabelCollision(String),

    #[error("objects are defined over different taxon sets")]
    TaxaMismatch,

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("not Kalmanson for the ring: quartet {} {} {} {} violates the crossing-sum inequality", .0[0], .0[1], .0[2], .0[3])]
    NotKalmanson([String; 4]),

    #[error("no circular ordering makes the map Kalmanson")]
    NoKalmansonOrdering,

    #[error("ordering search refused: {n} taxa exceeds the limit of {limit}; supply an ordering")]
    SearchRefused { n: usize, limit: usize },

    #[error("not Robinsonian for the ordering: triple {} {} {}", .0[0], .0[1], .0[2])]
    NotRobinsonian([String; 3]),

    #[error("not in the inverse Gromov domain: entry ({0},{1}) would be negative")]
    NotInPsiDomain(String, String),

    #[error("pair ({0},{1}) is not covered by any member of the family")]
    UncoveredPair(String, String),

    #[error("no member contains the union of the predecessors of {0}")]
    MissingHull(String),

    #[error("member {0} has {1} predecessors; a pyramid allows at most two")]
    TooManyPredecessors(String, usize),

    #[error("negative weight {weight} on member {member} (predecessors: {predecessors})")]
    NegativeWeight {
        member: String,
        weight: String,
        predecessors: String,
    },

    #[error("invalid family member: {0}")]
    InvalidMember(String),

    #[error("not a hierarchy: {0}")]
    NotHierarchy(String),

    #[error("not a prepyramid for the ordering: {0}")]
    NotPrepyramid(String),

    #[error("not a rooted family: {0}")]
    NotRootedFamily(String),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("not an unrooted split family: incompatible pair {0}, {1} lacks a derived split")]
    NotUnrootedFamily(String, String),

    #[error("split system is not circular for the ring: {0}")]
    NotCircular(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("`{0}` is not a leaf of the tree")]
    NotALeaf(String),

    #[error("enumeration would produce {count} orderings, above the limit of {limit}")]
    LimitExceeded { count: u128, limit: u128 },

    #[error("internal contradiction: {0}")]
    Internal(String),
}
