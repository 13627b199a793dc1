use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number set is empty")]
    EmptySet,
    #[error("value {value} at index {index} is not a positive finite number")]
    NotPositive { index: usize, value: f64 },
    #[error("index pair ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("entries are not a permutation of the number set: {0}")]
    NotAPermutation(String),
    #[error("sequences permute different number sets")]
    MismatchedSets,
    #[error("instance size {n} exceeds the enumeration limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
