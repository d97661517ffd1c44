//! Error type shared by all modules.

use alloc::boxed::Box;
use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("token surface is empty")]
    EmptySurface,
    #[error("invalid UPOS tag `{0}`")]
    InvalidUpos(String),
    #[error("sentence `{0}` has no tokens")]
    EmptySentence(String),
    #[error("sentence `{id}`: head {head} out of range for {len} tokens")]
    HeadOutOfRange { id: String, head: u32, len: usize },
    #[error("sentence `{0}`: head links do not form a single rooted tree")]
    NotATree(String),
    #[error("sentence `{0}` lacks syntactic annotations")]
    MissingAnnotation(String),
    #[error("document `{0}` has no sentences")]
    EmptyDocument(String),
    #[error("duplicate document id `{0}`")]
    DuplicateDocId(String),
    #[error("corpus contains no documents")]
    EmptyCorpus,
    #[error("word stream is empty after filtering")]
    EmptyStream,
    #[error("frequency distribution is empty")]
    EmptyDistribution,
    #[error("mixture assigns zero probability to `{0}`")]
    MixtureSupportGap(String),
    #[error("invalid dependency tree: {0}")]
    InvalidTree(String),
    #[error("tree set is empty")]
    EmptyTreeSet,
    #[error("kernel matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("iteration range {min}..={max} is empty")]
    InvalidIterationRange { min: u32, max: u32 },
    #[error("n-gram order must be at least 2, got {0}")]
    InvalidNgramOrder(usize),
    #[error("n-gram tables disagree on order: {left} vs {right}")]
    NgramOrderMismatch { left: usize, right: usize },
    #[error("corpus yields no {0}-grams")]
    EmptyNgramTable(usize),
    #[error("need at least {need} documents, got {got}")]
    TooFewDocuments { need: usize, got: usize },
    #[error("subset fraction must be in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("randomization count must be at least 2, got {0}")]
    InvalidRandomizations(usize),
    #[error("bootstrap iteration {index}: {source}")]
    BootstrapIteration { index: usize, source: Box<Error> },
    #[error("token list is empty")]
    EmptyTokenList,
}

pub type Result<T> = core::result::Result<T, Error>;
