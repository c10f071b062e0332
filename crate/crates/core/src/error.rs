use thiserror::Error;

use crate::fact::RelationKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactError {
    #[error("{kind} takes {expected} arguments, got {found}")]
    Arity { kind: RelationKind, expected: usize, found: usize },
    #[error("{kind} argument {index} must be {expected}")]
    ArgShape { kind: RelationKind, index: usize, expected: &'static str },
    #[error("lexeme surface is empty")]
    EmptySurface,
    #[error("lexeme `{0}` has an empty lemma")]
    EmptyLemma(String),
    #[error("unknown part of speech `{0}`")]
    UnknownPos(String),
    #[error("unknown relation kind `{0}`")]
    UnknownRelation(String),
}

/// A line-oriented file that failed to parse.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{what}{}: line {line}: {message}", path.as_ref().map(|p| format!(" {p}")).unwrap_or_default())]
pub struct FormatError {
    pub what: &'static str,
    pub path: Option<String>,
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(what: &'static str, line: usize, message: impl Into<String>) -> Self {
        FormatError { what, path: None, line, message: message.into() }
    }

    pub fn at_path(mut self, path: impl Into<String>) -> Self {
        self.path = Some(path.into());
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyzerError {
    #[error("corpus line {line}: {message}")]
    MalformedRow { line: usize, message: String },
    #[error("category `{0}` has no entries")]
    EmptyCategory(String),
    #[error("no `{category}` entries pair with `{head}`")]
    NoPairing { category: String, head: String },
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrammarError {
    #[error("grammar syntax error at {line}:{column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("grammar has no productions")]
    Empty,
    #[error("nonterminal `{name}` (used at line {line}) has no productions")]
    Dangling { name: String, line: usize },
    #[error("unbound slots: {}", .0.join(", "))]
    UnboundSlots(Vec<String>),
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
    #[error("derivation exceeded depth limit {0}")]
    DepthExceeded(usize),
    #[error("depth limit must be positive")]
    ZeroDepth,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerationError {
    #[error("node `{node}` attribute `{attribute}`: {reason}")]
    Unresolvable { node: String, attribute: String, reason: String },
    #[error("fact tree: {0}")]
    Tree(String),
    #[error("facts never realized in the text: {}", .0.join("; "))]
    Unrealized(Vec<String>),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("document {index}: {source}")]
    Document { index: usize, source: Box<GenerationError> },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Analyzer(#[from] AnalyzerError),
    #[error(transparent)]
    Fact(#[from] FactError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResourceError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("vectors{}: line {line}: expected dimension {expected}, found {found}", path.as_ref().map(|p| format!(" {p}")).unwrap_or_default())]
    DimensionMismatch { path: Option<String>, line: usize, expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("source fact table is empty")]
    EmptySource,
    #[error("source has zero tokens")]
    ZeroSourceTokens,
}

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Facts(#[from] FormatError),
    #[error("{path}: {message}")]
    Meta { path: String, message: String },
}
