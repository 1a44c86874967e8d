use thiserror::Error;

/// Errors raised by the invariant computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent {0} is degenerate: every Brieskorn-Pham exponent must be at least 2")]
    DegenerateExponent(i64),
    #[error("weight system is invalid: {0}")]
    InvalidWeights(String),
    #[error("monomial matrix is invalid: {0}")]
    InvalidMonomials(String),
    #[error(
        "monomial system does not determine the weights up to scale (rank {rank}, need {needed})"
    )]
    RankDeficient { rank: usize, needed: usize },
    #[error("monomial system has no positive rational weight solution")]
    NoPositiveSolution,
    #[error("operation supports {expected}, got {got} variables")]
    DimensionUnsupported { expected: &'static str, got: usize },
    #[error("alternating subset sum is not a nonnegative integer: {0}")]
    NonIntegerResult(String),
    #[error("exponents are not pairwise coprime, the link is not an integral homology sphere")]
    NotHomologySphere,
    #[error("integers are not pairwise coprime")]
    NotPairwiseCoprime,
    #[error("signature {0} is not divisible by 8")]
    NonDivisible(String),
    #[error("link is not a rational homology sphere (middle Betti number {0})")]
    NotASphere(String),
    #[error("lattice too large for exact enumeration: {0}")]
    TooLarge(String),
    #[error("homothety scale must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("constants are not in the positive class (lambda = {0} <= -2)")]
    NotPositiveClass(String),
    #[error("constants are not in the negative class (lambda = {0} >= -2)")]
    NotNegativeClass(String),
    #[error("no Einstein-Weyl pair: nu = {0} is not negative")]
    NoEwPair(String),
    #[error("inconsistent eta-Einstein constants: lambda + nu = {sum}, expected 2n = {expected}")]
    InconsistentConstants { sum: String, expected: String },
    #[error("invalid metric algebra: {0}")]
    InvalidAlgebra(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("sample z = {0} lies within 1e-6 of a pole of tan(z + c)")]
    PoleProximity(f64),
    #[error("cannot parse link descriptor: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
