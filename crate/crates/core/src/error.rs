use alloc::string::String;

/// Failures raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constant index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("bracket entries must satisfy i < j (got i = {i}, j = {j})")]
    BracketOrder { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("Killing form is degenerate: the algebra is not semisimple")]
    NotSemisimple,
    #[error("the endomorphism does not square to the identity")]
    NotInvolution,
    #[error("the endomorphism does not preserve the bracket on basis pair ({i}, {j})")]
    NotAutomorphism { i: usize, j: usize },
    #[error("Killing form restricted to {0} is degenerate")]
    DegenerateRestriction(&'static str),
    #[error("pair invariant violated: {0}")]
    PairInvariant(&'static str),
    #[error("the sign-twisted dual does not have a negative definite Killing form")]
    DualNotCompact,
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("vector does not lie in the acting subalgebra")]
    NotInSubalgebra,
    #[error("polynomial is not invariant under the acting algebra")]
    NotInvariantPolynomial,
    #[error("form is not biinvariant")]
    NotBiinvariant,
    #[error("form is not invariant under the isotropy algebra")]
    NotInvariant,
    #[error("inner product is not positive definite")]
    NotDefinite,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("degree {degree}: generated dimension {found} < expected {expected}; raise the polynomial degree cap")]
    CapInsufficient {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension {0} exceeds the supported maximum of 32")]
    TooLarge(usize),
    #[error("cannot parse rational number {0:?}")]
    ParseScalar(String),
    #[error("vectors do not form a basis: {0}")]
    InvalidBasis(&'static str),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
}
