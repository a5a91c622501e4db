use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no roots: polynomial has degree 0 or is zero")]
    NoRoots,
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unsupported multiplicity: repeated pole")]
    UnsupportedMultiplicity,
    #[error("not real-meromorphic Herglotz: {0}")]
    NotRealMeromorphic(String),
    #[error("not Herglotz: {0}")]
    NotHerglotz(String),
    #[error("degenerate Cayley transform: i + Q vanishes identically")]
    DegenerateCayley,
    #[error("denominator not Hermite-Biehler")]
    NotHermiteBiehler,
    #[error("not inner of Hermite-Biehler form")]
    NotInnerHbForm,
    #[error("level set has non-simple or non-real zeros")]
    NonSimpleLevelSet,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("not a member of H(E): degree {degree} not below {bound}")]
    NotInSpace { degree: usize, bound: usize },
    #[error("singular Hankel matrix")]
    SingularHankel,
    #[error("eigenfunction construction failed: {0}")]
    Eigenbasis(String),
    #[error("determinant is not 1")]
    DeterminantNotOne,
    #[error("transfer matrix validation failed: {0}")]
    InvalidTransfer(String),
    #[error("C,D not coprime")]
    NotCoprime,
    #[error("completion not J-inner: {0}")]
    CompletionNotJInner(String),
    #[error("not factorable: matrix is not of canonical-product form ({0})")]
    NotFactorable(String),
    #[error("consecutive factors of equal type at segment {0}")]
    EqualAdjacentTypes(usize),
    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("not in L-hat: {0}")]
    NotInLHat(String),
    #[error("not a string function: {0}")]
    NotStringFunction(String),
    #[error("substitution not rational: Q is not odd")]
    SubstitutionNotRational,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
