use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tensor is not alternating")]
    NotAlternating,
    #[error("tensor does not lie in Alt3")]
    NotInAlt3,
    #[error("bivector is zero")]
    ZeroBivector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("bilinear form is not symmetric")]
    NotSymmetric,

    #[error("constraint (q-1)^2 = -4*Delta violated: (q-1)^2 = {lhs}, -4*Delta = {rhs}")]
    InvalidConstraint { lhs: String, rhs: String },
    #[error("Hecke parameter q must be nonzero")]
    ZeroQ,
    #[error("image of Y is not contained in Alt2")]
    ImageNotInAlt2,
    #[error("operator is not a Hecke symmetry with polynomial symmetric algebra: {0}")]
    NotHeckeSym0(String),
    #[error("operator satisfies no quadratic Hecke relation")]
    NoHeckeParameter,
    #[error("R = -Id satisfies the Hecke relation for every q")]
    AmbiguousHeckeParameter,
    #[error("lambda*(q-1) = -1 gives a singular deformation")]
    SingularDeformation,
    #[error("invalid q for this type: {0}")]
    InvalidQ(String),
}

pub type Result<T> = std::result::Result<T, Error>;
