use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not factor {n}: composite cofactor {cofactor} survived the Pollard-rho budget")]
    FactorTooHard { n: BigInt, cofactor: BigInt },

    #[error("Z[theta] is not maximal at p = {p}; only monogenic fields are supported")]
    NotMaximalAtP { p: u64 },

    #[error("residue field of norm {norm} exceeds the enumeration bound {bound}")]
    ResidueFieldTooLarge { norm: BigInt, bound: u64 },

    #[error("leading coefficient is zero")]
    LeadingCoefficientZero,

    #[error("{quantity} diverges: the local densities are not summable ({reason})")]
    TailDiverges {
        quantity: &'static str,
        reason: String,
    },

    #[error("density lower bound is not positive; restricted quantities are undefined")]
    DensityZero,

    #[error("box of {needed} tuples exceeds the exhaustive budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("lattice is rank deficient")]
    RankDeficient,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
