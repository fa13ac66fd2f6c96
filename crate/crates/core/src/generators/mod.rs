//! The generators s_{a/l}^(k), r̂^(k) and polynomials in them.

pub mod cache;
pub mod poly;
pub mod relation;
pub mod ring;
pub mod series;

use thiserror::Error;

use crate::arith::ArithError;

pub use cache::{SeriesCache, CACHE_ENV};
pub use poly::{GeneratorPoly, GeneratorSymbol, Monomial};
pub use relation::relation_coefficient;
pub use ring::{
    express_in_generators, generator_set, monomial_basis, reduce_to_s1, sl2_index, sturm_bound,
};
pub use series::{eisenstein_scale, r_constant, r_series, s_constant, s_series};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("residue {a} is divisible by the level {l}")]
    BadResidue { a: i64, l: u32 },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("r^({k}) needs an even order k ≥ 2")]
    OddOrder { k: u32 },
    #[error("residues {residues:?} must be nonzero mod {l} and sum to 0 mod {l}")]
    BadResidues { residues: Vec<i64>, l: u32 },
    #[error("level {l} is not supported here")]
    SmallLevel { l: u32 },
    #[error("expected weight {expected}, got {got}")]
    WrongWeight { expected: u32, got: u32 },
    #[error("series is not in the ring of generators")]
    NotInRing,
    #[error("series known through q^{available}, but q^{required} is needed")]
    InsufficientPrecision { available: i64, required: i64 },
    #[error("no polynomial in weight-one generators reproduces the series")]
    ReductionNotFound,
    #[error("cache: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
