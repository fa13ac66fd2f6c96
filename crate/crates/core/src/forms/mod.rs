//! Toric forms f_{N,deg}: the lattice-sum definition and the cohomological formula.

pub mod cohomology;
pub mod cone;
pub mod lattice;
pub mod truncation;

use thiserror::Error;

use crate::arith::ArithError;
use crate::generators::GenError;
use crate::geom::GeomError;

pub use crate::generators::express_in_generators;
pub use cohomology::{cohomological_poly, toric_form_cohomological};
pub use cone::{cone_rational, r_of_m, ConeRational};
pub use lattice::{lattice_sum, toric_form_lattice_sum, LatticeSum};
pub use truncation::{check_certificate, RegionBound, TruncationBound, TruncationCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("denominator factor of ray {ray} vanishes identically")]
    PoleOnContinuation { ray: usize },
    #[error("r(q,m) has a negative power of q at m = {m:?}")]
    NegativeValuation { m: Vec<i64> },
    #[error("the fan is not smooth")]
    NotSmooth,
    #[error("the fan is not simplicial")]
    NotSimplicial,
    #[error("deg is integral on ray {ray}")]
    IntegralDegree { ray: usize },
    #[error("precision must be nonnegative, got {prec}")]
    BadPrecision { prec: i64 },
    #[error("pipelines disagree at q^{at}")]
    PipelineMismatch { at: i64 },
    #[error("truncation certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
