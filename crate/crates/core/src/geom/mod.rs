//! Lattices, cones, fans, degree functions and intersection numbers.

pub mod degree;
pub mod examples;
pub mod fan;
pub mod intersection;
pub mod lattices;
pub mod linalg;
pub mod parallelepiped;

use thiserror::Error;

pub use degree::{deg_eval, DegreeFunction, DegreeSpec};
pub use fan::{Cone, Fan, FanSpec};
pub use intersection::{integrate_monomial, ConeChoice, IntersectionRing};
pub use lattices::{superlattices, Superlattice};
pub use parallelepiped::{parallelepiped, ParallelepipedData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid fan: {0}")]
    Invalid(String),
    #[error("maximal cones have unequal dimension")]
    NotPure,
    #[error("fan is not complete")]
    NotComplete,
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("monomial has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("degree of ray {ray} is an integer")]
    IntegralRayValue { ray: usize },
    #[error("ray values on maximal cone {cone} do not extend to a linear function")]
    NonLinearDegree { cone: usize },
    #[error("degree at {point:?} does not lie in (1/l)Z")]
    LevelViolation { point: Vec<i64> },
    #[error("point lies outside the support of the fan")]
    OutsideSupport,
}

/// `is_complete`
pub fn is_complete(fan: &Fan) -> Result<bool, GeomError> {
    fan.is_complete()
}

/// `triangulate`
pub fn triangulate(fan: &Fan) -> Fan {
    fan.triangulate()
}
