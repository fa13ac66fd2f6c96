//! Piecewise-linear degree functions of level l.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::linalg::solve_rows;
use super::parallelepiped::parallelepiped;
use super::{Fan, GeomError};
use crate::arith::Rational;

/// deg: N → (1/l)Z, linear on every cone, with deg(d) = values[d]/l on rays.
#[derive(Debug, Clone)]
pub struct DegreeFunction {
    fan: Arc<Fan>,
    level: u32,
    values: Vec<i64>,
    /// For each maximal cone, φ with φ·d = a_d on its rays (deg = φ·n / l).
    functionals: Vec<Vec<Rational>>,
}

impl PartialEq for DegreeFunction {
    fn eq(&self, other: &DegreeFunction) -> bool {
        self.fan == other.fan && self.level == other.level && self.values == other.values
    }
}

/// The JSON form `{"l": l, "values": [a_d, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeSpec {
    pub l: u32,
    pub values: Vec<i64>,
}

impl DegreeFunction {
    pub fn new(fan: &Fan, level: u32, values: Vec<i64>) -> Result<DegreeFunction, GeomError> {
        DegreeFunction::on(Arc::new(fan.clone()), level, values)
    }

    pub fn from_spec(fan: &Fan, spec: &DegreeSpec) -> Result<DegreeFunction, GeomError> {
        DegreeFunction::new(fan, spec.l, spec.values.clone())
    }

    pub fn to_spec(&self) -> DegreeSpec {
        DegreeSpec {
            l: self.level,
            values: self.values.clone(),
        }
    }

    pub fn on(fan: Arc<Fan>, level: u32, values: Vec<i64>) -> Result<DegreeFunction, GeomError> {
        if level == 0 {
            return Err(GeomError::Invalid("level must be positive".into()));
        }
        if values.len() != fan.rays().len() {
            return Err(GeomError::Invalid(format!(
                "{} ray values for {} rays",
                values.len(),
                fan.rays().len()
            )));
        }
        if let Some(i) = values.iter().position(|a| a % level as i64 == 0) {
            return Err(GeomError::IntegralRayValue { ray: i });
        }
        let mut functionals = vec![];
        for (c, ids) in fan.max_cones().iter().enumerate() {
            let rows: Vec<Vec<i64>> = ids.iter().map(|&i| fan.rays()[i].clone()).collect();
            let rhs: Vec<i64> = ids.iter().map(|&i| values[i]).collect();
            match solve_rows(&rows, &rhs, fan.rank()) {
                Some(phi) => functionals.push(phi),
                None => return Err(GeomError::NonLinearDegree { cone: c }),
            }
        }
        let deg = DegreeFunction {
            fan,
            level,
            values,
            functionals,
        };
        deg.check_level()?;
        Ok(deg)
    }

    /// l·deg(p) must be an integer at every lattice point.
    fn check_level(&self) -> Result<(), GeomError> {
        let tri = self.fan.triangulate();
        for c in 0..tri.max_cones().len() {
            let cone = tri.max_cone(c);
            let data = parallelepiped(&cone)?;
            for (p, lambda) in data.points.iter().zip(&data.coords) {
                let total: Rational = lambda
                    .iter()
                    .zip(&cone.ray_ids)
                    .map(|(x, &i)| x * Rational::from_integer(self.values[i].into()))
                    .sum();
                if !total.is_integer() {
                    return Err(GeomError::LevelViolation { point: p.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn fan_arc(&self) -> &Arc<Fan> {
        &self.fan
    }

    /// The denominator l.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Numerators a_d, one per ray.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// deg(d_i) = a_i / l.
    pub fn ray_value(&self, i: usize) -> Rational {
        Rational::new(self.values[i].into(), (self.level as i64).into())
    }

    /// The same ray values on another fan with the same rays (e.g. a triangulation).
    pub fn with_fan(&self, fan: Arc<Fan>) -> Result<DegreeFunction, GeomError> {
        if fan.rays() != self.fan.rays() {
            return Err(GeomError::Invalid("fans have different rays".into()));
        }
        DegreeFunction::on(fan, self.level, self.values.clone())
    }

    /// k·deg at the same level.
    pub fn scaled(&self, k: i64) -> Result<DegreeFunction, GeomError> {
        let values = self.values.iter().map(|a| a * k).collect();
        DegreeFunction::on(self.fan.clone(), self.level, values)
    }

    /// deg(n), evaluated on a maximal cone containing n.
    pub fn eval(&self, n: &[i64]) -> Result<Rational, GeomError> {
        let c = self
            .fan
            .max_cone_containing(n)
            .ok_or(GeomError::OutsideSupport)?;
        let phi = &self.functionals[c];
        let s: Rational = phi
            .iter()
            .zip(n)
            .map(|(x, &y)| x * Rational::from_integer(y.into()))
            .sum();
        Ok(s / Rational::from_integer((self.level as i64).into()))
    }

    /// l·deg(n) reduced mod l, for n in the cone `ray_ids` with coordinates `lambda`.
    pub fn numerator_on(&self, ray_ids: &[usize], lambda: &[Rational]) -> i64 {
        let total: Rational = lambda
            .iter()
            .zip(ray_ids)
            .map(|(x, &i)| x * Rational::from_integer(self.values[i].into()))
            .sum();
        assert!(total.is_integer(), "degree is not of level {}", self.level);
        let t: BigInt = total.to_integer();
        let l = BigInt::from(self.level);
        let r = ((t % &l) + &l) % &l;
        i64::try_from(r).unwrap()
    }
}

/// `deg_eval`
pub fn deg_eval(deg: &DegreeFunction, n: &[i64]) -> Result<Rational, GeomError> {
    deg.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geom::examples;

    #[test]
    fn evaluation_examples() {
        let p1 = examples::p1();
        let d = DegreeFunction::new(&p1, 5, vec![2, 2]).unwrap();
        assert_eq!(d.eval(&[0]).unwrap(), rat(0, 1));
        assert_eq!(d.eval(&[5]).unwrap(), rat(2, 1));
        assert_eq!(d.eval(&[-3]).unwrap(), rat(6, 5));

        let p2 = examples::p2();
        let d = DegreeFunction::new(&p2, 7, vec![1, 2, 3]).unwrap();
        assert_eq!(d.eval(&[1, 1]).unwrap(), rat(3, 7));
        // (−2,−1) = (0,1) + 2·(−1,−1)
        assert_eq!(d.eval(&[-2, -1]).unwrap(), rat(2 + 2 * 3, 7));
    }

    #[test]
    fn rejects_integral_and_nonlinear() {
        let p1 = examples::p1();
        assert_eq!(
            DegreeFunction::new(&p1, 5, vec![5, 1]),
            Err(GeomError::IntegralRayValue { ray: 0 })
        );
        let cube = examples::cube_fan();
        let vals = vec![1; 8];
        assert!(DegreeFunction::new(&cube, 5, vals).is_ok());
        let mut bad = vec![1; 8];
        bad[0] = 2;
        assert!(matches!(
            DegreeFunction::new(&cube, 5, bad),
            Err(GeomError::NonLinearDegree { .. })
        ));
    }

    #[test]
    fn level_condition() {
        // cone (1,0),(1,2) contains (1,1) = ½(1,0) + ½(1,2)
        let fan = crate::geom::Fan::new(
            2,
            vec![vec![1, 0], vec![1, 2], vec![-1, 0], vec![-1, -2]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        assert!(matches!(
            DegreeFunction::new(&fan, 5, vec![1, 2, 1, 1]),
            Err(GeomError::LevelViolation { .. })
        ));
        assert!(DegreeFunction::new(&fan, 5, vec![1, 3, 1, 3]).is_ok());
    }
}
