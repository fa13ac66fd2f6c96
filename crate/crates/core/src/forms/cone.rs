//! Closed forms of the continued lattice-point sums over a simplicial cone.

use super::FormsError;
use crate::arith::{CycElem, QSeries};
use crate::geom::linalg::dot;
use crate::geom::parallelepiped::parallelepiped;
use crate::geom::{Cone, DegreeFunction};

/// Σ_{p ∈ Π(C)} ζ^{t_p} q^{m·p} / Π_i (1 − ζ^{a_i} q^{m·d_i}).
#[derive(Debug, Clone)]
pub struct ConeRational {
    pub cone: Cone,
    pub m: Vec<i64>,
    pub level: u32,
    /// (coefficient, exponent of q) per parallelepiped point.
    pub numerator: Vec<(CycElem, i64)>,
    /// (ζ^{a_i}, m·d_i) per ray of the cone.
    pub denominator: Vec<(CycElem, i64)>,
}

/// The rational function of `cone` (a cone of the fan carrying `deg`) at m.
pub fn cone_rational(
    cone: &Cone,
    deg: &DegreeFunction,
    m: &[i64],
) -> Result<ConeRational, FormsError> {
    let l = deg.level();
    let data = parallelepiped(cone)?;
    let numerator = data
        .points
        .iter()
        .zip(&data.coords)
        .map(|(p, lambda)| {
            let t = deg.numerator_on(&cone.ray_ids, lambda);
            (CycElem::root_of_unity(l, t), dot(m, p))
        })
        .collect();
    let mut denominator = vec![];
    for (&i, d) in cone.ray_ids.iter().zip(&cone.rays) {
        let z = CycElem::root_of_unity(l, deg.values()[i]);
        let k = dot(m, d);
        if k == 0 && z.is_one() {
            return Err(FormsError::PoleOnContinuation { ray: i });
        }
        denominator.push((z, k));
    }
    Ok(ConeRational {
        cone: cone.clone(),
        m: m.to_vec(),
        level: l,
        numerator,
        denominator,
    })
}

impl ConeRational {
    /// Laurent expansion through q^prec. Factors with m·d < 0 are rewritten as
    /// −z⁻¹q^{|k|}/(1 − z⁻¹q^{|k|}) before expanding.
    pub fn expand(&self, prec: i64) -> Result<QSeries, FormsError> {
        let l = self.level;
        let shift: i64 = self.denominator.iter().map(|(_, k)| (-k).max(0)).sum();
        let lo = self.numerator.iter().map(|(_, e)| *e).min().unwrap_or(0);
        let hi = prec - shift;
        let mut f = if hi < lo {
            QSeries::zero(l, hi)
        } else {
            let mut dense = vec![CycElem::zero(l); (hi - lo + 1) as usize];
            for (c, e) in &self.numerator {
                if *e <= hi {
                    dense[(e - lo) as usize] += c;
                }
            }
            QSeries::from_coeffs(l, lo, dense, hi)
        };
        for (z, k) in &self.denominator {
            f = match k.signum() {
                1 => f.div_one_minus(z, *k),
                0 => f.scale(&(&CycElem::one(l) - z).inv()?),
                _ => {
                    let zi = z.inv()?;
                    f.shift(-k).scale(&-zi.clone()).div_one_minus(&zi, -k)
                }
            };
        }
        Ok(f.truncate(prec))
    }
}

/// r(q,m) = Σ_C (−1)^{codim C} f_C(q,m) over the cones of a simplicial fan.
pub fn r_of_m(deg: &DegreeFunction, m: &[i64], prec: i64) -> Result<QSeries, FormsError> {
    let fan = deg.fan();
    if !fan.is_simplicial() {
        return Err(FormsError::NotSimplicial);
    }
    let l = deg.level();
    let mut total = QSeries::zero(l, prec);
    for cone in fan.cones() {
        let f = cone_rational(cone, deg, m)?.expand(prec)?;
        total = if (fan.rank() - cone.dim).is_multiple_of(2) {
            total.add(&f)
        } else {
            total.sub(&f)
        };
    }
    if !total.is_zero() && total.valuation() < 0 {
        return Err(FormsError::NegativeValuation { m: m.to_vec() });
    }
    Ok(total)
}

/// Whether m pairs positively with every ray of the cone.
pub fn strictly_positive_on(cone: &Cone, m: &[i64]) -> bool {
    !cone.rays.is_empty() && cone.rays.iter().all(|d| dot(m, d) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geom::examples;
    use crate::geom::linalg::coordinates;

    fn p1(a: i64, l: u32) -> DegreeFunction {
        DegreeFunction::new(&examples::p1(), l, vec![a, a]).unwrap()
    }

    #[test]
    fn zero_cone_is_one() {
        let deg = p1(1, 5);
        let zero = &deg.fan().cones()[0];
        assert_eq!(zero.dim, 0);
        let f = cone_rational(zero, &deg, &[3]).unwrap().expand(5).unwrap();
        assert_eq!(f, QSeries::one(5, 5));
    }

    #[test]
    fn half_line() {
        let deg = p1(2, 5);
        let cone = deg.fan().max_cone(0);
        assert_eq!(cone.rays, vec![vec![1]]);
        let x = CycElem::root_of_unity(5, 2);
        let f = cone_rational(&cone, &deg, &[1]).unwrap().expand(6).unwrap();
        for n in 0..=6 {
            assert_eq!(f.coeff(n), x.pow(n as u32));
        }
        let f = cone_rational(&cone, &deg, &[0]).unwrap().expand(6).unwrap();
        assert_eq!(
            f,
            QSeries::constant((&CycElem::one(5) - &x).inv().unwrap(), 6)
        );
    }

    #[test]
    fn projective_line_at_zero() {
        for a in 1..5 {
            let deg = p1(a, 5);
            let x = CycElem::root_of_unity(5, a);
            let c = (&CycElem::one(5) - &x).inv().unwrap();
            let want = &c.scale_rational(&rat(2, 1)) - &CycElem::one(5);
            assert_eq!(r_of_m(&deg, &[0], 10).unwrap(), QSeries::constant(want, 10));
        }
    }

    #[test]
    fn projective_line_at_m() {
        // x q^m/(1 − x q^m) − x⁻¹q^m/(1 − x⁻¹q^m)
        let deg = p1(1, 7);
        let x = CycElem::root_of_unity(7, 1);
        for m in [-3i64, -1, 1, 2] {
            let f = r_of_m(&deg, &[m], 20).unwrap();
            for n in 0..=20 {
                let want = if n > 0 && n % m.abs() == 0 {
                    let j = n / m.abs();
                    &x.pow(j as u32) - &CycElem::root_of_unity(7, -j)
                } else {
                    CycElem::zero(7)
                };
                assert_eq!(f.coeff(n), want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn brute_force_single_cone() {
        // m positive on one maximal cone of the stellar P² fan
        let fan = examples::p2_stellar();
        let deg = DegreeFunction::new(&fan, 5, vec![1, 2, 4, 3]).unwrap();
        for c in 0..fan.max_cones().len() {
            let cone = fan.max_cone(c);
            for m in [[1i64, 2], [3, -1], [-2, -1], [-1, 3], [2, 2], [-3, -2]] {
                if !strictly_positive_on(&cone, &m) {
                    continue;
                }
                let f = cone_rational(&cone, &deg, &m).unwrap().expand(20).unwrap();
                let mut dense = vec![CycElem::zero(5); 21];
                for x in -25i64..=25 {
                    for y in -25i64..=25 {
                        let n = [x, y];
                        let e = dot(&m, &n);
                        if !(0..=20).contains(&e) {
                            continue;
                        }
                        let lambda = coordinates(&cone.rays, &n).unwrap();
                        if lambda.iter().any(|t| *t < rat(0, 1)) {
                            continue;
                        }
                        let v = deg.eval(&n).unwrap() * rat(5, 1);
                        let t = i64::try_from(v.to_integer()).unwrap();
                        dense[e as usize] += &CycElem::root_of_unity(5, t);
                    }
                }
                assert_eq!(f, QSeries::from_coeffs(5, 0, dense, 20), "cone {c} m {m:?}");
            }
        }
    }
}
