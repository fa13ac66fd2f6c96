//! f_{N,deg} = ∫_X Π_i exp(Σ_{k≥1} ((−1)^k/k!) D_i^k s_{α_i}^(k)) on a smooth complete fan.

use num_bigint::BigInt;
use num_traits::One;

use super::FormsError;
use crate::arith::{CycElem, QSeries, Rational};
use crate::generators::{GeneratorPoly, GeneratorSymbol};
use crate::geom::{DegreeFunction, GeomError, IntersectionRing};

/// Coefficients of x^0..x^r in exp(Σ_{k=1}^r ((−1)^k/k!) x^k s_{a/l}^(k)).
fn ray_factor(a: i64, l: u32, r: u32) -> Result<Vec<GeneratorPoly>, FormsError> {
    let mut f = vec![GeneratorPoly::zero(l, 0)];
    let mut fact = BigInt::one();
    for k in 1..=r {
        fact *= BigInt::from(k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = CycElem::from_rational(l, &Rational::new(BigInt::from(sign), fact.clone()));
        f.push(GeneratorPoly::symbol(l, GeneratorSymbol::s(a, l, k)?).scale(&c));
    }
    // n·E_n = Σ_{k=1}^n k·f_k·E_{n−k}
    let mut e = vec![GeneratorPoly::constant(CycElem::one(l))];
    for n in 1..=r as usize {
        let mut acc = GeneratorPoly::zero(l, n as u32);
        for k in 1..=n {
            acc = acc.add(&f[k].mul(&e[n - k]).scale(&CycElem::from_int(l, k as i64)));
        }
        let inv = CycElem::from_rational(l, &Rational::new(BigInt::one(), BigInt::from(n)));
        e.push(acc.scale(&inv));
    }
    Ok(e)
}

/// Exponent vectors of length n summing to `total`.
fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for k in 0..=total {
        for mut rest in compositions(n - 1, total - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// The form as a weight-r polynomial in the generators s_{a/l}^(k).
pub fn cohomological_poly(deg: &DegreeFunction) -> Result<GeneratorPoly, FormsError> {
    let fan = deg.fan();
    let ring = IntersectionRing::new(fan).map_err(|e| match e {
        GeomError::NotSmooth => FormsError::NotSmooth,
        other => FormsError::Geom(other),
    })?;
    let l = deg.level();
    let r = fan.rank() as u32;
    if let Some(i) = deg.values().iter().position(|a| a % l as i64 == 0) {
        return Err(FormsError::IntegralDegree { ray: i });
    }
    let factors: Vec<Vec<GeneratorPoly>> = deg
        .values()
        .iter()
        .map(|&a| ray_factor(a, l, r))
        .collect::<Result<_, _>>()?;
    let mut total = GeneratorPoly::zero(l, r);
    for e in compositions(factors.len(), r) {
        let integral = ring.integrate_monomial(&e)?;
        if integral == Rational::from_integer(0.into()) {
            continue;
        }
        let mut term = GeneratorPoly::constant(CycElem::from_rational(l, &integral));
        for (f, &k) in factors.iter().zip(&e) {
            term = term.mul(&f[k as usize]);
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// f_{N,deg} through q^prec from the cohomological formula.
pub fn toric_form_cohomological(deg: &DegreeFunction, prec: i64) -> Result<QSeries, FormsError> {
    Ok(cohomological_poly(deg)?.evaluate(prec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::s_series;
    use crate::geom::examples;

    #[test]
    fn projective_line() {
        let deg = DegreeFunction::new(&examples::p1(), 5, vec![2, 2]).unwrap();
        let p = cohomological_poly(&deg).unwrap();
        let want = GeneratorPoly::symbol(5, GeneratorSymbol::s(2, 5, 1).unwrap())
            .scale(&CycElem::from_int(5, -2));
        assert_eq!(p, want);
        assert_eq!(
            toric_form_cohomological(&deg, 20).unwrap(),
            s_series(2, 5, 1, 20).unwrap().scale_int(-2)
        );
    }

    #[test]
    fn factor_is_exponential() {
        // degree-2 coefficient: s^(2)/2 + (s^(1))²/2
        let e = ray_factor(1, 5, 2).unwrap();
        let s1 = GeneratorPoly::symbol(5, GeneratorSymbol::s(1, 5, 1).unwrap());
        let s2 = GeneratorPoly::symbol(5, GeneratorSymbol::s(1, 5, 2).unwrap());
        let half = CycElem::from_rational(5, &Rational::new(1.into(), 2.into()));
        assert_eq!(e[2], s2.add(&s1.mul(&s1)).scale(&half));
    }

    #[test]
    fn rejects_singular_fans() {
        let deg = DegreeFunction::new(&examples::cube_fan(), 5, vec![1; 8]).unwrap();
        assert!(matches!(
            cohomological_poly(&deg),
            Err(FormsError::NotSmooth)
        ));
    }
}
