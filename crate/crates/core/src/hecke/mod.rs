//! Hecke, diamond and Fricke operators, the sublattice identity, and level raising.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{ArithError, CycElem, QSeries, Rational};
use crate::forms::{toric_form_lattice_sum, FormsError};
use crate::generators::{express_in_generators, GenError, GeneratorPoly, GeneratorSymbol};
use crate::geom::{superlattices, DegreeFunction, GeomError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("{p} is not prime")]
    NotPrime { p: u32 },
    #[error("{p} is not coprime to the level {l}")]
    NotCoprime { p: u32, l: u32 },
    #[error("expected weight {expected}, got {got}")]
    WrongWeight { expected: u32, got: u32 },
    #[error("level {l} is below 5")]
    SmallLevel { l: u32 },
    #[error("residue {a} is divisible by the level {l}")]
    BadResidue { a: i64, l: u32 },
    #[error("only s^(1) symbols are supported here, got {0}")]
    UnsupportedSymbol(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// f|U_p = Σ a_{np} q^n.
pub fn u_p(f: &QSeries, p: u32) -> QSeries {
    f.extract_multiples(p)
}

/// f|V_p = Σ a_n q^{np}.
pub fn v_p(f: &QSeries, p: u32) -> QSeries {
    f.substitute_power(p)
}

/// ε_p on generator coordinates: every residue a becomes p·a mod l.
pub fn diamond(g: &GeneratorPoly, p: u32) -> Result<GeneratorPoly, HeckeError> {
    let l = g.level();
    if p.gcd(&l) != 1 {
        return Err(HeckeError::NotCoprime { p, l });
    }
    Ok(g.relabel(|a| ((a as u64 * p as u64) % l as u64) as u32))
}

/// T_p = U_p + p^{r−1} ε_p V_p for p ∤ l, through q^prec.
pub fn t_p(g: &GeneratorPoly, p: u32, weight: u32, prec: i64) -> Result<QSeries, HeckeError> {
    if !is_prime(p) {
        return Err(HeckeError::NotPrime { p });
    }
    if weight == 0 || g.weight() != weight {
        return Err(HeckeError::WrongWeight {
            expected: weight.max(1),
            got: g.weight(),
        });
    }
    let twisted = diamond(g, p)?;
    let pi = p as i64;
    let upper = u_p(&g.evaluate(prec * pi)?, p);
    let lower = v_p(&twisted.evaluate(Integer::div_ceil(&prec, &pi))?, p).truncate(prec);
    let factor = BigInt::from(p).pow(weight - 1);
    Ok(upper.add(&lower.scale_rational(&Rational::from_integer(factor))))
}

/// The Hecke operator at p for forms of a given level and weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeckeContext {
    pub level: u32,
    pub weight: u32,
    pub p: u32,
    pub divides: bool,
}

impl HeckeContext {
    pub fn new(level: u32, weight: u32, p: u32) -> Result<HeckeContext, HeckeError> {
        if !is_prime(p) {
            return Err(HeckeError::NotPrime { p });
        }
        Ok(HeckeContext {
            level,
            weight,
            p,
            divides: level.is_multiple_of(p),
        })
    }

    /// T_p when p ∤ l, U_p when p | l.
    pub fn apply(&self, g: &GeneratorPoly, prec: i64) -> Result<QSeries, HeckeError> {
        if g.level() != self.level {
            return Err(HeckeError::Arith(ArithError::IncompatibleLevels {
                from: g.level(),
                to: self.level,
            }));
        }
        if self.divides {
            Ok(u_p(&g.evaluate(prec * self.p as i64)?, self.p))
        } else {
            t_p(g, self.p, self.weight, prec)
        }
    }
}

/// (p − p^{r−1})/(p − 1).
pub fn correction_factor(p: u32, rank: u32) -> Rational {
    let p = BigInt::from(p);
    let top = &p - p.pow(rank.saturating_sub(1));
    Rational::new(top, p - 1)
}

/// Σ_S f_{S, p·deg} + ((p − p^{r−1})/(p − 1))·f_{N,deg} over N ⊂ S ⊂ (1/p)N, [S:N] = p^{r−1}.
pub fn sublattice_side(deg: &DegreeFunction, p: u32, prec: i64) -> Result<QSeries, HeckeError> {
    let l = deg.level();
    if l.is_multiple_of(p) {
        return Err(HeckeError::NotCoprime { p, l });
    }
    let rank = deg.fan().rank();
    let lattices = superlattices(rank, p)?;
    let parts: Vec<QSeries> = lattices
        .par_iter()
        .map(|s| -> Result<QSeries, HeckeError> {
            let moved = s.transport(deg, p as i64)?;
            Ok(toric_form_lattice_sum(&moved, prec)?)
        })
        .collect::<Result<_, _>>()?;
    let mut total = QSeries::zero(l, prec);
    for f in parts {
        total = total.add(&f);
    }
    let c = correction_factor(p, rank as u32);
    if c != Rational::from_integer(0.into()) {
        total = total.add(&toric_form_lattice_sum(deg, prec)?.scale_rational(&c));
    }
    Ok(total)
}

/// Image of s_{a/l}^(1) under the weight-one Fricke action: (1/l)·Σ_j ζ^{−ja} s_{j/l}^(1).
pub fn fricke_s1(a: i64, l: u32) -> Result<GeneratorPoly, HeckeError> {
    if l < 5 {
        return Err(HeckeError::SmallLevel { l });
    }
    if a.rem_euclid(l as i64) == 0 {
        return Err(HeckeError::BadResidue { a, l });
    }
    let scale = CycElem::from_rational(l, &Rational::new(1.into(), (l as i64).into()));
    let mut out = GeneratorPoly::zero(l, 1);
    for j in 1..l {
        let c = CycElem::root_of_unity(l, -(j as i64) * a);
        out.add_term(vec![(GeneratorSymbol::S { a: j, k: 1 }, 1)], &c * &scale);
    }
    Ok(out)
}

/// The Fricke action extended linearly to a weight-one polynomial in s^(1) symbols.
pub fn fricke_weight1(g: &GeneratorPoly) -> Result<GeneratorPoly, HeckeError> {
    let l = g.level();
    if g.weight() != 1 {
        return Err(HeckeError::WrongWeight {
            expected: 1,
            got: g.weight(),
        });
    }
    let mut out = GeneratorPoly::zero(l, 1);
    for (m, c) in g.terms() {
        let [(GeneratorSymbol::S { a, k: 1 }, 1)] = m.as_slice() else {
            return Err(HeckeError::UnsupportedSymbol(format!("{m:?}")));
        };
        out = out.add(&fricke_s1(*a as i64, l)?.scale(c));
    }
    Ok(out)
}

/// a/l − 1/2 − Σ_{d≥1} q^d Σ_{k|d} (δ[k ≡ a] − δ[k ≡ −a]), summed from its Lambert series.
pub fn fricke_direct_expansion(a: i64, l: u32, prec: i64) -> Result<QSeries, HeckeError> {
    let li = l as i64;
    let a = a.rem_euclid(li);
    if a == 0 {
        return Err(HeckeError::BadResidue { a, l });
    }
    let n = prec.max(0) as usize;
    let mut c = vec![Rational::from_integer(0.into()); n + 1];
    c[0] = Rational::new(a.into(), li.into()) - Rational::new(1.into(), 2.into());
    // −Σ_{n≥0} q^e/(1 − q^e) for e = a + nl, and +Σ_{n≥1} for e = −a + nl
    let mut lambert = |e: i64, sign: i64| {
        for d in (e..=prec).step_by(e as usize) {
            c[d as usize] += Rational::from_integer(sign.into());
        }
    };
    let mut e = a;
    while e <= prec {
        lambert(e, -1);
        e += li;
    }
    let mut e = li - a;
    while e <= prec {
        lambert(e, 1);
        e += li;
    }
    Ok(QSeries::from_rationals(1, 0, &c, prec).embed(l)?)
}

/// (1/p)·Σ_{k<p} s_{(a+kl)/(pl)}^(1), the weight-one image of s_{a/l}^(1)(pτ).
pub fn level_raise_s1(a: i64, l: u32, p: u32) -> Result<GeneratorPoly, HeckeError> {
    let big = l * p;
    let inv_p = CycElem::from_rational(big, &Rational::new(1.into(), (p as i64).into()));
    let mut out = GeneratorPoly::zero(big, 1);
    for k in 0..p as i64 {
        let sym = GeneratorSymbol::s(a + k * l as i64, big, 1)?;
        out.add_term(vec![(sym, 1)], inv_p.clone());
    }
    Ok(out)
}

/// g(pτ) rewritten in the generators of level p·l, by V_p and a membership solve.
pub fn level_raise(g: &GeneratorPoly, p: u32) -> Result<GeneratorPoly, HeckeError> {
    let l = g.level();
    let big = l * p;
    if g.is_zero() || g.weight() == 0 {
        let c = g.terms().next().map(|(_, c)| c.embed(big)).transpose()?;
        return Ok(match c {
            Some(c) => GeneratorPoly::constant(c),
            None => GeneratorPoly::zero(big, g.weight()),
        });
    }
    let bound = crate::generators::sturm_bound(g.weight(), big);
    let f = v_p(&g.evaluate((bound + p as i64 - 1) / p as i64)?, p).truncate(bound);
    Ok(express_in_generators(&f.embed(big)?, g.weight(), big)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::s_series;

    fn s1(a: u32, l: u32) -> GeneratorPoly {
        GeneratorPoly::symbol(l, GeneratorSymbol::S { a, k: 1 })
    }

    #[test]
    fn shifts() {
        let all = QSeries::from_ints(0, &[1; 21], 20);
        assert_eq!(u_p(&all, 2), QSeries::from_ints(0, &[1; 11], 10));
        let q = QSeries::from_ints(1, &[1], 20);
        assert!(u_p(&q, 2).is_zero());
        assert_eq!(v_p(&q, 3), QSeries::from_ints(3, &[1], 60));
        let f = s_series(2, 7, 1, 30).unwrap();
        assert_eq!(u_p(&v_p(&f, 3), 3), f);
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(diamond(&s1(1, 5), 2).unwrap(), s1(2, 5));
        assert_eq!(diamond(&s1(3, 7), 1).unwrap(), s1(3, 7));
        assert!(matches!(
            diamond(&s1(1, 5), 5),
            Err(HeckeError::NotCoprime { .. })
        ));
    }

    #[test]
    fn weight_one_eigen_relation() {
        for l in [5u32, 7] {
            for a in 1..l {
                for p in [2u32, 3] {
                    let got = t_p(&s1(a, l), p, 1, 40).unwrap();
                    let want = s_series((p * a) as i64, l, 1, 40)
                        .unwrap()
                        .add(&s_series(a as i64, l, 1, 40).unwrap());
                    assert_eq!(got, want, "l={l} a={a} p={p}");
                }
            }
        }
    }

    #[test]
    fn wrong_weight() {
        let one = GeneratorPoly::constant(CycElem::one(5));
        assert!(matches!(
            t_p(&one, 2, 0, 10),
            Err(HeckeError::WrongWeight { .. })
        ));
    }

    #[test]
    fn correction_factors() {
        assert_eq!(correction_factor(2, 1), Rational::from_integer(1.into()));
        assert_eq!(correction_factor(3, 2), Rational::from_integer(0.into()));
        assert_eq!(correction_factor(3, 3), Rational::from_integer((-3).into()));
    }

    #[test]
    fn fricke_matches_direct_expansion() {
        for l in [5u32, 7] {
            for a in 1..l as i64 {
                let f = fricke_s1(a, l).unwrap().evaluate(30).unwrap();
                assert_eq!(f, fricke_direct_expansion(a, l, 30).unwrap(), "a={a} l={l}");
            }
        }
    }

    #[test]
    fn level_raise_weight_one() {
        let g = s1(1, 5);
        let raised = level_raise(&g, 2).unwrap();
        let formula = level_raise_s1(1, 5, 2).unwrap();
        assert_eq!(raised.evaluate(40).unwrap(), formula.evaluate(40).unwrap());
        assert_eq!(
            v_p(&g.evaluate(20).unwrap(), 2).embed(10).unwrap(),
            formula.evaluate(40).unwrap()
        );
    }
}
