//! Membership in the ring of generators: Sturm-type bound and exact linear solve.

use std::collections::BTreeMap;

use super::poly::{GeneratorPoly, GeneratorSymbol, Monomial};
use super::GenError;
use crate::arith::linalg::solve;
use crate::arith::{CycElem, QSeries};

/// [SL₂(Z) : Γ₁(l)] = l²·Π_{p|l}(1 − 1/p²), with the ±1 ambiguity ignored.
pub fn sl2_index(l: u32) -> u64 {
    let mut n = l as u64;
    let mut idx = n * n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            idx = idx / (p * p) * (p * p - 1);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        idx = idx / (n * n) * (n * n - 1);
    }
    idx
}

/// ceil(weight·index/12) + 1.
pub fn sturm_bound(weight: u32, l: u32) -> i64 {
    let num = weight as u64 * sl2_index(l);
    (num.div_ceil(12) + 1) as i64
}

/// The generating symbols used at level l.
///
/// l ≥ 5: all s_{b/l}^(1). Smaller levels use the mixed-weight sets
/// {s_{1/4}^(1), s_{1/4}^(2)}, {s_{1/3}^(1), s_{1/3}^(3)}, {s_{1/2}^(2), s_{1/2}^(4)},
/// and {r̂^(4), r̂^(6)} at level 1.
pub fn generator_set(l: u32) -> Result<Vec<GeneratorSymbol>, GenError> {
    let s = |a: u32, k: u32| GeneratorSymbol::S { a, k };
    Ok(match l {
        0 => return Err(GenError::SmallLevel { l }),
        1 => vec![GeneratorSymbol::R { k: 4 }, GeneratorSymbol::R { k: 6 }],
        2 => vec![s(1, 2), s(1, 4)],
        3 => vec![s(1, 1), s(1, 3)],
        4 => vec![s(1, 1), s(1, 2)],
        _ => (1..l).map(|b| s(b, 1)).collect(),
    })
}

/// Monomials of total weight `weight` in `gens`, lexicographic in the exponent vector.
pub fn monomial_basis(gens: &[GeneratorSymbol], weight: u32) -> Vec<Monomial> {
    fn rec(gens: &[GeneratorSymbol], weight: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        let Some((first, rest)) = gens.split_first() else {
            if weight == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let w = first.weight();
        for e in (0..=weight / w).rev() {
            if e > 0 {
                prefix.push((*first, e));
            }
            rec(rest, weight - e * w, prefix, out);
            if e > 0 {
                prefix.pop();
            }
        }
    }
    let mut out = vec![];
    rec(gens, weight, &mut vec![], &mut out);
    out
}

/// Solve f = Σ c_m·m over `basis` using coefficients q^0..q^bound.
/// Returns `None` when no combination matches.
fn solve_in_basis(
    f: &QSeries,
    l: u32,
    weight: u32,
    basis: &[Monomial],
    bound: i64,
) -> Result<Option<GeneratorPoly>, GenError> {
    let mut series: BTreeMap<GeneratorSymbol, QSeries> = BTreeMap::new();
    let mut columns = Vec::with_capacity(basis.len());
    for m in basis {
        let mut term = QSeries::one(l, bound);
        for &(s, e) in m {
            if let std::collections::btree_map::Entry::Vacant(e) = series.entry(s) {
                e.insert(s.series(l, bound)?);
            }
            term = term.mul(&series[&s].pow(e));
        }
        columns.push(term);
    }
    let rows: Vec<Vec<CycElem>> = (0..=bound)
        .map(|n| columns.iter().map(|c| c.coeff(n)).collect())
        .collect();
    let rhs: Vec<CycElem> = (0..=bound).map(|n| f.coeff(n)).collect();
    let Some(x) = solve(&rows, &rhs) else {
        return Ok(None);
    };
    let mut poly = GeneratorPoly::zero(l, weight);
    for (m, c) in basis.iter().zip(x) {
        if !c.is_zero() {
            poly.add_term(m.clone(), c);
        }
    }
    Ok(Some(poly))
}

/// Write a weight-`weight` form of level l as a polynomial in the generators of level l.
///
/// The coefficients are matched through the Sturm bound; when `f` carries more
/// precision the result is also checked against all of it.
pub fn express_in_generators(f: &QSeries, weight: u32, l: u32) -> Result<GeneratorPoly, GenError> {
    let bound = sturm_bound(weight, l);
    if f.prec() < bound {
        return Err(GenError::InsufficientPrecision {
            available: f.prec(),
            required: bound,
        });
    }
    let f = if f.level() == l {
        f.clone()
    } else {
        f.embed(l)?
    };
    if f.valuation() < 0 {
        return Err(GenError::NotInRing);
    }
    let basis = monomial_basis(&generator_set(l)?, weight);
    let Some(poly) = solve_in_basis(&f, l, weight, &basis, bound)? else {
        return Err(GenError::NotInRing);
    };
    if f.prec() > bound && !poly.evaluate(f.prec())?.compare(&f, f.prec()).is_equal() {
        return Err(GenError::NotInRing);
    }
    Ok(poly)
}

/// A generator of any weight as a polynomial in the weight-one s_{b/l}^(1), for l ≥ 5.
pub fn reduce_to_s1(sym: GeneratorSymbol, l: u32) -> Result<GeneratorPoly, GenError> {
    if l < 5 {
        return Err(GenError::SmallLevel { l });
    }
    let weight = sym.weight();
    let bound = sturm_bound(weight, l);
    let f = sym.series(l, bound)?;
    let basis = monomial_basis(&generator_set(l)?, weight);
    solve_in_basis(&f, l, weight, &basis, bound)?.ok_or(GenError::ReductionNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_and_bounds() {
        assert_eq!(sl2_index(1), 1);
        assert_eq!(sl2_index(5), 24);
        assert_eq!(sl2_index(10), 72);
        assert_eq!(sl2_index(11), 120);
        assert_eq!(sl2_index(13), 168);
        assert_eq!(sturm_bound(2, 13), 29);
        assert_eq!(sturm_bound(1, 5), 3);
    }

    #[test]
    fn basis_sizes() {
        let g = generator_set(5).unwrap();
        assert_eq!(monomial_basis(&g, 2).len(), 10);
        assert_eq!(monomial_basis(&g, 0), vec![Monomial::new()]);
        // weights 1 and 3 at level 3: w=4 → s1⁴, s1·s3
        assert_eq!(monomial_basis(&generator_set(3).unwrap(), 4).len(), 2);
        assert!(monomial_basis(&generator_set(2).unwrap(), 3).is_empty());
    }

    #[test]
    fn reductions_reproduce_series() {
        for sym in [
            GeneratorSymbol::S { a: 1, k: 1 },
            GeneratorSymbol::S { a: 1, k: 2 },
            GeneratorSymbol::S { a: 2, k: 3 },
            GeneratorSymbol::R { k: 4 },
        ] {
            let p = reduce_to_s1(sym, 5).unwrap();
            assert_eq!(p.weight(), sym.weight());
            let want = sym.series(5, 60).unwrap();
            assert_eq!(p.evaluate(60).unwrap(), want, "{sym:?}");
        }
    }

    #[test]
    fn weight_one_is_itself() {
        let sym = GeneratorSymbol::S { a: 3, k: 1 };
        let p = reduce_to_s1(sym, 7).unwrap();
        assert_eq!(p, GeneratorPoly::symbol(7, sym));
    }

    #[test]
    fn quasimodular_input_is_rejected() {
        // r̂^(2) is not modular
        let f = super::super::series::r_series(2, 40).unwrap();
        assert_eq!(express_in_generators(&f, 2, 5), Err(GenError::NotInRing));
        let g = GeneratorSymbol::S { a: 1, k: 1 }.series(5, 2).unwrap();
        assert!(matches!(
            express_in_generators(&g, 1, 5),
            Err(GenError::InsufficientPrecision {
                available: 2,
                required: 3
            })
        ));
    }

    #[test]
    fn small_levels() {
        // E₄ at levels 1..4
        let e4 = super::super::series::r_series(4, 40).unwrap();
        for l in 1..=4 {
            let p = express_in_generators(&e4, 4, l).unwrap();
            assert_eq!(p.evaluate(40).unwrap(), e4.embed(l).unwrap(), "l={l}");
        }
    }
}
