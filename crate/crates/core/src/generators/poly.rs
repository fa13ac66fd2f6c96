//! Generator symbols and homogeneous polynomials in them.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::series::{r_series, s_series};
use super::GenError;
use crate::arith::json::{cyc_from_json, cyc_to_json};
use crate::arith::{CycElem, QSeries};

/// s_{a/l}^(k) (residue taken mod the ambient level) or r̂^(k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorSymbol {
    S { a: u32, k: u32 },
    R { k: u32 },
}

impl GeneratorSymbol {
    /// s_{a/l}^(k) with a normalized to 1..l−1.
    pub fn s(a: i64, l: u32, k: u32) -> Result<GeneratorSymbol, GenError> {
        let r = a.rem_euclid(l as i64) as u32;
        if r == 0 {
            return Err(GenError::BadResidue { a, l });
        }
        if k == 0 {
            return Err(GenError::ZeroOrder);
        }
        Ok(GeneratorSymbol::S { a: r, k })
    }

    pub fn r(k: u32) -> Result<GeneratorSymbol, GenError> {
        if k % 2 == 1 || k == 0 {
            return Err(GenError::OddOrder { k });
        }
        Ok(GeneratorSymbol::R { k })
    }

    pub fn weight(&self) -> u32 {
        match *self {
            GeneratorSymbol::S { k, .. } | GeneratorSymbol::R { k } => k,
        }
    }

    /// The q-expansion at level l.
    pub fn series(&self, l: u32, prec: i64) -> Result<QSeries, GenError> {
        match *self {
            GeneratorSymbol::S { a, k } => s_series(a as i64, l, k, prec),
            GeneratorSymbol::R { k } => Ok(r_series(k, prec)?.embed(l)?),
        }
    }

    fn to_json(self) -> Value {
        match self {
            GeneratorSymbol::S { a, k } => json!({"kind": "s", "a": a, "k": k}),
            GeneratorSymbol::R { k } => json!({"kind": "r", "k": k}),
        }
    }

    fn from_json(v: &Value, l: u32) -> Result<GeneratorSymbol, GenError> {
        let int = |key: &str| {
            v.get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| GenError::Parse(format!("symbol needs integer {key:?}")))
        };
        let k = u32::try_from(int("k")?).map_err(|_| GenError::Parse("bad order".into()))?;
        match v.get("kind").and_then(Value::as_str) {
            Some("s") => GeneratorSymbol::s(int("a")?, l, k),
            Some("r") => GeneratorSymbol::r(k),
            _ => Err(GenError::Parse(format!("unknown symbol {v}"))),
        }
    }

    pub fn render(&self, l: u32) -> String {
        match *self {
            GeneratorSymbol::S { a, k } => format!("s_{{{a}/{l}}}^({k})"),
            GeneratorSymbol::R { k } => format!("r^({k})"),
        }
    }
}

/// A product of symbols with multiplicities, sorted by symbol.
pub type Monomial = Vec<(GeneratorSymbol, u32)>;

fn monomial_weight(m: &Monomial) -> u32 {
    m.iter().map(|(s, e)| s.weight() * e).sum()
}

fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut map: BTreeMap<GeneratorSymbol, u32> = a.iter().copied().collect();
    for &(s, e) in b {
        *map.entry(s).or_insert(0) += e;
    }
    map.into_iter().collect()
}

/// A weight-homogeneous polynomial in generator symbols over Q(ζ_l).
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorPoly {
    level: u32,
    weight: u32,
    terms: BTreeMap<Monomial, CycElem>,
}

impl GeneratorPoly {
    pub fn zero(level: u32, weight: u32) -> GeneratorPoly {
        GeneratorPoly {
            level,
            weight,
            terms: BTreeMap::new(),
        }
    }

    /// The constant c (weight 0).
    pub fn constant(c: CycElem) -> GeneratorPoly {
        let mut p = GeneratorPoly::zero(c.level(), 0);
        p.add_term(vec![], c);
        p
    }

    pub fn symbol(level: u32, sym: GeneratorSymbol) -> GeneratorPoly {
        let mut p = GeneratorPoly::zero(level, sym.weight());
        p.add_term(vec![(sym, 1)], CycElem::one(level));
        p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycElem)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> CycElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycElem::zero(self.level))
    }

    /// Add c·m. Panics if m has the wrong weight.
    pub fn add_term(&mut self, m: Monomial, c: CycElem) {
        assert_eq!(
            monomial_weight(&m),
            self.weight,
            "monomial weight differs from polynomial weight"
        );
        assert_eq!(c.level(), self.level);
        let m = monomial_mul(&m, &vec![]);
        let entry = self
            .terms
            .entry(m.clone())
            .or_insert_with(|| CycElem::zero(self.level));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &GeneratorPoly) -> GeneratorPoly {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        if self.is_zero() && self.weight != other.weight {
            out.weight = other.weight;
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycElem) -> GeneratorPoly {
        let mut out = GeneratorPoly::zero(self.level, self.weight);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &GeneratorPoly) -> GeneratorPoly {
        assert_eq!(self.level, other.level);
        let mut out = GeneratorPoly::zero(self.level, self.weight + other.weight);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(monomial_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Every monomial has the polynomial's weight (true by construction).
    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().all(|m| monomial_weight(m) == self.weight)
    }

    /// Apply `f` to every S-residue; R-symbols are kept.
    pub fn relabel<F: Fn(u32) -> u32>(&self, f: F) -> GeneratorPoly {
        let mut out = GeneratorPoly::zero(self.level, self.weight);
        for (m, c) in &self.terms {
            let mm: Monomial = m
                .iter()
                .map(|&(s, e)| match s {
                    GeneratorSymbol::S { a, k } => (GeneratorSymbol::S { a: f(a), k }, e),
                    r => (r, e),
                })
                .collect();
            out.add_term(mm, c.clone());
        }
        out
    }

    /// The q-expansion through q^prec.
    pub fn evaluate(&self, prec: i64) -> Result<QSeries, GenError> {
        let mut cache: BTreeMap<GeneratorSymbol, QSeries> = BTreeMap::new();
        let mut total = QSeries::zero(self.level, prec);
        for (m, c) in &self.terms {
            let mut term = QSeries::constant(c.clone(), prec);
            for &(s, e) in m {
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(s) {
                    e.insert(s.series(self.level, prec)?);
                }
                let f = &cache[&s];
                for _ in 0..e {
                    term = term.mul(f);
                }
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// JSON monomial table.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<Value> = m
                    .iter()
                    .map(|(s, e)| {
                        let mut v = s.to_json();
                        v["exp"] = json!(e);
                        v
                    })
                    .collect();
                json!({"monomial": factors, "coeff": cyc_to_json(c)})
            })
            .collect();
        json!({"l": self.level, "weight": self.weight, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<GeneratorPoly, GenError> {
        let l = v
            .get("l")
            .and_then(Value::as_u64)
            .and_then(|x| u32::try_from(x).ok())
            .filter(|&x| x >= 1)
            .ok_or_else(|| GenError::Parse("polynomial needs a level \"l\"".into()))?;
        let w = v
            .get("weight")
            .and_then(Value::as_u64)
            .ok_or_else(|| GenError::Parse("polynomial needs a \"weight\"".into()))?
            as u32;
        let mut p = GeneratorPoly::zero(l, w);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| GenError::Parse("polynomial needs \"terms\"".into()))?;
        for t in terms {
            let mut m = Monomial::new();
            for f in t
                .get("monomial")
                .and_then(Value::as_array)
                .ok_or_else(|| GenError::Parse("term needs \"monomial\"".into()))?
            {
                let e = f.get("exp").and_then(Value::as_u64).unwrap_or(1) as u32;
                m.push((GeneratorSymbol::from_json(f, l)?, e));
            }
            let c = cyc_from_json(
                t.get("coeff")
                    .ok_or_else(|| GenError::Parse("term needs \"coeff\"".into()))?,
            )?
            .embed(l)?;
            if monomial_weight(&m) != w {
                return Err(GenError::WrongWeight {
                    expected: w,
                    got: monomial_weight(&m),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl fmt::Debug for GeneratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GeneratorPoly[l={}, w={}]({})",
            self.level, self.weight, self
        )
    }
}

impl fmt::Display for GeneratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let text = c.to_string();
            let body: Vec<String> = m
                .iter()
                .map(|(s, e)| {
                    if *e == 1 {
                        s.render(self.level)
                    } else {
                        format!("{}^{e}", s.render(self.level))
                    }
                })
                .collect();
            if body.is_empty() {
                write!(f, "{text}")?;
            } else if c.is_one() {
                write!(f, "{}", body.join("·"))?;
            } else if text == "−1" {
                write!(f, "−{}", body.join("·"))?;
            } else if text.contains(' ') {
                write!(f, "({text})·{}", body.join("·"))?;
            } else {
                write!(f, "{text}·{}", body.join("·"))?;
            }
        }
        Ok(())
    }
}

/// The integer k as a CycElem of level l.
#[cfg(test)]
pub(crate) fn int(l: u32, k: i64) -> CycElem {
    CycElem::from_int(l, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_normalize() {
        assert_eq!(
            GeneratorSymbol::s(-1, 5, 1).unwrap(),
            GeneratorSymbol::S { a: 4, k: 1 }
        );
        assert!(GeneratorSymbol::s(10, 5, 1).is_err());
        assert_eq!(GeneratorSymbol::r(3), Err(GenError::OddOrder { k: 3 }));
    }

    #[test]
    fn homogeneous_products() {
        let s1 = GeneratorPoly::symbol(5, GeneratorSymbol::s(1, 5, 1).unwrap());
        let s2 = GeneratorPoly::symbol(5, GeneratorSymbol::s(2, 5, 1).unwrap());
        let p = s1.mul(&s2).add(&s1.mul(&s1).scale(&int(5, 3)));
        assert_eq!(p.weight(), 2);
        assert!(p.is_homogeneous());
        assert_eq!(p.terms().count(), 2);
        let back = GeneratorPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    #[should_panic(expected = "weight")]
    fn inhomogeneous_sum_panics() {
        let s1 = GeneratorPoly::symbol(5, GeneratorSymbol::s(1, 5, 1).unwrap());
        let _ = s1.add(&s1.mul(&s1));
    }

    #[test]
    fn display() {
        let s1 = GeneratorPoly::symbol(5, GeneratorSymbol::s(1, 5, 1).unwrap());
        assert_eq!(s1.scale(&int(5, -2)).to_string(), "−2·s_{1/5}^(1)");
    }
}
