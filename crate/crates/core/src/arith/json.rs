//! JSON forms of CycElem and QSeries.
//!
//! Integers that fit in i64 are written as JSON numbers, larger ones as
//! decimal strings; both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{ArithError, CycElem, QSeries, Rational};

pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt, ArithError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ArithError::Parse(format!("non-integer number {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| ArithError::Parse(format!("bad integer string {s:?}"))),
        other => Err(ArithError::Parse(format!("expected integer, got {other}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, ArithError> {
    v.get(key)
        .ok_or_else(|| ArithError::Parse(format!("missing field {key:?}")))
}

fn as_level(v: &Value) -> Result<u32, ArithError> {
    v.as_u64()
        .and_then(|l| u32::try_from(l).ok())
        .filter(|&l| l >= 1)
        .ok_or_else(|| ArithError::Parse(format!("bad level {v}")))
}

pub fn cyc_to_json(x: &CycElem) -> Value {
    let coeffs: Vec<Value> = x
        .coeffs()
        .iter()
        .map(|r| json!([bigint_to_json(r.numer()), bigint_to_json(r.denom())]))
        .collect();
    json!({ "L": x.level(), "coeffs": coeffs })
}

pub fn cyc_from_json(v: &Value) -> Result<CycElem, ArithError> {
    let level = as_level(field(v, "L")?)?;
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| ArithError::Parse("coeffs must be an array".into()))?;
    let phi = super::cyclotomic::euler_phi(level);
    if coeffs.len() != phi {
        return Err(ArithError::Parse(format!(
            "expected {phi} coefficients at level {level}, got {}",
            coeffs.len()
        )));
    }
    let mut poly = Vec::with_capacity(phi);
    for c in coeffs {
        let pair = c
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| ArithError::Parse(format!("expected [num, den], got {c}")))?;
        let num = bigint_from_json(&pair[0])?;
        let den = bigint_from_json(&pair[1])?;
        if den.is_zero() {
            return Err(ArithError::Parse("zero denominator".into()));
        }
        poly.push(Rational::new(num, den));
    }
    Ok(CycElem::from_poly(level, &poly))
}

pub fn series_to_json(f: &QSeries) -> Value {
    let coeffs: Vec<Value> = f.terms().map(|(_, c)| cyc_to_json(c)).collect();
    json!({
        "L": f.level(),
        "valuation": f.valuation(),
        "prec": f.prec(),
        "coeffs": coeffs,
    })
}

pub fn series_from_json(v: &Value) -> Result<QSeries, ArithError> {
    let level = as_level(field(v, "L")?)?;
    let int = |key: &str| {
        field(v, key)?
            .as_i64()
            .ok_or_else(|| ArithError::Parse(format!("{key} must be an integer")))
    };
    let valuation = int("valuation")?;
    let prec = int("prec")?;
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| ArithError::Parse("coeffs must be an array".into()))?
        .iter()
        .map(cyc_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = coeffs.iter().find(|c| c.level() != level) {
        return Err(ArithError::Parse(format!(
            "coefficient at level {} inside a level-{level} series",
            c.level()
        )));
    }
    Ok(QSeries::from_coeffs(level, valuation, coeffs, prec))
}

impl Serialize for CycElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        cyc_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CycElem, D::Error> {
        let v = Value::deserialize(d)?;
        cyc_from_json(&v).map_err(D::Error::custom)
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        series_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<QSeries, D::Error> {
        let v = Value::deserialize(d)?;
        series_from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyc_roundtrip_with_big_numbers() {
        let big = Rational::new(BigInt::from(3u8) << 100, BigInt::from(7));
        let x = &CycElem::from_rational(5, &big) + &CycElem::root_of_unity(5, 2);
        let text = serde_json::to_string(&x).unwrap();
        assert!(text.contains('"'));
        let back: CycElem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn zeta5_layout() {
        let v = cyc_to_json(&CycElem::root_of_unity(5, 1));
        assert_eq!(
            v,
            json!({"L": 5, "coeffs": [[0, 1], [1, 1], [0, 1], [0, 1]]})
        );
    }

    #[test]
    fn series_roundtrip() {
        let f = QSeries::from_coeffs(
            7,
            -1,
            vec![
                CycElem::root_of_unity(7, 3),
                CycElem::zero(7),
                CycElem::from_int(7, -2),
            ],
            4,
        );
        let back: QSeries = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let z = QSeries::zero(3, 9);
        let back: QSeries = serde_json::from_value(series_to_json(&z)).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn rejects_malformed() {
        assert!(cyc_from_json(&json!({"L": 5, "coeffs": [[1, 1]]})).is_err());
        assert!(cyc_from_json(&json!({"L": 0, "coeffs": []})).is_err());
        assert!(cyc_from_json(&json!({"L": 1, "coeffs": [[1, 0]]})).is_err());
    }
}
