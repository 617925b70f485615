//! Term-list serialization: a value is `[[num, den, power], ...]`, meaning
//! `Σ (num/den)·ζ_m^power`. Integers outside the i64 range are written as
//! decimal strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cyclotomic, CyclotomicError, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub num: BigInt,
    pub den: BigInt,
    pub power: u32,
}

impl Cyclotomic {
    /// Canonical terms sorted by power, zero coefficients omitted.
    pub fn to_terms(&self) -> Vec<Term> {
        self.coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(power, c)| Term {
                num: c.numer().clone(),
                den: c.denom().clone(),
                power: power as u32,
            })
            .collect()
    }

    pub fn try_from_terms(order: u32, terms: &[Term]) -> Result<Self, CyclotomicError> {
        if order == 0 {
            return Err(CyclotomicError::ZeroOrder);
        }
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            if t.den.is_zero() {
                return Err(CyclotomicError::InvalidTerm(format!(
                    "zero denominator in term [{}, {}, {}]",
                    t.num, t.den, t.power
                )));
            }
            parsed.push((Rational::new(t.num.clone(), t.den.clone()), t.power));
        }
        Ok(Cyclotomic::from_terms(order, parsed))
    }
}

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn int_from_json<E: de::Error>(v: &serde_json::Value) -> Result<BigInt, E> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| E::custom(format!("expected an integer, found {n}"))),
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| E::custom(format!("invalid integer string {s:?}"))),
        other => Err(E::custom(format!("expected an integer, found {other}"))),
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        tup.serialize_element(&int_to_json(&self.num))?;
        tup.serialize_element(&int_to_json(&self.den))?;
        tup.serialize_element(&self.power)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermVisitor;

        impl<'de> Visitor<'de> for TermVisitor {
            type Value = Term;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a term [numerator, denominator, power]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Term, A::Error> {
                let num: serde_json::Value = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let den: serde_json::Value = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let power: u32 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(2, &self))?;
                if seq.next_element::<serde_json::Value>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                Ok(Term {
                    num: int_from_json(&num)?,
                    den: int_from_json(&den)?,
                    power,
                })
            }
        }

        deserializer.deserialize_seq(TermVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_are_canonical_and_sorted() {
        // ζ12^4 + ζ12^0 reduces to powers {0,2} in the basis mod Φ12.
        let x = Cyclotomic::from_terms(12, [(Rational::from_integer(1.into()), 4)]);
        let json = serde_json::to_string(&x.to_terms()).unwrap();
        assert_eq!(json, "[[-1,1,0],[1,1,2]]");
        let back: Vec<Term> = serde_json::from_str(&json).unwrap();
        assert_eq!(Cyclotomic::try_from_terms(12, &back).unwrap(), x);
    }

    #[test]
    fn big_integers_use_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let t = Term {
            num: big.clone(),
            den: BigInt::from(7),
            power: 1,
        };
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[\"123456789012345678901234567890\",7,1]");
        let back: Term = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_malformed_terms() {
        assert!(serde_json::from_str::<Term>("[1,2]").is_err());
        assert!(serde_json::from_str::<Term>("[1,2,3,4]").is_err());
        assert!(serde_json::from_str::<Term>("[1.5,2,3]").is_err());
        let zero_den = Term {
            num: 1.into(),
            den: 0.into(),
            power: 0,
        };
        assert!(Cyclotomic::try_from_terms(4, &[zero_den]).is_err());
    }
}
