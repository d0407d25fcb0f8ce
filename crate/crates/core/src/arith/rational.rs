use crate::error::{HoloError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Parses `p`, `-p` or `p/q` with arbitrary size integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || HoloError::ParseError { line: 0, message: format!("not a rational number: {t:?}") };
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `p/q`, or `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Residue of a big integer modulo a word-sized prime.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().unwrap_or(0);
    if x.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// Image in F_p; `None` when the denominator vanishes mod p.
pub fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    let n = bigint_mod(r.numer(), p);
    Some(super::modular::mul_mod(n, super::modular::inv_mod(d, p), p))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

/// Pochhammer symbol `(a)_n`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Number of decimal digits of `|n|` (1 for zero).
pub fn decimal_digits(n: &BigInt) -> usize {
    if n.is_zero() {
        return 1;
    }
    n.abs().to_str_radix(10).len()
}

pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v).map_err(serde::de::Error::custom)
    }

    pub fn value_to_rational(v: &serde_json::Value) -> std::result::Result<Rational, String> {
        match v {
            serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_rational(&n.to_string()).map_err(|e| e.to_string())
            }
            other => Err(format!("expected a rational string, got {other}")),
        }
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(|x| serde_rational::value_to_rational(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format_rational(&ratio(6, 3)), "2");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(bigint_mod(&int(-1), 7), 6);
        assert_eq!(rational_mod(&ratio(1, 2), 7), Some(4));
        assert_eq!(rational_mod(&ratio(1, 7), 7), None);
    }
}
