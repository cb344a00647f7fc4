//! Exact rational scalars and their `"p/q"` string form used in JSON.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Renders a rational as `"p"` or `"p/q"` (always reduced, q > 0).
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    // Good enough for the magnitudes used here; exact arithmetic never
    // round-trips through this.
    let p = x.numer();
    let q = x.denom();
    let pf = bigint_to_f64(p);
    let qf = bigint_to_f64(q);
    pf / qf
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Serde adapter for `Vec<Vec<Rat>>` as nested `"p/q"` strings.
pub mod rat_rows_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Vec<String>> =
            rows.iter().map(|r| r.iter().map(rat_to_string).collect()).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| {
                        rat_from_str(&s)
                            .ok_or_else(|| de::Error::custom(format!("invalid rational: {s}")))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Serde adapter serializing `Rat` as its `"p/q"` string.
pub mod rat_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).ok_or_else(|| de::Error::custom(format!("invalid rational: {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for (p, q, s) in [(1, 2, "1/2"), (-3, 1, "-3"), (0, 5, "0"), (4, -6, "-2/3")] {
            let x = rat(p, q);
            assert_eq!(rat_to_string(&x), s);
            assert_eq!(rat_from_str(s).unwrap(), x);
        }
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("x").is_none());
    }
}
