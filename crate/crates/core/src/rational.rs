//! Exact rationals carried as `"a/b"` strings at the edges.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

/// Parses `"a/b"`, `"a"` or `"-a/b"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn format_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `⌈t · k⌉`.
pub fn ceil_mul(t: &Q, k: i64) -> i64 {
    let v = t * Q::from_integer(k);
    Integer::div_ceil(v.numer(), v.denom())
}

pub fn ceil(t: &Q) -> i64 {
    ceil_mul(t, 1)
}

/// Serde adapter storing a rational as its string form.
pub mod q_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Same adapter for `Option<Q>`.
pub mod opt_q_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_q(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_q(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("5/4").unwrap(), Q::new(5, 4));
        assert_eq!(parse_q("-2/4").unwrap(), Q::new(-1, 2));
        assert_eq!(parse_q("3").unwrap(), Q::from_integer(3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert_eq!(format_q(&Q::new(6, 4)), "3/2");
        assert_eq!(format_q(&Q::new(-4, 2)), "-2");
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_mul(&Q::new(1, 2), 4), 2);
        assert_eq!(ceil_mul(&Q::new(5, 6), 6), 5);
        assert_eq!(ceil_mul(&Q::new(1, 3), 4), 2);
        assert_eq!(ceil_mul(&Q::new(-1, 3), 4), -1);
        assert_eq!(ceil(&Q::new(5, 4)), 2);
    }
}
