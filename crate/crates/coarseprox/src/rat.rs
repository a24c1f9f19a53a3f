//! Exact rationals and the small amount of number theory the set algebras need.

use num::integer::Integer;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number used for every coordinate on the half-line carrier.
pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn gcd_u(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a.lcm(&b)
}

/// Denominator of `x` as an unsigned lattice scale.
pub fn den(x: &Rat) -> u64 {
    *x.denom() as u64
}

/// `x * n` as an integer, when it is one.
pub fn scaled(x: &Rat, n: u64) -> Option<i64> {
    let v = *x * int(n as i64);
    if v.is_integer() {
        Some(v.to_integer())
    } else {
        None
    }
}

/// Smallest integer `>= x`.
pub fn ceil_i(x: &Rat) -> i64 {
    x.ceil().to_integer()
}

/// Smallest integer `> x`.
pub fn above_i(x: &Rat) -> i64 {
    x.floor().to_integer() + 1
}

/// Positive rational gcd: the generator of `a·ℤ + b·ℤ`.
pub fn gcd_q(a: &Rat, b: &Rat) -> Rat {
    let m = lcm_u(den(a), den(b)) as i64;
    let an = (*a * int(m)).to_integer().abs();
    let bn = (*b * int(m)).to_integer().abs();
    Rat::new(an.gcd(&bn), m)
}

/// `x mod m` for positive rational `m`, landing in `[0, m)`.
pub fn rem_q(x: &Rat, m: &Rat) -> Rat {
    let q = (*x / *m).floor();
    *x - q * *m
}

/// Renders as `"p/q"`; the denominator is always written.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"`, `"p"`, or a decimal-free signed integer.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => s.parse::<i64>().map(int).map_err(|_| bad()),
    }
}

pub fn is_nonneg(x: &Rat) -> bool {
    !x.is_negative()
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_rat(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(fmt_rat(&int(3)), "3/1");
        assert_eq!(fmt_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rat("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rat(" 5 ").unwrap(), int(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rational_gcd_generates_sum_lattice() {
        assert_eq!(gcd_q(&int(2), &int(3)), int(1));
        assert_eq!(gcd_q(&rat(1, 2), &int(1)), rat(1, 2));
        assert_eq!(gcd_q(&rat(2, 3), &rat(1, 2)), rat(1, 6));
        assert_eq!(rem_q(&rat(-1, 3), &int(1)), rat(2, 3));
    }
}
