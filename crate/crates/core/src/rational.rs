//! Exact rational helpers shared by every symbolic module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Q) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parse "3", "-2/3", "1.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let ip = ip.trim();
        let (neg, ip_digits) = match ip.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, ip.strip_prefix('+').unwrap_or(ip)),
        };
        let digits_only = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if fp.is_empty() || !digits_only(fp) || !digits_only(ip_digits) || fp.len() > 64 {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let ipart: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        let fpart: BigInt = fp.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Q::new(ipart * &scale + fpart, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Q::from_integer(n))
}

/// Parse a comma separated list of rationals ("0,1/2,1/2").
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty q list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_q_list(v: &[Q]) -> String {
    v.iter().map(fmt_q).collect::<Vec<_>>().join(",")
}

/// Rising factorial (a)_m.
pub fn pochhammer(a: &Q, m: usize) -> Q {
    let mut acc = Q::one();
    let mut x = a.clone();
    for _ in 0..m {
        acc *= &x;
        x += Q::one();
    }
    acc
}

/// Falling factorial [a]_k = a(a-1)...(a-k+1).
pub fn falling(a: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x -= Q::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

pub fn to_u64(x: &Q) -> Option<u64> {
    if is_nonneg_integer(x) {
        x.numer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), qi(3));
        assert_eq!(parse_rational("-2/3").unwrap(), q(-2, 3));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(parse_q_list("0, 1/2,1/2").unwrap(), vec![qi(0), q(1, 2), q(1, 2)]);
    }

    #[test]
    fn factorial_family() {
        assert_eq!(pochhammer(&qi(1), 4), qi(24));
        assert_eq!(falling(&qi(8), 4), qi(1680));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(fmt_q(&q(6, 4)), "3/2");
    }
}
