use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Exact rational vector. Ordering is lexicographic on exact values.
pub type QVector = Vec<Rational>;

/// Integer vector, used for primitive rays, normals and lattice points.
pub type IVec = Vec<BigInt>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_rational_vec(v: &[BigInt]) -> QVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Multiply `v` by the least common multiple of its denominators.
pub fn scale_to_integers(v: &[Rational]) -> IVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Divide by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Only canonical forms are accepted.
    Strict,
    /// Any `p/q` with `q != 0` is accepted and reduced.
    Lenient,
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_rational(s: &str, mode: Strictness) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n).ok_or_else(bad)?, parse_int(d).ok_or_else(bad)?),
        None => (parse_int(s).ok_or_else(bad)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    let value = Rational::new(num, den);
    if mode == Strictness::Strict && format_rational(&value) != s {
        return Err(Error::Parse(format!(
            "non-canonical rational {s:?} (canonical form is {:?})",
            format_rational(&value)
        )));
    }
    Ok(value)
}

pub fn parse_vector<S: AsRef<str>>(items: &[S], mode: Strictness) -> Result<QVector> {
    items.iter().map(|s| parse_rational(s.as_ref(), mode)).collect()
}

pub fn dot_ints(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| y * x)
        .sum()
}

pub fn sign_normalized(v: IVec) -> IVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_formatting() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(1, -3)), "-1/3");
    }

    #[test]
    fn strict_parsing_rejects_non_canonical() {
        assert_eq!(parse_rational("3/2", Strictness::Strict).unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7", Strictness::Strict).unwrap(), from_int(-7));
        for s in ["2/4", "3/1", "-0", "+1", "1/-2", " 1", "1.5", "", "/3", "4/0", "0/1"] {
            assert!(parse_rational(s, Strictness::Strict).is_err(), "{s}");
        }
    }

    #[test]
    fn lenient_parsing_normalizes() {
        assert_eq!(parse_rational("2/4", Strictness::Lenient).unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3/1", Strictness::Lenient).unwrap(), from_int(3));
        assert_eq!(parse_rational("-0", Strictness::Lenient).unwrap(), from_int(0));
        assert!(parse_rational("4/0", Strictness::Lenient).is_err());
        assert!(parse_rational("x", Strictness::Lenient).is_err());
    }

    #[test]
    fn primitive_and_scaling() {
        let v = scale_to_integers(&[rat(1, 2), rat(-1, 3), from_int(2)]);
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(12)]);
        let p = primitive(&[BigInt::from(4), BigInt::from(-6), BigInt::from(0)]);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
