//! Big-integer and rational helpers shared by every module.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// Parses a decimal big integer, allowing a leading sign.
pub fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    t.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
}

/// Parses `"p/q"` or `"p"`. The denominator must be positive.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if !q.is_positive() {
                return Err(Error::Parse(format!("non-positive denominator in {t:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(parse_int(t)?)),
    }
}

/// Canonical `"p/q"` rendering; integers render without a denominator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_rat(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil_rat(r: &Rat) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn abs_int(v: &BigInt) -> BigInt {
    v.abs()
}

pub fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// Renders a rational in scientific notation with `sig` significant digits,
/// rounded in the requested direction. Used for enclosure endpoints.
pub fn format_sci(r: &Rat, sig: u32, rounding: Rounding) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    if r.is_negative() {
        let flipped = match rounding {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        };
        return format!("-{}", format_sci(&-r, sig, flipped));
    }
    // estimate e = floor(log10 r) from bit lengths, then correct
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > *r {
        e -= 1;
    }
    while pow10(e + 1) <= *r {
        e += 1;
    }
    let scaled = r * pow10(sig as i64 - 1 - e);
    let mut mant = match rounding {
        Rounding::Down => floor_rat(&scaled),
        Rounding::Up => ceil_rat(&scaled),
    };
    let limit = num_traits::pow(ten.clone(), sig as usize);
    if mant >= limit {
        mant /= &ten;
        e += 1;
    }
    let digits = mant.to_str_radix(10);
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_nonnegative(r: &Rat) -> bool {
    r.numer().sign() != Sign::Minus
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
