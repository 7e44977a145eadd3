//! Exact values and certified enclosures with three-way comparison.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{format_rat, format_sci, Rat, Rounding};

/// Outcome of comparing two possibly-inexact quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp3 {
    Less,
    Equal,
    Greater,
    /// The enclosures overlap, so the order cannot be certified.
    Indeterminate,
}

/// A nonnegative real, either known exactly or enclosed in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(Rat),
    Enclosure { lo: Rat, hi: Rat },
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(Rat::zero())
    }

    /// Builds an enclosure, collapsing it to `Exact` when the bounds meet.
    pub fn enclosure(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        if lo == hi {
            Value::Exact(lo)
        } else {
            Value::Enclosure { lo, hi }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Enclosure { .. } => None,
        }
    }

    pub fn lo(&self) -> &Rat {
        match self {
            Value::Exact(q) => q,
            Value::Enclosure { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            Value::Exact(q) => q,
            Value::Enclosure { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn compare(&self, other: &Value) -> Cmp3 {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => match a.cmp(b) {
                std::cmp::Ordering::Less => Cmp3::Less,
                std::cmp::Ordering::Equal => Cmp3::Equal,
                std::cmp::Ordering::Greater => Cmp3::Greater,
            },
            _ => {
                if self.hi() < other.lo() {
                    Cmp3::Less
                } else if self.lo() > other.hi() {
                    Cmp3::Greater
                } else {
                    Cmp3::Indeterminate
                }
            }
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::enclosure(self.lo() + other.lo(), self.hi() + other.hi()),
        }
    }

    /// Multiplies by a nonnegative rational.
    pub fn scale(&self, c: &Rat) -> Value {
        debug_assert!(!c.is_negative());
        match self {
            Value::Exact(a) => Value::Exact(a * c),
            Value::Enclosure { lo, hi } => Value::enclosure(lo * c, hi * c),
        }
    }

    /// Divides by a positive integer.
    pub fn div_int(&self, d: &BigInt) -> Value {
        let d = Rat::from_integer(d.clone());
        match self {
            Value::Exact(a) => Value::Exact(a / &d),
            Value::Enclosure { lo, hi } => Value::enclosure(lo / &d, hi / &d),
        }
    }

    /// Wire rendering: `"p/q"` when exact, `"lo..hi"` (directed decimal) otherwise.
    pub fn render(&self) -> String {
        match self {
            Value::Exact(q) => format_rat(q),
            Value::Enclosure { lo, hi } => format!(
                "{}..{}",
                format_sci(lo, 15, Rounding::Down),
                format_sci(hi, 15, Rounding::Up)
            ),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Rat> for Value {
    fn from(q: Rat) -> Self {
        Value::Exact(q)
    }
}

/// A quotient `sum / len` whose numerator is an integer interval over a shared
/// implicit scale. Comparing two of them needs only integer cross products.
#[derive(Clone, Debug)]
pub(crate) struct ScaledRatio {
    pub lo: BigInt,
    pub hi: BigInt,
    pub len: BigInt,
}

impl ScaledRatio {
    pub fn compare(&self, other: &ScaledRatio) -> Cmp3 {
        let a_lo = &self.lo * &other.len;
        let b_hi = &other.hi * &self.len;
        if a_lo > b_hi {
            return Cmp3::Greater;
        }
        let a_hi = &self.hi * &other.len;
        let b_lo = &other.lo * &self.len;
        if a_hi < b_lo {
            return Cmp3::Less;
        }
        if self.lo == self.hi && other.lo == other.hi && a_lo == b_lo {
            Cmp3::Equal
        } else {
            Cmp3::Indeterminate
        }
    }

    /// Width of the overlap region when the two enclosures are not separated.
    pub fn overlap_width(&self, other: &ScaledRatio, scale: &BigInt) -> Rat {
        let w1 = Rat::new(&self.hi - &self.lo, &self.len * scale);
        let w2 = Rat::new(&other.hi - &other.lo, &other.len * scale);
        w1 + w2
    }

    pub fn to_value(&self, scale: &BigInt) -> Value {
        let den = &self.len * scale;
        Value::enclosure(Rat::new(self.lo.clone(), den.clone()), Rat::new(self.hi.clone(), den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn three_way_comparison() {
        let a = Value::Exact(rat(1, 2));
        let b = Value::enclosure(rat(1, 3), rat(2, 5));
        let c = Value::enclosure(rat(3, 8), rat(3, 5));
        assert_eq!(a.compare(&b), Cmp3::Greater);
        assert_eq!(b.compare(&a), Cmp3::Less);
        assert_eq!(a.compare(&c), Cmp3::Indeterminate);
        assert_eq!(a.compare(&Value::Exact(rat(2, 4))), Cmp3::Equal);
    }

    #[test]
    fn degenerate_enclosure_is_exact() {
        assert!(Value::enclosure(rat(1, 2), rat(1, 2)).is_exact());
    }

    #[test]
    fn render_forms() {
        assert_eq!(Value::Exact(rat(3, 9)).render(), "1/3");
        let e = Value::enclosure(rat(1, 3), rat(1, 2));
        assert_eq!(e.render(), "3.33333333333333e-1..5e-1");
    }

    #[test]
    fn scaled_ratio_cross_products() {
        let a = ScaledRatio {
            lo: 2.into(),
            hi: 2.into(),
            len: 4.into(),
        };
        let b = ScaledRatio {
            lo: 1.into(),
            hi: 1.into(),
            len: 2.into(),
        };
        assert_eq!(a.compare(&b), Cmp3::Equal);
        let c = ScaledRatio {
            lo: 1.into(),
            hi: 3.into(),
            len: 4.into(),
        };
        assert_eq!(a.compare(&c), Cmp3::Indeterminate);
        let d = ScaledRatio {
            lo: 3.into(),
            hi: 4.into(),
            len: 4.into(),
        };
        assert_eq!(a.compare(&d), Cmp3::Less);
    }
}
