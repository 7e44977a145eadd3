//! Directed-rounding fixed-point arithmetic over big integers.
//!
//! A [`FixedInterval`] with `bits = w` stands for the real interval
//! `[lo / 2^w, hi / 2^w]`. Every routine here rounds its lower bound down and
//! its upper bound up, so results are certified enclosures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{ceil_rat, floor_rat, Rat};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl FixedInterval {
    pub fn from_rat(x: &Rat, bits: u32) -> Self {
        let s = Rat::from_integer(BigInt::one() << bits);
        let scaled = x * s;
        FixedInterval {
            lo: floor_rat(&scaled),
            hi: ceil_rat(&scaled),
            bits,
        }
    }

    pub fn lo_rat(&self) -> Rat {
        Rat::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi_rat(&self) -> Rat {
        Rat::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn to_value(&self) -> Value {
        Value::enclosure(self.lo_rat(), self.hi_rat())
    }

    pub fn add(&self, other: &FixedInterval) -> FixedInterval {
        assert_eq!(self.bits, other.bits);
        FixedInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    /// Multiplies by a nonnegative integer.
    pub fn mul_int(&self, k: &BigInt) -> FixedInterval {
        debug_assert!(!k.is_negative());
        FixedInterval {
            lo: &self.lo * k,
            hi: &self.hi * k,
            bits: self.bits,
        }
    }
}

/// Integer `q`-th root rounded up.
pub fn ceil_root(v: &BigInt, q: u32) -> BigInt {
    let r = v.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) < *v {
        r + 1
    } else {
        r
    }
}

/// `floor(2^bits * m^(-alpha))` for an integer `m >= 1` and `alpha = p/q`.
///
/// Uses `floor(y^(1/q)) = floor(floor(y)^(1/q))` with
/// `y = 2^(bits*q) / m^p`, so the result is exact.
pub fn powerlaw_floor(m: &BigInt, alpha: &Rat, bits: u32) -> BigInt {
    debug_assert!(m.is_positive());
    let (p, q) = small_ratio(alpha);
    let num = BigInt::one() << (bits as u64 * q as u64);
    let den = num_traits::pow(m.clone(), p as usize);
    let y = num.div_floor(&den);
    y.nth_root(q)
}

/// Enclosure of `m^(-alpha)` at the given precision.
pub fn powerlaw_term(m: &BigInt, alpha: &Rat, bits: u32) -> FixedInterval {
    let lo = powerlaw_floor(m, alpha, bits);
    FixedInterval { hi: &lo + 1, lo, bits }
}

/// Sum of `atanh`-series terms `z^(2j+1)/(2j+1)` for a fixed-point `z`,
/// rounded in one direction. `z_fixed` is `z * 2^w`.
fn atanh_partial(z_fixed: &BigInt, w: u32, terms: u32, round_up: bool) -> BigInt {
    let div = |a: BigInt, b: &BigInt| -> BigInt {
        if round_up {
            -((-a).div_floor(b))
        } else {
            a.div_floor(b)
        }
    };
    let scale = BigInt::one() << w;
    let z2 = div(z_fixed * z_fixed, &scale);
    let mut power = z_fixed.clone();
    let mut sum = BigInt::zero();
    for j in 0..terms {
        sum += div(power.clone(), &BigInt::from(2 * j + 1));
        power = div(&power * &z2, &scale);
    }
    sum
}

/// Enclosure of `2 * atanh(z)` for rational `0 <= z <= 1/3`.
fn two_atanh(z: &Rat, w: u32) -> FixedInterval {
    let zi = FixedInterval::from_rat(z, w);
    // (1/3)^(2J+1) < 2^-w once (2J+1) log2(3) > w
    let terms = w / 3 + 2;
    let lo = atanh_partial(&zi.lo, w, terms, false);
    let mut hi = atanh_partial(&zi.hi, w, terms, true);
    // tail <= z^(2J+1) / ((2J+1)(1 - z^2)) <= (9/8) z^(2J+1) / (2J+1)
    let n = 2 * terms + 1;
    let tail = Rat::new(BigInt::from(9), BigInt::from(8 * n as u64))
        * num_traits::pow(z.clone(), n as usize)
        * Rat::from_integer(BigInt::one() << w);
    hi += ceil_rat(&tail);
    FixedInterval {
        lo: lo * 2,
        hi: hi * 2,
        bits: w,
    }
}

/// Enclosure of `ln 2` at `w` bits.
pub fn ln2(w: u32) -> FixedInterval {
    two_atanh(&Rat::new(BigInt::one(), BigInt::from(3)), w)
}

/// Enclosure of `ln x` for a rational `x > 0`.
pub fn ln(x: &Rat, w: u32) -> FixedInterval {
    assert!(x.is_positive(), "ln of a non-positive number");
    // choose e with 2^e <= x < 2^(e+1)
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two_pow = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(BigInt::one() << k as u64)
        } else {
            Rat::new(BigInt::one(), BigInt::one() << (-k) as u64)
        }
    };
    while two_pow(e) > *x {
        e -= 1;
    }
    while two_pow(e + 1) <= *x {
        e += 1;
    }
    let base = two_pow(e);
    // m = x / 2^e in [1, 2) so z = (m - 1)/(m + 1) in [0, 1/3)
    let z = (x - &base) / (x + &base);
    let lnm = two_atanh(&z, w);
    let l2 = ln2(w).mul_int(&BigInt::from(e.unsigned_abs()));
    if e >= 0 {
        lnm.add(&l2)
    } else {
        FixedInterval {
            lo: lnm.lo - l2.hi,
            hi: lnm.hi - l2.lo,
            bits: w,
        }
    }
}

/// Enclosure of `ln` applied to an enclosure with positive lower bound.
pub fn ln_interval(x: &FixedInterval) -> FixedInterval {
    let w = x.bits;
    let lo = ln(&x.lo_rat(), w).lo;
    let hi = ln(&x.hi_rat(), w).hi;
    FixedInterval { lo, hi, bits: w }
}

/// Enclosure of `x^beta` for a nonnegative enclosure and `beta = p/q` in (0, 1].
pub fn pow_interval(x: &FixedInterval, beta: &Rat) -> FixedInterval {
    let (p, q) = small_ratio(beta);
    assert!(p <= q && p > 0, "exponent must lie in (0, 1]");
    let w = x.bits as u64;
    let shift = w * (q - p) as u64;
    let lo_v = num_traits::pow(x.lo.clone().max(BigInt::zero()), p as usize) << shift;
    let hi_v = num_traits::pow(x.hi.clone(), p as usize) << shift;
    FixedInterval {
        lo: lo_v.nth_root(q),
        hi: ceil_root(&hi_v, q),
        bits: x.bits,
    }
}

/// Enclosure of `n^beta` for an integer `n >= 0` and `beta = p/q` in (0, 1].
pub fn int_pow(n: &BigInt, beta: &Rat, w: u32) -> FixedInterval {
    let (p, q) = small_ratio(beta);
    let v = num_traits::pow(n.clone(), p as usize) << (w as u64 * q as u64);
    FixedInterval {
        lo: v.nth_root(q),
        hi: ceil_root(&v, q),
        bits: w,
    }
}

fn small_ratio(r: &Rat) -> (u32, u32) {
    use num_traits::ToPrimitive;
    let p = r.numer().to_u32().expect("exponent numerator out of range");
    let q = r.denom().to_u32().expect("exponent denominator out of range");
    (p, q)
}
