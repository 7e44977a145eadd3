//! Slowly growing functions `g` with certified evaluation at big integers.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fixed::{int_pow, ln, ln_interval, pow_interval, FixedInterval};
use crate::rational::{format_rat, parse_int, parse_rat, Rat};
use crate::value::Value;

/// Working precision for growth evaluations, in bits.
pub const GROWTH_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthSpec {
    /// `ln N`
    Log,
    /// `ln ln N`, held at its value at 3 below that point
    LogLog,
    /// `(ln N)^beta`, `beta` in (0, 1]
    LogPow(Rat),
    /// `N^beta`, `beta` in (0, 1)
    Power(Rat),
    /// Step function through `(N_i, g_i)`: `g(N) = g_i` for the last `N_i <= N`.
    Table(Vec<(BigInt, Rat)>),
}

impl GrowthSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::GrowthSpecInvalid(m.into()));
        match self {
            GrowthSpec::Log | GrowthSpec::LogLog => Ok(()),
            GrowthSpec::LogPow(b) => {
                if b.is_positive() && *b <= Rat::one() {
                    Ok(())
                } else {
                    bad("log_pow exponent must lie in (0, 1]")
                }
            }
            GrowthSpec::Power(b) => {
                if b.is_positive() && *b < Rat::one() {
                    Ok(())
                } else {
                    bad("power exponent must lie in (0, 1)")
                }
            }
            GrowthSpec::Table(rows) => {
                if rows.is_empty() || rows[0].0 > BigInt::from(2) {
                    return bad("table must start at or below N = 2");
                }
                if rows.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 > w[1].1) {
                    return bad("table keys must increase and values must not decrease");
                }
                if rows.iter().any(|r| !r.1.is_positive()) {
                    return bad("table values must be positive");
                }
                Ok(())
            }
        }
    }

    /// Enclosure of `g(N)` at `GROWTH_BITS` bits.
    pub fn eval_fixed(&self, n: &BigInt) -> Result<FixedInterval> {
        self.eval_bits(n, GROWTH_BITS)
    }

    /// Enclosure of `g(N)` at `w` bits.
    pub fn eval_bits(&self, n: &BigInt, w: u32) -> Result<FixedInterval> {
        self.validate()?;
        if *n < BigInt::from(2) {
            return Err(Error::GrowthSpecInvalid(format!("g is evaluated for N >= 2, got {n}")));
        }
        let nr = Rat::from_integer(n.clone());
        Ok(match self {
            GrowthSpec::Log => ln(&nr, w),
            GrowthSpec::LogLog => {
                let m = if *n < BigInt::from(3) {
                    Rat::from_integer(3.into())
                } else {
                    nr
                };
                ln_interval(&ln(&m, w))
            }
            GrowthSpec::LogPow(b) => pow_interval(&ln(&nr, w), b),
            GrowthSpec::Power(b) => int_pow(n, b, w),
            GrowthSpec::Table(rows) => {
                let i = rows.partition_point(|(k, _)| k <= n) - 1;
                FixedInterval::from_rat(&rows[i].1, w)
            }
        })
    }

    pub fn eval(&self, n: &BigInt) -> Result<Value> {
        Ok(self.eval_fixed(n)?.to_value())
    }

    /// Parses `log`, `loglog`, `logpow:<beta>`, `power:<beta>` or
    /// `table:<N>=<g>,<N>=<g>,...`. A space may replace the colon.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, arg) = match s.trim().split_once([':', ' ']) {
            Some((h, a)) => (h, Some(a.trim())),
            None => (s, None),
        };
        let spec = match (head, arg) {
            ("log", None) => GrowthSpec::Log,
            ("loglog", None) => GrowthSpec::LogLog,
            ("logpow", Some(b)) => GrowthSpec::LogPow(parse_rat(b)?),
            ("power", Some(b)) => GrowthSpec::Power(parse_rat(b)?),
            ("table", Some(rows)) => GrowthSpec::Table(
                rows.split(',')
                    .map(|kv| {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| Error::Parse(format!("table entry `{kv}` needs N=g")))?;
                        Ok((parse_int(k)?, parse_rat(v)?))
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Parse(format!("unknown growth function `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn label(&self) -> String {
        match self {
            GrowthSpec::Log => "log".into(),
            GrowthSpec::LogLog => "loglog".into(),
            GrowthSpec::LogPow(b) => format!("logpow:{}", format_rat(b)),
            GrowthSpec::Power(b) => format!("power:{}", format_rat(b)),
            GrowthSpec::Table(rows) => {
                let body: Vec<String> = rows.iter().map(|(k, v)| format!("{k}={}", format_rat(v))).collect();
                format!("table:{}", body.join(","))
            }
        }
    }
}
