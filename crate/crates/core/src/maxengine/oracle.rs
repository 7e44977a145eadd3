//! Brute-force reference engines over dense signals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{search_bound_centered, CenteredResult, UncenteredResult};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rat};
use crate::signal::{Caps, DenseSignal, Signal};
use crate::value::Value;

/// The signal rescaled to integers, with `f(lo + i) = ints[i] / den`.
struct Integerized {
    lo: BigInt,
    ints: Vec<BigInt>,
    den: BigInt,
}

impl Integerized {
    fn new(signal: &DenseSignal) -> Self {
        let den = common_denominator(signal.values());
        let ints = signal.values().iter().map(|v| v.numer() * (&den / v.denom())).collect();
        Integerized {
            lo: signal.lo().clone(),
            ints,
            den,
        }
    }

    fn at(&self, n: &BigInt) -> BigInt {
        let off = n - &self.lo;
        match off.to_usize() {
            Some(i) if i < self.ints.len() && off >= BigInt::zero() => self.ints[i].clone(),
            _ => BigInt::zero(),
        }
    }
}

/// Scans every radius `0..=R` and keeps the first maximizer.
pub fn oracle_centered(signal: &DenseSignal, n: &BigInt) -> Result<CenteredResult> {
    let r_max = search_bound_centered(signal, n)?;
    let r_max = r_max
        .to_u64()
        .filter(|&r| r <= dense_cap())
        .ok_or_else(|| Error::MaterializationTooLarge {
            width: r_max.to_string(),
            cap: dense_cap(),
        })?;
    let f = Integerized::new(signal);
    let mut sum = f.at(n);
    let (mut best_sum, mut best_len, mut best_r) = (sum.clone(), BigInt::from(1), 0u64);
    for r in 1..=r_max {
        sum += f.at(&(n - r));
        sum += f.at(&(n + r));
        let len = BigInt::from(2 * r + 1);
        // strictly greater only: the first maximizer wins
        if &sum * &best_len > &best_sum * &len {
            best_sum = sum.clone();
            best_len = len;
            best_r = r;
        }
    }
    Ok(CenteredResult {
        n: n.clone(),
        max_value: Value::Exact(Rat::new(best_sum, best_len * &f.den)),
        r_n: BigInt::from(best_r),
        certified: true,
        tie_gap: None,
    })
}

/// Scans every window `[n - rho, n + s]` with endpoints inside
/// `[min(n, lo - 1), max(n, hi + 1)]` and keeps the maximizer of least
/// diameter.
pub fn oracle_uncentered(signal: &DenseSignal, n: &BigInt) -> Result<UncenteredResult> {
    let (lo, hi) = signal.support_bounds().ok_or(Error::ZeroSignal)?;
    let left: BigInt = (n - &lo + 1u32).max(BigInt::zero());
    let right: BigInt = (&hi + 1u32 - n).max(BigInt::zero());
    let cap = dense_cap();
    let (Some(left), Some(right)) = (
        left.to_u64().filter(|&v| v <= cap),
        right.to_u64().filter(|&v| v <= cap),
    ) else {
        return Err(Error::MaterializationTooLarge {
            width: (left + right).to_string(),
            cap,
        });
    };
    let f = Integerized::new(signal);
    // window sums from running prefix over [n - left, n + right]
    let base = n - left;
    let total = (left + right + 1) as usize;
    let mut prefix = Vec::with_capacity(total + 1);
    prefix.push(BigInt::zero());
    for i in 0..total {
        let next = &prefix[i] + f.at(&(&base + i));
        prefix.push(next);
    }
    let centre = left as usize;
    let mut best: Option<(BigInt, BigInt, u64)> = None;
    for rho in 0..=left as usize {
        for s in 0..=right as usize {
            let sum = &prefix[centre + s + 1] - &prefix[centre - rho];
            let len = BigInt::from(rho + s + 1);
            let diam = (rho + s) as u64;
            let better = match &best {
                None => true,
                Some((bs, bl, bd)) => {
                    let lhs = &sum * bl;
                    let rhs = bs * &len;
                    lhs > rhs || (lhs == rhs && diam < *bd)
                }
            };
            if better {
                best = Some((sum, len, diam));
            }
        }
    }
    let (sum, len, diam) = best.expect("at least the trivial window");
    Ok(UncenteredResult {
        n: n.clone(),
        max_value: Value::Exact(Rat::new(sum, len * &f.den)),
        min_diameter: BigInt::from(diam),
        certified: true,
        tie_gap: None,
    })
}

fn dense_cap() -> u64 {
    Caps::default().dense_width_cap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn dirac_examples() {
        let d = DenseSignal::dirac();
        let c = oracle_centered(&d, &int(4)).unwrap();
        assert_eq!(c.max_value, Value::Exact(rat(1, 9)));
        assert_eq!(c.r_n, int(4));
        let u = oracle_uncentered(&d, &int(5)).unwrap();
        assert_eq!(u.max_value, Value::Exact(rat(1, 6)));
        assert_eq!(u.min_diameter, int(5));
        assert_eq!(u.r_tilde(), rat(5, 2));
    }

    #[test]
    fn flat_examples() {
        let two = DenseSignal::new(int(0), vec![rat(1, 1), rat(1, 1)]).unwrap();
        let c = oracle_centered(&two, &int(0)).unwrap();
        assert_eq!((c.max_value, c.r_n), (Value::Exact(rat(1, 1)), int(0)));
        let ten = DenseSignal::new(int(0), vec![rat(1, 1); 10]).unwrap();
        let u = oracle_uncentered(&ten, &int(3)).unwrap();
        assert_eq!((u.max_value, u.min_diameter), (Value::Exact(rat(1, 1)), int(0)));
    }

    #[test]
    fn zero_signal_rejected() {
        assert!(matches!(
            oracle_centered(&DenseSignal::zero(), &int(0)),
            Err(Error::ZeroSignal)
        ));
        assert!(matches!(
            oracle_uncentered(&DenseSignal::zero(), &int(0)),
            Err(Error::ZeroSignal)
        ));
    }
}
