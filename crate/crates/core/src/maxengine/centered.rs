//! Event-driven centered engine over block signals.
//!
//! Let `d(r) = f(n - r) + f(n + r)` be the mass added when the radius grows
//! from `r - 1` to `r`. Then `A_r` is a weighted mean of `A_{r-1}` and
//! `d(r) / 2`, so on a stretch of radii where both window endpoints stay
//! inside one piece each:
//!
//! * `d` constant or nondecreasing: `A` has no interior maximum,
//! * `d` nonincreasing: `A` rises then falls, and the first descent is found
//!   by bisection.
//!
//! Every stretch of length two or more lies strictly between candidate radii
//! `|n - b| - 1, |n - b|, |n - b| + 1` taken over all block boundaries `b`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{search_bound_centered, Best, CenteredResult};
use crate::error::{Error, Result};
use crate::signal::{BlockSignal, Piece};
use crate::value::{Cmp3, ScaledRatio};

pub(super) fn ratio_at(signal: &BlockSignal, n: &BigInt, r: &BigInt) -> Result<ScaledRatio> {
    let s = signal.scaled_sum(&(n - r), &(n + r))?;
    Ok(ScaledRatio {
        lo: s.lo,
        hi: s.hi,
        len: r * 2 + 1,
    })
}

/// How the added mass behaves along a stretch.
#[derive(Debug, PartialEq, Eq)]
pub(super) enum Trend {
    /// Constant or nondecreasing: maxima sit at stretch ends.
    Endpoints,
    /// Nonincreasing: single interior peak possible.
    Peak,
    /// Neither can be certified; scan every radius.
    Scan,
}

pub(super) fn trend(left: &Piece<'_>, right: &Piece<'_>) -> Trend {
    match (left, right) {
        (Piece::Flat, Piece::Flat) | (Piece::PowerLaw(_), Piece::Flat) => Trend::Endpoints,
        (Piece::Flat, Piece::PowerLaw(_)) => Trend::Peak,
        // with equal exponents the nearer-to-origin endpoint gains faster than
        // the farther one loses, by convexity of t^-alpha
        (Piece::PowerLaw(a), Piece::PowerLaw(b)) if a == b => Trend::Endpoints,
        (Piece::PowerLaw(_), Piece::PowerLaw(_)) => Trend::Scan,
    }
}

/// Smallest `r` in `[lo, hi]` with `value(r + 1) <= value(r)`, or `hi`.
///
/// The predicate must be monotone (false then true) on the range. Returns the
/// index and whether every comparison was decisive.
pub(super) fn first_descent<F>(lo: &BigInt, hi: &BigInt, mut value: F) -> Result<(BigInt, bool)>
where
    F: FnMut(&BigInt) -> Result<ScaledRatio>,
{
    let mut certified = true;
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while a < b {
        let mid: BigInt = (&a + &b) >> 1;
        let here = value(&mid)?;
        let next = value(&(&mid + 1))?;
        let descends = match next.compare(&here) {
            Cmp3::Greater => false,
            Cmp3::Less | Cmp3::Equal => true,
            Cmp3::Indeterminate => {
                certified = false;
                true
            }
        };
        if descends {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    Ok((a, certified))
}

pub(super) fn scan_limit(signal: &BlockSignal, len: &BigInt) -> Result<u64> {
    len.to_u64()
        .filter(|&l| l <= signal.caps().summation_cap)
        .ok_or_else(|| Error::PowerLawRangeTooLarge {
            len: len.to_string(),
            cap: signal.caps().summation_cap,
        })
}

/// Exact `Mf(n)` and `r_n` for a block signal.
pub fn event_centered(signal: &BlockSignal, n: &BigInt) -> Result<CenteredResult> {
    let r_max = search_bound_centered(signal, n)?;
    let zero = BigInt::from(0);
    let mut cands: BTreeSet<BigInt> = BTreeSet::new();
    cands.insert(zero.clone());
    cands.insert(r_max.clone());
    for b in signal.blocks() {
        for edge in [&b.start, &b.end] {
            let base = (n - edge).abs();
            for d in -1i32..=1 {
                let r = &base + d;
                if !r.is_negative() && r <= r_max {
                    cands.insert(r);
                }
            }
        }
    }

    let mut extra = Vec::new();
    let mut certified = true;
    let sorted: Vec<&BigInt> = cands.iter().collect();
    for w in sorted.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        if r1 - r0 < BigInt::from(2) {
            continue;
        }
        let left = signal.piece_at(&(n - r1));
        let right = signal.piece_at(&(n + r1));
        match trend(&left, &right) {
            Trend::Endpoints => {}
            Trend::Peak => {
                let (r, ok) = first_descent(r0, r1, |r| ratio_at(signal, n, r))?;
                certified &= ok;
                extra.push(r);
            }
            Trend::Scan => {
                let steps = scan_limit(signal, &(r1 - r0))?;
                for k in 1..steps {
                    extra.push(r0 + k);
                }
            }
        }
    }
    cands.extend(extra);

    let scale = signal.scale().clone();
    let mut iter = cands.into_iter();
    let first = iter.next().expect("radius 0 is always a candidate");
    let mut best = Best::new(first.clone(), ratio_at(signal, n, &first)?);
    for r in iter {
        let ratio = ratio_at(signal, n, &r)?;
        best.offer(r, ratio, &scale);
    }
    Ok(CenteredResult {
        n: n.clone(),
        max_value: best.ratio.to_value(&scale),
        r_n: best.key,
        certified: certified && best.certified,
        tie_gap: best.tie_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxengine::oracle_centered;
    use crate::rational::{int, rat};
    use crate::signal::{Block, DenseSignal};
    use crate::value::Value;

    #[test]
    fn dirac_matches_definition() {
        let d = DenseSignal::dirac().to_blocks();
        for n in -20..=20i64 {
            let c = event_centered(&d, &int(n)).unwrap();
            assert_eq!(c.r_n, int(n.abs()));
            assert_eq!(c.max_value, Value::Exact(rat(1, 2 * n.abs() + 1)));
            assert!(c.certified);
        }
    }

    #[test]
    fn matches_oracle_on_small_patterns() {
        let patterns: &[&[i64]] = &[
            &[1, 0, 0, 3],
            &[2, 2, 0, 1, 1, 1],
            &[1, 0, 1, 0, 1],
            &[5, 0, 0, 0, 0, 0, 0, 4],
        ];
        for p in patterns {
            let d = DenseSignal::new(int(-2), p.iter().map(|&v| rat(v, 1)).collect()).unwrap();
            let b = d.to_blocks();
            for n in -12..=14 {
                let o = oracle_centered(&d, &int(n)).unwrap();
                let e = event_centered(&b, &int(n)).unwrap();
                assert_eq!((o.max_value, o.r_n), (e.max_value, e.r_n), "pattern {p:?} n={n}");
            }
        }
    }

    #[test]
    fn power_law_peak_is_found() {
        // n sits left of a long power-law block: the average peaks inside it
        let b = BlockSignal::new(vec![Block::power_law(int(10), int(400), rat(1, 2))]).unwrap();
        let n = int(5);
        let e = event_centered(&b, &n).unwrap();
        // float brute force over all radii
        let f = |m: i64| {
            if (10..=400).contains(&m) {
                (m as f64).powf(-0.5)
            } else {
                0.0
            }
        };
        let mut best = (0.0f64, 0i64);
        let mut sum = f(5);
        for r in 0..=400i64 {
            if r > 0 {
                sum += f(5 - r) + f(5 + r);
            }
            let a = sum / (2 * r + 1) as f64;
            if a > best.0 * (1.0 + 1e-12) {
                best = (a, r);
            }
        }
        assert_eq!(e.r_n, int(best.1));
        assert!(e.certified);
    }

    #[test]
    fn zero_signal_rejected() {
        assert!(matches!(
            event_centered(&BlockSignal::zero(), &int(3)),
            Err(Error::ZeroSignal)
        ));
    }
}
