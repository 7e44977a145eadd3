//! Event-driven uncentered engine over block signals.
//!
//! Windows are `[a, b]` with `a <= n <= b`. For a fixed `b`, moving `a` left
//! adds `f(a)`, which is constant on flat pieces and grows on power-law pieces,
//! so the best `a` sits at a piece boundary or at `n`. For a fixed `a`, moving
//! `b` right adds a value that is constant on flat pieces and shrinks on
//! power-law pieces, so the best `b` sits at a boundary, at `n`, or at the
//! single peak inside a power-law stretch.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::centered::first_descent;
use super::{Best, UncenteredResult};
use crate::error::{Error, Result};
use crate::signal::{BlockSignal, Piece, Signal};
use crate::value::ScaledRatio;

fn window(signal: &BlockSignal, a: &BigInt, b: &BigInt) -> Result<ScaledRatio> {
    let s = signal.scaled_sum(a, b)?;
    Ok(ScaledRatio {
        lo: s.lo,
        hi: s.hi,
        len: b - a + 1,
    })
}

/// Boundary-adjacent points clipped to `[lo, hi]`, plus `n`.
fn candidates(signal: &BlockSignal, n: &BigInt, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut set = BTreeSet::new();
    set.insert(n.clone());
    for block in signal.blocks() {
        for edge in [&block.start, &block.end] {
            for d in -1i32..=1 {
                let p = edge + d;
                if &p >= lo && &p <= hi {
                    set.insert(p);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Exact uncentered maximal value and minimal maximizing diameter.
pub fn event_uncentered(signal: &BlockSignal, n: &BigInt) -> Result<UncenteredResult> {
    let (lo, hi) = signal.support_bounds().ok_or(Error::ZeroSignal)?;
    let left_end = (&lo).min(n).clone();
    let right_end = (&hi).max(n).clone();
    let lefts = candidates(signal, n, &left_end, n);
    let rights = candidates(signal, n, n, &right_end);
    // power-law stretches on the right, where the best b depends on a
    let peaks: Vec<(&BigInt, &BigInt)> = rights
        .windows(2)
        .filter(|w| &w[1] - &w[0] >= BigInt::from(2))
        .filter(|w| matches!(signal.piece_at(&w[1]), Piece::PowerLaw(_)))
        .map(|w| (&w[0], &w[1]))
        .collect();

    let scale = signal.scale().clone();
    let mut best: Option<Best<(BigInt, BigInt)>> = None;
    let mut certified = true;
    for a in &lefts {
        let mut bs: Vec<BigInt> = rights.clone();
        for (b0, b1) in &peaks {
            let (b, ok) = first_descent(b0, b1, |b| window(signal, a, b))?;
            certified &= ok;
            bs.push(b);
        }
        for b in bs {
            let ratio = window(signal, a, &b)?;
            let key = (&b - a, a.clone());
            match best.as_mut() {
                None => best = Some(Best::new(key, ratio)),
                Some(cur) => cur.offer(key, ratio, &scale),
            }
        }
    }
    let best = best.expect("n is always a candidate");
    Ok(UncenteredResult {
        n: n.clone(),
        max_value: best.ratio.to_value(&scale),
        min_diameter: best.key.0,
        certified: certified && best.certified,
        tie_gap: best.tie_gap,
    })
}
