//! Seeded test corpora and the oracle-versus-event comparison.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::maxengine::{event_centered, event_uncentered, oracle_centered, oracle_uncentered};
use crate::rational::Rat;
use crate::signal::DenseSignal;

/// Largest numerator and denominator in random corpus values.
pub const VALUE_BOUND: i64 = 16;

/// `trials` random nonzero dense signals of width at most `max_width`.
///
/// About a third of the entries are zero so that runs and gaps both occur.
pub fn random_signals(trials: usize, max_width: usize, seed: u64) -> Vec<DenseSignal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_width = max_width.max(1);
    (0..trials)
        .map(|_| {
            let width = rng.gen_range(1..=max_width);
            let lo: i64 = rng.gen_range(-64..=64);
            let mut values: Vec<Rat> = (0..width)
                .map(|_| {
                    if rng.gen_ratio(1, 3) {
                        Rat::from_integer(0.into())
                    } else {
                        Rat::new(
                            rng.gen_range(1..=VALUE_BOUND).into(),
                            rng.gen_range(1..=VALUE_BOUND).into(),
                        )
                    }
                })
                .collect();
            if values.iter().all(|v| *v == Rat::from_integer(0.into())) {
                values[0] = Rat::from_integer(1.into());
            }
            DenseSignal::new(lo.into(), values).expect("nonnegative values")
        })
        .collect()
}

/// Every 0/1 signal on `[0, w - 1]` with both ends equal to 1, for `1 <= w <= max_width`.
pub fn binary_signals(max_width: usize) -> Vec<DenseSignal> {
    let mut out = Vec::new();
    for w in 1..=max_width {
        let inner = w.saturating_sub(2);
        for mask in 0u64..(1u64 << inner) {
            let values: Vec<Rat> = (0..w)
                .map(|i| {
                    let bit = i == 0 || i == w - 1 || mask >> (i - 1) & 1 == 1;
                    Rat::from_integer(u8::from(bit).into())
                })
                .collect();
            out.push(DenseSignal::new(0.into(), values).expect("valid"));
        }
    }
    out
}

/// The standard corpus: 500 random signals of width at most 64 plus every
/// 0/1 signal of width at most 12.
pub fn standard_corpus(seed: u64) -> Vec<DenseSignal> {
    let mut all = random_signals(500, 64, seed);
    all.extend(binary_signals(12));
    all
}

/// Points `[lo - w, hi + w]` around the support of a nonzero signal.
pub fn probe_range(signal: &DenseSignal) -> impl Iterator<Item = BigInt> {
    let w = signal.width() as i64;
    let lo = signal.lo().clone();
    (-w..2 * w).map(move |i| &lo + i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub signal: usize,
    pub n: BigInt,
    pub what: String,
}

#[derive(Clone, Debug, Default)]
pub struct DiffSummary {
    pub signals: usize,
    pub points: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares the event engines with the oracles on every probe point.
pub fn oracle_diff(signals: &[DenseSignal]) -> Result<DiffSummary> {
    let mut summary = DiffSummary {
        signals: signals.len(),
        ..DiffSummary::default()
    };
    for (idx, signal) in signals.iter().enumerate() {
        let blocks = signal.to_blocks();
        for n in probe_range(signal) {
            summary.points += 1;
            let (oc, ec) = (oracle_centered(signal, &n)?, event_centered(&blocks, &n)?);
            if oc.max_value != ec.max_value || oc.r_n != ec.r_n {
                summary.mismatches.push(Mismatch {
                    signal: idx,
                    n: n.clone(),
                    what: format!(
                        "centered oracle ({}, {}) vs event ({}, {})",
                        oc.max_value.render(),
                        oc.r_n,
                        ec.max_value.render(),
                        ec.r_n
                    ),
                });
            }
            let (ou, eu) = (oracle_uncentered(signal, &n)?, event_uncentered(&blocks, &n)?);
            if ou.max_value != eu.max_value || ou.min_diameter != eu.min_diameter {
                summary.mismatches.push(Mismatch {
                    signal: idx,
                    n,
                    what: format!(
                        "uncentered oracle ({}, {}) vs event ({}, {})",
                        ou.max_value.render(),
                        ou.min_diameter,
                        eu.max_value.render(),
                        eu.min_diameter
                    ),
                });
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_corpus_is_reproducible() {
        assert_eq!(random_signals(20, 64, 7), random_signals(20, 64, 7));
        assert_ne!(random_signals(20, 64, 7), random_signals(20, 64, 8));
        for s in random_signals(200, 64, 1) {
            assert!(s.width() >= 1 && s.width() <= 64);
            for v in s.values() {
                assert!(*v.numer() <= VALUE_BOUND.into() && *v.denom() <= VALUE_BOUND.into());
            }
        }
    }

    #[test]
    fn binary_corpus_size() {
        // 1 + sum_{w=2}^{12} 2^(w-2)
        assert_eq!(binary_signals(12).len(), 2048);
        assert!(binary_signals(3).iter().all(|s| s.lo() == &BigInt::from(0)));
    }

    #[test]
    fn small_diff_is_clean() {
        let s = oracle_diff(&random_signals(30, 16, 3)).unwrap();
        assert!(s.mismatches.is_empty(), "{:?}", s.mismatches);
        assert!(s.points > 30);
    }
}
