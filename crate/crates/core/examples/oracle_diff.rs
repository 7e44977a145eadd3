//! Event engines against the brute-force oracles on a seeded corpus.

use hlfreq::corpus::{binary_signals, oracle_diff, random_signals};

fn main() -> hlfreq::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut signals = random_signals(100, 32, seed);
    signals.extend(binary_signals(8));
    let summary = oracle_diff(&signals)?;
    println!(
        "{} signals, {} points, {} mismatches",
        summary.signals,
        summary.points,
        summary.mismatches.len()
    );
    Ok(())
}
