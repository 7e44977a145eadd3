//! Discrete centered and uncentered maximal functions and their frequency
//! functions.
//!
//! Two engines compute the same quantities:
//!
//! * [`oracle_centered`] / [`oracle_uncentered`] scan every radius (or every
//!   window) of a [`DenseSignal`]. They are slow and obviously correct.
//! * [`event_centered`] / [`event_uncentered`] work on a [`BlockSignal`] and
//!   only evaluate averages at radii where a window endpoint crosses a block
//!   boundary, plus a bisection inside power-law stretches where the average
//!   can peak. Their cost depends on the number of blocks, not on where the
//!   blocks sit.
//!
//! Ties always resolve to the smallest radius (or diameter), which is what
//! makes the reported radius the frequency function.

mod centered;
mod oracle;
mod uncentered;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub use centered::event_centered;
pub use oracle::{oracle_centered, oracle_uncentered};
pub use uncentered::event_uncentered;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::signal::{AnySignal, Signal};
use crate::value::Value;

/// `Mf(n)` together with the minimal maximizing radius `r_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredResult {
    pub n: BigInt,
    pub max_value: Value,
    pub r_n: BigInt,
    /// False when an enclosure comparison could not separate two radii.
    pub certified: bool,
    /// Overlap width of the undecided comparison, if any.
    pub tie_gap: Option<Rat>,
}

/// The uncentered maximal value and the minimal diameter `rho + s` attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncenteredResult {
    pub n: BigInt,
    pub max_value: Value,
    pub min_diameter: BigInt,
    pub certified: bool,
    pub tie_gap: Option<Rat>,
}

impl UncenteredResult {
    /// The uncentered frequency value, half the minimal diameter.
    pub fn r_tilde(&self) -> Rat {
        Rat::new(self.min_diameter.clone(), BigInt::from(2))
    }
}

/// One row of a frequency profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyRecord {
    pub n: BigInt,
    pub max_value: Value,
    pub r_n: BigInt,
    pub certified: bool,
    pub uncentered: Option<UncenteredResult>,
}

/// `A_r f(n)`, the average over `[n - r, n + r]`.
pub fn average_centered<S: Signal + ?Sized>(signal: &S, n: &BigInt, r: &BigInt) -> Result<Value> {
    if r.is_negative() {
        return Err(Error::ParameterViolation("radius must be nonnegative".into()));
    }
    let sum = signal.window_sum(&(n - r), &(n + r))?;
    Ok(sum.div_int(&(r * 2 + 1)))
}

/// `A_{rho,s} f(n)`, the average over `[n - rho, n + s]`.
pub fn average_uncentered<S: Signal + ?Sized>(signal: &S, n: &BigInt, rho: &BigInt, s: &BigInt) -> Result<Value> {
    if rho.is_negative() || s.is_negative() {
        return Err(Error::ParameterViolation("rho and s must be nonnegative".into()));
    }
    let sum = signal.window_sum(&(n - rho), &(n + s))?;
    Ok(sum.div_int(&(rho + s + 1)))
}

/// Radius beyond which the centered average only decreases: the window of
/// radius `max(|n - lo|, |n - hi|)` already covers the whole support.
pub fn search_bound_centered<S: Signal + ?Sized>(signal: &S, n: &BigInt) -> Result<BigInt> {
    let (lo, hi) = signal.support_bounds().ok_or(Error::ZeroSignal)?;
    Ok((n - lo).abs().max((n - hi).abs()))
}

/// Which points to profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    /// Inclusive range.
    Range(BigInt, BigInt),
    List(Vec<BigInt>),
}

/// Limits for [`profile`].
#[derive(Clone, Debug)]
pub struct ProfileOptions {
    pub include_uncentered: bool,
    /// Largest number of points a range may expand to.
    pub max_points: u64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            include_uncentered: false,
            max_points: 1_000_000,
        }
    }
}

/// Frequency records for every requested point, ordered by `n`.
///
/// Dense signals go through the brute-force oracles, block signals through the
/// event engines.
pub fn profile(signal: &AnySignal, points: &PointSet, opts: &ProfileOptions) -> Result<Vec<FrequencyRecord>> {
    if signal.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let mut ns: Vec<BigInt> = match points {
        PointSet::Range(a, b) => {
            if a > b {
                return Err(Error::ParameterViolation("empty profile range".into()));
            }
            let width: BigInt = b - a + 1;
            if width > BigInt::from(opts.max_points) {
                return Err(Error::MaterializationTooLarge {
                    width: width.to_string(),
                    cap: opts.max_points,
                });
            }
            let count = width.to_u64().expect("under cap");
            (0..count).map(|i| a + i).collect()
        }
        PointSet::List(v) => v.clone(),
    };
    ns.sort();
    ns.dedup();
    ns.iter()
        .map(|n| {
            let (c, u) = match signal {
                AnySignal::Dense(d) => (
                    oracle_centered(d, n)?,
                    opts.include_uncentered.then(|| oracle_uncentered(d, n)).transpose()?,
                ),
                AnySignal::Blocks(b) => (
                    event_centered(b, n)?,
                    opts.include_uncentered.then(|| event_uncentered(b, n)).transpose()?,
                ),
            };
            Ok(FrequencyRecord {
                n: n.clone(),
                max_value: c.max_value,
                r_n: c.r_n,
                certified: c.certified && u.as_ref().is_none_or(|u| u.certified),
                uncentered: u,
            })
        })
        .collect()
}

/// Tracks the running best candidate; ties keep the incumbent.
pub(crate) struct Best<K> {
    pub key: K,
    pub ratio: crate::value::ScaledRatio,
    pub certified: bool,
    pub tie_gap: Option<Rat>,
}

impl<K: Ord + Clone> Best<K> {
    pub fn new(key: K, ratio: crate::value::ScaledRatio) -> Self {
        Best {
            key,
            ratio,
            certified: true,
            tie_gap: None,
        }
    }

    /// Offers a candidate; the winner is the larger value, then the smaller key.
    pub fn offer(&mut self, key: K, ratio: crate::value::ScaledRatio, scale: &BigInt) {
        use crate::value::Cmp3;
        match ratio.compare(&self.ratio) {
            Cmp3::Greater => {
                self.key = key;
                self.ratio = ratio;
            }
            Cmp3::Equal => {
                if key < self.key {
                    self.key = key;
                    self.ratio = ratio;
                }
            }
            Cmp3::Less => {}
            Cmp3::Indeterminate => {
                let gap = ratio.overlap_width(&self.ratio, scale);
                self.tie_gap = Some(match self.tie_gap.take() {
                    Some(g) if g > gap => g,
                    _ => gap,
                });
                self.certified = false;
                if key < self.key {
                    self.key = key;
                    self.ratio = ratio;
                }
            }
        }
    }
}
