//! Centered and uncentered maximal functions of step functions on the line.
//!
//! With `F` the running integral of `f`, the centered average at radius `r`
//! is `(F(x + r) - F(x - r)) / 2r`. Between two consecutive event radii
//! `|x - b|` the numerator is affine in `r`, so the average is `s/2 + c/2r`:
//! monotone or constant. The supremum is therefore attained at an event
//! radius or approached as `r -> 0`, and the first stretch is constant, equal
//! to the two-sided limit `(f(x-) + f(x+)) / 2`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Piecewise-constant `f` with `f = values[i]` on `(breakpoints[i], breakpoints[i + 1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

/// `Mf(x)` or the uncentered maximal value, with the frequency value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousResult {
    pub x: Rat,
    pub max_value: Rat,
    /// `r_x` (centered) or `r~_x`, half the length of the best interval.
    pub radius: Rat,
    /// False only when the supremum is a limit at vanishing radius that no
    /// positive radius reaches.
    pub attained: bool,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rat>, values: Vec<Rat>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidSignal(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSignal("breakpoints must increase strictly".into()));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidSignal("step values must be nonnegative".into()));
        }
        Ok(StepFunction { breakpoints, values })
    }

    /// `c * 1_(a, b)`.
    pub fn indicator(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        StepFunction::new(vec![a, b], vec![c])
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rat) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::ParameterViolation("scale factor must be nonnegative".into()));
        }
        let values = self.values.iter().map(|v| v * c).collect();
        StepFunction::new(self.breakpoints.clone(), values)
    }

    pub fn norm_sup(&self) -> Rat {
        self.values.iter().max().cloned().unwrap_or_else(Rat::zero)
    }

    /// `f(t+)` and `f(t-)`.
    fn one_sided(&self, t: &Rat) -> (Rat, Rat) {
        let mut left = Rat::zero();
        let mut right = Rat::zero();
        for (i, v) in self.values.iter().enumerate() {
            let (a, b) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            if a < t && t <= b {
                left = v.clone();
            }
            if a <= t && t < b {
                right = v.clone();
            }
        }
        (left, right)
    }

    /// `F(t) = integral of f over (-inf, t]`.
    fn running(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (i, v) in self.values.iter().enumerate() {
            let (a, b) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            if t <= a {
                break;
            }
            let hi = if t < b { t } else { b };
            acc += v * (hi - a);
        }
        acc
    }
}

/// Exact integral of `f` over `[a, b]`.
pub fn integral(step: &StepFunction, a: &Rat, b: &Rat) -> Result<Rat> {
    if a > b {
        return Err(Error::ParameterViolation("integral needs a <= b".into()));
    }
    Ok(step.running(b) - step.running(a))
}

/// Average of `f` over `[x - r, x + r]`.
pub fn average_ball(step: &StepFunction, x: &Rat, r: &Rat) -> Result<Rat> {
    if !r.is_positive() {
        return Err(Error::NonpositiveRadius);
    }
    Ok(integral(step, &(x - r), &(x + r))? / (r * Rat::from_integer(2.into())))
}

fn interval_average(step: &StepFunction, l: &Rat, u: &Rat) -> Rat {
    (step.running(u) - step.running(l)) / (u - l)
}

/// `Mf(x)` and `r_x`, with `r_x = 0` whenever the supremum is reached at
/// arbitrarily small radii.
pub fn maximal_centered_cont(step: &StepFunction, x: &Rat) -> Result<ContinuousResult> {
    if step.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let mut events: Vec<Rat> = step
        .breakpoints
        .iter()
        .map(|b| (x - b).abs())
        .filter(|d| d.is_positive())
        .collect();
    events.sort();
    events.dedup();
    let (left, right) = step.one_sided(x);
    let limit = (left + right) / Rat::from_integer(2.into());

    // first maximizer in increasing radius; strict improvement only
    let mut best: Option<(Rat, Rat)> = None;
    for r in &events {
        let v = average_ball(step, x, r)?;
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, r.clone()));
        }
    }
    Ok(resolve(x, best, limit))
}

/// Uncentered maximal value over closed intervals containing `x`, and half the
/// least length of a maximizing interval.
pub fn maximal_uncentered_cont(step: &StepFunction, x: &Rat) -> Result<ContinuousResult> {
    if step.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let mut lefts: Vec<Rat> = step.breakpoints.iter().filter(|b| *b <= x).cloned().collect();
    let mut rights: Vec<Rat> = step.breakpoints.iter().filter(|b| *b >= x).cloned().collect();
    lefts.push(x.clone());
    rights.push(x.clone());
    lefts.sort();
    lefts.dedup();
    rights.sort();
    rights.dedup();
    let (left, right) = step.one_sided(x);
    let limit = left.max(right);

    let mut best: Option<(Rat, Rat)> = None;
    for l in &lefts {
        for u in &rights {
            if l == u {
                continue;
            }
            let v = interval_average(step, l, u);
            let half = (u - l) / Rat::from_integer(2.into());
            let better = match &best {
                None => true,
                Some((bv, bh)) => v > *bv || (v == *bv && half < *bh),
            };
            if better {
                best = Some((v, half));
            }
        }
    }
    Ok(resolve(x, best, limit))
}

/// Combines the best positive-radius candidate with the small-radius limit.
fn resolve(x: &Rat, best: Option<(Rat, Rat)>, limit: Rat) -> ContinuousResult {
    match best {
        Some((v, r)) if v > limit => ContinuousResult {
            x: x.clone(),
            max_value: v,
            radius: r,
            attained: true,
        },
        // the first stretch is constant at the limit, so a tie is attained at
        // every small radius and the infimum is zero
        Some((v, _)) if v == limit => ContinuousResult {
            x: x.clone(),
            max_value: v,
            radius: Rat::zero(),
            attained: true,
        },
        _ => ContinuousResult {
            x: x.clone(),
            max_value: limit,
            radius: Rat::zero(),
            attained: false,
        },
    }
}
