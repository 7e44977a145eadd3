//! Ratio classes of the frequency function and counting statistics over
//! `{n : 0 < |n| <= N}`.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::growth::GrowthSpec;
use crate::maxengine::{event_centered, event_uncentered, FrequencyRecord};
use crate::rational::Rat;
use crate::signal::{Amplitude, AnySignal, BlockSignal, Signal};
use crate::value::Value;

/// Where `r_n / |n|` falls relative to an `epsilon`-window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DichotomyClass {
    /// `[0, eps)`
    NearZero,
    /// `(1 - eps, 1 + eps)`, centered only
    NearOne,
    /// `(1/2 - eps, 1/2 + eps)`, uncentered only
    NearHalf,
    /// Between the near-zero window and the target window.
    Middle,
    /// `[1 + eps, inf)`
    AboveOnePlus,
    /// `[1/2 + eps, inf)`
    AboveHalfPlus,
}

fn ratio_of(record: &FrequencyRecord, uncentered: bool) -> Result<Rat> {
    if record.n.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let radius = if uncentered {
        record
            .uncentered
            .as_ref()
            .ok_or_else(|| Error::ParameterViolation("record has no uncentered result".into()))?
            .r_tilde()
    } else {
        Rat::from_integer(record.r_n.clone())
    };
    Ok(radius / Rat::from_integer(record.n.abs()))
}

/// Classifies `r_n / |n|` (or `r~_n / |n|`) exactly.
///
/// For `eps > 1/4` the uncentered near-zero and near-half windows overlap;
/// the near-half class wins there.
pub fn classify(record: &FrequencyRecord, epsilon: &Rat, uncentered: bool) -> Result<DichotomyClass> {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    if !epsilon.is_positive() || *epsilon >= half {
        return Err(Error::ParameterViolation("epsilon must lie in (0, 1/2)".into()));
    }
    let t = ratio_of(record, uncentered)?;
    let target = if uncentered { half } else { Rat::one() };
    Ok(if t >= &target + epsilon {
        if uncentered {
            DichotomyClass::AboveHalfPlus
        } else {
            DichotomyClass::AboveOnePlus
        }
    } else if t > &target - epsilon {
        if uncentered {
            DichotomyClass::NearHalf
        } else {
            DichotomyClass::NearOne
        }
    } else if t < *epsilon {
        DichotomyClass::NearZero
    } else {
        DichotomyClass::Middle
    })
}

/// `1/(2C) <= r_n / |n| <= 1/C`.
pub fn sc_membership(record: &FrequencyRecord, c: &Rat) -> Result<bool> {
    if !c.is_positive() {
        return Err(Error::ParameterViolation("C must be positive".into()));
    }
    let t = ratio_of(record, false)?;
    let upper = c.recip();
    let lower = &upper / Rat::from_integer(BigInt::from(2));
    Ok(lower <= t && t <= upper)
}

/// One line of a density table. Counts are `None` when only a structural
/// argument was available at this `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub n: BigInt,
    pub count_s: Option<BigInt>,
    pub count_z: Option<BigInt>,
    pub count_near1: Option<BigInt>,
    /// `count_S / N`
    pub ratio_s: Option<Value>,
    /// `count_Z / (N / g(N))`
    pub ratio_z_norm: Option<Value>,
    /// `count_near1 / 2N`
    pub ratio_near1: Option<Value>,
    pub flags: Vec<String>,
}

/// Parameters of a density run.
#[derive(Clone, Debug)]
pub struct DensityOptions {
    pub c: Rat,
    pub epsilon: Rat,
    pub growth: Option<GrowthSpec>,
    pub uncentered: bool,
    /// Most points evaluated one by one, summed over the run.
    pub max_points: u64,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions {
            c: Rat::from_integer(BigInt::from(2)),
            epsilon: Rat::new(BigInt::one(), BigInt::from(10)),
            growth: None,
            uncentered: false,
            max_points: 2_000_000,
        }
    }
}

/// Whether every point of constant block `idx` has radius zero.
///
/// A window that stays clear of the other blocks averages at most the block's
/// amplitude `a`. A window reaching another block has radius (centered) or
/// length minus one (uncentered) at least the gap `G` to the nearest other
/// block, so it averages at most `||f||_1 / (2G + 1)` or `||f||_1 / (G + 1)`.
/// When that bound is `<= a`, the single point is a maximizer of least size.
pub fn certify_block_zero(signal: &BlockSignal, idx: usize, uncentered: bool) -> Result<bool> {
    let blocks = signal.blocks();
    let block = &blocks[idx];
    let a = match &block.amp {
        Amplitude::Const(q) if q.is_positive() => q,
        _ => return Ok(false),
    };
    let mut gap: Option<BigInt> = None;
    if idx > 0 {
        gap = Some(&block.start - &blocks[idx - 1].end);
    }
    if let Some(next) = blocks.get(idx + 1) {
        let g = &next.start - &block.end;
        gap = Some(gap.map_or(g.clone(), |h| h.min(g)));
    }
    let Some(gap) = gap else {
        // a lone block: every window averages at most a
        return Ok(true);
    };
    let total = signal.norm_l1()?.hi().clone();
    let len = if uncentered { &gap + 1 } else { &gap * 2 + 1 };
    Ok(total <= a * Rat::from_integer(len))
}

fn is_zero_radius(signal: &BlockSignal, n: &BigInt, uncentered: bool) -> Result<bool> {
    Ok(if uncentered {
        event_uncentered(signal, n)?.min_diameter.is_zero()
    } else {
        event_centered(signal, n)?.r_n.is_zero()
    })
}

/// `|Z_N|` without visiting points outside the support: a zero radius forces
/// `f(n) = Mf(n) > 0`. Blocks that pass [`certify_block_zero`] are counted
/// whole; the rest are walked point by point, charging `spent`.
pub fn structural_zero_count(
    signal: &BlockSignal,
    n_max: &BigInt,
    uncentered: bool,
    spent: &mut u64,
    max_points: u64,
) -> Result<BigInt> {
    let mut count = BigInt::zero();
    for (i, b) in signal.blocks().iter().enumerate() {
        let lo = (&b.start).max(&-n_max).clone();
        let hi = (&b.end).min(n_max).clone();
        if lo > hi {
            continue;
        }
        let contains_origin = lo <= BigInt::zero() && hi >= BigInt::zero();
        if certify_block_zero(signal, i, uncentered)? {
            count += &hi - &lo + 1;
            if contains_origin {
                count -= 1;
            }
            continue;
        }
        let width: BigInt = &hi - &lo + 1;
        let width = width.to_u64().unwrap_or(u64::MAX);
        if width > max_points.saturating_sub(*spent) {
            return Err(Error::BudgetExceeded {
                partial: Box::default(),
            });
        }
        *spent += width;
        let mut n = lo.clone();
        while n <= hi {
            if !n.is_zero() && is_zero_radius(signal, &n, uncentered)? {
                count += 1;
            }
            n += 1;
        }
    }
    Ok(count)
}

/// Memberships of a single point.
struct Tally {
    abs_n: BigInt,
    s: bool,
    z: bool,
    near: bool,
    certified: bool,
}

fn tally(signal: &BlockSignal, n: &BigInt, opts: &DensityOptions) -> Result<Tally> {
    let c = event_centered(signal, n)?;
    let u = if opts.uncentered {
        Some(event_uncentered(signal, n)?)
    } else {
        None
    };
    let abs = Rat::from_integer(n.abs());
    let (radius, certified, target) = match &u {
        Some(u) => (u.r_tilde(), u.certified, Rat::new(BigInt::one(), BigInt::from(2))),
        None => (Rat::from_integer(c.r_n.clone()), c.certified, Rat::one()),
    };
    let t = &radius / &abs;
    Ok(Tally {
        abs_n: n.abs(),
        s: t <= opts.c.recip(),
        z: radius.is_zero(),
        near: &target - &opts.epsilon <= t && t <= &target + &opts.epsilon,
        certified,
    })
}

fn z_norm(count: &BigInt, n: &BigInt, g: Option<&GrowthSpec>) -> Result<Option<Value>> {
    let Some(g) = g else { return Ok(None) };
    let gi = g.eval_fixed(n)?;
    let factor = Rat::new(count.clone(), n.clone());
    Ok(Some(Value::enclosure(gi.lo_rat() * &factor, gi.hi_rat() * &factor)))
}

/// Counts of `S_N`, `Z_N` and the near-target set for each `N` in `n_list`.
///
/// Every `N` whose full range fits the point budget is counted exactly, point
/// by point. Larger `N` over block signals fall back to
/// [`structural_zero_count`] and report only `count_Z`. When neither is
/// possible the rows computed so far travel inside `BudgetExceeded`.
pub fn density_series(signal: &AnySignal, n_list: &[BigInt], opts: &DensityOptions) -> Result<Vec<DensityRow>> {
    if signal.is_zero() {
        return Err(Error::ZeroSignal);
    }
    if n_list.iter().any(|n| !n.is_positive()) || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ParameterViolation(
            "N list must be positive and increasing".into(),
        ));
    }
    if !opts.c.is_positive() || !opts.epsilon.is_positive() {
        return Err(Error::ParameterViolation("C and epsilon must be positive".into()));
    }
    let blocks = match signal {
        AnySignal::Blocks(b) => b.clone(),
        AnySignal::Dense(d) => d.to_blocks(),
    };
    let pointwise_limit = n_list
        .iter()
        .filter(|n| n.to_u64().is_some_and(|v| v.saturating_mul(2) <= opts.max_points))
        .max()
        .cloned();
    let mut tallies = Vec::new();
    let mut spent = 0u64;
    if let Some(limit) = &pointwise_limit {
        let mut k = BigInt::one();
        while &k <= limit {
            tallies.push(tally(&blocks, &k, opts)?);
            tallies.push(tally(&blocks, &-&k, opts)?);
            k += 1;
        }
        spent = tallies.len() as u64;
    }
    let mut rows = Vec::new();
    for n in n_list {
        let exact = pointwise_limit.as_ref().is_some_and(|l| n <= l);
        let row = if exact {
            let inside = tallies.iter().filter(|t| &t.abs_n <= n);
            let (mut s, mut z, mut near, mut certified) = (0u64, 0u64, 0u64, true);
            for t in inside {
                s += t.s as u64;
                z += t.z as u64;
                near += t.near as u64;
                certified &= t.certified;
            }
            let (s, z, near) = (BigInt::from(s), BigInt::from(z), BigInt::from(near));
            let mut flags = vec!["pointwise".to_string()];
            if !certified {
                flags.push("uncertified".into());
            }
            DensityRow {
                ratio_s: Some(Value::Exact(Rat::new(s.clone(), n.clone()))),
                ratio_z_norm: z_norm(&z, n, opts.growth.as_ref())?,
                ratio_near1: Some(Value::Exact(Rat::new(near.clone(), n * 2))),
                n: n.clone(),
                count_s: Some(s),
                count_z: Some(z),
                count_near1: Some(near),
                flags,
            }
        } else {
            let z = match structural_zero_count(&blocks, n, opts.uncentered, &mut spent, opts.max_points) {
                Ok(z) => z,
                Err(Error::BudgetExceeded { .. }) => {
                    return Err(Error::BudgetExceeded {
                        partial: Box::new(rows),
                    });
                }
                Err(e) => return Err(e),
            };
            DensityRow {
                ratio_s: None,
                ratio_z_norm: z_norm(&z, n, opts.growth.as_ref())?,
                ratio_near1: None,
                n: n.clone(),
                count_s: None,
                count_z: Some(z),
                count_near1: None,
                flags: vec!["structural".into()],
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Writes rows as CSV with columns
/// `N,count_S,count_Z,count_near1,ratio_S,ratio_Z_norm,ratio_near1,flags`.
pub fn write_density_csv<W: Write>(rows: &[DensityRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "N",
        "count_S",
        "count_Z",
        "count_near1",
        "ratio_S",
        "ratio_Z_norm",
        "ratio_near1",
        "flags",
    ])?;
    let opt_int = |v: &Option<BigInt>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
    let opt_val = |v: &Option<Value>| v.as_ref().map(Value::render).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.n.to_string(),
            opt_int(&r.count_s),
            opt_int(&r.count_z),
            opt_int(&r.count_near1),
            opt_val(&r.ratio_s),
            opt_val(&r.ratio_z_norm),
            opt_val(&r.ratio_near1),
            r.flags.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_theorem27, build_theorem29_linf, dirac, Mode, DEFAULT_CEILING_BITS};
    use crate::maxengine::{profile, PointSet, ProfileOptions};
    use crate::rational::{int, rat};

    fn record(signal: &BlockSignal, n: i64, uncentered: bool) -> FrequencyRecord {
        let opts = ProfileOptions {
            include_uncentered: uncentered,
            ..Default::default()
        };
        profile(&AnySignal::Blocks(signal.clone()), &PointSet::List(vec![int(n)]), &opts)
            .unwrap()
            .remove(0)
    }

    #[test]
    fn dirac_classes() {
        let d = dirac();
        let r = record(&d, 50, true);
        assert_eq!(classify(&r, &rat(1, 10), false).unwrap(), DichotomyClass::NearOne);
        assert_eq!(classify(&r, &rat(1, 10), true).unwrap(), DichotomyClass::NearHalf);
        let r10 = record(&d, 10, false);
        assert!(!sc_membership(&r10, &rat(2, 1)).unwrap());
        assert!(sc_membership(&r10, &rat(1, 1)).unwrap());
        assert!(matches!(
            classify(&record(&d, 0, false), &rat(1, 10), false),
            Err(Error::ZeroIndex)
        ));
    }

    #[test]
    fn linf_point_is_middle_and_in_s3() {
        let (s, cert) = build_theorem29_linf(4, &Mode::PaperExact).unwrap();
        let n = cert.n[2].clone();
        let c = event_centered(&s, &n).unwrap();
        let r = FrequencyRecord {
            n,
            max_value: c.max_value,
            r_n: c.r_n,
            certified: c.certified,
            uncentered: None,
        };
        assert_eq!(classify(&r, &rat(1, 10), false).unwrap(), DichotomyClass::Middle);
        assert!(sc_membership(&r, &rat(3, 1)).unwrap());
    }

    #[test]
    fn dirac_density_rows() {
        let rows = density_series(
            &AnySignal::Blocks(dirac()),
            &[int(10), int(100), int(1000)],
            &DensityOptions::default(),
        )
        .unwrap();
        for r in &rows {
            assert_eq!(r.count_s, Some(int(0)));
            assert_eq!(r.count_z, Some(int(0)));
            assert_eq!(r.ratio_near1, Some(Value::Exact(rat(1, 1))));
        }
    }

    #[test]
    fn structural_count_matches_pointwise() {
        let (c, cert) = build_theorem27(&GrowthSpec::Log, 3, &Mode::PaperExact, false, DEFAULT_CEILING_BITS).unwrap();
        let s = c.blocks().unwrap();
        for uncentered in [false, true] {
            for i in 0..s.blocks().len() {
                assert!(certify_block_zero(s, i, uncentered).unwrap());
            }
            let n_max = &cert.n[2] + &cert.l[2];
            let mut spent = 0;
            let z = structural_zero_count(s, &n_max, uncentered, &mut spent, 0).unwrap();
            let mut walked = BigInt::zero();
            for b in s.blocks() {
                let mut n = b.start.clone();
                while n <= b.end {
                    walked += is_zero_radius(s, &n, uncentered).unwrap() as u32;
                    n += 1;
                }
            }
            assert_eq!(z, walked);
        }
    }

    #[test]
    fn csv_layout() {
        let rows = density_series(&AnySignal::Blocks(dirac()), &[int(4)], &DensityOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_density_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "N,count_S,count_Z,count_near1,ratio_S,ratio_Z_norm,ratio_near1,flags\n4,0,0,8,0,,1,pointwise\n"
        );
    }
}
