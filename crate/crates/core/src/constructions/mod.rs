//! Generators for the extremal example signals, each paired with a
//! certificate listing the chosen parameters and every inequality they were
//! required to meet.

mod certificate;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use certificate::{recheck, recheck_passes, Condition, ConstructionCertificate, Status};

use crate::continuum::StepFunction;
use crate::error::{Error, Result};
use crate::fixed::FixedInterval;
use crate::growth::GrowthSpec;
use crate::rational::{ceil_rat, format_rat, Rat};
use crate::signal::{Block, BlockSignal, Caps};

/// Upper limit for the admissible-`N_k` search.
pub const DEFAULT_CEILING_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    T27Discrete,
    T27Continuous,
    T29Linf,
    T29Lp,
}

impl Theorem {
    pub fn label(self) -> &'static str {
        match self {
            Theorem::T27Discrete => "theorem27-discrete",
            Theorem::T27Continuous => "theorem27-continuous",
            Theorem::T29Linf => "theorem29-linf",
            Theorem::T29Lp => "theorem29-lp",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem27" | "theorem27-discrete" => Theorem::T27Discrete,
            "theorem27-continuous" => Theorem::T27Continuous,
            "theorem29-linf" => Theorem::T29Linf,
            "theorem29-lp" => Theorem::T29Lp,
            _ => return Err(Error::Parse(format!("unknown construction `{s}`"))),
        })
    }
}

/// How `N_{k+1}` follows from `N_k` in relaxed mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    Factor(BigInt),
    Exponent(u32),
}

impl Growth {
    fn next(&self, n: &BigInt) -> BigInt {
        match self {
            Growth::Factor(f) => n * f,
            Growth::Exponent(e) => num_traits::pow(n.clone(), *e as usize),
        }
    }

    fn describe(&self) -> String {
        match self {
            Growth::Factor(f) => format!("N_(k+1) = {f} * N_k"),
            Growth::Exponent(e) => format!("N_(k+1) = N_k^{e}"),
        }
    }
}

/// Caller overrides for relaxed mode. Unset fields keep the exact rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relaxation {
    pub n1: Option<BigInt>,
    pub growth: Option<Growth>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    PaperExact,
    Relaxed(Relaxation),
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::PaperExact => "paper_exact",
            Mode::Relaxed(_) => "relaxed",
        }
    }

    fn relaxation(&self) -> Option<&Relaxation> {
        match self {
            Mode::PaperExact => None,
            Mode::Relaxed(r) => Some(r),
        }
    }
}

/// A generated signal: blocks on the integers or a step function on the line.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Blocks(BlockSignal),
    Step(StepFunction),
}

impl Construction {
    pub fn blocks(&self) -> Option<&BlockSignal> {
        match self {
            Construction::Blocks(b) => Some(b),
            Construction::Step(_) => None,
        }
    }

    pub fn step(&self) -> Option<&StepFunction> {
        match self {
            Construction::Step(s) => Some(s),
            Construction::Blocks(_) => None,
        }
    }
}

/// The unit mass at the origin.
pub fn dirac() -> BlockSignal {
    BlockSignal::new(vec![Block::constant(BigInt::zero(), BigInt::zero(), Rat::one())]).expect("valid block")
}

/// Lower bound `g(N_k)` must clear for block `k`: `max(2, 5 * 2^k / 4)`.
pub(crate) fn growth_threshold(k: u32) -> Rat {
    let t = Rat::new(BigInt::from(5) << k, BigInt::from(4));
    t.max(Rat::from_integer(BigInt::from(2)))
}

/// `ceil(N / g(N))`, refined until the enclosure of `g` pins it down.
pub(crate) fn block_length(g: &GrowthSpec, n: &BigInt) -> Result<BigInt> {
    let nr = Rat::from_integer(n.clone());
    let mut bits = crate::growth::GROWTH_BITS;
    while bits <= 4096 {
        let gi = g.eval_bits(n, bits)?;
        let lo = ceil_rat(&(&nr / gi.hi_rat()));
        let hi = ceil_rat(&(&nr / gi.lo_rat()));
        if lo == hi {
            return Ok(lo);
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted(bits / 2))
}

/// Per-block requirements, each with a human-readable statement.
struct Checks {
    separation: Option<bool>,
    floor: bool,
    ratio: bool,
    growth: bool,
    nonempty: bool,
}

fn check_block(g: &GrowthSpec, k: u32, n: &BigInt, prev: Option<&BigInt>, discrete: bool) -> Result<Checks> {
    let gi: FixedInterval = g.eval_fixed(n)?;
    let nr = Rat::from_integer(n.clone());
    let length = block_length(g, n)?;
    Ok(Checks {
        separation: prev.map(|p| n >= &(p * 10)),
        floor: k != 1 || *n >= BigInt::from(4),
        ratio: nr >= gi.hi_rat(),
        growth: gi.lo_rat() >= growth_threshold(k),
        nonempty: !discrete || length >= BigInt::from(2),
    })
}

impl Checks {
    fn all(&self) -> bool {
        self.separation.unwrap_or(true) && self.floor && self.ratio && self.growth && self.nonempty
    }
}

/// Smallest `N >= lower` passing every per-block requirement, by doubling and
/// then bisection.
fn smallest_admissible(
    g: &GrowthSpec,
    k: u32,
    lower: &BigInt,
    prev: Option<&BigInt>,
    discrete: bool,
    ceiling: &BigInt,
) -> Result<Option<BigInt>> {
    let ok = |n: &BigInt| -> Result<bool> { Ok(check_block(g, k, n, prev, discrete)?.all()) };
    if ok(lower)? {
        return Ok(Some(lower.clone()));
    }
    let mut bad = lower.clone();
    let mut good = lower * 2;
    while !ok(&good)? {
        if &good > ceiling {
            return Ok(None);
        }
        bad = good.clone();
        good *= 2;
    }
    while &good - &bad > BigInt::one() {
        let mid: BigInt = (&good + &bad) >> 1;
        if ok(&mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(Some(good))
}

fn condition(name: String, holds: bool, statement: String, mode: &Mode) -> Condition {
    let status = if holds { Status::Satisfied } else { Status::Relaxed };
    let note = if holds {
        statement
    } else {
        format!("fails: {statement} ({} mode)", mode.label())
    };
    Condition { name, status, note }
}

/// Blocks `I_k` of width about `N_k / g(N_k)` at sparse positions `N_k`, with
/// masses `2^-k`, so that the frequency function vanishes on each block.
///
/// `continuous` selects the step-function version on the line. `M = 2` is
/// fixed and each `N_k` is the smallest admissible value above
/// `max(4, 10 N_(k-1))`. The search stops at `2^ceiling_bits`.
pub fn build_theorem27(
    g: &GrowthSpec,
    k_max: u32,
    mode: &Mode,
    continuous: bool,
    ceiling_bits: u32,
) -> Result<(Construction, ConstructionCertificate)> {
    g.validate()?;
    if k_max == 0 {
        return Err(Error::ParameterViolation("k_max must be at least 1".into()));
    }
    let discrete = !continuous;
    let ceiling = BigInt::one() << ceiling_bits;
    let relax = mode.relaxation();
    let mut ns: Vec<BigInt> = Vec::new();
    let mut ls: Vec<BigInt> = Vec::new();
    let mut notes = Vec::new();
    let mut conditions = Vec::new();
    for k in 1..=k_max {
        let prev = ns.last();
        let lower = match prev {
            None => BigInt::from(4),
            Some(p) => p * 10,
        };
        let overridden = match (k, relax) {
            (1, Some(r)) => r.n1.clone(),
            (_, Some(r)) => r.growth.as_ref().map(|gr| gr.next(prev.expect("k > 1"))),
            _ => None,
        };
        let n = match overridden {
            Some(n) => {
                notes.push(format!("N_{k} = {n} supplied by relaxed mode"));
                n
            }
            None => match smallest_admissible(g, k, &lower, prev, discrete, &ceiling)? {
                Some(n) => n,
                None if relax.is_some() => {
                    notes.push(format!(
                        "N_{k}: no admissible value below 2^{ceiling_bits}; using {lower}"
                    ));
                    lower
                }
                None => {
                    return Err(Error::InfeasibleConstraint(format!(
                        "no N_{k} below 2^{ceiling_bits} satisfies the growth requirement g(N) >= {}",
                        format_rat(&growth_threshold(k))
                    )))
                }
            },
        };
        if n < BigInt::from(2) {
            return Err(Error::ParameterViolation(format!("N_{k} must be at least 2")));
        }
        let checks = check_block(g, k, &n, prev, discrete)?;
        if let Some(sep) = checks.separation {
            conditions.push(condition(
                format!("separation_{k}"),
                sep,
                format!("N_{k} >= 10 N_{}", k - 1),
                mode,
            ));
        }
        if k == 1 {
            conditions.push(condition(
                "start_at_least_4".into(),
                checks.floor,
                "N_1 >= 4".into(),
                mode,
            ));
        }
        conditions.push(condition(
            format!("ratio_{k}"),
            checks.ratio,
            format!("N_{k} / g(N_{k}) >= 1"),
            mode,
        ));
        conditions.push(condition(
            format!("growth_{k}"),
            checks.growth,
            format!("g(N_{k}) >= {}", format_rat(&growth_threshold(k))),
            mode,
        ));
        let l = block_length(g, &n)?;
        if discrete {
            if l < BigInt::from(2) {
                return Err(Error::InfeasibleConstraint(format!(
                    "L_{k} = {l} leaves the discrete block empty"
                )));
            }
            conditions.push(condition(format!("nonempty_{k}"), true, format!("L_{k} >= 2"), mode));
        }
        ns.push(n);
        ls.push(l);
    }

    let mut amplitudes = Vec::new();
    let construction = if discrete {
        let mut blocks = Vec::new();
        for (i, (n, l)) in ns.iter().zip(&ls).enumerate() {
            let size: BigInt = l - 1;
            let a = Rat::new(BigInt::one(), (BigInt::one() << (i + 1)) * &size);
            blocks.push(Block::constant(n + 1, n + &size, a.clone()));
            amplitudes.push(a);
        }
        Construction::Blocks(BlockSignal::new(blocks)?)
    } else {
        let mut breaks = Vec::new();
        let mut values = Vec::new();
        for (i, (n, l)) in ns.iter().zip(&ls).enumerate() {
            let a = Rat::new(BigInt::one(), (BigInt::one() << (i + 1)) * l);
            if i > 0 {
                values.push(Rat::zero());
            }
            breaks.push(Rat::from_integer(n.clone()));
            breaks.push(Rat::from_integer(n + l));
            values.push(a.clone());
            amplitudes.push(a);
        }
        Construction::Step(StepFunction::new(breaks, values)?)
    };
    let theorem = if continuous {
        Theorem::T27Continuous
    } else {
        Theorem::T27Discrete
    };
    let cert = ConstructionCertificate {
        theorem,
        mode: mode.label().into(),
        growth: Some(g.label()),
        alpha: None,
        p: None,
        first_block: 1,
        n: ns,
        l: ls,
        amplitudes: amplitudes.iter().map(format_rat).collect(),
        points: Vec::new(),
        threshold_k: None,
        verifiable: Vec::new(),
        conditions,
        notes,
        blocks: construction.blocks().map(|b| b.blocks().to_vec()).unwrap_or_default(),
    };
    Ok((construction, cert))
}

/// `N_1`, then `N_(k+1)` from the mode's growth rule (default `N_k^10`).
fn tower(n1: BigInt, k_max: u32, mode: &Mode, notes: &mut Vec<String>) -> Vec<BigInt> {
    let growth = mode
        .relaxation()
        .and_then(|r| r.growth.clone())
        .unwrap_or(Growth::Exponent(10));
    if mode.relaxation().is_some() {
        notes.push(growth.describe());
    }
    let mut ns = vec![n1];
    while ns.len() < k_max as usize {
        let next = growth.next(ns.last().expect("non-empty"));
        ns.push(next);
    }
    ns
}

fn tower_conditions(ns: &[BigInt], mode: &Mode, conditions: &mut Vec<Condition>) {
    for k in 1..ns.len() {
        let holds = ns[k] == num_traits::pow(ns[k - 1].clone(), 10);
        conditions.push(condition(
            format!("tower_{}", k + 1),
            holds,
            format!("N_{} = N_{}^10", k + 1, k),
            mode,
        ));
    }
}

/// Indicators of `[N_k + 1, N_k + L_k]` for `k = 2..=k_max`, with
/// `L_k = floor(N_k / 3)`, `N_1 = 2`, `N_(k+1) = N_k^10`.
pub fn build_theorem29_linf(k_max: u32, mode: &Mode) -> Result<(BlockSignal, ConstructionCertificate)> {
    if k_max < 3 {
        return Err(Error::ParameterViolation("k_max must be at least 3".into()));
    }
    let mut notes = Vec::new();
    let n1 = mode
        .relaxation()
        .and_then(|r| r.n1.clone())
        .unwrap_or_else(|| BigInt::from(2));
    let ns = tower(n1, k_max, mode, &mut notes);
    let ls: Vec<BigInt> = ns.iter().map(|n| n / 3).collect();
    let mut conditions = vec![condition(
        "start_is_2".into(),
        ns[0] == BigInt::from(2),
        "N_1 = 2".into(),
        mode,
    )];
    tower_conditions(&ns, mode, &mut conditions);
    // the comparison radii beyond L_k stay below 5/12 when the earlier
    // blocks are sparse: 12 (L_2 + ... + L_k) < 5 N_k
    let mut partial = BigInt::zero();
    for k in 2..=k_max as usize {
        partial += &ls[k - 1];
        conditions.push(condition(
            format!("sparse_{k}"),
            &partial * 12 < &ns[k - 1] * 5,
            format!("12 (L_2 + ... + L_{k}) < 5 N_{k}"),
            mode,
        ));
    }
    // smallest k >= 2 with L_k / (2 L_k + 1) > 5/12, i.e. L_k >= 3
    let threshold_k = (2..=k_max).find(|&k| ls[k as usize - 1] >= BigInt::from(3));
    let blocks: Vec<Block> = (2..=k_max as usize)
        .map(|k| {
            let (n, l) = (&ns[k - 1], &ls[k - 1]);
            Block::constant(n + 1, n + l, Rat::one())
        })
        .collect();
    if blocks.iter().any(|b| b.start > b.end) {
        return Err(Error::InfeasibleConstraint("some L_k is zero".into()));
    }
    let signal = BlockSignal::new(blocks)?;
    let cert = ConstructionCertificate {
        theorem: Theorem::T29Linf,
        mode: mode.label().into(),
        growth: None,
        alpha: None,
        p: None,
        first_block: 2,
        points: ns.clone(),
        n: ns,
        l: ls,
        amplitudes: vec!["1".into(); k_max as usize - 1],
        threshold_k,
        verifiable: Vec::new(),
        conditions,
        notes,
        blocks: signal.blocks().to_vec(),
    };
    Ok((signal, cert))
}

/// `n^-alpha` on `[N_k + 1, N_k + L_k]` for `k = 1..=k_max`, probed at
/// `n_k = N_k + L_k + 1`. Exact mode starts at `N_1 = 2^ceil(10 / (1 - alpha))`.
pub fn build_theorem29_lp(
    p: &Rat,
    alpha: &Rat,
    k_max: u32,
    mode: &Mode,
    caps: &Caps,
) -> Result<(BlockSignal, ConstructionCertificate)> {
    if *p <= Rat::one() {
        return Err(Error::ParameterViolation("p must exceed 1".into()));
    }
    if !alpha.is_positive() || *alpha >= Rat::one() {
        return Err(Error::ParameterViolation("alpha must lie in (0, 1)".into()));
    }
    if alpha * p <= Rat::one() {
        return Err(Error::ParameterViolation(format!(
            "alpha * p = {} must exceed 1",
            format_rat(&(alpha * p))
        )));
    }
    if k_max == 0 {
        return Err(Error::ParameterViolation("k_max must be at least 1".into()));
    }
    let exponent = ceil_rat(&(Rat::from_integer(BigInt::from(10)) / (Rat::one() - alpha)));
    let exact_n1 = BigInt::one() << exponent.to_u32().expect("alpha is a small rational");
    let mut notes = Vec::new();
    let n1 = mode.relaxation().and_then(|r| r.n1.clone()).unwrap_or(exact_n1.clone());
    let ns = tower(n1, k_max, mode, &mut notes);
    let ls: Vec<BigInt> = ns.iter().map(|n| n / 3).collect();
    let mut conditions = vec![
        condition("alpha_p_above_1".into(), true, "alpha * p > 1".into(), mode),
        condition(
            "start_power".into(),
            ns[0] == exact_n1,
            format!("N_1 = 2^{exponent}"),
            mode,
        ),
    ];
    tower_conditions(&ns, mode, &mut conditions);
    let verifiable: Vec<bool> = ls
        .iter()
        .map(|l| l.to_u64().is_some_and(|v| v <= caps.summation_cap))
        .collect();
    for (k, v) in verifiable.iter().enumerate() {
        if !v {
            notes.push(format!(
                "block {} has length {} above the summation cap {}",
                k + 1,
                ls[k],
                caps.summation_cap
            ));
        }
    }
    let blocks: Vec<Block> = ns
        .iter()
        .zip(&ls)
        .map(|(n, l)| Block::power_law(n + 1, n + l, alpha.clone()))
        .collect();
    if ls.iter().any(Zero::is_zero) {
        return Err(Error::InfeasibleConstraint("some L_k is zero".into()));
    }
    let signal = BlockSignal::with_caps(blocks, caps.clone())?;
    let points = ns.iter().zip(&ls).map(|(n, l)| n + l + 1).collect();
    let cert = ConstructionCertificate {
        theorem: Theorem::T29Lp,
        mode: mode.label().into(),
        growth: None,
        alpha: Some(format_rat(alpha)),
        p: Some(format_rat(p)),
        first_block: 1,
        n: ns,
        l: ls,
        amplitudes: vec![format!("powerlaw:{}", format_rat(alpha)); k_max as usize],
        points,
        threshold_k: None,
        verifiable,
        conditions,
        notes,
        blocks: signal.blocks().to_vec(),
    };
    Ok((signal, cert))
}

/// Largest prefix of blocks whose lengths all fit under the summation cap.
pub fn verifiable_prefix(cert: &ConstructionCertificate) -> usize {
    cert.verifiable.iter().take_while(|v| **v).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::signal::Signal;
    use crate::value::Value;

    #[test]
    fn dirac_block() {
        let d = dirac();
        assert_eq!(d.blocks().len(), 1);
        assert_eq!(d.norm_l1().unwrap(), Value::Exact(rat(1, 1)));
    }

    #[test]
    fn log_discrete_parameters() {
        let (c, cert) = build_theorem27(&GrowthSpec::Log, 4, &Mode::PaperExact, false, DEFAULT_CEILING_BITS).unwrap();
        // e^2.5, e^5, e^10, e^20 rounded up, each above 10 N_(k-1)
        assert_eq!(cert.n, vec![int(13), int(149), int(22027), int(485_165_196)]);
        assert_eq!(cert.l[0], int(6));
        assert!(cert.conditions.iter().all(|c| c.status == Status::Satisfied));
        let s = c.blocks().unwrap();
        assert_eq!(s.norm_l1().unwrap(), Value::Exact(rat(15, 16)));
    }

    #[test]
    fn continuous_variant_masses() {
        let (c, cert) = build_theorem27(&GrowthSpec::Log, 3, &Mode::PaperExact, true, DEFAULT_CEILING_BITS).unwrap();
        let step = c.step().unwrap();
        let total = crate::continuum::integral(
            step,
            step.breakpoints().first().unwrap(),
            step.breakpoints().last().unwrap(),
        )
        .unwrap();
        assert_eq!(total, rat(7, 8));
        assert_eq!(cert.theorem, Theorem::T27Continuous);
    }

    #[test]
    fn infeasible_below_ceiling() {
        let r = build_theorem27(&GrowthSpec::LogLog, 3, &Mode::PaperExact, false, 64);
        assert!(matches!(r, Err(Error::InfeasibleConstraint(_))));
    }

    #[test]
    fn linf_exact_parameters() {
        let (s, cert) = build_theorem29_linf(5, &Mode::PaperExact).unwrap();
        assert_eq!(cert.n[1], int(1024));
        assert_eq!(cert.l[1], int(341));
        assert_eq!(cert.n[4], BigInt::one() << 10000u32);
        assert_eq!(cert.threshold_k, Some(2));
        assert_eq!(s.blocks().len(), 4);
        assert!(cert.conditions.iter().all(|c| c.status == Status::Satisfied));
    }

    #[test]
    fn lp_parameters() {
        let caps = Caps::default();
        let relaxed = Mode::Relaxed(Relaxation {
            n1: Some(int(100)),
            growth: Some(Growth::Factor(int(10))),
        });
        let (_, cert) = build_theorem29_lp(&rat(2, 1), &rat(3, 5), 4, &relaxed, &caps).unwrap();
        assert_eq!(cert.points[0], int(134));
        assert_eq!(cert.l[3], int(33333));
        assert_eq!(verifiable_prefix(&cert), 4);
        let (_, exact) = build_theorem29_lp(&rat(2, 1), &rat(3, 5), 2, &Mode::PaperExact, &caps).unwrap();
        assert_eq!(exact.n[0], BigInt::one() << 25u32);
        assert_eq!(verifiable_prefix(&exact), 0);
        assert!(matches!(
            build_theorem29_lp(&rat(2, 1), &rat(1, 2), 4, &relaxed, &caps),
            Err(Error::ParameterViolation(_))
        ));
    }
}
