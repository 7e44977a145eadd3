//! Nonnegative, finitely supported signals on the integers.
//!
//! [`DenseSignal`] stores every value of a short window. [`BlockSignal`] stores
//! a sorted list of disjoint blocks with big-integer endpoints, each either
//! constant or following the power law `n^(-alpha)`. Window sums over a block
//! signal cost `O(log B)` once the per-block prefix tables are built, no matter
//! how far apart the blocks are.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixed::{powerlaw_floor, powerlaw_term};
use crate::rational::{common_denominator, is_nonnegative, Rat};
use crate::value::Value;

/// Resource limits shared by the signal and engine code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Widest range that may be materialized densely.
    pub dense_width_cap: u64,
    /// Longest power-law range that may be summed term by term.
    pub summation_cap: u64,
    /// Working precision of power-law enclosures.
    pub precision_bits: u32,
    /// Longest power-law block whose prefix sums are tabulated.
    pub prefix_cache_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dense_width_cap: 100_000_000,
            summation_cap: 10_000_000,
            precision_bits: 256,
            prefix_cache_cap: 1 << 22,
        }
    }
}

/// Common read interface of both signal representations.
pub trait Signal {
    fn eval(&self, n: &BigInt) -> Value;

    /// `sum_{n=a}^{b} f(n)`; an empty range (`a > b`) sums to zero.
    fn window_sum(&self, a: &BigInt, b: &BigInt) -> Result<Value>;

    /// Smallest interval containing every nonzero point, `None` for the zero signal.
    fn support_bounds(&self) -> Option<(BigInt, BigInt)>;

    fn norm_l1(&self) -> Result<Value> {
        match self.support_bounds() {
            Some((lo, hi)) => self.window_sum(&lo, &hi),
            None => Ok(Value::zero()),
        }
    }

    fn is_zero(&self) -> bool {
        self.support_bounds().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSignal {
    lo: BigInt,
    values: Vec<Rat>,
    prefix: Vec<Rat>,
}

impl DenseSignal {
    /// Builds a dense signal, trimming leading and trailing zeros.
    pub fn new(lo: BigInt, values: Vec<Rat>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !is_nonnegative(v)) {
            return Err(Error::InvalidSignal(format!("negative value {v}")));
        }
        let first = values.iter().position(|v| !v.is_zero());
        let (lo, values) = match first {
            None => (BigInt::zero(), Vec::new()),
            Some(first) => {
                let last = values.iter().rposition(|v| !v.is_zero()).unwrap_or(first);
                (lo + first, values[first..=last].to_vec())
            }
        };
        let mut prefix = Vec::with_capacity(values.len() + 1);
        prefix.push(Rat::zero());
        for v in &values {
            let next = prefix[prefix.len() - 1].clone() + v;
            prefix.push(next);
        }
        Ok(DenseSignal { lo, values, prefix })
    }

    pub fn zero() -> Self {
        DenseSignal {
            lo: BigInt::zero(),
            values: Vec::new(),
            prefix: vec![Rat::zero()],
        }
    }

    /// The unit mass at the origin.
    pub fn dirac() -> Self {
        DenseSignal::new(BigInt::zero(), vec![Rat::one()]).expect("valid")
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn width(&self) -> usize {
        self.values.len()
    }

    /// One block per maximal run of equal nonzero values.
    pub fn to_blocks(&self) -> BlockSignal {
        let mut blocks: Vec<Block> = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let n = &self.lo + i;
            if let Some(last) = blocks.last_mut() {
                if last.end.clone() + 1 == n && last.amp == Amplitude::Const(v.clone()) {
                    last.end = n;
                    continue;
                }
            }
            blocks.push(Block::constant(n.clone(), n, v.clone()));
        }
        BlockSignal::new(blocks).expect("runs of a dense signal form a valid block signal")
    }

    pub fn scaled(&self, c: &Rat) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::InvalidSignal("negative scale factor".into()));
        }
        DenseSignal::new(self.lo.clone(), self.values.iter().map(|v| v * c).collect())
    }

    pub fn shifted(&self, m: &BigInt) -> Self {
        DenseSignal::new(&self.lo + m, self.values.clone()).expect("valid")
    }

    /// `n -> f(-n)`.
    pub fn reflected(&self) -> Self {
        if self.values.is_empty() {
            return self.clone();
        }
        let hi = &self.lo + (self.values.len() - 1);
        let values = self.values.iter().rev().cloned().collect();
        DenseSignal::new(-hi, values).expect("valid")
    }

    fn index(&self, n: &BigInt) -> Option<usize> {
        let off = n - &self.lo;
        if off.is_negative() {
            return None;
        }
        off.to_usize().filter(|&i| i < self.values.len())
    }

    /// Exact window sum in rational arithmetic.
    pub fn window_sum_exact(&self, a: &BigInt, b: &BigInt) -> Rat {
        if self.values.is_empty() || a > b {
            return Rat::zero();
        }
        let hi = &self.lo + (self.values.len() - 1);
        let a = a.max(&self.lo).clone();
        let b = b.min(&hi).clone();
        if a > b {
            return Rat::zero();
        }
        let i = (&a - &self.lo).to_usize().expect("in range");
        let j = (&b - &self.lo).to_usize().expect("in range");
        &self.prefix[j + 1] - &self.prefix[i]
    }
}

impl Signal for DenseSignal {
    fn eval(&self, n: &BigInt) -> Value {
        match self.index(n) {
            Some(i) => Value::Exact(self.values[i].clone()),
            None => Value::zero(),
        }
    }

    fn window_sum(&self, a: &BigInt, b: &BigInt) -> Result<Value> {
        Ok(Value::Exact(self.window_sum_exact(a, b)))
    }

    fn support_bounds(&self) -> Option<(BigInt, BigInt)> {
        if self.values.is_empty() {
            None
        } else {
            Some((self.lo.clone(), &self.lo + (self.values.len() - 1)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Amplitude {
    Const(Rat),
    /// `f(n) = n^(-alpha)` with `alpha` in (0, 1).
    PowerLaw(Rat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: BigInt,
    /// Inclusive.
    pub end: BigInt,
    pub amp: Amplitude,
}

impl Block {
    pub fn constant(start: BigInt, end: BigInt, q: Rat) -> Self {
        Block {
            start,
            end,
            amp: Amplitude::Const(q),
        }
    }

    pub fn power_law(start: BigInt, end: BigInt, alpha: Rat) -> Self {
        Block {
            start,
            end,
            amp: Amplitude::PowerLaw(alpha),
        }
    }

    pub fn len(&self) -> BigInt {
        &self.end - &self.start + 1
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        &self.start <= n && n <= &self.end
    }
}

/// What the signal looks like at a position: the engines reason per piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Piece<'a> {
    Flat,
    PowerLaw(&'a Rat),
}

/// Integer interval `[lo, hi]` of numerators over [`BlockSignal::scale`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ScaledSum {
    pub lo: BigInt,
    pub hi: BigInt,
}

impl ScaledSum {
    fn zero() -> Self {
        ScaledSum {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
        }
    }

    fn add(&mut self, other: &ScaledSum) {
        self.lo += &other.lo;
        self.hi += &other.hi;
    }

    fn sub(&self, other: &ScaledSum) -> ScaledSum {
        ScaledSum {
            lo: &self.lo - &other.lo,
            hi: &self.hi - &other.hi,
        }
    }
}

#[derive(Debug)]
pub struct BlockSignal {
    blocks: Vec<Block>,
    caps: Caps,
    /// lcm of the constant amplitudes' denominators
    const_den: BigInt,
    /// every window sum is an integer interval over this scale
    scale: BigInt,
    /// constant amplitudes multiplied by `scale`
    scaled_amp: Vec<Option<BigInt>>,
    /// per power-law block: prefix sums of `floor(2^bits * m^-alpha)`
    pl_prefix: Vec<OnceLock<Option<Vec<BigInt>>>>,
    /// cumulative full-block sums, `None` if some block cannot be summed
    block_prefix: OnceLock<Option<Vec<ScaledSum>>>,
}

impl Clone for BlockSignal {
    fn clone(&self) -> Self {
        BlockSignal::with_caps(self.blocks.clone(), self.caps.clone()).expect("already validated")
    }
}

impl PartialEq for BlockSignal {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl BlockSignal {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        Self::with_caps(blocks, Caps::default())
    }

    pub fn with_caps(blocks: Vec<Block>, caps: Caps) -> Result<Self> {
        if caps.dense_width_cap == 0 || caps.summation_cap == 0 || caps.precision_bits == 0 {
            return Err(Error::InvalidSignal("caps must be positive".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.start > b.end {
                return Err(Error::InvalidSignal(format!("block {i} has start > end")));
            }
            if i > 0 && blocks[i - 1].end >= b.start {
                return Err(Error::InvalidSignal(format!(
                    "block {i} overlaps or precedes block {}",
                    i - 1
                )));
            }
            match &b.amp {
                Amplitude::Const(q) if !is_nonnegative(q) => {
                    return Err(Error::InvalidSignal(format!("block {i} has negative amplitude")));
                }
                Amplitude::PowerLaw(alpha) => {
                    if !(alpha.is_positive() && *alpha < Rat::one()) {
                        return Err(Error::InvalidSignal(format!(
                            "block {i}: power-law exponent must lie in (0, 1)"
                        )));
                    }
                    if b.start < BigInt::one() {
                        return Err(Error::InvalidSignal(format!(
                            "block {i}: power-law blocks must start at n >= 1"
                        )));
                    }
                }
                _ => {}
            }
        }
        let consts: Vec<&Rat> = blocks
            .iter()
            .filter_map(|b| match &b.amp {
                Amplitude::Const(q) => Some(q),
                Amplitude::PowerLaw(_) => None,
            })
            .collect();
        let const_den = common_denominator(consts);
        let has_pl = blocks.iter().any(|b| matches!(b.amp, Amplitude::PowerLaw(_)));
        let scale = if has_pl {
            &const_den << caps.precision_bits
        } else {
            const_den.clone()
        };
        let scaled_amp = blocks
            .iter()
            .map(|b| match &b.amp {
                Amplitude::Const(q) => Some(q.numer() * (&scale / q.denom())),
                Amplitude::PowerLaw(_) => None,
            })
            .collect();
        let pl_prefix = blocks.iter().map(|_| OnceLock::new()).collect();
        Ok(BlockSignal {
            blocks,
            caps,
            const_den,
            scale,
            scaled_amp,
            pl_prefix,
            block_prefix: OnceLock::new(),
        })
    }

    pub fn zero() -> Self {
        BlockSignal::new(Vec::new()).expect("valid")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn has_power_law(&self) -> bool {
        self.blocks.iter().any(|b| matches!(b.amp, Amplitude::PowerLaw(_)))
    }

    /// Same blocks under different caps.
    pub fn with_new_caps(&self, caps: Caps) -> Result<Self> {
        BlockSignal::with_caps(self.blocks.clone(), caps)
    }

    /// Keeps only the first `count` blocks.
    pub fn truncated(&self, count: usize) -> Self {
        let blocks = self.blocks.iter().take(count).cloned().collect();
        BlockSignal::with_caps(blocks, self.caps.clone()).expect("prefix of a valid signal")
    }

    pub fn scaled(&self, c: &Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidSignal("scale factor must be positive".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| match &b.amp {
                Amplitude::Const(q) => Ok(Block::constant(b.start.clone(), b.end.clone(), q * c)),
                Amplitude::PowerLaw(_) => Err(Error::InvalidSignal("power-law blocks cannot be rescaled".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        BlockSignal::with_caps(blocks, self.caps.clone())
    }

    pub fn shifted(&self, m: &BigInt) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                start: &b.start + m,
                end: &b.end + m,
                amp: b.amp.clone(),
            })
            .collect();
        BlockSignal::with_caps(blocks, self.caps.clone())
    }

    /// `n -> f(-n)`; only constant blocks can be reflected.
    pub fn reflected(&self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .rev()
            .map(|b| match &b.amp {
                Amplitude::Const(q) => Ok(Block::constant(-&b.end, -&b.start, q.clone())),
                Amplitude::PowerLaw(_) => Err(Error::InvalidSignal("power-law blocks cannot be reflected".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        BlockSignal::with_caps(blocks, self.caps.clone())
    }

    /// Materializes the support densely, refusing widths above the cap.
    pub fn to_dense(&self) -> Result<DenseSignal> {
        let Some((lo, hi)) = self.support_bounds() else {
            return Ok(DenseSignal::zero());
        };
        let width: BigInt = &hi - &lo + 1;
        if width > BigInt::from(self.caps.dense_width_cap) {
            return Err(Error::MaterializationTooLarge {
                width: width.to_string(),
                cap: self.caps.dense_width_cap,
            });
        }
        let w = width.to_usize().expect("under cap");
        let mut values = vec![Rat::zero(); w];
        for b in &self.blocks {
            let Amplitude::Const(q) = &b.amp else {
                return Err(Error::InvalidSignal(
                    "power-law values are irrational and cannot be stored densely".into(),
                ));
            };
            let s = (&b.start - &lo).to_usize().expect("in range");
            let e = (&b.end - &lo).to_usize().expect("in range");
            for v in &mut values[s..=e] {
                *v = q.clone();
            }
        }
        DenseSignal::new(lo, values)
    }

    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Index of the block containing `n`.
    pub(crate) fn block_at(&self, n: &BigInt) -> Option<usize> {
        let i = self.blocks.partition_point(|b| &b.end < n);
        (i < self.blocks.len() && self.blocks[i].start <= *n).then_some(i)
    }

    pub(crate) fn piece_at(&self, n: &BigInt) -> Piece<'_> {
        match self.block_at(n).map(|i| &self.blocks[i].amp) {
            Some(Amplitude::PowerLaw(alpha)) => Piece::PowerLaw(alpha),
            _ => Piece::Flat,
        }
    }

    fn pl_table(&self, i: usize) -> Option<&Vec<BigInt>> {
        self.pl_prefix[i]
            .get_or_init(|| {
                let b = &self.blocks[i];
                let Amplitude::PowerLaw(alpha) = &b.amp else {
                    return None;
                };
                let len = b.len().to_u64()?;
                if len > self.caps.prefix_cache_cap || len > self.caps.summation_cap {
                    return None;
                }
                let mut table = Vec::with_capacity(len as usize + 1);
                let mut acc = BigInt::zero();
                table.push(acc.clone());
                let mut m = b.start.clone();
                for _ in 0..len {
                    acc += powerlaw_floor(&m, alpha, self.caps.precision_bits);
                    table.push(acc.clone());
                    m += 1;
                }
                Some(table)
            })
            .as_ref()
    }

    /// Scaled sum of block `i` over `[x, y]`, which must lie inside the block.
    fn block_partial(&self, i: usize, x: &BigInt, y: &BigInt) -> Result<ScaledSum> {
        let b = &self.blocks[i];
        let count: BigInt = y - x + 1;
        match &b.amp {
            Amplitude::Const(_) => {
                let v: BigInt = self.scaled_amp[i].as_ref().expect("constant block") * &count;
                Ok(ScaledSum { lo: v.clone(), hi: v })
            }
            Amplitude::PowerLaw(alpha) => {
                let floor_sum = if let Some(table) = self.pl_table(i) {
                    let xi = (x - &b.start).to_usize().expect("in block");
                    let yi = (y - &b.start).to_usize().expect("in block");
                    &table[yi + 1] - &table[xi]
                } else {
                    if count > BigInt::from(self.caps.summation_cap) {
                        return Err(Error::PowerLawRangeTooLarge {
                            len: count.to_string(),
                            cap: self.caps.summation_cap,
                        });
                    }
                    let mut acc = BigInt::zero();
                    let mut m = x.clone();
                    while &m <= y {
                        acc += powerlaw_floor(&m, alpha, self.caps.precision_bits);
                        m += 1;
                    }
                    acc
                };
                // each floor term is within one unit below the true term
                Ok(ScaledSum {
                    lo: &floor_sum * &self.const_den,
                    hi: (floor_sum + &count) * &self.const_den,
                })
            }
        }
    }

    fn full_prefix(&self) -> Option<&Vec<ScaledSum>> {
        self.block_prefix
            .get_or_init(|| {
                let mut out = Vec::with_capacity(self.blocks.len() + 1);
                let mut acc = ScaledSum::zero();
                out.push(acc.clone());
                for (i, b) in self.blocks.iter().enumerate() {
                    acc.add(&self.block_partial(i, &b.start, &b.end).ok()?);
                    out.push(acc.clone());
                }
                Some(out)
            })
            .as_ref()
    }

    /// Window sum as an integer interval over [`Self::scale`].
    pub(crate) fn scaled_sum(&self, a: &BigInt, b: &BigInt) -> Result<ScaledSum> {
        if a > b || self.blocks.is_empty() {
            return Ok(ScaledSum::zero());
        }
        let i = self.blocks.partition_point(|blk| &blk.end < a);
        let j_end = self.blocks.partition_point(|blk| &blk.start <= b);
        if i >= j_end {
            return Ok(ScaledSum::zero());
        }
        let j = j_end - 1;
        let bi = &self.blocks[i];
        if i == j {
            return self.block_partial(i, a.max(&bi.start), b.min(&bi.end));
        }
        let bj = &self.blocks[j];
        let mut total = self.block_partial(i, a.max(&bi.start), &bi.end)?;
        if j > i + 1 {
            match self.full_prefix() {
                Some(prefix) => total.add(&prefix[j].sub(&prefix[i + 1])),
                None => {
                    for k in i + 1..j {
                        let bk = &self.blocks[k];
                        total.add(&self.block_partial(k, &bk.start, &bk.end)?);
                    }
                }
            }
        }
        total.add(&self.block_partial(j, &bj.start, b.min(&bj.end))?);
        Ok(total)
    }

    pub(crate) fn scaled_to_value(&self, s: &ScaledSum) -> Value {
        Value::enclosure(
            Rat::new(s.lo.clone(), self.scale.clone()),
            Rat::new(s.hi.clone(), self.scale.clone()),
        )
    }
}

impl Signal for BlockSignal {
    fn eval(&self, n: &BigInt) -> Value {
        match self.block_at(n) {
            None => Value::zero(),
            Some(i) => match &self.blocks[i].amp {
                Amplitude::Const(q) => Value::Exact(q.clone()),
                Amplitude::PowerLaw(alpha) => powerlaw_term(n, alpha, self.caps.precision_bits).to_value(),
            },
        }
    }

    fn window_sum(&self, a: &BigInt, b: &BigInt) -> Result<Value> {
        Ok(self.scaled_to_value(&self.scaled_sum(a, b)?))
    }

    fn support_bounds(&self) -> Option<(BigInt, BigInt)> {
        // zero-amplitude blocks do not count as support
        let nonzero = |b: &&Block| !matches!(&b.amp, Amplitude::Const(q) if q.is_zero());
        let first = self.blocks.iter().find(nonzero)?;
        let last = self.blocks.iter().rev().find(nonzero)?;
        Some((first.start.clone(), last.end.clone()))
    }
}

/// Either representation, for drivers that accept both.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySignal {
    Dense(DenseSignal),
    Blocks(BlockSignal),
}

impl Signal for AnySignal {
    fn eval(&self, n: &BigInt) -> Value {
        match self {
            AnySignal::Dense(s) => s.eval(n),
            AnySignal::Blocks(s) => s.eval(n),
        }
    }

    fn window_sum(&self, a: &BigInt, b: &BigInt) -> Result<Value> {
        match self {
            AnySignal::Dense(s) => s.window_sum(a, b),
            AnySignal::Blocks(s) => s.window_sum(a, b),
        }
    }

    fn support_bounds(&self) -> Option<(BigInt, BigInt)> {
        match self {
            AnySignal::Dense(s) => s.support_bounds(),
            AnySignal::Blocks(s) => s.support_bounds(),
        }
    }
}
