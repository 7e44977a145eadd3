//! Verification suites with machine-readable verdicts.
//!
//! Each suite builds its signal, re-checks the construction certificate and
//! evaluates the frequency claims with the event engines. A claim is either
//! "certified exact" (all compared values are exact rationals) or
//! "enclosure-based" (some value is a certified interval).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use crate::analysis::{certify_block_zero, density_series, DensityOptions};
use crate::constructions::{
    build_theorem27, build_theorem29_linf, build_theorem29_lp, dirac, recheck, recheck_passes, verifiable_prefix,
    Condition, ConstructionCertificate, Mode,
};
use crate::continuum::maximal_centered_cont;
use crate::error::Result;
use crate::growth::GrowthSpec;
use crate::io::certificate_to_json;
use crate::maxengine::{event_centered, event_uncentered, CenteredResult};
use crate::rational::{format_rat, format_sci, Rat, Rounding};
use crate::signal::{Amplitude, AnySignal, BlockSignal, Caps};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Outside the resource caps; neither confirmed nor refuted.
    Unverifiable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unverifiable => "unverifiable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    CertifiedExact,
    EnclosureBased,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::CertifiedExact => "certified exact",
            Basis::EnclosureBased => "enclosure-based",
        }
    }

    fn of(v: &Value) -> Self {
        if v.is_exact() {
            Basis::CertifiedExact
        } else {
            Basis::EnclosureBased
        }
    }

    fn and(self, other: Basis) -> Basis {
        if self == Basis::CertifiedExact && other == Basis::CertifiedExact {
            Basis::CertifiedExact
        } else {
            Basis::EnclosureBased
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub claim: String,
    pub verdict: Verdict,
    pub basis: Basis,
    pub detail: String,
}

impl Claim {
    fn new(claim: impl Into<String>, holds: bool, basis: Basis, detail: impl Into<String>) -> Self {
        Claim {
            claim: claim.into(),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            basis,
            detail: detail.into(),
        }
    }
}

/// Overall result, mapped to the process exit code by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Nothing failed but nothing could be checked within the caps.
    CapExceeded,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub subject: String,
    /// `paper_exact` or `relaxed`.
    pub provenance: String,
    pub certificate: Option<ConstructionCertificate>,
    pub recheck: Vec<Condition>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn outcome(&self) -> Outcome {
        let exact = self.provenance == "paper_exact";
        if !recheck_passes(&self.recheck, exact) || self.claims.iter().any(|c| c.verdict == Verdict::Fail) {
            Outcome::Fail
        } else if self.claims.iter().any(|c| c.verdict == Verdict::Pass) {
            Outcome::Pass
        } else {
            Outcome::CapExceeded
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome() == Outcome::Pass
    }

    pub fn to_json(&self) -> Json {
        json!({
            "subject": self.subject,
            "provenance": self.provenance,
            "outcome": match self.outcome() {
                Outcome::Pass => "pass",
                Outcome::Fail => "fail",
                Outcome::CapExceeded => "cap_exceeded",
            },
            "certificate": self.certificate.as_ref().map(certificate_to_json),
            "recheck": self.recheck.iter().map(|c| json!({
                "name": c.name, "status": c.status.label(), "note": c.note,
            })).collect::<Vec<_>>(),
            "claims": self.claims.iter().map(|c| json!({
                "claim": c.claim,
                "verdict": c.verdict.label(),
                "basis": c.basis.label(),
                "provenance": self.provenance,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn with_certificate(subject: &str, cert: ConstructionCertificate, claims: Vec<Claim>) -> Result<Report> {
    Ok(Report {
        subject: subject.into(),
        provenance: cert.mode.clone(),
        recheck: recheck(&cert)?,
        certificate: Some(cert),
        claims,
    })
}

/// A centered result must be certified for its radius to count.
fn settled(c: &CenteredResult) -> std::result::Result<Basis, String> {
    if c.certified {
        Ok(Basis::of(&c.max_value))
    } else {
        Err(format!(
            "undecided tie at n = {}, overlap {}",
            c.n,
            c.tie_gap.as_ref().map(format_rat).unwrap_or_default()
        ))
    }
}

/// `r_n = |n|`, `Mf(n) = 1/(2|n|+1)` and minimal diameter `|n|` for the unit
/// mass, over `|n| <= radius`.
pub fn verify_delta(radius: u64) -> Result<Report> {
    let f = dirac();
    let mut first_r = None;
    let mut first_m = None;
    let mut first_d = None;
    let r = radius as i64;
    for n in -r..=r {
        let nb = BigInt::from(n);
        let abs = nb.abs();
        let c = event_centered(&f, &nb)?;
        let want = Value::Exact(Rat::new(BigInt::one(), &abs * 2 + 1));
        if first_r.is_none() && (c.r_n != abs || !c.certified) {
            first_r = Some(format!("n = {n}: r_n = {}", c.r_n));
        }
        if first_m.is_none() && c.max_value != want {
            first_m = Some(format!("n = {n}: Mf = {}", c.max_value.render()));
        }
        let u = event_uncentered(&f, &nb)?;
        if first_d.is_none() && (u.min_diameter != abs || !u.certified) {
            first_d = Some(format!("n = {n}: min_diameter = {}", u.min_diameter));
        }
    }
    let count = 2 * radius + 1;
    let claim = |name: String, miss: Option<String>| {
        let ok = miss.is_none();
        Claim::new(
            name,
            ok,
            Basis::CertifiedExact,
            miss.unwrap_or_else(|| format!("{count} points checked")),
        )
    };
    Ok(Report {
        subject: "delta".into(),
        provenance: "paper_exact".into(),
        certificate: None,
        recheck: Vec::new(),
        claims: vec![
            claim(format!("r_n = |n| for |n| <= {radius}"), first_r),
            claim(format!("Mf(n) = 1/(2|n|+1) for |n| <= {radius}"), first_m),
            claim(format!("min_diameter = |n| for |n| <= {radius}"), first_d),
        ],
    })
}

/// Budget for the block-by-block check of the log-type construction.
#[derive(Clone, Debug)]
pub struct Theorem27Options {
    pub g: GrowthSpec,
    pub k_max: u32,
    pub mode: Mode,
    /// Blocks up to this length are evaluated at every point.
    pub pointwise_cap: u64,
    /// Points evaluated in a longer block, next to its structural bound.
    pub samples: u64,
}

impl Default for Theorem27Options {
    fn default() -> Self {
        Theorem27Options {
            g: GrowthSpec::Log,
            k_max: 4,
            mode: Mode::PaperExact,
            pointwise_cap: 100_000,
            samples: 2_000,
        }
    }
}

/// Points of `[start, end]`: both ends, their neighbours and an even stride.
pub fn sample_points(start: &BigInt, end: &BigInt, count: u64) -> Vec<BigInt> {
    let len: BigInt = end - start + 1;
    let mut pts = Vec::new();
    if len <= BigInt::from(count.max(4)) {
        let mut n = start.clone();
        while &n <= end {
            pts.push(n.clone());
            n += 1;
        }
        return pts;
    }
    let step: BigInt = &len / count.max(1);
    for i in 0..count {
        pts.push(start + &step * i);
    }
    pts.extend([start + 1u32, end - 1u32, end.clone()]);
    pts.sort();
    pts.dedup();
    pts
}

/// Checks that `Mf = a_k` with radius zero at the given points of block `idx`.
fn block_points_zero(signal: &BlockSignal, idx: usize, points: &[BigInt]) -> Result<Option<String>> {
    let Amplitude::Const(a) = &signal.blocks()[idx].amp else {
        return Ok(Some("not a constant block".into()));
    };
    let want = Value::Exact(a.clone());
    for n in points {
        let c = event_centered(signal, n)?;
        if !c.r_n.is_zero() || c.max_value != want || !c.certified {
            return Ok(Some(format!(
                "n = {n}: (Mf, r_n) = ({}, {})",
                c.max_value.render(),
                c.r_n
            )));
        }
    }
    Ok(None)
}

/// The log-type construction: `Mf = a_k` and `r_n = 0` on every block,
/// the same on the line, and the normalized count of zero radii at the
/// last block's right end.
pub fn verify_theorem27(opts: &Theorem27Options) -> Result<Report> {
    let (built, cert) = build_theorem27(
        &opts.g,
        opts.k_max,
        &opts.mode,
        false,
        crate::constructions::DEFAULT_CEILING_BITS,
    )?;
    let signal = built.blocks().expect("discrete construction").clone();
    let mut claims = Vec::new();
    for (i, b) in signal.blocks().iter().enumerate() {
        let k = i + 1;
        let len = b.len();
        let name = format!("Mf = a_{k} and r_n = 0 on I_{k}");
        if len.to_u64().is_some_and(|l| l <= opts.pointwise_cap) {
            let pts = sample_points(&b.start, &b.end, u64::MAX);
            let miss = block_points_zero(&signal, i, &pts)?;
            let detail = miss.clone().unwrap_or_else(|| format!("all {len} points evaluated"));
            claims.push(Claim::new(name, miss.is_none(), Basis::CertifiedExact, detail));
        } else {
            let structural = certify_block_zero(&signal, i, false)?;
            let pts = sample_points(&b.start, &b.end, opts.samples);
            let miss = block_points_zero(&signal, i, &pts)?;
            let detail = match (&miss, structural) {
                (Some(m), _) => m.clone(),
                (None, false) => "structural bound ||f||_1 <= a_k (2G + 1) fails".into(),
                (None, true) => format!(
                    "{len} points covered by the bound ||f||_1 <= a_k (2G + 1); {} sampled points agree",
                    pts.len()
                ),
            };
            claims.push(Claim::new(
                name,
                miss.is_none() && structural,
                Basis::CertifiedExact,
                detail,
            ));
        }
    }
    let last = cert.blocks.len() - 1;
    let top = &cert.n[last] + &cert.l[last];
    let dens = DensityOptions {
        growth: Some(opts.g.clone()),
        ..DensityOptions::default()
    };
    let rows = density_series(&AnySignal::Blocks(signal.clone()), std::slice::from_ref(&top), &dens)?;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let row = &rows[0];
    let ratio = row.ratio_z_norm.clone().expect("growth supplied");
    claims.push(Claim::new(
        format!("|Z_N| g(N) / N > 1/2 at N = {top}"),
        ratio.lo() > &half,
        Basis::EnclosureBased,
        format!(
            "count_Z = {}, ratio in {} ({})",
            row.count_z.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            ratio.render(),
            row.flags.join(";")
        ),
    ));
    let (cont, _) = build_theorem27(
        &opts.g,
        opts.k_max,
        &opts.mode,
        true,
        crate::constructions::DEFAULT_CEILING_BITS,
    )?;
    let step = cont.step().expect("continuous construction");
    for (i, (n, l)) in cert.n.iter().zip(&cert.l).enumerate() {
        let k = i + 1;
        let a = Rat::new(BigInt::one(), (BigInt::one() << k) * l);
        let mut miss = None;
        for j in 1..8 {
            let x = Rat::from_integer(n.clone()) + Rat::new(l * j, BigInt::from(8));
            let res = maximal_centered_cont(step, &x)?;
            if res.max_value != a || !res.radius.is_zero() || !res.attained {
                miss = Some(format!(
                    "x = {}: ({}, {})",
                    format_rat(&x),
                    format_rat(&res.max_value),
                    format_rat(&res.radius)
                ));
                break;
            }
        }
        let detail = miss.clone().unwrap_or_else(|| "7 interior points evaluated".into());
        claims.push(Claim::new(
            format!("on the line: Mf = a_{k} with radius 0 inside I_{k}"),
            miss.is_none(),
            Basis::CertifiedExact,
            detail,
        ));
    }
    with_certificate("theorem27", cert, claims)
}

/// Indicator blocks at a tower of scales: `r_{N_k} = L_k` from the first
/// admissible `k` up to `k_max - 1`, and `r_{N_k} / N_k` close to `1/3`.
pub fn verify_theorem29_linf(k_max: u32, mode: &Mode) -> Result<Report> {
    let (signal, cert) = build_theorem29_linf(k_max, mode)?;
    let mut claims = Vec::new();
    let first = cert.threshold_k.unwrap_or(k_max) as usize;
    let mut last_ratio = None;
    for k in first..k_max as usize {
        let (n, l) = (&cert.n[k - 1], &cert.l[k - 1]);
        let c = event_centered(&signal, n)?;
        match settled(&c) {
            Err(why) => claims.push(Claim::new(
                format!("r_N_{k} = L_{k}"),
                false,
                Basis::CertifiedExact,
                why,
            )),
            Ok(basis) => {
                claims.push(Claim::new(
                    format!("r_N_{k} = L_{k}"),
                    &c.r_n == l,
                    basis,
                    format!("r = {}", c.r_n),
                ));
                let t = Rat::new(c.r_n.clone(), n.clone());
                let inside = Rat::new(1.into(), 4.into()) <= t && t <= Rat::new(3.into(), 4.into());
                claims.push(Claim::new(
                    format!("r_N_{k} / N_{k} in [1/4, 3/4]"),
                    inside,
                    basis,
                    format!("ratio = {}", format_sci(&t, 6, Rounding::Down)),
                ));
                last_ratio = Some((k, t));
            }
        }
    }
    if let Some((k, t)) = last_ratio {
        let gap = (&t - Rat::new(1.into(), 3.into())).abs();
        claims.push(Claim::new(
            format!("|r_N_{k} / N_{k} - 1/3| <= 1/1000"),
            gap <= Rat::new(1.into(), 1000.into()),
            Basis::CertifiedExact,
            format!("distance {}", format_sci(&gap, 4, Rounding::Up)),
        ));
    }
    with_certificate("theorem29-linf", cert, claims)
}

/// Power-law blocks: `r_{n_k} = L_k` at `n_k = N_k + L_k + 1` for every block
/// within the summation cap, and `r_{n_k} / n_k` close to `1/4` at the last.
///
/// When a later block exceeds the cap the probes run on the verifiable prefix
/// of the signal, which the report notes.
pub fn verify_theorem29_lp(p: &Rat, alpha: &Rat, k_max: u32, mode: &Mode, caps: &Caps) -> Result<Report> {
    let (signal, cert) = build_theorem29_lp(p, alpha, k_max, mode, caps)?;
    let prefix = verifiable_prefix(&cert);
    let mut claims = Vec::new();
    let probe = if prefix < signal.blocks().len() {
        signal.truncated(prefix)
    } else {
        signal.clone()
    };
    let mut last_ratio = None;
    for k in 1..=k_max as usize {
        let name = format!("r_n_{k} = L_{k}");
        if k > prefix {
            claims.push(Claim {
                claim: name,
                verdict: Verdict::Unverifiable,
                basis: Basis::EnclosureBased,
                detail: format!(
                    "block length {} exceeds the summation cap {}",
                    cert.l[k - 1],
                    caps.summation_cap
                ),
            });
            continue;
        }
        let (pt, l) = (&cert.points[k - 1], &cert.l[k - 1]);
        let c = event_centered(&probe, pt)?;
        match settled(&c) {
            Err(why) => claims.push(Claim::new(name, false, Basis::EnclosureBased, why)),
            Ok(basis) => {
                let mut detail = format!("r = {}", c.r_n);
                if prefix < signal.blocks().len() {
                    detail.push_str(&format!(", evaluated on blocks 1..={prefix}"));
                }
                claims.push(Claim::new(name, &c.r_n == l, basis, detail));
                let t = Rat::new(c.r_n.clone(), pt.clone());
                let band = (Rat::new(1.into(), 8.into()), Rat::new(7.into(), 8.into()));
                claims.push(Claim::new(
                    format!("r_n_{k} / n_{k} in [1/8, 7/8]"),
                    band.0 <= t && t <= band.1,
                    basis.and(Basis::CertifiedExact),
                    format!("ratio = {}", format_rat(&t)),
                ));
                last_ratio = Some((k, t));
            }
        }
    }
    if let Some((k, t)) = last_ratio {
        let gap = (&t - Rat::new(1.into(), 4.into())).abs();
        claims.push(Claim::new(
            format!("|r_n_{k} / n_{k} - 1/4| <= 1/50"),
            gap <= Rat::new(1.into(), 50.into()),
            Basis::CertifiedExact,
            format!("distance {}", format_rat(&gap)),
        ));
    }
    with_certificate("theorem29-lp", cert, claims)
}
