//! Signatures `(h; [n1,t1], …, [ns,ts])`, skeletal points `(h, r)` and the
//! Riemann-Hurwitz relation in exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Upper bound on the total number of branch points a parsed signature may carry.
pub const MAX_BRANCH_POINTS: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("cannot parse signature {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("branch order {0} is below 2")]
    BadPeriod(u32),
    #[error("more than {MAX_BRANCH_POINTS} branch points")]
    TooManyBranchPoints,
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
}

/// A surface genus `σ ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Genus(u32);

impl Genus {
    pub fn new(sigma: u32) -> Result<Self, SignatureError> {
        if sigma < 2 {
            return Err(SignatureError::GenusTooSmall(sigma));
        }
        Ok(Genus(sigma))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Genus {
    type Error = SignatureError;
    fn try_from(sigma: u32) -> Result<Self, Self::Error> {
        Genus::new(sigma)
    }
}

impl From<Genus> for u32 {
    fn from(g: Genus) -> u32 {
        g.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Quotient genus and number of branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkeletalPoint {
    pub h: u32,
    pub r: u32,
}

impl SkeletalPoint {
    pub const fn new(h: u32, r: u32) -> Self {
        SkeletalPoint { h, r }
    }
}

impl fmt::Display for SkeletalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.r)
    }
}

/// Canonical form: periods ascending, one `[n, t]` pair per distinct order,
/// every `t ≥ 1`. Ordering is by `h`, then the pair list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    h: u32,
    periods: Vec<(u32, u32)>,
}

impl Signature {
    /// Builds a signature from `[n, t]` pairs in any order. Pairs with the
    /// same `n` are merged and zero counts are dropped.
    pub fn new(
        h: u32,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, SignatureError> {
        let mut periods: Vec<(u32, u32)> = Vec::new();
        let mut total: u64 = 0;
        for (n, t) in pairs {
            if t == 0 {
                continue;
            }
            if n < 2 {
                return Err(SignatureError::BadPeriod(n));
            }
            total += t as u64;
            if total > MAX_BRANCH_POINTS as u64 {
                return Err(SignatureError::TooManyBranchPoints);
            }
            periods.push((n, t));
        }
        periods.sort_unstable();
        periods.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        Ok(Signature { h, periods })
    }

    /// Builds a signature from the expanded period list `n1, …, nr`.
    pub fn from_periods(h: u32, periods: &[u32]) -> Result<Self, SignatureError> {
        Signature::new(h, periods.iter().map(|&n| (n, 1)))
    }

    /// `(h; -)`.
    pub fn unbranched(h: u32) -> Self {
        Signature {
            h,
            periods: Vec::new(),
        }
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn periods(&self) -> &[(u32, u32)] {
        &self.periods
    }

    /// Number of branch points of order `n`.
    pub fn count(&self, n: u32) -> u32 {
        self.periods
            .iter()
            .find(|&&(m, _)| m == n)
            .map_or(0, |&(_, t)| t)
    }

    pub fn r(&self) -> u32 {
        self.periods.iter().map(|&(_, t)| t).sum()
    }

    /// Periods as a sorted list with repetition.
    pub fn expanded(&self) -> Vec<u32> {
        self.periods
            .iter()
            .flat_map(|&(n, t)| std::iter::repeat_n(n, t as usize))
            .collect()
    }

    pub fn skeletal(&self) -> SkeletalPoint {
        skeletal(self)
    }
}

pub fn skeletal(sig: &Signature) -> SkeletalPoint {
    SkeletalPoint::new(sig.h, sig.r())
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `1 + |G|(h-1) + (|G|/2) Σ t(1 - 1/n)`.
pub fn rh_genus(order: u64, sig: &Signature) -> BigRational {
    let g = ratio(order as i64);
    let mut branch = BigRational::zero();
    for &(n, t) in &sig.periods {
        let n = n as i64;
        branch += BigRational::new(BigInt::from(t as i64 * (n - 1)), BigInt::from(n));
    }
    BigRational::one() + &g * ratio(sig.h as i64 - 1) + g * branch / ratio(2)
}

pub fn rh_satisfied(order: u64, sig: &Signature, genus: Genus) -> bool {
    rh_genus(order, sig) == ratio(genus.get() as i64)
}

/// The genus as an integer when it is integral and at least 2.
pub fn rh_integral_genus(order: u64, sig: &Signature) -> Option<Genus> {
    let g = rh_genus(order, sig);
    if !g.is_integer() {
        return None;
    }
    u32::try_from(g.to_integer())
        .ok()
        .and_then(|s| Genus::new(s).ok())
}

/// Which signatures [`enumerate_signatures`] yields.
#[derive(Clone, Debug, Default)]
pub struct SignatureConstraints {
    /// Inclusive quotient-genus range; `None` means `0..=σ`.
    pub h_range: Option<(u32, u32)>,
    /// Allowed branch orders; `None` means every order in `2..=4σ+2`.
    pub periods: Option<Vec<u32>>,
    /// Keep only branch orders dividing the group order.
    pub divisors_only: bool,
}

impl SignatureConstraints {
    pub fn periods(periods: impl IntoIterator<Item = u32>) -> Self {
        SignatureConstraints {
            periods: Some(periods.into_iter().collect()),
            ..Default::default()
        }
    }

    pub fn with_h(mut self, lo: u32, hi: u32) -> Self {
        self.h_range = Some((lo, hi));
        self
    }
}

/// Every signature over the allowed branch orders whose Riemann-Hurwitz
/// genus for a group of this order is exactly `genus`, ascending.
pub fn enumerate_signatures(
    order: u64,
    genus: Genus,
    constraints: &SignatureConstraints,
) -> Vec<Signature> {
    let sigma = genus.get() as u64;
    let max_period = 4 * sigma + 2;
    let max_r = 2 * sigma + 2;
    let mut periods: Vec<u32> = match &constraints.periods {
        Some(ps) => ps.clone(),
        None => (2..=max_period as u32).collect(),
    };
    periods.retain(|&n| {
        n >= 2
            && n as u64 <= max_period
            && (!constraints.divisors_only || order.is_multiple_of(n as u64))
    });
    periods.sort_unstable();
    periods.dedup();

    let (h_lo, h_hi) = constraints.h_range.unwrap_or((0, genus.get()));
    let h_hi = h_hi.min(genus.get());
    let mut out = Vec::new();
    if order == 0 {
        return out;
    }
    let g = ratio(order as i64);
    let steps: Vec<BigRational> = periods
        .iter()
        .map(|&n| BigRational::new(BigInt::from(n as i64 - 1), BigInt::from(n as i64)))
        .collect();
    for h in h_lo..=h_hi {
        // Σ t(1 - 1/n) must equal 2(σ - 1 - |G|(h - 1)) / |G|
        let rest = ratio(sigma as i64 - 1) - &g * ratio(h as i64 - 1);
        if rest < BigRational::zero() {
            continue;
        }
        let target = rest * ratio(2) / &g;
        let mut counts = vec![0u32; periods.len()];
        search_counts(
            &steps,
            0,
            target,
            max_r as u32,
            &mut counts,
            &mut |counts| {
                let sig = Signature::new(h, periods.iter().copied().zip(counts.iter().copied()))
                    .expect("enumerated periods are valid");
                out.push(sig);
            },
        );
    }
    out.sort();
    out
}

fn search_counts(
    steps: &[BigRational],
    i: usize,
    remaining: BigRational,
    r_left: u32,
    counts: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if remaining.is_zero() {
        emit(counts);
        return;
    }
    if i == steps.len() || r_left == 0 {
        return;
    }
    // each step is at least 1/2; later steps are at least this one
    if remaining > ratio(r_left as i64) {
        return;
    }
    let mut rem = remaining;
    let mut t = 0;
    loop {
        search_counts(steps, i + 1, rem.clone(), r_left - t, counts, emit);
        if t == r_left {
            break;
        }
        rem -= &steps[i];
        if rem < BigRational::zero() {
            break;
        }
        t += 1;
        counts[i] = t;
    }
    counts[i] = 0;
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.h)?;
        if self.periods.is_empty() {
            return f.write_str(" -)");
        }
        for &(n, t) in &self.periods {
            write!(f, " [{n},{t}]")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    /// Accepts `(h; [n,t] [n,t])` (brackets optionally comma separated),
    /// the expanded `(h; n1, n2, …)`, and `(h; -)` for no branch points.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SignatureError::Parse {
            text: text.chars().take(64).collect(),
            reason: reason.to_string(),
        };
        let body = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| fail("expected parentheses"))?;
        let (h, rest) = body.split_once(';').ok_or_else(|| fail("missing ';'"))?;
        let h: u32 = h.trim().parse().map_err(|_| fail("bad quotient genus"))?;
        let rest = rest.trim();
        if rest.is_empty() || rest == "-" || rest == "\u{2014}" {
            return Ok(Signature::unbranched(h));
        }
        let num = |s: &str| s.trim().parse::<u32>().map_err(|_| fail("bad number"));
        let mut pairs = Vec::new();
        if rest.contains('[') {
            let mut s = rest;
            while !s.is_empty() {
                let open = s.strip_prefix('[').ok_or_else(|| fail("expected '['"))?;
                let (inner, after) = open.split_once(']').ok_or_else(|| fail("unclosed '['"))?;
                let (n, t) = inner
                    .split_once(',')
                    .ok_or_else(|| fail("expected [n,t]"))?;
                pairs.push((num(n)?, num(t)?));
                s = after.trim_start();
                s = s.strip_prefix(',').unwrap_or(s).trim_start();
            }
        } else {
            for item in rest.split(|c: char| c == ',' || c.is_whitespace()) {
                if !item.is_empty() {
                    pairs.push((num(item)?, 1));
                }
            }
        }
        Signature::new(h, pairs)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
