//! Partitions, the Kanade-Russell conditions, and brute-force counters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::qseries::BiSeries;

/// Non-decreasing sequence of parts.
///
/// `new` rejects zero parts; `with_zeros` admits them for auxiliary objects
/// such as the shift vectors of a decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("zero part in a partition");
        }
        Self::with_zeros(parts)
    }

    pub fn with_zeros(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return invalid(format!("parts are not non-decreasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable();
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    pub fn has_zero(&self) -> bool {
        self.parts.first() == Some(&0)
    }

    /// Parts joined with `+`, as partitions are usually written by hand.
    pub fn to_plus_string(&self) -> String {
        join(&self.parts, "+")
    }
}

pub(crate) fn join(parts: &[u32], sep: &str) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts, ","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `1,4,4,5` or `1+4+4+5`; brackets and spaces are ignored.
    /// Zeros are kept, ordering is checked.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !matches!(c, '[' | ']' | ' ' | '\t')).collect();
        if cleaned.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = cleaned
            .split([',', '+'])
            .map(|tok| tok.parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad part '{tok}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::with_zeros(parts)
    }
}

/// The small-part restriction that distinguishes the three classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KrVariant {
    /// `2+2` may not occur.
    D,
    /// The part 1 may not occur.
    DPrime,
    /// None of 1, 2, 3 may occur.
    DPrimePrime,
}

impl KrVariant {
    pub const ALL: [KrVariant; 3] = [KrVariant::D, KrVariant::DPrime, KrVariant::DPrimePrime];

    pub fn index(self) -> u8 {
        match self {
            KrVariant::D => 1,
            KrVariant::DPrime => 2,
            KrVariant::DPrimePrime => 3,
        }
    }
}

impl fmt::Display for KrVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KR{}", self.index())
    }
}

impl FromStr for KrVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "kr1" | "d" => Ok(KrVariant::D),
            "2" | "kr2" | "dprime" => Ok(KrVariant::DPrime),
            "3" | "kr3" | "dprimeprime" => Ok(KrVariant::DPrimePrime),
            other => invalid(format!("unknown variant '{other}'")),
        }
    }
}

/// Membership in the class selected by `v`; zero parts are rejected.
pub fn check_kr(p: &Partition, v: KrVariant) -> Result<bool> {
    if p.has_zero() {
        return invalid("zero part in a partition");
    }
    Ok(kr_holds(p.parts(), v))
}

pub(crate) fn kr_holds(parts: &[u32], v: KrVariant) -> bool {
    if parts.windows(2).any(|w| w[1] - w[0] == 1) {
        return false;
    }
    if parts.windows(2).any(|w| w[0] == w[1] && w[0] % 2 == 1) {
        return false;
    }
    let mult = |x: u32| parts.iter().filter(|&&p| p == x).count();
    for w in parts.windows(3) {
        if w[1] % 2 == 0 && mult(w[1]) > 1 && w[2] - w[0] < 4 {
            return false;
        }
    }
    match v {
        KrVariant::D => mult(2) < 2,
        KrVariant::DPrime => parts.first().map_or(true, |&p| p > 1),
        KrVariant::DPrimePrime => parts.first().map_or(true, |&p| p > 3),
    }
}

pub fn check_at_most_twice(p: &Partition) -> bool {
    p.parts().windows(3).all(|w| w[0] != w[2])
}

/// Calls `visit` on every partition of `n` (into exactly `len` parts when
/// given, otherwise into at most `max_len` parts), in lexicographic order.
pub fn for_each_partition(n: u32, len: Option<usize>, max_len: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(rem: u32, min: u32, cur: &mut Vec<u32>, len: Option<usize>, max_len: usize, visit: &mut dyn FnMut(&[u32])) {
        if rem == 0 {
            if len.map_or(true, |l| l == cur.len()) {
                visit(cur);
            }
            return;
        }
        let room = len.unwrap_or(max_len).saturating_sub(cur.len());
        if room == 0 {
            return;
        }
        if room > 1 {
            let mut p = min;
            while 2 * p <= rem {
                if len.is_some() && u64::from(p) * room as u64 > u64::from(rem) {
                    break;
                }
                cur.push(p);
                rec(rem - p, p, cur, len, max_len, visit);
                cur.pop();
                p += 1;
            }
        }
        if rem >= min {
            cur.push(rem);
            rec(0, rem, cur, len, max_len, visit);
            cur.pop();
        }
    }
    rec(n, 1, &mut Vec::new(), len, max_len, &mut visit);
}

/// All partitions of `n` (with exactly `m` parts if given) satisfying `pred`,
/// in lexicographic order of part sequences.
pub fn enumerate(n: u32, m: Option<usize>, pred: impl Fn(&Partition) -> bool) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, m, usize::MAX, |parts| {
        let p = Partition { parts: parts.to_vec() };
        if pred(&p) {
            out.push(p);
        }
    });
    out
}

/// `sum #{partitions of n into m parts satisfying pred} q^n t^m` on the window.
pub fn brute_series(pred: impl Fn(&Partition) -> bool + Sync, max_q: usize, max_t: usize) -> BiSeries {
    let rows: Vec<Vec<u64>> = (0..=max_q)
        .into_par_iter()
        .map(|n| {
            let mut counts = vec![0u64; max_t + 1];
            for_each_partition(n as u32, None, max_t, |parts| {
                let p = Partition { parts: parts.to_vec() };
                if pred(&p) {
                    counts[p.len()] += 1;
                }
            });
            counts
        })
        .collect();
    let mut out = BiSeries::zero(max_q, max_t);
    for (n, counts) in rows.iter().enumerate() {
        for (m, &c) in counts.iter().enumerate() {
            if c > 0 {
                out.add_term(&(BigInt::one() * c), n, m);
            }
        }
    }
    out
}

/// Predicate form of [`check_kr`] for enumeration, where parts are never zero.
pub fn kr_predicate(v: KrVariant) -> impl Fn(&Partition) -> bool + Sync + Copy {
    move |p: &Partition| kr_holds(p.parts(), v)
}
