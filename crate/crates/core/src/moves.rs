//! Backward and forward moves on partitions whose parts appear at most twice,
//! and the decomposition `lambda <-> (beta, mu, theta)` they induce.

use std::fmt;

use serde::Serialize;

use crate::error::{internal, invalid, Result};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `[k, k]`
    Repeating,
    /// `[k, k+1]`
    Consecutive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingletonClass {
    Immobile,
    Moveable,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Item {
    Pair { kind: PairKind, low: u32 },
    Singleton { value: u32, class: SingletonClass },
}

impl Item {
    pub fn is_pair(&self) -> bool {
        matches!(self, Item::Pair { .. })
    }

    fn pair_values(&self) -> Option<(u32, u32)> {
        match *self {
            Item::Pair { kind: PairKind::Repeating, low } => Some((low, low)),
            Item::Pair { kind: PairKind::Consecutive, low } => Some((low, low + 1)),
            Item::Singleton { .. } => None,
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pair_values(), self) {
            (Some((a, b)), _) => write!(f, "[{a},{b}]"),
            (None, Item::Singleton { value, .. }) => write!(f, "{value}"),
            _ => unreachable!(),
        }
    }
}

/// A partition with its greedy leftmost pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedPartition {
    parts: Partition,
    items: Vec<Item>,
}

fn tag_parts(parts: &[u32]) -> Vec<Item> {
    let mut items = Vec::with_capacity(parts.len());
    let mut i = 0;
    while i < parts.len() {
        if i + 1 < parts.len() && parts[i + 1] - parts[i] <= 1 {
            let kind = if parts[i] == parts[i + 1] { PairKind::Repeating } else { PairKind::Consecutive };
            items.push(Item::Pair { kind, low: parts[i] });
            i += 2;
        } else {
            items.push(Item::Singleton { value: parts[i], class: SingletonClass::Undetermined });
            i += 1;
        }
    }
    items
}

fn pairs_of(items: &[Item]) -> Vec<(u32, u32)> {
    items.iter().filter_map(Item::pair_values).collect()
}

fn has_triple(parts: &[u32]) -> bool {
    parts.windows(3).any(|w| w[0] == w[2])
}

/// Binds adjacent parts greedily from the left; parts must appear at most twice.
pub fn tag(p: &Partition) -> Result<TaggedPartition> {
    if p.has_zero() {
        return invalid("zero part in a partition");
    }
    if has_triple(p.parts()) {
        return invalid(format!("{p} has a part appearing more than twice"));
    }
    Ok(TaggedPartition { items: tag_parts(p.parts()), parts: p.clone() })
}

impl TaggedPartition {
    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn pair_count(&self) -> usize {
        self.items.iter().filter(|it| it.is_pair()).count()
    }

    /// Values of the pairs, smallest first.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        pairs_of(&self.items)
    }

    pub fn singletons(&self) -> Vec<(u32, SingletonClass)> {
        self.items
            .iter()
            .filter_map(|it| match *it {
                Item::Singleton { value, class } => Some((value, class)),
                Item::Pair { .. } => None,
            })
            .collect()
    }

    /// Index into `items` of the last pair.
    fn last_pair_item(&self) -> Option<usize> {
        self.items.iter().rposition(Item::is_pair)
    }

    /// Low value of the last pair, 0 when there is none.
    pub fn last_pair_low(&self) -> u32 {
        self.last_pair_item().map_or(0, |i| match self.items[i] {
            Item::Pair { low, .. } => low,
            Item::Singleton { .. } => unreachable!(),
        })
    }

    /// Marks singletons before the last pair immobile and the rest moveable.
    fn classified(mut self) -> Self {
        let cut = self.last_pair_item();
        for (i, it) in self.items.iter_mut().enumerate() {
            if let Item::Singleton { class, .. } = it {
                *class = if cut.is_some_and(|c| i < c) { SingletonClass::Immobile } else { SingletonClass::Moveable };
            }
        }
        self
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        TaggedPartition { items: tag_parts(&parts), parts: Partition::with_zeros(parts).expect("sorted parts") }
    }
}

impl fmt::Display for TaggedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.items.iter().map(Item::to_string).collect();
        f.write_str(&items.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockReason {
    /// A part would drop below 1.
    NonPositive,
    /// Some value would appear three times.
    Multiplicity,
    /// The moved pair would regroup an earlier pair.
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backward {
    Moved(TaggedPartition),
    Blocked(BlockReason),
}

/// One step of a move trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveEvent {
    pub op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singleton: Option<u32>,
    pub result: Vec<u32>,
    pub regroup: bool,
    /// The partition after the step, with its pairing.
    pub state: String,
}

fn replace_values(parts: &[u32], old: [u32; 2], new: [u32; 2]) -> Vec<u32> {
    let mut out = parts.to_vec();
    for v in old {
        let pos = out.iter().position(|&x| x == v).expect("value present");
        out.remove(pos);
    }
    out.extend(new);
    out.sort_unstable();
    out
}

fn backward_raw(parts: &[u32], idx: usize) -> Result<(std::result::Result<Vec<u32>, BlockReason>, [u32; 2])> {
    let items = tag_parts(parts);
    let pairs = pairs_of(&items);
    let Some(&(a, b)) = pairs.get(idx) else {
        return invalid(format!("no pair with index {idx}"));
    };
    let new = if b == a + 1 { [a as i64 - 1, a as i64 - 1] } else { [a as i64 - 2, a as i64 - 1] };
    if new[0] < 1 {
        return Ok((Err(BlockReason::NonPositive), [0, 0]));
    }
    let new = [new[0] as u32, new[1] as u32];
    let next = replace_values(parts, [a, b], new);
    if has_triple(&next) {
        return Ok((Err(BlockReason::Multiplicity), new));
    }
    let next_pairs = pairs_of(&tag_parts(&next));
    if next_pairs.len() < idx || next_pairs[..idx] != pairs[..idx] {
        return Ok((Err(BlockReason::Crossing), new));
    }
    if next_pairs.len() != pairs.len() || next_pairs[idx + 1..] != pairs[idx + 1..] {
        return internal(format!(
            "backward move on pair {idx} of {} disturbed later pairs",
            crate::partitions::join(parts, ",")
        ));
    }
    Ok((Ok(next), new))
}

/// Lowers the `idx`-th pair (smallest first) by a total of 3 and regroups.
pub fn backward_move(tp: &TaggedPartition, idx: usize) -> Result<Backward> {
    Ok(match backward_raw(tp.parts.parts(), idx)?.0 {
        Ok(next) => Backward::Moved(TaggedPartition::from_sorted(next)),
        Err(reason) => Backward::Blocked(reason),
    })
}

fn forward_raw(parts: &[u32], idx: usize) -> Result<(Vec<u32>, [u32; 2], [u32; 2], bool)> {
    let items = tag_parts(parts);
    let Some(pos) = items.iter().enumerate().filter(|(_, it)| it.is_pair()).nth(idx).map(|(i, _)| i) else {
        return invalid(format!("no pair with index {idx}"));
    };
    let (a, b) = items[pos].pair_values().expect("pair");
    let mut eff = (a, b);
    if let Some(Item::Singleton { value: s, .. }) = items.get(pos + 1) {
        let s = *s;
        if (b == a + 1 && s == b) || (b == a && s == a + 1) || (b == a + 1 && s == b + 1) {
            eff = (b, s);
        }
    }
    let (c, d) = eff;
    let new = if c == d { [c + 1, c + 2] } else { [c + 2, c + 2] };
    let next = replace_values(parts, [c, d], new);
    if has_triple(&next) {
        return invalid(format!(
            "forward move on pair {idx} of {} makes a part appear three times",
            crate::partitions::join(parts, ",")
        ));
    }
    match backward_raw(&next, idx)?.0 {
        Ok(back) if back == parts => {}
        _ => {
            return invalid(format!(
                "forward move on pair {idx} of {} cannot be undone by a backward move",
                crate::partitions::join(parts, ",")
            ))
        }
    }
    Ok((next, [a, b], new, eff != (a, b)))
}

/// Raises the `idx`-th pair by a total of 3; the exact inverse of [`backward_move`].
pub fn forward_move(tp: &TaggedPartition, idx: usize) -> Result<TaggedPartition> {
    Ok(TaggedPartition::from_sorted(forward_raw(tp.parts.parts(), idx)?.0))
}

/// The triple `(beta, mu, theta)` with its counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    base: TaggedPartition,
    mu: Partition,
    theta: Partition,
    n11: usize,
    n12: usize,
}

impl Decomposition {
    /// Validates a triple: `base` must admit no backward move and end in the
    /// staircase of moveable singletons, `mu` must be `n2` non-decreasing
    /// multiples of 3, and `theta` must be non-decreasing with a zero for
    /// every immobile singleton.
    pub fn new(base: &Partition, mu: &Partition, theta: &Partition) -> Result<Self> {
        let base = tag(base)?.classified();
        let n2 = base.pair_count();
        for i in 0..n2 {
            if let Backward::Moved(_) = backward_move(&base, i)? {
                return invalid(format!("{base} is not a base: pair {i} can still move backward"));
            }
        }
        let k = base.last_pair_low();
        let singles = base.singletons();
        let n11 = singles.iter().filter(|(_, c)| *c == SingletonClass::Immobile).count();
        let n12 = singles.len() - n11;
        for (j, (value, _)) in singles[n11..].iter().enumerate() {
            if *value != k + 2 * j as u32 + 1 {
                return invalid(format!("{base} is not a base: moveable singletons must be {}, {}, ...", k + 1, k + 3));
            }
        }
        if mu.len() != n2 {
            return invalid(format!("mu has {} parts, the base has {n2} pairs", mu.len()));
        }
        if mu.parts().iter().any(|m| m % 3 != 0) {
            return invalid("mu parts must be multiples of 3");
        }
        if theta.len() != n11 + n12 {
            return invalid(format!("theta has {} parts, the base has {} singletons", theta.len(), n11 + n12));
        }
        if theta.parts()[..n11].iter().any(|&x| x != 0) {
            return invalid(format!("theta must start with {n11} zeros"));
        }
        Ok(Decomposition { base, mu: mu.clone(), theta: theta.clone(), n11, n12 })
    }

    pub fn base(&self) -> &TaggedPartition {
        &self.base
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn theta(&self) -> &Partition {
        &self.theta
    }

    pub fn n2(&self) -> usize {
        self.mu.len()
    }

    pub fn n11(&self) -> usize {
        self.n11
    }

    pub fn n12(&self) -> usize {
        self.n12
    }

    pub fn weight(&self) -> u64 {
        self.base.parts.weight() + self.mu.weight() + self.theta.weight()
    }
}

/// Drives each pair backward until blocked, smallest first, then slides the
/// trailing singletons down to the staircase.
pub fn decompose(p: &Partition) -> Result<Decomposition> {
    Ok(decompose_traced(p)?.0)
}

pub fn decompose_traced(p: &Partition) -> Result<(Decomposition, Vec<MoveEvent>)> {
    let mut cur = tag(p)?.parts.into_parts();
    let n2 = pairs_of(&tag_parts(&cur)).len();
    let mut events = Vec::new();
    let mut mu = Vec::with_capacity(n2);
    for i in 0..n2 {
        let mut count = 0;
        loop {
            let before = pairs_of(&tag_parts(&cur))[i];
            let (outcome, new) = backward_raw(&cur, i)?;
            let Ok(next) = outcome else { break };
            let after = pairs_of(&tag_parts(&next))[i];
            let tp = TaggedPartition::from_sorted(next);
            events.push(MoveEvent {
                op: "backward",
                pair: Some([before.0, before.1]),
                singleton: None,
                result: new.to_vec(),
                regroup: after != (new[0], new[1]),
                state: tp.to_string(),
            });
            cur = tp.parts.into_parts();
            count += 1;
        }
        mu.push(3 * count);
    }
    let tp = TaggedPartition::from_sorted(cur).classified();
    let k = tp.last_pair_low();
    let singles = tp.singletons();
    let n11 = singles.iter().filter(|(_, c)| *c == SingletonClass::Immobile).count();
    let mut parts = tp.parts.parts().to_vec();
    let n = parts.len();
    let n12 = singles.len() - n11;
    let mut theta = vec![0u32; n11];
    for j in 0..n12 {
        let pos = n - n12 + j;
        let target = k + 2 * j as u32 + 1;
        let value = parts[pos];
        if value < target {
            return internal(format!("moveable singleton {value} below staircase value {target}"));
        }
        theta.push(value - target);
        if value != target {
            parts[pos] = target;
            events.push(MoveEvent {
                op: "backward_singleton",
                pair: None,
                singleton: Some(value),
                result: vec![target],
                regroup: false,
                state: TaggedPartition::from_sorted(parts.clone()).to_string(),
            });
        }
    }
    let base = TaggedPartition::from_sorted(parts).classified();
    if base.pair_count() != n2 {
        return internal("sliding singletons changed the pairing");
    }
    let d = Decomposition { base, mu: Partition::with_zeros(mu)?, theta: Partition::with_zeros(theta)?, n11, n12 };
    if d.weight() != p.weight() {
        return internal(format!("weights do not add up for {p}"));
    }
    Ok((d, events))
}

/// Inverse of [`decompose`].
pub fn compose(d: &Decomposition) -> Result<Partition> {
    Ok(compose_traced(d)?.0)
}

pub fn compose_traced(d: &Decomposition) -> Result<(Partition, Vec<MoveEvent>)> {
    let mut cur = d.base.parts.parts().to_vec();
    let n = cur.len();
    let mut events = Vec::new();
    for j in 0..d.n12 {
        let shift = d.theta.parts()[d.n11 + j];
        let pos = n - d.n12 + j;
        if shift > 0 {
            let from = cur[pos];
            cur[pos] += shift;
            let mut sorted = cur.clone();
            sorted.sort_unstable();
            events.push(MoveEvent {
                op: "forward_singleton",
                pair: None,
                singleton: Some(from),
                result: vec![cur[pos]],
                regroup: false,
                state: TaggedPartition::from_sorted(sorted).to_string(),
            });
        }
    }
    cur.sort_unstable();
    if has_triple(&cur) {
        return invalid("theta pushes a singleton onto a value appearing twice");
    }
    for i in (0..d.n2()).rev() {
        for _ in 0..d.mu.parts()[i] / 3 {
            let (next, before, new, regroup) = forward_raw(&cur, i)?;
            let tp = TaggedPartition::from_sorted(next);
            events.push(MoveEvent {
                op: "forward",
                pair: Some(before),
                singleton: None,
                result: new.to_vec(),
                regroup,
                state: tp.to_string(),
            });
            cur = tp.parts.into_parts();
        }
    }
    Ok((Partition::new(cur)?, events))
}

/// Block/pair census of a base structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Census {
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
}

/// Splits a structure into blocks `[k-1,k], k, [k+2,k+2]`, repeating pairs
/// and consecutive pairs; `None` if some singleton lies outside a block.
pub fn classify(items: &[Item]) -> Option<Census> {
    let mut c = Census { m1: 0, m2: 0, m3: 0 };
    let mut i = 0;
    while i < items.len() {
        if let (
            Item::Pair { kind: PairKind::Consecutive, low },
            Some(Item::Singleton { value, .. }),
            Some(Item::Pair { kind: PairKind::Repeating, low: top }),
        ) = (items[i], items.get(i + 1).copied(), items.get(i + 2).copied())
        {
            if value == low + 1 && top == low + 3 {
                c.m3 += 1;
                i += 3;
                continue;
            }
        }
        match items[i] {
            Item::Pair { kind: PairKind::Repeating, .. } => c.m1 += 1,
            Item::Pair { kind: PairKind::Consecutive, .. } => c.m2 += 1,
            Item::Singleton { .. } => return None,
        }
        i += 1;
    }
    Some(c)
}

/// A base structure: pairs that admit no backward move plus the singletons
/// trapped among them, ending in a pair (or empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseStructure {
    pub structure: TaggedPartition,
    /// `None` when a singleton sits outside every block.
    pub census: Option<Census>,
    pub weight: u64,
    /// Low value of the last pair (0 for the empty structure).
    pub largest_pair: u32,
    /// 0 for a last pair `[m,m]` (and the empty structure), 1 for `[m,m+1]`.
    pub parity: u8,
}

struct Limits {
    max_weight: u64,
    max_part: u32,
    max_pairs: usize,
    max_singletons: usize,
}

fn visit_structures(limits: &Limits, out: &mut Vec<BaseStructure>) -> Result<()> {
    fn rec(cur: &mut Vec<u32>, weight: u64, limits: &Limits, out: &mut Vec<BaseStructure>) -> Result<()> {
        let items = tag_parts(cur);
        let pairs = items.iter().filter(|it| it.is_pair()).count();
        let singles = items.len() - pairs;
        if items.last().map_or(true, Item::is_pair) {
            let tp = TaggedPartition::from_sorted(cur.clone()).classified();
            let (largest_pair, parity) = match items.last() {
                Some(&Item::Pair { kind, low }) => (low, u8::from(kind == PairKind::Consecutive)),
                _ => (0, 0),
            };
            out.push(BaseStructure { census: classify(&tp.items), structure: tp, weight, largest_pair, parity });
        }
        let start = cur.last().copied().unwrap_or(1);
        for v in start..=limits.max_part {
            if weight + u64::from(v) > limits.max_weight {
                break;
            }
            let n = cur.len();
            if n >= 2 && cur[n - 1] == v && cur[n - 2] == v {
                continue;
            }
            // whether v closes a pair with a trailing singleton
            let closes = matches!(items.last(), Some(Item::Singleton { value, .. }) if v - value <= 1);
            if closes && pairs + 1 > limits.max_pairs {
                continue;
            }
            if !closes && singles + 1 > limits.max_singletons.saturating_add(usize::from(pairs < limits.max_pairs)) {
                continue;
            }
            cur.push(v);
            let blocked = !closes || backward_raw(cur, pairs)?.0.is_err();
            if blocked {
                rec(cur, weight + u64::from(v), limits, out)?;
            }
            cur.pop();
        }
        Ok(())
    }
    rec(&mut Vec::new(), 0, limits, out)
}

/// Every base structure of weight at most `max_weight`, in lexicographic
/// order of parts, whether or not its singletons sit inside blocks.
pub fn enumerate_structures(max_weight: u64) -> Result<Vec<BaseStructure>> {
    let limits = Limits {
        max_weight,
        max_part: u32::try_from(max_weight).unwrap_or(u32::MAX),
        max_pairs: usize::MAX,
        max_singletons: usize::MAX,
    };
    let mut out = Vec::new();
    visit_structures(&limits, &mut out)?;
    Ok(out)
}

/// Base structures with `m1` repeating pairs, `m2` consecutive pairs and
/// `m3` blocks, of structure weight at most `max_weight`.
pub fn enumerate_bases(m1: usize, m2: usize, m3: usize, max_weight: u64) -> Result<Vec<BaseStructure>> {
    enumerate_bases_bounded(m1, m2, m3, max_weight, u32::try_from(max_weight).unwrap_or(u32::MAX))
}

pub(crate) fn enumerate_bases_bounded(
    m1: usize,
    m2: usize,
    m3: usize,
    max_weight: u64,
    max_part: u32,
) -> Result<Vec<BaseStructure>> {
    let limits = Limits { max_weight, max_part, max_pairs: m1 + m2 + 2 * m3, max_singletons: m3 };
    let mut out = Vec::new();
    visit_structures(&limits, &mut out)?;
    out.retain(|b| b.census == Some(Census { m1, m2, m3 }));
    Ok(out)
}

/// Every valid triple of total weight at most `max_weight`.
pub fn enumerate_decompositions(max_weight: u64) -> Result<Vec<Decomposition>> {
    let mut out = Vec::new();
    for s in enumerate_structures(max_weight)? {
        let k = s.largest_pair;
        let n2 = s.structure.pair_count();
        let n11 = s.structure.singletons().len();
        let mut base = s.structure.parts.parts().to_vec();
        let mut base_weight = s.weight;
        loop {
            let n12 = base.len() - 2 * n2 - n11;
            let rem = max_weight - base_weight;
            let beta = Partition::new(base.clone())?;
            for mu in sequences(n2, rem, 3) {
                let mu_w: u64 = mu.iter().map(|&x| u64::from(x)).sum();
                for tail in sequences(n12, rem - mu_w, 1) {
                    let mut theta = vec![0; n11];
                    theta.extend(tail);
                    let d = Decomposition::new(&beta, &Partition::with_zeros(mu.clone())?, &Partition::with_zeros(theta)?)?;
                    out.push(d);
                }
            }
            let next = k + 2 * n12 as u32 + 1;
            if base_weight + u64::from(next) > max_weight {
                break;
            }
            base.push(next);
            base_weight += u64::from(next);
        }
    }
    Ok(out)
}

/// Non-decreasing sequences of `len` multiples of `step` with sum at most `budget`.
fn sequences(len: usize, budget: u64, step: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, budget: u64, min: u32, step: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u64;
        let mut v = min;
        while u64::from(v) * left <= budget {
            cur.push(v);
            rec(len, budget - u64::from(v), v, step, cur, out);
            cur.pop();
            v += step;
        }
    }
    let mut out = Vec::new();
    rec(len, budget, 0, step, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta = {}; mu = {}; theta = {}", self.base, self.mu, self.theta)
    }
}
