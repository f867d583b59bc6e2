//! Seed partitions, their expansion back into a class, and the marker
//! products `A(t; q; a)` and `B(t; q; a)`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::partitions::{check_kr, kr_holds, KrVariant, Partition};
use crate::qseries::BiSeries;

/// A run of equal even offsets that can be rewritten as repeated even parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenGroup {
    /// Index range `start..end` into the seed.
    pub start: usize,
    pub end: usize,
    pub value: u32,
    /// Set when the seed's own form is barred by the variant, so every
    /// output carries the rewrite.
    pub mandatory: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedDecomposition {
    pub seed: Partition,
    /// The staircase `1, 3, 5, ...` of the seed's length.
    pub base: Partition,
    /// `seed - base`, zeros allowed.
    pub mu: Partition,
    pub even_groups: Vec<EvenGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedExpansion {
    pub decomposition: SeedDecomposition,
    /// Lexicographically sorted.
    pub partitions: Vec<Partition>,
}

/// Rewrites every `2k + 2k` as `(2k-1) + (2k+1)` until nothing changes.
pub fn to_seed(p: &Partition, v: KrVariant) -> Result<Partition> {
    if !check_kr(p, v)? {
        return invalid(format!("{p} is not in class {v}"));
    }
    let mut parts = p.parts().to_vec();
    loop {
        let Some(i) = parts.windows(2).position(|w| w[0] == w[1] && w[0] % 2 == 0) else {
            break;
        };
        let k = parts[i];
        parts[i] = k - 1;
        parts[i + 1] = k + 1;
        parts.sort_unstable();
    }
    Partition::new(parts)
}

fn small_parts_allowed(parts: &[u32], v: KrVariant) -> bool {
    match v {
        KrVariant::D => parts.iter().filter(|&&p| p == 2).count() < 2,
        KrVariant::DPrime => !parts.contains(&1),
        KrVariant::DPrimePrime => !parts.iter().any(|&p| p <= 3),
    }
}

fn rewritten(seed: &[u32], start: usize, end: usize) -> Vec<u32> {
    seed[start..end].chunks(2).flat_map(|c| [c[0] + 1, c[0] + 1]).collect()
}

/// Splits a seed against the staircase and locates its toggle groups.
pub fn decompose_seed(seed: &Partition, v: KrVariant) -> Result<SeedDecomposition> {
    let parts = seed.parts();
    if seed.has_zero() {
        return invalid("zero part in a seed");
    }
    if parts.windows(2).any(|w| w[1] < w[0] + 2) {
        return invalid(format!("{seed} is not a seed: parts must differ by at least 2"));
    }
    let base: Vec<u32> = (0..parts.len() as u32).map(|i| 2 * i + 1).collect();
    let mu: Vec<u32> = parts.iter().zip(&base).map(|(s, b)| s - b).collect();
    let mut even_groups = Vec::new();
    let mut start = 0;
    while start < mu.len() {
        let mut end = start;
        while end < mu.len() && mu[end] == mu[start] {
            end += 1;
        }
        let value = mu[start];
        if value % 2 == 0 && (end - start) % 2 == 0 {
            let off = small_parts_allowed(&parts[start..end], v);
            let on = small_parts_allowed(&rewritten(parts, start, end), v);
            match (off, on) {
                (true, true) => even_groups.push(EvenGroup { start, end, value, mandatory: false }),
                (false, true) => even_groups.push(EvenGroup { start, end, value, mandatory: true }),
                (true, false) => {}
                (false, false) => return invalid(format!("{seed} is not a seed for {v}")),
            }
        }
        start = end;
    }
    Ok(SeedDecomposition {
        seed: seed.clone(),
        base: Partition::new(base)?,
        mu: Partition::with_zeros(mu)?,
        even_groups,
    })
}

/// Every member of the class generated by `seed`, sorted.
pub fn expand_seed(seed: &Partition, v: KrVariant) -> Result<Vec<Partition>> {
    Ok(expand_seed_detailed(seed, v)?.partitions)
}

pub fn expand_seed_detailed(seed: &Partition, v: KrVariant) -> Result<SeedExpansion> {
    let d = decompose_seed(seed, v)?;
    let parts = seed.parts();
    let free: Vec<&EvenGroup> = d.even_groups.iter().filter(|g| !g.mandatory).collect();
    let mut partitions = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut out = parts.to_vec();
        for g in &d.even_groups {
            let on = g.mandatory || {
                let idx = free.iter().position(|f| std::ptr::eq(*f, g)).expect("free group");
                mask >> idx & 1 == 1
            };
            if on {
                out[g.start..g.end].copy_from_slice(&rewritten(parts, g.start, g.end));
            }
        }
        if !kr_holds(&out, v) {
            return invalid(format!("{seed} is not a seed for {v}: it generates {}", crate::partitions::join(&out, ",")));
        }
        partitions.push(Partition::new(out)?);
    }
    partitions.sort();
    Ok(SeedExpansion { decomposition: d, partitions })
}

fn marker_product(a: &BigInt, zeros_dt: usize, max_q: usize, max_t: usize) -> BiSeries {
    let mut out = BiSeries::one(max_q, max_t);
    let mut n = 1;
    while 2 * n - 1 <= max_q {
        out = out.mul_sparse(&[
            (0, 0, BigInt::one()),
            (1, 2 * n, BigInt::one()),
            (2, 4 * n, a - 1),
        ]);
        out = out.mul_geometric_inverse(1, 2 * n - 1).expect("non-constant factor");
        out = out.mul_geometric_inverse(2, 4 * n).expect("non-constant factor");
        n += 1;
    }
    out.mul_geometric_inverse(zeros_dt, 0).expect("non-constant factor")
}

/// `A(t;q;a) = prod (1 + t q^2n + (a-1) t^2 q^4n) / ((1 - t q^(2n-1))(1 - t^2 q^4n)) * 1/(1-t)`.
pub fn product_a(a: &BigInt, max_q: usize, max_t: usize) -> BiSeries {
    marker_product(a, 1, max_q, max_t)
}

/// As [`product_a`] with `1/(1-t^2)` in place of `1/(1-t)`.
pub fn product_b(a: &BigInt, max_q: usize, max_t: usize) -> BiSeries {
    marker_product(a, 2, max_q, max_t)
}
