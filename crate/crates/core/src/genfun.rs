//! Generating functions of the three classes and of partitions with parts
//! appearing at most twice, in brute-force, alternating, positive and
//! product forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{internal, invalid, Error, Result};
use crate::partitions::{brute_series, check_at_most_twice, kr_predicate, KrVariant};
use crate::ppoly;
use crate::qseries::{inv_pochhammer, neg_pochhammer_alternating, BiSeries, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Kr(KrVariant),
    /// Partitions whose parts appear at most twice.
    H,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("h") {
            Ok(Family::H)
        } else {
            Ok(Family::Kr(s.parse()?))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Brute,
    Alternating,
    Positive,
    Product,
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "brute" => Ok(Form::Brute),
            "alternating" => Ok(Form::Alternating),
            "positive" => Ok(Form::Positive),
            "product" => Ok(Form::Product),
            other => invalid(format!("unknown form '{other}'")),
        }
    }
}

/// What to compute and on which window. The product form of a class is its
/// `t = 1` specialization, so its series has `max_t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenFunSpec {
    pub family: Family,
    pub form: Form,
    pub max_q: usize,
    pub max_t: usize,
}

impl GenFunSpec {
    pub fn evaluate(&self) -> Result<BiSeries> {
        let (q, t) = (self.max_q, self.max_t);
        match (self.family, self.form) {
            (Family::Kr(v), Form::Brute) => Ok(kr_brute(v, q, t)),
            (Family::Kr(v), Form::Alternating) => Ok(kr_alternating(v, q, t)),
            (Family::Kr(v), Form::Positive) => kr_positive(v, q, t),
            (Family::Kr(v), Form::Product) => Ok(product_side(v, q)),
            (Family::H, Form::Brute) => Ok(h_brute(q, t)),
            (Family::H, Form::Positive) => h_positive(q, t),
            (Family::H, Form::Product) => Ok(h_product(q, t)),
            (Family::H, Form::Alternating) => invalid("no alternating form for the at-most-twice series"),
        }
    }
}

pub fn isqrt(n: usize) -> usize {
    let mut r = 0;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Multiplies the `t^M` slice by `q^(M^2)`, the weight of the staircase
/// `1 + 3 + ... + (2M-1)`.
pub fn apply_staircase(s: &BiSeries) -> BiSeries {
    s.shift_slices(|m| m * m)
}

pub fn kr_brute(v: KrVariant, max_q: usize, max_t: usize) -> BiSeries {
    brute_series(kr_predicate(v), max_q, max_t)
}

pub fn h_brute(max_q: usize, max_t: usize) -> BiSeries {
    brute_series(check_at_most_twice, max_q, max_t)
}

fn triple_sum(max_q: usize, max_t: usize, exponent: impl Fn(usize, usize, usize) -> usize) -> BiSeries {
    let inv1: Vec<QPoly> = (0..=max_t).map(|i| QPoly::inv_finite_pochhammer(1, i, max_q)).collect();
    let inv4: Vec<QPoly> = (0..=max_t / 2).map(|j| QPoly::inv_finite_pochhammer(4, j, max_q)).collect();
    let inv6: Vec<QPoly> = (0..=max_t / 3).map(|k| QPoly::inv_finite_pochhammer(6, k, max_q)).collect();
    let mut out = BiSeries::zero(max_q, max_t);
    for s in 0..=max_t {
        for k in 0..=s / 3 {
            for j in 0..=(s - 3 * k) / 2 {
                let i = s - 2 * j - 3 * k;
                let e = exponent(i, j, k);
                if e > max_q {
                    continue;
                }
                let room = max_q - e;
                let mut term = inv1[i].mul_truncated(&inv4[j], room).mul_truncated(&inv6[k], room);
                if k % 2 == 1 {
                    term = -&term;
                }
                out.add_poly_at(s, e, &term);
            }
        }
    }
    out
}

/// The alternating triple sum before the staircase weight: the `q`-exponent
/// of the `(i, j, k)` term beyond `(i+2j+3k)^2`.
fn alternating_offset(v: KrVariant, i: usize, j: usize, k: usize) -> usize {
    let cubic = 3 * k * k + 3 * k;
    match v {
        KrVariant::D => 4 * j + cubic,
        KrVariant::DPrime => i + cubic,
        KrVariant::DPrimePrime => 3 * i + 4 * j + cubic + 6 * k,
    }
}

/// `sum (-1)^k t^(i+2j+3k) q^offset / ((q;q)_i (q^4;q^4)_j (q^6;q^6)_k)`.
pub fn kr_alternating_presum(v: KrVariant, max_q: usize, max_t: usize) -> BiSeries {
    triple_sum(max_q, max_t, |i, j, k| alternating_offset(v, i, j, k))
}

pub fn kr_alternating(v: KrVariant, max_q: usize, max_t: usize) -> BiSeries {
    apply_staircase(&kr_alternating_presum(v, max_q, max_t))
}

/// The same triple sum with each exponent written out in full as
/// `s(s-1) + linear(i, j, k)`, `s = i+2j+3k`; used to cross-check the
/// staircase assembly.
pub fn kr_alternating_direct(v: KrVariant, max_q: usize, max_t: usize) -> BiSeries {
    triple_sum(max_q, max_t, |i, j, k| {
        let s = i + 2 * j + 3 * k;
        let tail = match v {
            KrVariant::D => i + 6 * j + 3 * k * k + 6 * k,
            KrVariant::DPrime => 2 * i + 2 * j + 3 * k * k + 6 * k,
            KrVariant::DPrimePrime => 4 * i + 6 * j + 3 * k * k + 12 * k,
        };
        (s * s).saturating_sub(s) + tail
    })
}

/// `sum P(m1,m2,m3,m+1; q^c) q^(c(m n + n^2)) t^(2m1+2m2+5m3+n)
///   / ((q^c;q^c)_n (q^3c;q^3c)_(m1+m2+2m3))`, every term checked non-negative.
fn corollary_sum(c: usize, max_q: usize, max_t: usize) -> Result<BiSeries> {
    // numerators grouped by (n12, m1+m2, m3), which fixes both denominators and the t-degree
    let mut numer: BTreeMap<(usize, usize, usize), QPoly> = BTreeMap::new();
    let mut m3 = 0;
    while 5 * m3 <= max_t {
        let mut m1 = 0;
        while 2 * m1 + 5 * m3 <= max_t {
            let mut m2 = 0;
            while 2 * (m1 + m2) + 5 * m3 <= max_t {
                // every P(.., s) has low degree at least 2(s-1)
                let mut s = 1;
                while c * 2 * (s - 1) <= max_q {
                    let poly = ppoly::p(m1 as i64, m2 as i64, m3 as i64, s as i64)?;
                    if !poly.is_zero() {
                        if !poly.is_nonnegative() {
                            return internal(format!("P({m1},{m2},{m3},{s}) has a negative coefficient"));
                        }
                        let scaled = poly.stretch(c).truncate(max_q);
                        let m = s - 1;
                        let mut n12 = 0;
                        while 2 * (m1 + m2) + 5 * m3 + n12 <= max_t && c * (m * n12 + n12 * n12) <= max_q {
                            let e = c * (m * n12 + n12 * n12);
                            let slot = numer.entry((n12, m1 + m2, m3)).or_default();
                            *slot += &scaled.shift(e).truncate(max_q);
                            n12 += 1;
                        }
                    }
                    s += 1;
                }
                m2 += 1;
            }
            m1 += 1;
        }
        m3 += 1;
    }
    let mut out = BiSeries::zero(max_q, max_t);
    for ((n12, m12, m3), num) in numer {
        let pairs = m12 + 2 * m3;
        let term = num
            .mul_truncated(&QPoly::inv_finite_pochhammer(c, n12, max_q), max_q)
            .mul_truncated(&QPoly::inv_finite_pochhammer(3 * c, pairs, max_q), max_q);
        if !term.is_nonnegative() {
            return internal("negative term in the positive sum");
        }
        out.add_poly_at(2 * m12 + 5 * m3 + n12, 0, &term);
    }
    Ok(out)
}

/// The positive multi-sum for partitions with parts appearing at most twice.
pub fn h_positive(max_q: usize, max_t: usize) -> Result<BiSeries> {
    corollary_sum(1, max_q, max_t)
}

/// `prod_{n>=1} (1 + t q^n + t^2 q^2n)`.
pub fn h_product(max_q: usize, max_t: usize) -> BiSeries {
    let mut out = BiSeries::one(max_q, max_t);
    for n in 1..=max_q {
        out = out.mul_sparse(&[(0, 0, BigInt::from(1)), (1, n, BigInt::from(1)), (2, 2 * n, BigInt::from(1))]);
    }
    out
}

fn checked(s: BiSeries, what: &str) -> Result<BiSeries> {
    match s.first_negative() {
        None => Ok(s),
        Some((n, m, c)) => internal(format!("{what}: coefficient {c} at q^{n} t^{m}")),
    }
}

fn positive_presum(v: KrVariant, max_q: usize, max_t: usize) -> Result<BiSeries> {
    let base = || -> Result<BiSeries> {
        let h = checked(corollary_sum(2, max_q, max_t)?, "H(t;q^2)")?;
        let odd = checked(inv_pochhammer(1, 1, 2, max_q, max_t)?, "odd parts")?;
        Ok(&h * &odd)
    };
    match v {
        KrVariant::D => {
            let fours = checked(inv_pochhammer(2, 4, 4, max_q, max_t)?, "repeated multiples of 4")?;
            let zeros = BiSeries::one(max_q, max_t).mul_geometric_inverse(1, 0)?;
            Ok(&(&base()? * &fours) * &zeros)
        }
        KrVariant::DPrime => {
            let fours = checked(inv_pochhammer(2, 0, 4, max_q, max_t)?, "repeated multiples of 4")?;
            Ok(&base()? * &fours)
        }
        KrVariant::DPrimePrime => positive_presum(KrVariant::DPrime, max_q, max_t)?.substitute_scale(2, 1),
    }
}

/// The evidently positive form: `H(t; q^2)` times Euler products with
/// non-negative terms, then the staircase weight.
pub fn kr_positive(v: KrVariant, max_q: usize, max_t: usize) -> Result<BiSeries> {
    // slices above sqrt(max_q) vanish under the staircase
    let reach = max_t.min(isqrt(max_q));
    let pre = checked(positive_presum(v, max_q, reach)?, "positive pre-sum")?;
    checked(apply_staircase(&pre.embed(max_q, max_t)), "positive series")
}

fn inv_residues(residues: &[usize], modulus: usize, max_q: usize) -> BiSeries {
    residues.iter().fold(BiSeries::one(max_q, 0), |acc, &r| {
        &acc * &inv_pochhammer(0, r, modulus, max_q, 0).expect("positive residue")
    })
}

/// The infinite product equal to the class's series at `t = 1`.
pub fn product_side(v: KrVariant, max_q: usize) -> BiSeries {
    match v {
        KrVariant::D => inv_residues(&[1, 4, 6, 8, 11], 12, max_q),
        KrVariant::DPrime => {
            let num = neg_pochhammer_alternating(0, 6, 12, max_q, 0).expect("positive residue");
            &num * &inv_residues(&[2, 3, 4, 8, 9, 10], 12, max_q)
        }
        KrVariant::DPrimePrime => inv_residues(&[4, 5, 6, 7, 8], 12, max_q),
    }
}

/// `(q^6;q^12)_inf / (q^2,q^3,q^4;q^6)_inf`, the folded product for the second class.
pub fn kr2_product_folded(max_q: usize) -> BiSeries {
    let num = neg_pochhammer_alternating(0, 6, 12, max_q, 0).expect("positive residue");
    &num * &inv_residues(&[2, 3, 4], 6, max_q)
}

/// The class series at `t = 1`, with enough `t`-degrees that nothing below
/// `q^max_q` is lost: the `t^M` slice starts at `q^(M^2)`.
pub fn kr_t_marginal(v: KrVariant, form: Form, max_q: usize) -> Result<BiSeries> {
    let spec = GenFunSpec { family: Family::Kr(v), form, max_q, max_t: isqrt(max_q) };
    Ok(spec.evaluate()?.t_marginal())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub left: BigInt,
    pub right: BigInt,
}

/// Coefficientwise comparison on the common window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub max_q: usize,
    pub max_t: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn is_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_equal() {
            return write!(f, "equal on q <= {}, t <= {}", self.max_q, self.max_t);
        }
        write!(f, "{} mismatches on q <= {}, t <= {}", self.mismatches.len(), self.max_q, self.max_t)?;
        for x in self.mismatches.iter().take(20) {
            write!(f, "\n  q^{} t^{}: {} vs {}", x.n, x.m, x.left, x.right)?;
        }
        Ok(())
    }
}

pub fn compare(a: &BiSeries, b: &BiSeries) -> CompareReport {
    let max_q = a.max_q().min(b.max_q());
    let max_t = a.max_t().min(b.max_t());
    let mut mismatches = Vec::new();
    for n in 0..=max_q {
        for m in 0..=max_t {
            let (x, y) = (&a.slice(m)[n], &b.slice(m)[n]);
            if x != y {
                mismatches.push(Mismatch { n, m, left: x.clone(), right: y.clone() });
            }
        }
    }
    CompareReport { max_q, max_t, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_small_values() {
        let s = kr_alternating(KrVariant::D, 12, 6);
        let total: BigInt = (0..=6).map(|m| s.coeff(4, m).unwrap()).sum();
        assert_eq!(total, BigInt::from(2));
        assert!(s.is_nonnegative());
    }

    #[test]
    fn staircase_assembly_matches_written_exponents() {
        for v in KrVariant::ALL {
            assert!(compare(&kr_alternating(v, 30, 8), &kr_alternating_direct(v, 30, 8)).is_equal(), "{v}");
        }
    }

    #[test]
    fn third_class_is_shifted_second() {
        let two = kr_alternating(KrVariant::DPrime, 30, 8);
        let three = kr_alternating(KrVariant::DPrimePrime, 30, 8);
        assert!(compare(&two.substitute_scale(2, 1).unwrap(), &three).is_equal());
    }

    #[test]
    fn presum_is_marker_product_at_two() {
        let two = BigInt::from(2);
        let a = crate::seedgen::product_a(&two, 24, 8);
        assert!(compare(&kr_alternating_presum(KrVariant::D, 24, 8), &a).is_equal());
        let b = crate::seedgen::product_b(&two, 24, 8);
        assert!(compare(&kr_alternating_presum(KrVariant::DPrime, 24, 8), &b).is_equal());
    }

    #[test]
    fn positive_matches_brute_small() {
        for v in KrVariant::ALL {
            let r = compare(&kr_positive(v, 20, 6).unwrap(), &kr_brute(v, 20, 6));
            assert!(r.is_equal(), "{v}: {r}");
        }
    }

    #[test]
    fn h_forms_small() {
        let hp = h_positive(16, 8).unwrap();
        assert!(compare(&hp, &h_product(16, 8)).is_equal());
        assert_eq!(hp.coeff(1, 1).unwrap(), BigInt::from(1));
        assert_eq!((0..=8).map(|m| hp.coeff(3, m).unwrap()).sum::<BigInt>(), BigInt::from(2));
        assert!((1..=16).all(|n| hp.coeff(n, 0).unwrap() == BigInt::from(0)));
    }

    #[test]
    fn products_small() {
        let p1 = product_side(KrVariant::D, 20);
        assert_eq!(p1.coeff(4, 0).unwrap(), BigInt::from(2));
        assert!(compare(&product_side(KrVariant::DPrime, 40), &kr2_product_folded(40)).is_equal());
    }

    #[test]
    fn compare_locates_first_difference() {
        let a = kr_brute(KrVariant::D, 12, 6);
        let b = kr_brute(KrVariant::DPrime, 12, 6);
        let r = compare(&a, &b);
        assert!(!r.is_equal());
        assert_eq!((r.mismatches[0].n, r.mismatches[0].m), (1, 1));
        assert!(compare(&a, &a).is_equal());
    }
}
