//! Truncated power series in `q` and `t` with exact integer coefficients,
//! and the Euler/Pochhammer expansions built on top of them.

mod poly;

pub use poly::QPoly;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Dense truncated series `sum c(n, m) q^n t^m` with `n <= max_q`, `m <= max_t`.
///
/// Binary operations on series with different windows work on the common
/// (componentwise minimal) window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    max_q: usize,
    max_t: usize,
    // coeffs[m][n] is the coefficient of q^n t^m
    coeffs: Vec<Vec<BigInt>>,
}

impl BiSeries {
    pub fn zero(max_q: usize, max_t: usize) -> Self {
        BiSeries { max_q, max_t, coeffs: vec![vec![BigInt::zero(); max_q + 1]; max_t + 1] }
    }

    pub fn one(max_q: usize, max_t: usize) -> Self {
        let mut s = Self::zero(max_q, max_t);
        s.coeffs[0][0] = BigInt::one();
        s
    }

    pub fn monomial(c: impl Into<BigInt>, dq: usize, dt: usize, max_q: usize, max_t: usize) -> Result<Self> {
        if dq > max_q || dt > max_t {
            return Err(Error::OutOfWindow { n: dq, m: dt, max_q, max_t });
        }
        let mut s = Self::zero(max_q, max_t);
        s.coeffs[dt][dq] = c.into();
        Ok(s)
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn max_t(&self) -> usize {
        self.max_t
    }

    /// Coefficient of `q^n t^m`; queries outside the window are rejected.
    pub fn coeff(&self, n: usize, m: usize) -> Result<BigInt> {
        if n > self.max_q || m > self.max_t {
            return Err(Error::OutOfWindow { n, m, max_q: self.max_q, max_t: self.max_t });
        }
        Ok(self.coeffs[m][n].clone())
    }

    /// The `t^m` slice as a vector indexed by q-degree.
    pub fn slice(&self, m: usize) -> &[BigInt] {
        &self.coeffs[m]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Non-zero terms as `(t-degree, q-degree, coefficient)`, sorted.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs.iter().enumerate().flat_map(|(m, row)| {
            row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(n, c)| (m, n, c))
        })
    }

    /// Shrinks the window; bounds larger than the current ones are ignored.
    pub fn restrict(&self, max_q: usize, max_t: usize) -> Self {
        let max_q = max_q.min(self.max_q);
        let max_t = max_t.min(self.max_t);
        let coeffs = self.coeffs[..=max_t].iter().map(|row| row[..=max_q].to_vec()).collect();
        BiSeries { max_q, max_t, coeffs }
    }

    /// Zero-extends the window. Only sound when the caller knows the extra
    /// degrees carry no terms.
    pub(crate) fn embed(&self, max_q: usize, max_t: usize) -> Self {
        let mut out = Self::zero(max_q.max(self.max_q), max_t.max(self.max_t));
        for (m, row) in self.coeffs.iter().enumerate() {
            out.coeffs[m][..row.len()].clone_from_slice(row);
        }
        out
    }

    /// Adds `c q^dq t^dt`, silently dropping it outside the window.
    pub fn add_term(&mut self, c: &BigInt, dq: usize, dt: usize) {
        if dq <= self.max_q && dt <= self.max_t {
            self.coeffs[dt][dq] += c;
        }
    }

    /// Adds `q^shift * poly` into the `t^dt` slice, dropping degrees beyond the window.
    pub fn add_poly_at(&mut self, dt: usize, shift: usize, poly: &QPoly) {
        if dt > self.max_t {
            return;
        }
        let row = &mut self.coeffs[dt];
        for (e, c) in poly.terms() {
            match row.get_mut(e + shift) {
                Some(dst) => *dst += c,
                None => break,
            }
        }
    }

    /// Multiplies by `t^dt q^dq`.
    pub fn shift(&self, dt: usize, dq: usize) -> Self {
        let mut out = Self::zero(self.max_q, self.max_t);
        for m in 0..=self.max_t.saturating_sub(dt) {
            if m + dt > self.max_t {
                break;
            }
            for n in 0..=self.max_q.saturating_sub(dq) {
                if n + dq > self.max_q {
                    break;
                }
                out.coeffs[m + dt][n + dq] = self.coeffs[m][n].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|row| row.iter().map(|v| v * c).collect()).collect();
        BiSeries { max_q: self.max_q, max_t: self.max_t, coeffs }
    }

    /// Multiplies by the sparse polynomial `sum c t^dt q^dq` given as `(dt, dq, c)`.
    pub fn mul_sparse(&self, factor: &[(usize, usize, BigInt)]) -> Self {
        let mut out = Self::zero(self.max_q, self.max_t);
        for (dt, dq, c) in factor {
            if c.is_zero() || *dt > self.max_t || *dq > self.max_q {
                continue;
            }
            for m in 0..=self.max_t - dt {
                for n in 0..=self.max_q - dq {
                    let v = &self.coeffs[m][n];
                    if !v.is_zero() {
                        out.coeffs[m + dt][n + dq] += v * c;
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `1/(1 - t^dt q^dq)`.
    pub fn mul_geometric_inverse(&self, dt: usize, dq: usize) -> Result<Self> {
        if dt == 0 && dq == 0 {
            return invalid("1/(1 - 1) is not a power series");
        }
        let mut out = self.clone();
        if dt > self.max_t || dq > self.max_q {
            return Ok(out);
        }
        for m in dt..=self.max_t {
            for n in dq..=self.max_q {
                let prev = out.coeffs[m - dt][n - dq].clone();
                if !prev.is_zero() {
                    out.coeffs[m][n] += prev;
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by `1 - t^dt q^dq`.
    pub fn mul_one_minus(&self, dt: usize, dq: usize) -> Self {
        self.mul_sparse(&[(0, 0, BigInt::one()), (dt, dq, -BigInt::one())])
    }

    /// Applies `t -> t q^t_qshift`, then `q -> q^q_stretch`; terms pushed past
    /// `max_q` are dropped.
    pub fn substitute_scale(&self, t_qshift: usize, q_stretch: usize) -> Result<Self> {
        if q_stretch == 0 {
            return invalid("q stretch must be at least 1");
        }
        let mut out = Self::zero(self.max_q, self.max_t);
        for (m, n, c) in self.terms() {
            let e = (n + m * t_qshift) * q_stretch;
            if e <= self.max_q {
                out.coeffs[m][e] = c.clone();
            }
        }
        Ok(out)
    }

    /// Multiplies each `t^m` slice by `q^shift(m)`.
    pub fn shift_slices(&self, shift: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.max_q, self.max_t);
        for (m, row) in self.coeffs.iter().enumerate() {
            let s = shift(m);
            if s > self.max_q {
                continue;
            }
            out.coeffs[m][s..].clone_from_slice(&row[..=self.max_q - s]);
        }
        out
    }

    /// Sum over all `t`-degrees in the window (evaluation at `t = 1`).
    pub fn t_marginal(&self) -> Self {
        let mut out = Self::zero(self.max_q, 0);
        for row in &self.coeffs {
            for (dst, c) in out.coeffs[0].iter_mut().zip(row) {
                *dst += c;
            }
        }
        out
    }

    pub fn first_negative(&self) -> Option<(usize, usize, BigInt)> {
        self.terms().find(|(_, _, c)| c.is_negative()).map(|(m, n, c)| (n, m, c.clone()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesWire::from(self)).expect("series serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: SeriesWire =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("series json: {e}")))?;
        Self::try_from(wire)
    }

    fn zip_with(&self, rhs: &BiSeries, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> BiSeries {
        let max_q = self.max_q.min(rhs.max_q);
        let max_t = self.max_t.min(rhs.max_t);
        let coeffs = (0..=max_t)
            .map(|m| (0..=max_q).map(|n| f(&self.coeffs[m][n], &rhs.coeffs[m][n])).collect())
            .collect();
        BiSeries { max_q, max_t, coeffs }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    max_q: usize,
    max_t: usize,
    terms: Vec<(usize, usize, String)>,
}

impl From<&BiSeries> for SeriesWire {
    fn from(s: &BiSeries) -> Self {
        SeriesWire {
            max_q: s.max_q,
            max_t: s.max_t,
            terms: s.terms().map(|(m, n, c)| (m, n, c.to_string())).collect(),
        }
    }
}

impl TryFrom<SeriesWire> for BiSeries {
    type Error = Error;
    fn try_from(w: SeriesWire) -> Result<Self> {
        let mut s = BiSeries::zero(w.max_q, w.max_t);
        for (m, n, c) in w.terms {
            if n > w.max_q || m > w.max_t {
                return Err(Error::OutOfWindow { n, m, max_q: w.max_q, max_t: w.max_t });
            }
            s.coeffs[m][n] = c
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient '{c}'")))?;
        }
        Ok(s)
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let max_q = self.max_q.min(rhs.max_q);
        let max_t = self.max_t.min(rhs.max_t);
        let mut out = BiSeries::zero(max_q, max_t);
        for ta in 0..=max_t {
            for qa in 0..=max_q {
                let a = &self.coeffs[ta][qa];
                if a.is_zero() {
                    continue;
                }
                for tb in 0..=max_t - ta {
                    let (src, dst) = (&rhs.coeffs[tb], &mut out.coeffs[ta + tb]);
                    for qb in 0..=max_q - qa {
                        let b = &src[qb];
                        if !b.is_zero() {
                            dst[qa + qb] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which finite Pochhammer product to build: `n` factors (standard) or the
/// `n + 1` factors `(1-a)(1-aq)...(1-aq^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Inclusive,
}

fn check_infinite(x_dt: usize, x_dq: usize, base_dq: usize) -> Result<()> {
    if base_dq == 0 {
        return invalid("infinite Pochhammer product needs a base step of at least 1");
    }
    if x_dt == 0 && x_dq == 0 {
        return invalid("infinite Pochhammer product with x = 1 vanishes");
    }
    Ok(())
}

/// `1/(x; q^base)_inf` with `x = t^x_dt q^x_dq`, expanded as
/// `sum x^n / (q^base; q^base)_n`.
pub fn inv_pochhammer(x_dt: usize, x_dq: usize, base_dq: usize, max_q: usize, max_t: usize) -> Result<BiSeries> {
    check_infinite(x_dt, x_dq, base_dq)?;
    let mut total = BiSeries::one(max_q, max_t);
    let mut term = BiSeries::one(max_q, max_t);
    let mut n = 1;
    while n * x_dt <= max_t && n * x_dq <= max_q {
        term = term.shift(x_dt, x_dq).mul_geometric_inverse(0, base_dq * n)?;
        total = &total + &term;
        n += 1;
    }
    Ok(total)
}

/// `1/(x; q^base)_inf` as an iterated product of geometric series.
pub fn inv_pochhammer_product(x_dt: usize, x_dq: usize, base_dq: usize, max_q: usize, max_t: usize) -> Result<BiSeries> {
    check_infinite(x_dt, x_dq, base_dq)?;
    let mut out = BiSeries::one(max_q, max_t);
    if x_dt > max_t {
        return Ok(out);
    }
    let mut dq = x_dq;
    while dq <= max_q {
        out = out.mul_geometric_inverse(x_dt, dq)?;
        dq += base_dq;
    }
    Ok(out)
}

/// `(x; q^base)_inf` via the alternating Euler sum
/// `sum (-1)^n x^n q^(base n(n-1)/2) / (q^base; q^base)_n`.
pub fn neg_pochhammer_alternating(x_dt: usize, x_dq: usize, base_dq: usize, max_q: usize, max_t: usize) -> Result<BiSeries> {
    check_infinite(x_dt, x_dq, base_dq)?;
    let mut total = BiSeries::one(max_q, max_t);
    let mut term = BiSeries::one(max_q, max_t);
    let mut n = 1;
    while n * x_dt <= max_t && n * x_dq + base_dq * n * (n - 1) / 2 <= max_q {
        term = (-&term).shift(x_dt, x_dq + base_dq * (n - 1)).mul_geometric_inverse(0, base_dq * n)?;
        total = &total + &term;
        n += 1;
    }
    Ok(total)
}

/// `(x; q^base)_inf` as a direct product of `(1 - x q^(base k))` factors.
pub fn pochhammer_product(x_dt: usize, x_dq: usize, base_dq: usize, max_q: usize, max_t: usize) -> Result<BiSeries> {
    check_infinite(x_dt, x_dq, base_dq)?;
    let mut out = BiSeries::one(max_q, max_t);
    if x_dt > max_t {
        return Ok(out);
    }
    let mut dq = x_dq;
    while dq <= max_q {
        out = out.mul_one_minus(x_dt, dq);
        dq += base_dq;
    }
    Ok(out)
}

/// Finite product `(x; q^base)_n`, with the factor count set by `convention`.
pub fn finite_pochhammer(
    x_dt: usize,
    x_dq: usize,
    base_dq: usize,
    n: usize,
    convention: Convention,
    max_q: usize,
    max_t: usize,
) -> BiSeries {
    let factors = match convention {
        Convention::Standard => n,
        Convention::Inclusive => n + 1,
    };
    let mut out = BiSeries::one(max_q, max_t);
    for k in 0..factors {
        out = out.mul_one_minus(x_dt, x_dq + base_dq * k);
    }
    out
}
