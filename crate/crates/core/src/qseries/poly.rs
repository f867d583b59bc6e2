use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error};

/// Polynomial in `q` with exact integer coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt> + Clone>(terms: &[(usize, C)]) -> Self {
        let len = terms.iter().map(|(e, _)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in terms {
            coeffs[*e] += c.clone().into();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Substitutes `q -> q^c`.
    pub fn stretch(&self, c: usize) -> Self {
        assert!(c >= 1, "stretch factor must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * c + 1];
        for (e, v) in self.coeffs.iter().enumerate() {
            coeffs[e * c] = v.clone();
        }
        QPoly { coeffs }
    }

    pub fn truncate(&self, max_q: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_q + 1).cloned().collect())
    }

    pub fn mul_truncated(&self, other: &QPoly, max_q: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_q + 1);
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Non-zero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// `[[exponent, coefficient], ...]` in descending exponent order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let rows = self
            .terms()
            .rev()
            .map(|(e, c)| {
                let c: serde_json::Number = c.to_string().parse().expect("integer literal");
                serde_json::json!([e, c])
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Truncated expansion of `1/(q^base; q^base)_n`.
    pub fn inv_finite_pochhammer(base: usize, n: usize, max_q: usize) -> Self {
        assert!(base >= 1, "base step must be positive");
        let mut c = vec![BigInt::zero(); max_q + 1];
        c[0] = BigInt::one();
        for i in 1..=n {
            let step = base * i;
            if step > max_q {
                break;
            }
            for e in step..=max_q {
                let prev = c[e - step].clone();
                c[e] += prev;
            }
        }
        Self::from_coeffs(c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Parses the display form, e.g. `q^30 + 2q^28 - q + 3`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return invalid("empty polynomial");
        }
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, exp) = match term.find('q') {
                None => (term, 0usize),
                Some(pos) => {
                    let tail = &term[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else if let Some(digits) = tail.strip_prefix('^') {
                        digits
                            .parse()
                            .map_err(|_| Error::InvalidInput(format!("bad exponent in '{term}'")))?
                    } else {
                        return invalid(format!("bad term '{term}'"));
                    };
                    (&term[..pos], exp)
                }
            };
            let mut c: BigInt = if coef.is_empty() {
                if exp == 0 && !term.contains('q') {
                    return invalid(format!("empty term in '{s}'"));
                }
                BigInt::one()
            } else {
                coef.parse()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient in '{term}'")))?
            };
            if neg {
                c = -c;
            }
            terms.push((exp, c));
        }
        Ok(QPoly::from_terms(&terms))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (dst, c) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *dst += c;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let cap = (self.coeffs.len() + rhs.coeffs.len()).saturating_sub(2);
        self.mul_truncated(rhs, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_round_trip() {
        let p = QPoly::from_terms(&[(30, 1), (28, 2), (26, 2), (24, 2)]);
        assert_eq!(p.to_string(), "q^30 + 2q^28 + 2q^26 + 2q^24");
        assert_eq!(p.to_string().parse::<QPoly>().unwrap(), p);
        let r = QPoly::from_terms(&[(0, 3), (1, -1), (2, 1)]);
        assert_eq!(r.to_string(), "q^2 - q + 3");
        assert_eq!("q^2 - q + 3".parse::<QPoly>().unwrap(), r);
        assert_eq!("0".parse::<QPoly>().unwrap(), QPoly::zero());
        assert_eq!(QPoly::zero().to_string(), "0");
        assert!("q^".parse::<QPoly>().is_err());
        assert!("2x".parse::<QPoly>().is_err());
    }

    #[test]
    fn trims_and_degrees() {
        let p = QPoly::from_terms(&[(3, 0), (1, 2)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.low_degree(), Some(1));
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!((&p - &p), QPoly::zero());
    }

    #[test]
    fn stretch_and_shift() {
        let p = QPoly::from_terms(&[(0, 1), (1, 1)]);
        assert_eq!(p.stretch(3).shift(2), QPoly::from_terms(&[(2, 1), (5, 1)]));
    }

    #[test]
    fn inverse_pochhammer_counts_partitions() {
        let p = QPoly::inv_finite_pochhammer(1, 100, 7);
        let expect: Vec<BigInt> = [1, 1, 2, 3, 5, 7, 11, 15].iter().map(|&v| v.into()).collect();
        assert_eq!(p.coeffs(), &expect[..]);
        assert_eq!(QPoly::inv_finite_pochhammer(1, 1, 4), QPoly::from_terms(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn json_rows_descend() {
        let p = QPoly::from_terms(&[(9, 1), (11, 1)]);
        assert_eq!(p.to_json_value().to_string(), "[[11,1],[9,1]]");
    }
}
