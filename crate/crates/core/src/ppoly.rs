//! The base-partition polynomials `P(m1, m2, m3, s; q)`: the memoized
//! recursion, Gaussian binomials, the closed special cases and an
//! enumeration oracle.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{internal, Result};
use crate::moves::enumerate_bases_bounded;
use crate::qseries::QPoly;

/// Arguments of `P_parity(m1, m2, m3, s; q)`. The largest pair of a counted
/// base is `[s-1, s-1]` for parity 0 and `[s-1, s]` for parity 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PKey {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    pub s: i64,
    pub parity: u8,
}

impl PKey {
    pub fn new(m1: i64, m2: i64, m3: i64, s: i64, parity: u8) -> Self {
        PKey { m1, m2, m3, s, parity }
    }
}

impl fmt::Display for PKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}({},{},{},{})", self.parity, self.m1, self.m2, self.m3, self.s)
    }
}

/// Memo table for the recursion. Not shared between threads; see [`p`] for
/// the per-thread instance.
#[derive(Debug, Default)]
pub struct PTable {
    memo: HashMap<PKey, QPoly>,
}

impl PTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Every memoized value computed so far.
    pub fn entries(&self) -> impl Iterator<Item = (&PKey, &QPoly)> {
        self.memo.iter()
    }

    pub fn p(&mut self, m1: i64, m2: i64, m3: i64, s: i64) -> Result<QPoly> {
        let a = self.p_parity(PKey::new(m1, m2, m3, s, 0))?;
        let b = self.p_parity(PKey::new(m1, m2, m3, s, 1))?;
        Ok(&a + &b)
    }

    pub fn p_parity(&mut self, k: PKey) -> Result<QPoly> {
        if k.m1 < 0 || k.m2 < 0 || k.m3 < 0 || k.s <= 0 {
            return Ok(QPoly::zero());
        }
        if k.m1 == 0 && k.m2 == 0 && k.m3 == 0 {
            return Ok(if k.s == 1 && k.parity == 0 { QPoly::one() } else { QPoly::zero() });
        }
        if let Some(v) = self.memo.get(&k) {
            return Ok(v.clone());
        }
        let (m1, m2, m3, m) = (k.m1, k.m2, k.m3, k.s - 1);
        let mut acc = QPoly::zero();
        if k.parity == 0 {
            let mut near = self.p_parity(PKey::new(m1 - 1, m2, m3, m, 0))?;
            near += &self.p_parity(PKey::new(m1 - 1, m2, m3, m - 1, 1))?;
            near += &self.p_parity(PKey::new(m1 - 1, m2, m3, m - 1, 0))?;
            acc += &near.shift(2 * m as usize);
            let mut block = self.p_parity(PKey::new(m1, m2, m3 - 1, m - 3, 1))?;
            block += &self.p_parity(PKey::new(m1, m2, m3 - 1, m - 3, 0))?;
            block += &self.p_parity(PKey::new(m1, m2, m3 - 1, m - 4, 1))?;
            if !block.is_zero() {
                let e = 5 * m - 7;
                if e < 0 {
                    return internal(format!("{k}: q^{e} multiplies a non-zero bracket"));
                }
                acc += &block.shift(e as usize);
            }
        } else {
            let mut near = self.p_parity(PKey::new(m1, m2 - 1, m3, m, 1))?;
            near += &self.p_parity(PKey::new(m1, m2 - 1, m3, m, 0))?;
            near += &self.p_parity(PKey::new(m1, m2 - 1, m3, m - 1, 1))?;
            acc += &near.shift(2 * m as usize + 1);
        }
        if !acc.is_nonnegative() {
            return internal(format!("{k} has a negative coefficient"));
        }
        self.memo.insert(k, acc.clone());
        Ok(acc)
    }
}

thread_local! {
    static TABLE: RefCell<PTable> = RefCell::new(PTable::new());
}

/// `P_parity` through this thread's memo table.
pub fn p_parity(k: PKey) -> Result<QPoly> {
    TABLE.with(|t| t.borrow_mut().p_parity(k))
}

/// `P = P_0 + P_1` through this thread's memo table.
pub fn p(m1: i64, m2: i64, m3: i64, s: i64) -> Result<QPoly> {
    TABLE.with(|t| t.borrow_mut().p(m1, m2, m3, s))
}

/// Range of `s` outside which `P(m1, m2, m3, s)` has been observed to vanish.
pub fn support_window(m1: i64, m2: i64, m3: i64) -> (i64, i64) {
    (m1 + m2 + 4 * m3 + 1, 2 * (m1 + m2) + 4 * m3 + 1)
}

/// Gaussian binomial `[n choose k]` in `q^base`; zero for negative or
/// out-of-range arguments.
pub fn qbinomial(n: i64, k: i64, base: usize) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let mut row = vec![QPoly::one()];
    for nn in 1..=n {
        let width = nn.min(k);
        let mut next = Vec::with_capacity(width + 1);
        for j in 0..=width {
            let mut v = if j < row.len() && j < nn { row[j].shift(j * base) } else { QPoly::zero() };
            if j >= 1 {
                v += &row[j - 1];
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The special families of `P` with a closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `P(m1, 0, 0, m+1)`
    Px00 { m1: i64, m: i64 },
    /// `P(0, m2, 0, m+1)`, for `m2 >= 1`
    P0x0 { m2: i64, m: i64 },
    /// `P(0, 0, m3, m+1)`
    P00x { m3: i64, m: i64 },
    /// `P(m1, 0, m3, m1+4m3+1)`
    Px0x { m1: i64, m3: i64 },
    /// `P(0, m2, m3, m2+4m3+1)`
    P0xx { m2: i64, m3: i64 },
}

fn monomial_times(e: i64, poly: QPoly, what: &ClosedForm) -> Result<QPoly> {
    if poly.is_zero() {
        return Ok(poly);
    }
    if e < 0 {
        return internal(format!("{what:?}: negative exponent {e}"));
    }
    Ok(poly.shift(e as usize))
}

impl ClosedForm {
    /// `(m1, m2, m3, s)` of the polynomial this formula describes.
    pub fn key(&self) -> (i64, i64, i64, i64) {
        match *self {
            ClosedForm::Px00 { m1, m } => (m1, 0, 0, m + 1),
            ClosedForm::P0x0 { m2, m } => (0, m2, 0, m + 1),
            ClosedForm::P00x { m3, m } => (0, 0, m3, m + 1),
            ClosedForm::Px0x { m1, m3 } => (m1, 0, m3, m1 + 4 * m3 + 1),
            ClosedForm::P0xx { m2, m3 } => (0, m2, m3, m2 + 4 * m3 + 1),
        }
    }

    pub fn in_shape(&self) -> bool {
        let (m1, m2, m3, _) = self.key();
        let counts = m1 >= 0 && m2 >= 0 && m3 >= 0;
        match self {
            ClosedForm::P0x0 { m2, .. } => counts && *m2 >= 1,
            _ => counts,
        }
    }

    fn block_exponent(m3: i64) -> i64 {
        10 * m3 * m3 + 3 * m3
    }

    fn evaluate_with(&self, block: impl Fn(i64) -> i64) -> Result<QPoly> {
        match *self {
            ClosedForm::Px00 { m1, m } => {
                monomial_times(2 * m1 * m1 - 2 * m * m1 + m * m + m, qbinomial(m1, m - m1, 2), self)
            }
            ClosedForm::P0x0 { m2, m } => monomial_times(
                2 * m2 * m2 + m2 - 2 * m * m2 + m * m + m,
                qbinomial(m2 - 1, m - m2, 2),
                self,
            ),
            ClosedForm::P00x { m3, m } => {
                if m3 >= 0 && m == 4 * m3 {
                    monomial_times(block(m3), QPoly::one(), self)
                } else {
                    Ok(QPoly::zero())
                }
            }
            ClosedForm::Px0x { m1, m3 } => {
                monomial_times(m1 * m1 + m1 + 5 * m1 * m3 + block(m3), qbinomial(m1 + m3, m1, 3), self)
            }
            ClosedForm::P0xx { m2, m3 } => {
                monomial_times(m2 * m2 + 2 * m2 + 5 * m2 * m3 + block(m3), qbinomial(m2 + m3, m2, 3), self)
            }
        }
    }

    /// The formula with block contribution `q^(10 m3^2 + 3 m3)`.
    pub fn evaluate(&self) -> Result<QPoly> {
        self.evaluate_with(Self::block_exponent)
    }

    /// The formula with the block contribution as it circulates in print:
    /// `10 m3^2 + 23 m3` for the pure-block family, `10 m3 + 23 m3` for the
    /// two mixed families.
    pub fn evaluate_printed(&self) -> Result<QPoly> {
        match self {
            ClosedForm::P00x { .. } => self.evaluate_with(|m3| 10 * m3 * m3 + 23 * m3),
            ClosedForm::Px0x { .. } | ClosedForm::P0xx { .. } => self.evaluate_with(|m3| 10 * m3 + 23 * m3),
            _ => self.evaluate(),
        }
    }
}

pub fn closed_form(kind: ClosedForm) -> Result<QPoly> {
    kind.evaluate()
}

/// Every in-shape closed form with `m1, m2 <= max_m12`, `m3 <= max_m3`,
/// over the whole `s` range where the recursion can be non-zero.
pub fn closed_form_grid(max_m12: i64, max_m3: i64) -> Vec<ClosedForm> {
    let mut out = Vec::new();
    for x in 0..=max_m12 {
        for m in 0..=2 * x + 2 {
            out.push(ClosedForm::Px00 { m1: x, m });
            if x >= 1 {
                out.push(ClosedForm::P0x0 { m2: x, m });
            }
        }
        for m3 in 0..=max_m3 {
            out.push(ClosedForm::Px0x { m1: x, m3 });
            out.push(ClosedForm::P0xx { m2: x, m3 });
        }
    }
    for m3 in 0..=max_m3 {
        for m in 0..=4 * m3 + 2 {
            out.push(ClosedForm::P00x { m3, m });
        }
    }
    out
}

/// A parameter set where the printed block exponent disagrees with the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub form: ClosedForm,
    pub printed: QPoly,
    pub corrected: QPoly,
    pub recursion: QPoly,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m1, m2, m3, s) = self.form.key();
        write!(
            f,
            "P({m1},{m2},{m3},{s}): printed {} / corrected {} / recursion {}",
            self.printed, self.corrected, self.recursion
        )
    }
}

/// Compares the printed block exponent against the recursion for every
/// block-bearing closed form with `m1, m2 <= max_m12` and `m3 <= max_m3`.
pub fn printed_exponent_report(max_m12: i64, max_m3: i64) -> Result<Vec<Discrepancy>> {
    let mut forms = Vec::new();
    for m3 in 0..=max_m3 {
        forms.push(ClosedForm::P00x { m3, m: 4 * m3 });
        // at x = 0 both mixed families reduce to the pure-block one
        for x in 1..=max_m12 {
            forms.push(ClosedForm::Px0x { m1: x, m3 });
            forms.push(ClosedForm::P0xx { m2: x, m3 });
        }
    }
    let mut out = Vec::new();
    for form in forms {
        let (m1, m2, m3, s) = form.key();
        let recursion = p(m1, m2, m3, s)?;
        let printed = form.evaluate_printed()?;
        if printed != recursion {
            out.push(Discrepancy { form, printed, corrected: form.evaluate()?, recursion });
        }
    }
    Ok(out)
}

/// `sum q^(structure weight)` over enumerated bases with the given census
/// whose largest pair is `[s-1, s-1]` (parity 0) or `[s-1, s]` (parity 1).
pub fn p_oracle(m1: i64, m2: i64, m3: i64, s: i64, parity: u8) -> Result<QPoly> {
    if m1 < 0 || m2 < 0 || m3 < 0 || s <= 0 {
        return Ok(QPoly::zero());
    }
    let (c1, c2, c3) = (m1 as usize, m2 as usize, m3 as usize);
    let parts = 2 * (c1 + c2 + 2 * c3) + c3;
    let max_weight = s as u64 * parts as u64;
    let mut terms = Vec::new();
    for b in enumerate_bases_bounded(c1, c2, c3, max_weight, s as u32)? {
        if i64::from(b.largest_pair) + 1 == s && b.parity == parity {
            terms.push((b.weight as usize, 1));
        }
    }
    Ok(QPoly::from_terms(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn initial_values() {
        assert_eq!(p_parity(PKey::new(0, 0, 0, 1, 0)).unwrap(), QPoly::one());
        assert_eq!(p_parity(PKey::new(0, 0, 0, 1, 1)).unwrap(), QPoly::zero());
        assert_eq!(p(0, 0, 0, 2).unwrap(), QPoly::zero());
        assert_eq!(p(0, 0, 0, 0).unwrap(), QPoly::zero());
        assert_eq!(p(-1, 0, 0, 3).unwrap(), QPoly::zero());
    }

    #[test]
    fn table_values() {
        assert_eq!(p_parity(PKey::new(0, 0, 1, 5, 0)).unwrap(), poly("q^13"));
        assert_eq!(p(1, 1, 0, 3).unwrap(), poly("q^7"));
        assert_eq!(p(1, 1, 0, 4).unwrap(), poly("q^11 + q^9"));
        assert_eq!(p(2, 2, 0, 6).unwrap(), poly("q^30 + 2q^28 + 2q^26 + 2q^24"));
        assert_eq!(p(0, 0, 2, 9).unwrap(), poly("q^46"));
        assert_eq!(p(1, 0, 1, 6).unwrap(), poly("q^23 + q^20"));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinomial(2, 1, 2), poly("1 + q^2"));
        assert_eq!(qbinomial(7, 0, 3), QPoly::one());
        assert_eq!(qbinomial(4, 2, 1), poly("1 + q + 2q^2 + q^3 + q^4"));
        assert_eq!(qbinomial(-1, 0, 1), QPoly::zero());
        assert_eq!(qbinomial(3, 4, 1), QPoly::zero());
        for n in 1..9 {
            for k in 0..=n {
                let lhs = qbinomial(n, k, 2);
                let rhs = &qbinomial(n - 1, k, 2).shift(2 * k as usize) + &qbinomial(n - 1, k - 1, 2);
                assert_eq!(lhs, rhs);
                assert_eq!(lhs.degree(), Some((2 * k * (n - k)) as usize));
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        for m in 0..6 {
            let v = closed_form(ClosedForm::Px00 { m1: m, m }).unwrap();
            assert_eq!(v, QPoly::monomial(1, (m * m + m) as usize));
        }
        assert_eq!(closed_form(ClosedForm::P00x { m3: 2, m: 8 }).unwrap(), poly("q^46"));
        assert_eq!(closed_form(ClosedForm::P00x { m3: 2, m: 7 }).unwrap(), QPoly::zero());
        assert_eq!(closed_form(ClosedForm::Px0x { m1: 1, m3: 1 }).unwrap(), poly("q^20 + q^23"));
        assert_eq!(ClosedForm::P00x { m3: 2, m: 8 }.evaluate_printed().unwrap(), poly("q^86"));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(p_oracle(0, 0, 1, 5, 0).unwrap(), poly("q^13"));
        assert_eq!(p_oracle(1, 0, 0, 2, 0).unwrap(), poly("q^2"));
        assert_eq!(p_oracle(0, 1, 0, 2, 1).unwrap(), poly("q^3"));
        assert_eq!(p_oracle(0, 0, 0, 1, 0).unwrap(), QPoly::one());
    }

    #[test]
    fn separate_tables_agree() {
        let mut t = PTable::new();
        assert_eq!(t.p(2, 2, 1, 10).unwrap(), p(2, 2, 1, 10).unwrap());
        assert!(!t.is_empty());
        assert!(t.entries().all(|(_, v)| v.is_nonnegative()));
    }
}
