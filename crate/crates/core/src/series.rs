//! Truncated Laurent series with an explicit validity window.

use std::fmt;

use num::{One, Zero};

use crate::arith::{format_scalar, QContext, Scalar};

/// `Σ_{n=lo}^{hi} c_n x^n`, where every coefficient below `lo` is known to
/// vanish and coefficients above `hi` are unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    lo: i64,
    hi: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentSeries {
    /// `coeffs[k]` is the coefficient of `x^{lo+k}`; `hi = lo + len - 1`.
    pub fn new(lo: i64, coeffs: Vec<Scalar>) -> Self {
        let hi = lo + coeffs.len() as i64 - 1;
        LaurentSeries { lo, hi, coeffs }
    }

    /// The zero series known on `[lo, hi]`.
    pub fn zero(lo: i64, hi: i64) -> Self {
        let n = (hi - lo + 1).max(0) as usize;
        LaurentSeries {
            lo,
            hi,
            coeffs: vec![Scalar::zero(); n],
        }
    }

    /// `x^n` known exactly through `hi`.
    pub fn monomial(n: i64, c: Scalar, hi: i64) -> Self {
        let mut s = Self::zero(n, hi.max(n));
        s.coeffs[0] = c;
        s.hi = hi;
        s.coeffs.truncate((hi - n + 1).max(0) as usize);
        s
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^n`: zero below the window, `None` above it.
    pub fn coeff(&self, n: i64) -> Option<Scalar> {
        if n > self.hi {
            None
        } else if n < self.lo {
            Some(Scalar::zero())
        } else {
            Some(self.coeffs[(n - self.lo) as usize].clone())
        }
    }

    fn get(&self, n: i64) -> Scalar {
        self.coeff(n).expect("coefficient outside known window")
    }

    /// Lowest degree with a nonzero coefficient inside the window.
    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.lo + k as i64)
    }

    /// Restricts the known range to `..= hi`.
    pub fn truncate(&self, hi: i64) -> Self {
        let hi = hi.min(self.hi);
        let n = (hi - self.lo + 1).max(0) as usize;
        LaurentSeries {
            lo: self.lo,
            hi,
            coeffs: self.coeffs[..n.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^a`.
    pub fn shift(&self, a: i64) -> Self {
        LaurentSeries {
            lo: self.lo + a,
            hi: self.hi + a,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi.min(other.hi);
        let coeffs = (lo..=hi).map(|n| self.get(n) + other.get(n)).collect();
        LaurentSeries { lo, hi, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lo + other.lo;
        let hi = (self.hi + other.lo).min(other.hi + self.lo);
        let mut coeffs = vec![Scalar::zero(); (hi - lo + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] += a * b;
            }
        }
        LaurentSeries { lo, hi, coeffs }
    }

    /// `f(x) ↦ f(c x)`.
    pub fn dilate(&self, c: &Scalar) -> Self {
        let coeffs = (self.lo..=self.hi)
            .map(|n| self.get(n) * crate::arith::pow_i(c, n))
            .collect();
        LaurentSeries {
            lo: self.lo,
            hi: self.hi,
            coeffs,
        }
    }

    /// `f(x) ↦ f(q x)`, the action of `q^D`.
    pub fn q_shift(&self, ctx: &QContext) -> Self {
        self.dilate(ctx.q())
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Compares on `[min lo, min hi]`. Returns `Ok(None)` when equal,
    /// `Ok(Some(n))` with the first differing degree otherwise, and `Err`
    /// with the overlap length when that is shorter than `min_len`.
    pub fn compare(&self, other: &Self, min_len: i64) -> Result<Option<i64>, i64> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi.min(other.hi);
        let len = hi - lo + 1;
        if len < min_len {
            return Err(len);
        }
        Ok((lo..=hi).find(|&n| self.get(n) != other.get(n)))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})x^{}", format_scalar(c), self.lo + k as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.hi + 1)
    }
}

/// Minimum overlap for any series equality assertion.
pub const MIN_WINDOW: i64 = 10;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn product_window() {
        let a = LaurentSeries::new(-1, vec![int(1), int(2), int(3)]); // [-1,1]
        let b = LaurentSeries::new(0, vec![int(1), int(1), int(1), int(1)]); // [0,3]
        let c = a.mul(&b);
        assert_eq!(c.window(), (-1, 1));
        assert_eq!(c.coeffs(), &[int(1), int(3), int(6)]);
    }

    #[test]
    fn sum_window_and_compare() {
        let a = LaurentSeries::new(0, vec![int(1); 12]);
        let b = LaurentSeries::new(2, vec![int(1); 20]);
        let s = a.add(&b);
        assert_eq!(s.window(), (0, 11));
        assert_eq!(s.coeff(1), Some(int(1)));
        assert_eq!(s.coeff(2), Some(int(2)));
        assert_eq!(a.compare(&a.clone(), MIN_WINDOW), Ok(None));
        assert_eq!(a.compare(&b, MIN_WINDOW), Ok(Some(0)));
        assert_eq!(a.compare(&a.truncate(5), MIN_WINDOW), Err(6));
    }

    #[test]
    fn shift_and_dilate() {
        let a = LaurentSeries::new(0, vec![int(1), int(1)]);
        let s = a.shift(-1);
        assert_eq!(s.window(), (-1, 0));
        let d = a.dilate(&rat(1, 2));
        assert_eq!(d.coeffs(), &[int(1), rat(1, 2)]);
        assert_eq!(LaurentSeries::monomial(3, int(5), 6).coeffs().len(), 4);
    }
}
