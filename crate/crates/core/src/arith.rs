//! Exact scalars and the `q`-context.
//!
//! `q` is stored through its eighth root `u` (`q = u^8`), so every power
//! `q^{k/8}` the formulas need (half-integer, quarter-integer and Gaussian
//! exponents such as `q^{(2n-1)^2/8}`) is a plain rational `u^k`.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. Always in lowest terms with positive
/// denominator (guaranteed by `num`).
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. A leading Unicode minus is accepted.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    match cleaned.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(
            BigInt::from_str(&cleaned).map_err(|_| bad())?,
        )),
    }
}

/// Canonical text form: `"p/q"` in lowest terms, `"p"` for integers.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Returns `x` if nonzero, otherwise a degenerate-parameter error.
pub fn nonzero(x: Scalar, what: impl FnOnce() -> String) -> Result<Scalar> {
    if x.is_zero() {
        Err(Error::Degenerate(what()))
    } else {
        Ok(x)
    }
}

/// Exact `1/x` with a degenerate-parameter error for `x == 0`.
pub fn checked_inv(x: &Scalar, what: impl FnOnce() -> String) -> Result<Scalar> {
    if x.is_zero() {
        Err(Error::Degenerate(what()))
    } else {
        Ok(x.recip())
    }
}

/// `x^k` for any integer `k`; `x` must be nonzero when `k < 0`.
pub fn pow_i(x: &Scalar, k: i64) -> Scalar {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num::traits::pow(base, k.unsigned_abs() as usize)
}

/// Numeric realisation of the formal parameter `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext {
    u: Scalar,
    q: Scalar,
    sqrt_q: Scalar,
}

impl QContext {
    /// Builds a context from the eighth root `u`. Rejects `u` in
    /// `{0, 1, -1}` and any `|u| = 1`, so `q^k != 1` for every `k >= 1`.
    pub fn new(u: Scalar) -> Result<Self> {
        if u.is_zero() || u.abs().is_one() {
            return Err(Error::Degenerate(format!(
                "u = {u} is not admissible (need u != 0 and |u| != 1)"
            )));
        }
        let sqrt_q = pow_i(&u, 4);
        let q = &sqrt_q * &sqrt_q;
        Ok(QContext { u, q, sqrt_q })
    }

    pub fn u(&self) -> &Scalar {
        &self.u
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// `q^{1/2}`
    pub fn sqrt_q(&self) -> &Scalar {
        &self.sqrt_q
    }

    /// `q^{k/8} = u^k`.
    pub fn qpow(&self, eighths: i64) -> Scalar {
        pow_i(&self.u, eighths)
    }

    /// `q^n` for integer `n`.
    pub fn qint(&self, n: i64) -> Scalar {
        self.qpow(8 * n)
    }

    /// `q^{n/2}`.
    pub fn qhalf(&self, n: i64) -> Scalar {
        self.qpow(4 * n)
    }

    /// `1 - c q^n`.
    pub fn one_minus(&self, c: &Scalar, n: i64) -> Scalar {
        Scalar::one() - c * self.qint(n)
    }

    /// `1 / (1 - c q^n)`, failing when the factor vanishes.
    pub fn inv_one_minus(&self, c: &Scalar, n: i64) -> Result<Scalar> {
        checked_inv(&self.one_minus(c, n), || format!("1 - ({c}) q^{n} = 0"))
    }

    /// `(a; q^{dir})_k = prod_{m<k} (1 - a q^{dir m})`.
    pub fn qpochhammer(&self, a: &Scalar, k: usize, dir: Direction) -> Scalar {
        let step = dir.sign();
        (0..k as i64).fold(Scalar::one(), |acc, m| acc * self.one_minus(a, step * m))
    }

    /// `(q; q)_k`
    pub fn q_factorial(&self, k: usize) -> Scalar {
        self.qpochhammer(&self.q.clone(), k, Direction::Up)
    }

    /// True when `v = q^n` for some `|n| <= range` (half-integer steps included).
    pub fn is_q_power(&self, v: &Scalar, range: i64) -> bool {
        (-2 * range..=2 * range).any(|h| &self.qhalf(h) == v)
    }
}

/// Direction of a `q`-Pochhammer product: base `q` or base `q^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn sign(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }
}

// Truncated power series in a single variable, stored as dense coefficient
// vectors starting at degree 0. Used for generating functions H(z), E(z).

/// Product of two truncated series, keeping degrees `0..=n`.
pub fn series_mul(a: &[Scalar], b: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Multiplicative inverse of a truncated series with nonzero constant term.
pub fn series_inv(a: &[Scalar], n: usize) -> Result<Vec<Scalar>> {
    let a0 = a.first().cloned().unwrap_or_else(Scalar::zero);
    let inv0 = checked_inv(&a0, || "series with zero constant term".into())?;
    let mut out = vec![Scalar::zero(); n + 1];
    out[0] = inv0.clone();
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for i in 1..=k.min(a.len().saturating_sub(1)) {
            acc += &a[i] * &out[k - i];
        }
        out[k] = -acc * &inv0;
    }
    Ok(out)
}

/// Coefficients of `1/(1 - c z)` through degree `n`.
pub fn geometric(c: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = Scalar::one();
    for _ in 0..=n {
        out.push(p.clone());
        p *= c;
    }
    out
}

/// Coefficients of `1 + c z` padded to degree `n`.
pub fn linear(c: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n + 1];
    out[0] = Scalar::one();
    if n >= 1 {
        out[1] = c.clone();
    }
    out
}
