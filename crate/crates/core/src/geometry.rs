//! Parameter sets for the geometries: strip chains and the closed
//! topological vertex.

use std::fmt;

use num::{One, Zero};

use crate::arith::Scalar;
use crate::error::{Error, Result};

/// Direction of the vertical leg at a strip vertex: `+1` up, `-1` down.
pub type Sign = i8;

#[derive(Debug, Clone, PartialEq)]
pub struct StripSpec {
    pub sigma: Vec<Sign>,
    /// `Q_1 .. Q_{N-1}`.
    pub kahler: Vec<Scalar>,
}

impl StripSpec {
    pub fn new(sigma: Vec<Sign>, kahler: Vec<Scalar>) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::Invalid("strip needs at least one vertex".into()));
        }
        if sigma.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Invalid(format!("signs must be +1/-1: {sigma:?}")));
        }
        if kahler.len() + 1 != sigma.len() {
            return Err(Error::Invalid(format!(
                "{} vertices need {} Kähler parameters, got {}",
                sigma.len(),
                sigma.len() - 1,
                kahler.len()
            )));
        }
        if kahler.iter().any(|q| q.is_zero()) {
            return Err(Error::Invalid("Kähler parameters must be nonzero".into()));
        }
        Ok(StripSpec { sigma, kahler })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// `σ_n`, 1-based.
    pub fn sign(&self, n: usize) -> Sign {
        self.sigma[n - 1]
    }

    /// `Q_{mn} = Q_m Q_{m+1} ... Q_{n-1}` for `m < n` (1-based).
    pub fn q_between(&self, m: usize, n: usize) -> Scalar {
        debug_assert!(m < n && n <= self.len());
        self.kahler[m - 1..n - 1]
            .iter()
            .fold(Scalar::one(), |acc, q| acc * q)
    }

    /// Same web diagram turned by 180 degrees: the right end becomes the
    /// left end and every vertical leg flips.
    pub fn rotated(&self) -> StripSpec {
        StripSpec {
            sigma: self.sigma.iter().rev().map(|s| -s).collect(),
            kahler: self.kahler.iter().rev().cloned().collect(),
        }
    }

    /// Sign pattern as a string such as `"+-+"`.
    pub fn pattern(&self) -> String {
        self.sigma
            .iter()
            .map(|s| if *s > 0 { '+' } else { '-' })
            .collect()
    }
}

/// Parses `"+-+"`; accepts the Unicode minus sign.
pub fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' | '\u{2212}' => Ok(-1),
            _ => Err(Error::Invalid(format!("bad sign character {c:?} in {s:?}"))),
        })
        .collect()
}

/// All `2^n` sign patterns of length `n`.
pub fn all_sign_patterns(n: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << n)
        .map(|bits| {
            (0..n)
                .map(|k| if bits >> (n - 1 - k) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// Kähler parameters of the closed topological vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CtvSpec {
    pub q1: Scalar,
    pub q2: Scalar,
    pub q3: Scalar,
}

impl CtvSpec {
    pub fn new(q1: Scalar, q2: Scalar, q3: Scalar) -> Result<Self> {
        if q1.is_zero() || q2.is_zero() || q3.is_zero() {
            return Err(Error::Invalid("closed vertex parameters must be nonzero".into()));
        }
        Ok(CtvSpec { q1, q2, q3 })
    }

    /// Builds without the nonzero check; used for degenerate limits.
    pub fn raw(q1: Scalar, q2: Scalar, q3: Scalar) -> Self {
        CtvSpec { q1, q2, q3 }
    }

    /// `Q_1 Q_2`, the parameter of the contents-product factor.
    pub fn p(&self) -> Scalar {
        &self.q1 * &self.q2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// Every generating function with a q-difference Kac–Schwarz description.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    C3,
    Conifold(Scalar),
    /// Vertical leg `n` (1-based) of a strip.
    StripVertical(StripSpec, usize),
    StripEnd(StripSpec, End),
    /// Leg 1 or 2 of the closed topological vertex.
    Ctv(CtvSpec, u8),
}

impl Geometry {
    pub fn validate(&self) -> Result<()> {
        match self {
            Geometry::C3 => Ok(()),
            Geometry::Conifold(q) => {
                if q.is_zero() {
                    Err(Error::Invalid("conifold Q must be nonzero".into()))
                } else {
                    Ok(())
                }
            }
            Geometry::StripVertical(spec, n) => {
                if *n == 0 || *n > spec.len() {
                    Err(Error::Invalid(format!("leg {n} out of range 1..={}", spec.len())))
                } else {
                    Ok(())
                }
            }
            Geometry::StripEnd(..) => Ok(()),
            Geometry::Ctv(_, leg) => {
                if *leg == 1 || *leg == 2 {
                    Ok(())
                } else {
                    Err(Error::Invalid(format!("closed vertex leg must be 1 or 2, got {leg}")))
                }
            }
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::C3 => write!(f, "c3"),
            Geometry::Conifold(q) => write!(f, "conifold(Q={q})"),
            Geometry::StripVertical(s, n) => {
                write!(f, "strip[{}](", s.pattern())?;
                write_list(f, &s.kahler)?;
                write!(f, ") leg {n}")
            }
            Geometry::StripEnd(s, e) => {
                write!(f, "strip[{}](", s.pattern())?;
                write_list(f, &s.kahler)?;
                let side = if *e == End::Left { "left" } else { "right" };
                write!(f, ") {side} end")
            }
            Geometry::Ctv(c, leg) => write!(f, "ctv(Q1={},Q2={},Q3={}) leg {leg}", c.q1, c.q2, c.q3),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[Scalar]) -> fmt::Result {
    for (k, x) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn q_between_products() {
        let s = StripSpec::new(vec![1, -1, 1], vec![rat(1, 3), rat(2, 5)]).unwrap();
        assert_eq!(s.q_between(1, 2), rat(1, 3));
        assert_eq!(s.q_between(2, 3), rat(2, 5));
        assert_eq!(s.q_between(1, 3), rat(2, 15));
    }

    #[test]
    fn rotation_is_involutive() {
        let s = StripSpec::new(vec![1, 1, -1], vec![rat(1, 3), rat(2, 5)]).unwrap();
        let r = s.rotated();
        assert_eq!(r.sigma, vec![1, -1, -1]);
        assert_eq!(r.kahler, vec![rat(2, 5), rat(1, 3)]);
        assert_eq!(r.rotated(), s);
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(parse_signs("+-+").unwrap(), vec![1, -1, 1]);
        assert_eq!(parse_signs("+\u{2212}").unwrap(), vec![1, -1]);
        assert!(parse_signs("+x").is_err());
        assert_eq!(all_sign_patterns(2), vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
        assert_eq!(all_sign_patterns(3).len(), 8);
    }
}
