//! q-difference operators in normal form `Σ_a x^a f_a(y)`, `y = q^D`.
//!
//! Products use the exchange rule `f(y) x^b = x^b f(q^b y)`. Operators that
//! are not rational in `y` (Gaussian weights, inverses of operators that raise
//! the x-degree) exist only as actions on truncated series.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::arith::{format_scalar, pow_i, QContext, Scalar};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Dense polynomial in `y`; no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `c y^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Scalar> {
        self.0.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().recip();
        let mut rem = self.0.clone();
        let mut quo = vec![Scalar::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &inv;
            for (j, b) in d.0.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, y: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * y + c)
    }

    /// `p(y) ↦ p(c y)`.
    pub fn dilate(&self, c: &Scalar) -> Poly {
        let mut p = Scalar::one();
        Poly::new(
            self.0
                .iter()
                .map(|a| {
                    let out = a * &p;
                    p *= c;
                    out
                })
                .collect(),
        )
    }

    /// `Some(k)` if the polynomial is `y^k` up to a constant.
    fn as_monomial(&self) -> Option<usize> {
        let d = self.degree()?;
        self.0[..d].iter().all(|c| c.is_zero()).then_some(d)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let y = match k {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            };
            if k == 0 {
                write!(f, "{}", format_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{y}")?;
            } else {
                write!(f, "{}·{y}", format_scalar(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Reduced rational function of `y` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: Poly,
    den: Poly,
}

impl RationalFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let l = d.lead().unwrap().recip();
        Ok(RationalFunc {
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn zero() -> Self {
        RationalFunc {
            num: Poly::zero(),
            den: Poly::constant(Scalar::one()),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFunc {
            num: Poly::constant(c),
            den: Poly::constant(Scalar::one()),
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn poly(p: Poly) -> Self {
        RationalFunc {
            num: p,
            den: Poly::constant(Scalar::one()),
        }
    }

    /// `c y^k` for any integer `k`.
    pub fn y_pow(c: Scalar, k: i64) -> Self {
        if k >= 0 {
            Self::poly(Poly::monomial(c, k as usize))
        } else {
            Self::new(Poly::constant(c), Poly::monomial(Scalar::one(), (-k) as usize))
                .expect("nonzero denominator")
        }
    }

    /// `1 - c y^k`.
    pub fn one_minus(c: &Scalar, k: i64) -> Self {
        Self::one().sub(&Self::y_pow(c.clone(), k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when the denominator is a power of `y`.
    pub fn is_laurent_poly(&self) -> bool {
        self.den.as_monomial().is_some()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Reciprocal.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(Self::one(), |acc, _| acc.mul(&base)))
    }

    /// `f(y) ↦ f(c y)`.
    pub fn dilate(&self, c: &Scalar) -> Self {
        Self::new(self.num.dilate(c), self.den.dilate(c)).expect("dilation of nonzero c")
    }

    /// Value at `y`, or `None` at a pole.
    pub fn eval(&self, y: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(y);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(y) / d)
        }
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Poly| {
                let t = p.to_string();
                if p.0.iter().filter(|c| !c.is_zero()).count() == 1 && !t.contains('/') {
                    t
                } else {
                    format!("({p})")
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// The reciprocal of a diagonal factor.
pub fn diag_inverse(f: &RationalFunc) -> Result<RationalFunc> {
    f.inv()
}

/// `Σ_a x^a f_a(y)` with `y = q^D`.
#[derive(Debug, Clone, PartialEq)]
pub struct QDiffOperator {
    q: Scalar,
    terms: BTreeMap<i64, RationalFunc>,
}

impl QDiffOperator {
    pub fn zero(ctx: &QContext) -> Self {
        QDiffOperator {
            q: ctx.q().clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(ctx: &QContext) -> Self {
        Self::term(ctx, 0, RationalFunc::one())
    }

    pub fn scalar(ctx: &QContext, c: Scalar) -> Self {
        Self::term(ctx, 0, RationalFunc::constant(c))
    }

    /// `x^a f(y)`.
    pub fn term(ctx: &QContext, a: i64, f: RationalFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(a, f);
        }
        QDiffOperator {
            q: ctx.q().clone(),
            terms,
        }
    }

    /// `c x^a`.
    pub fn x_pow(ctx: &QContext, a: i64, c: Scalar) -> Self {
        Self::term(ctx, a, RationalFunc::constant(c))
    }

    /// The diagonal operator `f(q^D)`.
    pub fn diag(ctx: &QContext, f: RationalFunc) -> Self {
        Self::term(ctx, 0, f)
    }

    /// `y^k = q^{kD}`.
    pub fn y_pow(ctx: &QContext, k: i64) -> Self {
        Self::diag(ctx, RationalFunc::y_pow(Scalar::one(), k))
    }

    pub fn terms(&self) -> &BTreeMap<i64, RationalFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn with_terms(&self, terms: BTreeMap<i64, RationalFunc>) -> Self {
        QDiffOperator {
            q: self.q.clone(),
            terms: terms.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (a, f) in &o.terms {
            let e = terms.entry(*a).or_insert_with(RationalFunc::zero);
            *e = e.add(f);
        }
        self.with_terms(terms)
    }

    pub fn neg(&self) -> Self {
        self.with_terms(self.terms.iter().map(|(a, f)| (*a, f.neg())).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.with_terms(self.terms.iter().map(|(a, f)| (*a, f.scale(c))).collect())
    }

    /// Normal-form product `self · o`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<i64, RationalFunc> = BTreeMap::new();
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                // x^a f(y) x^b g(y) = x^{a+b} f(q^b y) g(y)
                let h = f.dilate(&pow_i(&self.q, *b)).mul(g);
                let e = terms.entry(a + b).or_insert_with(RationalFunc::zero);
                *e = e.add(&h);
            }
        }
        self.with_terms(terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QDiffOperator {
            q: self.q.clone(),
            terms: BTreeMap::from([(0, RationalFunc::one())]),
        };
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Acts on a truncated series: `x^a f(y) · x^i = f(q^i) x^{i+a}`.
    pub fn apply(&self, s: &LaurentSeries) -> Result<LaurentSeries> {
        let Some((&amin, _)) = self.terms.iter().next() else {
            return Ok(LaurentSeries::zero(s.lo(), s.hi()));
        };
        let mut out: Option<LaurentSeries> = None;
        for (a, f) in &self.terms {
            let mut coeffs = Vec::with_capacity(s.coeffs().len());
            for (k, c) in s.coeffs().iter().enumerate() {
                let i = s.lo() + k as i64;
                let v = f
                    .eval(&pow_i(&self.q, i))
                    .ok_or(Error::Pole { degree: i })?;
                coeffs.push(v * c);
            }
            let piece = LaurentSeries::new(s.lo() + a, coeffs);
            out = Some(match out {
                None => piece,
                Some(acc) => acc.add(&piece),
            });
        }
        let out = out.expect("nonempty operator");
        debug_assert_eq!(out.lo(), s.lo() + amin);
        Ok(out)
    }

    /// Largest x-shift among the terms.
    pub fn max_shift(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }
}

impl fmt::Display for QDiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, g)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "x^{a}·({g})")?;
        }
        Ok(())
    }
}

/// `(I + M)^{-1} s = Σ_k (-M)^k s` where every term of `M` strictly raises
/// the x-degree.
pub fn neumann_apply_inverse(p: &QDiffOperator, s: &LaurentSeries) -> Result<LaurentSeries> {
    let mut m = p.clone();
    match m.terms.remove(&0) {
        Some(f) if f.is_one() => {}
        _ => {
            return Err(Error::Structure(
                "Neumann inverse needs the x^0 term to be exactly 1".into(),
            ))
        }
    }
    if m.terms.keys().any(|&a| a <= 0) {
        return Err(Error::Structure(
            "Neumann inverse needs every other term to raise the x-degree".into(),
        ));
    }
    let minus_m = m.neg();
    let mut acc = s.clone();
    let mut cur = s.clone();
    // after k steps the lowest possible degree is s.lo + k
    for _ in 0..=(s.hi() - s.lo()) {
        if minus_m.is_zero() {
            break;
        }
        cur = minus_m.apply(&cur)?;
        if cur.lo() > s.hi() {
            break;
        }
        // shifts are positive, so nothing above the window comes back down
        cur = cur.truncate(s.hi());
        acc = acc.add(&cur);
        if cur.is_zero_on_window() {
            break;
        }
    }
    Ok(acc.truncate(s.hi()))
}

/// Finds `K` with `d(y)·K = P`: each `x^a f_a` becomes `x^a f_a(y)/d(q^a y)`.
/// The flag is true when every quotient is a Laurent polynomial in `y`.
pub fn left_divide(p: &QDiffOperator, d: &RationalFunc) -> Result<(QDiffOperator, bool)> {
    if d.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut clean = true;
    let mut terms = BTreeMap::new();
    for (a, f) in &p.terms {
        let shifted = d.dilate(&pow_i(&p.q, *a));
        let g = f.div(&shifted)?;
        clean &= g.is_laurent_poly();
        terms.insert(*a, g);
    }
    Ok((p.with_terms(terms), clean))
}

/// `x^n ↦ q^{c (n-1/2)^2} x^n` with `c = half_c / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExoticDiagonal {
    pub half_c: i64,
}

impl ExoticDiagonal {
    /// Only multiples of `1/2` are exact for `q = u^8`.
    pub fn new(half_c: i64) -> Self {
        ExoticDiagonal { half_c }
    }

    /// The eigenvalue on `x^n`: `q^{c(2n-1)^2/4} = u^{half_c (2n-1)^2}`.
    pub fn eigenvalue(&self, ctx: &QContext, n: i64) -> Scalar {
        let t = 2 * n - 1;
        ctx.qpow(self.half_c * t * t)
    }

    pub fn inverse(&self) -> Self {
        ExoticDiagonal { half_c: -self.half_c }
    }

    pub fn apply(&self, ctx: &QContext, s: &LaurentSeries) -> LaurentSeries {
        let coeffs = s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.eigenvalue(ctx, s.lo() + k as i64))
            .collect();
        LaurentSeries::new(s.lo(), coeffs)
    }
}

/// One factor of a composite acting on series.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Op(QDiffOperator),
    /// `P^{-1}` applied through its Neumann series.
    NeumannInverse(QDiffOperator),
    Exotic(ExoticDiagonal),
}

/// Product of factors, applied right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOperator {
    pub factors: Vec<Factor>,
}

impl SeriesOperator {
    pub fn new(factors: Vec<Factor>) -> Self {
        SeriesOperator { factors }
    }

    pub fn from_op(op: QDiffOperator) -> Self {
        SeriesOperator {
            factors: vec![Factor::Op(op)],
        }
    }

    /// `self · o`.
    pub fn then(&self, o: &SeriesOperator) -> SeriesOperator {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        SeriesOperator { factors }
    }

    pub fn apply(&self, ctx: &QContext, s: &LaurentSeries) -> Result<LaurentSeries> {
        let mut cur = s.clone();
        for f in self.factors.iter().rev() {
            cur = match f {
                Factor::Op(op) => op.apply(&cur)?,
                Factor::NeumannInverse(op) => neumann_apply_inverse(op, &cur)?,
                Factor::Exotic(e) => e.apply(ctx, &cur),
            };
        }
        Ok(cur)
    }
}

impl fmt::Display for SeriesOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, fac) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ∘ ")?;
            }
            match fac {
                Factor::Op(op) => write!(f, "[{op}]")?,
                Factor::NeumannInverse(op) => write!(f, "[{op}]^(-1)")?,
                Factor::Exotic(e) => write!(f, "q^({}/2·(D-1/2)^2)", e.half_c)?,
            }
        }
        Ok(())
    }
}
