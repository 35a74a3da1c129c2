//! Schur functions on specialized infinite alphabets.
//!
//! An alphabet is known only through its generating series
//! `H(z) = Σ h_k z^k = Π_i (1 - x_i z)^{-1}`. Every skew Schur value is a
//! Jacobi–Trudi determinant in those coefficients.

use num::{One, Zero};

use crate::arith::{geometric, linear, pow_i, series_inv, series_mul, QContext, Scalar};
use crate::error::Result;
use crate::linalg::det;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq)]
pub enum AlphabetKind {
    /// `x_i = q^{i-1/2}`, `i >= 1` (the specialization `q^{-ρ}`).
    Principal,
    /// `x_i = q^{-ν_i+i-1/2}`.
    Shifted(Partition),
    Finite(Vec<Scalar>),
    /// Concatenation; each part keeps its own scale and dual flag.
    Union(Vec<Alphabet>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    pub kind: AlphabetKind,
    /// Multiplies every letter.
    pub scale: Scalar,
    /// When set, `h_k` of this alphabet is `e_k` of the letters.
    pub dual: bool,
}

impl Alphabet {
    pub fn principal() -> Self {
        Alphabet {
            kind: AlphabetKind::Principal,
            scale: Scalar::one(),
            dual: false,
        }
    }

    pub fn shifted(nu: Partition) -> Self {
        Alphabet {
            kind: AlphabetKind::Shifted(nu),
            scale: Scalar::one(),
            dual: false,
        }
    }

    pub fn finite(letters: Vec<Scalar>) -> Self {
        Alphabet {
            kind: AlphabetKind::Finite(letters),
            scale: Scalar::one(),
            dual: false,
        }
    }

    pub fn union(parts: Vec<Alphabet>) -> Self {
        Alphabet {
            kind: AlphabetKind::Union(parts),
            scale: Scalar::one(),
            dual: false,
        }
    }

    pub fn scaled(mut self, c: &Scalar) -> Self {
        self.scale *= c;
        self
    }

    /// Toggles the dual flag (the `Γ ↔ Γ'` exchange).
    pub fn dualized(mut self) -> Self {
        self.dual = !self.dual;
        self
    }

    pub fn is_empty(&self) -> bool {
        if self.scale.is_zero() {
            return true;
        }
        match &self.kind {
            AlphabetKind::Finite(v) => v.iter().all(|a| a.is_zero()),
            AlphabetKind::Union(parts) => parts.iter().all(|a| a.is_empty()),
            _ => false,
        }
    }

    /// Coefficients `h_0..=h_n`.
    pub fn h_series(&self, ctx: &QContext, n: usize) -> Result<Vec<Scalar>> {
        let s = &self.scale;
        if self.dual {
            if let AlphabetKind::Principal = self.kind {
                // Π_i (1 + s q^{i-1/2} z) = Σ s^k q^{k²/2}/(q;q)_k z^k
                return Ok((0..=n)
                    .map(|k| {
                        let k = k as i64;
                        pow_i(s, k) * ctx.qpow(4 * k * k) / ctx.q_factorial(k as usize)
                    })
                    .collect());
            }
            // E(z) = 1/H(-z)
            let mut undual = self.clone();
            undual.dual = false;
            let h = undual.h_series(ctx, n)?;
            let alt: Vec<Scalar> = h
                .into_iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c })
                .collect();
            return series_inv(&alt, n);
        }
        let base = match &self.kind {
            AlphabetKind::Principal => principal_h(ctx, n),
            AlphabetKind::Shifted(nu) => {
                let mut h = principal_h(ctx, n);
                for (idx, &nu_i) in nu.parts().iter().enumerate() {
                    let i = idx as i64 + 1;
                    // exponents in eighths: q^{i-1/2} -> 8i-4
                    let old = ctx.qpow(8 * i - 4);
                    let new = ctx.qpow(-8 * nu_i as i64 + 8 * i - 4);
                    h = series_mul(&h, &linear(&-old, n), n);
                    h = series_mul(&h, &geometric(&new, n), n);
                }
                h
            }
            AlphabetKind::Finite(letters) => letters
                .iter()
                .fold(geometric(&Scalar::zero(), n), |acc, a| {
                    series_mul(&acc, &geometric(a, n), n)
                }),
            AlphabetKind::Union(parts) => {
                let mut acc = geometric(&Scalar::zero(), n);
                for a in parts {
                    acc = series_mul(&acc, &a.h_series(ctx, n)?, n);
                }
                acc
            }
        };
        // scale every letter: h_k -> s^k h_k
        let mut p = Scalar::one();
        Ok(base
            .into_iter()
            .map(|c| {
                let out = c * &p;
                p *= s;
                out
            })
            .collect())
    }

    /// Power sum `Σ_i x_i^k`, `k >= 1`. Dual alphabets pick up `(-1)^{k-1}`.
    pub fn power_sum(&self, ctx: &QContext, k: usize) -> Result<Scalar> {
        assert!(k >= 1, "power sums start at k = 1");
        let ki = k as i64;
        let raw = match &self.kind {
            AlphabetKind::Principal => principal_power_sum(ctx, ki)?,
            AlphabetKind::Shifted(nu) => {
                let mut acc = principal_power_sum(ctx, ki)?;
                for (idx, &nu_i) in nu.parts().iter().enumerate() {
                    let i = idx as i64 + 1;
                    acc += ctx.qpow(ki * (-8 * nu_i as i64 + 8 * i - 4));
                    acc -= ctx.qpow(ki * (8 * i - 4));
                }
                acc
            }
            AlphabetKind::Finite(letters) => letters.iter().map(|a| pow_i(a, ki)).sum(),
            AlphabetKind::Union(parts) => {
                let mut acc = Scalar::zero();
                for a in parts {
                    acc += a.power_sum(ctx, k)?;
                }
                acc
            }
        };
        let mut out = raw * pow_i(&self.scale, ki);
        if self.dual && k.is_multiple_of(2) {
            out = -out;
        }
        Ok(out)
    }
}

fn principal_h(ctx: &QContext, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = Scalar::one();
    for k in 0..=n {
        if k > 0 {
            fact *= ctx.one_minus(&Scalar::one(), k as i64);
        }
        out.push(ctx.qhalf(k as i64) / &fact);
    }
    out
}

fn principal_power_sum(ctx: &QContext, k: i64) -> Result<Scalar> {
    Ok(ctx.qhalf(k) * ctx.inv_one_minus(&Scalar::one(), k)?)
}

/// `h_k(A)`; zero for `k < 0`.
pub fn complete_h(ctx: &QContext, a: &Alphabet, k: i64) -> Result<Scalar> {
    if k < 0 {
        return Ok(Scalar::zero());
    }
    Ok(a.h_series(ctx, k as usize)?.pop().expect("nonempty series"))
}

/// `s_{λ/η}` from precomputed `h` coefficients (`h[k]` for `k >= 0`).
///
/// Uses whichever Jacobi–Trudi form is smaller: the `h`-determinant of
/// size `ℓ(λ)` or the `e`-determinant of size `λ_1`, where `e` is supplied
/// by the caller as the `h` series of the dual alphabet.
pub fn skew_schur_from_series(
    lambda: &Partition,
    eta: &Partition,
    h: &[Scalar],
    e: &[Scalar],
) -> Scalar {
    if !lambda.contains(eta) {
        return Scalar::zero();
    }
    if lambda == eta {
        return Scalar::one();
    }
    let (lam, et, coeffs) = if lambda.len() <= lambda.part(1) {
        (lambda.clone(), eta.clone(), h)
    } else {
        (lambda.conjugate(), eta.conjugate(), e)
    };
    let n = lam.len();
    let get = |k: i64| -> Scalar {
        if k < 0 {
            Scalar::zero()
        } else {
            coeffs[k as usize].clone()
        }
    };
    let m: Vec<Vec<Scalar>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| get(lam.part(i) as i64 - et.part(j) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    det(m)
}

/// `s_{λ/η}(A)`.
pub fn skew_schur(ctx: &QContext, lambda: &Partition, eta: &Partition, a: &Alphabet) -> Result<Scalar> {
    if !lambda.contains(eta) {
        return Ok(Scalar::zero());
    }
    let n = lambda.part(1) + lambda.len();
    let h = a.h_series(ctx, n)?;
    let e = a.clone().dualized().h_series(ctx, n)?;
    Ok(skew_schur_from_series(lambda, eta, &h, &e))
}

pub fn schur(ctx: &QContext, lambda: &Partition, a: &Alphabet) -> Result<Scalar> {
    skew_schur(ctx, lambda, &Partition::empty(), a)
}

/// Graded Cauchy identity
/// `Σ_β s_{tβ}(X) s_{tβ}(q^{-ρ}) = Π_{i,j} (1 - q^{i-1/2} x_j)^{-1}`
/// compared degree by degree in the letters of `X` up to `max_weight`.
pub fn cauchy_check(ctx: &QContext, letters: &[Scalar], max_weight: usize) -> Result<bool> {
    let pr = Alphabet::principal();
    let hp = pr.h_series(ctx, max_weight)?;
    // right side: coefficient of t^d in Π_j Σ_k h_k x_j^k t^k
    let mut rhs = geometric(&Scalar::zero(), max_weight);
    for x in letters {
        let mut p = Scalar::one();
        let factor: Vec<Scalar> = hp
            .iter()
            .map(|h| {
                let out = h * &p;
                p *= x;
                out
            })
            .collect();
        rhs = series_mul(&rhs, &factor, max_weight);
    }
    let fin = Alphabet::finite(letters.to_vec());
    for (d, expected) in rhs.iter().enumerate() {
        let mut lhs = Scalar::zero();
        for beta in crate::partition::partitions_of(d) {
            let t = beta.conjugate();
            lhs += schur(ctx, &t, &fin)? * schur(ctx, &t, &pr)?;
        }
        if &lhs != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::partition::{enumerate, strips, StripDirection, StripKind};
    use proptest::prelude::*;

    fn ctx() -> QContext {
        QContext::new(rat(1, 2)).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts)
    }

    #[test]
    fn complete_h_principal() {
        let c = ctx();
        let q = c.q().clone();
        let one = Scalar::one();
        let a = Alphabet::principal();
        assert_eq!(complete_h(&c, &a, 0).unwrap(), one);
        assert_eq!(complete_h(&c, &a, 1).unwrap(), c.qhalf(1) / (&one - &q));
        assert_eq!(
            complete_h(&c, &a, 2).unwrap(),
            &q / ((&one - &q) * (&one - &q * &q))
        );
        assert_eq!(complete_h(&c, &a, -1).unwrap(), int(0));
    }

    #[test]
    fn skew_examples() {
        let c = ctx();
        let q = c.q().clone();
        let one = Scalar::one();
        let a = Alphabet::principal().scaled(&rat(-2, 3));
        assert_eq!(skew_schur(&c, &p(&[2, 1]), &p(&[2, 1]), &a).unwrap(), one);
        assert_eq!(
            skew_schur(&c, &p(&[2]), &p(&[1]), &a).unwrap(),
            complete_h(&c, &a, 1).unwrap()
        );
        let pr = Alphabet::principal();
        assert_eq!(
            schur(&c, &p(&[1, 1]), &pr).unwrap(),
            &q * &q / ((&one - &q) * (&one - &q * &q))
        );
        // e2 = (p1² - p2)/2
        let p1 = pr.power_sum(&c, 1).unwrap();
        let p2 = pr.power_sum(&c, 2).unwrap();
        assert_eq!(schur(&c, &p(&[1, 1]), &pr).unwrap(), (&p1 * &p1 - p2) / int(2));
    }

    #[test]
    fn power_sum_examples() {
        let c = ctx();
        let q = c.q().clone();
        let one = Scalar::one();
        let pr = Alphabet::principal();
        assert_eq!(pr.power_sum(&c, 1).unwrap(), c.qhalf(1) / (&one - &q));
        let s = rat(3, 5);
        assert_eq!(
            pr.clone().scaled(&s).power_sum(&c, 2).unwrap(),
            &s * &s * &q / (&one - &q * &q)
        );
        let a = rat(-7, 4);
        assert_eq!(
            Alphabet::finite(vec![a.clone()]).power_sum(&c, 3).unwrap(),
            &a * &a * &a
        );
    }

    // Newton: k h_k = Σ_{i=1}^k p_i h_{k-i}; independent of the closed forms
    // used for h.
    #[test]
    fn newton_identity_all_kinds() {
        let c = QContext::new(rat(2, 5)).unwrap();
        let alphabets = vec![
            Alphabet::principal(),
            Alphabet::principal().scaled(&rat(-3, 7)).dualized(),
            Alphabet::shifted(p(&[3, 1, 1])).scaled(&rat(1, 3)),
            Alphabet::shifted(p(&[2])).dualized(),
            Alphabet::finite(vec![rat(1, 2), rat(-4, 3)]).dualized(),
            Alphabet::union(vec![
                Alphabet::principal(),
                Alphabet::principal().scaled(&rat(5, 2)).dualized(),
            ])
            .scaled(&rat(-1, 2)),
        ];
        for a in alphabets {
            let h = a.h_series(&c, 8).unwrap();
            for k in 1..=8usize {
                let rhs: Scalar = (1..=k)
                    .map(|i| a.power_sum(&c, i).unwrap() * &h[k - i])
                    .sum();
                assert_eq!(int(k as i64) * &h[k], rhs, "k={k}, {a:?}");
            }
        }
    }

    #[test]
    fn euler_identity_closed_form() {
        // dual principal closed form vs 1/H(-z) of the plain alphabet
        let c = ctx();
        for s in [int(1), rat(-3, 2), rat(7, 11)] {
            let closed = Alphabet::principal().scaled(&s).dualized();
            let via_inverse = Alphabet::union(vec![Alphabet::principal()])
                .scaled(&s)
                .dualized();
            assert_eq!(
                closed.h_series(&c, 12).unwrap(),
                via_inverse.h_series(&c, 12).unwrap()
            );
        }
    }

    #[test]
    fn shifted_empty_is_principal() {
        let c = ctx();
        assert_eq!(
            Alphabet::shifted(Partition::empty()).h_series(&c, 12).unwrap(),
            Alphabet::principal().h_series(&c, 12).unwrap()
        );
    }

    #[test]
    fn schur_positive_on_principal() {
        let c = ctx();
        for lam in enumerate(6) {
            assert!(schur(&c, &lam, &Alphabet::principal()).unwrap() > Scalar::zero());
        }
    }

    #[test]
    fn duality_of_skew_schur() {
        let c = ctx();
        let a = Alphabet::shifted(p(&[2, 1])).scaled(&rat(-5, 3));
        for lam in enumerate(6) {
            for eta in enumerate(lam.weight()) {
                let lhs = skew_schur(&c, &lam, &eta, &a).unwrap();
                let rhs =
                    skew_schur(&c, &lam.conjugate(), &eta.conjugate(), &a.clone().dualized()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    // Semistandard tableaux as chains of horizontal strips.
    fn tableau_oracle(lam: &Partition, eta: &Partition, letters: &[Scalar]) -> Scalar {
        fn rec(cur: &Partition, target: &Partition, letters: &[Scalar]) -> Scalar {
            if letters.is_empty() {
                return if cur == target { Scalar::one() } else { Scalar::zero() };
            }
            let budget = target.weight() - cur.weight();
            let mut acc = Scalar::zero();
            for (next, size) in strips(cur, StripDirection::Add, StripKind::Horizontal, budget) {
                if target.contains(&next) {
                    acc += crate::arith::pow_i(&letters[0], size as i64)
                        * rec(&next, target, &letters[1..]);
                }
            }
            acc
        }
        if !lam.contains(eta) {
            return Scalar::zero();
        }
        rec(eta, lam, letters)
    }

    #[test]
    fn jacobi_trudi_matches_tableaux() {
        let c = ctx();
        let letters = vec![rat(1, 3), rat(-2, 5), int(3)];
        let a = Alphabet::finite(letters.clone());
        for lam in enumerate(5) {
            for eta in enumerate(lam.weight()) {
                assert_eq!(
                    skew_schur(&c, &lam, &eta, &a).unwrap(),
                    tableau_oracle(&lam, &eta, &letters),
                    "{lam} / {eta}"
                );
            }
        }
    }

    #[test]
    fn cauchy_examples() {
        let c = ctx();
        assert!(cauchy_check(&c, &[], 5).unwrap());
        assert!(cauchy_check(&c, &[rat(3, 7)], 3).unwrap());
        assert!(cauchy_check(&c, &[rat(3, 7), rat(-5, 2)], 6).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn cauchy_random(n1 in -50i64..50, d1 in 1i64..50, n2 in -50i64..50, d2 in 1i64..50) {
            let c = ctx();
            prop_assert!(cauchy_check(&c, &[rat(n1, d1), rat(n2, d2)], 4).unwrap());
        }

        #[test]
        fn scaling_multiplies_by_weight_power(n in 1i64..20, d in 1i64..20, idx in 0usize..12) {
            let c = ctx();
            let lam = enumerate(4)[idx].clone();
            let s = rat(n, d);
            let lhs = schur(&c, &lam, &Alphabet::principal().scaled(&s)).unwrap();
            let rhs = schur(&c, &lam, &Alphabet::principal()).unwrap()
                * crate::arith::pow_i(&s, lam.weight() as i64);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
