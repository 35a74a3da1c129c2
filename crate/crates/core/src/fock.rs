//! Charge-0 fermionic Fock space truncated by weight.
//!
//! Only the induced action on the partition basis is modelled:
//! `⟨λ|Γ_-(A)|μ⟩ = s_{λ/μ}(A)`, `⟨μ|Γ_+(A)|λ⟩ = s_{λ/μ}(A)`, and `Γ'`
//! is `Γ` on the dual alphabet.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::arith::{checked_inv, QContext, Scalar};
use crate::error::{Error, Result};
use crate::partition::{enumerate, Partition};
use crate::schur::{skew_schur_from_series, Alphabet};

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amps: BTreeMap<Partition, Scalar>,
    cutoff: usize,
    truncated: bool,
}

impl FockState {
    pub fn basis(lambda: Partition, cutoff: usize) -> Self {
        let mut amps = BTreeMap::new();
        let truncated = lambda.weight() > cutoff;
        if !truncated {
            amps.insert(lambda, Scalar::one());
        }
        FockState {
            amps,
            cutoff,
            truncated,
        }
    }

    pub fn vacuum(cutoff: usize) -> Self {
        Self::basis(Partition::empty(), cutoff)
    }

    pub fn coeff(&self, lambda: &Partition) -> Scalar {
        self.amps.get(lambda).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn amplitudes(&self) -> &BTreeMap<Partition, Scalar> {
        &self.amps
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Whether some component was dropped because it exceeded the cutoff.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn insert(&mut self, lambda: Partition, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.amps.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn retain(&mut self, keep: impl Fn(&Partition) -> bool) {
        self.amps.retain(|k, _| keep(k));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Γ_-`: adds boxes.
    Creation,
    /// `Γ_+`: removes boxes.
    Annihilation,
}

/// Applies `Γ_∓(A)`; pass a dualized alphabet for `Γ'`.
pub fn apply_gamma(ctx: &QContext, s: &FockState, side: Side, a: &Alphabet) -> Result<FockState> {
    apply_gamma_within(ctx, s, side, a, None)
}

// `bound`, when given, restricts output to subpartitions of it; used when
// only creation steps remain before a known bra.
fn apply_gamma_within(
    ctx: &QContext,
    s: &FockState,
    side: Side,
    a: &Alphabet,
    bound: Option<&Partition>,
) -> Result<FockState> {
    let n = s.cutoff + 1;
    let h = a.h_series(ctx, n)?;
    let e = a.clone().dualized().h_series(ctx, n)?;
    let universe: Vec<Partition> = match bound {
        Some(b) => enumerate(b.weight())
            .into_iter()
            .filter(|p| b.contains(p))
            .collect(),
        None => enumerate(s.cutoff),
    };
    let mut out = FockState {
        amps: BTreeMap::new(),
        cutoff: s.cutoff,
        truncated: s.truncated,
    };
    if side == Side::Creation && bound.is_none() && !a.is_empty() {
        out.truncated = true;
    }
    for (mu, c) in &s.amps {
        for lam in &universe {
            let (big, small) = match side {
                Side::Creation => (lam, mu),
                Side::Annihilation => (mu, lam),
            };
            if !big.contains(small) {
                continue;
            }
            let v = skew_schur_from_series(big, small, &h, &e);
            if !v.is_zero() {
                out.insert(lam.clone(), v * c);
            }
        }
    }
    Ok(out)
}

type ContentsFn = Arc<dyn Fn(i64) -> Result<Scalar> + Send + Sync>;

/// Operator diagonal in the partition basis.
#[derive(Clone)]
pub enum DiagonalOp {
    /// `Q^{L_0}`: eigenvalue `Q^{|λ|}`.
    Weight(Scalar),
    /// `q^{cK}` with `c` given in eighths: eigenvalue `q^{c κ(λ)}`.
    Kappa(i64),
    /// Contents product `Π_{(i,j)∈λ} r_{j-i+1}`.
    Contents(ContentsFn),
    Product(Vec<DiagonalOp>),
}

impl fmt::Debug for DiagonalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalOp::Weight(q) => write!(f, "Weight({q})"),
            DiagonalOp::Kappa(c) => write!(f, "Kappa({c}/8)"),
            DiagonalOp::Contents(_) => write!(f, "Contents(..)"),
            DiagonalOp::Product(v) => f.debug_list().entries(v).finish(),
        }
    }
}

impl DiagonalOp {
    pub fn contents(r: impl Fn(i64) -> Result<Scalar> + Send + Sync + 'static) -> Self {
        DiagonalOp::Contents(Arc::new(r))
    }

    pub fn eigenvalue(&self, ctx: &QContext, lambda: &Partition) -> Result<Scalar> {
        match self {
            DiagonalOp::Weight(q) => Ok(crate::arith::pow_i(q, lambda.weight() as i64)),
            DiagonalOp::Kappa(c) => Ok(ctx.qpow(c * lambda.kappa())),
            DiagonalOp::Contents(r) => {
                let mut acc = Scalar::one();
                for c in lambda.contents() {
                    acc *= r(c + 1)?;
                }
                Ok(acc)
            }
            DiagonalOp::Product(ops) => {
                let mut acc = Scalar::one();
                for op in ops {
                    acc *= op.eigenvalue(ctx, lambda)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn apply(&self, ctx: &QContext, s: &FockState) -> Result<FockState> {
        let mut out = s.clone();
        for (lam, c) in out.amps.iter_mut() {
            *c *= self.eigenvalue(ctx, lam)?;
        }
        out.amps.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// One factor of a bracket `⟨bra| S_1 S_2 ... S_k |ket⟩`.
#[derive(Debug, Clone)]
pub enum Step {
    Gamma(Side, Alphabet),
    Diag(DiagonalOp),
}

impl Step {
    pub fn gamma_minus(a: Alphabet) -> Self {
        Step::Gamma(Side::Creation, a)
    }

    pub fn gamma_plus(a: Alphabet) -> Self {
        Step::Gamma(Side::Annihilation, a)
    }

    pub fn gamma_prime_minus(a: Alphabet) -> Self {
        Step::Gamma(Side::Creation, a.dualized())
    }

    pub fn gamma_prime_plus(a: Alphabet) -> Self {
        Step::Gamma(Side::Annihilation, a.dualized())
    }

    /// `Γ^σ_-`: `Γ_-` for `σ = +1`, `Γ'_-` for `σ = -1`.
    pub fn gamma_minus_signed(sigma: i8, a: Alphabet) -> Self {
        if sigma > 0 {
            Self::gamma_minus(a)
        } else {
            Self::gamma_prime_minus(a)
        }
    }

    pub fn gamma_plus_signed(sigma: i8, a: Alphabet) -> Self {
        if sigma > 0 {
            Self::gamma_plus(a)
        } else {
            Self::gamma_prime_plus(a)
        }
    }

    fn annihilates(&self) -> bool {
        matches!(self, Step::Gamma(Side::Annihilation, _))
    }
}

/// Applies `steps` (written left to right as in the bracket) to `ket`.
pub fn run_pipeline(
    ctx: &QContext,
    bra: &Partition,
    steps: &[Step],
    ket: &Partition,
    cutoff: usize,
) -> Result<FockState> {
    let mut state = FockState::basis(ket.clone(), cutoff);
    for (idx, step) in steps.iter().enumerate().rev() {
        // Once nothing to the left can remove boxes, only subdiagrams of the
        // bra can contribute.
        let monotone = !steps[..idx].iter().any(Step::annihilates);
        match step {
            Step::Gamma(side, a) => {
                let bound = (monotone && *side == Side::Creation).then_some(bra);
                state = apply_gamma_within(ctx, &state, *side, a, bound)?;
            }
            Step::Diag(d) => state = d.apply(ctx, &state)?,
        }
        if monotone {
            state.retain(|p| bra.contains(p));
        }
    }
    Ok(state)
}

/// `⟨bra| steps |ket⟩` at a single cutoff, without a stability check.
pub fn matrix_element_truncated(
    ctx: &QContext,
    bra: &Partition,
    steps: &[Step],
    ket: &Partition,
    cutoff: usize,
) -> Result<Scalar> {
    Ok(run_pipeline(ctx, bra, steps, ket, cutoff)?.coeff(bra))
}

/// `⟨bra| steps |ket⟩`, recomputed at `cutoff + 2` and rejected if the two
/// values differ.
pub fn matrix_element(
    ctx: &QContext,
    bra: &Partition,
    steps: &[Step],
    ket: &Partition,
    cutoff: usize,
) -> Result<Scalar> {
    if cutoff < bra.weight() || cutoff < ket.weight() {
        return Err(Error::Invalid(format!(
            "cutoff {cutoff} below bra/ket weight"
        )));
    }
    let a = matrix_element_truncated(ctx, bra, steps, ket, cutoff)?;
    let b = matrix_element_truncated(ctx, bra, steps, ket, cutoff + 2)?;
    if a != b {
        return Err(Error::CutoffInstability {
            cutoff,
            raised: cutoff + 2,
        });
    }
    Ok(a)
}

/// Finite form of `Π_{i,j>=1} (1-Q q^{-λ_i+i+j-1})/(1-Q q^{i+j-1})`:
/// `Π_{i: λ_i>0} Π_{m=i-λ_i}^{i-1} (1 - Q q^m)`.
pub fn quotient_product(ctx: &QContext, lambda: &Partition, big_q: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    for (idx, &l) in lambda.parts().iter().enumerate() {
        let i = idx as i64 + 1;
        for m in (i - l as i64)..i {
            acc *= ctx.one_minus(big_q, m);
        }
    }
    acc
}

/// Finite form of `Π_{i,j>=1} (1-Q q^{-tλ_i-μ_j+i+j-1})/(1-Q q^{i+j-1})`.
pub fn pair_quotient_product(
    ctx: &QContext,
    lambda: &Partition,
    mu: &Partition,
    big_q: &Scalar,
) -> Result<Scalar> {
    let a = lambda.conjugate();
    let b = mu;
    let la = a.len() as i64;
    let lb = b.len() as i64;
    let mut acc = Scalar::one();
    // rows i <= ℓ(a), columns j > ℓ(b)
    for i in 1..=la {
        let ai = a.part(i as usize) as i64;
        for m in (i - ai + lb)..(i + lb) {
            acc *= ctx.one_minus(big_q, m);
        }
    }
    // rows i > ℓ(a), columns j <= ℓ(b)
    for j in 1..=lb {
        let bj = b.part(j as usize) as i64;
        for m in (la + j - bj)..(la + j) {
            acc *= ctx.one_minus(big_q, m);
        }
    }
    // finite block
    for i in 1..=la {
        let ai = a.part(i as usize) as i64;
        for j in 1..=lb {
            let bj = b.part(j as usize) as i64;
            let num = ctx.one_minus(big_q, i - ai - bj + j - 1);
            let den = ctx.one_minus(big_q, i + j - 1);
            acc *= num * checked_inv(&den, || format!("1 - Q q^{} = 0", i + j - 1))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::partition::partitions_of;

    fn ctx() -> QContext {
        QContext::new(rat(1, 2)).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts)
    }

    #[test]
    fn gamma_on_vacuum_finite() {
        let c = ctx();
        let z = rat(-2, 3);
        let vac = FockState::vacuum(5);
        let row = apply_gamma(&c, &vac, Side::Creation, &Alphabet::finite(vec![z.clone()])).unwrap();
        let col = apply_gamma(
            &c,
            &vac,
            Side::Creation,
            &Alphabet::finite(vec![z.clone()]).dualized(),
        )
        .unwrap();
        assert_eq!(row.amplitudes().len(), 6);
        assert_eq!(col.amplitudes().len(), 6);
        for k in 0..=5 {
            let zk = crate::arith::pow_i(&z, k as i64);
            assert_eq!(row.coeff(&Partition::row(k)), zk);
            assert_eq!(col.coeff(&Partition::column(k)), zk);
        }
        assert!(row.truncated());
    }

    #[test]
    fn gamma_principal_single_box() {
        let c = ctx();
        let s = apply_gamma(&c, &FockState::vacuum(4), Side::Creation, &Alphabet::principal()).unwrap();
        let q = c.q().clone();
        assert_eq!(s.coeff(&p(&[1])), c.qhalf(1) / (Scalar::one() - q));
    }

    #[test]
    fn diagonal_examples() {
        let c = ctx();
        let big_q = rat(1, 3);
        let w = DiagonalOp::Weight(big_q.clone());
        assert_eq!(w.eigenvalue(&c, &p(&[2, 1])).unwrap(), &big_q * &big_q * &big_q);
        let k = DiagonalOp::Kappa(4);
        assert_eq!(k.eigenvalue(&c, &p(&[2])).unwrap(), c.q().clone());
        let qq = big_q.clone();
        let cq = c.clone();
        let r = DiagonalOp::contents(move |n| Ok(cq.one_minus(&qq, n - 1)));
        assert_eq!(
            r.eigenvalue(&c, &p(&[2])).unwrap(),
            c.one_minus(&big_q, 0) * c.one_minus(&big_q, 1)
        );
        assert_eq!(r.eigenvalue(&c, &p(&[])).unwrap(), int(1));
    }

    #[test]
    fn matrix_element_examples() {
        let c = ctx();
        assert_eq!(matrix_element(&c, &p(&[]), &[], &p(&[]), 4).unwrap(), int(1));
        let v = matrix_element(
            &c,
            &p(&[1]),
            &[Step::gamma_minus(Alphabet::principal())],
            &p(&[]),
            4,
        )
        .unwrap();
        assert_eq!(v, c.qhalf(1) / (Scalar::one() - c.q()));
    }

    #[test]
    fn vacuum_bracket_is_truncated_geometric() {
        // ⟨∅|Γ_+(a)Γ_-(b)|∅⟩ = Σ_k (ab)^k, cut at weight N
        let c = ctx();
        let a = rat(1, 3);
        let b = rat(-2, 5);
        let steps = [
            Step::gamma_plus(Alphabet::finite(vec![a.clone()])),
            Step::gamma_minus(Alphabet::finite(vec![b.clone()])),
        ];
        for cutoff in [0usize, 3, 7] {
            let v = matrix_element_truncated(&c, &p(&[]), &steps, &p(&[]), cutoff).unwrap();
            let expected: Scalar = (0..=cutoff as i64)
                .map(|k| crate::arith::pow_i(&(&a * &b), k))
                .sum();
            assert_eq!(v, expected);
        }
        // the checked variant sees the truncation
        assert!(matches!(
            matrix_element(&c, &p(&[]), &steps, &p(&[]), 4),
            Err(Error::CutoffInstability { .. })
        ));
    }

    #[test]
    fn quotient_product_examples() {
        let c = ctx();
        let big_q = rat(2, 7);
        assert_eq!(quotient_product(&c, &p(&[]), &big_q), int(1));
        assert_eq!(quotient_product(&c, &p(&[1]), &big_q), c.one_minus(&big_q, 0));
        assert_eq!(
            quotient_product(&c, &p(&[2]), &big_q),
            c.one_minus(&big_q, -1) * c.one_minus(&big_q, 0)
        );
    }

    #[test]
    fn pair_quotient_reduces_to_single() {
        let c = ctx();
        let big_q = rat(-5, 3);
        for n in 0..=5 {
            for lam in partitions_of(n) {
                assert_eq!(
                    pair_quotient_product(&c, &lam, &p(&[]), &big_q).unwrap(),
                    quotient_product(&c, &lam.conjugate(), &big_q)
                );
                assert_eq!(
                    pair_quotient_product(&c, &p(&[]), &lam, &big_q).unwrap(),
                    quotient_product(&c, &lam, &big_q)
                );
            }
        }
    }

    #[test]
    fn weight_conjugation() {
        // Q^{L0} Γ_-(A) = Γ_-(Q A) Q^{L0}
        let c = ctx();
        let big_q = rat(3, 4);
        let a = Alphabet::principal().scaled(&rat(-1, 2));
        for sigma in [1i8, -1] {
            for lam in crate::partition::enumerate(4) {
                for mu in crate::partition::enumerate(lam.weight()) {
                    let lhs = matrix_element(
                        &c,
                        &lam,
                        &[
                            Step::Diag(DiagonalOp::Weight(big_q.clone())),
                            Step::gamma_minus_signed(sigma, a.clone()),
                        ],
                        &mu,
                        6,
                    )
                    .unwrap();
                    let rhs = matrix_element(
                        &c,
                        &lam,
                        &[
                            Step::gamma_minus_signed(sigma, a.clone().scaled(&big_q)),
                            Step::Diag(DiagonalOp::Weight(big_q.clone())),
                        ],
                        &mu,
                        6,
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
