//! Truncated infinite products in high-precision decimals, as an independent
//! check on the finite product forms.

use bigdecimal::BigDecimal;
use num::BigInt;
use qks_core::{Partition, Scalar};

const PREC: u64 = 90;

pub fn to_dec(x: &Scalar) -> BigDecimal {
    (BigDecimal::new(x.numer().clone(), 0) / BigDecimal::new(x.denom().clone(), 0)).with_prec(PREC)
}

fn one() -> BigDecimal {
    BigDecimal::new(BigInt::from(1), 0)
}

/// `q^k` for `k` in `lo..=hi`.
fn powers(q: &BigDecimal, lo: i64, hi: i64) -> Vec<BigDecimal> {
    let inv = (one() / q).with_prec(PREC);
    let mut neg = vec![one()];
    for _ in lo..0 {
        let next = (neg.last().unwrap() * &inv).with_prec(PREC);
        neg.push(next);
    }
    let mut out: Vec<BigDecimal> = neg.into_iter().skip(1).rev().collect();
    let mut cur = one();
    for _ in 0..=hi {
        out.push(cur.clone());
        cur = (cur * q).with_prec(PREC);
    }
    out
}

/// `Π_{i,j=1}^{n} (1 - Q q^{-a_i-b_j+i+j-1}) / (1 - Q q^{i+j-1})` with
/// `a = tλ`, `b = μ`.
pub fn truncated_pair_product(u: &Scalar, lambda: &Partition, mu: &Partition, big_q: &Scalar, n: usize) -> BigDecimal {
    let ud = to_dec(u);
    let mut q = one();
    for _ in 0..8 {
        q = (q * &ud).with_prec(PREC);
    }
    let a = lambda.conjugate();
    let lo = -((a.part(1) + mu.part(1)) as i64);
    let hi = 2 * n as i64;
    let pw = powers(&q, lo, hi);
    let at = |k: i64| &pw[(k - lo) as usize];
    let qd = to_dec(big_q);
    let mut num = one();
    let mut den = one();
    for i in 1..=n {
        for j in 1..=n {
            let e = i as i64 + j as i64 - 1;
            let shift = (a.part(i) + mu.part(j)) as i64;
            if shift != 0 {
                num = (num * (one() - &qd * at(e - shift))).with_prec(PREC);
                den = (den * (one() - &qd * at(e))).with_prec(PREC);
            }
        }
    }
    (num / den).with_prec(PREC)
}

pub fn small_partition(rng: &mut qks_core::rng::Minstd, max_weight: usize) -> Partition {
    let all = qks_core::partition::enumerate(max_weight);
    all[rng.below(all.len() as u64) as usize].clone()
}
