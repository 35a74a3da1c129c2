//! Normalized open-string amplitudes `Z_β / Z`.
//!
//! Every amplitude has two routes: a closed form (Schur values times
//! telescoped quotient products) and a Fock-space bracket. The public
//! functions return the closed form where one exists; the `*_fock`
//! variants are the brute-force brackets.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::arith::{checked_inv, pow_i, QContext, Scalar};
use crate::error::{Error, Result};
use crate::fock::{matrix_element, quotient_product, DiagonalOp, Step};
use crate::geometry::{CtvSpec, End, Geometry, Sign, StripSpec};
use crate::partition::{enumerate, Partition};
use crate::schur::{schur, skew_schur, Alphabet};

/// Sign pattern and leg of a two-vertex strip that reproduces the resolved
/// conifold.
pub const CONIFOLD_PATTERN: [Sign; 2] = [-1, 1];
pub const CONIFOLD_LEG: usize = 2;

/// `C_{λμν} = q^{κ(μ)/2} s_{tν}(q^{-ρ}) Σ_η s_{tλ/η}(q^{-ν-ρ}) s_{μ/η}(q^{-tν-ρ})`.
pub fn vertex_c(ctx: &QContext, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Scalar> {
    let tl = lambda.conjugate();
    let tn = nu.conjugate();
    let a = Alphabet::shifted(nu.clone());
    let b = Alphabet::shifted(tn.clone());
    let mut sum = Scalar::zero();
    for eta in enumerate(tl.weight().min(mu.weight())) {
        if !tl.contains(&eta) || !mu.contains(&eta) {
            continue;
        }
        sum += skew_schur(ctx, &tl, &eta, &a)? * skew_schur(ctx, mu, &eta, &b)?;
    }
    Ok(ctx.qpow(4 * mu.kappa()) * schur(ctx, &tn, &Alphabet::principal())? * sum)
}

/// `QP(λ, Q)^e` with a degenerate-parameter error for a vanishing base.
fn qp_pow(ctx: &QContext, lambda: &Partition, q: &Scalar, e: i64) -> Result<Scalar> {
    let base = quotient_product(ctx, lambda, q);
    if e < 0 && base.is_zero() {
        return Err(Error::Degenerate(format!(
            "quotient product of {lambda} vanishes at Q = {q}"
        )));
    }
    Ok(pow_i(&base, e))
}

/// Closed form of `Z_{n,β}/Z` for vertical leg `n`.
pub fn strip_vertical_normalized(
    ctx: &QContext,
    spec: &StripSpec,
    n: usize,
    beta: &Partition,
) -> Result<Scalar> {
    check_leg(spec, n)?;
    let tb = beta.conjugate();
    let mut acc = schur(ctx, &tb, &Alphabet::principal())?;
    let sn = spec.sign(n);
    for m in 1..=spec.len() {
        if m == n {
            continue;
        }
        let sm = spec.sign(m) as i64;
        let (q, before) = if m < n {
            (spec.q_between(m, n), true)
        } else {
            (spec.q_between(n, m), false)
        };
        // σ_n = +1: m<n uses QP(β)^{-σ_m}, m>n uses QP(tβ)^{-σ_m};
        // σ_n = -1: m<n uses QP(tβ)^{σ_m},  m>n uses QP(β)^{σ_m}.
        let (shape, e) = match (sn > 0, before) {
            (true, true) => (beta, -sm),
            (true, false) => (&tb, -sm),
            (false, true) => (&tb, sm),
            (false, false) => (beta, sm),
        };
        acc *= qp_pow(ctx, shape, &q, e)?;
    }
    Ok(acc)
}

fn check_leg(spec: &StripSpec, n: usize) -> Result<()> {
    if n == 0 || n > spec.len() {
        return Err(Error::Invalid(format!("leg {n} out of range 1..={}", spec.len())));
    }
    Ok(())
}

/// Contents-product parameters `r_j` of the hypergeometric operator for
/// vertical leg `n`.
pub fn strip_vertical_r(ctx: &QContext, spec: &StripSpec, n: usize, j: i64) -> Result<Scalar> {
    let sn = spec.sign(n);
    let mut acc = Scalar::one();
    for m in 1..=spec.len() {
        if m == n {
            continue;
        }
        let sm = spec.sign(m) as i64;
        let (q, before) = if m < n {
            (spec.q_between(m, n), true)
        } else {
            (spec.q_between(n, m), false)
        };
        let (exp_q, e) = match (sn > 0, before) {
            (true, true) => (j - 1, -sm),
            (true, false) => (1 - j, -sm),
            (false, true) => (1 - j, sm),
            (false, false) => (j - 1, sm),
        };
        let f = ctx.one_minus(&q, exp_q);
        acc *= if e > 0 {
            f
        } else {
            checked_inv(&f, || format!("1 - ({q}) q^{exp_q} = 0"))?
        };
    }
    Ok(acc)
}

/// `⟨tβ| h Γ_-(q^{-ρ}) |0⟩` with `h` the contents-product operator.
pub fn strip_vertical_fock(
    ctx: &QContext,
    spec: &StripSpec,
    n: usize,
    beta: &Partition,
) -> Result<Scalar> {
    check_leg(spec, n)?;
    let (c, s) = (ctx.clone(), spec.clone());
    let h = DiagonalOp::contents(move |j| strip_vertical_r(&c, &s, n, j));
    let steps = [Step::Diag(h), Step::gamma_minus(Alphabet::principal())];
    matrix_element(ctx, &beta.conjugate(), &steps, &Partition::empty(), beta.weight())
}

fn strip_left_steps(spec: &StripSpec) -> Vec<Step> {
    let s1 = spec.sign(1);
    let mut steps = vec![
        Step::Diag(DiagonalOp::Kappa(-2 * (1 - s1 as i64))),
        Step::gamma_minus_signed(s1, Alphabet::principal()),
    ];
    for n in 2..=spec.len() {
        let sn = spec.sign(n);
        let c = spec.q_between(1, n) * Scalar::from_integer(((s1 * sn) as i64).into());
        steps.push(Step::gamma_minus_signed(sn, Alphabet::principal().scaled(&c)));
    }
    steps
}

/// `Z_{0,α}/Z` through the Fock bracket.
pub fn strip_left_fock(ctx: &QContext, spec: &StripSpec, alpha: &Partition, cutoff: usize) -> Result<Scalar> {
    matrix_element(
        ctx,
        &alpha.conjugate(),
        &strip_left_steps(spec),
        &Partition::empty(),
        cutoff.max(alpha.weight()),
    )
}

/// `Z_{N+1,α}/Z` from the right-end bracket
/// `⟨0| Π_{n<N} Γ^{σ_n}_+(σ_n Q_{nN} σ_N q^{-ρ}) Γ^{σ_N}_+(q^{-ρ}) q^{(1+σ_N)K/4} |α⟩`.
pub fn strip_right_direct(ctx: &QContext, spec: &StripSpec, alpha: &Partition, cutoff: usize) -> Result<Scalar> {
    let nn = spec.len();
    let s_last = spec.sign(nn);
    let mut steps = Vec::new();
    for n in 1..nn {
        let sn = spec.sign(n);
        let c = spec.q_between(n, nn) * Scalar::from_integer(((sn * s_last) as i64).into());
        steps.push(Step::gamma_plus_signed(sn, Alphabet::principal().scaled(&c)));
    }
    steps.push(Step::gamma_plus_signed(s_last, Alphabet::principal()));
    steps.push(Step::Diag(DiagonalOp::Kappa(2 * (1 + s_last as i64))));
    matrix_element(ctx, &Partition::empty(), &steps, alpha, cutoff.max(alpha.weight()))
}

/// Closed form of the left end: `q^{-(1-σ_1)κ(tα)/4} s_{tα}(U)` with `U` the
/// union of the (possibly dual) scaled principal alphabets.
pub fn strip_left_closed(ctx: &QContext, spec: &StripSpec, alpha: &Partition) -> Result<Scalar> {
    let s1 = spec.sign(1);
    let mut parts = vec![signed_principal(s1, Scalar::one())];
    for n in 2..=spec.len() {
        let sn = spec.sign(n);
        let c = spec.q_between(1, n) * Scalar::from_integer(((s1 * sn) as i64).into());
        parts.push(signed_principal(sn, c));
    }
    let ta = alpha.conjugate();
    Ok(ctx.qpow(-2 * (1 - s1 as i64) * ta.kappa()) * schur(ctx, &ta, &Alphabet::union(parts))?)
}

fn signed_principal(sigma: Sign, c: Scalar) -> Alphabet {
    let a = Alphabet::principal().scaled(&c);
    if sigma > 0 {
        a
    } else {
        a.dualized()
    }
}

/// `Z_{0,α}/Z` or `Z_{N+1,α}/Z`. The right end is computed as the left end
/// of the rotated strip and checked against the direct right-end bracket.
pub fn strip_end_normalized(
    ctx: &QContext,
    spec: &StripSpec,
    end: End,
    alpha: &Partition,
    cutoff: usize,
) -> Result<Scalar> {
    match end {
        End::Left => strip_left_fock(ctx, spec, alpha, cutoff),
        End::Right => {
            let rotated = strip_left_fock(ctx, &spec.rotated(), alpha, cutoff)?;
            let direct = strip_right_direct(ctx, spec, alpha, cutoff)?;
            if rotated != direct {
                return Err(Error::Inconsistent(format!(
                    "right end of strip {} at {alpha}: rotated {rotated} vs direct {direct}",
                    spec.pattern()
                )));
            }
            Ok(rotated)
        }
    }
}

fn ctv_leg1_steps(ctx: &QContext, spec: &CtvSpec) -> Vec<Step> {
    let p = spec.p();
    let c = ctx.clone();
    let diag = DiagonalOp::contents(move |n| {
        let f = c.one_minus(&p, n - 1);
        checked_inv(&f, || format!("1 - Q1Q2 q^{} = 0", n - 1))
    });
    let pr = Alphabet::principal;
    vec![
        Step::Diag(diag),
        Step::gamma_minus(pr()),
        Step::gamma_prime_minus(pr().scaled(&-&spec.q1)),
        Step::gamma_minus(pr().scaled(&(&spec.q1 * &spec.q3))),
        Step::gamma_prime_minus(pr().scaled(&-(&spec.q1 * &spec.q2 * &spec.q3))),
    ]
}

fn ctv_leg2_diag(ctx: &QContext, spec: &CtvSpec) -> DiagonalOp {
    let p = spec.p();
    let c = ctx.clone();
    DiagonalOp::contents(move |n| {
        let f = c.one_minus(&p, 1 - n);
        checked_inv(&f, || format!("1 - Q1Q2 q^{} = 0", 1 - n))
    })
}

/// `⟨tβ| tp(g_2) |0⟩`.
pub fn ctv_leg2_transposed(ctx: &QContext, spec: &CtvSpec, beta: &Partition, cutoff: usize) -> Result<Scalar> {
    let pr = Alphabet::principal;
    let steps = [
        Step::Diag(DiagonalOp::Kappa(-4)),
        Step::Diag(ctv_leg2_diag(ctx, spec)),
        Step::gamma_prime_minus(pr()),
        Step::gamma_minus(pr().scaled(&-&spec.q2)),
        Step::gamma_prime_minus(pr().scaled(&(&spec.q2 * &spec.q3))),
        Step::gamma_minus(pr().scaled(&-(&spec.q1 * &spec.q2 * &spec.q3))),
    ];
    matrix_element(ctx, &beta.conjugate(), &steps, &Partition::empty(), cutoff.max(beta.weight()))
}

/// `⟨0| g_2 |tβ⟩`.
pub fn ctv_leg2_direct(ctx: &QContext, spec: &CtvSpec, beta: &Partition, cutoff: usize) -> Result<Scalar> {
    let pr = Alphabet::principal;
    let steps = [
        Step::gamma_plus(pr().scaled(&-(&spec.q1 * &spec.q2 * &spec.q3))),
        Step::gamma_prime_plus(pr().scaled(&(&spec.q2 * &spec.q3))),
        Step::gamma_plus(pr().scaled(&-&spec.q2)),
        Step::gamma_prime_plus(pr()),
        Step::Diag(ctv_leg2_diag(ctx, spec)),
        Step::Diag(DiagonalOp::Kappa(-4)),
    ];
    matrix_element(ctx, &Partition::empty(), &steps, &beta.conjugate(), cutoff.max(beta.weight()))
}

/// `Z_{leg,β}/Z` for the closed topological vertex via the Fock brackets.
/// Leg 2 is evaluated both as `⟨0|g_2|tβ⟩` and `⟨tβ|tp(g_2)|0⟩`; the two
/// must agree.
pub fn ctv_normalized(ctx: &QContext, spec: &CtvSpec, leg: u8, beta: &Partition, cutoff: usize) -> Result<Scalar> {
    match leg {
        1 => matrix_element(
            ctx,
            &beta.conjugate(),
            &ctv_leg1_steps(ctx, spec),
            &Partition::empty(),
            cutoff.max(beta.weight()),
        ),
        2 => {
            let t = ctv_leg2_transposed(ctx, spec, beta, cutoff)?;
            let d = ctv_leg2_direct(ctx, spec, beta, cutoff)?;
            if t != d {
                return Err(Error::Inconsistent(format!(
                    "closed vertex leg 2 at {beta}: transposed {t} vs direct {d}"
                )));
            }
            Ok(t)
        }
        _ => Err(Error::Invalid(format!("closed vertex leg must be 1 or 2, got {leg}"))),
    }
}

/// Closed forms of the closed-vertex amplitudes: a quotient product times a
/// Schur value on the union alphabet.
pub fn ctv_closed(ctx: &QContext, spec: &CtvSpec, leg: u8, beta: &Partition) -> Result<Scalar> {
    let p = spec.p();
    let tb = beta.conjugate();
    let q123 = &spec.q1 * &spec.q2 * &spec.q3;
    match leg {
        1 => {
            let u = Alphabet::union(vec![
                signed_principal(1, Scalar::one()),
                signed_principal(-1, -&spec.q1),
                signed_principal(1, &spec.q1 * &spec.q3),
                signed_principal(-1, -q123),
            ]);
            Ok(qp_pow(ctx, beta, &p, -1)? * schur(ctx, &tb, &u)?)
        }
        2 => {
            let u = Alphabet::union(vec![
                signed_principal(-1, Scalar::one()),
                signed_principal(1, -&spec.q2),
                signed_principal(-1, &spec.q2 * &spec.q3),
                signed_principal(1, -q123),
            ]);
            Ok(ctx.qpow(-4 * tb.kappa()) * qp_pow(ctx, &tb, &p, -1)? * schur(ctx, &tb, &u)?)
        }
        _ => Err(Error::Invalid(format!("closed vertex leg must be 1 or 2, got {leg}"))),
    }
}

/// Normalized amplitude `Z_β/Z` for any geometry.
pub fn amplitude(ctx: &QContext, geometry: &Geometry, beta: &Partition, cutoff: usize) -> Result<Scalar> {
    geometry.validate()?;
    match geometry {
        Geometry::C3 => schur(ctx, &beta.conjugate(), &Alphabet::principal()),
        Geometry::Conifold(q) => {
            Ok(schur(ctx, &beta.conjugate(), &Alphabet::principal())? * quotient_product(ctx, beta, q))
        }
        Geometry::StripVertical(spec, n) => strip_vertical_normalized(ctx, spec, *n, beta),
        Geometry::StripEnd(spec, end) => strip_end_normalized(ctx, spec, *end, beta, cutoff),
        Geometry::Ctv(spec, leg) => ctv_normalized(ctx, spec, *leg, beta, cutoff),
    }
}

/// `β ↦ Z_β/Z` for every `|β| <= max_weight`.
pub fn tau_schur_coefficients(
    ctx: &QContext,
    geometry: &Geometry,
    max_weight: usize,
    cutoff: usize,
) -> Result<BTreeMap<Partition, Scalar>> {
    enumerate(max_weight)
        .into_iter()
        .map(|b| amplitude(ctx, geometry, &b, cutoff).map(|v| (b, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::geometry::all_sign_patterns;

    fn ctx() -> QContext {
        QContext::new(rat(1, 2)).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts)
    }

    fn h1(c: &QContext) -> Scalar {
        c.qhalf(1) / (Scalar::one() - c.q())
    }

    #[test]
    fn vertex_examples() {
        let c = ctx();
        let e = p(&[]);
        assert_eq!(vertex_c(&c, &e, &e, &e).unwrap(), int(1));
        assert_eq!(vertex_c(&c, &e, &e, &p(&[1])).unwrap(), h1(&c));
        let q = c.q().clone();
        let one = Scalar::one();
        let d = &one - &q;
        assert_eq!(
            vertex_c(&c, &p(&[1]), &p(&[1]), &e).unwrap(),
            &one + &q / (&d * &d)
        );
    }

    #[test]
    fn vertex_cyclic_symmetry() {
        // C_{λμν} = C_{μνλ} = C_{νλμ}
        let c = ctx();
        let parts = enumerate(2);
        for l in &parts {
            for m in &parts {
                for n in &parts {
                    let a = vertex_c(&c, l, m, n).unwrap();
                    assert_eq!(a, vertex_c(&c, m, n, l).unwrap(), "{l} {m} {n}");
                    assert_eq!(a, vertex_c(&c, n, l, m).unwrap(), "{l} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn strip_vertical_examples() {
        let c = ctx();
        let q1 = rat(1, 3);
        let spec = StripSpec::new(vec![1, -1], vec![q1.clone()]).unwrap();
        assert_eq!(strip_vertical_normalized(&c, &spec, 1, &p(&[])).unwrap(), int(1));
        assert_eq!(
            strip_vertical_normalized(&c, &spec, 1, &p(&[1])).unwrap(),
            h1(&c) * (Scalar::one() - &q1)
        );
        // β = (2): e_2(q^{-ρ}) (1-Q)(1-Qq)
        let e2 = schur(&c, &p(&[1, 1]), &Alphabet::principal()).unwrap();
        assert_eq!(
            strip_vertical_normalized(&c, &spec, 1, &p(&[2])).unwrap(),
            e2 * c.one_minus(&q1, 0) * c.one_minus(&q1, 1)
        );
    }

    #[test]
    fn strip_vertical_closed_vs_fock() {
        let c = ctx();
        for n_vert in 1..=3usize {
            for sigma in all_sign_patterns(n_vert) {
                let kahler: Vec<Scalar> = (0..n_vert - 1).map(|k| rat(2 + k as i64, 7)).collect();
                let spec = StripSpec::new(sigma, kahler).unwrap();
                for leg in 1..=n_vert {
                    for beta in enumerate(3) {
                        assert_eq!(
                            strip_vertical_normalized(&c, &spec, leg, &beta).unwrap(),
                            strip_vertical_fock(&c, &spec, leg, &beta).unwrap(),
                            "{} leg {leg} β {beta}",
                            spec.pattern()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conifold_pattern_is_unique_up_to_leg() {
        let c = ctx();
        let q = rat(3, 11);
        let cone = Geometry::Conifold(q.clone());
        let mut hits = Vec::new();
        for sigma in all_sign_patterns(2) {
            let spec = StripSpec::new(sigma.clone(), vec![q.clone()]).unwrap();
            for leg in 1..=2 {
                let ok = enumerate(5).iter().all(|b| {
                    strip_vertical_normalized(&c, &spec, leg, b).unwrap()
                        == amplitude(&c, &cone, b, 5).unwrap()
                });
                if ok {
                    hits.push((spec.pattern(), leg));
                }
            }
        }
        assert_eq!(hits, vec![("-+".to_string(), 1), ("-+".to_string(), 2)]);
        assert!(hits.contains(&("-+".to_string(), CONIFOLD_LEG)));
        assert_eq!(CONIFOLD_PATTERN, [-1, 1]);
    }

    #[test]
    fn strip_end_examples() {
        let c = ctx();
        let one = StripSpec::new(vec![1], vec![]).unwrap();
        assert_eq!(strip_end_normalized(&c, &one, End::Left, &p(&[]), 4).unwrap(), int(1));
        assert_eq!(strip_end_normalized(&c, &one, End::Left, &p(&[1]), 4).unwrap(), h1(&c));
        let q1 = rat(2, 9);
        let two = StripSpec::new(vec![1, 1], vec![q1.clone()]).unwrap();
        assert_eq!(
            strip_end_normalized(&c, &two, End::Left, &p(&[1]), 4).unwrap(),
            h1(&c) + &q1 * h1(&c)
        );
    }

    #[test]
    fn strip_end_closed_vs_fock_and_rotation() {
        let c = ctx();
        for n_vert in 1..=3usize {
            for sigma in all_sign_patterns(n_vert) {
                let kahler: Vec<Scalar> = (0..n_vert - 1).map(|k| rat(-3 - k as i64, 8)).collect();
                let spec = StripSpec::new(sigma, kahler).unwrap();
                for alpha in enumerate(3) {
                    assert_eq!(
                        strip_left_fock(&c, &spec, &alpha, 3).unwrap(),
                        strip_left_closed(&c, &spec, &alpha).unwrap()
                    );
                    // right end: rotation and direct bracket agree
                    strip_end_normalized(&c, &spec, End::Right, &alpha, 3).unwrap();
                }
            }
        }
    }

    #[test]
    fn ctv_closed_vs_fock() {
        let c = ctx();
        let spec = CtvSpec::new(rat(1, 3), rat(-2, 5), rat(3, 7)).unwrap();
        for leg in [1u8, 2] {
            for beta in enumerate(3) {
                assert_eq!(
                    ctv_normalized(&c, &spec, leg, &beta, 3).unwrap(),
                    ctv_closed(&c, &spec, leg, &beta).unwrap(),
                    "leg {leg} β {beta}"
                );
            }
        }
    }

    #[test]
    fn tau_coefficients_c3_and_conifold() {
        let c = ctx();
        let t = tau_schur_coefficients(&c, &Geometry::C3, 3, 3).unwrap();
        assert_eq!(t[&p(&[])], int(1));
        assert_eq!(t[&p(&[2, 1])], schur(&c, &p(&[2, 1]), &Alphabet::principal()).unwrap());
        let q = rat(1, 3);
        let t = tau_schur_coefficients(&c, &Geometry::Conifold(q.clone()), 3, 3).unwrap();
        assert_eq!(t[&p(&[1])], h1(&c) * (Scalar::one() - q));
        assert_eq!(t.len(), 7);
    }
}
