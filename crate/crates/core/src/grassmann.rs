//! Plücker coordinates of the point `W = span{Φ_j}` of the Sato
//! Grassmannian and their match with the Schur coefficients of the tau
//! function.
//!
//! Convention (calibrated on C³ and the conifold at `∅, (1), (2), (1,1)`):
//! `π_λ = det[φ_{λ_{k+1}-k, j}]_{k,j=0..ℓ-1}` with columns normalized to
//! `φ_{-j,j} = 1`, and `π_λ = Z_{tλ}/Z`.

use num::{One, Zero};

use crate::amplitudes::tau_schur_coefficients;
use crate::arith::{QContext, Scalar};
use crate::bases::basis;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::det;
use crate::partition::Partition;
use crate::report::Report;
use crate::series::LaurentSeries;

/// Coefficients `φ_{ij}` for `-j <= i <= i_max`, `0 <= j <= j_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    i_max: i64,
    cols: Vec<LaurentSeries>,
}

impl BasisMatrix {
    /// Rescales each column so that `φ_{-j,j} = 1`.
    pub fn from_columns(cols: Vec<LaurentSeries>, i_max: i64) -> Result<Self> {
        let mut out = Vec::with_capacity(cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            let j = j as i64;
            if c.lo() != -j || c.hi() < i_max {
                return Err(Error::Bounds(format!(
                    "column {j} covers [{}, {}], need [{}, {i_max}]",
                    c.lo(),
                    c.hi(),
                    -j
                )));
            }
            let lead = c.coeff(-j).unwrap();
            if lead.is_zero() {
                return Err(Error::Structure(format!("φ_(-{j},{j}) vanishes")));
            }
            out.push(c.scale(&lead.recip()).truncate(i_max));
        }
        Ok(BasisMatrix { i_max, cols: out })
    }

    pub fn j_max(&self) -> usize {
        self.cols.len().saturating_sub(1)
    }

    pub fn i_max(&self) -> i64 {
        self.i_max
    }

    pub fn entry(&self, i: i64, j: usize) -> Result<Scalar> {
        let col = self
            .cols
            .get(j)
            .ok_or_else(|| Error::Bounds(format!("column {j} > {}", self.j_max())))?;
        if i > self.i_max {
            return Err(Error::Bounds(format!("row {i} > {}", self.i_max)));
        }
        Ok(col.coeff(i).expect("inside window"))
    }

    pub fn column(&self, j: usize) -> &LaurentSeries {
        &self.cols[j]
    }
}

pub fn build_matrix(ctx: &QContext, geometry: &Geometry, j_max: usize, i_max: i64) -> Result<BasisMatrix> {
    let cols = (0..=j_max)
        .map(|j| basis(ctx, geometry, j, i_max))
        .collect::<Result<Vec<_>>>()?;
    BasisMatrix::from_columns(cols, i_max)
}

/// `π_λ` using an `ℓ × ℓ` minor, `ℓ >= len(λ)`.
pub fn plucker_with_size(m: &BasisMatrix, lambda: &Partition, size: usize) -> Result<Scalar> {
    if size < lambda.len() {
        return Err(Error::Bounds(format!("minor size {size} < length of {lambda}")));
    }
    if size == 0 {
        return Ok(Scalar::one());
    }
    if size > m.j_max() + 1 {
        return Err(Error::Bounds(format!("{lambda} needs {size} columns, have {}", m.j_max() + 1)));
    }
    let mut rows = Vec::with_capacity(size);
    for k in 0..size {
        let i = lambda.part(k + 1) as i64 - k as i64;
        rows.push((0..size).map(|j| m.entry(i, j)).collect::<Result<Vec<_>>>()?);
    }
    Ok(det(rows))
}

pub fn plucker_coefficient(m: &BasisMatrix, lambda: &Partition) -> Result<Scalar> {
    plucker_with_size(m, lambda, lambda.len())
}

/// `π_{tβ} = Z_β/Z` for every `|β| <= max_weight`.
pub fn giambelli_check(
    ctx: &QContext,
    geometry: &Geometry,
    max_weight: usize,
    cutoff: usize,
) -> Result<Vec<Report>> {
    let m = build_matrix(ctx, geometry, max_weight, max_weight as i64)?;
    let tau = tau_schur_coefficients(ctx, geometry, max_weight, cutoff)?;
    let mut out = Vec::new();
    for (beta, z) in &tau {
        let pi = plucker_coefficient(&m, &beta.conjugate())?;
        out.push(Report::check(format!("{geometry} Plücker vs amplitude at {beta}"), pi == *z));
    }
    Ok(out)
}

/// The six `2 × 2` minors of rows `-1, 0, 1, 2` in columns `0, 1`, indexed
/// by row pairs `(a, b)` with `a < b`.
fn minors_2x4(m: &BasisMatrix) -> Result<[[Scalar; 4]; 4]> {
    let rows: Vec<[Scalar; 2]> = (-1..=2)
        .map(|i| Ok([m.entry(i, 0)?, m.entry(i, 1)?]))
        .collect::<Result<_>>()?;
    let mut p: [[Scalar; 4]; 4] = Default::default();
    for a in 0..4 {
        for b in 0..4 {
            p[a][b] = &rows[a][0] * &rows[b][1] - &rows[a][1] * &rows[b][0];
        }
    }
    Ok(p)
}

/// `p_{ab} p_{cd} - p_{ac} p_{bd} + p_{ad} p_{bc} = 0` on rows `-1..2`,
/// computed from raw `2 × 2` determinants; in partition labels this is
/// `π_∅ π_{22} - π_1 π_{21} + π_2 π_{11} = 0`.
pub fn plucker_relation(m: &BasisMatrix) -> Result<Scalar> {
    let p = minors_2x4(m)?;
    Ok(&p[0][1] * &p[2][3] - &p[0][2] * &p[1][3] + &p[0][3] * &p[1][2])
}

pub fn plucker_relation_check(ctx: &QContext, geometry: &Geometry) -> Result<Report> {
    let m = build_matrix(ctx, geometry, 1, 2)?;
    let v = plucker_relation(&m)?;
    Ok(Report::check(format!("{geometry} three-term Plücker relation"), v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::geometry::{CtvSpec, StripSpec};
    use crate::schur::{schur, Alphabet};

    fn ctx() -> QContext {
        QContext::new(rat(1, 2)).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts)
    }

    #[test]
    fn c3_examples() {
        let c = ctx();
        let m = build_matrix(&c, &Geometry::C3, 3, 6).unwrap();
        for k in 0..=6usize {
            assert_eq!(m.entry(k as i64, 0).unwrap(), c.qhalf(k as i64) / c.q_factorial(k));
        }
        for j in 0..=3usize {
            assert_eq!(m.entry(-(j as i64), j).unwrap(), int(1));
        }
        assert_eq!(plucker_coefficient(&m, &Partition::empty()).unwrap(), int(1));
        assert_eq!(
            plucker_coefficient(&m, &p(&[1])).unwrap(),
            c.qhalf(1) / c.one_minus(&int(1), 1)
        );
    }

    #[test]
    fn calibration_by_hand() {
        // C³: π_λ must be s_λ(q^{-ρ}) = Z_{tλ}
        let c = ctx();
        let m = build_matrix(&c, &Geometry::C3, 3, 4).unwrap();
        let pr = Alphabet::principal();
        for lam in [p(&[]), p(&[1]), p(&[2]), p(&[1, 1])] {
            assert_eq!(plucker_coefficient(&m, &lam).unwrap(), schur(&c, &lam, &pr).unwrap());
        }
        // explicit 2×2 minor for (1,1): rows x^1, x^0
        let d = m.entry(1, 0).unwrap() * m.entry(0, 1).unwrap() - m.entry(1, 1).unwrap() * m.entry(0, 0).unwrap();
        assert_eq!(d, plucker_coefficient(&m, &p(&[1, 1])).unwrap());
        // conifold (1): q^{1/2}(1-Q)/(1-q)
        let q = rat(1, 3);
        let m = build_matrix(&c, &Geometry::Conifold(q.clone()), 2, 3).unwrap();
        assert_eq!(
            plucker_coefficient(&m, &p(&[1])).unwrap(),
            c.qhalf(1) * (int(1) - q) / c.one_minus(&int(1), 1)
        );
    }

    #[test]
    fn rescaling_and_shift_invariance() {
        let c = ctx();
        let g = Geometry::Conifold(rat(2, 7));
        let cols: Vec<_> = (0..=4).map(|j| basis(&c, &g, j, 6).unwrap()).collect();
        let m = BasisMatrix::from_columns(cols.clone(), 6).unwrap();
        let scaled: Vec<_> = cols
            .iter()
            .enumerate()
            .map(|(j, s)| s.scale(&rat(3 * j as i64 + 2, 5)))
            .collect();
        let m2 = BasisMatrix::from_columns(scaled, 6).unwrap();
        let big = build_matrix(&c, &g, 6, 8).unwrap();
        for lam in crate::partition::enumerate(4) {
            let a = plucker_coefficient(&m, &lam).unwrap();
            assert_eq!(a, plucker_coefficient(&m2, &lam).unwrap());
            assert_eq!(a, plucker_coefficient(&big, &lam).unwrap());
            assert_eq!(a, plucker_with_size(&big, &lam, lam.len() + 2).unwrap());
        }
        assert!(matches!(plucker_coefficient(&m, &p(&[7])), Err(Error::Bounds(_))));
    }

    #[test]
    fn giambelli_small() {
        let c = ctx();
        let strip = StripSpec::new(vec![1, -1, 1], vec![rat(1, 3), rat(2, 5)]).unwrap();
        let ctv = CtvSpec::new(rat(1, 3), rat(2, 5), rat(3, 7)).unwrap();
        for g in [
            Geometry::C3,
            Geometry::Conifold(rat(1, 3)),
            Geometry::StripVertical(strip, 2),
            Geometry::Ctv(ctv, 1),
        ] {
            for r in giambelli_check(&c, &g, 3, 8).unwrap() {
                assert!(r.pass, "{r:?}");
            }
            assert!(plucker_relation_check(&c, &g).unwrap().pass);
        }
    }

    #[test]
    fn plucker_relation_in_partition_labels() {
        let c = ctx();
        let m = build_matrix(&c, &Geometry::Conifold(rat(1, 3)), 2, 3).unwrap();
        let pi = |parts: &[usize]| plucker_with_size(&m, &p(parts), 2).unwrap();
        let v = pi(&[]) * pi(&[2, 2]) - pi(&[1]) * pi(&[2, 1]) + pi(&[2]) * pi(&[1, 1]);
        assert!(v.is_zero());
        assert_eq!(v, plucker_relation(&m).unwrap());
    }
}
