//! Exact dense determinants.

use num::{One, Zero};

use crate::arith::Scalar;

/// Determinant by Gaussian elimination over the rationals.
/// The empty matrix has determinant 1.
pub fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut sign = false;
    let mut acc = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign = !sign;
        }
        let p = m[col][col].clone();
        acc *= &p;
        let inv = p.recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    // Leibniz expansion as an independent oracle.
    fn leibniz(m: &[Vec<Scalar>]) -> Scalar {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..n {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inv = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod = (0..n).fold(Scalar::one(), |acc, i| acc * &m[i][p[i]]);
                if inv % 2 == 1 {
                    -prod
                } else {
                    prod
                }
            })
            .sum()
    }

    #[test]
    fn matches_leibniz() {
        let m = vec![
            vec![int(0), rat(1, 2), int(3), int(-1)],
            vec![int(2), int(0), rat(-5, 3), int(4)],
            vec![rat(7, 2), int(1), int(0), int(0)],
            vec![int(1), int(1), int(1), rat(1, 9)],
        ];
        assert_eq!(det(m.clone()), leibniz(&m));
        assert_eq!(det(vec![]), int(1));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(det(singular), int(0));
    }
}
