//! Integer partitions and Young-diagram combinatorics.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition stored as its nonzero parts, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates and strips trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts not weakly decreasing: {parts:?}")));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero inside partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Convenience constructor for literals known to be valid.
    pub fn from_slice(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec()).expect("invalid partition literal")
    }

    /// The single column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    /// The single row `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![k] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// `λ_i` with 1-based index; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// `κ(λ) = Σ λ_i (λ_i - 2i + 1)`, twice the content sum.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(idx, &p)| {
                let p = p as i64;
                let i = idx as i64 + 1;
                p * (p - 2 * i + 1)
            })
            .sum()
    }

    /// Cells `(i, j)` (1-based row, column) in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(idx, &p)| (1..=p).map(move |j| (idx + 1, j)))
    }

    /// Contents `j - i` of every cell.
    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.cells().map(|(i, j)| j as i64 - i as i64)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len()
            && other
                .parts
                .iter()
                .zip(&self.parts)
                .all(|(a, b)| a <= b)
    }

    /// `λ/μ` is a horizontal strip: `μ ⊆ λ` and no two cells of the skew
    /// shape share a column, i.e. `λ_{i+1} <= μ_i`.
    pub fn is_horizontal_strip_over(&self, mu: &Partition) -> bool {
        self.contains(mu) && (1..=self.len()).all(|i| self.part(i + 1) <= mu.part(i))
    }

    pub fn is_vertical_strip_over(&self, mu: &Partition) -> bool {
        self.contains(mu) && (1..=self.len()).all(|i| self.part(i) <= mu.part(i) + 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Weight first, then lexicographically descending by parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripDirection {
    Add,
    Remove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripKind {
    Horizontal,
    Vertical,
}

/// All partitions of weight exactly `n`, lexicographically descending.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight `<= max_weight`, by weight then lexicographically
/// descending.
pub fn enumerate(max_weight: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

/// Partitions differing from `mu` by a horizontal or vertical strip of size
/// at most `max_size`, each paired with the strip size. Includes `mu` itself
/// with size 0. Output is sorted by the partition order.
pub fn strips(
    mu: &Partition,
    direction: StripDirection,
    kind: StripKind,
    max_size: usize,
) -> Vec<(Partition, usize)> {
    // Vertical strips are horizontal strips of the conjugate.
    if kind == StripKind::Vertical {
        let mut out: Vec<_> = strips(&mu.conjugate(), direction, StripKind::Horizontal, max_size)
            .into_iter()
            .map(|(p, s)| (p.conjugate(), s))
            .collect();
        out.sort();
        return out;
    }
    let mut out = Vec::new();
    match direction {
        StripDirection::Add => {
            // λ_1 ≥ μ_1 free; μ_{i-1} ≥ λ_i ≥ μ_i for i ≥ 2; one new row allowed.
            let len = mu.len() + 1;
            let mut cur = vec![0usize; len];
            add_rec(mu, 0, len, max_size, &mut cur, &mut out);
        }
        StripDirection::Remove => {
            // μ_{i+1} ≤ λ_i ≤ μ_i
            let len = mu.len();
            let mut cur = vec![0usize; len];
            remove_rec(mu, 0, len, max_size, &mut cur, &mut out);
        }
    }
    out.sort();
    out
}

fn add_rec(
    mu: &Partition,
    idx: usize,
    len: usize,
    budget: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<(Partition, usize)>,
) {
    if idx == len {
        let lam = Partition::new(cur.clone()).expect("strip construction");
        let size = lam.weight() - mu.weight();
        out.push((lam, size));
        return;
    }
    let lo = mu.part(idx + 1);
    let hi = if idx == 0 { lo + budget } else { mu.part(idx).min(lo + budget) };
    for v in lo..=hi {
        cur[idx] = v;
        add_rec(mu, idx + 1, len, budget - (v - lo), cur, out);
    }
}

fn remove_rec(
    mu: &Partition,
    idx: usize,
    len: usize,
    budget: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<(Partition, usize)>,
) {
    if idx == len {
        let lam = Partition::new(cur.clone()).expect("strip construction");
        let size = mu.weight() - lam.weight();
        out.push((lam, size));
        return;
    }
    let hi = mu.part(idx + 1);
    let lo = mu.part(idx + 2).max(hi.saturating_sub(budget));
    for v in lo..=hi {
        cur[idx] = v;
        remove_rec(mu, idx + 1, len, budget - (hi - v), cur, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_slice(parts)
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(p(&[1]).kappa(), 0);
        assert_eq!(p(&[2]).kappa(), 2);
        assert_eq!(p(&[2, 1]).kappa(), 0);
    }

    #[test]
    fn kappa_is_twice_content_sum() {
        for lam in enumerate(8) {
            assert_eq!(lam.kappa(), 2 * lam.contents().sum::<i64>());
        }
    }

    #[test]
    fn strip_examples() {
        use StripDirection::*;
        use StripKind::*;
        assert_eq!(
            strips(&p(&[]), Add, Horizontal, 2),
            vec![(p(&[]), 0), (p(&[1]), 1), (p(&[2]), 2)]
        );
        assert_eq!(
            strips(&p(&[]), Add, Vertical, 2),
            vec![(p(&[]), 0), (p(&[1]), 1), (p(&[1, 1]), 2)]
        );
        assert_eq!(
            strips(&p(&[1]), Add, Horizontal, 1),
            vec![(p(&[1]), 0), (p(&[2]), 1), (p(&[1, 1]), 1)]
        );
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(0), vec![p(&[])]);
        assert_eq!(enumerate(2), vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]);
        assert_eq!(enumerate(4).len(), 12);
        // p(n) for n <= 10
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn conjugation_involutive_and_kappa_odd() {
        for lam in enumerate(8) {
            assert_eq!(lam.conjugate().conjugate(), lam);
            assert_eq!(lam.conjugate().kappa(), -lam.kappa());
        }
    }

    // Brute-force oracle: filter every partition of nearby weight by the
    // interlacing definition.
    fn strips_oracle(
        mu: &Partition,
        dir: StripDirection,
        kind: StripKind,
        m: usize,
    ) -> Vec<(Partition, usize)> {
        let w = mu.weight();
        let mut out = Vec::new();
        let range = match dir {
            StripDirection::Add => w..=w + m,
            StripDirection::Remove => w.saturating_sub(m)..=w,
        };
        for n in range {
            for lam in partitions_of(n) {
                let (big, small) = match dir {
                    StripDirection::Add => (&lam, mu),
                    StripDirection::Remove => (mu, &lam),
                };
                let ok = match kind {
                    StripKind::Horizontal => big.is_horizontal_strip_over(small),
                    StripKind::Vertical => big.is_vertical_strip_over(small),
                };
                if ok {
                    let s = big.weight() - small.weight();
                    out.push((lam.clone(), s));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn strips_match_oracle() {
        use StripDirection::*;
        use StripKind::*;
        for mu in enumerate(6) {
            for dir in [Add, Remove] {
                for kind in [Horizontal, Vertical] {
                    for m in 0..4 {
                        assert_eq!(strips(&mu, dir, kind, m), strips_oracle(&mu, dir, kind, m));
                    }
                }
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        (0usize..=8).prop_flat_map(|n| {
            let all = partitions_of(n);
            (0..all.len()).prop_map(move |k| all[k].clone())
        })
    }

    proptest! {
        #[test]
        fn horizontal_strips_dualize(mu in arb_partition(), m in 0usize..4) {
            for (lam, s) in strips(&mu, StripDirection::Add, StripKind::Horizontal, m) {
                prop_assert!(lam.contains(&mu));
                prop_assert_eq!(lam.weight() - mu.weight(), s);
                prop_assert!(lam.conjugate().is_vertical_strip_over(&mu.conjugate()));
            }
        }

        #[test]
        fn json_roundtrip(lam in arb_partition()) {
            let s = serde_json::to_string(&lam).unwrap();
            let back: Partition = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, lam);
        }
    }
}
