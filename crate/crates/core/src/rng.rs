//! Park–Miller "minimal standard" generator, the documented source of every
//! random parameter, so runs are reproducible from the seed alone.

use num::{One, Zero};

use crate::arith::{int, rat, QContext, Scalar};

const MODULUS: u64 = (1 << 31) - 1;
const MULTIPLIER: u64 = 48271;

#[derive(Debug, Clone)]
pub struct Minstd {
    state: u64,
}

impl Minstd {
    /// The state is `(seed mod (m-1)) + 1`, never zero.
    pub fn new(seed: u64) -> Self {
        Minstd {
            state: seed % (MODULUS - 1) + 1,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state * MULTIPLIER % MODULUS;
        self.state
    }

    /// Uniform-ish in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Integer in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// `p/d` with `1 <= p < d <= 9`.
    pub fn unit_rational(&mut self) -> Scalar {
        let d = self.range(2, 9);
        let p = self.range(1, d - 1);
        rat(p, d)
    }

    /// A Kähler-type parameter in `(0, 1)` that is not `q^n` for small `n`,
    /// so no Pochhammer factor in the generic formulas can vanish.
    pub fn kahler(&mut self, ctx: &QContext) -> Scalar {
        loop {
            let v = self.unit_rational();
            if !ctx.is_q_power(&v, 64) {
                return v;
            }
        }
    }

    /// Signed rational with numerator in `-n..=n` and denominator `1..=d`.
    pub fn signed_rational(&mut self, n: i64, d: i64) -> Scalar {
        rat(self.range(-n, n), self.range(1, d))
    }

    /// Admissible `u` other than `1/2`: `p/d` with `|u| < 1`, `u != 0`.
    pub fn admissible_u(&mut self) -> Scalar {
        loop {
            let d = self.range(3, 7);
            let p = self.range(1, d - 1);
            let u = rat(p, d);
            if u != rat(1, 2) && !u.is_zero() && !u.is_one() {
                return u;
            }
        }
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }

    pub fn nonzero_small(&mut self) -> Scalar {
        let v = self.range(1, 5);
        if self.coin() {
            int(v)
        } else {
            int(-v)
        }
    }
}
