//! Seeded generation of random instances over Q(t).
//!
//! Entries are ratios of integer polynomials with coefficients in
//! `[-5, 5]` and degree at most 2. The same seed always yields the same
//! instance sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Poly, RatFunc, RatMat};

pub const DEFAULT_SEED: u64 = 1729;

const COEFF_BOUND: i64 = 5;
const MAX_DEGREE: usize = 2;

pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        InstanceGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn poly(&mut self) -> Poly {
        let deg = self.rng.gen_range(0..=MAX_DEGREE);
        let cs: Vec<i64> = (0..=deg).map(|_| self.int(-COEFF_BOUND, COEFF_BOUND)).collect();
        Poly::from_ints(&cs)
    }

    fn nonzero_poly(&mut self) -> Poly {
        loop {
            let p = self.poly();
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn ratfunc(&mut self) -> RatFunc {
        let num = self.poly();
        let den = self.nonzero_poly();
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn nonconstant(&mut self) -> RatFunc {
        loop {
            let f = self.ratfunc();
            if !f.is_constant() {
                return f;
            }
        }
    }

    pub fn nonzero(&mut self) -> RatFunc {
        loop {
            let f = self.ratfunc();
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn ratmat(&mut self, n: usize) -> RatMat {
        RatMat::from_fn(n, |_, _| self.ratfunc())
    }

    /// Random matrix with `det ≢ 0`; singular draws are discarded.
    pub fn invertible(&mut self, n: usize) -> RatMat {
        loop {
            let m = self.ratmat(n);
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    /// Integer Möbius map `(a t + b)/(c t + d)` with `ad − bc ≠ 0`.
    pub fn mobius(&mut self) -> RatFunc {
        loop {
            let [a, b, c, d] = [(); 4].map(|_| self.int(-COEFF_BOUND, COEFF_BOUND));
            if a * d - b * c != 0 {
                return RatFunc::new(Poly::from_ints(&[b, a]), Poly::from_ints(&[d, c]))
                    .expect("nonzero denominator");
            }
        }
    }
}
