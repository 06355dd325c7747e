//! Seeded generators for random arithmetic functions.
//!
//! Values come from a small fixed pool that contains zero, so sampled
//! functions regularly hit zero divisors and the inverse recursion's
//! division paths. The same seed always yields the same functions.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{Field, Scalar};
use crate::dirichlet::ArithFn;
use crate::monoid::{enumerate_universe, MonoidDescriptor, PrimeIndex};

const POOL: [(i64, i64); 9] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 3), (3, 1), (5, 2)];

pub struct Sampler {
    rng: ChaCha8Rng,
    field: Field,
    pool: Vec<Scalar>,
}

impl Sampler {
    pub fn new(seed: u64, field: Field) -> Self {
        let mut pool: Vec<Scalar> = Vec::new();
        for x in POOL.iter().filter_map(|&(n, d)| field.from_fraction(n, d).ok()) {
            if !pool.contains(&x) {
                pool.push(x);
            }
        }
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field, pool }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> Scalar {
        let i = self.rng.random_range(0..self.pool.len());
        self.pool[i].clone()
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Arbitrary values on `U(window, depth)`, zero elsewhere.
    pub fn table(&mut self, monoid: &MonoidDescriptor, window: &[PrimeIndex], depth: u32) -> ArithFn {
        let values: Vec<_> = enumerate_universe(window, depth).into_iter().map(|a| (a, self.scalar())).collect();
        ArithFn::from_table(monoid, self.field, values).expect("pool lives in the field")
    }

    /// Like [`Sampler::table`] but with `f(1) != 0`, so a unit of the ring.
    pub fn unit(&mut self, monoid: &MonoidDescriptor, window: &[PrimeIndex], depth: u32) -> ArithFn {
        let mut values: Vec<_> = enumerate_universe(window, depth).into_iter().map(|a| (a, self.scalar())).collect();
        values[0].1 = self.nonzero_scalar();
        ArithFn::from_table(monoid, self.field, values).expect("pool lives in the field")
    }

    /// Independent values on each `p^k` with `p` in `window` and `1 <= k <= depth`.
    pub fn multiplicative(&mut self, monoid: &MonoidDescriptor, window: &[PrimeIndex], depth: u32) -> ArithFn {
        let mut values = HashMap::new();
        for p in window {
            for k in 1..=depth {
                values.insert((p.clone(), k), self.scalar());
            }
        }
        ArithFn::multiplicative(monoid, self.field, values, self.field.zero()).expect("pool lives in the field")
    }

    /// Independent values on each prime of `window`, zero on other primes.
    pub fn totally_multiplicative(&mut self, monoid: &MonoidDescriptor, window: &[PrimeIndex]) -> ArithFn {
        let values: BTreeMap<_, _> = window.iter().map(|p| (p.clone(), self.scalar())).collect();
        ArithFn::totally_multiplicative(monoid, self.field, values, self.field.zero()).expect("pool lives in the field")
    }

    /// A uniformly chosen index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}
