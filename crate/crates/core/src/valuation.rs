//! The valuation `v(f) = min { lambda(a) : f(a) != 0 }`, the norm
//! `N(f) = 2^v(f)`, the ultrametric `d(f, g) = c^v(f - g)` and the ideals
//! `m_n = { f : v(f) >= n }`.
//!
//! `v` quantifies over all of `M`, so it is only certified on monoids with
//! finitely many primes when the scan covers every prime. On such a monoid a
//! scan of `U(P, D)` that finds no nonzero value reports `Infinite`: at
//! truncation depth `D` the function is indistinguishable from zero.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coefficients::{is_positive_proper_fraction, rational_pow};
use crate::dirichlet::ArithFn;
use crate::error::{Error, Result};
use crate::monoid::{enumerate_universe, MonoidElement, PrimeIndex};

/// A value of `v` or `w`, with `Infinite` for the zero function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }

    /// `v + w` with `Infinite` absorbing.
    pub fn plus(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => f.pad(&n.to_string()),
            Valuation::Infinite => f.pad("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(n) => s.serialize_u32(*n),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub value: Valuation,
    /// True when `value` is exactly `v(f)` (up to the depth horizon for `Infinite`).
    pub certified: bool,
    #[serde(serialize_with = "labels")]
    pub window: Vec<PrimeIndex>,
    pub depth: u32,
}

fn labels<S: serde::Serializer>(w: &[PrimeIndex], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|p| p.to_string()))
}

impl ValuationReport {
    pub fn certified_value(&self) -> Result<Valuation> {
        if self.certified {
            Ok(self.value)
        } else {
            Err(Error::Uncertified(format!(
                "scan of window {:?} at depth {} does not cover a finite-prime monoid",
                self.window.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                self.depth
            )))
        }
    }
}

/// Scan `U(window, depth)` in `lambda` order and stop at the first nonzero value.
pub fn valuation(f: &ArithFn, window: &[PrimeIndex], depth: u32) -> ValuationReport {
    let covers_all = f
        .monoid()
        .finite_primes()
        .is_some_and(|all| all.iter().all(|p| window.contains(p)) && window.iter().all(|p| all.contains(p)));
    let value = enumerate_universe(window, depth)
        .into_iter()
        .find(|a| !f.eval(a).is_zero())
        .map_or(Valuation::Infinite, |a| Valuation::Finite(a.lambda()));
    ValuationReport { value, certified: covers_all, window: window.to_vec(), depth }
}

/// `v(f)` over all primes of a finite-prime monoid, or an error demanding one.
pub fn certified_valuation(f: &ArithFn, depth: u32) -> Result<Valuation> {
    let primes = f
        .monoid()
        .finite_primes()
        .ok_or_else(|| Error::Uncertified(format!("{} has infinitely many primes", f.monoid())))?;
    valuation(f, &primes, depth).certified_value()
}

/// `N(f) = 2^v(f)`, with `N(0) = 0`.
pub fn norm_n(f: &ArithFn, depth: u32) -> Result<BigUint> {
    Ok(match certified_valuation(f, depth)? {
        Valuation::Finite(v) => BigUint::from(2u32).pow(v),
        Valuation::Infinite => BigUint::zero(),
    })
}

/// `N(f) = 1` exactly for units, and `N(f) = 2` forces `f` to be prime.
pub fn is_unit_by_norm(f: &ArithFn, depth: u32) -> Result<bool> {
    Ok(norm_n(f, depth)?.is_one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricParams {
    c: BigRational,
}

impl MetricParams {
    pub fn new(c: BigRational) -> Result<Self> {
        if !is_positive_proper_fraction(&c) {
            return Err(Error::Parse(format!("metric base {c} must lie strictly between 0 and 1")));
        }
        Ok(MetricParams { c })
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams { c: BigRational::new(1.into(), 2.into()) }
    }
}

/// `|f| = c^v(f)`, zero for the zero function.
pub fn absolute_value(f: &ArithFn, params: &MetricParams, depth: u32) -> Result<BigRational> {
    Ok(match certified_valuation(f, depth)? {
        Valuation::Finite(v) => rational_pow(params.c(), v),
        Valuation::Infinite => BigRational::zero(),
    })
}

/// `d(f, g) = |f - g|`.
pub fn distance(f: &ArithFn, g: &ArithFn, params: &MetricParams, depth: u32) -> Result<BigRational> {
    absolute_value(&f.sub(g)?, params, depth)
}

/// Whether `f` lies in `m_n`.
pub fn in_m_n(f: &ArithFn, n: u32, depth: u32) -> Result<bool> {
    Ok(match certified_valuation(f, depth)? {
        Valuation::Finite(v) => v >= n,
        Valuation::Infinite => true,
    })
}

/// The limit of a Cauchy sequence given with an explicit modulus: for
/// every `k <= depth`, all terms from index `modulus(k)` on agree at every
/// `a` with `lambda(a) = k`.
///
/// The modulus is checked on terms `modulus(k) ..= T + lookahead` with `T`
/// the largest modulus value, and the limit is verified to satisfy
/// `v(limit - seq(n)) > k` for those `n >= max(modulus(0..=k))`.
pub fn cauchy_limit<S, T>(seq: S, modulus: T, window: &[PrimeIndex], depth: u32, lookahead: usize) -> Result<ArithFn>
where
    S: Fn(usize) -> ArithFn,
    T: Fn(u32) -> usize,
{
    let t: Vec<usize> = (0..=depth).map(&modulus).collect();
    let last = t.iter().copied().max().unwrap_or(0) + lookahead;
    let terms: Vec<ArithFn> = (0..=last).map(&seq).collect();
    let universe = enumerate_universe(window, depth);
    let mut values = Vec::new();
    for a in &universe {
        let k = a.lambda();
        let start = t[k as usize];
        let v = terms[start].eval(a);
        if let Some(n) = (start..=last).find(|&n| terms[n].eval(a) != v) {
            return Err(Error::NotCauchy(format!(
                "terms {start} and {n} differ at {a} although the modulus promises agreement at level {k}"
            )));
        }
        values.push((a.clone(), v));
    }
    let first = &terms[0];
    let limit = ArithFn::from_table(first.monoid(), first.field(), values)?;
    for k in 0..=depth {
        let from = t[..=k as usize].iter().copied().max().unwrap_or(0);
        for (n, term) in terms.iter().enumerate().skip(from) {
            let diff = limit.sub(term)?;
            if let Some(a) = universe.iter().find(|a| a.lambda() <= k && !diff.eval(a).is_zero()) {
                return Err(Error::Verification(format!("limit differs from term {n} at {a}")));
            }
        }
    }
    Ok(limit)
}

/// Lowest-`lambda` element of `universe` where `f` is nonzero.
pub fn leading_element<'a>(f: &ArithFn, universe: &'a [MonoidElement]) -> Option<&'a MonoidElement> {
    universe.iter().find(|a| !f.eval(a).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Field;
    use crate::monoid::MonoidDescriptor;

    fn free2() -> (MonoidDescriptor, Field) {
        (MonoidDescriptor::free(2), Field::Rationals)
    }

    fn pi(m: &MonoidDescriptor, k: Field, i: u32) -> ArithFn {
        ArithFn::prime_indicator(m, k, PrimeIndex::Free(i))
    }

    #[test]
    fn basic_valuations() {
        let (m, k) = free2();
        let e = ArithFn::identity(&m, k);
        assert_eq!(certified_valuation(&e, 4).unwrap(), Valuation::Finite(0));
        let f = ArithFn::unit(&m, k).sub(&e).unwrap();
        assert_eq!(certified_valuation(&f, 4).unwrap(), Valuation::Finite(1));
        let pq = pi(&m, k, 1).convolve(&pi(&m, k, 2)).unwrap();
        assert_eq!(certified_valuation(&pq, 4).unwrap(), Valuation::Finite(2));
    }

    #[test]
    fn norms_and_distances() {
        let (m, k) = free2();
        let e = ArithFn::identity(&m, k);
        assert_eq!(norm_n(&e, 4).unwrap(), BigUint::one());
        assert_eq!(norm_n(&pi(&m, k, 1), 4).unwrap(), BigUint::from(2u32));
        let zero = e.sub(&e).unwrap();
        assert_eq!(norm_n(&zero, 4).unwrap(), BigUint::zero());
        let params = MetricParams::default();
        assert!(distance(&e, &e, &params, 4).unwrap().is_zero());
        assert_eq!(distance(&e, &pi(&m, k, 1), &params, 4).unwrap(), BigRational::one());
    }

    #[test]
    fn infinite_monoids_are_not_certified() {
        let m = MonoidDescriptor::positive_integers();
        let e = ArithFn::identity(&m, Field::Rationals);
        let report = valuation(&e, &[PrimeIndex::Rational(2)], 3);
        assert!(!report.certified);
        assert!(matches!(norm_n(&e, 3), Err(Error::Uncertified(_))));
    }

    #[test]
    fn m_n_membership() {
        let (m, k) = free2();
        assert!(!in_m_n(&ArithFn::identity(&m, k), 1, 4).unwrap());
        let p = pi(&m, k, 1);
        assert!(in_m_n(&p.convolve(&p).unwrap(), 2, 4).unwrap());
        assert!(!in_m_n(&p, 2, 4).unwrap());
    }

    #[test]
    fn metric_base_is_validated() {
        assert!(MetricParams::new(BigRational::one()).is_err());
        assert!(MetricParams::new(BigRational::new(1.into(), 3.into())).is_ok());
    }

    #[test]
    fn geometric_tail_limit() {
        let (m, k) = free2();
        let w = m.finite_primes().unwrap();
        let p = pi(&m, k, 1);
        let seq = |t: usize| {
            (1..=t).fold(ArithFn::from_table(&m, k, []).unwrap(), |acc, j| acc.add(&p.pow(j as u32)).unwrap())
        };
        let limit = cauchy_limit(seq, |k| k as usize, &w, 5, 2).unwrap();
        for j in 1..=5 {
            assert!(limit.eval(&MonoidElement::prime_power(PrimeIndex::Free(1), j)).is_one());
        }
        assert!(limit.eval(&MonoidElement::one()).is_zero());
    }

    #[test]
    fn bad_modulus_is_rejected() {
        let (m, k) = free2();
        let w = m.finite_primes().unwrap();
        let p = pi(&m, k, 1);
        let seq = |t: usize| p.pow(t as u32 % 2);
        assert!(matches!(cauchy_limit(seq, |_| 0, &w, 2, 2), Err(Error::NotCauchy(_))));
    }
}
