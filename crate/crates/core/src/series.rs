//! Truncated multivariate power series `K[[X_p]]` and the isomorphism
//! `Phi(f) = sum_a f(a) X^{n(a)}` from arithmetic functions.
//!
//! A series carries its truncation explicitly: a finite window of primes
//! (one variable each) and a total-degree bound. Operations refuse to mix
//! different truncations.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coefficients::{Field, Scalar};
use crate::dirichlet::ArithFn;
use crate::error::{Error, Result};
use crate::monoid::{enumerate_universe, MonoidDescriptor, MonoidElement, PrimeIndex};
use crate::valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    window: Vec<PrimeIndex>,
    degree: u32,
    /// Exponent vector (aligned with `window`) to nonzero coefficient.
    coeffs: BTreeMap<Vec<u32>, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(field: Field, window: &[PrimeIndex], degree: u32) -> Self {
        TruncatedSeries { field, window: window.to_vec(), degree, coeffs: BTreeMap::new() }
    }

    pub fn one(field: Field, window: &[PrimeIndex], degree: u32) -> Self {
        let mut s = TruncatedSeries::zero(field, window, degree);
        s.set(vec![0; window.len()], field.one());
        s
    }

    /// The variable `X_p` for the `i`-th prime of the window.
    pub fn variable(field: Field, window: &[PrimeIndex], degree: u32, i: usize) -> Self {
        let mut s = TruncatedSeries::zero(field, window, degree);
        let mut e = vec![0; window.len()];
        e[i] = 1;
        s.set(e, field.one());
        s
    }

    /// Build from `(exponent vector, coefficient)` pairs; terms above the
    /// degree bound are dropped and zero coefficients are not stored.
    pub fn from_terms(
        field: Field,
        window: &[PrimeIndex],
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut s = TruncatedSeries::zero(field, window, degree);
        for (e, c) in terms {
            if e.len() != window.len() {
                return Err(Error::TruncationMismatch(format!("monomial {e:?} has the wrong length")));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: c.field().to_string() });
            }
            let c = s.coeff(&e) + c;
            s.set(e, c);
        }
        Ok(s)
    }

    fn set(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() || e.iter().sum::<u32>() > self.degree {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> &[PrimeIndex] {
        &self.window
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &TruncatedSeries) -> Result<()> {
        if self.window != other.window || self.degree != other.degree {
            return Err(Error::TruncationMismatch(format!(
                "window/degree {:?}/{} vs {:?}/{}",
                self.window.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                self.degree,
                other.window.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                other.degree
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let sum = out.coeff(e) + c.clone();
            out.set(e.clone(), sum);
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: &Scalar) -> Result<TruncatedSeries> {
        if alpha.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field.to_string(), right: alpha.field().to_string() });
        }
        let mut out = TruncatedSeries::zero(self.field, &self.window, self.degree);
        for (e, c) in &self.coeffs {
            out.set(e.clone(), alpha * c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.scale(&self.field.one().neg())?)
    }

    /// Cauchy product; terms above the degree bound are discarded.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let mut out = TruncatedSeries::zero(self.field, &self.window, self.degree);
        for (e1, c1) in &self.coeffs {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.coeffs {
                if d1 + e2.iter().sum::<u32>() > self.degree {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = out.coeff(&e) + c1 * c2;
                out.set(e, c);
            }
        }
        Ok(out)
    }

    /// `w(F)`: the least total degree of a nonzero term.
    pub fn w_valuation(&self) -> Valuation {
        self.coeffs.keys().map(|e| e.iter().sum::<u32>()).min().map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// Rename variables `X_p -> X_{map(p)}`; `map` must permute the window.
    pub fn substitute(&self, map: &BTreeMap<PrimeIndex, PrimeIndex>) -> Result<TruncatedSeries> {
        let pos: Vec<usize> = self
            .window
            .iter()
            .map(|p| {
                let q = map.get(p).unwrap_or(p);
                self.window
                    .iter()
                    .position(|r| r == q)
                    .ok_or_else(|| Error::TruncationMismatch(format!("{q} is outside the window")))
            })
            .collect::<Result<_>>()?;
        let mut sorted = pos.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != pos.len() {
            return Err(Error::TruncationMismatch("variable map is not a permutation".into()));
        }
        let mut out = TruncatedSeries::zero(self.field, &self.window, self.degree);
        for (e, c) in &self.coeffs {
            let mut f = vec![0; e.len()];
            for (i, &k) in e.iter().enumerate() {
                f[pos[i]] = k;
            }
            out.set(f, c.clone());
        }
        Ok(out)
    }

    /// `Phi^{-1}`: the function with `f(a) = coefficient of X^{n(a)}` on the
    /// truncated universe and zero outside it.
    pub fn phi_inverse(&self, monoid: &MonoidDescriptor) -> Result<ArithFn> {
        ArithFn::from_table(
            monoid,
            self.field,
            self.coeffs.iter().map(|(e, c)| (MonoidElement::from_exponent_vector(&self.window, e), c.clone())),
        )
    }
}

/// `Phi(f)` truncated to `window` and total degree `degree`.
pub fn phi(f: &ArithFn, window: &[PrimeIndex], degree: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(f.field(), window, degree);
    for a in enumerate_universe(window, degree) {
        s.set(a.exponent_vector(window), f.eval(&a));
    }
    s
}

/// `f_t = sum_{k <= t} f(a_k) pi^{n(a_k)}`, with `a_1, a_2, ...` the
/// universe over `window` in nondecreasing `lambda` order. The result is
/// built as a combination of convolution powers of the `pi_p`.
pub fn partial_sum(f: &ArithFn, window: &[PrimeIndex], t: usize) -> ArithFn {
    let (monoid, field) = (f.monoid(), f.field());
    let mut depth = 0;
    let mut universe = enumerate_universe(window, depth);
    while universe.len() < t && !window.is_empty() {
        depth += 1;
        universe = enumerate_universe(window, depth);
    }
    let mut acc = ArithFn::from_table(monoid, field, []).expect("empty table");
    for a in universe.iter().take(t) {
        let mut mono = ArithFn::identity(monoid, field);
        for (p, k) in a.exponents() {
            let pi = ArithFn::prime_indicator(monoid, field, p.clone());
            mono = mono.convolve(&pi.pow(*k)).expect("same monoid");
        }
        acc = acc.add(&mono.scale(&f.eval(a)).expect("same field")).expect("same monoid");
    }
    acc
}

fn monomial_text(window: &[PrimeIndex], e: &[u32]) -> String {
    let parts: Vec<String> = window
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(p, &k)| if k == 1 { format!("X_{p}") } else { format!("X_{p}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded, then by descending exponent vector: 1, X_2, X_3, X_2^2, ...
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(&self.window, e);
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            let sep = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            monomial: BTreeMap<String, u32>,
            coeff: String,
        }
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let monomial =
                self.window.iter().zip(e).filter(|(_, &k)| k > 0).map(|(p, &k)| (p.to_string(), k)).collect();
            seq.serialize_element(&Term { monomial, coeff: c.to_string() })?;
        }
        seq.end()
    }
}
