//! Polynomials over a prime field, enough for ideal factorization in `F_p[x]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::mod_pow;

/// A polynomial over `F_p`, coefficients from the constant term upward with
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    fn inv(&self, c: u64) -> u64 {
        mod_pow(c, self.p - 2, self.p)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| (a as u128 * c as u128 % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.leading()))
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.scale(self.p - 1))
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p as u128;
        let mut c = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, c.into_iter().map(|x| x as u64).collect())
    }

    pub fn pow(&self, k: u32) -> FpPoly {
        let mut acc = FpPoly::constant(self.p, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.inv(divisor.leading());
        let p = self.p as u128;
        let mut rem: Vec<u128> = self.coeffs.iter().map(|&c| c as u128).collect();
        let mut quot = vec![0u128; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let coef = rem[top] * inv_lead as u128 % p;
            let shift = top - dd;
            quot[shift] = coef;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = coef * dc as u128 % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            FpPoly::new(self.p, quot.into_iter().map(|x| x as u64).collect()),
            FpPoly::new(self.p, rem.into_iter().map(|x| x as u64).collect()),
        ))
    }

    /// All monic polynomials of exactly the given degree, in canonical order.
    pub fn monic_of_degree(p: u64, deg: usize) -> Vec<FpPoly> {
        let count = p.pow(deg as u32);
        let mut out: Vec<FpPoly> = (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(deg + 1);
                for _ in 0..deg {
                    c.push(idx % p);
                    idx /= p;
                }
                c.push(1);
                FpPoly::new(p, c)
            })
            .collect();
        out.sort();
        out
    }

    /// Monic irreducibles of the given degree (trial division, desk-scale only).
    pub fn monic_irreducibles(p: u64, deg: usize) -> Vec<FpPoly> {
        if deg == 0 {
            return vec![];
        }
        let smaller: Vec<FpPoly> = (1..=deg / 2).flat_map(|k| FpPoly::monic_irreducibles(p, k)).collect();
        FpPoly::monic_of_degree(p, deg)
            .into_iter()
            .filter(|f| smaller.iter().all(|g| !f.divrem(g).map(|(_, r)| r.is_zero()).unwrap_or(false)))
            .collect()
    }

    /// Factor a nonzero polynomial into monic irreducibles with multiplicity.
    pub fn factor(&self) -> Result<Vec<(FpPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut deg = 1;
        while rest.degree().unwrap_or(0) >= 2 * deg {
            for q in FpPoly::monic_irreducibles(self.p, deg) {
                let mut e = 0;
                loop {
                    let (quot, r) = rest.divrem(&q)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = quot;
                    e += 1;
                }
                if e > 0 {
                    out.push((q, e));
                }
            }
            deg += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, 1));
        }
        out.sort();
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.factor().as_deref(), Ok([(_, 1)]))
    }

    /// Parse text such as `x^2+2x+1` or `x^3 + 2*x - 1` over `F_p`.
    pub fn parse(p: u64, s: &str) -> Result<FpPoly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = FpPoly::new(p, vec![]);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let bad = || Error::Parse(format!("bad polynomial term {t:?}"));
            let (coef, exp) = match body.find('x') {
                None => (body.parse::<u64>().map_err(|_| bad())?, 0u32),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { body[..pos].parse::<u64>().map_err(|_| bad())? };
                    let tail = &body[pos + 1..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            let coef = coef % p;
            let coef = if neg { (p - coef) % p } else { coef };
            let mut c = vec![0; exp as usize + 1];
            c[exp as usize] = coef;
            acc = acc.add(&FpPoly::new(p, c));
        }
        Ok(acc)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then(self.p.cmp(&other.p))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f = FpPoly::parse(3, "x^2 + 2*x + 1").unwrap();
        assert_eq!(f.to_string(), "x^2+2x+1");
        assert_eq!(FpPoly::parse(5, "x - 1").unwrap().to_string(), "x+4");
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree n over F_p is (1/n) sum_{d|n} mu(d) p^{n/d}.
        assert_eq!(FpPoly::monic_irreducibles(2, 1).len(), 2);
        assert_eq!(FpPoly::monic_irreducibles(2, 2).len(), 1);
        assert_eq!(FpPoly::monic_irreducibles(2, 3).len(), 2);
        assert_eq!(FpPoly::monic_irreducibles(3, 2).len(), 3);
        assert_eq!(FpPoly::monic_irreducibles(2, 4).len(), 3);
    }

    #[test]
    fn factor_reconstructs() {
        let f = FpPoly::parse(3, "x^4 + 2x^3 + x + 2").unwrap();
        let fac = f.factor().unwrap();
        let mut prod = FpPoly::constant(3, f.leading());
        for (q, e) in &fac {
            assert!(q.is_irreducible());
            prod = prod.mul(&q.pow(*e));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn divrem_by_zero_fails() {
        let f = FpPoly::x(2);
        assert!(f.divrem(&FpPoly::new(2, vec![])).is_err());
    }
}
