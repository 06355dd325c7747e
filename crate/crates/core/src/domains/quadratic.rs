//! The quadratic orders `Z[w]`, `w = sqrt(d)` with `d` squarefree and
//! `d = 2, 3 (mod 4)`, and their ideals as Hermite-normal-form lattices.
//!
//! An ideal is stored by the Z-basis `{a, b + c*w}` with `c | a`, `c | b`
//! and `0 <= b < a`; its norm is the lattice index `a*c`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{ext_gcd, factor_u64, gcd_i128, is_prime, is_squarefree, isqrt, legendre, sqrt_mod};

pub fn validate_discriminant(d: i64) -> Result<()> {
    if d == 0 || d == 1 || !is_squarefree(d) {
        return Err(Error::InvalidDomain(format!("d = {d} must be squarefree and not 0 or 1")));
    }
    let r = d.rem_euclid(4);
    if r != 2 && r != 3 {
        return Err(Error::InvalidDomain(format!("d = {d} must be 2 or 3 mod 4")));
    }
    Ok(())
}

/// An element `re + im*w` of `Z[w]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub d: i64,
    pub re: i64,
    pub im: i64,
}

impl QuadInt {
    pub fn new(d: i64, re: i64, im: i64) -> Self {
        QuadInt { d, re, im }
    }

    pub fn from_int(d: i64, n: i64) -> Self {
        QuadInt { d, re: n, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn norm(&self) -> i128 {
        let (a, b, d) = (self.re as i128, self.im as i128, self.d as i128);
        a * a - d * b * b
    }

    pub fn conj(&self) -> Self {
        QuadInt { im: -self.im, ..*self }
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        QuadInt {
            d: self.d,
            re: self.re * other.re + self.d * self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }

    pub fn add(&self, other: &QuadInt) -> QuadInt {
        QuadInt { d: self.d, re: self.re + other.re, im: self.im + other.im }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs() == 1
    }

    /// Parse `a+b*w`, `1-w`, `3`, `-2w`; `sqrt(d)` and `i` (for d=-1) are
    /// accepted as spellings of `w`.
    pub fn parse(d: i64, s: &str) -> Result<QuadInt> {
        let mut t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        t = t.replace(&format!("sqrt({d})"), "w");
        if d == -1 {
            t = t.replace('i', "w");
        }
        if t.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let (mut re, mut im) = (0i64, 0i64);
        for term in terms {
            let bad = || Error::Parse(format!("bad quadratic term {term:?} in {s:?}"));
            if let Some(coef) = term.strip_suffix('w') {
                let c = match coef {
                    "" | "+" => 1,
                    "-" => -1,
                    c => c.parse::<i64>().map_err(|_| bad())?,
                };
                im += c;
            } else {
                re += term.parse::<i64>().map_err(|_| bad())?;
            }
        }
        Ok(QuadInt { d, re, im })
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, i) => write!(f, "{i}*w"),
            (r, 1) => write!(f, "{r}+w"),
            (r, -1) => write!(f, "{r}-w"),
            (r, i) if i > 0 => write!(f, "{r}+{i}*w"),
            (r, i) => write!(f, "{r}{i}*w"),
        }
    }
}

/// A nonzero ideal of `Z[w]` in Hermite normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadIdeal {
    pub fn unit(d: i64) -> Self {
        QuadIdeal { d, a: 1, b: 0, c: 1 }
    }

    /// HNF of the Z-lattice spanned by the vectors `(x, y) = x + y*w`.
    /// Fails unless the span has full rank.
    pub fn from_lattice(d: i64, vectors: &[(i128, i128)]) -> Result<QuadIdeal> {
        let mut vs: Vec<(i128, i128)> = vectors.iter().copied().filter(|v| *v != (0, 0)).collect();
        // Clear the w-column down to a single pivot row.
        let mut pivot: Option<(i128, i128)> = None;
        let mut rest = Vec::new();
        for v in vs.drain(..) {
            if v.1 == 0 {
                rest.push(v.0);
                continue;
            }
            match pivot {
                None => pivot = Some(v),
                Some(p) => {
                    let (g, s, t) = ext_gcd(p.1, v.1);
                    let new_pivot = (s * p.0 + t * v.0, g);
                    // The complementary combination kills the w-coordinate.
                    let u = v.1 / g;
                    let w = p.1 / g;
                    rest.push(u * p.0 - w * v.0);
                    pivot = Some(new_pivot);
                }
            }
        }
        let (px, py) = pivot.ok_or_else(|| Error::InvalidDomain("lattice is not of full rank".into()))?;
        let a = rest.iter().fold(0i128, |g, &x| gcd_i128(g, x));
        if a == 0 {
            return Err(Error::InvalidDomain("lattice is not of full rank".into()));
        }
        let (px, py) = if py < 0 { (-px, -py) } else { (px, py) };
        let b = px.rem_euclid(a);
        Ok(QuadIdeal { d, a: a as i64, b: b as i64, c: py as i64 })
    }

    pub fn from_generators(d: i64, gens: &[QuadInt]) -> Result<QuadIdeal> {
        let mut vecs = Vec::new();
        for g in gens {
            let gw = g.mul(&QuadInt::new(d, 0, 1));
            vecs.push((g.re as i128, g.im as i128));
            vecs.push((gw.re as i128, gw.im as i128));
        }
        QuadIdeal::from_lattice(d, &vecs)
    }

    pub fn principal(x: &QuadInt) -> Result<QuadIdeal> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        QuadIdeal::from_generators(x.d, &[*x])
    }

    fn basis(&self) -> [(i128, i128); 2] {
        [(self.a as i128, 0), (self.b as i128, self.c as i128)]
    }

    pub fn basis_elements(&self) -> [QuadInt; 2] {
        [QuadInt::new(self.d, self.a, 0), QuadInt::new(self.d, self.b, self.c)]
    }

    pub fn norm(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.a == 1 && self.c == 1
    }

    pub fn contains_vec(&self, x: i128, y: i128) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        y % c == 0 && (x - (y / c) * b) % a == 0
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        self.contains_vec(x.re as i128, x.im as i128)
    }

    /// `other ⊆ self`, i.e. `self` divides `other`.
    pub fn divides(&self, other: &QuadIdeal) -> bool {
        other.basis().iter().all(|&(x, y)| self.contains_vec(x, y))
    }

    pub fn mul(&self, other: &QuadIdeal) -> QuadIdeal {
        let mut vecs = Vec::with_capacity(4);
        for x in self.basis_elements() {
            for y in other.basis_elements() {
                let p = x.mul(&y);
                vecs.push((p.re as i128, p.im as i128));
            }
        }
        QuadIdeal::from_lattice(self.d, &vecs).expect("product of nonzero ideals is nonzero")
    }

    pub fn pow(&self, k: u32) -> QuadIdeal {
        (0..k).fold(QuadIdeal::unit(self.d), |acc, _| acc.mul(self))
    }

    pub fn conj(&self) -> QuadIdeal {
        QuadIdeal::from_lattice(self.d, &[(self.a as i128, 0), (self.b as i128, -(self.c as i128))])
            .expect("conjugate of a full lattice is full")
    }

    /// Divide every basis entry by `n`; fails unless `self ⊆ (n)`.
    pub fn div_int(&self, n: i64) -> Result<QuadIdeal> {
        if self.a % n != 0 || self.b % n != 0 || self.c % n != 0 {
            return Err(Error::NotADivisor { divisor: format!("({n})"), dividend: self.to_string() });
        }
        QuadIdeal::from_lattice(self.d, &[((self.a / n) as i128, 0), ((self.b / n) as i128, (self.c / n) as i128)])
    }

    /// `self * p^{-1}` for a prime ideal `p` dividing `self`, computed as
    /// `(self * conj(p)) / N(p)`; valid because `p * conj(p) = (N(p))`.
    pub fn div_prime(&self, prime: &QuadIdeal) -> Result<QuadIdeal> {
        if !prime.divides(self) {
            return Err(Error::NotADivisor { divisor: prime.to_string(), dividend: self.to_string() });
        }
        self.mul(&prime.conj()).div_int(prime.norm() as i64)
    }

    /// The rational prime below a prime ideal.
    pub fn rational_prime(&self) -> u64 {
        self.a as u64
    }

    /// Canonical label for a prime ideal: `P2`, `P3+`, `P3-`, `P11`.
    pub fn prime_label(&self) -> String {
        let p = self.a;
        if self.c == 1 {
            let other = (-self.b).rem_euclid(p);
            if other == self.b {
                format!("P{p}")
            } else if self.b < other {
                format!("P{p}+")
            } else {
                format!("P{p}-")
            }
        } else {
            format!("P{p}")
        }
    }

    /// Search for a generator among elements of norm `±N(self)`. Exhaustive
    /// for imaginary orders; for real orders the search is bounded by `bound`.
    pub fn is_principal(&self, bound: i64) -> Option<QuadInt> {
        let n = self.norm() as i128;
        let d = self.d;
        let mut candidates: Vec<QuadInt> = Vec::new();
        if d < 0 {
            let ymax = isqrt((n / (-d as i128)) as u128) as i64;
            let xmax = isqrt(n as u128) as i64;
            for y in 0..=ymax {
                for x in -xmax..=xmax {
                    let q = QuadInt::new(d, x, y);
                    if q.norm() == n {
                        candidates.push(q);
                    }
                }
            }
        } else {
            for y in 0..=bound {
                for x in -bound..=bound {
                    let q = QuadInt::new(d, x, y);
                    if q.norm().abs() == n {
                        candidates.push(q);
                    }
                }
            }
        }
        candidates.sort_by_key(|q| (q.im.abs(), q.re.abs(), -q.re, q.im));
        candidates.into_iter().find(|q| QuadIdeal::principal(q).map(|i| i == *self).unwrap_or(false))
    }

    /// Whether the lattice is closed under multiplication by `w`.
    pub fn is_ideal(&self) -> bool {
        let w = QuadInt::new(self.d, 0, 1);
        self.basis_elements().iter().all(|x| self.contains(&x.mul(&w)))
    }
}

impl PartialOrd for QuadIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadIdeal {
    /// Norm first, then the HNF entries; split pairs order `+` before `-`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.norm(), self.a, self.b, self.c, self.d).cmp(&(other.norm(), other.a, other.b, other.c, other.d))
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let second = QuadInt::new(self.d, self.b, self.c);
        write!(f, "({}, {})", self.a, second)
    }
}

/// How a rational prime decomposes in `Z[w]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitType {
    Split(QuadIdeal, QuadIdeal),
    Inert(QuadIdeal),
    Ramified(QuadIdeal),
}

impl SplitType {
    pub fn primes(&self) -> Vec<QuadIdeal> {
        match self {
            SplitType::Split(a, b) => vec![*a, *b],
            SplitType::Inert(a) | SplitType::Ramified(a) => vec![*a],
        }
    }
}

/// The prime ideal `(p, w - r)` as an HNF.
fn prime_over(d: i64, p: i64, r: i64) -> QuadIdeal {
    QuadIdeal::from_generators(d, &[QuadInt::from_int(d, p), QuadInt::new(d, -r, 1)]).expect("nonzero generators")
}

pub fn splitting_type(d: i64, p: u64) -> Result<SplitType> {
    validate_discriminant(d)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pi = p as i64;
    if p == 2 || d.rem_euclid(pi) == 0 {
        let r = sqrt_mod(d, p).expect("d is a square mod a ramified prime") as i64;
        return Ok(SplitType::Ramified(prime_over(d, pi, r)));
    }
    match legendre(d, p) {
        1 => {
            let r = sqrt_mod(d, p).expect("residue has a root") as i64;
            let mut pair = [prime_over(d, pi, r), prime_over(d, pi, pi - r)];
            pair.sort_by_key(|i| i.b);
            Ok(SplitType::Split(pair[0], pair[1]))
        }
        _ => Ok(SplitType::Inert(QuadIdeal { d, a: pi, b: 0, c: pi })),
    }
}

/// Factor a nonzero ideal into prime ideals by repeated exact division.
pub fn factor_ideal(ideal: &QuadIdeal) -> Result<Vec<(QuadIdeal, u32)>> {
    let mut rest = *ideal;
    let mut out = Vec::new();
    for (p, _) in factor_u64(ideal.norm()) {
        for prime in splitting_type(ideal.d, p)?.primes() {
            let mut e = 0;
            while prime.divides(&rest) {
                rest = rest.div_prime(&prime)?;
                e += 1;
            }
            if e > 0 {
                out.push((prime, e));
            }
        }
    }
    debug_assert!(rest.is_unit_ideal(), "leftover {rest} after factoring {ideal}");
    out.sort();
    Ok(out)
}
