//! The ring of arithmetic functions `M -> K` under pointwise addition and
//! Dirichlet convolution.
//!
//! An [`ArithFn`] is an immutable expression DAG. Evaluation is exact and
//! divisor-local: `(f * g)(a)` only looks at divisors of `a`, so nothing is
//! ever truncated. Every node memoizes its values behind a lock, so a shared
//! function can be evaluated from several threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::coefficients::{Field, Scalar};
use crate::domains::DomainHom;
use crate::error::{Error, Result};
use crate::monoid::{enumerate_universe, MonoidDescriptor, MonoidElement, PrimeIndex};

type PointRule = Arc<dyn Fn(&MonoidElement) -> Scalar + Send + Sync>;

/// A monoid homomorphism `M -> N` used for pullbacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidMap {
    Identity,
    /// Sends prime `p` to `map[p]`; primes not listed are fixed.
    PrimeMap(BTreeMap<PrimeIndex, PrimeIndex>),
    /// Ideal extension `a -> aB` along a domain homomorphism.
    Extension(DomainHom),
}

impl MonoidMap {
    pub fn apply(&self, a: &MonoidElement) -> Result<MonoidElement> {
        match self {
            MonoidMap::Identity => Ok(a.clone()),
            MonoidMap::PrimeMap(m) => Ok(MonoidElement::from_pairs(
                a.exponents().iter().map(|(p, k)| (m.get(p).cloned().unwrap_or_else(|| p.clone()), *k)),
            )),
            MonoidMap::Extension(hom) => hom.extend_ideal(a),
        }
    }
}

enum Node {
    Table(HashMap<MonoidElement, Scalar>),
    Rule(String, PointRule),
    Identity,
    Unit,
    Moebius,
    TotallyMult {
        values: BTreeMap<PrimeIndex, Scalar>,
        default: Scalar,
    },
    Multiplicative {
        values: HashMap<(PrimeIndex, u32), Scalar>,
        default: Scalar,
    },
    DivisorCount,
    Sigma(u32),
    EulerPhi,
    Norm,
    Sum(ArithFn, ArithFn),
    Scale(Scalar, ArithFn),
    Convolve(ArithFn, ArithFn),
    /// Inverse of `f`, carrying `1/f(1)`.
    Inverse(ArithFn, Scalar),
    Pullback(MonoidMap, ArithFn),
}

struct Inner {
    monoid: MonoidDescriptor,
    field: Field,
    node: Node,
    memo: RwLock<HashMap<MonoidElement, Scalar>>,
}

/// An arithmetic function on a unique factorization monoid.
#[derive(Clone)]
pub struct ArithFn(Arc<Inner>);

impl ArithFn {
    fn build(monoid: &MonoidDescriptor, field: Field, node: Node) -> ArithFn {
        ArithFn(Arc::new(Inner { monoid: monoid.clone(), field, node, memo: RwLock::new(HashMap::new()) }))
    }

    pub fn monoid(&self) -> &MonoidDescriptor {
        &self.0.monoid
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    /// The identity `e` of convolution.
    pub fn identity(monoid: &MonoidDescriptor, field: Field) -> ArithFn {
        ArithFn::build(monoid, field, Node::Identity)
    }

    /// The constant function `u = 1`.
    pub fn unit(monoid: &MonoidDescriptor, field: Field) -> ArithFn {
        ArithFn::build(monoid, field, Node::Unit)
    }

    pub fn moebius(monoid: &MonoidDescriptor, field: Field) -> ArithFn {
        ArithFn::build(monoid, field, Node::Moebius)
    }

    /// The number of divisors `d(a)`.
    pub fn divisor_count(monoid: &MonoidDescriptor, field: Field) -> ArithFn {
        ArithFn::build(monoid, field, Node::DivisorCount)
    }

    fn require_norm(monoid: &MonoidDescriptor, what: &str) -> Result<()> {
        if monoid.has_norm() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs a norm, {monoid} has none")))
        }
    }

    /// `sigma_k(a) = sum_{d | a} N(d)^k` for a nonnegative integer `k`.
    pub fn sigma(monoid: &MonoidDescriptor, field: Field, k: u32) -> Result<ArithFn> {
        ArithFn::require_norm(monoid, "sigma")?;
        Ok(ArithFn::build(monoid, field, Node::Sigma(k)))
    }

    /// `phi(a) = #(A/a)^x`.
    pub fn euler_phi(monoid: &MonoidDescriptor, field: Field) -> Result<ArithFn> {
        ArithFn::require_norm(monoid, "phi")?;
        Ok(ArithFn::build(monoid, field, Node::EulerPhi))
    }

    /// The absolute norm `N(a)`.
    pub fn norm(monoid: &MonoidDescriptor, field: Field) -> Result<ArithFn> {
        ArithFn::require_norm(monoid, "norm")?;
        Ok(ArithFn::build(monoid, field, Node::Norm))
    }

    /// A function given by finitely many values, zero elsewhere.
    pub fn from_table(
        monoid: &MonoidDescriptor,
        field: Field,
        values: impl IntoIterator<Item = (MonoidElement, Scalar)>,
    ) -> Result<ArithFn> {
        let mut table = HashMap::new();
        for (a, v) in values {
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: v.field().to_string() });
            }
            if !v.is_zero() {
                table.insert(a, v);
            }
        }
        Ok(ArithFn::build(monoid, field, Node::Table(table)))
    }

    /// A function given by an arbitrary rule. The rule must return values in `field`.
    pub fn from_fn(
        monoid: &MonoidDescriptor,
        field: Field,
        name: &str,
        rule: impl Fn(&MonoidElement) -> Scalar + Send + Sync + 'static,
    ) -> ArithFn {
        ArithFn::build(monoid, field, Node::Rule(name.to_string(), Arc::new(rule)))
    }

    /// The totally multiplicative function with the given prime values;
    /// primes not listed take `default`.
    pub fn totally_multiplicative(
        monoid: &MonoidDescriptor,
        field: Field,
        values: BTreeMap<PrimeIndex, Scalar>,
        default: Scalar,
    ) -> Result<ArithFn> {
        for v in values.values().chain(std::iter::once(&default)) {
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: v.field().to_string() });
            }
        }
        Ok(ArithFn::build(monoid, field, Node::TotallyMult { values, default }))
    }

    /// The multiplicative function with the given prime-power values
    /// `f(p^k)`; prime powers not listed take `default`.
    pub fn multiplicative(
        monoid: &MonoidDescriptor,
        field: Field,
        values: HashMap<(PrimeIndex, u32), Scalar>,
        default: Scalar,
    ) -> Result<ArithFn> {
        for v in values.values().chain(std::iter::once(&default)) {
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: v.field().to_string() });
            }
        }
        Ok(ArithFn::build(monoid, field, Node::Multiplicative { values, default }))
    }

    /// `pi_p`: one at `p`, zero elsewhere.
    pub fn prime_indicator(monoid: &MonoidDescriptor, field: Field, p: PrimeIndex) -> ArithFn {
        ArithFn::build(monoid, field, Node::Table(HashMap::from([(MonoidElement::prime(p), field.one())])))
    }

    /// Prime values and default of a totally multiplicative literal.
    pub fn prime_values(&self) -> Option<(&BTreeMap<PrimeIndex, Scalar>, &Scalar)> {
        match &self.0.node {
            Node::TotallyMult { values, default } => Some((values, default)),
            _ => None,
        }
    }

    fn check_compatible(&self, other: &ArithFn) -> Result<()> {
        if self.monoid() != other.monoid() {
            return Err(Error::MonoidMismatch { left: self.monoid().to_string(), right: other.monoid().to_string() });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field().to_string(), right: other.field().to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &ArithFn) -> Result<ArithFn> {
        self.check_compatible(other)?;
        Ok(ArithFn::build(self.monoid(), self.field(), Node::Sum(self.clone(), other.clone())))
    }

    pub fn scale(&self, alpha: &Scalar) -> Result<ArithFn> {
        if alpha.field() != self.field() {
            return Err(Error::FieldMismatch { left: self.field().to_string(), right: alpha.field().to_string() });
        }
        Ok(ArithFn::build(self.monoid(), self.field(), Node::Scale(alpha.clone(), self.clone())))
    }

    pub fn neg(&self) -> ArithFn {
        self.scale(&self.field().one().neg()).expect("same field")
    }

    pub fn sub(&self, other: &ArithFn) -> Result<ArithFn> {
        self.add(&other.neg())
    }

    /// The Dirichlet product `(f * g)(a) = sum_{d | a} f(d) g(a/d)`.
    pub fn convolve(&self, other: &ArithFn) -> Result<ArithFn> {
        self.check_compatible(other)?;
        Ok(ArithFn::build(self.monoid(), self.field(), Node::Convolve(self.clone(), other.clone())))
    }

    /// `f^{*n}`, with `f^0 = e`.
    pub fn pow(&self, n: u32) -> ArithFn {
        let mut acc = ArithFn::identity(self.monoid(), self.field());
        for _ in 0..n {
            acc = acc.convolve(self).expect("same monoid");
        }
        acc
    }

    /// The convolution inverse; `f` is a unit exactly when `f(1) != 0`.
    pub fn dirichlet_inverse(&self) -> Result<ArithFn> {
        let f1 = self.eval(&MonoidElement::one());
        let inv = f1.inverse().map_err(|_| Error::NotAUnit)?;
        Ok(ArithFn::build(self.monoid(), self.field(), Node::Inverse(self.clone(), inv)))
    }

    /// `g * mu`; recovers `f` from `g = f * u`.
    pub fn moebius_invert(&self) -> ArithFn {
        self.convolve(&ArithFn::moebius(self.monoid(), self.field())).expect("same monoid")
    }

    /// `g o phi`, a function on `source` for `g` on the target of `phi`.
    pub fn pullback(&self, source: &MonoidDescriptor, map: MonoidMap) -> Result<ArithFn> {
        if let MonoidMap::Extension(hom) = &map {
            let expected = MonoidDescriptor::ideals(hom.target().clone());
            if &expected != self.monoid() {
                return Err(Error::MonoidMismatch { left: expected.to_string(), right: self.monoid().to_string() });
            }
        }
        Ok(ArithFn::build(source, self.field(), Node::Pullback(map, self.clone())))
    }

    /// Evaluate, first checking that `a` lies in this function's monoid.
    pub fn try_eval(&self, a: &MonoidElement) -> Result<Scalar> {
        if !self.monoid().contains(a) {
            return Err(Error::Parse(format!("{a} is not an element of {}", self.monoid())));
        }
        Ok(self.eval(a))
    }

    /// Evaluate at an ideal, where `None` stands for the zero ideal and
    /// every function takes the value zero there.
    pub fn eval_ideal(&self, a: Option<&MonoidElement>) -> Scalar {
        match a {
            Some(a) => self.eval(a),
            None => self.field().zero(),
        }
    }

    /// Exact value `f(a)`. `a` must belong to the function's monoid.
    pub fn eval(&self, a: &MonoidElement) -> Scalar {
        if !self.is_composite() {
            return self.compute(a);
        }
        if let Some(v) = self.0.memo.read().expect("memo lock").get(a) {
            return v.clone();
        }
        let v = self.compute(a);
        self.0.memo.write().expect("memo lock").insert(a.clone(), v.clone());
        v
    }

    /// Nodes whose values are worth caching.
    fn is_composite(&self) -> bool {
        matches!(
            self.0.node,
            Node::Rule(..)
                | Node::Sum(..)
                | Node::Scale(..)
                | Node::Convolve(..)
                | Node::Inverse(..)
                | Node::Pullback(..)
        )
    }

    fn norm_of(&self, p: &PrimeIndex) -> BigUint {
        p.norm().expect("norm checked at construction")
    }

    fn embed(&self, n: BigUint) -> Scalar {
        self.field().from_bigint(&BigInt::from(n))
    }

    fn compute(&self, a: &MonoidElement) -> Scalar {
        let k = self.field();
        match &self.0.node {
            Node::Table(t) => t.get(a).cloned().unwrap_or_else(|| k.zero()),
            Node::Rule(_, rule) => rule(a),
            Node::Identity => {
                if a.is_one() {
                    k.one()
                } else {
                    k.zero()
                }
            }
            Node::Unit => k.one(),
            Node::Moebius => {
                if a.exponents().values().any(|&e| e > 1) {
                    k.zero()
                } else if a.lambda().is_multiple_of(2) {
                    k.one()
                } else {
                    k.one().neg()
                }
            }
            Node::TotallyMult { values, default } => {
                a.exponents().iter().fold(k.one(), |acc, (p, e)| acc * values.get(p).unwrap_or(default).pow(*e))
            }
            Node::Multiplicative { values, default } => a
                .exponents()
                .iter()
                .fold(k.one(), |acc, (p, e)| acc * values.get(&(p.clone(), *e)).unwrap_or(default).clone()),
            Node::DivisorCount => k.from_i64(a.exponents().values().map(|&e| e as i64 + 1).product::<i64>()),
            Node::Sigma(s) => {
                let mut acc = BigUint::one();
                for (p, e) in a.exponents() {
                    let q = self.norm_of(p).pow(*s);
                    let mut term = BigUint::one();
                    let mut sum = BigUint::one();
                    for _ in 0..*e {
                        term *= &q;
                        sum += &term;
                    }
                    acc *= sum;
                }
                self.embed(acc)
            }
            Node::EulerPhi => {
                let mut acc = BigUint::one();
                for (p, e) in a.exponents() {
                    let n = self.norm_of(p);
                    acc *= n.pow(*e) - n.pow(*e - 1);
                }
                self.embed(acc)
            }
            Node::Norm => {
                let mut acc = BigUint::one();
                for (p, e) in a.exponents() {
                    acc *= self.norm_of(p).pow(*e);
                }
                self.embed(acc)
            }
            Node::Sum(f, g) => f.eval(a) + g.eval(a),
            Node::Scale(c, f) => c * &f.eval(a),
            Node::Convolve(f, g) => {
                let mut acc = k.zero();
                for (d, rest) in a.divisor_pairs() {
                    let x = f.eval(&d);
                    if !x.is_zero() {
                        let y = g.eval(&rest);
                        if !y.is_zero() {
                            acc = acc + x * y;
                        }
                    }
                }
                acc
            }
            Node::Inverse(f, inv_f1) => {
                if a.is_one() {
                    return inv_f1.clone();
                }
                let mut sum = k.zero();
                for (d, rest) in a.divisor_pairs().into_iter().filter(|(_, r)| !r.is_one()) {
                    let x = f.eval(&rest);
                    if !x.is_zero() {
                        sum = sum + self.eval(&d) * x;
                    }
                }
                -(inv_f1 * &sum)
            }
            Node::Pullback(map, g) => g.eval(&map.apply(a).expect("element lies in the source monoid")),
        }
    }

    /// First pair `(a, b)` of coprime elements with `ab` in `U(window, depth)`
    /// and `f(ab) != f(a) f(b)`; `(1, 1)` when `f(1) != 1`.
    pub fn multiplicativity_witness(
        &self,
        window: &[PrimeIndex],
        depth: u32,
    ) -> Option<(MonoidElement, MonoidElement)> {
        self.witness(window, depth, true)
    }

    /// Windowed check: refutes multiplicativity when it fails on
    /// `U(window, depth)`, but a pass is not a proof for infinite `M`.
    pub fn is_multiplicative(&self, window: &[PrimeIndex], depth: u32) -> bool {
        self.multiplicativity_witness(window, depth).is_none()
    }

    pub fn total_multiplicativity_witness(
        &self,
        window: &[PrimeIndex],
        depth: u32,
    ) -> Option<(MonoidElement, MonoidElement)> {
        self.witness(window, depth, false)
    }

    pub fn is_totally_multiplicative(&self, window: &[PrimeIndex], depth: u32) -> bool {
        self.total_multiplicativity_witness(window, depth).is_none()
    }

    fn witness(&self, window: &[PrimeIndex], depth: u32, coprime_only: bool) -> Option<(MonoidElement, MonoidElement)> {
        let one = MonoidElement::one();
        if !self.eval(&one).is_one() {
            return Some((one.clone(), one));
        }
        for c in enumerate_universe(window, depth) {
            for a in c.divisors() {
                let b = a.quotient(&c).expect("a divides c");
                if coprime_only && !a.coprime(&b) {
                    continue;
                }
                if self.eval(&c) != self.eval(&a) * self.eval(&b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Values on `U(window, depth)`, in universe order.
    pub fn values_on(&self, window: &[PrimeIndex], depth: u32) -> Vec<(MonoidElement, Scalar)> {
        enumerate_universe(window, depth)
            .into_iter()
            .map(|a| {
                let v = self.eval(&a);
                (a, v)
            })
            .collect()
    }

    /// First element of `universe` where `self` and `other` differ.
    pub fn first_difference<'a>(&self, other: &ArithFn, universe: &'a [MonoidElement]) -> Option<&'a MonoidElement> {
        universe.iter().find(|a| self.eval(a) != other.eval(a))
    }

    pub fn agrees_on(&self, other: &ArithFn, universe: &[MonoidElement]) -> bool {
        self.first_difference(other, universe).is_none()
    }
}

impl fmt::Display for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.node {
            Node::Table(t) => write!(f, "table[{}]", t.len()),
            Node::Rule(name, _) => write!(f, "{name}"),
            Node::Identity => write!(f, "e"),
            Node::Unit => write!(f, "u"),
            Node::Moebius => write!(f, "mu"),
            Node::TotallyMult { values, default } => {
                write!(f, "tm{{")?;
                for (p, v) in values {
                    write!(f, "{p}:{v},")?;
                }
                write!(f, "*:{default}}}")
            }
            Node::Multiplicative { values, .. } => write!(f, "mult[{}]", values.len()),
            Node::DivisorCount => write!(f, "d"),
            Node::Sigma(k) => write!(f, "sigma_{k}"),
            Node::EulerPhi => write!(f, "phi"),
            Node::Norm => write!(f, "norm"),
            Node::Sum(a, b) => write!(f, "add({a},{b})"),
            Node::Scale(c, a) => write!(f, "scale({c},{a})"),
            Node::Convolve(a, b) => write!(f, "conv({a},{b})"),
            Node::Inverse(a, _) => write!(f, "inv({a})"),
            Node::Pullback(_, a) => write!(f, "pullback({a})"),
        }
    }
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArithFn({} on {} over {})", self, self.monoid(), self.field())
    }
}
