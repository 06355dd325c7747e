//! The morphism `M_1(B) -> M_1(A)` induced by `phi: A -> B`, sending `[g]`
//! to `[g o phi*]`. On zero sets it is contraction: `Z(phi*(g))` is the set
//! of `phi^{-1}(q)` for `q` in `Z(g)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::finite::FiniteSpace;
use super::zero_set;
use crate::coefficients::{Field, Scalar};
use crate::dirichlet::{ArithFn, MonoidMap};
use crate::domains::{DomainDescriptor, DomainElement, DomainHom};
use crate::error::{Error, Result};
use crate::monoid::{MonoidDescriptor, MonoidElement, PrimeIndex};
use crate::random::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub source: String,
    pub target: String,
    /// `(point of M_1(B), image in M_1(A))`, labelled by zero sets.
    pub point_map: Vec<(String, String)>,
    pub basis_preimage: bool,
    pub stalk_proper: bool,
    pub zero_sets_contract: bool,
    pub sections_agree: bool,
    pub failures: Vec<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.basis_preimage && self.stalk_proper && self.zero_sets_contract && self.sections_agree
    }
}

/// A totally multiplicative function on the ideals of `domain` vanishing
/// exactly on `zeros` among the primes of `pool`, and equal to one elsewhere.
fn representative(
    domain: &DomainDescriptor,
    pool: &[PrimeIndex],
    zeros: &BTreeSet<PrimeIndex>,
    sampler: &mut Sampler,
) -> Result<ArithFn> {
    let field = sampler.field();
    let values: BTreeMap<PrimeIndex, Scalar> = pool
        .iter()
        .map(|p| (p.clone(), if zeros.contains(p) { field.zero() } else { sampler.nonzero_scalar() }))
        .collect();
    ArithFn::totally_multiplicative(&MonoidDescriptor::ideals(domain.clone()), field, values, field.one())
}

/// `f(x)` on a domain element through the factorization of `(x)`.
fn value_at(f: &ArithFn, domain: &DomainDescriptor, x: &DomainElement) -> Result<Scalar> {
    Ok(f.eval(&domain.factor_principal(x)?))
}

/// The section `x / a^n` evaluated at a point representative.
fn section_value(
    f: &ArithFn,
    domain: &DomainDescriptor,
    x: &DomainElement,
    a: &DomainElement,
    n: u32,
) -> Result<Scalar> {
    let den = value_at(f, domain, a)?.pow(n);
    value_at(f, domain, x)?.checked_div(&den)
}

/// Build and check the induced map for a homomorphism of semi-local domains.
///
/// Checked: preimages of basic opens, properness of the extended maximal
/// ideals in every stalk, contraction of zero sets, and that every section
/// `x / a^n` over `D_1(a)` pulls back to `phi(x) / phi(a)^n`; with `a = 1`
/// the last one is `Gamma(M_1(phi)) = phi`.
pub fn induced_morphism(hom: &DomainHom, seed: u64) -> Result<MorphismReport> {
    let y = FiniteSpace::new(hom.source())?;
    let x = FiniteSpace::new(hom.target())?;
    let mut sampler = Sampler::new(seed, Field::Rationals);
    let mut failures = Vec::new();

    let mut map = Vec::new();
    for z in 0..x.point_count() {
        let contracted: BTreeSet<PrimeIndex> =
            x.primes_of(z).iter().map(|q| hom.contract_prime(q)).collect::<Result<_>>()?;
        map.push(y.mask_of(&contracted)?);
    }

    let mut basis_preimage = true;
    for t in 0..y.point_count() {
        let a = y.element_with_support(t);
        let open = y.basic_open(t);
        let pre = (0..x.point_count()).filter(|&z| open.contains(map[z as usize])).fold(0u128, |acc, z| acc | 1 << z);
        if pre != x.basic_open_of(&hom.apply(a)?)?.0 {
            basis_preimage = false;
            failures.push(format!("preimage of D_1({a}) is not D_1(phi({a}))"));
        }
    }

    let mut stalk_proper = true;
    for z in 0..x.point_count() {
        let kept: BTreeSet<PrimeIndex> = x.primes_of(z).into_iter().collect();
        for p in y.primes_of(map[z as usize]) {
            if !hom.primes_over(&p)?.iter().any(|q| kept.contains(q)) {
                stalk_proper = false;
                failures.push(format!("{p} generates the unit ideal in the stalk at {}", x.label(z)));
            }
        }
    }

    let source_monoid = MonoidDescriptor::ideals(hom.source().clone());
    let x_pool = x.max().to_vec();
    let elements: Vec<&DomainElement> = (0..y.point_count()).map(|t| y.element_with_support(t)).collect();
    let mut zero_sets_contract = true;
    let mut sections_agree = true;
    for z in 0..x.point_count() {
        let zeros: BTreeSet<PrimeIndex> = x.primes_of(z).into_iter().collect();
        let g = representative(hom.target(), &x_pool, &zeros, &mut sampler)?;
        let pulled = g.pullback(&source_monoid, MonoidMap::Extension(hom.clone()))?;
        let pulled_tm = ArithFn::totally_multiplicative(
            &source_monoid,
            pulled.field(),
            y.max().iter().map(|p| (p.clone(), pulled.eval(&MonoidElement::prime(p.clone())))).collect(),
            pulled.field().one(),
        )?;
        if y.mask_of_point(&zero_set(&pulled_tm)?)? != map[z as usize] {
            zero_sets_contract = false;
            failures.push(format!("zero set of the pullback at {} is not the contraction", x.label(z)));
        }
        for a in &elements {
            let phi_a = hom.apply(a)?;
            if !x.basic_open_of(&phi_a)?.contains(z) {
                continue;
            }
            for num in &elements {
                for n in 0..=2 {
                    let upstairs = section_value(&g, hom.target(), &hom.apply(num)?, &phi_a, n)?;
                    let downstairs = section_value(&pulled, hom.source(), num, a, n)?;
                    if upstairs != downstairs {
                        sections_agree = false;
                        failures.push(format!(
                            "section {num}/{a}^{n} at {}: {upstairs} upstairs, {downstairs} after pullback",
                            x.label(z)
                        ));
                    }
                }
            }
        }
    }

    Ok(MorphismReport {
        source: hom.source().to_string(),
        target: hom.target().to_string(),
        point_map: (0..x.point_count()).map(|z| (x.label(z), y.label(map[z as usize]))).collect(),
        basis_preimage,
        stalk_proper,
        zero_sets_contract,
        sections_agree,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroContractionReport {
    pub hom: String,
    pub norm_bound: u64,
    pub samples: usize,
    pub target_primes: usize,
    pub mismatches: Vec<String>,
}

impl ZeroContractionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `Z(phi*(g)) = { phi^{-1}(q) : q in Z(g) }` for random `g` whose zeros
/// are among the target primes of norm at most `bound`, with the left side
/// read off by evaluating `phi*(g)` at the source primes below `bound`.
pub fn zero_contraction_check(hom: &DomainHom, bound: u64, samples: usize, seed: u64) -> Result<ZeroContractionReport> {
    if hom.source().is_semi_local() || hom.target().is_semi_local() {
        return Err(Error::Unsupported("use induced_morphism for semi-local domains".into()));
    }
    let mut sampler = Sampler::new(seed, Field::Rationals);
    let pool = hom.target().primes_up_to_norm(bound);
    let source_primes = hom.source().primes_up_to_norm(bound);
    let source_monoid = MonoidDescriptor::ideals(hom.source().clone());
    let mut mismatches = Vec::new();
    for i in 0..samples {
        let zeros: BTreeSet<PrimeIndex> = pool.iter().filter(|_| sampler.index(2) == 0).cloned().collect();
        let g = representative(hom.target(), &pool, &zeros, &mut sampler)?;
        let observed = zero_set(&g)?;
        if observed.zeros != super::PrimeSet::Finite(zeros.clone()) {
            mismatches.push(format!("sample {i}: zero set of g is {observed}"));
        }
        let pulled = g.pullback(&source_monoid, MonoidMap::Extension(hom.clone()))?;
        let found: BTreeSet<PrimeIndex> = source_primes
            .iter()
            .filter(|p| pulled.eval(&MonoidElement::prime((*p).clone())).is_zero())
            .cloned()
            .collect();
        let expected: BTreeSet<PrimeIndex> = zeros.iter().map(|q| hom.contract_prime(q)).collect::<Result<_>>()?;
        if found != expected {
            let show = |s: &BTreeSet<PrimeIndex>| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            mismatches.push(format!(
                "sample {i}: zeros of the pullback {{{}}}, contractions {{{}}}",
                show(&found),
                show(&expected)
            ));
        }
    }
    Ok(ZeroContractionReport {
        hom: hom.to_string(),
        norm_bound: bound,
        samples,
        target_primes: pool.len(),
        mismatches,
    })
}
