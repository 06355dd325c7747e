//! Seeded verification suites, one check per acceptance criterion.
//!
//! Each criterion returns a [`CriterionResult`]; failures carry the first
//! counterexamples found. The same seed always yields the same report.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coefficients::Field;
use crate::dirichlet::{ArithFn, MonoidMap};
use crate::domains::{DomainDescriptor, DomainElement, DomainHom};
use crate::error::{Error, Result};
use crate::monoid::{enumerate_universe, MonoidDescriptor, MonoidElement, PrimeIndex};
use crate::random::Sampler;
use crate::series::{partial_sum, phi};
use crate::space::{
    induced_morphism, open_immersion_check, spec_embedding, witness_check_sqrtm5, zero_contraction_check, FiniteSpace,
    LocalizationKind, PointSet,
};
use crate::valuation::{cauchy_limit, certified_valuation, norm_n, Valuation};

/// Counterexamples kept per criterion.
const MAX_DUMP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub counterexamples: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Dirichlet,
    Series,
    Valuation,
    Space,
    SqrtMinus5,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "dirichlet" => Suite::Dirichlet,
            "series" => Suite::Series,
            "valuation" => Suite::Valuation,
            "space" => Suite::Space,
            "sqrt-5" => Suite::SqrtMinus5,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }

    pub fn criteria(self) -> Vec<u32> {
        match self {
            Suite::Dirichlet => vec![1, 2, 3, 4, 5],
            Suite::Series => vec![6, 8],
            Suite::Valuation => vec![7],
            Suite::Space => vec![9, 10, 11, 13],
            Suite::SqrtMinus5 => vec![12],
            Suite::All => (1..=13).collect(),
        }
    }
}

/// Collects pass/fail checks for one criterion.
struct Tally {
    checks: usize,
    failures: Vec<String>,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), failed: false }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed = true;
            if self.failures.len() < MAX_DUMP {
                self.failures.push(what());
            }
        }
    }
}

fn run_timed(
    id: u32,
    name: &str,
    limit: Option<Duration>,
    body: impl FnOnce(&mut Tally) -> Result<()>,
) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    if let Err(e) = body(&mut t) {
        t.check(false, || format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        t.check(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"));
    }
    CriterionResult { id, name: name.into(), passed: !t.failed, checks: t.checks, counterexamples: t.failures, elapsed }
}

fn rationals(primes: &[u64]) -> Vec<PrimeIndex> {
    primes.iter().map(|&p| PrimeIndex::Rational(p)).collect()
}

fn first_diff(f: &ArithFn, g: &ArithFn, universe: &[MonoidElement]) -> Option<String> {
    f.first_difference(g, universe).map(|a| format!("at {a}: {} vs {}", f.eval(a), g.eval(a)))
}

pub fn run_criterion(id: u32, seed: u64) -> CriterionResult {
    let q = Field::Rationals;
    let z = MonoidDescriptor::positive_integers();
    match id {
        1 => run_timed(1, "ring axioms", Some(Duration::from_secs(10)), |t| {
            let mut s = Sampler::new(seed, q);
            let w = rationals(&[2, 3, 5]);
            let u = enumerate_universe(&w, 5);
            let e = ArithFn::identity(&z, q);
            for i in 0..200 {
                let (f, g, h) = (s.table(&z, &w, 3), s.table(&z, &w, 3), s.table(&z, &w, 3));
                let (fg, fh, gh) = (f.convolve(&g)?, f.convolve(&h)?, g.convolve(&h)?);
                let laws = [
                    ("f*g = g*f", fg.clone(), g.convolve(&f)?),
                    ("f*(g*h) = (f*g)*h", f.convolve(&gh)?, fg.convolve(&h)?),
                    ("f*e = f", f.convolve(&e)?, f.clone()),
                    ("e*f = f", e.convolve(&f)?, f.clone()),
                    ("f*(g+h) = f*g + f*h", f.convolve(&g.add(&h)?)?, fg.add(&fh)?),
                    ("(f+g)*h = f*h + g*h", f.add(&g)?.convolve(&h)?, fh.add(&gh)?),
                ];
                for (name, l, r) in laws {
                    let d = first_diff(&l, &r, &u);
                    t.check(d.is_none(), || format!("triple {i}: {name} fails {}", d.unwrap_or_default()));
                }
            }
            Ok(())
        }),
        2 => run_timed(2, "units and inverses", None, |t| {
            let mut s = Sampler::new(seed, q);
            let w = rationals(&[2, 3]);
            let u = enumerate_universe(&w, 6);
            let e = ArithFn::identity(&z, q);
            for i in 0..100 {
                let f = s.unit(&z, &w, 6);
                let prod = f.convolve(&f.dirichlet_inverse()?)?;
                let d = first_diff(&prod, &e, &u);
                t.check(d.is_none(), || format!("sample {i}: f * f^-1 != e {}", d.unwrap_or_default()));
                let nonunit = f.sub(&e.scale(&f.eval(&MonoidElement::one()))?)?;
                t.check(matches!(nonunit.dirichlet_inverse(), Err(Error::NotAUnit)), || {
                    format!("sample {i}: f with f(1) = 0 was inverted")
                });
            }
            Ok(())
        }),
        3 => run_timed(3, "Moebius inversion", None, |t| {
            let mut s = Sampler::new(seed, q);
            let (mu, unit, e) = (ArithFn::moebius(&z, q), ArithFn::unit(&z, q), ArithFn::identity(&z, q));
            let big = enumerate_universe(&rationals(&[2, 3, 5, 7]), 5);
            let d = first_diff(&mu.convolve(&unit)?, &e, &big);
            t.check(d.is_none(), || format!("mu * u != e {}", d.unwrap_or_default()));
            let w = rationals(&[2, 3, 5]);
            let u = enumerate_universe(&w, 4);
            for i in 0..50 {
                let f = s.table(&z, &w, 4);
                let back = f.convolve(&unit)?.convolve(&mu)?;
                let d = first_diff(&back, &f, &u);
                t.check(d.is_none(), || format!("sample {i}: (f*u)*mu != f {}", d.unwrap_or_default()));
            }
            Ok(())
        }),
        4 => run_timed(4, "multiplicativity preserved", None, |t| {
            let mut s = Sampler::new(seed, q);
            let w = rationals(&[2, 3, 5]);
            for i in 0..50 {
                let f = s.multiplicative(&z, &w, 4);
                let g = s.multiplicative(&z, &w, 4);
                let fg = f.convolve(&g)?;
                let w1 = fg.multiplicativity_witness(&w, 4);
                t.check(w1.is_none(), || format!("pair {i}: f*g not multiplicative at {w1:?}"));
                let inv = f.dirichlet_inverse()?;
                let w2 = inv.multiplicativity_witness(&w, 4);
                t.check(w2.is_none(), || format!("pair {i}: f^-1 not multiplicative at {w2:?}"));
            }
            Ok(())
        }),
        5 => run_timed(5, "torsion identity", None, |t| {
            let mut s = Sampler::new(seed, q);
            let w = rationals(&[2, 3, 5]);
            for i in 0..20 {
                let mut values = std::collections::HashMap::new();
                let mut levels = Vec::new();
                for p in &w {
                    let l = 1 + s.index(3) as u32;
                    for k in 1..=4 {
                        let v = match k.cmp(&l) {
                            std::cmp::Ordering::Less => q.zero(),
                            std::cmp::Ordering::Equal => s.nonzero_scalar(),
                            std::cmp::Ordering::Greater => s.scalar(),
                        };
                        values.insert((p.clone(), k), v);
                    }
                    levels.push((p.clone(), l));
                }
                let f = ArithFn::multiplicative(&z, q, values, q.zero())?;
                for (p, l) in &levels {
                    let a = MonoidElement::prime_power(p.clone(), *l);
                    for n in 1..=5u32 {
                        let lhs = f.pow(n).eval(&a);
                        let rhs = q.from_i64(n as i64) * f.eval(&a);
                        t.check(lhs == rhs, || format!("sample {i}: f^{n}({a}) = {lhs}, n f({a}) = {rhs}"));
                    }
                }
            }
            Ok(())
        }),
        6 => run_timed(6, "Phi isomorphism", None, |t| {
            let mut s = Sampler::new(seed, q);
            let w = rationals(&[2, 3, 5]);
            let u = enumerate_universe(&w, 4);
            for i in 0..50 {
                let f = s.table(&z, &w, 4);
                let g = s.table(&z, &w, 4);
                let lhs = phi(&f.convolve(&g)?, &w, 4);
                let rhs = phi(&f, &w, 4).mul(&phi(&g, &w, 4))?;
                t.check(lhs == rhs, || format!("pair {i}: Phi(f*g) != Phi(f)Phi(g)"));
                let back = phi(&f, &w, 4).phi_inverse(&z)?;
                let d = first_diff(&back, &f, &u);
                t.check(d.is_none(), || format!("pair {i}: Phi^-1(Phi(f)) != f {}", d.unwrap_or_default()));
                let series = phi(&g, &w, 4);
                t.check(phi(&series.phi_inverse(&z)?, &w, 4) == series, || format!("pair {i}: Phi(Phi^-1(F)) != F"));
            }
            let m = MonoidDescriptor::free(3);
            let fw = m.finite_primes().expect("finite");
            let sigma: BTreeMap<PrimeIndex, PrimeIndex> =
                (0..3).map(|i| (fw[i].clone(), fw[(i + 1) % 3].clone())).collect();
            let inverse: BTreeMap<PrimeIndex, PrimeIndex> = sigma.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
            for i in 0..50 {
                let g = s.table(&m, &fw, 4);
                let pulled = g.pullback(&m, MonoidMap::PrimeMap(sigma.clone()))?;
                let lhs = phi(&g, &fw, 4).substitute(&inverse)?;
                t.check(lhs == phi(&pulled, &fw, 4), || format!("sample {i}: functorial square fails"));
            }
            Ok(())
        }),
        7 => run_timed(7, "valuation and metric", None, |t| {
            let mut s = Sampler::new(seed, q);
            let m = MonoidDescriptor::free(3);
            let w = m.finite_primes().expect("finite");
            const D: u32 = 8;
            let sample = |s: &mut Sampler| -> Result<ArithFn> {
                let mut f = s.table(&m, &w, 2);
                for _ in 0..s.index(3) {
                    let p = w[s.index(w.len())].clone();
                    f = f.convolve(&ArithFn::prime_indicator(&m, q, p))?;
                }
                Ok(f)
            };
            for i in 0..50 {
                let f = sample(&mut s)?;
                let g = sample(&mut s)?;
                let (vf, vg) = (certified_valuation(&f, D)?, certified_valuation(&g, D)?);
                let fg = f.convolve(&g)?;
                let vfg = certified_valuation(&fg, D)?;
                t.check(vfg == vf.plus(vg), || format!("pair {i}: v(f*g) = {vfg}, v(f) + v(g) = {}", vf.plus(vg)));
                let (nf, ng, nfg) = (norm_n(&f, D)?, norm_n(&g, D)?, norm_n(&fg, D)?);
                t.check(nfg == &nf * &ng, || format!("pair {i}: N(f*g) = {nfg}, N(f)N(g) = {}", &nf * &ng));
                let vsum = certified_valuation(&f.add(&g)?, D)?;
                t.check(vsum >= vf.min(vg), || format!("pair {i}: v(f+g) = {vsum} < min({vf}, {vg})"));
                let wf = phi(&f, &w, D).w_valuation();
                t.check(wf == vf, || format!("sample {i}: w(Phi(f)) = {wf}, v(f) = {vf}"));
            }
            Ok(())
        }),
        8 => run_timed(8, "partial sums and limits", None, |t| {
            let mut s = Sampler::new(seed, q);
            let m = MonoidDescriptor::free(2);
            let w = m.finite_primes().expect("finite");
            const DEPTH: u32 = 4;
            let u = enumerate_universe(&w, DEPTH);
            let level_end = |k: u32| u.iter().filter(|a| a.lambda() <= k).count();
            for i in 0..20 {
                let f = s.table(&m, &w, DEPTH);
                for k in 0..=DEPTH {
                    let tk = level_end(k);
                    let ft = partial_sum(&f, &w, tk);
                    let done: Vec<MonoidElement> = u.iter().filter(|a| a.lambda() <= k).cloned().collect();
                    let d = first_diff(&ft, &f, &done);
                    t.check(d.is_none(), || {
                        format!("sample {i}: f_{tk} differs from f below level {k} {}", d.unwrap_or_default())
                    });
                    let v = certified_valuation(&f.sub(&ft)?, DEPTH + 1)?;
                    t.check(v > Valuation::Finite(k), || format!("sample {i}: v(f - f_{tk}) = {v}, not above {k}"));
                }
                let limit = cauchy_limit(|n| partial_sum(&f, &w, n), level_end, &w, DEPTH, 2)?;
                let d = first_diff(&limit, &f, &u);
                t.check(d.is_none(), || format!("sample {i}: limit differs from f {}", d.unwrap_or_default()));
            }
            Ok(())
        }),
        9 => run_timed(9, "finite space structure", Some(Duration::from_secs(30)), |t| {
            for primes in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
                let x = FiniteSpace::new(&DomainDescriptor::z_localized(primes)?)?;
                let n = primes.len();
                t.check(x.point_count() == 1 << n, || format!("n={n}: {} points", x.point_count()));
                let dim = x.dimension()?;
                t.check(dim == n, || format!("n={n}: dimension {dim}"));
                let chain = x.witness_chain()?;
                t.check(chain.len() == n + 1, || format!("n={n}: witness chain of length {}", chain.len()));
                let census = x.closed_set_census()?;
                t.check(census.agree, || {
                    format!(
                        "n={n}: {} closed sets via generators, {} up-sets",
                        census.via_generators, census.via_up_sets
                    )
                });
                let generic = x.generic_points(x.all_points());
                t.check(generic == vec![0], || format!("n={n}: generic points {generic:?}"));
                let closed = x.closed_points();
                t.check(closed == vec![x.full_mask()], || format!("n={n}: closed points {closed:?}"));
                t.check(x.closed_point_check(), || format!("n={n}: [e] is not closed"));
                for a in 0..x.point_count() {
                    for b in 0..x.point_count() {
                        let expected = a & b == a;
                        t.check(x.specializes(a, b) == expected, || {
                            format!("n={n}: specialization {} -> {} is not reverse inclusion", x.label(a), x.label(b))
                        });
                    }
                }
                for c in x.irreducible_closed_sets()? {
                    t.check(x.ideal_is_prime(c), || format!("n={n}: I of an irreducible set is not prime"));
                }
                let report = x.spectral_report()?;
                t.check(report.t0 && report.spectral, || format!("n={n}: {:?}", report.failures));
            }
            Ok(())
        }),
        10 => run_timed(10, "sheaf structure", None, |t| {
            let x = FiniteSpace::new(&DomainDescriptor::z_localized(&[2, 3, 5])?)?;
            for zmask in 0..x.point_count() {
                let kind = x.stalk(zmask).kind;
                let ok = match zmask.count_ones() {
                    _ if zmask == x.full_mask() => kind == LocalizationKind::WholeRing,
                    0 => kind == LocalizationKind::FractionField,
                    1 => matches!(kind, LocalizationKind::LocalRing(_)),
                    _ => matches!(kind, LocalizationKind::SemiLocalPID(_)),
                };
                t.check(ok, || format!("stalk at {} is {kind}", x.label(zmask)));
            }
            let pool: Vec<DomainElement> =
                [1, 2, 3, 4, 5, 6, 7, 10, 15, 30].into_iter().map(DomainElement::Int).collect();
            for a in &pool {
                let sections = x.sections(a)?;
                let inverted: Vec<PrimeIndex> =
                    x.max().iter().filter(|p| !sections.surviving_max.contains(p)).cloned().collect();
                let support: Vec<PrimeIndex> = x.domain().factor_principal(a)?.support().cloned().collect();
                t.check(inverted == support, || format!("O(D_1({a})) inverts {inverted:?}"));
                for b in &pool {
                    let lhs = x.basic_open_of(a)?.intersection(x.basic_open_of(b)?);
                    let rhs = x.basic_open_of(&a.mul(b)?)?;
                    t.check(lhs == rhs, || format!("D_1({a}) n D_1({b}) != D_1({a}{b})"));
                }
            }
            for support in 0..x.point_count() {
                let a = x.element_with_support(support).clone();
                let r = open_immersion_check(&x, &a)?;
                t.check(r.passed, || format!("open immersion at {a}: {:?}", r.failures));
            }
            Ok(())
        }),
        11 => run_timed(11, "morphisms", None, |t| {
            for d in [-5, -1] {
                let hom = DomainHom::new(DomainDescriptor::integers(), DomainDescriptor::quadratic(d)?)?;
                let r = zero_contraction_check(&hom, 50, 20, seed)?;
                t.check(r.passed(), || format!("{hom}: {:?}", r.mismatches));
            }
            let cases = [
                ("zloc:5", "qsqrtloc:-1:P5+,P5-"),
                ("zloc:5", "qsqrtloc:-1:P5+"),
                ("zloc:2,3", "qsqrtloc:-5:P2,P3+,P3-"),
                ("zloc:3", "qsqrtloc:-1:P3"),
                ("zloc:2,3", "zloc:2,3"),
                ("zloc:2,3,5", "zloc:3"),
            ];
            for (src, tgt) in cases {
                let hom = DomainHom::new(src.parse()?, tgt.parse()?)?;
                let r = induced_morphism(&hom, seed)?;
                t.check(r.passed(), || format!("{hom}: {:?}", r.failures));
            }
            let bad = DomainHom::new("zloc:5".parse()?, "qsqrtloc:-1:P13+".parse()?);
            t.check(matches!(bad, Err(Error::NotQuasiIntegral(_))), || "non-quasi-integral map accepted".into());
            Ok(())
        }),
        12 => run_timed(12, "sqrt(-5) example", Some(Duration::from_secs(5)), |t| {
            let r = witness_check_sqrtm5()?;
            for step in r.steps {
                t.check(step.passed, || format!("{}: {}", step.name, step.detail));
            }
            Ok(())
        }),
        13 => run_timed(13, "Spec embedding", None, |t| {
            for primes in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
                let x = FiniteSpace::new(&DomainDescriptor::z_localized(primes)?)?;
                let e = spec_embedding(&x)?;
                t.check(e.passed(), || format!("n={}: {:?}", primes.len(), e.failures));
                let image = e.table.iter().fold(PointSet::empty(), |mut acc, (_, z)| {
                    acc.insert(*z);
                    acc
                });
                t.check(image.len() as usize == primes.len() + 1, || format!("image has {} points", image.len()));
            }
            Ok(())
        }),
        _ => run_timed(id, "unknown criterion", None, |_| Err(Error::Parse(format!("no criterion {id}")))),
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<CriterionResult> {
    suite.criteria().into_iter().map(|id| run_criterion(id, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_every_criterion() {
        let mut ids: Vec<u32> = ["dirichlet", "series", "valuation", "space", "sqrt-5"]
            .iter()
            .flat_map(|s| Suite::parse(s).unwrap().criteria())
            .collect();
        ids.sort();
        assert_eq!(ids, Suite::All.criteria());
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_criterion(5, 11)).unwrap();
        let b = serde_json::to_string(&run_criterion(5, 11)).unwrap();
        assert_eq!(a, b);
        assert!(run_criterion(99, 0).counterexamples[0].contains("no criterion"));
    }
}
