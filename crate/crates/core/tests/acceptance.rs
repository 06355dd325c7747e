//! Acceptance criteria 1 to 13.
//!
//! Each criterion runs the library's own verification and then an
//! independent check written here against plain integer arithmetic,
//! brute-force enumeration or hand-derived counts. All value comparisons
//! are exact; the only tolerances are the wall-clock limits below.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dedekind_arith::domains::QuadInt;
use dedekind_arith::monoid::enumerate_universe;
use dedekind_arith::series::{partial_sum, phi};
use dedekind_arith::space::{spec_embedding, witness_check_sqrtm5, LocalizationKind, PrimeSet};
use dedekind_arith::valuation::{certified_valuation, Valuation};
use dedekind_arith::verify::run_criterion;
use dedekind_arith::{
    ArithFn, DomainDescriptor, DomainHom, Field, FiniteSpace, MonoidDescriptor, MonoidElement, PrimeIndex, Scalar,
};

const SEED: u64 = 7;
const LIMIT_RING_AXIOMS: Duration = Duration::from_secs(10);
const LIMIT_FINITE_SPACE: Duration = Duration::from_secs(30);
const LIMIT_SQRT_MINUS_5: Duration = Duration::from_secs(5);

type Q = BigRational;
type Criterion = (u32, &'static str, Option<Duration>, fn(&mut Oracle));

/// Checks collected for one criterion.
#[derive(Default)]
struct Oracle {
    checks: usize,
    failures: Vec<String>,
}

impl Oracle {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn rat(s: &Scalar) -> Q {
    s.as_rational().expect("rational coefficients").clone()
}

fn scalar(v: &Q) -> Scalar {
    Field::Rationals.from_bigint(v.numer()).checked_div(&Field::Rationals.from_bigint(v.denom())).unwrap()
}

/// `U(window, depth)` as integers, computed by nested loops.
fn integer_universe(primes: &[u64], depth: u32) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &n in &out {
            let mut m = n;
            let used: u32 = primes.iter().map(|&r| exponent(n, r)).sum();
            for _ in used..=depth {
                next.push(m);
                m *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn exponent(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn big_omega(mut n: u64) -> u32 {
    let mut k = 0;
    let mut p = 2;
    while n > 1 {
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        p += 1;
    }
    k
}

fn elem(n: u64) -> MonoidElement {
    MonoidElement::from_u64(n).unwrap()
}

/// Random integer values on the universe, with `f(1)` optionally forced nonzero.
fn random_values(rng: &mut ChaCha8Rng, universe: &[u64], unit: bool) -> HashMap<u64, Q> {
    universe
        .iter()
        .map(|&n| {
            let mut v = rng.random_range(-4i64..=4);
            if unit && n == 1 && v == 0 {
                v = 1;
            }
            (n, q(v))
        })
        .collect()
}

fn as_fn(values: &HashMap<u64, Q>) -> ArithFn {
    let z = MonoidDescriptor::positive_integers();
    ArithFn::from_table(&z, Field::Rationals, values.iter().map(|(&n, v)| (elem(n), scalar(v)))).unwrap()
}

/// `(f * g)(n) = sum_{d | n} f(d) g(n / d)` by trial division.
fn convolve(f: &HashMap<u64, Q>, g: &HashMap<u64, Q>, universe: &[u64]) -> HashMap<u64, Q> {
    let zero = Q::zero();
    universe
        .iter()
        .map(|&n| {
            let s = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| f.get(&d).unwrap_or(&zero) * g.get(&(n / d)).unwrap_or(&zero))
                .fold(Q::zero(), |a, b| a + b);
            (n, s)
        })
        .collect()
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    sign
}

fn agree(f: &ArithFn, oracle: &HashMap<u64, Q>, universe: &[u64], what: &str, o: &mut Oracle) {
    for &n in universe {
        let lib = rat(&f.eval(&elem(n)));
        let want = oracle.get(&n).cloned().unwrap_or_else(Q::zero);
        o.check(lib == want, || format!("{what} at {n}: library {lib}, oracle {want}"));
    }
}

fn ring_axioms(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let u = integer_universe(&[2, 3, 5], 5);
    for _ in 0..20 {
        let (f, g, h) = (
            random_values(&mut rng, &u, false),
            random_values(&mut rng, &u, false),
            random_values(&mut rng, &u, false),
        );
        let (lf, lg, lh) = (as_fn(&f), as_fn(&g), as_fn(&h));
        agree(&lf.convolve(&lg).unwrap(), &convolve(&f, &g, &u), &u, "f*g", o);
        let fg_h = convolve(&convolve(&f, &g, &u), &h, &u);
        agree(&lf.convolve(&lg.convolve(&lh).unwrap()).unwrap(), &fg_h, &u, "f*(g*h)", o);
        let gh: HashMap<u64, Q> = u.iter().map(|n| (*n, &g[n] + &h[n])).collect();
        let lhs = convolve(&f, &gh, &u);
        agree(&lf.convolve(&lg).unwrap().add(&lf.convolve(&lh).unwrap()).unwrap(), &lhs, &u, "f*g + f*h", o);
        agree(&lg.convolve(&lf).unwrap(), &convolve(&f, &g, &u), &u, "g*f", o);
        let e = ArithFn::identity(&MonoidDescriptor::positive_integers(), Field::Rationals);
        agree(&e.convolve(&lf).unwrap(), &f, &u, "e*f", o);
    }
}

fn inverses(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let u = integer_universe(&[2, 3], 6);
    for _ in 0..25 {
        let f = random_values(&mut rng, &u, true);
        // g(1) = 1/f(1), g(n) = -(1/f(1)) sum_{d | n, d < n} f(n/d) g(d)
        let mut g: HashMap<u64, Q> = HashMap::new();
        for &n in &u {
            let s = if n == 1 {
                Q::one()
            } else {
                -(1..n).filter(|d| n % d == 0).map(|d| &f[&(n / d)] * &g[&d]).fold(Q::zero(), |a, b| a + b)
            };
            g.insert(n, s / &f[&1]);
        }
        agree(&as_fn(&f).dirichlet_inverse().unwrap(), &g, &u, "inverse", o);
    }
    let mut f = random_values(&mut rng, &u, false);
    f.insert(1, Q::zero());
    o.check(as_fn(&f).dirichlet_inverse().is_err(), || "f(1) = 0 was inverted".into());
}

fn moebius(o: &mut Oracle) {
    let z = MonoidDescriptor::positive_integers();
    let u = integer_universe(&[2, 3, 5, 7], 5);
    let mu: HashMap<u64, Q> = u.iter().map(|&n| (n, q(mobius(n)))).collect();
    agree(&ArithFn::moebius(&z, Field::Rationals), &mu, &u, "mu", o);
    let ones: HashMap<u64, Q> = u.iter().map(|&n| (n, Q::one())).collect();
    let e: HashMap<u64, Q> = convolve(&mu, &ones, &u);
    o.check(u.iter().all(|n| e[n] == if *n == 1 { Q::one() } else { Q::zero() }), || "oracle mu*u != e".into());
    let lib = ArithFn::moebius(&z, Field::Rationals).convolve(&ArithFn::unit(&z, Field::Rationals)).unwrap();
    agree(&lib, &e, &u, "mu*u", o);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let small = integer_universe(&[2, 3, 5], 3);
    for _ in 0..10 {
        let f = random_values(&mut rng, &small, false);
        let back = as_fn(&f).convolve(&ArithFn::unit(&z, Field::Rationals)).unwrap().moebius_invert();
        agree(&back, &f, &small, "inversion round trip", o);
    }
}

/// A random multiplicative function given by its prime-power values.
fn random_multiplicative(rng: &mut ChaCha8Rng, primes: &[u64], depth: u32) -> (ArithFn, HashMap<(u64, u32), Q>) {
    let mut table = HashMap::new();
    for &p in primes {
        for k in 1..=depth {
            table.insert((p, k), q(rng.random_range(-3i64..=3)));
        }
    }
    let lib = table.iter().map(|(&(p, k), v)| ((PrimeIndex::Rational(p), k), scalar(v))).collect();
    let z = MonoidDescriptor::positive_integers();
    (ArithFn::multiplicative(&z, Field::Rationals, lib, Field::Rationals.zero()).unwrap(), table)
}

fn multiplicativity(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let primes = [2u64, 3, 5];
    let u = integer_universe(&primes, 4);
    for _ in 0..15 {
        let (f, _) = random_multiplicative(&mut rng, &primes, 4);
        let (g, _) = random_multiplicative(&mut rng, &primes, 4);
        for h in [f.convolve(&g).unwrap(), f.dirichlet_inverse().unwrap()] {
            o.check(h.eval(&elem(1)).is_one(), || "h(1) != 1".into());
            for &m in &u {
                for &n in &u {
                    if m * n > 5u64.pow(4) || num_integer_gcd(m, n) != 1 || !u.contains(&(m * n)) {
                        continue;
                    }
                    let lhs = rat(&h.eval(&elem(m * n)));
                    let rhs = rat(&h.eval(&elem(m))) * rat(&h.eval(&elem(n)));
                    o.check(lhs == rhs, || format!("h({}) != h({m}) h({n})", m * n));
                }
            }
        }
    }
}

fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn torsion(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let u = integer_universe(&[2, 3], 6);
    for _ in 0..10 {
        let (f, table) = random_multiplicative(&mut rng, &[2, 3], 6);
        let vals: HashMap<u64, Q> = u.iter().map(|&n| (n, rat(&f.eval(&elem(n))))).collect();
        let ok_table = u.iter().all(|&n| {
            let want = [2u64, 3].iter().fold(Q::one(), |acc, &p| {
                let k = exponent(n, p);
                if k == 0 {
                    acc
                } else {
                    acc * &table[&(p, k)]
                }
            });
            vals[&n] == want
        });
        o.check(ok_table, || "multiplicative literal disagrees with its table".into());
        for p in [2u64, 3] {
            let Some(l) = (1..=6).find(|&k| !table[&(p, k)].is_zero()) else { continue };
            let mut power = HashMap::from([(1u64, Q::one())]);
            for n in 1..=5i64 {
                power = convolve(&power, &vals, &u);
                let pl = p.pow(l);
                let lib = rat(&f.pow(n as u32).eval(&elem(pl)));
                o.check(power[&pl] == q(n) * &vals[&pl], || format!("oracle f^{n}({pl})"));
                o.check(lib == power[&pl], || format!("library f^{n}({pl}) = {lib}, oracle {}", power[&pl]));
            }
        }
    }
}

fn series_iso(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let primes = [2u64, 3, 5];
    let window: Vec<PrimeIndex> = primes.iter().map(|&p| PrimeIndex::Rational(p)).collect();
    let u = integer_universe(&primes, 4);
    let z = MonoidDescriptor::positive_integers();
    let vec_of = |n: u64| primes.iter().map(|&p| exponent(n, p)).collect::<Vec<u32>>();
    for _ in 0..15 {
        let (f, g) = (random_values(&mut rng, &u, false), random_values(&mut rng, &u, false));
        let (lf, lg) = (as_fn(&f), as_fn(&g));
        let (sf, sg) = (phi(&lf, &window, 4), phi(&lg, &window, 4));
        for &n in &u {
            o.check(rat(&sf.coeff(&vec_of(n))) == f[&n], || format!("coefficient of X^{n}"));
        }
        // Product of the truncated polynomials, by hand.
        let mut prod: HashMap<Vec<u32>, Q> = HashMap::new();
        for &a in &u {
            for &b in &u {
                if big_omega(a) + big_omega(b) <= 4 {
                    *prod.entry(vec_of(a * b)).or_insert_with(Q::zero) += &f[&a] * &g[&b];
                }
            }
        }
        let sfg = phi(&lf.convolve(&lg).unwrap(), &window, 4);
        let lib_mul = sf.mul(&sg).unwrap();
        for (e, c) in &prod {
            o.check(rat(&sfg.coeff(e)) == *c, || format!("Phi(f*g) at {e:?}"));
            o.check(rat(&lib_mul.coeff(e)) == *c, || format!("Phi(f)Phi(g) at {e:?}"));
        }
        let back = sf.phi_inverse(&z).unwrap();
        agree(&back, &f, &u, "Phi^-1(Phi(f))", o);
        o.check(phi(&back, &window, 4) == sf, || "Phi(Phi^-1(s)) != s".into());
    }
}

fn valuation_metric(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let free = MonoidDescriptor::free(3);
    let window: Vec<PrimeIndex> = (1..=3).map(PrimeIndex::Free).collect();
    let depth = 8;
    let random = |rng: &mut ChaCha8Rng| {
        let floor = rng.random_range(0..=3u32);
        let mut values = HashMap::new();
        for i in 0..=4u32 {
            for j in 0..=4 - i {
                for k in 0..=4 - i - j {
                    if i + j + k >= floor && rng.random_bool(0.5) {
                        values.insert([i, j, k], rng.random_range(1i64..=3));
                    }
                }
            }
        }
        values
    };
    let as_free = |values: &HashMap<[u32; 3], i64>| {
        ArithFn::from_table(
            &free,
            Field::Rationals,
            values
                .iter()
                .map(|(e, v)| (MonoidElement::from_exponent_vector(&window, e), Field::Rationals.from_i64(*v))),
        )
        .unwrap()
    };
    let v_oracle = |f: &ArithFn| {
        let mut best: Option<u32> = None;
        for i in 0..=depth {
            for j in 0..=depth - i {
                for k in 0..=depth - i - j {
                    let a = MonoidElement::from_exponent_vector(&window, &[i, j, k]);
                    if !f.eval(&a).is_zero() {
                        best = Some(best.map_or(i + j + k, |b| b.min(i + j + k)));
                    }
                }
            }
        }
        best.map_or(Valuation::Infinite, Valuation::Finite)
    };
    for _ in 0..15 {
        let (f, g) = (as_free(&random(&mut rng)), as_free(&random(&mut rng)));
        let fg = f.convolve(&g).unwrap();
        let (vf, vg, vfg) = (v_oracle(&f), v_oracle(&g), v_oracle(&fg));
        o.check(certified_valuation(&f, depth).unwrap() == vf, || "v(f) differs from the scan".into());
        o.check(certified_valuation(&fg, depth).unwrap() == vfg, || "v(f*g) differs from the scan".into());
        o.check(vfg == vf.plus(vg), || format!("v(f*g) = {vfg}, v(f) + v(g) = {}", vf.plus(vg)));
        let s = phi(&f, &window, depth);
        o.check(s.w_valuation() == vf, || format!("w(Phi(f)) = {}, v(f) = {vf}", s.w_valuation()));
        let vsum = v_oracle(&f.add(&g).unwrap());
        o.check(vsum >= vf.min(vg), || format!("v(f+g) = {vsum} below min({vf}, {vg})"));
    }
}

fn completeness(o: &mut Oracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let free = MonoidDescriptor::free(2);
    let window: Vec<PrimeIndex> = (1..=2).map(PrimeIndex::Free).collect();
    for _ in 0..10 {
        let values: Vec<(MonoidElement, Scalar)> = enumerate_universe(&window, 5)
            .into_iter()
            .map(|a| (a, Field::Rationals.from_i64(rng.random_range(-3..=3))))
            .collect();
        let f = ArithFn::from_table(&free, Field::Rationals, values).unwrap();
        for level in 0..=4u32 {
            // U(window, level) has (level + 1)(level + 2) / 2 elements.
            let t = ((level + 1) * (level + 2) / 2) as usize;
            let ft = partial_sum(&f, &window, t);
            let diff = f.sub(&ft).unwrap();
            for a in enumerate_universe(&window, 6) {
                let want = if a.lambda() <= level { f.eval(&a) } else { Field::Rationals.zero() };
                o.check(ft.eval(&a) == want, || format!("f_{t}({a})"));
            }
            let v = certified_valuation(&diff, 6).unwrap();
            o.check(v > Valuation::Finite(level), || format!("v(f - f_{t}) = {v} at level {level}"));
        }
    }
}

/// Up-closed families of subsets of an `n`-set, counted by brute force.
fn up_set_count(n: u32) -> usize {
    let subsets = 1u32 << n;
    (0u64..1 << subsets)
        .filter(|fam| (0..subsets).all(|s| fam >> s & 1 == 0 || (0..subsets).all(|t| t & s != s || fam >> t & 1 == 1)))
        .count()
}

fn finite_space(o: &mut Oracle) {
    for primes in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
        let n = primes.len();
        let x = FiniteSpace::new(&DomainDescriptor::z_localized(primes).unwrap()).unwrap();
        o.check(x.point_count() == 1 << n, || format!("n={n}: {} points", x.point_count()));
        o.check(x.dimension().unwrap() == n, || format!("n={n}: dimension"));
        let chain = x.witness_chain().unwrap();
        // V(P_m) is the set of points vanishing at each of the first m primes.
        let by_hand: Vec<BTreeSet<u32>> =
            (0..=n).map(|m| (0..x.point_count()).filter(|z| z & ((1 << m) - 1) == (1 << m) - 1).collect()).collect();
        let lib_chain: Vec<BTreeSet<u32>> = chain.iter().map(|c| c.points().collect()).collect();
        o.check(lib_chain == by_hand, || format!("n={n}: chain {lib_chain:?}"));
        o.check(by_hand.windows(2).all(|w| w[1].is_subset(&w[0]) && w[1] != w[0]), || {
            format!("n={n}: chain not strict")
        });
        let census = x.closed_set_census().unwrap();
        let brute = up_set_count(n as u32);
        o.check(census.via_generators == brute, || {
            format!("n={n}: {} closed sets, {brute} up-sets", census.via_generators)
        });
        let generic = x.generic_points(x.all_points());
        o.check(generic.len() == 1 && x.label(generic[0]) == "{}", || format!("n={n}: generic points {generic:?}"));
        let closed = x.closed_points();
        o.check(closed == vec![x.full_mask()], || format!("n={n}: closed points {closed:?}"));
        let s = x.spectral_report().unwrap();
        o.check(s.t0 && s.spectral, || format!("n={n}: {:?}", s.failures));
    }
}

fn sheaf(o: &mut Oracle) {
    let primes = [2u64, 3, 5];
    let x = FiniteSpace::new(&DomainDescriptor::z_localized(&primes).unwrap()).unwrap();
    for z in 0..x.point_count() {
        let zeros = z.count_ones() as usize;
        let kind = x.stalk(z).kind;
        let ok = match zeros {
            3 => kind == LocalizationKind::WholeRing,
            0 => kind == LocalizationKind::FractionField,
            1 => matches!(kind, LocalizationKind::LocalRing(_)),
            _ => matches!(kind, LocalizationKind::SemiLocalPID(ref v) if v.len() == zeros),
        };
        o.check(ok, || format!("stalk at {}: {kind}", x.label(z)));
    }
    let pool: Vec<i64> = vec![1, 2, 3, 5, 6, 10, 15, 30, 4, 45];
    for &a in &pool {
        let s = x.sections(&dedekind_arith::DomainElement::Int(a)).unwrap();
        let kept: BTreeSet<PrimeIndex> =
            primes.iter().filter(|&&p| a % p as i64 != 0).map(|&p| PrimeIndex::Rational(p)).collect();
        o.check(s.surviving_max == PrimeSet::Finite(kept), || format!("O(D({a})) = {s}"));
        for &b in &pool {
            let d = |n: i64| x.basic_open_of(&dedekind_arith::DomainElement::Int(n)).unwrap();
            o.check(d(a).intersection(d(b)) == d(a * b), || format!("D({a}) n D({b})"));
            let by_hand = (0..x.point_count()).filter(|&z| {
                x.primes_of(z).iter().all(|p| matches!(p, PrimeIndex::Rational(q) if (a * b) % *q as i64 != 0))
            });
            o.check(by_hand.count() as u32 == d(a * b).len(), || format!("|D({})|", a * b));
        }
    }
}

/// Number of primes of `Z[sqrt(d)]` over `p`, from the Legendre symbol by brute force.
fn primes_above(d: i64, p: u64) -> usize {
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    if disc.rem_euclid(p as i64) == 0 {
        return 1;
    }
    if p == 2 {
        return if disc.rem_euclid(8) == 1 { 2 } else { 1 };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if (1..p).any(|x| x * x % p == r) {
        2
    } else {
        1
    }
}

fn morphisms(o: &mut Oracle) {
    for d in [-5i64, -1] {
        let hom = DomainHom::new(DomainDescriptor::integers(), DomainDescriptor::quadratic(d).unwrap()).unwrap();
        for p in (2u64..=50).filter(|&p| (2..p).all(|r| p % r != 0)) {
            let over = hom.primes_over(&PrimeIndex::Rational(p)).unwrap();
            o.check(over.len() == primes_above(d, p), || format!("d={d}: {} primes over {p}", over.len()));
            for q in &over {
                let back = hom.contract_prime(q).unwrap();
                o.check(back == PrimeIndex::Rational(p), || format!("d={d}: {q} contracts to {back}"));
                let zeros = BTreeMap::from([(q.clone(), Field::Rationals.zero())]);
                let target = MonoidDescriptor::ideals(hom.target().clone());
                let g =
                    ArithFn::totally_multiplicative(&target, Field::Rationals, zeros, Field::Rationals.one()).unwrap();
                let pulled = g
                    .pullback(&MonoidDescriptor::positive_integers(), dedekind_arith::MonoidMap::Extension(hom.clone()))
                    .unwrap();
                for r in [2u64, 3, 5, 7, 11, 13, p] {
                    let vanishes = pulled.eval(&elem(r)).is_zero();
                    o.check(vanishes == (r == p), || format!("d={d}: pullback of the point at {q} at {r}"));
                }
            }
        }
    }
}

fn sqrt_minus_5(o: &mut Oracle) {
    let r = witness_check_sqrtm5().unwrap();
    for s in &r.steps {
        o.check(s.passed, || format!("{}: {}", s.name, s.detail));
    }
    o.check(QuadInt::new(-5, 1, 1).norm() == 6, || "N(1+w) != 6".into());
    o.check(QuadInt::new(-5, 1, 1).mul(&QuadInt::new(-5, 1, -1)) == QuadInt::from_int(-5, 6), || {
        "(1+w)(1-w) != 6".into()
    });
    let norm_three = (-2i64..=2).any(|a| (-1i64..=1).any(|b| a * a + 5 * b * b == 3));
    o.check(!norm_three, || "found an element of norm 3".into());
}

fn spec(o: &mut Oracle) {
    for primes in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
        let x = FiniteSpace::new(&DomainDescriptor::z_localized(primes).unwrap()).unwrap();
        let e = spec_embedding(&x).unwrap();
        let image: BTreeSet<u32> = e.table.iter().map(|(_, z)| *z).collect();
        let small: BTreeSet<u32> = (0..x.point_count()).filter(|z| z.count_ones() <= 1).collect();
        o.check(image == small, || format!("image {image:?}, points with at most one zero {small:?}"));
        o.check(e.table.len() == primes.len() + 1, || "Spec has n + 1 points".into());
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "ring axioms", Some(LIMIT_RING_AXIOMS), ring_axioms),
        (2, "units and inverses", None, inverses),
        (3, "Moebius inversion", None, moebius),
        (4, "multiplicativity", None, multiplicativity),
        (5, "torsion identity", None, torsion),
        (6, "Phi isomorphism", None, series_iso),
        (7, "valuation and metric", None, valuation_metric),
        (8, "completeness and density", None, completeness),
        (9, "finite space structure", Some(LIMIT_FINITE_SPACE), finite_space),
        (10, "sheaf structure", None, sheaf),
        (11, "morphisms", None, morphisms),
        (12, "sqrt(-5) example", Some(LIMIT_SQRT_MINUS_5), sqrt_minus_5),
        (13, "Spec embedding", None, spec),
    ];
    let mut all = true;
    for (id, name, limit, oracle) in criteria {
        let start = Instant::now();
        let lib = run_criterion(id, SEED);
        let lib_time = start.elapsed();
        let mut o = Oracle::default();
        oracle(&mut o);
        let in_time = limit.is_none_or(|l| lib_time <= l);
        let passed = lib.passed && o.failures.is_empty() && in_time;
        all &= passed;
        let limit_note = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        println!(
            "criterion {id:>2} {name:<26} {}  ({} library checks, {} oracle checks, {:.2}s{limit_note})",
            if passed { "PASS" } else { "FAIL" },
            lib.checks,
            o.checks,
            lib_time.as_secs_f64(),
        );
        for c in lib.counterexamples.iter().chain(&o.failures) {
            println!("    {c}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
