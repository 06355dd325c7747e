use std::collections::BTreeMap;

use dedekind_arith::monoid::enumerate_universe;
use dedekind_arith::random::Sampler;
use dedekind_arith::series::{partial_sum, phi};
use dedekind_arith::valuation::{certified_valuation, distance, norm_n, valuation, MetricParams, Valuation};
use dedekind_arith::{ArithFn, Field, MonoidDescriptor, MonoidElement, PrimeIndex, TruncatedSeries};
use proptest::prelude::*;

fn z_window() -> Vec<PrimeIndex> {
    [2, 3, 5].into_iter().map(PrimeIndex::Rational).collect()
}

fn free_window(n: u32) -> Vec<PrimeIndex> {
    (1..=n).map(PrimeIndex::Free).collect()
}

/// A table on `U(window, 3)` that vanishes below level `floor`.
fn with_floor(s: &mut Sampler, m: &MonoidDescriptor, w: &[PrimeIndex], floor: u32) -> ArithFn {
    let f = s.table(m, w, 3);
    let values: Vec<_> = enumerate_universe(w, 3)
        .into_iter()
        .filter(|a| a.lambda() >= floor)
        .map(|a| {
            let v = f.eval(&a);
            (a, v)
        })
        .collect();
    ArithFn::from_table(m, s.field(), values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_is_a_ring_map(seed in any::<u64>()) {
        let z = MonoidDescriptor::positive_integers();
        let mut s = Sampler::new(seed, Field::Rationals);
        let w = z_window();
        let (f, g) = (s.table(&z, &w, 4), s.table(&z, &w, 4));
        prop_assert_eq!(phi(&f.convolve(&g).unwrap(), &w, 4), phi(&f, &w, 4).mul(&phi(&g, &w, 4)).unwrap());
        prop_assert_eq!(phi(&f.add(&g).unwrap(), &w, 4), phi(&f, &w, 4).add(&phi(&g, &w, 4)).unwrap());
        let back = phi(&f, &w, 4).phi_inverse(&z).unwrap();
        prop_assert!(back.agrees_on(&f, &enumerate_universe(&w, 4)));
    }

    #[test]
    fn renaming_variables_commutes_with_phi(seed in any::<u64>()) {
        let free = MonoidDescriptor::free(3);
        let mut s = Sampler::new(seed, Field::Rationals);
        let w = free_window(3);
        let f = s.table(&free, &w, 3);
        let sigma: BTreeMap<PrimeIndex, PrimeIndex> =
            w.iter().cloned().zip(w.iter().cycle().skip(1).cloned()).collect();
        let inverse: BTreeMap<PrimeIndex, PrimeIndex> = sigma.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let moved = phi(&f, &w, 3).substitute(&sigma).unwrap();
        for a in enumerate_universe(&w, 3) {
            let image = MonoidElement::from_pairs(a.exponents().iter().map(|(p, k)| (sigma[p].clone(), *k)));
            prop_assert_eq!(moved.coeff(&image.exponent_vector(&w)), f.eval(&a));
        }
        prop_assert_eq!(moved.substitute(&inverse).unwrap(), phi(&f, &w, 3));
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(seed in any::<u64>(), a in 0u32..3, b in 0u32..3) {
        let free = MonoidDescriptor::free(2);
        let mut s = Sampler::new(seed, Field::Rationals);
        let w = free_window(2);
        let f = with_floor(&mut s, &free, &w, a);
        let g = with_floor(&mut s, &free, &w, b);
        let (vf, vg) = (certified_valuation(&f, 8).unwrap(), certified_valuation(&g, 8).unwrap());
        prop_assert_eq!(certified_valuation(&f.convolve(&g).unwrap(), 8).unwrap(), vf.plus(vg));
        prop_assert!(certified_valuation(&f.add(&g).unwrap(), 8).unwrap() >= vf.min(vg));
        prop_assert_eq!(phi(&f, &w, 8).w_valuation(), vf);
        if vf != Valuation::Infinite && vg != Valuation::Infinite {
            prop_assert_eq!(norm_n(&f.convolve(&g).unwrap(), 8).unwrap(), norm_n(&f, 8).unwrap() * norm_n(&g, 8).unwrap());
        }
    }

    #[test]
    fn distance_is_an_ultrametric(seed in any::<u64>()) {
        let free = MonoidDescriptor::free(2);
        let mut s = Sampler::new(seed, Field::Rationals);
        let w = free_window(2);
        let (f, g, h) = (s.table(&free, &w, 3), s.table(&free, &w, 3), s.table(&free, &w, 3));
        let c = MetricParams::default();
        let (fg, gh, fh) = (distance(&f, &g, &c, 6).unwrap(), distance(&g, &h, &c, 6).unwrap(), distance(&f, &h, &c, 6).unwrap());
        prop_assert!(fh <= fg.clone().max(gh));
        prop_assert_eq!(fg, distance(&g, &f, &c, 6).unwrap());
        prop_assert!(num_traits::Zero::is_zero(&distance(&f, &f, &c, 6).unwrap()));
    }

    #[test]
    fn partial_sums_converge(seed in any::<u64>()) {
        let free = MonoidDescriptor::free(2);
        let mut s = Sampler::new(seed, Field::Rationals);
        let w = free_window(2);
        let f = s.table(&free, &w, 3);
        let full = enumerate_universe(&w, 3).len();
        prop_assert!(partial_sum(&f, &w, full).agrees_on(&f, &enumerate_universe(&w, 5)));
        // The first three terms fill levels 0 and 1.
        let diff = f.sub(&partial_sum(&f, &w, 3)).unwrap();
        prop_assert!(certified_valuation(&diff, 5).unwrap() >= Valuation::Finite(2));
    }
}

#[test]
fn window_scans_are_not_certified_on_infinite_monoids() {
    let z = MonoidDescriptor::positive_integers();
    let u = ArithFn::unit(&z, Field::Rationals);
    let r = valuation(&u, &z_window(), 3);
    assert!(!r.certified);
    assert!(r.certified_value().is_err());
    assert!(certified_valuation(&u, 3).is_err());
}

#[test]
fn series_units_and_variables() {
    let w = free_window(2);
    let x = TruncatedSeries::variable(Field::Rationals, &w, 4, 0);
    let one = TruncatedSeries::one(Field::Rationals, &w, 4);
    let geometric = one.sub(&x).unwrap();
    let mut inverse = TruncatedSeries::zero(Field::Rationals, &w, 4);
    let mut power = one.clone();
    for _ in 0..=4 {
        inverse = inverse.add(&power).unwrap();
        power = power.mul(&x).unwrap();
    }
    assert_eq!(geometric.mul(&inverse).unwrap(), one);
    assert_eq!(x.w_valuation(), Valuation::Finite(1));
    assert!(power.is_zero());
}

#[test]
fn metric_base_must_be_a_proper_fraction() {
    use num_rational::BigRational;
    assert!(MetricParams::new(BigRational::new(3.into(), 2.into())).is_err());
    assert!(MetricParams::new(BigRational::new(1.into(), 3.into())).is_ok());
}
