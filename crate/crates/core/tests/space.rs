use std::collections::BTreeSet;

use dedekind_arith::space::{membership, support_of, v_of, zero_set, ClosedSetRepr, PointSet};
use dedekind_arith::{
    ArithFn, DomainDescriptor, DomainElement, Field, FiniteSpace, MonoidDescriptor, PrimeIndex, ZeroSetPoint,
};
use proptest::prelude::*;

fn space(s: &str) -> FiniteSpace {
    FiniteSpace::new(&s.parse().unwrap()).unwrap()
}

/// Subsets of a four-element pool of generators, as lists of elements.
fn generator_sets() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let pool = vec![2i64, 15, 9, 10];
    let subset = proptest::sample::subsequence(pool, 0..=4);
    (subset.clone(), subset)
}

fn closed(x: &FiniteSpace, gens: &[i64]) -> PointSet {
    let elements: Vec<DomainElement> = gens.iter().map(|&a| DomainElement::Int(a)).collect();
    x.closed_of(&v_of(x.domain(), &elements).unwrap()).unwrap()
}

fn product(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

proptest! {
    #[test]
    fn vanishing_sets_turn_sums_and_products_around((a, b) in generator_sets()) {
        let x = space("zloc:2,3,5");
        let (va, vb) = (closed(&x, &a), closed(&x, &b));
        let sum: Vec<i64> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(closed(&x, &sum), va.intersection(vb));
        prop_assert_eq!(closed(&x, &product(&a, &b)), va.union(vb));
    }

    #[test]
    fn galois_connection_identities(bits in 0u128..(1 << 8)) {
        let x = space("zloc:2,3,5");
        let y = PointSet(bits);
        let i = x.ideal_of(y);
        let v = x.vanishing(&i);
        prop_assert!(y.is_subset(v));
        prop_assert_eq!(x.ideal_of(v), i.clone());
        prop_assert_eq!(x.vanishing(&x.ideal_of(v)), v);
        prop_assert_eq!(x.closure(v), v);
    }

    #[test]
    fn specialization_is_inclusion_of_zero_sets(a in 0u32..8, b in 0u32..8) {
        let x = space("zloc:2,3,5");
        // b lies in the closure of a exactly when b vanishes wherever a does.
        prop_assert_eq!(x.specializes(a, b), b & a == a);
    }

    #[test]
    fn global_closed_sets_match_membership(a in 1i64..200, b in 1i64..200, zeros in proptest::collection::btree_set(prop::sample::select(vec![2u64, 3, 5, 7, 11]), 0..4)) {
        let z = DomainDescriptor::integers();
        let point = ZeroSetPoint::new(&z, zeros.iter().map(|&p| PrimeIndex::Rational(p))).unwrap();
        let va = v_of(&z, &[DomainElement::Int(a)]).unwrap();
        let vb = v_of(&z, &[DomainElement::Int(b)]).unwrap();
        let hits = |n: i64| zeros.iter().any(|&p| n % p as i64 == 0);
        prop_assert_eq!(membership(&va, &point).unwrap(), hits(a));
        prop_assert_eq!(membership(&va.union(&vb), &point).unwrap(), hits(a) || hits(b));
        prop_assert_eq!(membership(&va.intersection(&vb), &point).unwrap(), hits(a) && hits(b));
    }
}

#[test]
fn closed_sets_are_up_sets_for_quadratic_localizations() {
    for s in ["zloc:7", "qsqrtloc:-1:P5+,P5-", "qsqrtloc:-5:P2,P3+,P3-", "fpxloc:2:x,x+1"] {
        let census = space(s).closed_set_census().unwrap();
        assert!(census.agree, "{s}: {census:?}");
    }
}

#[test]
fn zero_sets_of_totally_multiplicative_functions() {
    let a = DomainDescriptor::quadratic(-5).unwrap();
    let m = MonoidDescriptor::ideals(a.clone());
    let q = Field::Rationals;
    let p3 = a.parse_prime_label("P3-").unwrap();
    let f = ArithFn::totally_multiplicative(&m, q, [(p3.clone(), q.zero())].into(), q.one()).unwrap();
    let z = zero_set(&f).unwrap();
    assert!(z.is_zero_at(&p3));
    assert_eq!(z.to_string(), "{P3-}");
    let everywhere = ArithFn::totally_multiplicative(&m, q, Default::default(), q.zero()).unwrap();
    assert_eq!(zero_set(&everywhere).unwrap().to_string(), "[e]");
    assert!(zero_set(&ArithFn::unit(&m, q).add(&f).unwrap()).is_err());
}

#[test]
fn supports_and_the_unit_ideal() {
    let a = DomainDescriptor::quadratic(-5).unwrap();
    let six = a.parse_element("6").unwrap();
    let labels: BTreeSet<String> = support_of(&a, &six).unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(labels, ["P2", "P3+", "P3-"].into_iter().map(String::from).collect());
    assert!(v_of(&a, &[a.one()]).unwrap().is_empty_by_unit());
    assert!(!ClosedSetRepr::whole(&a).is_empty_by_unit());
    assert!(v_of(&a, &[a.parse_element("0").unwrap()]).is_err());
}

#[test]
fn fields_have_one_point() {
    let x = space("zloc:");
    assert_eq!(x.point_count(), 1);
    assert_eq!(x.dimension().unwrap(), 0);
}

#[test]
fn dot_export_lists_every_covering_relation() {
    let x = space("zloc:2,3,5");
    let dot = x.to_dot();
    assert_eq!(x.covering_relations().len(), 12);
    assert_eq!(dot.matches("->").count(), 12);
    let json = x.closed_sets_json().unwrap();
    assert_eq!(json["closed_sets"].as_array().map(Vec::len), Some(20));
}
