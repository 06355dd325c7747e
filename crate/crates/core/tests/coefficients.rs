use dedekind_arith::{Field, Scalar};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::PrimeField(2)),
        Just(Field::PrimeField(7)),
        Just(Field::PrimeField(101))
    ]
}

fn element(field: Field) -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(move |(n, d)| match field {
        Field::Rationals => field.from_fraction(n, d).unwrap(),
        _ => field.from_i64(n),
    })
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    fields().prop_flat_map(|f| (element(f), element(f), element(f)))
}

proptest! {
    #[test]
    fn addition_is_an_abelian_group((a, b, c) in triple()) {
        let f = a.field();
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(
            a.checked_add(&b).unwrap().checked_add(&c).unwrap(),
            a.checked_add(&b.checked_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.checked_add(&f.zero()).unwrap(), a.clone());
        prop_assert!(a.checked_add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn multiplication_distributes((a, b, c) in triple()) {
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&a.field().one()).unwrap(), a.clone());
    }

    #[test]
    fn nonzero_elements_invert((a, _, _) in triple()) {
        if a.is_zero() {
            prop_assert!(a.inverse().is_err());
        } else {
            prop_assert!(a.checked_mul(&a.inverse().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn fermat_in_prime_fields(n in 1i64..1000) {
        let f = Field::PrimeField(101);
        let a = f.from_i64(n);
        prop_assume!(!a.is_zero());
        prop_assert!(a.pow(100).is_one());
    }
}

#[test]
fn mixing_fields_is_an_error() {
    let a = Field::Rationals.one();
    let b = Field::PrimeField(5).one();
    assert!(a.checked_add(&b).is_err());
}

#[test]
fn prime_fields_need_primes() {
    assert!(Field::prime(7).is_ok());
    assert!(Field::prime(9).is_err());
    assert_eq!("Fp:5".parse::<Field>().unwrap(), Field::PrimeField(5));
    assert_eq!(Field::PrimeField(5).from_i64(-1).to_string(), "4");
}
