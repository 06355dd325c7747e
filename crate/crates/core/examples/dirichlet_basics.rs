//! Arithmetic functions on the positive integers: building them, convolving
//! them and checking a few classical identities.

use dedekind_arith::{parse_fn, ArithFn, Field, MonoidDescriptor, MonoidElement, Result};

fn main() -> Result<()> {
    let z = MonoidDescriptor::positive_integers();
    let q = Field::Rationals;

    let u = ArithFn::unit(&z, q);
    let d = u.convolve(&u)?;
    let sigma = parse_fn(&z, q, "conv(norm,u)")?;

    println!("{:>4} {:>4} {:>6}", "n", "d(n)", "sigma");
    for n in [1u64, 6, 12, 28, 60, 97] {
        let a = MonoidElement::from_u64(n)?;
        println!("{n:>4} {:>4} {:>6}", d.eval(&a), sigma.eval(&a));
    }

    // Units of the ring are the functions with f(1) != 0.
    let inv_u = u.dirichlet_inverse()?;
    let mu = ArithFn::moebius(&z, q);
    let same = (1..=100).all(|n| {
        let a = MonoidElement::from_u64(n).unwrap();
        inv_u.eval(&a) == mu.eval(&a)
    });
    println!("inverse of u agrees with mu up to 100: {same}");

    let f = parse_fn(&z, q, "sub(u,e)")?;
    match f.dirichlet_inverse() {
        Ok(_) => println!("u - e was inverted"),
        Err(e) => println!("u - e is not a unit: {e}"),
    }

    // Over F_3 the function u has order 3 on prime arguments.
    let f3 = ArithFn::unit(&z, Field::PrimeField(3)).pow(3);
    println!("u^3 at 5 over F_3: {}", f3.eval(&MonoidElement::from_u64(5)?));
    Ok(())
}
