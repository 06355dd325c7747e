//! Arithmetic functions as power series: one variable per prime, with
//! convolution becoming multiplication.

use std::collections::BTreeMap;

use dedekind_arith::series::phi;
use dedekind_arith::{parse_fn, Field, MonoidDescriptor, PrimeIndex, Result};

fn main() -> Result<()> {
    let z = MonoidDescriptor::positive_integers();
    let q = Field::Rationals;
    let window: Vec<PrimeIndex> = [2, 3].into_iter().map(PrimeIndex::Rational).collect();

    let u = parse_fn(&z, q, "u")?;
    let mu = parse_fn(&z, q, "mu")?;
    println!("Phi(u)  = {}", phi(&u, &window, 3));
    println!("Phi(mu) = {}", phi(&mu, &window, 3));

    let product = phi(&u, &window, 3).mul(&phi(&mu, &window, 3))?;
    println!("Phi(u) Phi(mu) = {product}");
    println!("Phi(u * mu)    = {}", phi(&u.convolve(&mu)?, &window, 3));

    // Swapping the primes 2 and 3 renames the variables.
    let swap: BTreeMap<PrimeIndex, PrimeIndex> =
        [(PrimeIndex::Rational(2), PrimeIndex::Rational(3)), (PrimeIndex::Rational(3), PrimeIndex::Rational(2))].into();
    let norm = parse_fn(&z, q, "norm")?;
    println!("Phi(N)         = {}", phi(&norm, &window, 2));
    println!("after swapping = {}", phi(&norm, &window, 2).substitute(&swap)?);

    let back = phi(&norm, &window, 2).phi_inverse(&z)?;
    println!("Phi^-1 recovers N(6) = {}", back.eval(&z.parse_element("6")?));
    Ok(())
}
