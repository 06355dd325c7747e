//! Moebius inversion recovers a function from its summatory function, on
//! the integers and on the ideals of Z[i].

use dedekind_arith::monoid::enumerate_universe;
use dedekind_arith::random::Sampler;
use dedekind_arith::{ArithFn, DomainDescriptor, Field, MonoidDescriptor, Result};

fn main() -> Result<()> {
    let q = Field::Rationals;
    let mut sampler = Sampler::new(2024, q);

    for monoid in [MonoidDescriptor::positive_integers(), MonoidDescriptor::ideals(DomainDescriptor::quadratic(-1)?)] {
        let window = monoid.first_primes(3);
        let universe = enumerate_universe(&window, 4);
        let f = sampler.table(&monoid, &window, 4);
        let summed = f.convolve(&ArithFn::unit(&monoid, q))?;
        let back = summed.moebius_invert();

        println!("{monoid}: window {:?}", window.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        for a in universe.iter().take(6) {
            println!("  f({a}) = {:<5} F({a}) = {}", f.eval(a), summed.eval(a));
        }
        println!("  recovered on {} elements: {}", universe.len(), back.agrees_on(&f, &universe));

        let e = ArithFn::moebius(&monoid, q).convolve(&ArithFn::unit(&monoid, q))?;
        println!("  mu * u = e: {}", e.agrees_on(&ArithFn::identity(&monoid, q), &universe));
    }
    Ok(())
}
