//! The space of points of a semi-local PID: one point per set of primes
//! where a function vanishes, with closed sets cut out by elements.

use dedekind_arith::{DomainDescriptor, FiniteSpace, Result};

fn main() -> Result<()> {
    let domain: DomainDescriptor = std::env::args().nth(1).as_deref().unwrap_or("zloc:2,3,5").parse()?;
    let x = FiniteSpace::new(&domain)?;

    println!("{domain}: {} points, dimension {}", x.point_count(), x.dimension()?);
    for z in 0..x.point_count() {
        println!("  {:<10} stalk {}", x.label(z), x.stalk(z));
    }

    let census = x.closed_set_census()?;
    println!("closed sets {}, up-closed families {}", census.via_generators, census.via_up_sets);

    let chain: Vec<String> = x.witness_chain()?.iter().map(|c| c.len().to_string()).collect();
    println!("chain of irreducible closed sets with sizes {}", chain.join(" > "));

    let spectral = x.spectral_report()?;
    println!("T0 {}, spectral {}", spectral.t0, spectral.spectral);
    println!("\n{}", x.to_dot());
    Ok(())
}
