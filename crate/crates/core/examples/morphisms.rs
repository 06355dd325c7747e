//! Ring maps induce maps of spaces by pulling functions back. On zero sets
//! the induced map is contraction of primes.

use dedekind_arith::space::{induced_morphism, zero_contraction_check};
use dedekind_arith::{DomainDescriptor, DomainHom, Result};

fn main() -> Result<()> {
    let hom = DomainHom::new("zloc:5".parse()?, "qsqrtloc:-1:P5+,P5-".parse()?)?;
    let report = induced_morphism(&hom, 1)?;
    println!("{hom}");
    for (upstairs, downstairs) in &report.point_map {
        println!("  {upstairs:<12} -> {downstairs}");
    }
    println!(
        "basis preimages {}, stalks proper {}, zero sets contract {}, sections agree {}",
        report.basis_preimage, report.stalk_proper, report.zero_sets_contract, report.sections_agree
    );

    for d in [-1, -5] {
        let global = DomainHom::new(DomainDescriptor::integers(), DomainDescriptor::quadratic(d)?)?;
        let r = zero_contraction_check(&global, 50, 10, 7)?;
        println!("{global}: {} primes of norm <= 50, contraction holds: {}", r.target_primes, r.passed());
    }

    match DomainHom::new("zloc:5".parse()?, "qsqrtloc:-1:P13+".parse()?) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
