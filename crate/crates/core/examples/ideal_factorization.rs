//! Ideal factorization in quadratic orders, where elements may fail to
//! factor uniquely but ideals always do.

use dedekind_arith::domains::{splitting_type, SplitType};
use dedekind_arith::{DomainDescriptor, PrimeIndex, Result};

fn main() -> Result<()> {
    let a = DomainDescriptor::quadratic(-5)?;

    // 6 = 2 * 3 = (1 + w)(1 - w) with w^2 = -5.
    for x in ["2", "3", "1+w", "1-w", "6"] {
        let f = a.factor_principal(&a.parse_element(x)?)?;
        println!("({x:>3}) = {f:<22} norm {}", a.ideal_norm(&f)?);
    }

    println!();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let (kind, primes) = match splitting_type(-5, p)? {
            SplitType::Split(x, y) => ("splits", vec![x, y]),
            SplitType::Inert(x) => ("is inert", vec![x]),
            SplitType::Ramified(x) => ("ramifies", vec![x]),
        };
        let shown: Vec<String> = primes.iter().map(|q| format!("{} = {q}", q.prime_label())).collect();
        println!("{p:>2} {kind:<8} {}", shown.join(", "));
    }

    let p3 = a.parse_prime_label("P3+")?;
    if let PrimeIndex::Quad(q) = &p3 {
        match q.is_principal(100) {
            Some(g) => println!("\nP3+ is generated by {g}"),
            None => println!("\nP3+ has no generator of norm 3"),
        }
    }
    Ok(())
}
