//! The valuation v(f), the norm N(f) = 2^v(f) and the ultrametric
//! d(f, g) = c^v(f - g) on a free monoid with three generators.

use dedekind_arith::random::Sampler;
use dedekind_arith::series::partial_sum;
use dedekind_arith::valuation::{certified_valuation, distance, norm_n, MetricParams};
use dedekind_arith::{parse_fn, Field, MonoidDescriptor, PrimeIndex, Result};

fn main() -> Result<()> {
    let m = MonoidDescriptor::free(3);
    let q = Field::Rationals;
    let depth = 8;

    for text in ["e", "u", "sub(u,e)", "pi(g1)", "conv(pi(g1),pi(g2))", "pow(sub(u,e),3)"] {
        let f = parse_fn(&m, q, text)?;
        println!("{text:<22} v = {:<2} N = {}", certified_valuation(&f, depth)?, norm_n(&f, depth)?);
    }

    let c = MetricParams::default();
    let mut sampler = Sampler::new(5, q);
    let window: Vec<PrimeIndex> = (1..=3).map(PrimeIndex::Free).collect();
    let f = sampler.table(&m, &window, 3);
    println!("\npartial sums of a random f converge:");
    for t in [1, 4, 10, 20] {
        let ft = partial_sum(&f, &window, t);
        println!("  t = {t:>2}  d(f, f_t) = {}", distance(&f, &ft, &c, depth)?);
    }
    Ok(())
}
