//! In Z[sqrt(-5)] the closed set cut out by 3 is irreducible but has no
//! generic point, because (3) splits into two non-principal primes.

use dedekind_arith::space::witness_check_sqrtm5;
use dedekind_arith::Result;

fn main() -> Result<()> {
    let report = witness_check_sqrtm5()?;
    for step in &report.steps {
        println!("[{}] {:<28} {}", if step.passed { "ok" } else { "!!" }, step.name, step.detail);
    }
    println!("\n{} points checked, {} of them in V(3)", report.slice_points, report.slice_points_in_z);
    Ok(())
}
