//! The closed set `Z = V({3})` of `M_1(Z[sqrt(-5)])`, which is irreducible
//! but has no generic point.
//!
//! `(3) = p+ p-` with neither factor principal. The points `f` and `g`
//! vanishing only at `p+` and only at `p-` both lie in `Z`, and the elements
//! `1 + w` and `1 - w` show that neither specializes to the other. The
//! absence of any generic point is a statement about all of `M_1(A)`; here
//! it is checked on the points whose zeros lie among the primes of norm at
//! most 7, together with `[e]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{membership, v_of, zero_set, PrimeSet, ZeroSetPoint};
use crate::coefficients::Field;
use crate::dirichlet::ArithFn;
use crate::domains::{DomainDescriptor, DomainElement, QuadIdeal, QuadInt};
use crate::error::Result;
use crate::monoid::{MonoidDescriptor, MonoidElement, PrimeIndex};

const SLICE_NORM: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub steps: Vec<WitnessStep>,
    /// Points examined for the dichotomy, and how many of them lie in `Z`.
    pub slice_points: usize,
    pub slice_points_in_z: usize,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    fn step(&mut self, name: &str, passed: bool, detail: String) {
        self.steps.push(WitnessStep { name: name.into(), passed, detail });
    }
}

fn vanishing_at(monoid: &MonoidDescriptor, zeros: &BTreeSet<PrimeIndex>, everything: bool) -> Result<ArithFn> {
    let field = Field::Rationals;
    let values: BTreeMap<PrimeIndex, _> = zeros.iter().map(|p| (p.clone(), field.zero())).collect();
    let default = if everything { field.zero() } else { field.one() };
    ArithFn::totally_multiplicative(monoid, field, values, default)
}

pub fn witness_check_sqrtm5() -> Result<WitnessReport> {
    let a = DomainDescriptor::quadratic(-5)?;
    let monoid = MonoidDescriptor::ideals(a.clone());
    let mut report = WitnessReport { steps: Vec::new(), slice_points: 0, slice_points_in_z: 0 };

    let p2 = a.parse_prime_label("P2")?;
    let plus = a.parse_prime_label("P3+")?;
    let minus = a.parse_prime_label("P3-")?;
    let hnf = |p: &PrimeIndex| match p {
        PrimeIndex::Quad(q) => *q,
        _ => unreachable!("primes of a quadratic order"),
    };
    let three = a.parse_element("3")?;
    let one_plus = a.parse_element("1+w")?;
    let one_minus = a.parse_element("1-w")?;
    let principal = |x: &DomainElement| match x {
        DomainElement::Quad(q) => QuadIdeal::principal(q),
        _ => unreachable!("elements of a quadratic order"),
    };

    let f3 = a.factor_principal(&three)?;
    let ok = f3 == MonoidElement::from_pairs([(plus.clone(), 1), (minus.clone(), 1)])
        && hnf(&plus).mul(&hnf(&minus)) == principal(&three)?;
    report.step("(3) = p+ p-", ok, format!("(3) = {f3}"));

    let f1 = a.factor_principal(&one_plus)?;
    let ok = f1 == MonoidElement::from_pairs([(p2.clone(), 1), (plus.clone(), 1)])
        && hnf(&p2).mul(&hnf(&plus)) == principal(&one_plus)?;
    report.step("(1+w) = p2 p+", ok, format!("(1+w) = {f1}"));

    let f = vanishing_at(&monoid, &BTreeSet::from([plus.clone()]), false)?;
    let g = vanishing_at(&monoid, &BTreeSet::from([minus.clone()]), false)?;
    let zf = zero_set(&f)?;
    let zg = zero_set(&g)?;
    let z = v_of(&a, std::slice::from_ref(&three))?;
    let at = |h: &ArithFn, x: &DomainElement| -> Result<_> { Ok(h.eval(&a.factor_principal(x)?)) };
    let ok = zf.to_string() == "{P3+}"
        && zg.to_string() == "{P3-}"
        && membership(&z, &zf)?
        && membership(&z, &zg)?
        && at(&f, &three)?.is_zero()
        && at(&g, &three)?.is_zero();
    report.step("f, g in V({3})", ok, format!("Z(f) = {zf}, Z(g) = {zg}"));

    let g_at = at(&g, &one_plus)?;
    let ok = hnf(&plus).contains(&QuadInt::new(-5, 1, 1)) && at(&f, &one_plus)?.is_zero() && !g_at.is_zero();
    report.step("g not in the closure of f", ok, format!("1+w lies in p+, f(1+w) = 0, g(1+w) = {g_at}"));

    let f_at = at(&f, &one_minus)?;
    let ok = hnf(&minus).contains(&QuadInt::new(-5, 1, -1)) && at(&g, &one_minus)?.is_zero() && !f_at.is_zero();
    report.step("f not in the closure of g", ok, format!("1-w lies in p-, g(1-w) = 0, f(1-w) = {f_at}"));

    let search = hnf(&plus).is_principal(50);
    let brute = (-3i64..=3).flat_map(|x| (-3i64..=3).map(move |y| (x, y))).find(|(x, y)| x * x + 5 * y * y == 3);
    report.step(
        "p+ is not principal",
        search.is_none() && brute.is_none(),
        "no element of norm 3: x^2 + 5y^2 = 3 has no solution".into(),
    );

    // Every point of Z in the slice vanishes at p+ or p-, and then 1+w or
    // 1-w keeps f or g out of its closure.
    let pool = a.primes_up_to_norm(SLICE_NORM);
    let mut failures = Vec::new();
    let mut candidates: Vec<(BTreeSet<PrimeIndex>, bool)> = (0u32..1 << pool.len())
        .map(|mask| {
            let zeros = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
            (zeros, false)
        })
        .collect();
    candidates.push((BTreeSet::new(), true));
    for (zeros, everything) in &candidates {
        let h = vanishing_at(&monoid, zeros, *everything)?;
        let point = zero_set(&h)?;
        report.slice_points += 1;
        if !at(&h, &three)?.is_zero() {
            if membership(&z, &point)? {
                failures.push(format!("{point} is in V({{3}}) but h(3) != 0"));
            }
            continue;
        }
        report.slice_points_in_z += 1;
        let (witness, other, other_point) = if point.is_zero_at(&plus) {
            (&one_plus, &g, &zg)
        } else if point.is_zero_at(&minus) {
            (&one_minus, &f, &zf)
        } else {
            failures.push(format!("{point} vanishes at 3 but at neither p+ nor p-"));
            continue;
        };
        if !at(&h, witness)?.is_zero() || at(other, witness)?.is_zero() {
            failures.push(format!("{witness} does not keep {other_point} out of the closure of {point}"));
        }
    }
    let dichotomy = failures.is_empty() && report.slice_points_in_z > 0;
    let detail = if failures.is_empty() {
        format!("{} of {} slice points lie in Z, none is generic", report.slice_points_in_z, report.slice_points)
    } else {
        failures.join("; ")
    };
    report.step("no generic point on the slice", dichotomy, detail);

    let e = ZeroSetPoint::everything(&a);
    report.step("[e] lies in Z", e.zeros == PrimeSet::All && membership(&z, &e)?, "[e] vanishes everywhere".into());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_steps_pass() {
        let r = witness_check_sqrtm5().unwrap();
        assert!(r.passed(), "{:#?}", r.steps);
        assert_eq!(r.slice_points, 65);
    }
}
