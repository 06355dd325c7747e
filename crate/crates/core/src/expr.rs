//! A small expression language for arithmetic functions.
//!
//! ```text
//! f := e | u | mu | d | phi | norm | sigma_<k> | pi(<prime>)
//!    | inv(f) | conv(f, g) | add(f, g) | sub(f, g) | scale(<q>, f) | pow(f, <n>)
//!    | tm{<prime>: <q>, ..., *: <q>}
//! ```
//!
//! In `tm{...}` primes that are not listed take the `*` value, or 1 when no
//! `*` entry is given.

use std::collections::BTreeMap;

use crate::coefficients::Field;
use crate::dirichlet::ArithFn;
use crate::error::{Error, Result};
use crate::monoid::{MonoidDescriptor, PrimeIndex};

/// Split `s` at top-level commas.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_prime(monoid: &MonoidDescriptor, s: &str) -> Result<PrimeIndex> {
    let a = monoid.parse_element(s)?;
    let mut support = a.support();
    match (support.next(), support.next(), a.lambda()) {
        (Some(p), None, 1) => Ok(p.clone()),
        _ => Err(Error::Parse(format!("{s:?} is not a prime of {monoid}"))),
    }
}

/// Parse an expression into a function on `monoid` with values in `field`.
pub fn parse_fn(monoid: &MonoidDescriptor, field: Field, text: &str) -> Result<ArithFn> {
    let s = text.trim();
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    match s {
        "e" => return Ok(ArithFn::identity(monoid, field)),
        "u" => return Ok(ArithFn::unit(monoid, field)),
        "mu" => return Ok(ArithFn::moebius(monoid, field)),
        "d" => return Ok(ArithFn::divisor_count(monoid, field)),
        "phi" => return ArithFn::euler_phi(monoid, field),
        "norm" => return ArithFn::norm(monoid, field),
        _ => {}
    }
    if let Some(k) = s.strip_prefix("sigma_") {
        let k: u32 = k.parse().map_err(|_| bad("sigma needs a nonnegative integer index"))?;
        return ArithFn::sigma(monoid, field, k);
    }
    if let Some(body) = s.strip_prefix("tm{") {
        let body = body.strip_suffix('}').ok_or_else(|| bad("unclosed brace"))?;
        let mut values = BTreeMap::new();
        let mut default = field.one();
        for entry in split_args(body).into_iter().filter(|t| !t.is_empty()) {
            let (key, value) = entry.rsplit_once(':').ok_or_else(|| bad("tm entries look like p:v"))?;
            let value = field.parse(value)?;
            if key.trim() == "*" {
                default = value;
            } else {
                values.insert(parse_prime(monoid, key)?, value);
            }
        }
        return ArithFn::totally_multiplicative(monoid, field, values, default);
    }
    let open = s.find('(').ok_or_else(|| Error::Parse(format!("unknown function {s:?}")))?;
    let head = &s[..open];
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| bad("unbalanced parentheses"))?;
    let args = split_args(inner);
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(bad(&format!("{head} takes {n} arguments"))) };
    match head {
        "inv" => {
            arity(1)?;
            parse_fn(monoid, field, args[0])?.dirichlet_inverse()
        }
        "conv" | "add" | "sub" => {
            arity(2)?;
            let f = parse_fn(monoid, field, args[0])?;
            let g = parse_fn(monoid, field, args[1])?;
            match head {
                "conv" => f.convolve(&g),
                "add" => f.add(&g),
                _ => f.sub(&g),
            }
        }
        "scale" => {
            arity(2)?;
            parse_fn(monoid, field, args[1])?.scale(&field.parse(args[0])?)
        }
        "pow" => {
            arity(2)?;
            let n: u32 = args[1].parse().map_err(|_| bad("pow needs a nonnegative integer"))?;
            Ok(parse_fn(monoid, field, args[0])?.pow(n))
        }
        "pi" => {
            arity(1)?;
            Ok(ArithFn::prime_indicator(monoid, field, parse_prime(monoid, args[0])?))
        }
        _ => Err(Error::Parse(format!("unknown function {head:?}"))),
    }
}
