//! Arithmetic functions on the ideal monoids of Dedekind domains.
//!
//! An [`ArithFn`] is a function on a free commutative monoid (the positive
//! integers, a free monoid on finitely many primes, or the nonzero ideals of
//! a Dedekind domain) with values in `Q` or `F_p`. Under pointwise addition
//! and Dirichlet convolution they form a ring, which [`series::phi`] maps
//! onto truncated power series in one variable per prime.
//!
//! For a domain `A`, the totally multiplicative functions that do not vanish
//! identically are determined up to scaling by their zero sets. The
//! [`space`] module works with the resulting space of points, its Zariski-type
//! topology, stalks and the morphisms induced by ring maps.
//!
//! ```
//! use dedekind_arith::{parse_fn, Field, MonoidDescriptor};
//!
//! let z = MonoidDescriptor::positive_integers();
//! let f = parse_fn(&z, Field::Rationals, "conv(mu,u)").unwrap();
//! let at = z.parse_element("60").unwrap();
//! assert!(f.eval(&at).is_zero());
//! ```

pub mod cli;
pub mod coefficients;
pub mod dirichlet;
pub mod domains;
pub mod error;
pub mod expr;
pub mod monoid;
pub mod numtheory;
pub mod random;
pub mod series;
pub mod space;
pub mod valuation;
pub mod verify;

pub use coefficients::{Field, Scalar};
pub use dirichlet::{ArithFn, MonoidMap};
pub use domains::{DomainDescriptor, DomainElement, DomainHom};
pub use error::{Error, Result};
pub use expr::parse_fn;
pub use monoid::{MonoidDescriptor, MonoidElement, PrimeIndex};
pub use series::TruncatedSeries;
pub use space::{FiniteSpace, ZeroSetPoint};
