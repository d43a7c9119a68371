//! Exact arithmetic tower: rationals, sparse multivariate polynomials,
//! rational functions, dense univariate polynomials and the small amount of
//! exact linear algebra the rest of the crate needs.

mod gcd;
pub mod linalg;
mod poly;
mod ratfunc;
mod unipoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use gcd::{gcd_with_budget, GcdBudget, DEFAULT_GCD_BUDGET};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational the way canonical expressions print it: `3`, `-5/6`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Height of a rational: the larger of `|num|` and `den`.
pub fn rational_height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Anything that can index a polynomial variable.
pub trait Variable: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync {}

impl<T: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync> Variable for T {}

/// Identifier of a polynomial variable or field generator; matches
/// `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

impl VarName {
    pub fn new(name: &str) -> Result<Self> {
        if Self::is_valid(name) {
            Ok(VarName(Arc::from(name)))
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Shorthand for tests and literals; panics on an invalid identifier.
pub fn var(name: &str) -> VarName {
    VarName::new(name).unwrap_or_else(|_| panic!("invalid variable name {name:?}"))
}

