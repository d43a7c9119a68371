use std::fmt;

use num_traits::{One, Zero};

use super::{var, MultiPoly, RatFunc, Rational, VarName, Variable};

/// Dense univariate polynomial over the rationals; `coeffs[i]` multiplies
/// `t^i`. Trailing zeros are trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational function.
    pub fn eval_at<V: Variable>(&self, x: &RatFunc<V>) -> RatFunc<V> {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RatFunc::constant(c.clone());
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_multipoly<V: Variable>(&self, v: &V) -> MultiPoly<V> {
        let mut out = MultiPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out = &out + &MultiPoly::var(v.clone()).pow(i as u32).scale(c);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: MultiPoly<VarName> = self.to_multipoly(&var("t"));
        write!(f, "{p}")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_square() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.derivative(), UniPoly::from_ints(&[0, 2]));
        assert_eq!(p.nth_derivative(2), UniPoly::from_ints(&[2]));
        assert!(p.nth_derivative(3).is_zero());
        assert_eq!(p.to_string(), "t^2");
    }

    #[test]
    fn horner_matches_direct() {
        let p = UniPoly::from_ints(&[3, -1, 0, 2]);
        let x = Rational::from_integer(5.into());
        assert_eq!(p.eval_rational(&x), Rational::from_integer((3 - 5 + 250).into()));
    }
}
