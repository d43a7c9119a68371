//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational, Variable};
use crate::error::{Error, Result};

/// A power product `v1^e1 * v2^e2 * ...`, variables sorted ascending, every
/// exponent positive. Ordered graded-lexicographically: total degree first,
/// then lexicographic with the smallest variable most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
    degree: u32,
}

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new(), degree: 0 }
    }

    pub fn var(v: V, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial { factors: vec![(v, exp)], degree: exp }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let degree = map.values().sum();
        Monomial { factors: map.into_iter().collect(), degree }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: &V) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out, degree: self.degree + other.degree }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        let b = &other.factors;
        for (v, e) in &self.factors {
            if j < b.len() && b[j].0 < *v {
                return None;
            }
            if j < b.len() && b[j].0 == *v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial { factors: out, degree: self.degree - other.degree })
    }

    /// Removes variable `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: &V) -> (u32, Self) {
        match self.factors.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => {
                let mut rest = self.factors.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial { factors: rest, degree: self.degree - e })
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl<V: Variable> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Variable> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.factors.iter().zip(&other.factors) {
            match a.0.cmp(&b.0) {
                // `self` carries the smaller (more significant) variable.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl<V: Variable> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<V: Variable> fmt::Debug for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial over the rationals. No stored zero coefficients; the
/// empty map is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<V> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: Variable> Default for MultiPoly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variable> MultiPoly<V> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial<V>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<V> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &V) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::var(v.clone(), e - 1));
            out.add_term(mono, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluates with `lookup` supplying a value for every variable.
    pub fn eval_with<F>(&self, mut lookup: F) -> Result<Rational>
    where
        F: FnMut(&V) -> Option<Rational>,
    {
        let mut cache: BTreeMap<V, Vec<Rational>> = BTreeMap::new();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                if !cache.contains_key(v) {
                    let val = lookup(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                    cache.insert(v.clone(), vec![Rational::one(), val]);
                }
                let powers = cache.get_mut(v).unwrap();
                while powers.len() <= *e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                t *= &powers[*e as usize];
            }
            sum += t;
        }
        Ok(sum)
    }

    pub fn eval(&self, point: &BTreeMap<V, Rational>) -> Result<Rational> {
        self.eval_with(|v| point.get(v).cloned())
    }

    /// Replaces variables through `f` (which must be injective on the
    /// variables present for the result to keep its shape).
    pub fn map_vars<W: Variable>(&self, mut f: impl FnMut(&V) -> W) -> MultiPoly<W> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mono = Monomial::from_pairs(m.factors().iter().map(|(v, e)| (f(v), *e)));
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Composes with polynomial images of the variables; variables without
    /// an image are kept (mapped through `keep`).
    pub fn compose<W: Variable>(
        &self,
        mut image: impl FnMut(&V) -> Option<MultiPoly<W>>,
    ) -> Result<MultiPoly<W>> {
        let mut cache: BTreeMap<V, Vec<MultiPoly<W>>> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (v, e) in m.factors() {
                if !cache.contains_key(v) {
                    let img = image(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                    cache.insert(v.clone(), vec![MultiPoly::one(), img]);
                }
                let powers = cache.get_mut(v).unwrap();
                while powers.len() <= *e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                t = &t * &powers[*e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients in `v`: entry `i` is the coefficient of `v^i`.
    pub fn to_univariate(&self, v: &V) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(v: &V, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(v.clone(), i as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&shift), a.clone());
            }
        }
        out
    }

    /// Rational content: gcd of numerators over lcm of denominators,
    /// carrying the sign of the leading coefficient.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        let content = Rational::new(num, den);
        if self.leading_coefficient().is_negative() {
            -content
        } else {
            content
        }
    }

    /// `self / content(self)`: integer coefficients, positive leading one.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Scaled so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coefficient().recip())
    }
}

impl<V: Variable> fmt::Display for MultiPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl<V: Variable> fmt::Debug for MultiPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<V: Variable> From<Rational> for MultiPoly<V> {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a, V: Variable> Add<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn add(self, rhs: &MultiPoly<V>) -> MultiPoly<V> {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, V: Variable> Sub<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn sub(self, rhs: &MultiPoly<V>) -> MultiPoly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a, V: Variable> Mul<&'a MultiPoly<V>> for &'a MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn mul(self, rhs: &MultiPoly<V>) -> MultiPoly<V> {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Variable> Neg for &MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn neg(self) -> MultiPoly<V> {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<V: Variable> Neg for MultiPoly<V> {
    type Output = MultiPoly<V>;
    fn neg(self) -> MultiPoly<V> {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<V: Variable> $tr<MultiPoly<V>> for MultiPoly<V> {
            type Output = MultiPoly<V>;
            fn $method(self, rhs: MultiPoly<V>) -> MultiPoly<V> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
