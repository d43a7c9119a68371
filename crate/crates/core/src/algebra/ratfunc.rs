//! Quotients of multivariate polynomials.
//!
//! Values are not kept gcd-reduced: equality is decided by
//! cross-multiplication and [`RatFunc::normalize`] is an explicit size-control
//! step with a bounded gcd pass.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd_with_budget, GcdBudget, MultiPoly, Rational, Variable};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RatFunc<V> {
    num: MultiPoly<V>,
    den: MultiPoly<V>,
}

impl<V: Variable> RatFunc<V> {
    pub fn new(num: MultiPoly<V>, den: MultiPoly<V>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::tidy(num, den))
    }

    /// Folds a constant denominator into the numerator; zero becomes `0/1`.
    fn tidy(num: MultiPoly<V>, den: MultiPoly<V>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        match den.constant_value() {
            Some(c) if c.is_one() => RatFunc { num, den },
            Some(c) => RatFunc { num: num.scale(&c.recip()), den: MultiPoly::one() },
            None => RatFunc { num, den },
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn var(v: V) -> Self {
        RatFunc { num: MultiPoly::var(v), den: MultiPoly::one() }
    }

    pub fn numer(&self) -> &MultiPoly<V> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<V> {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly<V>, MultiPoly<V>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this equals, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly<V>> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        let d = self.den.constant_value()?;
        Some(self.num.constant_value()? / d)
    }

    pub fn variables(&self) -> std::collections::BTreeSet<V> {
        let mut vars = self.num.variables();
        vars.extend(self.den.variables());
        vars
    }

    pub fn contains_var(&self, v: &V) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::tidy(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::tidy(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self::tidy(self.num.pow(exp), self.den.pow(exp))
    }

    /// Formal partial derivative (quotient rule).
    pub fn partial_derivative(&self, v: &V) -> Self {
        let dn = self.num.partial_derivative(v);
        if self.den.is_constant() {
            return Self::tidy(dn, self.den.clone());
        }
        let dd = self.den.partial_derivative(v);
        if dd.is_zero() {
            return Self::tidy(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::tidy(num, self.den.pow(2))
    }

    /// Exact value at a point binding every variable.
    pub fn eval_at_point(&self, point: &BTreeMap<V, Rational>) -> Result<Rational> {
        self.eval_with(|v| point.get(v).cloned())
    }

    pub fn eval_with<F>(&self, mut lookup: F) -> Result<Rational>
    where
        F: FnMut(&V) -> Option<Rational>,
    {
        let d = self.den.eval_with(&mut lookup)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval_with(&mut lookup)? / d)
    }

    /// Substitutes rational functions for the bound variables; unbound
    /// variables stay as they are.
    pub fn substitute(&self, bindings: &BTreeMap<V, RatFunc<V>>) -> Result<RatFunc<V>> {
        self.compose(|v| Some(bindings.get(v).cloned().unwrap_or_else(|| RatFunc::var(v.clone()))))
    }

    /// Substitutes an image for every variable; a missing image is an
    /// [`Error::UnboundVariable`].
    pub fn compose<W: Variable>(
        &self,
        mut image: impl FnMut(&V) -> Option<RatFunc<W>>,
    ) -> Result<RatFunc<W>> {
        let mut cache = BTreeMap::new();
        let mut lookup = |v: &V| -> Result<RatFunc<W>> {
            if let Some(r) = cache.get(v) {
                return Ok(Clone::clone(r));
            }
            let r = image(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            cache.insert(v.clone(), r.clone());
            Ok(r)
        };
        let n = compose_poly(&self.num, &mut lookup)?;
        if self.den.is_one() {
            return Ok(n);
        }
        let d = compose_poly(&self.den, &mut lookup)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanished);
        }
        n.checked_div(&d)
    }

    pub fn map_vars<W: Variable>(&self, mut f: impl FnMut(&V) -> W) -> RatFunc<W> {
        RatFunc { num: self.num.map_vars(&mut f), den: self.den.map_vars(&mut f) }
    }

    /// Equivalent representative with rational content pulled out of the
    /// denominator and, if the gcd pass finishes within the default budget,
    /// common factors cancelled.
    pub fn normalize(&self) -> Self {
        self.normalize_with(&mut GcdBudget::default())
    }

    pub fn normalize_with(&self, budget: &mut GcdBudget) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let cn = self.num.content();
        let cd = self.den.content();
        let pn = self.num.scale(&cn.recip());
        let pd = self.den.scale(&cd.recip());
        let factor = cn / cd;
        let (pn, pd) = match gcd_with_budget(&pn, &pd, budget) {
            Some(g) if !g.is_constant() => match (pn.div_exact(&g), pd.div_exact(&g)) {
                (Some(a), Some(b)) => (a, b),
                _ => (pn, pd),
            },
            _ => (pn, pd),
        };
        Self::tidy(pn.scale(&factor), pd)
    }
}

/// `p(images)` assembled over a common denominator
/// `prod_v den(image_v)^deg_v(p)` so that no chain of fraction additions
/// occurs.
fn compose_poly<V: Variable, W: Variable>(
    p: &MultiPoly<V>,
    lookup: &mut impl FnMut(&V) -> Result<RatFunc<W>>,
) -> Result<RatFunc<W>> {
    if let Some(c) = p.constant_value() {
        return Ok(RatFunc::constant(c));
    }
    struct Powers<W> {
        degree: u32,
        num: Vec<MultiPoly<W>>,
        den: Vec<MultiPoly<W>>,
    }
    let mut table: BTreeMap<V, Powers<W>> = BTreeMap::new();
    for v in p.variables() {
        let img = lookup(&v)?;
        let degree = p.degree_in(&v);
        let mut num = vec![MultiPoly::one()];
        let mut den = vec![MultiPoly::one()];
        for i in 1..=degree as usize {
            num.push(&num[i - 1] * &img.num);
            if img.den.is_one() {
                den.push(MultiPoly::one());
            } else {
                den.push(&den[i - 1] * &img.den);
            }
        }
        table.insert(v, Powers { degree, num, den });
    }
    let mut total_den = MultiPoly::one();
    for pw in table.values() {
        total_den = &total_den * &pw.den[pw.degree as usize];
    }
    let mut total_num = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for (v, pw) in &table {
            let e = m.exponent(v) as usize;
            if e > 0 {
                t = &t * &pw.num[e];
            }
            let rest = pw.degree as usize - e;
            if rest > 0 && !pw.den[rest].is_one() {
                t = &t * &pw.den[rest];
            }
        }
        total_num = &total_num + &t;
    }
    Ok(RatFunc::tidy(total_num, total_den))
}

impl<V: Variable> PartialEq for RatFunc<V> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<V: Variable> Eq for RatFunc<V> {}

impl<V: Variable> From<MultiPoly<V>> for RatFunc<V> {
    fn from(p: MultiPoly<V>) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }
}

impl<V: Variable> From<Rational> for RatFunc<V> {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<V: Variable> fmt::Display for RatFunc<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<V: Variable> fmt::Debug for RatFunc<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add_sub<V: Variable>(a: &RatFunc<V>, b: &RatFunc<V>, negate: bool) -> RatFunc<V> {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RatFunc::tidy(&a.num + &bn, a.den.clone());
    }
    if a.den.is_one() {
        return RatFunc::tidy(&(&a.num * &b.den) + &bn, b.den.clone());
    }
    if b.den.is_one() {
        return RatFunc::tidy(&a.num + &(&bn * &a.den), a.den.clone());
    }
    // One denominator dividing the other is common for derivative towers.
    if let Some(q) = b.den.div_exact(&a.den) {
        return RatFunc::tidy(&(&a.num * &q) + &bn, b.den.clone());
    }
    if let Some(q) = a.den.div_exact(&b.den) {
        return RatFunc::tidy(&a.num + &(&bn * &q), a.den.clone());
    }
    RatFunc::tidy(&(&a.num * &b.den) + &(&bn * &a.den), &a.den * &b.den)
}

impl<'a, V: Variable> Add<&'a RatFunc<V>> for &'a RatFunc<V> {
    type Output = RatFunc<V>;
    fn add(self, rhs: &RatFunc<V>) -> RatFunc<V> {
        add_sub(self, rhs, false)
    }
}

impl<'a, V: Variable> Sub<&'a RatFunc<V>> for &'a RatFunc<V> {
    type Output = RatFunc<V>;
    fn sub(self, rhs: &RatFunc<V>) -> RatFunc<V> {
        add_sub(self, rhs, true)
    }
}

impl<'a, V: Variable> Mul<&'a RatFunc<V>> for &'a RatFunc<V> {
    type Output = RatFunc<V>;
    fn mul(self, rhs: &RatFunc<V>) -> RatFunc<V> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den == rhs.num {
            return RatFunc::tidy(self.num.clone(), rhs.den.clone());
        }
        if rhs.den == self.num {
            return RatFunc::tidy(rhs.num.clone(), self.den.clone());
        }
        RatFunc::tidy(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<V: Variable> Neg for &RatFunc<V> {
    type Output = RatFunc<V>;
    fn neg(self) -> RatFunc<V> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
