//! Differential polynomials over ℚ.
//!
//! A differential polynomial is an ordinary [`MultiPoly`] whose variables are
//! [`DerivSymbol`]s `(base, order)`. The Λ-chain used by the density argument
//! lives in the same variable space under a reserved base name: `Λ_i` is the
//! symbol `(lambda_base, i)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{MultiPoly, RatFunc, UniPoly, VarName};
use crate::error::{Error, Result};
use crate::field::{DiffFieldPresentation, FieldElement};

/// `base^(order)`; order 0 is the indeterminate itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivSymbol {
    pub base: VarName,
    pub order: u32,
}

impl DerivSymbol {
    pub fn new(base: VarName, order: u32) -> Self {
        DerivSymbol { base, order }
    }

    pub fn next(&self) -> Self {
        DerivSymbol { base: self.base.clone(), order: self.order + 1 }
    }
}

impl fmt::Display for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            0..=3 => write!(f, "{}{}", self.base, "'".repeat(self.order as usize)),
            n => write!(f, "{}^({n})", self.base),
        }
    }
}

impl fmt::Debug for DerivSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type DiffPoly = MultiPoly<DerivSymbol>;
pub type DiffRatFunc = RatFunc<DerivSymbol>;

/// The differential polynomial consisting of the single symbol `base^(order)`.
pub fn dvar(base: &VarName, order: u32) -> DiffPoly {
    MultiPoly::var(DerivSymbol::new(base.clone(), order))
}

/// Embeds a field element, reading each generator `t` as the symbol `t`.
pub fn lift_element(f: &FieldElement) -> DiffRatFunc {
    f.map_vars(|v| DerivSymbol::new(v.clone(), 0))
}

/// Applies the formal derivation `base^(i) ↦ base^(i+1)` `times` times.
pub fn formal_derive(q: &DiffPoly, times: u32) -> DiffPoly {
    (0..times).fold(q.clone(), |acc, _| derive_once(&acc))
}

fn derive_once(q: &DiffPoly) -> DiffPoly {
    let mut out = MultiPoly::zero();
    for v in q.variables() {
        out = &out + &(&q.partial_derivative(&v) * &MultiPoly::var(v.next()));
    }
    out
}

/// `Σ_{i=0..=n} Λ_{i+1}·∂q/∂Λ_i`.
pub fn t_operator(q: &DiffPoly, n: u32, lambda_base: &VarName) -> DiffPoly {
    let mut out = MultiPoly::zero();
    for i in 0..=n {
        let sym = DerivSymbol::new(lambda_base.clone(), i);
        let d = q.partial_derivative(&sym);
        if !d.is_zero() {
            out = &out + &(&d * &MultiPoly::var(sym.next()));
        }
    }
    out
}

/// Image of `Λ_i` under the Λ-chain derivation is `weight · Λ_{i+1}`.
#[derive(Debug, Clone)]
pub enum LambdaWeight {
    /// A symbol of the differential polynomial ring, typically `b'`.
    Symbol(DerivSymbol),
    /// A concrete field element (generators read as order-0 symbols).
    Element(FieldElement),
}

#[derive(Debug, Clone)]
pub struct LambdaConfig {
    pub lambda_base: VarName,
    pub weight: LambdaWeight,
}

impl LambdaConfig {
    /// The chain `(Λ_i)' = b'·Λ_{i+1}` with `b'` kept symbolic.
    pub fn symbolic(lambda_base: VarName, b: &VarName) -> Self {
        LambdaConfig {
            lambda_base,
            weight: LambdaWeight::Symbol(DerivSymbol::new(b.clone(), 1)),
        }
    }
}

/// The derivation acting formally on ordinary symbols and as
/// `Λ_i ↦ weight·Λ_{i+1}` on Λ-symbols.
pub fn lambda_derive(q: &DiffPoly, cfg: &LambdaConfig) -> DiffRatFunc {
    let mut ordinary = MultiPoly::zero();
    let mut chain = MultiPoly::zero();
    for v in q.variables() {
        let term = &q.partial_derivative(&v) * &MultiPoly::var(v.next());
        if v.base == cfg.lambda_base {
            chain = &chain + &term;
        } else {
            ordinary = &ordinary + &term;
        }
    }
    let weight = match &cfg.weight {
        LambdaWeight::Symbol(s) => RatFunc::var(s.clone()),
        LambdaWeight::Element(f) => lift_element(f),
    };
    &RatFunc::from(ordinary) + &(&weight * &RatFunc::from(chain))
}

/// Resolves every symbol of a differential expression to a field element.
///
/// `Λ_i ↦ p^{(i)}(b)` when a Λ-chain is given; any other `base^(i)` maps to
/// the `i`-th derivative of the element bound to `base`, or of the generator
/// named `base`.
struct SymbolResolver<'a> {
    field: &'a DiffFieldPresentation,
    bindings: &'a BTreeMap<VarName, FieldElement>,
    chain: Option<(&'a VarName, &'a UniPoly, &'a FieldElement)>,
    towers: BTreeMap<VarName, Vec<FieldElement>>,
}

impl SymbolResolver<'_> {
    fn resolve(&mut self, s: &DerivSymbol) -> Result<FieldElement> {
        if let Some((base, p, b)) = self.chain {
            if &s.base == base {
                return Ok(p.nth_derivative(s.order as usize).eval_at(b));
            }
        }
        let seed = match self.bindings.get(&s.base) {
            Some(f) => f.clone(),
            None if self.field.has_generator(&s.base) => RatFunc::var(s.base.clone()),
            None => return Err(Error::UnboundVariable(s.base.to_string())),
        };
        let tower = self.towers.entry(s.base.clone()).or_insert_with(|| vec![seed]);
        while tower.len() <= s.order as usize {
            let next = self.field.derive(tower.last().unwrap())?;
            tower.push(next);
        }
        Ok(tower[s.order as usize].clone())
    }

    fn apply(&mut self, q: &DiffRatFunc) -> Result<FieldElement> {
        let mut images = BTreeMap::new();
        for s in q.variables() {
            let img = self.resolve(&s)?;
            images.insert(s, img);
        }
        let out = q.compose(|s| images.get(s).cloned())?;
        Ok(out.normalize())
    }
}

/// `φ_p`: substitutes `Λ_i ↦ p^{(i)}(b)` and every other symbol through the
/// bindings (or the field's generators).
pub fn phi_p(
    q: &DiffRatFunc,
    lambda_base: &VarName,
    p: &UniPoly,
    b: &FieldElement,
    bindings: &BTreeMap<VarName, FieldElement>,
    field: &DiffFieldPresentation,
) -> Result<FieldElement> {
    SymbolResolver { field, bindings, chain: Some((lambda_base, p, b)), towers: BTreeMap::new() }
        .apply(q)
}

/// Evaluates `q` with `base^(i)` replaced by the `i`-th derivative of the
/// element bound to `base`.
pub fn diff_substitute(
    q: &DiffPoly,
    bindings: &BTreeMap<VarName, FieldElement>,
    field: &DiffFieldPresentation,
) -> Result<FieldElement> {
    SymbolResolver { field, bindings, chain: None, towers: BTreeMap::new() }
        .apply(&RatFunc::from(q.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, var};

    fn x(order: u32) -> DiffPoly {
        dvar(&var("x"), order)
    }
    fn y(order: u32) -> DiffPoly {
        dvar(&var("y"), order)
    }
    fn lam(order: u32) -> DiffPoly {
        dvar(&var("L"), order)
    }
    fn c(n: i64) -> DiffPoly {
        MultiPoly::constant(rat(n, 1))
    }

    #[test]
    fn symbol_rendering() {
        let s = |o| DerivSymbol::new(var("x"), o).to_string();
        assert_eq!([s(0), s(1), s(2), s(3), s(4), s(5)], ["x", "x'", "x''", "x'''", "x^(4)", "x^(5)"]);
    }

    #[test]
    fn formal_derivative_examples() {
        assert_eq!(formal_derive(&x(0), 1), x(1));
        assert_eq!(formal_derive(&x(0).pow(2), 1), &c(2) * &(&x(0) * &x(1)));
        let q = &x(0) * &y(1);
        assert_eq!(formal_derive(&q, 1), &(&x(1) * &y(1)) + &(&x(0) * &y(2)));
        assert_eq!(formal_derive(&q, 2), formal_derive(&formal_derive(&q, 1), 1));
    }

    #[test]
    fn lambda_chain_examples() {
        let cfg = LambdaConfig::symbolic(var("L"), &var("b"));
        let b1 = dvar(&var("b"), 1);
        assert_eq!(lambda_derive(&lam(0), &cfg), RatFunc::from(&b1 * &lam(1)));
        assert_eq!(
            lambda_derive(&lam(0).pow(2), &cfg),
            RatFunc::from(&c(2) * &(&b1 * &(&lam(0) * &lam(1))))
        );
        assert_eq!(
            lambda_derive(&(&x(0) + &lam(0)), &cfg),
            RatFunc::from(&x(1) + &(&b1 * &lam(1)))
        );
    }

    #[test]
    fn t_operator_examples() {
        let l = var("L");
        assert_eq!(t_operator(&lam(0), 0, &l), lam(1));
        assert_eq!(t_operator(&(&lam(0) * &lam(1)), 1, &l), &lam(1).pow(2) + &(&lam(0) * &lam(2)));
        assert!(t_operator(&(&x(0) * &y(2)), 3, &l).is_zero());
    }

    fn t_field() -> DiffFieldPresentation {
        DiffFieldPresentation::new(vec![var("t")], [(var("t"), RatFunc::one())]).unwrap()
    }

    #[test]
    fn phi_p_examples() {
        let field = t_field();
        let l = var("L");
        let b: FieldElement = RatFunc::var(var("t"));
        let none = BTreeMap::new();
        let sq = UniPoly::from_ints(&[0, 0, 1]);
        let phi = |q: &DiffPoly, p: &UniPoly| {
            phi_p(&RatFunc::from(q.clone()), &l, p, &b, &none, &field).unwrap()
        };
        assert_eq!(phi(&lam(0), &sq), b.pow(2));
        assert_eq!(phi(&lam(1), &sq), b.scale(&rat(2, 1)));
        assert_eq!(phi(&lam(2), &sq), RatFunc::constant(rat(2, 1)));
        let id = UniPoly::from_ints(&[0, 1]);
        assert_eq!(phi(&lam(0), &id), b);
        assert_eq!(phi(&lam(1), &id), RatFunc::one());
        assert!(phi(&lam(2), &id).is_zero());

        let a = &b.pow(3) + &RatFunc::one();
        let bound = BTreeMap::from([(var("x"), a.clone())]);
        let got = phi_p(&RatFunc::from(&lam(0) + &x(0)), &l, &sq, &b, &bound, &field).unwrap();
        assert_eq!(got, &b.pow(2) + &a);
    }

    #[test]
    fn diff_substitute_examples() {
        let field = t_field();
        let t: FieldElement = RatFunc::var(var("t"));
        let bind = |f: FieldElement| BTreeMap::from([(var("x"), f)]);
        assert_eq!(diff_substitute(&x(1), &bind(t.clone()), &field).unwrap(), RatFunc::one());
        assert_eq!(
            diff_substitute(&x(2), &bind(t.pow(2)), &field).unwrap(),
            RatFunc::constant(rat(2, 1))
        );
        let yfield = DiffFieldPresentation::new(vec![var("y")], [(var("y"), RatFunc::zero())]).unwrap();
        let yy: FieldElement = RatFunc::var(var("y"));
        assert!(diff_substitute(&x(1), &bind(yy), &yfield).unwrap().is_zero());
        assert!(matches!(
            diff_substitute(&y(0), &BTreeMap::new(), &field),
            Err(Error::UnboundVariable(_))
        ));
    }
}
