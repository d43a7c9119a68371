//! Presented differential fields `k(t1, …, tm)` with the derivation given on
//! the generators.

mod membership;
mod ritt;
mod trdeg;

pub(crate) use trdeg::mix_seed;

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{MultiPoly, RatFunc, VarName};
use crate::error::{Error, Result};

pub use membership::{member_of_tower, tower_var, MembershipCertificate};
pub use ritt::ritt_witness;
pub use trdeg::{alg_trdeg, alg_trdeg_with_witness, diff_trdeg, RankMethod, RankOptions, TrdegReport};

/// An element of a presented field: a rational function in its generators.
pub type FieldElement = RatFunc<VarName>;

/// A point assigning a rational value to every generator.
pub type Point = BTreeMap<VarName, crate::algebra::Rational>;

#[derive(Debug, Clone, PartialEq)]
pub struct DiffFieldPresentation {
    generators: Vec<VarName>,
    derivation: BTreeMap<VarName, FieldElement>,
}

impl DiffFieldPresentation {
    /// Validates that every generator has exactly one derivation value and
    /// that the values only mention generators.
    pub fn new(
        generators: Vec<VarName>,
        derivation: impl IntoIterator<Item = (VarName, FieldElement)>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyInput("generators"));
        }
        let known: BTreeSet<&VarName> = generators.iter().collect();
        if known.len() != generators.len() {
            return Err(Error::ArgumentOutOfRange("duplicate generator".into()));
        }
        let mut map = BTreeMap::new();
        for (v, d) in derivation {
            if !known.contains(&v) {
                return Err(Error::UnboundVariable(v.to_string()));
            }
            if let Some(bad) = d.variables().into_iter().find(|w| !known.contains(w)) {
                return Err(Error::UnboundVariable(bad.to_string()));
            }
            if map.insert(v.clone(), d).is_some() {
                return Err(Error::ArgumentOutOfRange(format!("two derivations for `{v}`")));
            }
        }
        if let Some(missing) = generators.iter().find(|g| !map.contains_key(*g)) {
            return Err(Error::ArgumentOutOfRange(format!("no derivation for `{missing}`")));
        }
        Ok(DiffFieldPresentation { generators, derivation: map })
    }

    pub fn generators(&self) -> &[VarName] {
        &self.generators
    }

    pub fn has_generator(&self, v: &VarName) -> bool {
        self.derivation.contains_key(v)
    }

    pub fn derivation_of(&self, v: &VarName) -> Option<&FieldElement> {
        self.derivation.get(v)
    }

    /// The generator `v` as a field element.
    pub fn generator(&self, v: &VarName) -> Result<FieldElement> {
        if self.has_generator(v) {
            Ok(RatFunc::var(v.clone()))
        } else {
            Err(Error::UnboundVariable(v.to_string()))
        }
    }

    /// Checks that `f` only mentions generators of this field.
    pub fn check_element(&self, f: &FieldElement) -> Result<()> {
        match f.variables().into_iter().find(|v| !self.has_generator(v)) {
            Some(v) => Err(Error::UnboundVariable(v.to_string())),
            None => Ok(()),
        }
    }

    fn derive_poly(&self, p: &MultiPoly<VarName>) -> FieldElement {
        let mut acc = RatFunc::zero();
        for v in p.variables() {
            let dv = &self.derivation[&v];
            if dv.is_zero() {
                continue;
            }
            acc = &acc + &(&RatFunc::from(p.partial_derivative(&v)) * dv);
        }
        acc
    }

    /// `f'` by the chain rule `Σ ∂f/∂t_i · t_i'`, normalized.
    pub fn derive(&self, f: &FieldElement) -> Result<FieldElement> {
        let dn = self.derive_poly(f.numer());
        if f.is_polynomial() {
            let c = f.denom().constant_value().expect("polynomial element");
            return Ok(dn.scale(&c.recip()).normalize());
        }
        let dd = self.derive_poly(f.denom());
        let n = RatFunc::from(f.numer().clone());
        let d = RatFunc::from(f.denom().clone());
        let top = &(&dn * &d) - &(&n * &dd);
        Ok(top.checked_div(&d.pow(2)).map_err(|_| Error::DenominatorVanished)?.normalize())
    }

    /// `f^(times)`.
    pub fn derive_element(&self, f: &FieldElement, times: u32) -> Result<FieldElement> {
        let mut cur = f.clone();
        for _ in 0..times {
            cur = self.derive(&cur)?;
        }
        Ok(cur)
    }

    /// `[f, f', …, f^(up_to)]`.
    pub fn prolongation(&self, f: &FieldElement, up_to: u32) -> Result<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(up_to as usize + 1);
        out.push(f.clone());
        for _ in 0..up_to {
            let next = self.derive(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn is_nonconstant(&self, f: &FieldElement) -> Result<bool> {
        Ok(!self.derive(f)?.is_zero())
    }
}
