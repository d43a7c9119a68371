use std::collections::BTreeMap;

use super::{DiffFieldPresentation, FieldElement};
use crate::algebra::{UniPoly, VarName};
use crate::diffpoly::{diff_substitute, DiffPoly};
use crate::error::{Error, Result};
use crate::search::{first_candidate, SearchConfig};

/// Finds `p ∈ ℚ[t]` with `q|_{x = p(f)} ≠ 0` for a nonzero differential
/// polynomial `q` in one indeterminate and a nonconstant `f`, scanning the
/// canonical candidate order.
pub fn ritt_witness(
    q: &DiffPoly,
    f: &FieldElement,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<UniPoly> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !field.is_nonconstant(f)? {
        return Err(Error::ConstantElement);
    }
    let bases: std::collections::BTreeSet<VarName> = q.variables().into_iter().map(|s| s.base).collect();
    if bases.len() > 1 {
        return Err(Error::ArgumentOutOfRange(format!(
            "expected one differential indeterminate, found {}",
            bases.len()
        )));
    }
    let base = bases.into_iter().next();
    let (_, p, ()) = first_candidate(cfg, |_, p| {
        let mut bindings = BTreeMap::new();
        if let Some(b) = &base {
            bindings.insert(b.clone(), p.eval_at(f));
        }
        let value = diff_substitute(q, &bindings, field)?;
        Ok((!value.is_zero()).then_some(()))
    })?;
    Ok(p)
}
