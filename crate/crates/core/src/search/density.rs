use super::{first_candidate, SearchConfig};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::field::{diff_trdeg, DiffFieldPresentation, FieldElement};

/// A density step `a + c·p(b)` whose differential transcendence degree equals
/// that of the pair `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityResult {
    pub p: UniPoly,
    pub candidate: FieldElement,
    pub trdeg_pair: usize,
    pub trdeg_candidate: usize,
    /// Position of `p` in the candidate order.
    pub index: usize,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl DensityResult {
    pub fn a(&self) -> &FieldElement {
        &self.a
    }
    pub fn b(&self) -> &FieldElement {
        &self.b
    }
    pub fn factor(&self) -> &FieldElement {
        &self.c
    }

    /// Recomputes both transcendence degrees with symbolic rank and checks
    /// that the candidate is `a + c·p(b)`.
    pub fn revalidate(&self, field: &DiffFieldPresentation) -> Result<()> {
        let expected = &self.a + &(&self.c * &self.p.eval_at(&self.b));
        if expected != self.candidate {
            return Err(Error::InvalidCertificate("candidate is not a + c·p(b)".into()));
        }
        let opts = crate::field::RankOptions::symbolic();
        let pair = diff_trdeg(&[self.a.clone(), self.b.clone()], field, &opts)?.trdeg;
        let cand = diff_trdeg(std::slice::from_ref(&self.candidate), field, &opts)?.trdeg;
        if pair != self.trdeg_pair || cand != self.trdeg_candidate || cand != pair {
            return Err(Error::InvalidCertificate(format!(
                "transcendence degrees {cand} (candidate) and {pair} (pair) do not match the claimed {} and {}",
                self.trdeg_candidate, self.trdeg_pair
            )));
        }
        Ok(())
    }
}

/// First `p` in candidate order with `trdeg k⟨a + p(b)⟩ = trdeg k⟨a, b⟩`.
pub fn density_step(
    a: &FieldElement,
    b: &FieldElement,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<DensityResult> {
    search(a, b, &FieldElement::one(), field, cfg, false)
}

/// As [`density_step`] with candidates `a + c·p(b)`.
pub fn density_step_with_factor(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<DensityResult> {
    if c.is_zero() {
        return Err(Error::ZeroFactor);
    }
    search(a, b, c, field, cfg, false)
}

/// With `skip_zero`, `p = 0` is passed over; every other candidate is
/// nonconstant, so `a + p(b)` is then nonconstant too.
pub(crate) fn search(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
    skip_zero: bool,
) -> Result<DensityResult> {
    for e in [a, b, c] {
        field.check_element(e)?;
    }
    if !field.is_nonconstant(b)? {
        return Err(Error::ConstantB);
    }
    let target = diff_trdeg(&[a.clone(), b.clone()], field, &cfg.rank_options(0))?.trdeg;
    let (index, p, candidate) = first_candidate(cfg, |i, p| {
        if skip_zero && p.is_zero() {
            return Ok(None);
        }
        let cand = (a + &(c * &p.eval_at(b))).normalize();
        let r = diff_trdeg(std::slice::from_ref(&cand), field, &cfg.rank_options(i as u64 + 1))?.trdeg;
        Ok((r == target).then_some(cand))
    })?;
    let result = DensityResult {
        p,
        candidate,
        trdeg_pair: target,
        trdeg_candidate: target,
        index,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    if cfg.symbolic_confirm {
        result.revalidate(field)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, var, RatFunc};

    fn xy_field() -> DiffFieldPresentation {
        DiffFieldPresentation::new(vec![var("x"), var("y")], [(var("x"), RatFunc::one()), (var("y"), RatFunc::zero())])
            .unwrap()
    }
    fn x() -> FieldElement {
        RatFunc::var(var("x"))
    }
    fn y() -> FieldElement {
        RatFunc::var(var("y"))
    }

    #[test]
    fn squares_are_needed() {
        let field = xy_field();
        let r = density_step(&y(), &x(), &field, &SearchConfig::default()).unwrap();
        assert_eq!(r.p.to_string(), "t^2");
        assert_eq!(r.candidate, &y() + &x().pow(2));
        assert_eq!((r.trdeg_pair, r.trdeg_candidate), (2, 2));
        r.revalidate(&field).unwrap();
    }

    #[test]
    fn trivial_steps() {
        let t_field =
            DiffFieldPresentation::new(vec![var("t")], [(var("t"), RatFunc::one())]).unwrap();
        let t = RatFunc::var(var("t"));
        let r = density_step(&RatFunc::zero(), &t, &t_field, &SearchConfig::default()).unwrap();
        assert_eq!(r.p.to_string(), "t");
        assert_eq!(r.trdeg_candidate, 1);

        let field = xy_field();
        let a = &y() + &x().pow(2);
        let r = density_step(&a, &x(), &field, &SearchConfig::default()).unwrap();
        assert!(r.p.is_zero());
        assert_eq!(r.index, 0);
    }

    #[test]
    fn factor_variant() {
        let field = xy_field();
        let cfg = SearchConfig::default();
        let r = density_step_with_factor(&y(), &x(), &RatFunc::one(), &field, &cfg).unwrap();
        assert_eq!(r.p.to_string(), "t^2");
        let two = RatFunc::constant(rat(2, 1));
        let r = density_step_with_factor(&y(), &x(), &two, &field, &cfg).unwrap();
        assert_eq!(r.trdeg_candidate, 2);
        assert_eq!(r.candidate, &y() + &x().pow(2).scale(&rat(2, 1)));
        assert_eq!(
            density_step_with_factor(&y(), &x(), &RatFunc::zero(), &field, &cfg),
            Err(Error::ZeroFactor)
        );
        assert_eq!(density_step(&x(), &y(), &field, &cfg), Err(Error::ConstantB));
    }
}
