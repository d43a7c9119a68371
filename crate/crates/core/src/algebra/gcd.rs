//! Multivariate gcd over the rationals by recursive content / primitive part
//! and primitive pseudo-remainder sequences, one variable at a time.

use super::{MultiPoly, Variable};

/// Pseudo-division steps a single gcd computation may spend.
pub const DEFAULT_GCD_BUDGET: usize = 4_000;

/// Step counter shared by a whole (recursive) gcd computation.
#[derive(Debug, Clone)]
pub struct GcdBudget {
    remaining: usize,
}

impl GcdBudget {
    pub fn new(steps: usize) -> Self {
        GcdBudget { remaining: steps }
    }

    fn spend(&mut self) -> Option<()> {
        self.remaining = self.remaining.checked_sub(1)?;
        Some(())
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }
}

impl Default for GcdBudget {
    fn default() -> Self {
        Self::new(DEFAULT_GCD_BUDGET)
    }
}

/// Greatest common divisor normalized to integer coefficients with a
/// positive leading coefficient, or `None` when the budget runs out.
pub fn gcd_with_budget<V: Variable>(
    a: &MultiPoly<V>,
    b: &MultiPoly<V>,
    budget: &mut GcdBudget,
) -> Option<MultiPoly<V>> {
    if a.is_zero() {
        return Some(b.primitive_part());
    }
    if b.is_zero() {
        return Some(a.primitive_part());
    }
    if a.is_constant() || b.is_constant() {
        return Some(MultiPoly::one());
    }
    let vars_a = a.variables();
    let vars_b = b.variables();
    let main = vars_a.iter().chain(vars_b.iter()).min().cloned()?;
    if !vars_a.contains(&main) {
        let cb = content_in(b, &main, budget)?;
        return gcd_with_budget(a, &cb, budget);
    }
    if !vars_b.contains(&main) {
        let ca = content_in(a, &main, budget)?;
        return gcd_with_budget(&ca, b, budget);
    }

    let ca = content_in(a, &main, budget)?;
    let cb = content_in(b, &main, budget)?;
    let content = gcd_with_budget(&ca, &cb, budget)?;
    let pa = a.div_exact(&ca)?;
    let pb = b.div_exact(&cb)?;

    let (mut f, mut g) = if pa.degree_in(&main) >= pb.degree_in(&main) {
        (pa.to_univariate(&main), pb.to_univariate(&main))
    } else {
        (pb.to_univariate(&main), pa.to_univariate(&main))
    };
    loop {
        let r = pseudo_remainder(&f, &g, budget)?;
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // Nonzero constant remainder in `main`: primitive parts coprime.
            return Some(content.primitive_part());
        }
        let r_poly = MultiPoly::from_univariate(&main, &r);
        let rc = content_in(&r_poly, &main, budget)?;
        let r_pp = r_poly.div_exact(&rc)?;
        f = g;
        g = r_pp.to_univariate(&main);
    }
    let g_poly = MultiPoly::from_univariate(&main, &g);
    let gc = content_in(&g_poly, &main, budget)?;
    let g_pp = g_poly.div_exact(&gc)?;
    Some((&content * &g_pp).primitive_part())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in<V: Variable>(p: &MultiPoly<V>, v: &V, budget: &mut GcdBudget) -> Option<MultiPoly<V>> {
    let mut acc = MultiPoly::zero();
    for c in p.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_with_budget(&acc, &c, budget)?;
        if acc.is_one() {
            break;
        }
    }
    Some(acc)
}

/// `prem(f, g)` on coefficient vectors (index = power of the main variable);
/// returns the empty vector for zero.
fn pseudo_remainder<V: Variable>(
    f: &[MultiPoly<V>],
    g: &[MultiPoly<V>],
    budget: &mut GcdBudget,
) -> Option<Vec<MultiPoly<V>>> {
    let mut r: Vec<MultiPoly<V>> = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lcg = &g[dg];
    while !r.is_empty() && r.len() > dg {
        budget.spend()?;
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = lcg * &*c;
        }
        for (i, gc) in g.iter().enumerate() {
            let t = &lcr * gc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
    }
    Some(r)
}

fn trim<V: Variable>(r: &mut Vec<MultiPoly<V>>) {
    while r.last().is_some_and(MultiPoly::is_zero) {
        r.pop();
    }
}
