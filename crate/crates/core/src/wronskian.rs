//! Symbolic Wronskians and the `W_{k,l}` family.
//!
//! `W_{k,l}(x, y)` is the Wronskian of `x − y, x² − y², …, x^{k+1} − y^{k+1}`
//! with the `l`-th column removed. It is affine in the top-order symbols:
//! `W = A + x^(k−1)·B + y^(k−1)·C`, and for `k ≥ 3` there is a `D` with
//! `B = −y'·D`, `C = x'·D`.

use crate::algebra::linalg::{bareiss_determinant, cofactor_determinant};
use crate::algebra::{var, MultiPoly, VarName};
use crate::diffpoly::{dvar, formal_derive, DerivSymbol, DiffPoly};
use crate::error::{Error, Result};
use crate::field::{DiffFieldPresentation, FieldElement};
use crate::par::{self, Exec};

/// The matrix whose `(i, j)` entry is the `i`-th formal derivative of source
/// `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WronskianMatrix {
    entries: Vec<Vec<DiffPoly>>,
    sources: Vec<DiffPoly>,
}

impl WronskianMatrix {
    pub fn new(sources: &[DiffPoly]) -> Self {
        let n = sources.len();
        let mut rows = vec![sources.to_vec()];
        for i in 1..n {
            rows.push(rows[i - 1].iter().map(|f| formal_derive(f, 1)).collect());
        }
        WronskianMatrix { entries: if n == 0 { Vec::new() } else { rows }, sources: sources.to_vec() }
    }

    pub fn entries(&self) -> &[Vec<DiffPoly>] {
        &self.entries
    }

    pub fn sources(&self) -> &[DiffPoly] {
        &self.sources
    }

    pub fn determinant(&self) -> DiffPoly {
        bareiss_determinant(&self.entries)
    }

    /// Laplace expansion; the independent check for small sizes.
    pub fn cofactor_determinant(&self) -> DiffPoly {
        cofactor_determinant(&self.entries)
    }
}

/// `wronsk(f_1, …, f_N)` of differential polynomials.
pub fn wronskian(sources: &[DiffPoly]) -> DiffPoly {
    WronskianMatrix::new(sources).determinant()
}

/// `wronsk(f_1, …, f_N)` of elements of a presented field.
pub fn wronskian_elements(sources: &[FieldElement], field: &DiffFieldPresentation) -> Result<FieldElement> {
    let n = sources.len();
    let mut rows: Vec<Vec<FieldElement>> = vec![sources.to_vec()];
    for i in 1..n {
        let next = rows[i - 1].iter().map(|f| field.derive(f)).collect::<Result<_>>()?;
        rows.push(next);
    }
    if n == 0 {
        rows.clear();
    }
    Ok(bareiss_determinant(&rows).normalize())
}

fn x_sym(order: u32) -> DerivSymbol {
    DerivSymbol::new(var("x"), order)
}
fn y_sym(order: u32) -> DerivSymbol {
    DerivSymbol::new(var("y"), order)
}

/// The sources `x^j − y^j`, `j = 1..=k+1`, of the `W_{k,l}` family.
pub fn wkl_sources(k: usize) -> Vec<DiffPoly> {
    let (x, y) = (dvar(&var("x"), 0), dvar(&var("y"), 0));
    (1..=k as u32 + 1).map(|j| &x.pow(j) - &y.pow(j)).collect()
}

fn check_kl(k: usize, l: usize) -> Result<()> {
    if k < 2 || !(1..=k + 1).contains(&l) {
        return Err(Error::ArgumentOutOfRange(format!("W_{{{k},{l}}} needs k >= 2 and 1 <= l <= k + 1")));
    }
    Ok(())
}

fn wkl_matrix(k: usize, l: usize) -> WronskianMatrix {
    let mut sources = wkl_sources(k);
    sources.remove(l - 1);
    WronskianMatrix::new(&sources)
}

/// `W_{k,l}(x, y)`.
pub fn build_wkl(k: usize, l: usize) -> Result<DiffPoly> {
    check_kl(k, l)?;
    Ok(wkl_matrix(k, l).determinant())
}

/// `W_{k,l}` by cofactor expansion.
pub fn build_wkl_cofactor(k: usize, l: usize) -> Result<DiffPoly> {
    check_kl(k, l)?;
    Ok(wkl_matrix(k, l).cofactor_determinant())
}

/// `A + x^(k−1)·B + y^(k−1)·C` split of `W_{k,l}`, with `D` for `k ≥ 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct WklDecomposition {
    pub k: usize,
    pub l: usize,
    pub w: DiffPoly,
    pub a: DiffPoly,
    pub b: DiffPoly,
    pub c: DiffPoly,
    pub d: Option<DiffPoly>,
}

impl WklDecomposition {
    /// `A + x^(k−1)·B + y^(k−1)·C`.
    pub fn reassemble(&self) -> DiffPoly {
        let top = self.k as u32 - 1;
        let xb = &MultiPoly::var(x_sym(top)) * &self.b;
        let yc = &MultiPoly::var(y_sym(top)) * &self.c;
        &(&self.a + &xb) + &yc
    }
}

fn max_order(p: &DiffPoly) -> Option<u32> {
    p.variables().into_iter().map(|s| s.order).max()
}

pub fn decompose_wkl(k: usize, l: usize) -> Result<WklDecomposition> {
    let w = build_wkl(k, l)?;
    let fail = |reason: &str| Error::DecompositionFailed { k, l, reason: reason.to_string() };
    let top = k as u32 - 1;
    let (xt, yt) = (x_sym(top), y_sym(top));
    if w.degree_in(&xt) > 1 || w.degree_in(&yt) > 1 {
        return Err(fail("W is not affine in the top-order symbols"));
    }
    let b = w.partial_derivative(&xt);
    let c = w.partial_derivative(&yt);
    if b.contains_var(&yt) || c.contains_var(&xt) {
        return Err(fail("W has a mixed top-order term"));
    }
    let a = &(&w - &(&MultiPoly::var(xt.clone()) * &b)) - &(&MultiPoly::var(yt.clone()) * &c);
    if [&a, &b, &c].iter().any(|p| max_order(p).is_some_and(|o| o > k as u32 - 2)) {
        return Err(fail("A, B or C involves a derivative of order above k - 2"));
    }
    let d = if k >= 3 {
        let minus_y1 = -&MultiPoly::var(y_sym(1));
        let d = b.div_exact(&minus_y1).ok_or_else(|| fail("B is not divisible by -y'"))?;
        if &MultiPoly::var(x_sym(1)) * &d != c {
            return Err(fail("C differs from x'·D"));
        }
        Some(d)
    } else {
        None
    };
    Ok(WklDecomposition { k, l, w, a, b, c, d })
}

/// `A_l·D_{k+1} − A_{k+1}·D_l`.
fn corollary_expression(lower: &WklDecomposition, last: &WklDecomposition) -> DiffPoly {
    let (dl, dk) = (lower.d.as_ref().expect("k >= 3"), last.d.as_ref().expect("k >= 3"));
    &(&lower.a * dk) - &(&last.a * dl)
}

/// Least `l ∈ [1, k]` with `A_l·D_{k+1} − A_{k+1}·D_l ≠ 0`.
pub fn corollary_witness(k: usize) -> Result<usize> {
    if k < 3 {
        return Err(Error::ArgumentOutOfRange(format!("the corollary needs k >= 3, got {k}")));
    }
    let last = decompose_wkl(k, k + 1)?;
    for l in 1..=k {
        let lower = decompose_wkl(k, l)?;
        if !corollary_expression(&lower, &last).is_zero() {
            return Ok(l);
        }
    }
    Err(Error::NoWitness { k })
}

/// The determinant of `W_{2,3}` and `W_{2,2}` as linear forms in `(x', y')`.
pub fn k2_determinant_check() -> Result<DiffPoly> {
    let w23 = decompose_wkl(2, 3)?;
    let w22 = decompose_wkl(2, 2)?;
    Ok(&(&w23.b * &w22.c) - &(&w23.c * &w22.b))
}

/// `p(x, y)` with `y` replaced by `x` at every order.
pub fn collapse_y(p: &DiffPoly) -> DiffPoly {
    p.map_vars(|s| if s.base.as_str() == "y" { DerivSymbol::new(var("x"), s.order) } else { s.clone() })
}

/// One row of the lemma table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl LemmaCheck {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        LemmaCheck { name: name.into(), pass, detail: detail.into() }
    }
}

fn xy_poly(f: impl Fn(&DiffPoly, &DiffPoly) -> DiffPoly) -> DiffPoly {
    f(&dvar(&var("x"), 0), &dvar(&var("y"), 0))
}

fn closed_form_checks() -> Vec<LemmaCheck> {
    let (x1, y1) = (dvar(&var("x"), 1), dvar(&var("y"), 1));
    let c = |n: i64| MultiPoly::constant(crate::algebra::rat_int(n));
    let diff = xy_poly(|x, y| x - y);
    let w23 = &diff.pow(2) * &(&x1 + &y1);
    let w22 = xy_poly(|x, y| {
        let first = &(&(&c(2) * &x.pow(2)) - &(x * y)) - &y.pow(2);
        let second = &(&x.pow(2) + &(x * y)) - &(&c(2) * &y.pow(2));
        &(x - y) * &(&(&x1 * &first) + &(&y1 * &second))
    });
    let mut out = Vec::new();
    for (name, l, expected) in [("W_{2,3} = (x - y)^2 (x' + y')", 3, w23), ("W_{2,2} closed form", 2, w22)] {
        match build_wkl(2, l) {
            Ok(w) => out.push(LemmaCheck::new(name, w == expected, format!("W = {w}"))),
            Err(e) => out.push(LemmaCheck::new(name, false, e.to_string())),
        }
    }
    let expected = -&diff.pow(5);
    match k2_determinant_check() {
        Ok(det) => out.push(LemmaCheck::new("k = 2 (x', y') determinant = -(x - y)^5", det == expected, format!("det = {det}"))),
        Err(e) => out.push(LemmaCheck::new("k = 2 (x', y') determinant = -(x - y)^5", false, e.to_string())),
    }
    out
}

fn grid_checks(k: usize, l: usize) -> Vec<LemmaCheck> {
    let tag = format!("W_{{{k},{l}}}");
    let mut out = Vec::new();
    let w = match build_wkl(k, l) {
        Ok(w) => w,
        Err(e) => return vec![LemmaCheck::new(format!("{tag} build"), false, e.to_string())],
    };
    if k <= 5 {
        let other = build_wkl_cofactor(k, l).expect("validated");
        out.push(LemmaCheck::new(format!("{tag} Bareiss = cofactor"), other == w, format!("{} terms", w.num_terms())));
    }
    let collapsed = collapse_y(&w);
    out.push(LemmaCheck::new(format!("{tag}(x, x) = 0"), collapsed.is_zero(), String::new()));
    match decompose_wkl(k, l) {
        Ok(dec) => {
            let ok = dec.reassemble() == dec.w;
            let detail = match &dec.d {
                Some(d) => format!("B = -y'·D, C = x'·D, D has {} terms", d.num_terms()),
                None => format!("A = {}, B = {}, C = {}", dec.a, dec.b, dec.c),
            };
            out.push(LemmaCheck::new(format!("{tag} = A + x^(k-1) B + y^(k-1) C"), ok, detail));
        }
        Err(e) => out.push(LemmaCheck::new(format!("{tag} = A + x^(k-1) B + y^(k-1) C"), false, e.to_string())),
    }
    out
}

fn nondegeneracy_check(k: usize) -> LemmaCheck {
    let t = var("t");
    let field = DiffFieldPresentation::new(vec![t.clone()], [(t.clone(), FieldElement::one())]).expect("valid field");
    let sources: Vec<FieldElement> = (1..=k as u32).map(|j| FieldElement::var(t.clone()).pow(j)).collect();
    let name = format!("wronsk(t, ..., t^{k}) != 0");
    match wronskian_elements(&sources, &field) {
        Ok(w) => LemmaCheck::new(name, !w.is_zero(), format!("= {w}")),
        Err(e) => LemmaCheck::new(name, false, e.to_string()),
    }
}

/// Every Wronskian identity for `k = 2..=k_max`, one row per instance.
pub fn verify_lemmas(k_max: usize, exec: Exec) -> Result<Vec<LemmaCheck>> {
    if k_max < 2 {
        return Err(Error::ArgumentOutOfRange(format!("k_max must be at least 2, got {k_max}")));
    }
    let mut rows = closed_form_checks();
    let grid: Vec<(usize, usize)> = (2..=k_max).flat_map(|k| (1..=k + 1).map(move |l| (k, l))).collect();
    for checks in par::map(exec, &grid, |&(k, l)| grid_checks(k, l)) {
        rows.extend(checks);
    }
    let ks: Vec<usize> = (3..=k_max).collect();
    for (k, res) in ks.iter().zip(par::map(exec, &ks, |&k| corollary_witness(k))) {
        let name = format!("corollary witness, k = {k}");
        rows.push(match res {
            Ok(l) => LemmaCheck::new(name, true, format!("l = {l}")),
            Err(e) => LemmaCheck::new(name, false, e.to_string()),
        });
    }
    let ns: Vec<usize> = (1..=k_max + 1).collect();
    rows.extend(par::map(exec, &ns, |&k| nondegeneracy_check(k)));
    Ok(rows)
}

/// Names `x`, `y` used by the `W_{k,l}` family.
pub fn wkl_bases() -> (VarName, VarName) {
    (var("x"), var("y"))
}
