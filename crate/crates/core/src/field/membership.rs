//! Bounded-degree membership certificates `g = P(tower) / Q̂(tower)`.
//!
//! For each degree `d` the unknown coefficients of `P` and `Q̂` satisfy the
//! homogeneous linear system `g·Q̂(tower) − P(tower) = 0`. The system is
//! sampled at random integer points and first solved modulo a prime, which
//! cheaply rules out degrees without a certificate. Solutions are then made
//! exact (directly for small systems, by multi-modular reconstruction for
//! large ones) and every candidate is re-checked as an exact
//! rational-function identity before it is returned.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DiffFieldPresentation, FieldElement, Point};
use crate::algebra::linalg::{
    echelon_mod, nullspace_fraction_free, primes, rational_reconstruction, ModularEchelon, Modulus,
};
use crate::algebra::{gcd_with_budget, var, GcdBudget, Monomial, MultiPoly, Rational, VarName};
use crate::error::{Error, Result};

/// Witness that `target = P(tower)/Q̂(tower)`; `P` and `Q̂` are polynomials in
/// the tower variables `z0, z1, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipCertificate {
    target: FieldElement,
    tower: Vec<FieldElement>,
    numerator: MultiPoly<VarName>,
    denominator: MultiPoly<VarName>,
    degree_bound: u32,
}

/// Name of the `i`-th tower variable.
pub fn tower_var(i: usize) -> VarName {
    var(&format!("z{i}"))
}

fn tower_index(v: &VarName) -> usize {
    v.as_str()[1..].parse().expect("tower variable")
}

/// Largest number of grid points on which a certificate is checked by
/// evaluation.
const GRID_LIMIT: usize = 100_000;

impl MembershipCertificate {
    /// Builds a certificate, checking the defining identity exactly.
    pub fn new(
        target: FieldElement,
        tower: Vec<FieldElement>,
        numerator: MultiPoly<VarName>,
        denominator: MultiPoly<VarName>,
        degree_bound: u32,
    ) -> Result<Self> {
        let cert = MembershipCertificate { target, tower, numerator, denominator, degree_bound };
        cert.revalidate()?;
        Ok(cert)
    }

    pub fn target(&self) -> &FieldElement {
        &self.target
    }
    pub fn tower(&self) -> &[FieldElement] {
        &self.tower
    }
    /// `P`.
    pub fn numerator(&self) -> &MultiPoly<VarName> {
        &self.numerator
    }
    /// `Q̂`.
    pub fn denominator(&self) -> &MultiPoly<VarName> {
        &self.denominator
    }
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Rechecks `target·Q̂(tower) − P(tower) = 0` and `Q̂(tower) ≠ 0` exactly.
    ///
    /// Both sides are cleared to polynomials in the generators. When the
    /// degree bounds allow, the identity is checked on a product grid with
    /// one more point per coordinate than the degree in that generator (a
    /// nonzero polynomial cannot vanish on such a grid); otherwise the
    /// polynomials are expanded.
    pub fn revalidate(&self) -> Result<()> {
        let allowed: Vec<VarName> = (0..self.tower.len()).map(tower_var).collect();
        for p in [&self.numerator, &self.denominator] {
            if let Some(v) = p.variables().into_iter().find(|v| !allowed.contains(v)) {
                return Err(Error::InvalidCertificate(format!("unknown tower variable {v}")));
            }
        }
        let cleared = ClearedTower::new(&self.tower);
        let d = self.numerator.total_degree().max(self.denominator.total_degree());
        let (q_nonzero, identity) = match self.grid(&cleared, d) {
            Some(grid) => self.check_on_grid(&cleared, d, &grid),
            None => self.check_expanded(&cleared, d),
        };
        if !q_nonzero {
            return Err(Error::InvalidCertificate("Q̂(tower) vanishes".into()));
        }
        if !identity {
            return Err(Error::InvalidCertificate("g·Q̂(tower) ≠ P(tower)".into()));
        }
        Ok(())
    }

    /// Generators with their degree bound in the cleared identity and their
    /// largest degree in any single factor, when the grid is small enough to
    /// evaluate on.
    fn grid(&self, cleared: &ClearedTower, d: u32) -> Option<Vec<(VarName, u32, u32)>> {
        let mut vars = self.target.variables();
        vars.append(&mut cleared.common.variables());
        for n in &cleared.numerators {
            vars.append(&mut n.variables());
        }
        let mut size: usize = 1;
        let mut out = Vec::new();
        for v in vars {
            let per_factor =
                cleared.numerators.iter().chain([&cleared.common]).map(|p| p.degree_in(&v)).max().unwrap_or(0);
            let g_deg = self.target.numer().degree_in(&v).max(self.target.denom().degree_in(&v));
            let bound = g_deg + d * per_factor;
            size = size.checked_mul(bound as usize + 1).filter(|&s| s <= GRID_LIMIT)?;
            out.push((v, bound, g_deg.max(per_factor)));
        }
        Some(out)
    }

    fn check_on_grid(&self, cleared: &ClearedTower, d: u32, grid: &[(VarName, u32, u32)]) -> (bool, bool) {
        let gens: Vec<VarName> = grid.iter().map(|(v, ..)| v.clone()).collect();
        let gen_index = |v: &VarName| gens.iter().position(|g| g == v).expect("grid covers all variables");
        // Common positive scalings keep every quotient unchanged and make all
        // arithmetic integral.
        let tower_polys: Vec<&MultiPoly<VarName>> = cleared.numerators.iter().chain([&cleared.common]).collect();
        let tower_ints = IntPoly::scaled(&tower_polys, gen_index);
        let g_ints = IntPoly::scaled(&[self.target.numer(), self.target.denom()], gen_index);
        let pq = IntPoly::scaled(&[&self.numerator, &self.denominator], tower_index);
        let (l_int, num_ints) = tower_ints.split_last().expect("common denominator present");
        let mut coords: Vec<i64> = grid.iter().map(|(_, b, _)| -(*b as i64 / 2)).collect();
        let mut q_nonzero = false;
        loop {
            let gen_pows: Vec<Vec<BigInt>> =
                grid.iter().zip(&coords).map(|((_, _, top), &c)| powers(BigInt::from(c), *top)).collect();
            let z_pows: Vec<Vec<BigInt>> = num_ints.iter().map(|n| powers(n.eval(&gen_pows), d)).collect();
            let l_pows = powers(l_int.eval(&gen_pows), d);
            let p = pq[0].eval_homogenized(&z_pows, &l_pows, d);
            let q = pq[1].eval_homogenized(&z_pows, &l_pows, d);
            if g_ints[0].eval(&gen_pows) * &q != g_ints[1].eval(&gen_pows) * p {
                return (true, false);
            }
            q_nonzero |= !q.is_zero();
            // next grid point, odometer style
            let mut i = 0;
            loop {
                if i == grid.len() {
                    return (q_nonzero, true);
                }
                let top = grid[i].1 as i64 - grid[i].1 as i64 / 2;
                if coords[i] < top {
                    coords[i] += 1;
                    break;
                }
                coords[i] = -(grid[i].1 as i64 / 2);
                i += 1;
            }
        }
    }

    fn check_expanded(&self, cleared: &ClearedTower, d: u32) -> (bool, bool) {
        let q_hom = cleared.homogenized(&self.denominator, d);
        if q_hom.is_zero() {
            return (false, false);
        }
        let p_hom = cleared.homogenized(&self.numerator, d);
        (true, self.target.numer() * &q_hom == self.target.denom() * &p_hom)
    }
}

/// `[1, x, …, x^top]`.
fn powers(x: BigInt, top: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for i in 1..=top as usize {
        let next = &out[i - 1] * &x;
        out.push(next);
    }
    out
}

/// Variable indices with exponents, total degree, coefficient.
type IntTerm = (Vec<(usize, u32)>, u32, BigInt);

/// Integer-coefficient polynomial over indexed variables, for evaluation.
struct IntPoly {
    terms: Vec<IntTerm>,
}

impl IntPoly {
    /// The polynomials multiplied by one common positive integer that clears
    /// every coefficient denominator.
    fn scaled(polys: &[&MultiPoly<VarName>], index: impl Fn(&VarName) -> usize) -> Vec<IntPoly> {
        let scale = polys
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, den| acc.lcm(&den));
        polys
            .iter()
            .map(|p| IntPoly {
                terms: p
                    .terms()
                    .map(|(m, c)| {
                        let vars = m.factors().iter().map(|(v, e)| (index(v), *e)).collect();
                        (vars, m.degree(), c.numer() * (&scale / c.denom()))
                    })
                    .collect(),
            })
            .collect()
    }

    fn eval(&self, pows: &[Vec<BigInt>]) -> BigInt {
        self.terms
            .iter()
            .map(|(vars, _, c)| vars.iter().fold(c.clone(), |acc, &(i, e)| acc * &pows[i][e as usize]))
            .sum()
    }

    /// `Σ c_m · Π N_i^{e_i} · L^{d − deg m}`.
    fn eval_homogenized(&self, pows: &[Vec<BigInt>], l_pows: &[BigInt], d: u32) -> BigInt {
        self.terms
            .iter()
            .map(|(vars, deg, c)| {
                let t = vars.iter().fold(c.clone(), |acc, &(i, e)| acc * &pows[i][e as usize]);
                t * &l_pows[(d - deg) as usize]
            })
            .sum()
    }
}

/// Tower elements written over one common denominator `L`: `z_i = m_i / L`.
struct ClearedTower {
    numerators: Vec<MultiPoly<VarName>>,
    common: MultiPoly<VarName>,
}

impl ClearedTower {
    fn new(tower: &[FieldElement]) -> Self {
        let mut common = MultiPoly::one();
        for z in tower {
            let d = z.denom();
            if d.is_one() || common.div_exact(d).is_some() {
                continue;
            }
            // lcm when the gcd finishes in budget, plain product otherwise
            common = match gcd_with_budget(&common, d, &mut GcdBudget::default()) {
                Some(g) => &common * &d.div_exact(&g).unwrap_or_else(|| d.clone()),
                None => &common * d,
            };
        }
        let numerators = tower
            .iter()
            .map(|z| {
                if z.denom().is_one() {
                    z.numer() * &common
                } else {
                    let scale = common.div_exact(z.denom()).expect("common multiple");
                    z.numer() * &scale
                }
            })
            .collect();
        ClearedTower { numerators, common }
    }

    /// `L^d · P(z)`, a polynomial in the generators.
    fn homogenized(&self, p: &MultiPoly<VarName>, d: u32) -> MultiPoly<VarName> {
        let mut l_pows = vec![MultiPoly::one()];
        for i in 1..=d as usize {
            l_pows.push(&l_pows[i - 1] * &self.common);
        }
        let mut z_pows: BTreeMap<(usize, u32), MultiPoly<VarName>> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in p.terms() {
            let mut t = MultiPoly::constant(c.clone());
            for (v, e) in m.factors() {
                let i = tower_index(v);
                let pw = z_pows.entry((i, *e)).or_insert_with(|| self.numerators[i].pow(*e));
                t = &t * pw;
            }
            t = &t * &l_pows[(d - m.degree()) as usize];
            out = &out + &t;
        }
        out
    }
}

/// All monomials of total degree `<= d` in the tower variables listed in
/// `active`, ascending.
fn monomials_up_to(active: &[usize], d: u32) -> Vec<Monomial<VarName>> {
    let s = active.len();
    fn rec(i: usize, s: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == s {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(i + 1, s, left - e, cur, out);
            cur.pop();
        }
    }
    let mut exps = Vec::new();
    rec(0, s, d, &mut Vec::new(), &mut exps);
    let mut monos: Vec<Monomial<VarName>> = exps
        .into_iter()
        .map(|e| Monomial::from_pairs(e.into_iter().enumerate().map(|(i, k)| (tower_var(active[i]), k))))
        .collect();
    monos.sort();
    monos
}

/// One sampled point: the target's value and the tower's values.
struct Sample {
    target: Rational,
    tower: Vec<Rational>,
}

fn sample(
    g: &FieldElement,
    tower: &[FieldElement],
    field: &DiffFieldPresentation,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<Sample>> {
    const BOUND: i64 = 1 << 8;
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let point: Point = field
            .generators()
            .iter()
            .map(|v| (v.clone(), Rational::from_integer(BigInt::from(rng.gen_range(-BOUND..=BOUND)))))
            .collect();
        let values: Result<Vec<Rational>> = tower.iter().map(|z| z.eval_at_point(&point)).collect();
        match (g.eval_at_point(&point), values) {
            (Ok(t), Ok(v)) => out.push(Sample { target: t, tower: v }),
            (Err(Error::PoleAtPoint), _) | (_, Err(Error::PoleAtPoint)) => {
                misses += 1;
                if misses > 64 + 4 * count {
                    return Err(Error::RandomizationExhausted { retries: misses as u32 });
                }
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(out)
}

/// The sampled linear system at one degree. Columns are the `Q̂`
/// coefficients followed by the `P` coefficients; a sample contributes the
/// row `[g·m(s) …, −m(s) …]` over the monomials `m`.
struct System<'a> {
    samples: &'a [Sample],
    monos: &'a [Monomial<VarName>],
    exponents: Vec<Vec<(usize, u32)>>,
}

impl<'a> System<'a> {
    fn new(samples: &'a [Sample], monos: &'a [Monomial<VarName>]) -> Self {
        let exponents =
            monos.iter().map(|m| m.factors().iter().map(|(v, e)| (tower_index(v), *e)).collect()).collect();
        System { samples, monos, exponents }
    }

    fn width(&self) -> usize {
        self.monos.len()
    }

    fn mono_values(&self, s: &Sample) -> Vec<Rational> {
        self.exponents
            .iter()
            .map(|m| m.iter().fold(Rational::one(), |acc, &(i, e)| acc * num_traits::pow(s.tower[i].clone(), e as usize)))
            .collect()
    }

    fn rational_rows(&self, which: &[usize]) -> Vec<Vec<Rational>> {
        which
            .iter()
            .map(|&k| {
                let s = &self.samples[k];
                let vals = self.mono_values(s);
                vals.iter().map(|v| v * &s.target).chain(vals.iter().map(|v| -v.clone())).collect()
            })
            .collect()
    }

    /// The rows reduced mod `m`, built from reduced sample values.
    fn modular_rows(&self, m: Modulus) -> Option<Vec<Vec<u64>>> {
        self.samples
            .iter()
            .map(|s| {
                let t = m.reduce(&s.target)?;
                let z: Vec<u64> = s.tower.iter().map(|v| m.reduce(v)).collect::<Option<_>>()?;
                let vals: Vec<u64> = self
                    .exponents
                    .iter()
                    .map(|mono| mono.iter().fold(1, |acc, &(i, e)| m.mul(acc, m.pow(z[i], e as u64))))
                    .collect();
                Some(vals.iter().map(|&v| m.mul(v, t)).chain(vals.iter().map(|&v| m.sub(0, v))).collect())
            })
            .collect()
    }

    /// Echelon form mod `m` plus the nullspace indices whose `Q̂` is nonzero
    /// on some sample (the only useful solutions).
    fn modular_image(&self, m: Modulus) -> Option<(ModularEchelon, Vec<usize>)> {
        let width = self.width();
        let reduced = self.modular_rows(m)?;
        let echelon = echelon_mod(&reduced, 2 * width, m);
        // Q̂(sample) = −Σ q_j·row[width + j], read off the P block.
        let genuine = (0..echelon.nullspace.len())
            .filter(|&k| {
                let v = &echelon.nullspace[k];
                reduced.iter().any(|row| (0..width).fold(0, |acc, j| m.add(acc, m.mul(v[j], row[width + j]))) != 0)
            })
            .collect();
        Some((echelon, genuine))
    }

    /// Candidate solutions with `Q̂` not identically zero on the samples, or
    /// `None` when arithmetic modulo a prime already shows there are none
    /// (so no certificate exists at this degree, up to an unlucky
    /// reduction). An empty list means reconstruction ran out of primes.
    fn solutions(&self) -> Option<Vec<Vec<Rational>>> {
        let cols = 2 * self.width();
        let mut primes = primes();
        let (mut echelon, mut genuine, mut m) = loop {
            let m = primes.next().expect("enough primes");
            if let Some((e, g)) = self.modular_image(m) {
                break (e, g, m);
            }
        };
        if genuine.is_empty() {
            return None;
        }
        if cols <= DIRECT_SOLVE_COLUMNS {
            let system = self.rational_rows(&echelon.independent_rows);
            return Some(nullspace_fraction_free(&system, cols));
        }
        // Each wanted vector is a column of the reduced echelon form over ℚ,
        // so its entries are recovered by CRT and rational reconstruction
        // once enough primes agree on the pivot structure.
        let lift = |echelon: &ModularEchelon, genuine: &[usize]| -> Vec<Vec<BigInt>> {
            genuine.iter().map(|&k| echelon.nullspace[k].iter().map(|&r| BigInt::from(r)).collect()).collect()
        };
        let mut images = lift(&echelon, &genuine);
        let mut modulus = BigInt::from(m.value());
        let mut previous: Option<Vec<Vec<Rational>>> = None;
        for _ in 0..MAX_PRIMES {
            let attempt: Option<Vec<Vec<Rational>>> = images
                .iter()
                .map(|v| v.iter().map(|a| rational_reconstruction(a, &modulus)).collect())
                .collect();
            if attempt.is_some() && attempt == previous {
                return attempt;
            }
            previous = attempt;
            m = primes.next().expect("enough primes");
            let Some((e, g)) = self.modular_image(m) else {
                continue;
            };
            if e.pivots != echelon.pivots {
                // The prime with the larger rank is the lucky one.
                if e.rank > echelon.rank {
                    if g.is_empty() {
                        return None;
                    }
                    images = lift(&e, &g);
                    modulus = BigInt::from(m.value());
                    (echelon, genuine, previous) = (e, g, None);
                }
                continue;
            }
            let p = BigInt::from(m.value());
            let inv = modulus.modinv(&p).expect("distinct primes");
            for (img, &k) in images.iter_mut().zip(&genuine) {
                for (a, &r) in img.iter_mut().zip(&e.nullspace[k]) {
                    let delta = ((BigInt::from(r) - &*a) * &inv).mod_floor(&p);
                    *a += &modulus * delta;
                }
            }
            modulus *= p;
        }
        Some(Vec::new())
    }
}

/// Systems with at most this many unknowns are solved by fraction-free
/// elimination; larger ones by reconstruction from several primes.
const DIRECT_SOLVE_COLUMNS: usize = 64;
/// Primes tried before a reconstruction is abandoned.
const MAX_PRIMES: usize = 48;

/// Searches for `g = P(tower)/Q̂(tower)` with `deg P, deg Q̂ <= d` for
/// `d = 0, …, degree_cap`; returns the first certificate found.
pub fn member_of_tower(
    g: &FieldElement,
    tower: &[FieldElement],
    field: &DiffFieldPresentation,
    degree_cap: u32,
    seed: u64,
) -> Result<MembershipCertificate> {
    if tower.is_empty() {
        return Err(Error::EmptyInput("tower"));
    }
    field.check_element(g)?;
    for z in tower {
        field.check_element(z)?;
    }
    // Rational constants in the tower only add trivial relations.
    let active: Vec<usize> = (0..tower.len()).filter(|&i| tower[i].constant_value().is_none()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<Sample> = Vec::new();
    for d in 0..=degree_cap {
        let monos = monomials_up_to(&active, d);
        let width = monos.len();
        let mut wanted = 2 * width + 4;
        for _attempt in 0..3 {
            if samples.len() < wanted {
                let more = sample(g, tower, field, &mut rng, wanted - samples.len())?;
                samples.extend(more);
            }
            let system = System::new(&samples, &monos);
            let Some(candidates) = system.solutions() else {
                break;
            };
            let mut spurious = false;
            for v in candidates {
                let (q_coeffs, p_coeffs) = v.split_at(width);
                let q_nonzero_somewhere = samples.iter().any(|s| {
                    let val: Rational = system.mono_values(s).iter().zip(q_coeffs).map(|(m, c)| m * c).sum();
                    !val.is_zero()
                });
                if !q_nonzero_somewhere {
                    continue;
                }
                let build = |coeffs: &[Rational]| {
                    MultiPoly::from_terms(monos.iter().cloned().zip(coeffs.iter().cloned()))
                };
                let (p, q) = (build(p_coeffs), build(q_coeffs));
                // Normalize so that Q̂ has leading coefficient one.
                let lc = q.leading_coefficient().recip();
                match MembershipCertificate::new(g.clone(), tower.to_vec(), p.scale(&lc), q.scale(&lc), d) {
                    Ok(cert) => return Ok(cert),
                    Err(Error::InvalidCertificate(_)) => spurious = true,
                    Err(e) => return Err(e),
                }
            }
            if !spurious {
                break;
            }
            wanted *= 2;
        }
    }
    Err(Error::NotFound { degree_cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RatFunc};

    fn xy_field() -> DiffFieldPresentation {
        DiffFieldPresentation::new(
            vec![var("x"), var("y")],
            [(var("x"), RatFunc::one()), (var("y"), RatFunc::zero())],
        )
        .unwrap()
    }
    fn x() -> FieldElement {
        RatFunc::var(var("x"))
    }
    fn y() -> FieldElement {
        RatFunc::var(var("y"))
    }
    fn z(i: usize) -> MultiPoly<VarName> {
        MultiPoly::var(tower_var(i))
    }

    fn tower() -> Vec<FieldElement> {
        vec![&x().pow(2) + &y(), x().scale(&rat(2, 1))]
    }

    #[test]
    fn x_is_half_of_z1() {
        let cert = member_of_tower(&x(), &tower(), &xy_field(), 8, 1).unwrap();
        assert_eq!(cert.degree_bound(), 1);
        assert!(cert.denominator().is_one());
        assert_eq!(cert.numerator(), &z(1).scale(&rat(1, 2)));
    }

    #[test]
    fn y_is_z0_minus_quarter_z1_squared() {
        let cert = member_of_tower(&y(), &tower(), &xy_field(), 8, 1).unwrap();
        assert_eq!(cert.degree_bound(), 2);
        let expected = &z(0) - &z(1).pow(2).scale(&rat(1, 4));
        assert_eq!(cert.numerator(), &expected);
        assert!(cert.denominator().is_one());
    }

    #[test]
    fn x_not_in_q_of_y() {
        let f = xy_field();
        assert_eq!(member_of_tower(&x(), &[y()], &f, 8, 1), Err(Error::NotFound { degree_cap: 8 }));
    }

    #[test]
    fn rational_tower_needs_a_denominator() {
        // x = z0 / z1 with z0 = x*y, z1 = y.
        let f = xy_field();
        let tw = vec![&x() * &y(), y()];
        let cert = member_of_tower(&x(), &tw, &f, 4, 7).unwrap();
        cert.revalidate().unwrap();
        assert!(!cert.denominator().is_constant());
    }

    #[test]
    fn grid_and_expansion_agree() {
        let f = xy_field();
        let tw = vec![&x() * &y(), y(), x().recip().unwrap()];
        let good = member_of_tower(&x(), &tw, &f, 4, 3).unwrap();
        let forged = MembershipCertificate { numerator: good.numerator() + &z(2), ..good.clone() };
        let vanishing = MembershipCertificate {
            numerator: MultiPoly::zero(),
            denominator: &(&z(0) * &z(2)) - &z(1),
            ..good.clone()
        };
        for cert in [&good, &forged, &vanishing] {
            let cleared = ClearedTower::new(cert.tower());
            let d = cert.numerator().total_degree().max(cert.denominator().total_degree());
            let grid = cert.grid(&cleared, d).expect("small grid");
            // the identity flag only matters when Q̂ does not vanish
            let verdict = |(q, id): (bool, bool)| (q, q && id);
            assert_eq!(verdict(cert.check_on_grid(&cleared, d, &grid)), verdict(cert.check_expanded(&cleared, d)));
        }
        assert!(forged.revalidate().is_err());
        assert!(vanishing.revalidate().is_err());
    }

    #[test]
    fn forged_certificate_is_rejected() {
        let bad = MembershipCertificate::new(x(), tower(), z(1), MultiPoly::one(), 1);
        assert!(matches!(bad, Err(Error::InvalidCertificate(_))));
        let vanishing = MembershipCertificate::new(x(), tower(), MultiPoly::zero(), MultiPoly::zero(), 1);
        assert!(matches!(vanishing, Err(Error::InvalidCertificate(_))));
    }
}
