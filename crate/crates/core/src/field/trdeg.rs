//! Transcendence degree through the Jacobian criterion (characteristic 0):
//! elements of `k(t1, …, tm)` are algebraically independent iff their
//! Jacobian `(∂f_i/∂t_j)` has full row rank over the function field.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DiffFieldPresentation, FieldElement, Point};
use crate::algebra::linalg::{bareiss_rank, rational_rank};
use crate::algebra::{MultiPoly, Rational, VarName};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    /// Rank of the Jacobian at random integer points (never overestimates).
    Randomized,
    /// Fraction-free elimination over the function field.
    Symbolic,
}

impl RankMethod {
    pub fn name(self) -> &'static str {
        match self {
            RankMethod::Randomized => "randomized",
            RankMethod::Symbolic => "symbolic",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RankOptions {
    pub method: RankMethod,
    pub seed: u64,
    /// Evaluation points tried before giving up.
    pub retries: u32,
    /// Coordinates are drawn uniformly from `[-bound, bound]`.
    pub bound: i64,
    /// Pole-free points that must agree before a rank below the maximum is
    /// accepted.
    pub confirmations: u32,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            method: RankMethod::Randomized,
            seed: 0,
            retries: 32,
            bound: 1_000_000,
            confirmations: 2,
        }
    }
}

impl RankOptions {
    pub fn symbolic() -> Self {
        RankOptions { method: RankMethod::Symbolic, ..Self::default() }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        RankOptions { seed, ..self.clone() }
    }
}

/// Outcome of a differential transcendence-degree computation.
#[derive(Debug, Clone, PartialEq)]
pub struct TrdegReport {
    pub trdeg: usize,
    /// First `N` with `r_{N+1} = r_N`, where `r_N` is the algebraic
    /// transcendence degree of all derivatives up to order `N`.
    pub stabilization_order: u32,
    pub method: RankMethod,
    pub witness_points: Vec<Point>,
}

/// Gradient data of one element `n/d`: rows of the Jacobian scaled by `d^2`
/// are `∂n·d − n·∂d`.
struct Gradient {
    num: MultiPoly<VarName>,
    den: MultiPoly<VarName>,
    dnum: Vec<MultiPoly<VarName>>,
    dden: Vec<MultiPoly<VarName>>,
}

impl Gradient {
    fn new(f: &FieldElement, gens: &[VarName]) -> Self {
        Gradient {
            num: f.numer().clone(),
            den: f.denom().clone(),
            dnum: gens.iter().map(|g| f.numer().partial_derivative(g)).collect(),
            dden: gens.iter().map(|g| f.denom().partial_derivative(g)).collect(),
        }
    }

    fn symbolic_row(&self) -> Vec<MultiPoly<VarName>> {
        self.dnum
            .iter()
            .zip(&self.dden)
            .map(|(dn, dd)| {
                if dd.is_zero() {
                    dn * &self.den
                } else {
                    &(dn * &self.den) - &(&self.num * dd)
                }
            })
            .collect()
    }

    fn row_at(&self, point: &Point) -> Result<Vec<Rational>> {
        let d = self.den.eval(point)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(point)?;
        self.dnum
            .iter()
            .zip(&self.dden)
            .map(|(dn, dd)| {
                let a = dn.eval(point)? * &d;
                if dd.is_zero() {
                    Ok(a)
                } else {
                    Ok(a - &n * dd.eval(point)?)
                }
            })
            .collect()
    }
}

/// Algebraic transcendence degree of `elements` over ℚ.
pub fn alg_trdeg(elements: &[FieldElement], field: &DiffFieldPresentation, opts: &RankOptions) -> Result<usize> {
    alg_trdeg_with_witness(elements, field, opts).map(|(r, _)| r)
}

/// As [`alg_trdeg`], also returning the evaluation point that certified the
/// rank (empty in symbolic mode or when no point was needed).
pub fn alg_trdeg_with_witness(
    elements: &[FieldElement],
    field: &DiffFieldPresentation,
    opts: &RankOptions,
) -> Result<(usize, Vec<Point>)> {
    let gens = field.generators();
    let grads: Vec<Gradient> = elements
        .iter()
        .filter(|f| f.constant_value().is_none())
        .map(|f| Gradient::new(f, gens))
        .collect();
    let full = grads.len().min(gens.len());
    if full == 0 {
        return Ok((0, Vec::new()));
    }
    match opts.method {
        RankMethod::Symbolic => {
            let rows: Vec<_> = grads.iter().map(Gradient::symbolic_row).collect();
            Ok((bareiss_rank(&rows), Vec::new()))
        }
        RankMethod::Randomized => randomized_rank(&grads, gens, full, opts),
    }
}

fn randomized_rank(
    grads: &[Gradient],
    gens: &[VarName],
    full: usize,
    opts: &RankOptions,
) -> Result<(usize, Vec<Point>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = 0;
    let mut witness = Vec::new();
    let mut clean = 0;
    for _ in 0..opts.retries {
        let point: Point = gens
            .iter()
            .map(|g| {
                let v: i64 = rng.gen_range(-opts.bound..=opts.bound);
                (g.clone(), Rational::from_integer(BigInt::from(v)))
            })
            .collect();
        let rows: Result<Vec<_>> = grads.iter().map(|g| g.row_at(&point)).collect();
        let rows = match rows {
            Ok(rows) => rows,
            Err(Error::PoleAtPoint) => continue,
            Err(e) => return Err(e),
        };
        clean += 1;
        let rank = rational_rank(&rows);
        if rank > best || witness.is_empty() {
            best = rank;
            witness = vec![point];
        }
        if best == full || clean >= opts.confirmations {
            return Ok((best, witness));
        }
    }
    if clean == 0 {
        return Err(Error::RandomizationExhausted { retries: opts.retries });
    }
    Ok((best, witness))
}

/// Mixes a salt into a seed (splitmix64 finalizer) so that sub-computations
/// get independent, reproducible streams.
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Differential transcendence degree of `k⟨gens⟩`: ranks `r_N` of all
/// derivatives up to order `N` for `N = 0, 1, …`, stopping at the first
/// non-increase.
pub fn diff_trdeg(gens: &[FieldElement], field: &DiffFieldPresentation, opts: &RankOptions) -> Result<TrdegReport> {
    let m = field.generators().len();
    let mut elements: Vec<FieldElement> = gens.to_vec();
    let mut frontier: Vec<FieldElement> = gens.to_vec();
    let (mut r_prev, mut witness) = alg_trdeg_with_witness(&elements, field, &opts.with_seed(mix_seed(opts.seed, 0)))?;
    let mut order = 0;
    loop {
        if r_prev == m || frontier.iter().all(|f| f.is_zero()) {
            break;
        }
        frontier = frontier.iter().map(|f| field.derive(f)).collect::<Result<_>>()?;
        elements.extend(frontier.iter().filter(|f| f.constant_value().is_none()).cloned());
        let (r_next, w) =
            alg_trdeg_with_witness(&elements, field, &opts.with_seed(mix_seed(opts.seed, order as u64 + 1)))?;
        if r_next == r_prev {
            break;
        }
        r_prev = r_next;
        witness = w;
        order += 1;
    }
    Ok(TrdegReport { trdeg: r_prev, stabilization_order: order, method: opts.method, witness_points: witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, var, RatFunc};

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

    fn both(elements: &[FieldElement]) -> (usize, usize) {
        let f = xy_field();
        (
            alg_trdeg(elements, &f, &RankOptions::default()).unwrap(),
            alg_trdeg(elements, &f, &RankOptions::symbolic()).unwrap(),
        )
    }

    #[test]
    fn algebraic_rank_examples() {
        assert_eq!(both(&[x(), y()]), (2, 2));
        assert_eq!(both(&[x(), x().pow(2)]), (1, 1));
        let a = &x().pow(2) + &y();
        assert_eq!(both(&[a, x().scale(&rat(2, 1)), RatFunc::constant(rat(2, 1))]), (2, 2));
        assert_eq!(both(&[]), (0, 0));
    }

    #[test]
    fn differential_examples() {
        let f = xy_field();
        for opts in [RankOptions::default(), RankOptions::symbolic()] {
            let r = diff_trdeg(&[&x().pow(2) + &y()], &f, &opts).unwrap();
            assert_eq!((r.trdeg, r.stabilization_order), (2, 1));
            let r = diff_trdeg(&[&y() + &x().scale(&rat(3, 1))], &f, &opts).unwrap();
            assert_eq!(r.trdeg, 1);
            let r = diff_trdeg(&[RatFunc::constant(rat(5, 1))], &f, &opts).unwrap();
            assert_eq!((r.trdeg, r.stabilization_order), (0, 0));
            let r = diff_trdeg(&[y()], &f, &opts).unwrap();
            assert_eq!((r.trdeg, r.stabilization_order), (1, 0));
        }
    }

    #[test]
    fn poles_everywhere_exhaust_randomization() {
        // 1/(x - x) cannot be built, but a denominator that vanishes on the
        // whole sampling box can: bound 0 pins every coordinate to 0.
        let f = xy_field();
        let inv = x().recip().unwrap();
        let opts = RankOptions { bound: 0, retries: 4, ..RankOptions::default() };
        assert!(matches!(
            alg_trdeg(&[inv], &f, &opts),
            Err(Error::RandomizationExhausted { retries: 4 })
        ));
    }
}
