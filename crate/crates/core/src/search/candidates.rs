//! Canonical enumeration of candidate polynomials `p(t) ∈ ℚ[t]`.
//!
//! Order: `p = 0` first; then integer coefficients by degree ascending
//! (from 1), height ascending, and lexicographically from the leading
//! coefficient down with values ordered `0, 1, −1, 2, −2, …`; then the same
//! sequence divided by 2, 3 and 4, skipping fractions already listed.
//! Constant candidates are never listed: `a + c` has the transcendence degree
//! of `a`, and `q(c)` for constant `c` is covered by a nonconstant witness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SearchConfig;
use crate::algebra::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::par;

const MAX_DENOMINATOR: i64 = 4;
const BATCH: usize = 32;

fn digit_value(i: usize) -> i64 {
    if i == 0 {
        0
    } else if i % 2 == 1 {
        i.div_ceil(2) as i64
    } else {
        -((i / 2) as i64)
    }
}

/// Coefficient vectors `[c_0, …, c_deg]` with `c_deg ≠ 0` and
/// `max |c_i| = height`, in canonical order.
struct HeightShell {
    degree: usize,
    height: usize,
    digits: Vec<usize>,
    done: bool,
}

impl HeightShell {
    fn new(degree: usize, height: usize) -> Self {
        HeightShell { degree, height, digits: vec![0; degree + 1], done: false }
    }

    fn advance(&mut self) {
        // digits[0] is the leading coefficient (most significant).
        let top = 2 * self.height;
        for i in (0..self.digits.len()).rev() {
            if self.digits[i] < top {
                self.digits[i] += 1;
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for HeightShell {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done {
            let values: Vec<i64> = self.digits.iter().map(|&d| digit_value(d)).collect();
            self.advance();
            let max = values.iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
            if values[0] != 0 && max == self.height {
                let mut coeffs = values;
                coeffs.reverse();
                debug_assert_eq!(coeffs.len(), self.degree + 1);
                return Some(coeffs);
            }
        }
        None
    }
}

/// The candidate sequence for the given caps, truncated to `max_candidates`.
pub fn candidates(max_degree: u32, max_height: u32, max_candidates: usize) -> impl Iterator<Item = UniPoly> {
    let integer_shells = move |den: i64| {
        (1..=max_degree as usize).flat_map(move |deg| {
            (1..=max_height as usize).flat_map(move |h| HeightShell::new(deg, h)).filter_map(move |c| {
                let g = c.iter().fold(0i64, |acc, &v| acc.gcd(&v));
                if den > 1 && g.gcd(&den) > 1 {
                    return None;
                }
                let den_q = BigInt::from(den);
                Some(UniPoly::new(
                    c.into_iter().map(|v| Rational::new(BigInt::from(v), den_q.clone())).collect(),
                ))
            })
        })
    };
    std::iter::once(UniPoly::zero())
        .chain((1..=MAX_DENOMINATOR).flat_map(integer_shells))
        .take(max_candidates)
}

/// Runs `test` over the candidate sequence in batches and returns the
/// lowest-index candidate for which it yields `Some`. An error from an
/// earlier candidate than any hit is returned instead.
pub(crate) fn first_candidate<T, F>(cfg: &SearchConfig, test: F) -> Result<(usize, UniPoly, T)>
where
    T: Send,
    F: Fn(usize, &UniPoly) -> Result<Option<T>> + Sync + Send,
{
    let mut iter = candidates(cfg.max_p_degree, cfg.max_coeff_height, cfg.max_candidates);
    let mut offset = 0;
    loop {
        let batch: Vec<UniPoly> = iter.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Err(Error::CapExceeded(format!(
                "no candidate p among {offset} tried (max_p_degree = {}, max_coeff_height = {}, \
                 max_candidates = {})",
                cfg.max_p_degree, cfg.max_coeff_height, cfg.max_candidates
            )));
        }
        let hit = par::find_first(cfg.exec(), &batch, |i, p| match test(offset + i, p) {
            Ok(Some(t)) => Some(Ok(t)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
        if let Some((i, res)) = hit {
            return res.map(|t| (offset + i, batch[i].clone(), t));
        }
        offset += batch.len();
    }
}

/// Rational numbers of height `<= height` drawn from `rng`.
pub(crate) fn random_rational<R: rand::Rng>(rng: &mut R, height: u32) -> Rational {
    let h = height.max(1) as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    let q = Rational::new(BigInt::from(num), BigInt::from(den));
    if q.is_zero() {
        Rational::one()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(n: usize) -> Vec<String> {
        candidates(6, 8, n).map(|p| p.to_string()).collect()
    }

    #[test]
    fn canonical_prefix() {
        assert_eq!(render(8), ["0", "t", "t + 1", "t - 1", "-t", "-t + 1", "-t - 1", "t + 2"]);
    }

    #[test]
    fn first_quadratic_is_t_squared() {
        let first_quadratic = candidates(6, 8, 10_000).find(|p| p.degree() == Some(2)).unwrap();
        assert_eq!(first_quadratic.to_string(), "t^2");
    }

    #[test]
    fn fractional_phase_skips_duplicates() {
        let all: Vec<UniPoly> = candidates(1, 2, usize::MAX).collect();
        let mut seen = std::collections::HashSet::new();
        for p in &all {
            assert!(seen.insert(p.clone()), "duplicate {p}");
        }
        // degree 1: heights 1 and 2 give 6 + 14 integer polynomials
        assert!(all[1..21].iter().all(|p| p.coeffs().iter().all(|c| c.is_integer())));
        assert!(!all[21].coeffs().iter().all(|c| c.is_integer()));
        assert!(all.iter().any(|p| p.to_string() == "1/2*t"));
    }
}
