//! Exact dense linear algebra: rational rank and nullspace, and
//! determinants / ranks over polynomial rings by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, RatFunc, Rational, Variable};

/// Integral-domain operations needed by fraction-free elimination.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact quotient; `None` if `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Self {
        Self::ring_zero().sub(self)
    }
}

impl ExactRing for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl<V: Variable> ExactRing for MultiPoly<V> {
    fn ring_zero() -> Self {
        MultiPoly::zero()
    }
    fn ring_one() -> Self {
        MultiPoly::one()
    }
    fn is_ring_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

impl<V: Variable> ExactRing for RatFunc<V> {
    fn ring_zero() -> Self {
        RatFunc::zero()
    }
    fn ring_one() -> Self {
        RatFunc::one()
    }
    fn is_ring_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        (self + other).normalize()
    }
    fn sub(&self, other: &Self) -> Self {
        (self - other).normalize()
    }
    fn mul(&self, other: &Self) -> Self {
        (self * other).normalize()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.checked_div(other).ok().map(|q| q.normalize())
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Panics if an elimination step is not exact, which cannot happen over an
/// integral domain.
pub fn bareiss_determinant<R: ExactRing>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::ring_one();
    }
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = R::ring_one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_ring_zero()) else {
            return R::ring_zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            m[i][k] = R::ring_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Rank by fraction-free elimination; columns without a pivot are skipped.
pub fn bareiss_rank<R: ExactRing>(matrix: &[Vec<R>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<R>> = matrix.to_vec();
    let mut rank = 0;
    let mut prev = R::ring_one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_ring_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = m[i][j].mul(&m[rank][col]).sub(&m[i][col].mul(&m[rank][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            m[i][col] = R::ring_zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant by Laplace expansion along the first row. Exponential; kept
/// as an independent cross-check for small matrices.
pub fn cofactor_determinant<R: ExactRing>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    match n {
        0 => R::ring_one(),
        1 => matrix[0][0].clone(),
        _ => {
            let mut acc = R::ring_zero();
            for j in 0..n {
                if matrix[0][j].is_ring_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = matrix[0][j].mul(&cofactor_determinant(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for e in m[r][c..].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || Zero::is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (e, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !Zero::is_zero(pv) {
                    *e -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rational_rank(matrix: &[Vec<Rational>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m = matrix.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{v : M v = 0}`, one vector per free column in ascending order,
/// each with a 1 in its own free column.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = matrix.to_vec();
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![<Rational as Zero>::zero(); cols];
        v[free] = <Rational as One>::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Arithmetic modulo a prime below `2^32`, so products fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus(u64);

impl Modulus {
    /// `2^31 − 1`.
    pub const DEFAULT: Modulus = Modulus(2_147_483_647);

    /// `p` must be a prime below `2^32`.
    pub fn new(p: u64) -> Self {
        assert!(p > 1 && p < 1 << 32, "modulus out of range");
        Modulus(p)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }

    pub fn reduce_int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.0)).try_into().expect("residue below the modulus")
    }

    /// `None` when the denominator is divisible by the modulus.
    pub fn reduce(self, q: &Rational) -> Option<u64> {
        let den = self.reduce_int(q.denom());
        (den != 0).then(|| self.mul(self.reduce_int(q.numer()), self.inv(den)))
    }

    pub fn reduce_matrix(self, matrix: &[Vec<Rational>]) -> Option<Vec<Vec<u64>>> {
        matrix.iter().map(|row| row.iter().map(|q| self.reduce(q)).collect()).collect()
    }
}

fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Miller–Rabin with bases 2, 7, 61 is exact below 2^32.
    let m = Modulus(n);
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 7, 61].iter().all(|&a| {
        let mut x = m.pow(a % n, d);
        if x == 0 || x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = m.mul(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Primes below `2^31`, descending from `2^31 − 1`.
pub fn primes() -> impl Iterator<Item = Modulus> {
    (3..=Modulus::DEFAULT.0).rev().step_by(2).filter(|&n| is_prime_u32(n)).map(Modulus)
}

/// Echelon data of a matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularEchelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Original indices of rows that are linearly independent mod p (hence
    /// over ℚ as well).
    pub independent_rows: Vec<usize>,
    /// Nullspace basis mod p, one vector per free column, ascending.
    pub nullspace: Vec<Vec<u64>>,
    /// The free column of each nullspace vector.
    pub free: Vec<usize>,
}

/// Gauss–Jordan elimination modulo `m`. The rank never exceeds the rank over
/// ℚ, so a nullspace that is empty mod p is empty over ℚ.
pub fn echelon_mod(reduced: &[Vec<u64>], cols: usize, m: Modulus) -> ModularEchelon {
    let p = m.0;
    let mut a = reduced.to_vec();
    let mut idx: Vec<usize> = (0..a.len()).collect();
    let rows = a.len();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(k, r);
        idx.swap(k, r);
        let inv = m.inv(a[r][c]);
        for e in a[r][c..].iter_mut() {
            *e = *e * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (e, pv) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *e = (*e + f * pv) % p;
            }
        }
        pivots.push(c);
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = (p - a[row][f]) % p;
            }
            v
        })
        .collect();
    let mut independent_rows = idx[..pivots.len()].to_vec();
    independent_rows.sort_unstable();
    ModularEchelon { rank: pivots.len(), pivots, independent_rows, nullspace, free }
}

/// Rank of the reduction modulo `2^31 − 1` (a lower bound for the rank over
/// ℚ), or `None` when a denominator is divisible by the modulus.
pub fn rank_mod_prime(matrix: &[Vec<Rational>]) -> Option<usize> {
    let reduced = Modulus::DEFAULT.reduce_matrix(matrix)?;
    let cols = reduced.first().map_or(0, Vec::len);
    Some(echelon_mod(&reduced, cols, Modulus::DEFAULT).rank)
}

/// The fraction `n/d` with `|n|, |d| <= sqrt(M/2)` and `n ≡ a·d (mod M)`,
/// when one exists.
pub fn rational_reconstruction(a: &BigInt, modulus: &BigInt) -> Option<Rational> {
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), a.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Same basis as [`nullspace`], computed by fraction-free Gauss–Jordan
/// elimination over ℤ after clearing denominators row by row. Much faster
/// than [`nullspace`] when entries are large.
pub fn nullspace_fraction_free(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let pivot_row = m[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                let t = &row[j] * &piv - &f * &pivot_row[j];
                row[j] = if prev.is_one() {
                    t
                } else {
                    let (q, rem) = t.div_rem(&prev);
                    if !rem.is_zero() {
                        return nullspace(matrix, cols);
                    }
                    q
                };
            }
        }
        // Earlier pivot rows were scaled by piv/prev along with the rest.
        prev = piv;
        pivots.push(c);
    }
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![<Rational as Zero>::zero(); cols];
            v[free] = <Rational as One>::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -Rational::new(m[row][free].clone(), m[row][p].clone());
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, var, VarName};

    fn r(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|row| row.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let m = r(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 0, 0, 5], &[3, 1, 1, 1]]);
        assert_eq!(bareiss_determinant(&m), cofactor_determinant(&m));
        let singular = r(&[&[1, 2], &[2, 4]]);
        assert!(bareiss_determinant(&singular).is_zero());
        let needs_swap = r(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_determinant(&needs_swap), rat(-1, 1));
    }

    #[test]
    fn polynomial_determinant() {
        let x: MultiPoly<VarName> = MultiPoly::var(var("x"));
        let y: MultiPoly<VarName> = MultiPoly::var(var("y"));
        let m = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        let expected = &x.pow(2) - &y.pow(2);
        assert_eq!(bareiss_determinant(&m), expected);
        assert_eq!(cofactor_determinant(&m), expected);
        assert_eq!(bareiss_rank(&m), 2);
        let dep = vec![vec![x.clone(), y.clone()], vec![&x * &x, &x * &y]];
        assert_eq!(bareiss_rank(&dep), 1);
    }

    #[test]
    fn rank_and_nullspace() {
        let m = r(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rational_rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn fraction_free_and_modular_paths_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            // low-rank products hit the column-skipping paths
            let inner = rng.gen_range(1..=cols);
            let a: Vec<Vec<Rational>> =
                (0..rows).map(|_| (0..inner).map(|_| rat(rng.gen_range(-3..4), rng.gen_range(1..4))).collect()).collect();
            let b: Vec<Vec<Rational>> =
                (0..inner).map(|_| (0..cols).map(|_| rat(rng.gen_range(-2..3), 1)).collect()).collect();
            let m: Vec<Vec<Rational>> = a
                .iter()
                .map(|row| (0..cols).map(|j| row.iter().zip(&b).map(|(x, brow)| x * &brow[j]).sum()).collect())
                .collect();
            assert_eq!(nullspace_fraction_free(&m, cols), nullspace(&m, cols));
            assert_eq!(rank_mod_prime(&m), Some(rational_rank(&m)));
        }
    }

    #[test]
    fn primes_and_reconstruction() {
        let ps: Vec<u64> = primes().take(3).map(Modulus::value).collect();
        assert_eq!(ps, [2_147_483_647, 2_147_483_629, 2_147_483_587]);
        let m = BigInt::from(2_147_483_647u64) * BigInt::from(2_147_483_629u64);
        for q in [rat(-355, 113), rat(0, 1), rat(7, 1), rat(-1, 12_345)] {
            let image = (q.numer() * q.denom().modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruction(&image, &m), Some(q));
        }
    }
}
